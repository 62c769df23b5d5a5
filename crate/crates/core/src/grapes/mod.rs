//! Star and loop classes, the Star–Loop basis of a bunch of grapes, the
//! closed-form Betti numbers of elementary grapes, the primitivity
//! classification and the mapping-cone model.

mod cone;
mod primitives;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{GrapesStructure, LocalLabeling};
use crate::linalg::{rational, Matrix};
use crate::poly::{binomial, Monomial, Poly};
use crate::swiatkowski::{BasisElement, Chain, Local, Swiatkowski, WeightHomology};

pub use cone::{sl_coproduct, verify_formality, ConeModel, FormalityCheck, FormalityReport};
pub use primitives::{classify_primitives, cross_check_primitives, PredictedPrimitive, PrimitiveComparison};

/// A star class `α^v_{ijk}` with its chain.
#[derive(Debug, Clone)]
pub struct StarClass {
    pub vertex: usize,
    /// 1-based indices `i < j < k`.
    pub triple: (usize, usize, usize),
    pub chain: Chain,
}

/// A loop class `β^v_r` with its chain.
#[derive(Debug, Clone)]
pub struct LoopClass {
    pub vertex: usize,
    /// 1-based loop index in label order.
    pub index: usize,
    pub chain: Chain,
}

fn half(v: usize, h: usize) -> BasisElement {
    BasisElement {
        mono: Monomial::one(),
        locals: vec![(v, Local::Half(h))],
    }
}

/// `e(h_i)(h_j - h_k) + e(h_j)(h_k - h_i) + e(h_k)(h_i - h_j)` for 0-based
/// positions.
pub(crate) fn star_chain(l: &LocalLabeling, i: usize, j: usize, k: usize) -> Chain {
    let v = l.vertex;
    let mut c = Chain::new();
    for (a, b, d) in [(i, j, k), (j, k, i), (k, i, j)] {
        let e = Monomial::var(l.edge_at(a));
        c.add_term(half(v, l.halves[b]).times_mono(&e), BigInt::one());
        c.add_term(half(v, l.halves[d]).times_mono(&e), -BigInt::one());
    }
    c
}

/// `h_{i+1} - h_i` for the loop at 0-based positions `(i, i+1)`.
pub(crate) fn loop_chain(l: &LocalLabeling, i: usize) -> Chain {
    let v = l.vertex;
    let mut c = Chain::new();
    c.add_term(half(v, l.halves[i + 1]), BigInt::one());
    c.add_term(half(v, l.halves[i]), -BigInt::one());
    c
}

fn labeling(gs: &GrapesStructure, v: usize) -> Result<&LocalLabeling> {
    gs.local(v).ok_or_else(|| {
        Error::IndexOutOfRange(format!("vertex `{}` is not essential", gs.graph().vertex_id(v)))
    })
}

/// The star class at `v` with 1-based indices `i < j < k`.
pub fn star_class(gs: &GrapesStructure, v: usize, i: usize, j: usize, k: usize) -> Result<StarClass> {
    let l = labeling(gs, v)?;
    if !(1 <= i && i < j && j < k && k <= l.len()) {
        return Err(Error::IndexOutOfRange(format!(
            "star indices ({i},{j},{k}) at a vertex with {} half-edges",
            l.len()
        )));
    }
    Ok(StarClass {
        vertex: v,
        triple: (i, j, k),
        chain: star_chain(l, i - 1, j - 1, k - 1),
    })
}

/// The `r`-th loop class (1-based) at `v`.
pub fn loop_class(gs: &GrapesStructure, v: usize, r: usize) -> Result<LoopClass> {
    let l = labeling(gs, v)?;
    let labels = l.loop_labels();
    if r == 0 || r > labels.len() {
        return Err(Error::IndexOutOfRange(format!(
            "loop index {r} at a vertex with {} loops",
            labels.len()
        )));
    }
    let (i, _) = l.loop_positions(labels[r - 1]).expect("normalized loop");
    Ok(LoopClass {
        vertex: v,
        index: r,
        chain: loop_chain(l, i),
    })
}

/// The choice made at one essential vertex by a Star–Loop generator.
/// Positions are 0-based in the local labeling; monomials are over the
/// ambient edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SLChoice {
    Unit,
    Star { p: Monomial, j: usize, k: usize },
    Loop { q: Monomial, r: usize },
}

impl SLChoice {
    pub fn weight(&self) -> usize {
        match self {
            SLChoice::Unit => 0,
            SLChoice::Star { p, .. } => 2 + p.degree() as usize,
            SLChoice::Loop { q, .. } => 1 + q.degree() as usize,
        }
    }

    pub fn degree(&self) -> usize {
        usize::from(!matches!(self, SLChoice::Unit))
    }
}

/// One Star–Loop basis element: `e0^a` times a choice at every essential
/// vertex (in vertex order).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SLGenerator {
    pub a: u32,
    pub choices: Vec<(usize, SLChoice)>,
}

impl SLGenerator {
    pub fn weight(&self) -> usize {
        self.a as usize + self.choices.iter().map(|(_, c)| c.weight()).sum::<usize>()
    }

    pub fn degree(&self) -> usize {
        self.choices.iter().map(|(_, c)| c.degree()).sum()
    }

    /// Human-readable form with 1-based local indices.
    pub fn display(&self, gs: &GrapesStructure) -> String {
        let g = gs.graph();
        let names = g.edge_names();
        let mut parts = Vec::new();
        if self.a > 0 {
            parts.push(Monomial::power(gs.root_edge, self.a).display(&names));
        }
        for (v, c) in &self.choices {
            let vid = g.vertex_id(*v);
            let l = gs.local(*v).expect("essential vertex");
            let mut s = String::new();
            match c {
                SLChoice::Unit => continue,
                SLChoice::Star { p, j, k } => {
                    if !p.is_one() {
                        let _ = write!(s, "{}*", p.display(&names));
                    }
                    let _ = write!(s, "alpha({vid};1,{},{})", j + 1, k + 1);
                }
                SLChoice::Loop { q, r } => {
                    if !q.is_one() {
                        let _ = write!(s, "{}*", q.display(&names));
                    }
                    let idx = l.loop_labels().iter().position(|x| x == r).expect("loop label") + 1;
                    let _ = write!(s, "beta({vid};{idx})");
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Local labels a star `α_{1jk}` coefficient must avoid: label 0 and every
/// label strictly between those of `h_j` and `h_k`.
fn star_forbidden(l: &LocalLabeling, j: usize, k: usize) -> Vec<usize> {
    let (jl, kl) = (l.label_of[j], l.label_of[k]);
    std::iter::once(0).chain(jl + 1..kl).collect()
}

fn allowed_edges(l: &LocalLabeling, forbidden: &[usize]) -> Vec<usize> {
    let mut es: Vec<usize> = (0..l.edges.len())
        .filter(|x| !forbidden.contains(x))
        .map(|x| l.edges[x])
        .collect();
    es.sort_unstable();
    es.dedup();
    es
}

/// Admissible star index pairs `(j, k)` (0-based positions): both first
/// half-edges, `0 < j < k`.
pub(crate) fn admissible_stars(l: &LocalLabeling) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..l.len() {
        for k in j + 1..l.len() {
            if l.is_first(j) && l.is_first(k) {
                out.push((j, k));
            }
        }
    }
    out
}

/// Non-unit local choices of exactly weight `w` at one vertex.
fn local_choices(l: &LocalLabeling, w: usize) -> Vec<SLChoice> {
    let mut out = Vec::new();
    if w >= 2 {
        for (j, k) in admissible_stars(l) {
            let vars = allowed_edges(l, &star_forbidden(l, j, k));
            for p in Monomial::all_of_degree(&vars, (w - 2) as u32) {
                out.push(SLChoice::Star { p, j, k });
            }
        }
    }
    if w >= 1 {
        let vars = allowed_edges(l, &[0]);
        for r in l.loop_labels() {
            for q in Monomial::all_of_degree(&vars, (w - 1) as u32) {
                out.push(SLChoice::Loop { q: q.clone(), r });
            }
        }
    }
    out
}

/// All Star–Loop generators of degree `i` and weight `k`.
pub fn sl_basis(gs: &GrapesStructure, i: usize, k: usize) -> Vec<SLGenerator> {
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        gs: &GrapesStructure,
        idx: usize,
        deg_left: usize,
        w_left: usize,
        chosen: &mut Vec<(usize, SLChoice)>,
        out: &mut Vec<SLGenerator>,
    ) {
        let locals = &gs.locals;
        if locals.len() - idx < deg_left {
            return;
        }
        if idx == locals.len() {
            out.push(SLGenerator {
                a: w_left as u32,
                choices: chosen.clone(),
            });
            return;
        }
        let l = &locals[idx];
        chosen.push((l.vertex, SLChoice::Unit));
        rec(gs, idx + 1, deg_left, w_left, chosen, out);
        chosen.pop();
        if deg_left == 0 {
            return;
        }
        for w in 1..=w_left {
            for c in local_choices(l, w) {
                chosen.push((l.vertex, c));
                rec(gs, idx + 1, deg_left - 1, w_left - w, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(gs, 0, i, k, &mut chosen, &mut out);
    out
}

/// The cycle of one local choice, without the root power.
pub(crate) fn choice_chain(gs: &GrapesStructure, v: usize, c: &SLChoice) -> Option<Chain> {
    let l = gs.local(v).expect("essential vertex");
    match c {
        SLChoice::Unit => None,
        SLChoice::Star { p, j, k } => Some(star_chain(l, 0, *j, *k).times_mono(p)),
        SLChoice::Loop { q, r } => {
            let (i, _) = l.loop_positions(*r).expect("normalized loop");
            Some(loop_chain(l, i).times_mono(q))
        }
    }
}

/// The external product of a generator as a Świątkowski cycle.
pub fn sl_external_product(gs: &GrapesStructure, gen: &SLGenerator) -> Chain {
    let mut acc = Chain::single(BasisElement::from_mono(Monomial::power(gs.root_edge, gen.a)));
    for (v, c) in &gen.choices {
        if let Some(x) = choice_chain(gs, *v, c) {
            acc = acc.wedge(&x);
        }
    }
    acc
}

/// Multiplies a chain by a polynomial.
pub fn poly_times(p: &Poly, c: &Chain) -> Chain {
    let mut out = Chain::new();
    for (m, x) in p.terms() {
        out.add_scaled(&c.times_mono(m), x);
    }
    out
}

/// Per-degree outcome of the basis theorem check.
#[derive(Debug, Clone, Serialize)]
pub struct SLDegreeReport {
    pub degree: usize,
    pub weight: usize,
    pub predicted: usize,
    pub computed: usize,
    pub invertible: bool,
    /// Determinant `±1`, so the generators form a basis over ℤ.
    pub unimodular: bool,
    pub passed: bool,
}

/// Homology coordinates of the external products of the given generators,
/// one row per generator.
pub fn sl_coordinates(gs: &GrapesStructure, h: &WeightHomology, i: usize, gens: &[SLGenerator]) -> Vec<Vec<BigInt>> {
    gens.iter().map(|g| h.coords(i, &sl_external_product(gs, g))).collect()
}

fn square_matrix(rows: &[Vec<BigInt>]) -> Matrix {
    let n = rows.len();
    let mut m = Matrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

/// Compares Star–Loop counts with Betti numbers at weight `k` in every
/// degree and checks that the external products form a basis.
pub fn verify_sl_at(gs: &GrapesStructure, h: &WeightHomology, k: usize) -> Vec<SLDegreeReport> {
    let top = gs.locals.len();
    (0..=top)
        .map(|i| {
            let gens = sl_basis(gs, i, k);
            let computed = h.betti(i);
            let predicted = gens.len();
            let (invertible, unimodular) = if predicted != computed {
                (false, false)
            } else if computed == 0 {
                (true, true)
            } else {
                let rows = sl_coordinates(gs, h, i, &gens);
                let q_rows: Vec<_> = rows.iter().map(|r| rational::to_q(r)).collect();
                let inv = rational::rank(&q_rows, computed) == computed;
                let det = square_matrix(&rows).determinant();
                (inv, det.abs().is_one())
            };
            SLDegreeReport {
                degree: i,
                weight: k,
                predicted,
                computed,
                invertible,
                unimodular,
                passed: predicted == computed && invertible && h.torsion(i).is_empty(),
            }
        })
        .collect()
}

/// Basis theorem check for all weights `≤ max_weight`.
pub fn verify_sl_isomorphism(gs: &GrapesStructure, max_weight: usize) -> Vec<SLDegreeReport> {
    use rayon::prelude::*;
    let m = Swiatkowski::new(gs.graph());
    (0..=max_weight)
        .into_par_iter()
        .flat_map_iter(|k| {
            let h = WeightHomology::compute(&m, k);
            verify_sl_at(gs, &h, k)
        })
        .collect()
}

/// `N_{ℓ,m}(k) = (2ℓ+m-2)·C(k+ℓ+m-2, ℓ+m-1) - C(k+ℓ+m-2, ℓ+m-2) + 1`, the
/// first Betti number of `B_k Γ_{ℓ,m}`.
pub fn betti_closed_form(ell: usize, m: usize, k: usize) -> Result<BigInt> {
    if 2 * ell + m < 3 {
        return Err(Error::DegenerateGraph(ell, m));
    }
    let n = (k + ell + m - 2) as u64;
    let top = (ell + m - 1) as u64;
    let v = BigInt::from(2 * ell + m - 2) * binomial(n, top) - binomial(n, top - 1) + BigInt::one();
    debug_assert!(!v.is_negative());
    Ok(if v.is_zero() { BigInt::zero() } else { v })
}

/// Writes a class, given by homology coordinates in `H_i(B_k)`, as a
/// rational combination of Star–Loop generators. Zero coefficients are
/// dropped.
pub fn sl_decompose(
    gs: &GrapesStructure,
    h: &WeightHomology,
    i: usize,
    v: &[rational::Q],
) -> Option<Vec<(SLGenerator, rational::Q)>> {
    let gens = sl_basis(gs, i, h.weight());
    let coords = sl_coordinates(gs, h, i, &gens);
    let cols: Vec<Vec<rational::Q>> = coords.iter().map(|r| rational::to_q(r)).collect();
    let rows = rational::columns_to_rows(&cols, v.len());
    let x = rational::solve(&rows, v, gens.len())?;
    Some(
        gens.into_iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    )
}
