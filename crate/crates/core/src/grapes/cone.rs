use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::coalgebra::{tensor_mul, verify_coalgebra_axioms, HomologyCoalgebra, KunnethVector};
use crate::graph::{Graph, GrapesStructure, LocalLabeling};
use crate::linalg::Matrix;
use crate::poly::Monomial;
use crate::swiatkowski::{
    primitive_coproduct, swiatkowski_boundary, BasisElement, Chain, CoTerm, Local, LocalTerm, Model, Ring,
    Swiatkowski, TensorChain, WeightComplex,
};

use super::{choice_chain, sl_basis, sl_external_product, SLChoice, SLGenerator};

/// The mapping cone `S̃`: at each essential vertex the Świątkowski
/// generators together with `a_{ijk}` (degree 1) and `ā_{ijk}` (degree 2),
/// both of weight 2, for every triple of local positions `i < j < k`.
#[derive(Debug, Clone)]
pub struct ConeModel {
    graph: Graph,
    vertices: Vec<usize>,
    gens: Vec<Vec<Local>>,
    labels: Vec<Option<LocalLabeling>>,
}

impl ConeModel {
    pub fn new(gs: &GrapesStructure) -> ConeModel {
        let graph = gs.graph().clone();
        let vertices = graph.factor_vertices();
        let mut gens = vec![Vec::new(); graph.num_vertices()];
        let mut labels = vec![None; graph.num_vertices()];
        for &v in &vertices {
            gens[v].push(Local::Vert);
            gens[v].extend(graph.rotation(v).iter().map(|&h| Local::Half(h)));
            if let Some(l) = gs.local(v) {
                let n = l.len() as u16;
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            gens[v].push(Local::Cone([i, j, k]));
                        }
                    }
                }
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            gens[v].push(Local::ConeBar([i, j, k]));
                        }
                    }
                }
                labels[v] = Some(l.clone());
            }
        }
        ConeModel {
            graph,
            vertices,
            gens,
            labels,
        }
    }

    fn labeling(&self, v: usize) -> &LocalLabeling {
        self.labels[v].as_ref().expect("cone generators live at essential vertices")
    }
}

fn cyclic(t: [u16; 3]) -> [(usize, usize, usize); 3] {
    let [i, j, k] = t.map(usize::from);
    [(i, j, k), (j, k, i), (k, i, j)]
}

impl Model for ConeModel {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    fn generators(&self, v: usize) -> &[Local] {
        &self.gens[v]
    }

    /// `∂ā = a - α`, `∂a = 0`.
    fn local_boundary(&self, v: usize, g: &Local) -> Vec<LocalTerm> {
        match g {
            Local::ConeBar(t) => {
                let l = self.labeling(v);
                let mut out = vec![(BigInt::one(), None, Some(Local::Cone(*t)))];
                for (a, b, c) in cyclic(*t) {
                    let e = l.edge_at(a);
                    out.push((-BigInt::one(), Some(e), Some(Local::Half(l.halves[b]))));
                    out.push((BigInt::one(), Some(e), Some(Local::Half(l.halves[c]))));
                }
                out
            }
            Local::Cone(_) => Vec::new(),
            _ => swiatkowski_boundary(&self.graph, g),
        }
    }

    /// `Sha(a) = a⊗1 + 1⊗a` and `Sha(ā) = ā⊗1 + 1⊗ā - H_{ijk}` with
    /// `H_{ijk} = h_i⊗(h_j-h_k) + h_j⊗(h_k-h_i) + h_k⊗(h_i-h_j)`.
    fn local_coproduct(&self, v: usize, g: &Local) -> Vec<CoTerm> {
        let mut out = primitive_coproduct(g);
        if let Local::ConeBar(t) = g {
            let l = self.labeling(v);
            for (a, b, c) in cyclic(*t) {
                let ha = Some(Local::Half(l.halves[a]));
                out.push((-BigInt::one(), ha, Some(Local::Half(l.halves[b]))));
                out.push((BigInt::one(), ha, Some(Local::Half(l.halves[c]))));
            }
        }
        out
    }
}

/// Image of a Star–Loop generator in the cone: `p·α_{1jk} ↦ p·a_{1jk}`,
/// `q·β ↦ q·β`.
pub fn sl_to_cone(gs: &GrapesStructure, gen: &SLGenerator) -> Chain {
    let mut acc = Chain::single(BasisElement::from_mono(Monomial::power(gs.root_edge, gen.a)));
    for (v, c) in &gen.choices {
        let x = match c {
            SLChoice::Unit => continue,
            SLChoice::Star { p, j, k } => Chain::single(BasisElement {
                mono: p.clone(),
                locals: vec![(*v, Local::Cone([0, *j as u16, *k as u16]))],
            }),
            SLChoice::Loop { .. } => choice_chain(gs, *v, c).expect("loop chain"),
        };
        acc = acc.wedge(&x);
    }
    acc
}

fn primitive_tensor(x: &Chain) -> TensorChain {
    let mut t = TensorChain::new();
    for (b, c) in x.iter() {
        t.add_term((b.clone(), BasisElement::unit()), c.clone());
        t.add_term((BasisElement::unit(), b.clone()), c.clone());
    }
    t
}

fn sha_monomial(m: &Monomial) -> TensorChain {
    m.splittings()
        .into_iter()
        .map(|(l, r, c)| ((BasisElement::from_mono(l), BasisElement::from_mono(r)), c))
        .collect()
}

/// The Star–Loop coproduct at chain level: `sha*` on the coefficients
/// times `x⊗1 + 1⊗x` on each bare star or loop class, multiplied in vertex
/// order with Koszul signs.
pub fn sl_coproduct(gs: &GrapesStructure, gen: &SLGenerator) -> TensorChain {
    let l = |v: usize| gs.local(v).expect("essential vertex");
    let mut acc = sha_monomial(&Monomial::power(gs.root_edge, gen.a));
    for (v, c) in &gen.choices {
        let (coef, bare) = match c {
            SLChoice::Unit => continue,
            SLChoice::Star { p, j, k } => (p, super::star_chain(l(*v), 0, *j, *k)),
            SLChoice::Loop { q, r } => {
                let (i, _) = l(*v).loop_positions(*r).expect("normalized loop");
                (q, super::loop_chain(l(*v), i))
            }
        };
        let factor = tensor_mul(&sha_monomial(coef), &primitive_tensor(&bare));
        acc = tensor_mul(&acc, &factor);
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
pub struct FormalityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormalityReport {
    pub max_weight: usize,
    pub checks: Vec<FormalityCheck>,
    /// `(degree, weight, betti of S, betti of S̃)`.
    pub betti: Vec<(usize, usize, usize, usize)>,
}

impl FormalityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn square(rows: &[Vec<BigInt>]) -> Matrix {
    let n = rows.len();
    let mut m = Matrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m
}

fn unimodular(rows: &[Vec<BigInt>]) -> bool {
    rows.is_empty() || rows.iter().all(|r| r.len() == rows.len()) && square(rows).determinant().abs().is_one()
}

/// Applies `T⊗T` blockwise, where `transport[(i, k)]` maps coordinates in
/// `H_i(B_k)` of one model to those of another (rows: source classes).
fn transport_kunneth(
    v: &KunnethVector,
    transport: &std::collections::BTreeMap<(usize, usize), Vec<Vec<BigInt>>>,
) -> KunnethVector {
    let mut out = KunnethVector::new();
    for (&(l, r), coords) in v {
        let (tl, tr) = (&transport[&l], &transport[&r]);
        let (dl, dr) = (tl.len(), tr.len());
        let mut w = vec![BigInt::default(); dl * dr];
        for a in 0..dl {
            for b in 0..dr {
                let c = &coords[a * dr + b];
                if c.sign() == num_bigint::Sign::NoSign {
                    continue;
                }
                for (a2, x) in tl[a].iter().enumerate() {
                    for (b2, y) in tr[b].iter().enumerate() {
                        w[a2 * dr + b2] += c * x * y;
                    }
                }
            }
        }
        out.insert((l, r), w);
    }
    out
}

/// Builds the cone and checks, for weights `≤ max_weight`: `∂² = 0`, the
/// coalgebra axioms, that `S → S̃` and `SL → S̃` induce isomorphisms on
/// homology, and that both are compatible with the comultiplications.
pub fn verify_formality(gs: &GrapesStructure, max_weight: usize) -> FormalityReport {
    let s = Swiatkowski::new(gs.graph());
    let cone = ConeModel::new(gs);
    let top = gs.locals.len();
    let mut checks = Vec::new();

    let d2 = (0..=max_weight)
        .into_par_iter()
        .find_first(|&k| !WeightComplex::build(&cone, k).complex.squares_to_zero());
    checks.push(FormalityCheck {
        name: "cone_boundary_squared".into(),
        passed: d2.is_none(),
        detail: d2.map(|k| format!("nonzero at weight {k}")),
    });

    let axioms = verify_coalgebra_axioms(&cone, max_weight, 2 * top);
    let failed: Vec<String> = axioms
        .iter()
        .filter(|a| !a.passed)
        .map(|a| format!("{} fails on {}", a.axiom.name(), a.counterexample.clone().unwrap_or_default()))
        .collect();
    checks.push(FormalityCheck {
        name: "cone_coalgebra_axioms".into(),
        passed: failed.is_empty(),
        detail: (!failed.is_empty()).then(|| failed.join("; ")),
    });

    let hs = HomologyCoalgebra::new(&s, max_weight, Ring::Int);
    let hc = HomologyCoalgebra::new(&cone, max_weight, Ring::Int);
    let mut betti = Vec::new();
    let mut transport = std::collections::BTreeMap::new();
    let mut inclusion_fail = Vec::new();
    let mut sl_fail = Vec::new();
    let max_deg = top.max(hc.weights.iter().map(|w| w.degrees.len()).max().unwrap_or(1) - 1);
    for k in 0..=max_weight {
        for i in 0..=max_deg {
            let (bs, bc) = (hs.dim(i, k), hc.dim(i, k));
            betti.push((i, k, bs, bc));
            let rows: Vec<Vec<BigInt>> = hs
                .homology(k)
                .representatives(i)
                .iter()
                .map(|z| hc.homology(k).coords(i, z))
                .collect();
            if bs != bc || !unimodular(&rows) {
                inclusion_fail.push(format!("({i},{k})"));
            }
            transport.insert((i, k), rows);
            let gens = sl_basis(gs, i, k);
            let rows: Vec<Vec<BigInt>> = gens
                .iter()
                .map(|g| hc.homology(k).coords(i, &sl_to_cone(gs, g)))
                .collect();
            if gens.len() != bc || !unimodular(&rows) {
                sl_fail.push(format!("({i},{k})"));
            }
        }
    }
    let mk = |name: &str, fails: Vec<String>| FormalityCheck {
        name: name.into(),
        passed: fails.is_empty(),
        detail: (!fails.is_empty()).then(|| format!("fails at {}", fails.join(", "))),
    };
    checks.push(mk("inclusion_quasi_isomorphism", inclusion_fail));
    checks.push(mk("star_loop_quasi_isomorphism", sl_fail));

    let mut compat_fail = Vec::new();
    let torsion_free = (0..=max_weight).all(|k| (0..=max_deg).all(|i| hs.check_torsion_free(i, k).is_ok()));
    if !torsion_free {
        compat_fail.push("homology has torsion".to_string());
    }
    for k in 0..=max_weight {
        for i in 0..=top {
            for g in sl_basis(gs, i, k) {
                let star = sl_external_product(gs, &g);
                let in_s = hs.comultiply(&s, i, k, &star);
                let formula = hs.tensor_coords(i, k, &sl_coproduct(gs, &g));
                let in_cone = hc.comultiply(&cone, i, k, &sl_to_cone(gs, &g));
                if in_s != formula || transport_kunneth(&in_s, &transport) != in_cone {
                    compat_fail.push(g.display(gs));
                }
            }
        }
    }
    checks.push(mk("comultiplication_compatibility", compat_fail));

    FormalityReport {
        max_weight,
        checks,
        betti,
    }
}
