//! The coshuffle comultiplication on chains, its axioms, and the induced
//! comultiplication on homology.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::rational::{self, Q};
use crate::poly::Monomial;
use crate::swiatkowski::{
    boundary, boundary_of, enumerate_weight, format_element, BasisElement, Chain, Local, Model, Ring, Tensor3Chain,
    TensorChain, WeightHomology,
};

fn signed(c: BigInt, negative: bool) -> BigInt {
    if negative {
        -c
    } else {
        c
    }
}

fn local_element(v: usize, g: Local) -> BasisElement {
    BasisElement {
        mono: Monomial::one(),
        locals: vec![(v, g)],
    }
}

/// `(x ⊗ y)·(x' ⊗ y') = (-1)^{|y||x'|} (x∧x') ⊗ (y∧y')`.
pub fn tensor_mul(a: &TensorChain, b: &TensorChain) -> TensorChain {
    let mut out = TensorChain::new();
    for ((x, y), c) in a.iter() {
        for ((x2, y2), d) in b.iter() {
            let (Some((l, s1)), Some((r, s2))) = (x.wedge(x2), y.wedge(y2)) else {
                panic!("tensor factors share a vertex");
            };
            let koszul = y.degree() * x2.degree() % 2 == 1;
            out.add_term((l, r), signed(c * d, s1 ^ s2 ^ koszul));
        }
    }
    out
}

/// Coshuffle of one basis element: `sha*` on the monomial times the
/// coproducts of the local generators, multiplied in vertex order.
pub fn coshuffle_element<M: Model + ?Sized>(m: &M, b: &BasisElement) -> TensorChain {
    let mut acc: TensorChain = b
        .mono
        .splittings()
        .into_iter()
        .map(|(l, r, c)| ((BasisElement::from_mono(l), BasisElement::from_mono(r)), c))
        .collect();
    for &(v, g) in &b.locals {
        let mut next = TensorChain::new();
        let terms = m.local_coproduct(v, &g);
        for ((x, y), c) in acc.iter() {
            for (d, l, r) in &terms {
                let mut negative = false;
                let x2 = match l {
                    Some(g) => {
                        let (e, s) = x.wedge(&local_element(v, *g)).expect("vertex order");
                        negative ^= s;
                        negative ^= y.degree() * g.degree() % 2 == 1;
                        e
                    }
                    None => x.clone(),
                };
                let y2 = match r {
                    Some(g) => {
                        let (e, s) = y.wedge(&local_element(v, *g)).expect("vertex order");
                        negative ^= s;
                        e
                    }
                    None => y.clone(),
                };
                next.add_term((x2, y2), signed(c * d, negative));
            }
        }
        acc = next;
    }
    acc
}

pub fn coshuffle<M: Model + ?Sized>(m: &M, c: &Chain) -> TensorChain {
    let mut out = TensorChain::new();
    for (b, x) in c.iter() {
        out.add_scaled(&coshuffle_element(m, b), x);
    }
    out
}

/// `∂⊗1 + 1⊗∂` with the Koszul sign on the second term.
pub fn tensor_boundary<M: Model + ?Sized>(m: &M, t: &TensorChain) -> TensorChain {
    let mut out = TensorChain::new();
    for ((x, y), c) in t.iter() {
        for (dx, d) in boundary_of(m, x).iter() {
            out.add_term((dx.clone(), y.clone()), c * d);
        }
        let negative = x.degree() % 2 == 1;
        for (dy, d) in boundary_of(m, y).iter() {
            out.add_term((x.clone(), dy.clone()), signed(c * d, negative));
        }
    }
    out
}

/// Koszul swap `x⊗y ↦ (-1)^{|x||y|} y⊗x`.
pub fn swap(t: &TensorChain) -> TensorChain {
    t.iter()
        .map(|((x, y), c)| {
            let negative = x.degree() * y.degree() % 2 == 1;
            ((y.clone(), x.clone()), signed(c.clone(), negative))
        })
        .collect()
}

/// `(ε⊗1)`, with `ε` the projection onto degree 0, weight 0.
pub fn counit_left(t: &TensorChain) -> Chain {
    t.iter()
        .filter(|((x, _), _)| x.is_unit())
        .map(|((_, y), c)| (y.clone(), c.clone()))
        .collect()
}

/// `(1⊗ε)`.
pub fn counit_right(t: &TensorChain) -> Chain {
    t.iter()
        .filter(|((_, y), _)| y.is_unit())
        .map(|((x, _), c)| (x.clone(), c.clone()))
        .collect()
}

/// `(Sha⊗1)∘Sha`.
pub fn coassoc_left<M: Model + ?Sized>(m: &M, t: &TensorChain) -> Tensor3Chain {
    let mut out = Tensor3Chain::new();
    for ((x, y), c) in t.iter() {
        for ((a, b), d) in coshuffle_element(m, x).iter() {
            out.add_term((a.clone(), b.clone(), y.clone()), c * d);
        }
    }
    out
}

/// `(1⊗Sha)∘Sha`.
pub fn coassoc_right<M: Model + ?Sized>(m: &M, t: &TensorChain) -> Tensor3Chain {
    let mut out = Tensor3Chain::new();
    for ((x, y), c) in t.iter() {
        for ((a, b), d) in coshuffle_element(m, y).iter() {
            out.add_term((x.clone(), a.clone(), b.clone()), c * d);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Cocommutativity,
    Coassociativity,
    Counit,
    Coderivation,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [
        Axiom::Cocommutativity,
        Axiom::Coassociativity,
        Axiom::Counit,
        Axiom::Coderivation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Cocommutativity => "cocommutativity",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::Coderivation => "coderivation",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

/// Checks a single basis element against one axiom.
pub fn check_axiom<M: Model + ?Sized>(m: &M, axiom: Axiom, b: &BasisElement) -> bool {
    let sha = coshuffle_element(m, b);
    match axiom {
        Axiom::Cocommutativity => swap(&sha) == sha,
        Axiom::Coassociativity => coassoc_left(m, &sha) == coassoc_right(m, &sha),
        Axiom::Counit => {
            let id = Chain::single(b.clone());
            counit_left(&sha) == id && counit_right(&sha) == id
        }
        Axiom::Coderivation => {
            let lhs = coshuffle(m, &boundary_of(m, b));
            lhs == tensor_boundary(m, &sha)
        }
    }
}

/// All basis elements of weight `≤ max_weight` and degree `≤ max_degree`.
pub fn basis_up_to<M: Model + ?Sized>(m: &M, max_weight: usize, max_degree: usize) -> Vec<BasisElement> {
    (0..=max_weight)
        .flat_map(|k| enumerate_weight(m, k).into_iter().take(max_degree + 1).flatten())
        .collect()
}

/// Verifies the four coalgebra axioms on every basis element within the
/// bounds. The counterexample reported is the first failure in enumeration
/// order.
pub fn verify_coalgebra_axioms<M: Model + ?Sized>(m: &M, max_weight: usize, max_degree: usize) -> Vec<AxiomReport> {
    let basis = basis_up_to(m, max_weight, max_degree);
    Axiom::ALL
        .iter()
        .map(|&axiom| {
            let first_failure = basis
                .par_iter()
                .enumerate()
                .filter(|(_, b)| !check_axiom(m, axiom, b))
                .map(|(i, _)| i)
                .min();
            AxiomReport {
                axiom,
                passed: first_failure.is_none(),
                checked: basis.len(),
                counterexample: first_failure.map(|i| format_element(m, &basis[i])),
            }
        })
        .collect()
}

/// Homology at all weights up to a bound, for Künneth coordinates.
pub struct HomologyCoalgebra {
    pub ring: Ring,
    pub weights: Vec<WeightHomology>,
}

/// One Künneth block `H_{i1}(B_{k1}) ⊗ H_{i2}(B_{k2})` of a comultiplication
/// matrix. Row `a * dim_right + b` is the coordinate of `z_a ⊗ z_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunnethBlock {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub dim_left: usize,
    pub dim_right: usize,
    pub matrix: Vec<Vec<BigInt>>,
}

/// The matrix of `Sha_H` on one `(degree, weight)` slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComultiplicationSlice {
    pub degree: usize,
    pub weight: usize,
    pub dim: usize,
    pub blocks: Vec<KunnethBlock>,
}

impl ComultiplicationSlice {
    /// Flattened coordinates of column `j` over all blocks.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.blocks
            .iter()
            .flat_map(|b| b.matrix.iter().map(move |row| row[j].clone()))
            .collect()
    }
}

/// Künneth coordinates of a tensor cycle, keyed by block.
pub type KunnethVector = BTreeMap<((usize, usize), (usize, usize)), Vec<BigInt>>;

impl HomologyCoalgebra {
    pub fn new<M: Model + ?Sized>(m: &M, max_weight: usize, ring: Ring) -> HomologyCoalgebra {
        let weights = (0..=max_weight)
            .into_par_iter()
            .map(|k| WeightHomology::compute(m, k))
            .collect();
        HomologyCoalgebra { ring, weights }
    }

    pub fn max_weight(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn dim(&self, i: usize, k: usize) -> usize {
        self.weights.get(k).map_or(0, |w| w.betti(i))
    }

    pub fn homology(&self, k: usize) -> &WeightHomology {
        &self.weights[k]
    }

    /// Fails in integer mode if any slice feeding `(i, k)` has torsion.
    pub fn check_torsion_free(&self, i: usize, k: usize) -> Result<()> {
        if self.ring == Ring::Rat {
            return Ok(());
        }
        for k1 in 0..=k {
            for i1 in 0..=i {
                let t = self.weights[k1].torsion(i1);
                if !t.is_empty() {
                    return Err(Error::TorsionPresent {
                        degree: i1,
                        weight: k1,
                        torsion: t.iter().map(ToString::to_string).collect(),
                    });
                }
            }
        }
        Ok(())
    }

    /// All Künneth blocks of total bidegree `(i, k)`, in canonical order.
    pub fn blocks(&self, i: usize, k: usize) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for k1 in 0..=k {
            for i1 in 0..=i {
                let (l, r) = ((i1, k1), (i - i1, k - k1));
                if self.dim(l.0, l.1) > 0 && self.dim(r.0, r.1) > 0 {
                    out.push((l, r));
                }
            }
        }
        out
    }

    /// Künneth coordinates of the class of a tensor cycle of bidegree
    /// `(i, k)`, obtained by applying the coordinate functionals on both
    /// factors (these vanish on boundaries, so the tensor boundary is
    /// killed).
    pub fn tensor_coords(&self, i: usize, k: usize, t: &TensorChain) -> KunnethVector {
        let mut out: KunnethVector = self
            .blocks(i, k)
            .into_iter()
            .map(|(l, r)| {
                let n = self.dim(l.0, l.1) * self.dim(r.0, r.1);
                ((l, r), vec![BigInt::zero(); n])
            })
            .collect();
        let mut grouped: BTreeMap<((usize, usize), (usize, usize)), Vec<(&BasisElement, &BasisElement, &BigInt)>> =
            BTreeMap::new();
        for ((x, y), c) in t.iter() {
            let key = ((x.degree(), x.weight()), (y.degree(), y.weight()));
            grouped.entry(key).or_default().push((x, y, c));
        }
        for (key, terms) in grouped {
            let Some(slot) = out.get_mut(&key) else { continue };
            let ((i1, k1), (i2, k2)) = key;
            let (hl, hr) = (&self.weights[k1], &self.weights[k2]);
            let dr = hr.betti(i2);
            let mut lcache: BTreeMap<&BasisElement, Vec<BigInt>> = BTreeMap::new();
            let mut rcache: BTreeMap<&BasisElement, Vec<BigInt>> = BTreeMap::new();
            for (x, y, c) in terms {
                let lx = lcache
                    .entry(x)
                    .or_insert_with(|| hl.coords(i1, &Chain::single(x.clone())))
                    .clone();
                if lx.iter().all(Zero::is_zero) {
                    continue;
                }
                let ry = rcache
                    .entry(y)
                    .or_insert_with(|| hr.coords(i2, &Chain::single(y.clone())));
                for (a, u) in lx.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (b, w) in ry.iter().enumerate() {
                        if !w.is_zero() {
                            slot[a * dr + b] += c * u * w;
                        }
                    }
                }
            }
        }
        out
    }

    /// Künneth coordinates of `Sha_H` of the class of a cycle.
    pub fn comultiply<M: Model + ?Sized>(&self, m: &M, i: usize, k: usize, z: &Chain) -> KunnethVector {
        self.tensor_coords(i, k, &coshuffle(m, z))
    }

    /// The comultiplication matrix on `H_i(B_k)` using the given cycle
    /// representatives (one per basis class).
    pub fn slice_with<M: Model + ?Sized>(&self, m: &M, i: usize, k: usize, reps: &[Chain]) -> ComultiplicationSlice {
        let cols: Vec<KunnethVector> = reps.par_iter().map(|z| self.comultiply(m, i, k, z)).collect();
        let blocks = self
            .blocks(i, k)
            .into_iter()
            .map(|(l, r)| {
                let (dl, dr) = (self.dim(l.0, l.1), self.dim(r.0, r.1));
                let matrix = (0..dl * dr)
                    .map(|row| cols.iter().map(|c| c[&(l, r)][row].clone()).collect())
                    .collect();
                KunnethBlock {
                    left: l,
                    right: r,
                    dim_left: dl,
                    dim_right: dr,
                    matrix,
                }
            })
            .collect();
        ComultiplicationSlice {
            degree: i,
            weight: k,
            dim: reps.len(),
            blocks,
        }
    }

    /// The comultiplication matrix on `H_i(B_k)` using the stored
    /// representatives.
    pub fn slice<M: Model + ?Sized>(&self, m: &M, i: usize, k: usize) -> Result<ComultiplicationSlice> {
        self.check_torsion_free(i, k)?;
        let reps = self.weights[k].representatives(i);
        Ok(self.slice_with(m, i, k, &reps))
    }

    /// Coordinate of the unit class `[∅]` against the stored basis of
    /// `H_0(B_0)`.
    pub fn unit_coordinate(&self) -> BigInt {
        self.weights[0].coords(0, &Chain::single(BasisElement::unit()))[0].clone()
    }

    /// Matrix of `x ↦ Sha_H(x) - x⊗[∅] - [∅]⊗x` on `H_i(B_k)`, columns
    /// indexed by basis classes, rows by flattened Künneth coordinates.
    pub fn reduced_comultiplication<M: Model + ?Sized>(&self, m: &M, i: usize, k: usize) -> Result<Vec<Vec<BigInt>>> {
        let slice = self.slice(m, i, k)?;
        let u = self.unit_coordinate();
        let mut rows = Vec::new();
        for block in &slice.blocks {
            for a in 0..block.dim_left {
                for b in 0..block.dim_right {
                    let mut row = block.matrix[a * block.dim_right + b].clone();
                    for (j, x) in row.iter_mut().enumerate() {
                        if block.left == (i, k) && block.right == (0, 0) && a == j {
                            *x -= &u;
                        }
                        if block.left == (0, 0) && block.right == (i, k) && b == j {
                            *x -= &u;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        Ok(rows)
    }

    /// Basis over ℚ of the primitive classes in `H_i(B_k)`, in homology
    /// coordinates.
    pub fn primitive_kernel<M: Model + ?Sized>(&self, m: &M, i: usize, k: usize) -> Result<Vec<Vec<Q>>> {
        let n = self.dim(i, k);
        if n == 0 {
            return Ok(Vec::new());
        }
        let rows: Vec<Vec<Q>> = self
            .reduced_comultiplication(m, i, k)?
            .iter()
            .map(|r| rational::to_q(r))
            .collect();
        Ok(rational::kernel(&rows, n))
    }

    /// Whether the class with the given coordinates is primitive.
    pub fn is_primitive<M: Model + ?Sized>(&self, m: &M, i: usize, k: usize, coords: &[BigInt]) -> Result<bool> {
        let rows = self.reduced_comultiplication(m, i, k)?;
        Ok(rows.iter().all(|r| {
            r.iter()
                .zip(coords)
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        }))
    }
}

/// Homology comultiplication of one slice, building the needed homology.
pub fn homology_comultiplication<M: Model + ?Sized>(
    m: &M,
    i: usize,
    k: usize,
    ring: Ring,
) -> Result<ComultiplicationSlice> {
    HomologyCoalgebra::new(m, k, ring).slice(m, i, k)
}

/// Primitive subspace of `H_i(B_k)` over ℚ.
pub fn primitive_kernel<M: Model + ?Sized>(m: &M, i: usize, k: usize) -> Result<Vec<Vec<Q>>> {
    HomologyCoalgebra::new(m, k, Ring::Int).primitive_kernel(m, i, k)
}

/// Adds the boundary of a chain to a cycle; the class is unchanged.
pub fn perturb<M: Model + ?Sized>(m: &M, z: &Chain, w: &Chain) -> Chain {
    let mut out = z.clone();
    out.add(&boundary(m, w));
    out
}

/// `ε` applied to a chain: the coefficient of the unit.
pub fn counit(c: &Chain) -> BigInt {
    c.coefficient(&BasisElement::unit())
}

/// The unit chain `1`, i.e. the empty configuration.
pub fn unit_chain() -> Chain {
    let mut c = Chain::new();
    c.add_term(BasisElement::unit(), BigInt::one());
    c
}
