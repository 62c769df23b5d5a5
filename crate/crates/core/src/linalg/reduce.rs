//! Integral homology of a finite chain complex of free modules.
//!
//! Pairs of basis elements joined by a unit boundary coefficient are
//! cancelled first (each cancellation is a chain homotopy equivalence onto a
//! smaller complex); the small remainder goes through Smith normal form.
//! Every cancellation is recorded so that representatives can be lifted back
//! and class-coordinate functionals pulled back to the original basis.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, Matrix, SparseMatrix, SparseVec};

/// Chain complex `C_top → … → C_1 → C_0`; `boundary[i]` maps `C_i` to
/// `C_{i-1}` (`boundary[0]` has zero rows).
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundary: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, mut boundary: Vec<SparseMatrix>) -> ChainComplex {
        if boundary.is_empty() && !dims.is_empty() {
            boundary.push(SparseMatrix::zeros(0, dims[0]));
        }
        assert_eq!(dims.len(), boundary.len(), "one boundary map per degree");
        for (i, m) in boundary.iter().enumerate() {
            assert_eq!(m.cols, dims[i], "boundary {i} has wrong column count");
            let below = if i == 0 { 0 } else { dims[i - 1] };
            assert_eq!(m.rows, below, "boundary {i} has wrong row count");
        }
        ChainComplex { dims, boundary }
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    /// Whether all consecutive boundaries compose to zero.
    pub fn squares_to_zero(&self) -> bool {
        (1..self.dims.len()).all(|i| self.boundary[i - 1].mul(&self.boundary[i]).is_zero())
    }
}

/// Homology in one degree.
#[derive(Debug, Clone, Default)]
pub struct DegreeHomology {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Cycles whose classes form a basis of the free part.
    pub representatives: Vec<SparseVec>,
    /// Integer functionals on the chain group that vanish on boundaries and
    /// evaluate representatives to the standard basis.
    pub functionals: Vec<SparseVec>,
}

struct Step {
    /// Degree of `a`; `b` lives one degree lower.
    deg: usize,
    a: usize,
    b: usize,
    unit: BigInt,
    /// Boundary of `a` with the `b` entry removed.
    w: SparseVec,
    /// Entries in row `b` of the boundary out of degree `deg`, excluding `a`.
    row_b: SparseVec,
}

struct Work {
    cols: Vec<Vec<Option<BTreeMap<usize, BigInt>>>>,
    rows: Vec<Vec<BTreeSet<usize>>>,
    steps: Vec<Step>,
}

impl Work {
    fn new(cc: &ChainComplex) -> Work {
        let n = cc.dims.len();
        let mut cols = Vec::with_capacity(n);
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let below = if i == 0 { 0 } else { cc.dims[i - 1] };
            let mut r = vec![BTreeSet::new(); below];
            let c: Vec<Option<BTreeMap<usize, BigInt>>> = cc.boundary[i]
                .columns
                .iter()
                .enumerate()
                .map(|(a, col)| {
                    let mut m = BTreeMap::new();
                    for (b, x) in col {
                        if !x.is_zero() {
                            m.insert(*b, x.clone());
                            r[*b].insert(a);
                        }
                    }
                    Some(m)
                })
                .collect();
            cols.push(c);
            rows.push(r);
        }
        Work {
            cols,
            rows,
            steps: Vec::new(),
        }
    }

    fn eliminate(&mut self, d: usize, a: usize, b: usize) {
        let col_a = self.cols[d][a].take().expect("live column");
        let unit = col_a[&b].clone();
        let w: SparseVec = col_a
            .iter()
            .filter(|(&r, _)| r != b)
            .map(|(&r, x)| (r, x.clone()))
            .collect();
        for &r in col_a.keys() {
            self.rows[d][r].remove(&a);
        }
        let others: Vec<usize> = self.rows[d][b].iter().copied().collect();
        let mut row_b = Vec::with_capacity(others.len());
        for x in others {
            let col_x = self.cols[d][x].as_mut().expect("live column");
            let c = col_x[&b].clone();
            let factor = -(&c * &unit);
            col_x.remove(&b);
            self.rows[d][b].remove(&x);
            for (r, y) in &w {
                let entry = col_x.entry(*r).or_insert_with(BigInt::zero);
                *entry += &factor * y;
                if entry.is_zero() {
                    col_x.remove(r);
                    self.rows[d][*r].remove(&x);
                } else {
                    self.rows[d][*r].insert(x);
                }
            }
            row_b.push((x, c));
        }
        if d >= 1 {
            if let Some(col_b) = self.cols[d - 1][b].take() {
                for r in col_b.keys() {
                    self.rows[d - 1][*r].remove(&b);
                }
            }
        }
        if d + 1 < self.cols.len() {
            let above: Vec<usize> = std::mem::take(&mut self.rows[d + 1][a]).into_iter().collect();
            for y in above {
                if let Some(col) = self.cols[d + 1][y].as_mut() {
                    col.remove(&a);
                }
            }
        }
        self.steps.push(Step {
            deg: d,
            a,
            b,
            unit,
            w,
            row_b,
        });
    }

    fn alive(&self, d: usize) -> Vec<usize> {
        (0..self.cols[d].len())
            .filter(|&a| self.cols[d][a].is_some())
            .collect()
    }

    fn reduce(&mut self) {
        loop {
            let mut changed = false;
            for d in 1..self.cols.len() {
                let mut order: Vec<(usize, usize)> = self.cols[d]
                    .iter()
                    .enumerate()
                    .filter_map(|(a, c)| c.as_ref().map(|c| (c.len(), a)))
                    .filter(|&(n, _)| n > 0)
                    .collect();
                order.sort_unstable();
                for (_, a) in order {
                    let Some(col) = self.cols[d][a].as_ref() else { continue };
                    let pick = col
                        .iter()
                        .filter(|(_, x)| x.abs().is_one())
                        .map(|(&b, _)| (self.rows[d][b].len(), b))
                        .min();
                    if let Some((_, b)) = pick {
                        self.eliminate(d, a, b);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Computes homology in every degree. With `with_bases`, representatives
/// and coordinate functionals are produced as well.
pub fn homology(cc: &ChainComplex, with_bases: bool) -> Vec<DegreeHomology> {
    let n = cc.dims.len();
    let mut work = Work::new(cc);
    work.reduce();
    let alive: Vec<Vec<usize>> = (0..n).map(|d| work.alive(d)).collect();
    let position: Vec<BTreeMap<usize, usize>> = alive
        .iter()
        .map(|a| a.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();
    // Remaining boundary out of degree d as a dense matrix.
    let dense = |d: usize| -> Matrix {
        let rows = if d == 0 { 0 } else { alive[d - 1].len() };
        let mut m = Matrix::zeros(rows, alive[d].len());
        if d == 0 {
            return m;
        }
        for (j, &a) in alive[d].iter().enumerate() {
            for (b, x) in work.cols[d][a].as_ref().expect("live") {
                m[(position[d - 1][b], j)] = x.clone();
            }
        }
        m
    };

    let mut out = Vec::with_capacity(n);
    for d in 0..n {
        let here = alive[d].len();
        let down = dense(d);
        let up = if d + 1 < n { dense(d + 1) } else { Matrix::zeros(here, 0) };
        let (kernel, kernel_coords) = if down.rows() == 0 || down.is_zero() {
            (Matrix::identity(here), Matrix::identity(here))
        } else {
            let s = smith_normal_form(&down);
            let r = s.rank();
            (s.v.select_cols(r..here), s.v_inv.select_rows(r..here))
        };
        let z = kernel.cols();
        let image = kernel_coords.mul(&up);
        let (p, p_inv, diag) = if image.is_zero() {
            (Matrix::identity(z), Matrix::identity(z), Vec::new())
        } else {
            let s = smith_normal_form(&image);
            (s.u, s.u_inv, s.diagonal)
        };
        let r2 = diag.len();
        let torsion: Vec<BigInt> = diag.iter().filter(|x| !x.is_one()).cloned().collect();
        let mut h = DegreeHomology {
            betti: z - r2,
            torsion,
            ..Default::default()
        };
        if with_bases && h.betti > 0 {
            let reps = kernel.mul(&p_inv.select_cols(r2..z));
            let funcs = p.select_rows(r2..z).mul(&kernel_coords);
            for c in 0..h.betti {
                let mut x: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (i, &orig) in alive[d].iter().enumerate() {
                    if !reps[(i, c)].is_zero() {
                        x.insert(orig, reps[(i, c)].clone());
                    }
                }
                h.representatives.push(lift(&work.steps, d, x));
                let mut phi: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (i, &orig) in alive[d].iter().enumerate() {
                    if !funcs[(c, i)].is_zero() {
                        phi.insert(orig, funcs[(c, i)].clone());
                    }
                }
                h.functionals.push(pull_back(&work.steps, d, phi));
            }
        }
        out.push(h);
    }
    out
}

fn lift(steps: &[Step], d: usize, mut x: BTreeMap<usize, BigInt>) -> SparseVec {
    for s in steps.iter().rev().filter(|s| s.deg == d) {
        let mut acc = BigInt::zero();
        for (y, c) in &s.row_b {
            if let Some(v) = x.get(y) {
                acc += c * v;
            }
        }
        if !acc.is_zero() {
            x.insert(s.a, -(acc * &s.unit));
        }
    }
    x.into_iter().collect()
}

fn pull_back(steps: &[Step], d: usize, mut phi: BTreeMap<usize, BigInt>) -> SparseVec {
    for s in steps.iter().rev().filter(|s| s.deg == d + 1) {
        let mut acc = BigInt::zero();
        for (r, y) in &s.w {
            if let Some(v) = phi.get(r) {
                acc += v * y;
            }
        }
        if !acc.is_zero() {
            phi.insert(s.b, -(acc * &s.unit));
        }
    }
    phi.into_iter().collect()
}

/// Betti numbers and torsion only.
pub fn betti_and_torsion(cc: &ChainComplex) -> Vec<(usize, Vec<BigInt>)> {
    homology(cc, false)
        .into_iter()
        .map(|h| (h.betti, h.torsion))
        .collect()
}

/// Evaluates functionals on a sparse vector.
pub fn evaluate(functionals: &[SparseVec], v: &BTreeMap<usize, BigInt>) -> Vec<BigInt> {
    functionals
        .iter()
        .map(|phi| {
            phi.iter()
                .filter_map(|(i, c)| v.get(i).map(|x| x * c))
                .fold(BigInt::zero(), |a, b| a + b)
        })
        .collect()
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
