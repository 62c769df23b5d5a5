use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;

/// Smith normal form `u * m * v = d` with unimodular `u`, `v` and their
/// inverses. `diagonal` holds the nonzero invariant factors, positive and
/// each dividing the next.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct State {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl State {
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest nonzero entry of the trailing block, ties broken by the
    /// fewest nonzeros in its row and column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (r, c) = (self.a.rows(), self.a.cols());
        let mut row_count = vec![0usize; r];
        let mut col_count = vec![0usize; c];
        for i in t..r {
            for j in t..c {
                if !self.a[(i, j)].is_zero() {
                    row_count[i] += 1;
                    col_count[j] += 1;
                }
            }
        }
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let key = (x.abs(), row_count[i] + col_count[j]);
                let better = match &best {
                    None => true,
                    Some((b, _, _, bc)) => key.0 < *b || (key.0 == *b && key.1 < *bc),
                };
                if better {
                    best = Some((key.0, i, j, key.1));
                }
            }
        }
        best.map(|(_, i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(m: &Matrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut s = State {
        a: m.clone(),
        u: Matrix::identity(r),
        u_inv: Matrix::identity(r),
        v: Matrix::identity(c),
        v_inv: Matrix::identity(c),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = s.pivot(t) else { break };
        s.row_swap(t, pi);
        s.col_swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !s.a[(i, t)].is_zero() {
                    let q = s.a[(i, t)].div_floor(&s.a[(t, t)]);
                    s.row_add(i, t, &-q);
                    clean &= s.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..c {
                if !s.a[(t, j)].is_zero() {
                    let q = s.a[(t, j)].div_floor(&s.a[(t, t)]);
                    s.col_add(j, t, &-q);
                    clean &= s.a[(t, j)].is_zero();
                }
            }
            if !clean {
                let mut best = (s.a[(t, t)].abs(), t, t);
                for i in t + 1..r {
                    let x = s.a[(i, t)].abs();
                    if !x.is_zero() && x < best.0 {
                        best = (x, i, t);
                    }
                }
                for j in t + 1..c {
                    let x = s.a[(t, j)].abs();
                    if !x.is_zero() && x < best.0 {
                        best = (x, t, j);
                    }
                }
                s.row_swap(t, best.1);
                s.col_swap(t, best.2);
                continue;
            }
            let p = s.a[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !s.a[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => s.row_add(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if s.a[(t, t)].is_negative() {
            s.row_negate(t);
        }
        diagonal.push(s.a[(t, t)].clone());
        t += 1;
    }
    Snf {
        diagonal,
        u: s.u,
        u_inv: s.u_inv,
        v: s.v,
        v_inv: s.v_inv,
    }
}
