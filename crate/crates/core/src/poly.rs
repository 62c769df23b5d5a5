//! Polynomials over the edge set with integer coefficients, together with
//! the ring comultiplication `sha*` and the subalgebra generated by edge
//! differences.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A monomial in the edge variables, stored as sorted `(edge, exponent)`
/// pairs with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(e: usize) -> Monomial {
        Monomial(vec![(e, 1)])
    }

    pub fn power(e: usize, n: u32) -> Monomial {
        if n == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(e, n)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Monomial {
        let mut map: BTreeMap<usize, u32> = BTreeMap::new();
        for (e, n) in pairs {
            *map.entry(e).or_default() += n;
        }
        Monomial(map.into_iter().filter(|&(_, n)| n > 0).collect())
    }

    /// Builds a monomial from a dense exponent vector indexed by variable.
    pub fn from_dense(exps: &[u32]) -> Monomial {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &n)| n > 0)
                .map(|(e, &n)| (e, n))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, n)| n).sum()
    }

    pub fn exponent(&self, e: usize) -> u32 {
        self.0
            .binary_search_by_key(&e, |&(v, _)| v)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_free_of(&self, e: usize) -> bool {
        self.exponent(e) == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, m)), Some(&(b, n))) if a == b => {
                    out.push((a, m + n));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, m)), Some(&(b, _))) if a < b => {
                    out.push((a, m));
                    i += 1;
                }
                (Some(&(a, m)), None) => {
                    out.push((a, m));
                    i += 1;
                }
                (_, Some(&(b, n))) => {
                    out.push((b, n));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn mul_var(&self, e: usize) -> Monomial {
        self.mul(&Monomial::var(e))
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(e, n)| other.exponent(e) >= n)
    }

    /// Every `(b, a-b, C(a,b))` with `b ≤ a`, where `C(a,b)` is the product
    /// of binomial coefficients.
    pub fn splittings(&self) -> Vec<(Monomial, Monomial, BigInt)> {
        let mut out = vec![(Vec::new(), Vec::new(), BigInt::one())];
        for &(e, n) in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (n as usize + 1));
            for (left, right, c) in &out {
                for b in 0..=n {
                    let mut l: Vec<(usize, u32)> = left.clone();
                    let mut r: Vec<(usize, u32)> = right.clone();
                    if b > 0 {
                        l.push((e, b));
                    }
                    if b < n {
                        r.push((e, n - b));
                    }
                    next.push((l, r, c * binomial(n as u64, b as u64)));
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|(l, r, c)| (Monomial(l), Monomial(r), c))
            .collect()
    }

    /// All monomials of total degree `d` in the given variables, in
    /// descending lexicographic order of exponent vectors.
    pub fn all_of_degree(vars: &[usize], d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; vars.len()];
        fn rec(vars: &[usize], i: usize, left: u32, exps: &mut [u32], out: &mut Vec<Monomial>) {
            if i + 1 >= vars.len() {
                if vars.is_empty() {
                    if left == 0 {
                        out.push(Monomial::one());
                    }
                    return;
                }
                exps[i] = left;
                out.push(Monomial::from_pairs(vars.iter().copied().zip(exps.iter().copied())));
                return;
            }
            for n in (0..=left).rev() {
                exps[i] = n;
                rec(vars, i + 1, left - n, exps, out);
            }
            exps[i] = 0;
        }
        rec(vars, 0, d, &mut exps, &mut out);
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, &(e, n)) in self.0.iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            s.push_str(names.get(e).map(String::as_str).unwrap_or("?"));
            if n > 1 {
                let _ = write!(s, "^{n}");
            }
        }
        s
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// lowest-indexed variable, and so on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.0.get(i), other.0.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(a, m)), Some(&(b, n))) => {
                        if a != b {
                            return if a < b { Ordering::Greater } else { Ordering::Less };
                        }
                        if m != n {
                            return m.cmp(&n);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn add_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a BigInt)>) -> String {
    let mut s = String::new();
    for (i, (body, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            let _ = write!(s, "{abs}");
        } else if abs.is_one() {
            s.push_str(&body);
        } else {
            let _ = write!(s, "{abs}*{body}");
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Poly {
        Poly::term(Monomial::one(), c)
    }

    pub fn var(e: usize) -> Poly {
        Poly::term(Monomial::var(e), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        add_term(&mut self.terms, m, c);
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Whether every term has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Highest-order term first.
    pub fn display(&self, names: &[String]) -> String {
        format_terms(self.terms.iter().rev().map(|(m, c)| (m.display(names), c)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Monomial, Monomial), BigInt>,
}

impl TensorPoly {
    pub fn zero() -> TensorPoly {
        TensorPoly::default()
    }

    pub fn add_term(&mut self, l: Monomial, r: Monomial, c: BigInt) {
        add_term(&mut self.terms, (l, r), c);
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Monomial), BigInt> {
        &self.terms
    }

    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), c) in &self.terms {
            for ((x, y), d) in &other.terms {
                out.add_term(a.mul(x), b.mul(y), c * d);
            }
        }
        out
    }

    pub fn swap(&self) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.clone());
        }
        out
    }

    /// Applies the counit (constant-term projection) to the left factor.
    pub fn counit_left(&self) -> Poly {
        let mut out = Poly::zero();
        for ((a, b), c) in &self.terms {
            if a.is_one() {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }

    /// Applies the counit to the right factor.
    pub fn counit_right(&self) -> Poly {
        self.swap().counit_left()
    }

    pub fn display(&self, names: &[String]) -> String {
        format_terms(
            self.terms
                .iter()
                .rev()
                .map(|((a, b), c)| (format!("{}⊗{}", a.display(names), b.display(names)), c)),
        )
    }
}

/// `sha*(E^a) = Σ_{b≤a} C(a,b) E^b ⊗ E^{a-b}`, extended linearly.
pub fn sha_star(p: &Poly) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for (m, c) in p.terms() {
        for (l, r, k) in m.splittings() {
            out.add_term(l, r, c * k);
        }
    }
    out
}

/// Membership in the subalgebra generated by edge differences: substitute
/// `e ↦ ē + e0` for every `e ≠ e0` and require no positive power of `e0`.
pub fn in_r0(p: &Poly, e0: usize) -> bool {
    let shift = |e: usize| Poly::var(e).add(&Poly::var(e0));
    let mut sub = Poly::zero();
    for (m, c) in p.terms() {
        let mut t = Poly::constant(c.clone());
        for &(e, n) in m.pairs() {
            let base = if e == e0 { Poly::var(e0) } else { shift(e) };
            t = t.mul(&base.pow(n));
        }
        sub = sub.add(&t);
    }
    sub.terms().keys().all(|m| m.is_free_of(e0))
}

/// All degree-`d` monomials in the differences `e - e0`, `e ∈ edges`,
/// `e ≠ e0`, expanded.
pub fn r0_homogeneous_basis(edges: &[usize], e0: usize, d: u32) -> Vec<Poly> {
    let vars: Vec<usize> = edges.iter().copied().filter(|&e| e != e0).collect();
    Monomial::all_of_degree(&vars, d)
        .into_iter()
        .map(|m| {
            m.pairs().iter().fold(Poly::one(), |acc, &(e, n)| {
                acc.mul(&Poly::var(e).sub(&Poly::var(e0)).pow(n))
            })
        })
        .collect()
}
