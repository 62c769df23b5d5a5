use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::Monomial;

/// A local generator at one vertex.
///
/// `Cone` and `ConeBar` only occur in the mapping-cone model; their triple
/// holds 0-based positions in the local labeling of the vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Local {
    Vert,
    Half(usize),
    Cone([u16; 3]),
    ConeBar([u16; 3]),
}

impl Local {
    pub fn degree(&self) -> usize {
        match self {
            Local::Vert => 0,
            Local::Half(_) | Local::Cone(_) => 1,
            Local::ConeBar(_) => 2,
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            Local::Vert | Local::Half(_) => 1,
            Local::Cone(_) | Local::ConeBar(_) => 2,
        }
    }
}

/// An edge monomial wedged with at most one local generator per vertex,
/// listed in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisElement {
    pub mono: Monomial,
    pub locals: Vec<(usize, Local)>,
}

impl BasisElement {
    pub fn unit() -> BasisElement {
        BasisElement::default()
    }

    pub fn new(mono: Monomial, mut locals: Vec<(usize, Local)>) -> BasisElement {
        locals.sort_by_key(|&(v, _)| v);
        debug_assert!(locals.windows(2).all(|w| w[0].0 != w[1].0), "one generator per vertex");
        BasisElement { mono, locals }
    }

    pub fn from_mono(mono: Monomial) -> BasisElement {
        BasisElement {
            mono,
            locals: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.locals.iter().map(|(_, g)| g.degree()).sum()
    }

    pub fn weight(&self) -> usize {
        self.mono.degree() as usize + self.locals.iter().map(|(_, g)| g.weight()).sum::<usize>()
    }

    pub fn is_unit(&self) -> bool {
        self.mono.is_one() && self.locals.is_empty()
    }

    pub fn times_mono(&self, m: &Monomial) -> BasisElement {
        BasisElement {
            mono: self.mono.mul(m),
            locals: self.locals.clone(),
        }
    }

    /// Wedge of two elements with disjoint vertex supports, with the
    /// Koszul sign of moving the generators into vertex order.
    pub fn wedge(&self, other: &BasisElement) -> Option<(BasisElement, bool)> {
        let mut locals = Vec::with_capacity(self.locals.len() + other.locals.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        // Degree of the part of `self` not yet emitted.
        let mut pending: usize = self.locals.iter().map(|(_, g)| g.degree()).sum();
        while i < self.locals.len() || j < other.locals.len() {
            let take_left = match (self.locals.get(i), other.locals.get(j)) {
                (Some(a), Some(b)) => {
                    if a.0 == b.0 {
                        return None;
                    }
                    a.0 < b.0
                }
                (Some(_), None) => true,
                _ => false,
            };
            if take_left {
                pending -= self.locals[i].1.degree();
                locals.push(self.locals[i]);
                i += 1;
            } else {
                let d = other.locals[j].1.degree();
                if d % 2 == 1 && pending % 2 == 1 {
                    negative = !negative;
                }
                locals.push(other.locals[j]);
                j += 1;
            }
        }
        Some((
            BasisElement {
                mono: self.mono.mul(&other.mono),
                locals,
            },
            negative,
        ))
    }
}

/// Finite integer linear combination with ordered keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord>(BTreeMap<K, BigInt>);

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        let mut c = Self::new();
        c.add_term(k, BigInt::one());
        c
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        for (key, c) in &other.0 {
            self.add_term(key.clone(), c * k);
        }
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, &BigInt::one());
    }

    pub fn sub(&mut self, other: &Self) {
        self.add_scaled(other, &-BigInt::one());
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, k);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.0.iter()
    }

    pub fn coefficient(&self, k: &K) -> BigInt {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn first(&self) -> Option<(&K, &BigInt)> {
        self.0.iter().next()
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut c = Self::new();
        for (k, x) in iter {
            c.add_term(k, x);
        }
        c
    }
}

pub type Chain = LinComb<BasisElement>;
pub type TensorChain = LinComb<(BasisElement, BasisElement)>;
pub type Tensor3Chain = LinComb<(BasisElement, BasisElement, BasisElement)>;

impl Chain {
    /// Multiplies every term by an edge monomial.
    pub fn times_mono(&self, m: &Monomial) -> Chain {
        self.iter().map(|(b, c)| (b.times_mono(m), c.clone())).collect()
    }

    /// Wedge product of chains with disjoint vertex supports.
    pub fn wedge(&self, other: &Chain) -> Chain {
        let mut out = Chain::new();
        for (a, x) in self.iter() {
            for (b, y) in other.iter() {
                let (e, neg) = a.wedge(b).expect("disjoint vertex supports");
                let c = x * y;
                out.add_term(e, if neg { -c } else { c });
            }
        }
        out
    }
}
