use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::chain::Chain;
use super::model::{Model, WeightComplex};
use crate::linalg::reduce::{self, DegreeHomology};

/// Coefficient ring for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    #[default]
    Int,
    Rat,
}

/// Homology of one `(degree, weight)` slice.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    pub degree: usize,
    pub weight: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub representatives: Vec<Chain>,
}

/// All degrees at one weight, with bases, representatives and coordinate
/// functionals.
pub struct WeightHomology {
    pub complex: WeightComplex,
    pub degrees: Vec<DegreeHomology>,
}

impl WeightHomology {
    pub fn compute<M: Model + ?Sized>(m: &M, k: usize) -> WeightHomology {
        let complex = WeightComplex::build(m, k);
        let degrees = reduce::homology(&complex.complex, true);
        WeightHomology { complex, degrees }
    }

    pub fn weight(&self) -> usize {
        self.complex.weight
    }

    pub fn betti(&self, i: usize) -> usize {
        self.degrees.get(i).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, i: usize) -> &[BigInt] {
        self.degrees.get(i).map_or(&[], |d| &d.torsion)
    }

    /// The `j`-th cycle representative in degree `i`.
    pub fn representative(&self, i: usize, j: usize) -> Chain {
        self.complex.to_chain(i, &self.degrees[i].representatives[j])
    }

    pub fn representatives(&self, i: usize) -> Vec<Chain> {
        (0..self.betti(i)).map(|j| self.representative(i, j)).collect()
    }

    /// Coordinates of the class of a degree-`i` cycle in the representative
    /// basis (torsion ignored).
    pub fn coords(&self, i: usize, c: &Chain) -> Vec<BigInt> {
        match self.degrees.get(i) {
            Some(d) if d.betti > 0 => reduce::evaluate(&d.functionals, &self.complex.to_vector(i, c)),
            _ => Vec::new(),
        }
    }

    pub fn presentation(&self, i: usize, ring: Ring) -> HomologyPresentation {
        HomologyPresentation {
            degree: i,
            weight: self.weight(),
            betti: self.betti(i),
            torsion: match ring {
                Ring::Int => self.torsion(i).to_vec(),
                Ring::Rat => Vec::new(),
            },
            representatives: self.representatives(i),
        }
    }
}

/// Homology of a single slice.
pub fn homology<M: Model + ?Sized>(m: &M, i: usize, k: usize, ring: Ring) -> HomologyPresentation {
    WeightHomology::compute(m, k).presentation(i, ring)
}

/// One row of a Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub degree: usize,
    pub weight: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
}

/// Betti numbers and torsion for all degrees `≤ max_degree` and weights
/// `≤ max_weight`, computed in parallel over weights.
pub fn betti_table<M: Model + ?Sized>(m: &M, max_degree: usize, max_weight: usize, ring: Ring) -> Vec<BettiRow> {
    let per_weight: Vec<BTreeMap<usize, (usize, Vec<BigInt>)>> = (0..=max_weight)
        .into_par_iter()
        .map(|k| {
            let wc = WeightComplex::build(m, k);
            reduce::betti_and_torsion(&wc.complex).into_iter().enumerate().collect()
        })
        .collect();
    let mut rows = Vec::new();
    for (k, degs) in per_weight.into_iter().enumerate() {
        for i in 0..=max_degree {
            let (betti, torsion) = degs.get(&i).cloned().unwrap_or_default();
            let torsion = match ring {
                Ring::Int => torsion.iter().map(ToString::to_string).collect(),
                Ring::Rat => Vec::new(),
            };
            rows.push(BettiRow {
                degree: i,
                weight: k,
                betti,
                torsion,
            });
        }
    }
    rows.sort_by_key(|r| (r.degree, r.weight));
    rows
}
