use num_traits::Signed;

use crate::coalgebra::HomologyCoalgebra;
use crate::error::Result;
use crate::graph::GrapesStructure;
use crate::linalg::rational::{self, Q};
use crate::poly::{r0_homogeneous_basis, Monomial, Poly};
use crate::swiatkowski::{BasisElement, Chain};

use super::{admissible_stars, loop_chain, poly_times, star_chain};

/// One spanning element of the predicted primitive subspace.
#[derive(Debug, Clone)]
pub struct PredictedPrimitive {
    pub label: String,
    /// The `R_0[E]` coefficient.
    pub coefficient: Poly,
    pub chain: Chain,
}

/// Spanning set of the primitives in `H_i(B_k)` predicted by the
/// classification: `e·∅` in bidegree `(0,1)`, and in degree one the
/// products `p·α_{1jk}`, `p·β_r` with `p` ranging over a basis of the
/// degree-appropriate part of `R_0[E]`.
pub fn classify_primitives(gs: &GrapesStructure, i: usize, k: usize) -> Vec<PredictedPrimitive> {
    let g = gs.graph();
    let names = g.edge_names();
    let e0 = gs.root_edge;
    match (i, k) {
        (0, 1) => vec![PredictedPrimitive {
            label: format!("{}*1", names[e0]),
            coefficient: Poly::var(e0),
            chain: Chain::single(BasisElement::from_mono(Monomial::var(e0))),
        }],
        (1, _) => {
            let edges: Vec<usize> = (0..g.num_edges()).collect();
            let mut out = Vec::new();
            for l in &gs.locals {
                let vid = g.vertex_id(l.vertex);
                let mut gammas: Vec<(String, usize, Chain)> = admissible_stars(l)
                    .into_iter()
                    .map(|(j, kk)| (format!("alpha({vid};1,{},{})", j + 1, kk + 1), 2, star_chain(l, 0, j, kk)))
                    .collect();
                for (r, label) in l.loop_labels().into_iter().enumerate() {
                    let (pos, _) = l.loop_positions(label).expect("normalized loop");
                    gammas.push((format!("beta({vid};{})", r + 1), 1, loop_chain(l, pos)));
                }
                for (name, w, gamma) in gammas {
                    if k < w {
                        continue;
                    }
                    for p in r0_homogeneous_basis(&edges, e0, (k - w) as u32) {
                        let p = positive_leading(p);
                        let label = if p == Poly::one() {
                            name.clone()
                        } else {
                            format!("({})*{name}", p.display(&names))
                        };
                        out.push(PredictedPrimitive {
                            label,
                            chain: poly_times(&p, &gamma),
                            coefficient: p,
                        });
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Flips the sign so the leading printed term is positive.
fn positive_leading(p: Poly) -> Poly {
    match p.terms().iter().next_back() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Brute-force primitive kernel against the predicted span.
#[derive(Debug, Clone)]
pub struct PrimitiveComparison {
    pub degree: usize,
    pub weight: usize,
    pub homology_dim: usize,
    pub kernel: Vec<Vec<Q>>,
    /// Row-reduced basis of the predicted span, in homology coordinates.
    pub predicted: Vec<Vec<Q>>,
    pub equal: bool,
}

/// Compares the primitive kernel of `H_i(B_k)` with the classification.
pub fn cross_check_primitives(
    gs: &GrapesStructure,
    hc: &HomologyCoalgebra,
    i: usize,
    k: usize,
) -> Result<PrimitiveComparison> {
    let m = crate::swiatkowski::Swiatkowski::new(gs.graph());
    let n = hc.dim(i, k);
    let kernel = hc.primitive_kernel(&m, i, k)?;
    let mut predicted: Vec<Vec<Q>> = classify_primitives(gs, i, k)
        .iter()
        .map(|p| rational::to_q(&hc.homology(k).coords(i, &p.chain)))
        .filter(|v| v.len() == n)
        .collect();
    rational::rref(&mut predicted, n);
    let equal = kernel.len() == predicted.len() && rational::same_span(&kernel, &predicted, n);
    Ok(PrimitiveComparison {
        degree: i,
        weight: k,
        homology_dim: n,
        kernel,
        predicted,
        equal,
    })
}
