//! The bigraded Świątkowski complex of a graph, sliced by weight.
//!
//! A basis element is an edge monomial wedged with at most one local
//! generator per factor vertex. Degree counts half-edge generators; weight
//! is the monomial degree plus the number of local generators.

mod chain;
mod homology;
mod model;

pub use chain::{BasisElement, Chain, LinComb, Local, Tensor3Chain, TensorChain};
pub use homology::{betti_table, homology, BettiRow, HomologyPresentation, Ring, WeightHomology};
pub use model::{
    boundary, boundary_matrix, boundary_of, enumerate_basis, enumerate_weight, format_chain, format_element, CoTerm,
    LocalTerm, Model, Swiatkowski, WeightComplex,
};
pub(crate) use model::{primitive_coproduct, swiatkowski_boundary};
