//! Homology of unordered configuration spaces of graphs through the
//! Świątkowski complex, with its coshuffle comultiplication.

pub mod error;
pub mod grapes;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod coalgebra;
pub mod swiatkowski;

pub use error::{Error, Result};
pub use graph::{Graph, GraphSpec};
