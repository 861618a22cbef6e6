//! Finite combinatorial workbench for quasi-linear hypergraphs: exact
//! densities and local-density checks, descriptive sequences and ordering
//! searches, edge-splitting constructions, pair-coloring palettes, reduced
//! hypergraphs, and the supporting ordered-set algorithms.

pub mod comb;
pub mod constructions;
pub mod descriptive;
pub mod error;
pub mod hypergraph;
pub mod order;
pub mod palettes;
pub mod quasilinear;
pub mod rat;
pub mod reduced;
pub mod seeding;

pub use error::{Error, Result};
pub use hypergraph::RGraph;
pub use order::VertexOrder;
pub use rat::Rational;
