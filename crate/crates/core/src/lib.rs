//! One-way LOCC distinguishability of bipartite product states via
//! orthogonality graphs, chordal PSD decompositions and explicit protocols.

pub mod criteria;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod graph;
pub mod linalg;
pub mod locc;
pub mod states;

pub use error::{Error, Result};
