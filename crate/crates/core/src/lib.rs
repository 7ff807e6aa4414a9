//! Exhaustive and constructive tools for friends-and-strangers graphs.
//!
//! `FS(X, Y)` has one vertex per bijection from `V(X)` (positions) to `V(Y)`
//! (tokens). Two bijections are adjacent when they differ by exchanging the
//! tokens on an edge `ab` of `X` whose tokens are adjacent in `Y`.

pub mod certificates;
pub mod fs;
pub mod graph;
pub mod random;
pub mod sequence;
pub mod theory;

pub use fs::{Bijection, ComponentReport, PermRank, SearchConfig};
pub use graph::{Graph, NamedGraphSpec};
pub use sequence::SwapSequence;
