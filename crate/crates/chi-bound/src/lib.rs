//! Exploration and verification toolkit for {3K1, K1+C4}-free graphs.
//!
//! The class consists of graphs with independence number at most 2 that
//! contain no induced 4-wheel. The crate recognizes membership with
//! explicit witnesses, computes exact invariants (omega, chi, alpha,
//! Delta) with two independent chromatic engines, constructs the clique
//! partition and neighborhood decomposition that drive the chi <= 3omega/2
//! bound, and exhaustively verifies the bound and every structural claim
//! over all small labeled graphs.

pub mod codec;
pub mod error;
pub mod generate;
pub mod graph;
pub mod invariants;
pub mod matching;
pub mod recognition;
pub mod structure;
pub mod verify;

pub use error::Error;
pub use graph::Graph;
