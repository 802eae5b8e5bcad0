//! Solvers and instance tooling for independent-set reconfiguration on
//! sparse graphs.
//!
//! Tokens sit on the vertices of an independent set; a *slide* moves one
//! token along an edge, a *jump* moves one token anywhere, and both must
//! preserve independence. This crate decides whether a source
//! configuration S transforms into a target T within a move budget (and
//! reachability for jumps), with every "yes" backed by an explicitly
//! validated move sequence:
//!
//! - [`oracle`]: exact breadth-first search over configurations, the
//!   ground truth everything else is tested against;
//! - [`covering`]: independence covering families for degenerate graphs
//!   and modulator decompositions;
//! - [`fpt`]: the constraint-propagation solver for shortest slides and
//!   jumps over a guessed family sequence;
//! - [`tjr`]: jump reachability through a meta-graph over a covering
//!   family;
//! - [`separation`]: Monte-Carlo random separation for graphs with a
//!   modulator to bounded degree;
//! - [`gadgets`]: generators for the 2-degenerate clique-encoding
//!   hardness instances, with constructive optimal witnesses;
//! - [`formats`], [`mod@bench`], [`cli`]: instance/result files, the
//!   benchmark harness, and the command-line front end.
//!
//! See the crate examples for a runnable tour of each capability.

pub mod bench;
pub mod bits;
pub mod cli;
pub mod covering;
pub mod error;
pub mod formats;
pub mod fpt;
pub mod gadgets;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod separation;
pub mod sequence;
pub mod tjr;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use sequence::{validate_sequence, Instance, ReconfigSequence, Rule};
