//! Exact Green's functions on resistive networks and the height jump of
//! labelled dual graphs.
//!
//! Every quantity is computed over arbitrary-precision rationals, so the
//! combinatorial identities (forest formula, least-power principle,
//! contraction limits, concavity) can be checked by exact equality rather
//! than up to a tolerance.
//!
//! Module map:
//! - [`graph`]: multigraphs, contraction, forest enumeration.
//! - [`network`]: resistive networks, Laplacian solves, Green's function.
//! - [`forest`]: the spanning-tree / 2-forest evaluation used as an oracle.
//! - [`labelled`]: labelled dual graphs, pullbacks, slices.
//! - [`jump`]: the height jump, its homogeneous function and its bound.
//! - [`cli`]: instance files and the command runners behind the binary.

pub mod cli;
pub mod error;
pub mod forest;
pub mod graph;
pub mod instance;
pub mod jump;
pub mod labelled;
mod linalg;
pub mod network;
pub mod random;
pub mod rational;
pub mod symbolic;

pub use error::{Error, Result};
pub use forest::PiSign;
pub use graph::{Contraction, EdgeSet, Multigraph};
pub use jump::{JumpBound, JumpResult, PhiFunction};
pub use labelled::{LabelledGraph, TestVector};
pub use network::{Divisor, EdgeFlow, ResistiveNetwork, VoltageAssignment};
pub use rational::Rational;
