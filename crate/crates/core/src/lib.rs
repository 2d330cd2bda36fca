//! Dimensions of torus-invariant strata in the prime spectrum of `m x n`
//! quantum matrices, computed from Cauchon diagrams.
//!
//! Three routes give the same numbers and are kept independent so they can
//! check each other:
//!
//! * [`pipes`]: trace the pipe dream of a diagram to its toric permutation
//!   and count the cycles of even length;
//! * [`linalg`]: the kernel dimension of the skew-symmetric matrix `M(D)`,
//!   or of `P_ω + P_σ`, in exact rational arithmetic;
//! * [`genfunc`]: closed forms and generating functions counting the
//!   `d`-dimensional strata for a given shape.
//!
//! [`enumeration`] generates all Cauchon diagrams of a shape and tallies them
//! by dimension, and [`verify`] runs the cross-checks in bulk.

pub mod cache;
pub mod diagram;
pub mod enumeration;
pub mod error;
pub mod genfunc;
pub mod linalg;
pub mod perm;
pub mod pipes;
pub mod verify;

pub use diagram::{Color, Diagram, Regions, WhiteLabeling};
pub use enumeration::{enum_cauchon, tally_dimensions, Method, StratumTally};
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, ExactVector};
pub use perm::{CycleDecomposition, Permutation};
pub use pipes::{omega, stratum_dim_cycles, toric_perm, trace_sigma, StratumDimension};
