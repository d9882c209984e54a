//! Avalanche polynomials of rooted plane trees.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyalg`]: exact arithmetic (Catalan numbers, polynomials in `q`,
//!   truncated series in `t`, rationals).
//! * [`tree`]: plane trees, the subtree-size labeling and exhaustive enumeration.
//! * [`distribution`]: the avalanche distribution `A_n(q)` over all plane trees
//!   with `n` edges, computed by enumeration, by recurrence and by the closed
//!   coefficient formula, together with exact moments.
//! * [`inverse`]: recovering a tree from its polynomial, and the 3-PARTITION
//!   reduction instances.
//! * [`cli`]: the `avpoly` command line.
//!
//! Data-parallel loops go through [`exec::Execution`]; with the `parallel`
//! feature disabled every loop runs sequentially.

pub mod cli;
pub mod distribution;
pub mod exec;
pub mod inverse;
pub mod polyalg;
pub mod tree;

pub use distribution::{DistributionRecord, Method, MomentReport};
pub use exec::Execution;
pub use inverse::{InverseResult, InverseStatus, PartitionSolution, ThreePartitionInstance};
pub use polyalg::{catalan, AvalanchePoly, BivariateSeries, CatalanTable, Poly, Rational};
pub use tree::{LabeledTree, PlaneTree};
