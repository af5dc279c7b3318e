//! Lattice-theoretic model transformation.
//!
//! * [`lattice`]: finite complete lattices (powerset, dual, interval,
//!   product) and an exhaustive law checker.
//! * [`tag_options`]: tag lattices, options lattices, the φ transport
//!   homomorphisms and the combined tag–options lattice.
//! * [`galois`]: Galois connections, correctness relations, sound
//!   transformation, selection and refinement.
//! * [`domains`]: a worked instantiation over component reliabilities and
//!   pairwise topology, with a two-terminal reliability analyzer.

pub mod domains;
pub mod error;
pub mod galois;
pub mod lattice;
pub mod rational;
pub mod report;
pub mod tag_options;

pub use error::{Error, Result};
pub use lattice::{CheckConfig, FiniteLattice, SmallSet};
pub use rational::Rational;
pub use report::{LawReport, LawResult, Status, Witness};
