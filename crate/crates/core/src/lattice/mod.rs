//! Finite complete lattices as first-class values.
//!
//! A [`FiniteLattice`] enumerates its carrier and supplies order, finite
//! meets/joins, top and bottom. Nothing here assumes the lattice laws hold;
//! [`check_lattice_laws`] verifies them by enumeration.

mod dual;
pub(crate) mod enumerate;
mod interval;
pub(crate) mod laws;
mod powerset;
mod product;
mod set;

use std::fmt::Debug;
use std::hash::Hash;

pub use dual::{dual_lattice, Dual};
pub use interval::{interval_lattice, IntervalElement, IntervalLattice};
pub use laws::check_lattice_laws;
pub use powerset::{powerset_lattice, PowersetLattice};
pub use product::{product_lattice, Product};
pub use set::{SmallSet, MAX_ATOMS};

pub trait FiniteLattice: Send + Sync {
    /// Elements compare structurally; implementations keep them canonical.
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    /// Short description used as the subject of law reports.
    fn name(&self) -> String {
        "lattice".to_string()
    }

    /// Number of elements, computed without enumerating.
    fn cardinality(&self) -> u128;

    /// All elements in canonical order.
    fn elements(&self) -> Vec<Self::Elem>;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn meet_all(&self, xs: &[Self::Elem]) -> Self::Elem;

    fn join_all(&self, xs: &[Self::Elem]) -> Self::Elem;

    fn top(&self) -> Self::Elem;

    fn bottom(&self) -> Self::Elem;

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.meet_all(&[a.clone(), b.clone()])
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.join_all(&[a.clone(), b.clone()])
    }

    fn render(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }
}

/// Limits and sampling policy for enumeration-based law checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    /// Lattices with more elements are rejected with a capacity error.
    pub max_elements: usize,
    /// Largest finite collection checked for meet/join bound laws. Binary
    /// collections plus the empty and full ones generate all finite meets by
    /// associativity; the default of 3 adds one level of redundancy.
    pub subset_cap: usize,
    /// When set, triple and subset laws are checked on random samples.
    pub sampling: Option<Sampling>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_elements: 1024,
            subset_cap: 3,
            sampling: None,
        }
    }
}

impl CheckConfig {
    pub fn sampled(samples: usize, seed: u64) -> Self {
        CheckConfig {
            sampling: Some(Sampling { samples, seed }),
            ..CheckConfig::default()
        }
    }
}
