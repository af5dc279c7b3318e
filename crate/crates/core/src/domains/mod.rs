//! A worked instantiation: component reliabilities on a finite grid and
//! pairwise topology, two model formalisms connected to them, a
//! consistency checker and a two-terminal reliability analyzer.

mod boxes;
mod consistency;
mod properties;
mod reliability;
mod universe;

pub use boxes::{
    box_hull_powerset_connection, formalism_connection, reliability_connection, render_assignments,
    topology_connection, BoxLattice, Formalism, Model, ModelBox,
};
pub use consistency::{consistency_check, Conflict, ConsistencyReport};
pub use properties::{is_inconsistent, properties_relation, satisfies, PropertiesElement, PropertiesLattice};
pub use reliability::{reliability_bound, two_terminal_reliability, ReliabilityBound, DEFAULT_BOUND_BUDGET, MAX_EDGES};
pub use universe::{Grid, Presence, SystemInstance, Universe};
