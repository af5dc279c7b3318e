//! Galois connections between a concrete properties lattice and abstract
//! model-set lattices, with the derived correctness relations, sound
//! transformation, selection and refinement.

mod connection;
mod correctness;
mod selection;

pub use connection::{check_galois, identity_connection, transform, GaloisConnection};
pub use correctness::{check_correctness_relation, induced_relation, induced_relation_unchecked, CorrectnessRelation};
pub use selection::{check_selection, refine, select, ModelSpace, SelectionOperator};
