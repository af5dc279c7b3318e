use serde::Serialize;

use super::boxes::{Formalism, ModelBox};
use super::properties::{is_inconsistent, PropertiesElement, PropertiesLattice};
use super::universe::Universe;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::tag_options::{tol_leq, TagOptionsElement};

/// A tag the combined constraints leave with no valid option.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub formalism: Formalism,
    pub tag: String,
    /// Inputs that restrict this tag to a proper subset of its options.
    pub contributors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    /// `⨅ γᵢ(boxᵢ)` over all inputs.
    pub meet: PropertiesElement,
    pub inconsistent: bool,
    pub conflicts: Vec<Conflict>,
    /// Per input: whether the meet of the others is consistent.
    pub drop_restores: Vec<bool>,
}

/// Concretizes every model through its formalism and meets the results.
pub fn consistency_check(u: &Universe, models: &[(Formalism, ModelBox)]) -> Result<ConsistencyReport> {
    let lattice = PropertiesLattice::new(u.clone());
    for (f, b) in models {
        let space = f.space(u);
        tol_leq(space, &b.0, &TagOptionsElement::top(space))
            .map_err(|e| Error::UniverseMismatch(format!("{f} model does not belong to this universe: {e}")))?;
    }
    let images: Vec<PropertiesElement> = models.iter().map(|(f, b)| f.gamma(u, b)).collect();
    let meet = lattice.meet_all(&images);
    let inconsistent = is_inconsistent(&meet);

    let mut conflicts = Vec::new();
    for f in Formalism::ALL {
        let space = f.space(u);
        let full = space.options.full();
        let part = f.alpha(&meet);
        for (t, allowed) in part.0.options().iter() {
            if !allowed.is_empty() {
                continue;
            }
            let contributors = models
                .iter()
                .enumerate()
                .filter(|(_, (g, b))| *g == f && b.0.get(t).is_some_and(|s| s != full))
                .map(|(i, _)| i)
                .collect();
            conflicts.push(Conflict {
                formalism: f,
                tag: space.tags.name(t).to_string(),
                contributors,
            });
        }
    }

    let drop_restores = (0..images.len())
        .map(|i| {
            let rest: Vec<PropertiesElement> = images
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            !is_inconsistent(&lattice.meet_all(&rest))
        })
        .collect();

    Ok(ConsistencyReport {
        meet,
        inconsistent,
        conflicts,
        drop_restores,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::universe::Presence::{Absent, Present};

    #[test]
    fn present_versus_absent() {
        let u = Universe::new(&["a", "b"], None, 2).unwrap();
        let x = ModelBox(u.topo_constraint(&[("a-b", &[Present])]).unwrap());
        let y = ModelBox(u.topo_constraint(&[("a-b", &[Absent])]).unwrap());
        let r = consistency_check(&u, &[(Formalism::Topology, x.clone()), (Formalism::Topology, y)]).unwrap();
        assert!(r.inconsistent);
        assert_eq!(
            r.conflicts,
            vec![Conflict {
                formalism: Formalism::Topology,
                tag: "a-b".into(),
                contributors: vec![0, 1]
            }]
        );
        assert_eq!(r.drop_restores, vec![true, true]);
        let alone = consistency_check(&u, &[(Formalism::Topology, x)]).unwrap();
        assert!(!alone.inconsistent && alone.conflicts.is_empty());
    }

    #[test]
    fn series_against_parallel() {
        let u = Universe::network(&["a", "b", "c"], 2).unwrap();
        let series = ModelBox(
            u.topo_constraint(&[("a-b", &[Present]), ("b-c", &[Present]), ("a-c", &[Absent])])
                .unwrap(),
        );
        let parallel = ModelBox(
            u.topo_constraint(&[("a-b", &[Present]), ("a-c", &[Present]), ("b-c", &[Present])])
                .unwrap(),
        );
        let r = consistency_check(&u, &[(Formalism::Topology, series), (Formalism::Topology, parallel)]).unwrap();
        assert!(r.inconsistent);
        assert_eq!(r.conflicts.len(), 1);
        assert_eq!(r.conflicts[0].tag, "a-c");
        assert_eq!(r.conflicts[0].contributors, vec![0, 1]);
    }

    #[test]
    fn models_from_another_universe_are_rejected() {
        let u = Universe::new(&["a", "b"], None, 2).unwrap();
        let v = Universe::new(&["a", "b", "c"], None, 2).unwrap();
        let x = ModelBox(v.topo_constraint(&[("a-c", &[Present])]).unwrap());
        assert!(consistency_check(&u, &[(Formalism::Topology, x)]).is_err());
    }
}
