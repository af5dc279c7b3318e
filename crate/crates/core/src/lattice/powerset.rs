use std::sync::Arc;

use super::{FiniteLattice, SmallSet, MAX_ATOMS};
use crate::error::{Error, Result};

/// Subsets of a named universe ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowersetLattice {
    atoms: Arc<[String]>,
}

pub fn powerset_lattice<S: Into<String>>(atoms: impl IntoIterator<Item = S>) -> Result<PowersetLattice> {
    let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
    if atoms.len() > MAX_ATOMS {
        return Err(Error::capacity(
            "powerset universe",
            atoms.len() as u128,
            MAX_ATOMS as u128,
        ));
    }
    for (i, a) in atoms.iter().enumerate() {
        if atoms[..i].contains(a) {
            return Err(Error::Validation(format!("duplicate atom `{a}`")));
        }
    }
    Ok(PowersetLattice { atoms: atoms.into() })
}

impl PowersetLattice {
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn universe(&self) -> SmallSet {
        SmallSet::full(self.atoms.len())
    }

    /// The subset containing exactly the named atoms.
    pub fn subset<S: AsRef<str>>(&self, names: &[S]) -> Result<SmallSet> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.atoms
                    .iter()
                    .position(|a| a == n)
                    .ok_or_else(|| Error::UnknownName(n.to_string()))
            })
            .collect()
    }
}

impl FiniteLattice for PowersetLattice {
    type Elem = SmallSet;

    fn name(&self) -> String {
        format!("powerset({})", self.atoms.join(","))
    }

    fn cardinality(&self) -> u128 {
        1u128 << self.atoms.len()
    }

    fn elements(&self) -> Vec<SmallSet> {
        SmallSet::all_subsets(self.atoms.len()).collect()
    }

    fn leq(&self, a: &SmallSet, b: &SmallSet) -> bool {
        a.is_subset(*b)
    }

    fn meet_all(&self, xs: &[SmallSet]) -> SmallSet {
        xs.iter().fold(self.universe(), |acc, x| acc.intersection(*x))
    }

    fn join_all(&self, xs: &[SmallSet]) -> SmallSet {
        xs.iter().fold(SmallSet::EMPTY, |acc, x| acc.union(*x))
    }

    fn top(&self) -> SmallSet {
        self.universe()
    }

    fn bottom(&self) -> SmallSet {
        SmallSet::EMPTY
    }

    fn meet(&self, a: &SmallSet, b: &SmallSet) -> SmallSet {
        a.intersection(*b)
    }

    fn join(&self, a: &SmallSet, b: &SmallSet) -> SmallSet {
        a.union(*b)
    }

    fn render(&self, x: &SmallSet) -> String {
        if x.is_empty() {
            return "∅".to_string();
        }
        let names: Vec<&str> = x.iter().map(|i| self.atoms[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}
