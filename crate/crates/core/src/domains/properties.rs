use super::universe::{Presence, SystemInstance, Universe};
use crate::error::{Error, Result};
use crate::galois::CorrectnessRelation;
use crate::lattice::FiniteLattice;
use crate::rational::Rational;
use crate::tag_options::{tol_leq, tol_meet, OptionSet, TagOptionsElement, TagOptionsLattice, TagSet};

/// Reliability constraints paired with topology constraints.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PropertiesElement {
    pub rel: TagOptionsElement,
    pub topo: TagOptionsElement,
}

impl PropertiesElement {
    pub fn new(u: &Universe, rel: TagOptionsElement, topo: TagOptionsElement) -> Result<Self> {
        // Comparing with ⊤ validates membership in each space.
        tol_leq(u.rel_space(), &rel, &TagOptionsElement::top(u.rel_space()))?;
        tol_leq(u.topo_space(), &topo, &TagOptionsElement::top(u.topo_space()))?;
        Ok(PropertiesElement { rel, topo })
    }

    pub fn top(u: &Universe) -> Self {
        PropertiesElement {
            rel: TagOptionsElement::top(u.rel_space()),
            topo: TagOptionsElement::top(u.topo_space()),
        }
    }

    pub fn bottom(u: &Universe) -> Self {
        PropertiesElement {
            rel: TagOptionsElement::bottom(u.rel_space()),
            topo: TagOptionsElement::bottom(u.topo_space()),
        }
    }

    pub fn render(&self, u: &Universe) -> String {
        format!(
            "[rel {}; topo {}]",
            self.rel.render(u.rel_space()),
            self.topo.render(u.topo_space())
        )
    }
}

/// Builders for constraint literals over a universe.
impl Universe {
    /// Reliability constraints from `(component, allowed values)`.
    pub fn rel_constraint(&self, pairs: &[(&str, &[Rational])]) -> Result<TagOptionsElement> {
        let sets = pairs
            .iter()
            .map(|(c, vs)| {
                let set = vs
                    .iter()
                    .map(|v| self.grid().require(v))
                    .collect::<Result<OptionSet>>()?;
                Ok((*c, set))
            })
            .collect::<Result<Vec<_>>>()?;
        self.rel_constraint_sets(&sets)
    }

    /// Reliability constraints from `(component, grid index set)`.
    pub fn rel_constraint_sets(&self, pairs: &[(&str, OptionSet)]) -> Result<TagOptionsElement> {
        constraint(
            self.rel_space(),
            pairs.iter().map(|(c, s)| (self.component_index(c), *s)),
        )
    }

    /// Topology constraints from `(pair name, allowed presences)`; pair names
    /// are `a-b` in either order.
    pub fn topo_constraint(&self, pairs: &[(&str, &[Presence])]) -> Result<TagOptionsElement> {
        constraint(
            self.topo_space(),
            pairs.iter().map(|(name, ps)| {
                let k = self.pair_by_name(name);
                (k, ps.iter().map(|p| p.index()).collect())
            }),
        )
    }

    pub fn pair_by_name(&self, name: &str) -> Result<usize> {
        if let Ok(k) = self.topo_space().tags.index(name) {
            return Ok(k);
        }
        // Reversed order, with component names that may contain '-'.
        for (k, &(i, j)) in self.pairs().iter().enumerate() {
            if name == format!("{}-{}", self.components()[j], self.components()[i]) {
                return Ok(k);
            }
        }
        Err(Error::UnknownName(name.to_string()))
    }
}

fn constraint(
    space: &crate::tag_options::TagOptionsSpace,
    items: impl Iterator<Item = (Result<usize>, OptionSet)>,
) -> Result<TagOptionsElement> {
    let mut domain = TagSet::EMPTY;
    let mut assigned = Vec::new();
    for (t, s) in items {
        let t = t?;
        if domain.contains(t) {
            return Err(Error::Validation(format!("`{}` constrained twice", space.tags.name(t))));
        }
        domain = domain.with(t);
        assigned.push((t, s));
    }
    Ok(TagOptionsElement::new(crate::tag_options::OptionsElement::new(
        space, domain, assigned,
    )?))
}

/// True iff some tag of either part is constrained to the empty set.
pub fn is_inconsistent(p: &PropertiesElement) -> bool {
    p.rel.options().has_empty_slot() || p.topo.options().has_empty_slot()
}

/// Whether `p` describes `s`: every constrained component reliability and
/// every constrained pair presence of `s` lies in its allowed set.
pub fn satisfies(u: &Universe, s: &SystemInstance, p: &PropertiesElement) -> Result<bool> {
    if s.reliability().len() != u.components().len() || !s.present().is_subset(u.topo_space().tags.full()) {
        return Err(Error::UniverseMismatch(
            "system does not belong to this universe".into(),
        ));
    }
    PropertiesElement::new(u, p.rel.clone(), p.topo.clone())?;
    Ok(satisfies_unchecked(u, s, p))
}

pub(crate) fn satisfies_unchecked(u: &Universe, s: &SystemInstance, p: &PropertiesElement) -> bool {
    let grid = u.grid();
    p.rel
        .options()
        .iter()
        .all(|(c, allowed)| grid.index_of(&s.reliability_of(c)).is_some_and(|i| allowed.contains(i)))
        && p.topo
            .options()
            .iter()
            .all(|(k, allowed)| allowed.contains(s.presence(k).index()))
}

/// The properties lattice: reliability tag–options × topology tag–options,
/// ordered componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertiesLattice {
    universe: Universe,
    rel: TagOptionsLattice,
    topo: TagOptionsLattice,
}

impl PropertiesLattice {
    pub fn new(universe: Universe) -> Self {
        PropertiesLattice {
            rel: TagOptionsLattice::new(universe.rel_space().clone()),
            topo: TagOptionsLattice::new(universe.topo_space().clone()),
            universe,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }
}

impl FiniteLattice for PropertiesLattice {
    type Elem = PropertiesElement;

    fn name(&self) -> String {
        format!(
            "properties(C={})",
            self.universe
                .rel_space()
                .tags
                .render_set(self.universe.rel_space().tags.full())
        )
    }

    fn cardinality(&self) -> u128 {
        self.rel.cardinality().saturating_mul(self.topo.cardinality())
    }

    fn elements(&self) -> Vec<PropertiesElement> {
        let topo = self.topo.elements();
        self.rel
            .elements()
            .into_iter()
            .flat_map(|rel| {
                topo.iter().map(move |t| PropertiesElement {
                    rel: rel.clone(),
                    topo: t.clone(),
                })
            })
            .collect()
    }

    fn leq(&self, a: &PropertiesElement, b: &PropertiesElement) -> bool {
        self.rel.leq(&a.rel, &b.rel) && self.topo.leq(&a.topo, &b.topo)
    }

    fn meet_all(&self, xs: &[PropertiesElement]) -> PropertiesElement {
        let (rel, topo): (Vec<_>, Vec<_>) = xs.iter().map(|x| (x.rel.clone(), x.topo.clone())).unzip();
        PropertiesElement {
            rel: self.rel.meet_all(&rel),
            topo: self.topo.meet_all(&topo),
        }
    }

    fn join_all(&self, xs: &[PropertiesElement]) -> PropertiesElement {
        let (rel, topo): (Vec<_>, Vec<_>) = xs.iter().map(|x| (x.rel.clone(), x.topo.clone())).unzip();
        PropertiesElement {
            rel: self.rel.join_all(&rel),
            topo: self.topo.join_all(&topo),
        }
    }

    fn top(&self) -> PropertiesElement {
        PropertiesElement::top(&self.universe)
    }

    fn bottom(&self) -> PropertiesElement {
        PropertiesElement::bottom(&self.universe)
    }

    fn meet(&self, a: &PropertiesElement, b: &PropertiesElement) -> PropertiesElement {
        let u = &self.universe;
        PropertiesElement {
            rel: tol_meet(u.rel_space(), &[a.rel.clone(), b.rel.clone()]).expect("elements of this lattice"),
            topo: tol_meet(u.topo_space(), &[a.topo.clone(), b.topo.clone()]).expect("elements of this lattice"),
        }
    }

    fn render(&self, x: &PropertiesElement) -> String {
        x.render(&self.universe)
    }
}

/// `s ⊨_P p` over every system of the universe.
pub fn properties_relation(
    u: &Universe,
    budget: u128,
) -> Result<CorrectnessRelation<SystemInstance, PropertiesLattice>> {
    let systems = u.systems(budget)?;
    let lattice = PropertiesLattice::new(u.clone());
    let uu = u.clone();
    Ok(CorrectnessRelation::new(
        "satisfies",
        systems,
        lattice,
        move |s: &SystemInstance, p: &PropertiesElement| satisfies_unchecked(&uu, s, p),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::universe::Grid;

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn top_describes_everything_and_empty_slots_nothing() {
        let u = Universe::new(&["c1", "c2"], None, 2).unwrap();
        let empty = u.rel_constraint(&[("c1", &[])]).unwrap();
        let p = PropertiesElement::new(&u, empty, TagOptionsElement::top(u.topo_space())).unwrap();
        assert!(is_inconsistent(&p));
        assert!(is_inconsistent(&PropertiesElement::bottom(&u)));
        assert!(!is_inconsistent(&PropertiesElement::top(&u)));
        for s in u.systems(64).unwrap() {
            assert!(satisfies(&u, &s, &PropertiesElement::top(&u)).unwrap());
            assert!(!satisfies(&u, &s, &p).unwrap());
        }
    }

    #[test]
    fn point_inside_an_interval_constraint() {
        let u = Universe::new(&["c1", "c2"], None, 20).unwrap();
        let g: Grid = u.grid();
        let rel = u
            .rel_constraint_sets(&[("c1", g.points_in(&r(9, 10), &r(1, 1)))])
            .unwrap();
        let p = PropertiesElement::new(&u, rel, TagOptionsElement::top(u.topo_space())).unwrap();
        let s = u.system_named(&[("c1", r(95, 100)), ("c2", r(1, 2))], &[]).unwrap();
        assert!(satisfies(&u, &s, &p).unwrap());
        let s = u.system_named(&[("c1", r(85, 100)), ("c2", r(1, 2))], &[]).unwrap();
        assert!(!satisfies(&u, &s, &p).unwrap());
    }

    #[test]
    fn disjoint_interval_constraints_meet_to_inconsistent() {
        let u = Universe::new(&["c1", "c2"], None, 20).unwrap();
        let g = u.grid();
        let low = u
            .rel_constraint_sets(&[("c1", g.points_in(&r(1, 2), &r(7, 10)))])
            .unwrap();
        let high = u
            .rel_constraint_sets(&[("c1", g.points_in(&r(9, 10), &r(1, 1)))])
            .unwrap();
        let l = PropertiesLattice::new(u.clone());
        let top = TagOptionsElement::top(u.topo_space());
        let m = l.meet(
            &PropertiesElement::new(&u, low, top.clone()).unwrap(),
            &PropertiesElement::new(&u, high, top).unwrap(),
        );
        assert!(is_inconsistent(&m));
    }

    #[test]
    fn topology_names_in_either_order() {
        let u = Universe::new(&["a", "b"], None, 2).unwrap();
        let x = u.topo_constraint(&[("b-a", &[Presence::Absent])]).unwrap();
        let y = u.topo_constraint(&[("a-b", &[Presence::Absent])]).unwrap();
        assert_eq!(x, y);
        assert!(u.topo_constraint(&[("a-c", &[Presence::Absent])]).is_err());
    }

    #[test]
    fn meet_shortcut_agrees_with_meet_all() {
        let u = Universe::new(&["c1", "c2"], None, 2).unwrap();
        let l = PropertiesLattice::new(u);
        let es = l.elements();
        assert_eq!(es.len() as u128, l.cardinality());
        for a in es.iter().step_by(7) {
            for b in es.iter().step_by(5) {
                assert_eq!(l.meet(a, b), l.meet_all(&[a.clone(), b.clone()]));
            }
        }
    }
}
