//! Interval meet and join against the grid points each interval covers.

use std::collections::BTreeSet;

use proptest::prelude::*;
use tolkit_core::lattice::{interval_lattice, IntervalElement, IntervalLattice};
use tolkit_core::FiniteLattice;

const D: u32 = 12;

fn points(x: &IntervalElement, l: &IntervalLattice) -> BTreeSet<u32> {
    match x {
        IntervalElement::Bottom => BTreeSet::new(),
        IntervalElement::Unit => (1..=D).collect(),
        IntervalElement::Closed { lo, hi } => (l.grid_index(lo).unwrap()..=l.grid_index(hi).unwrap()).collect(),
    }
}

fn hull(l: &IntervalLattice, ps: &BTreeSet<u32>) -> IntervalElement {
    match (ps.first(), ps.last()) {
        (Some(&a), Some(&b)) => l.closed(l.point(a), l.point(b)).unwrap(),
        _ => IntervalElement::Bottom,
    }
}

fn closed() -> impl Strategy<Value = IntervalElement> {
    (1..=D, 1..=D).prop_map(|(a, b)| {
        let l = interval_lattice(D).unwrap();
        l.closed(l.point(a.min(b)), l.point(a.max(b))).unwrap()
    })
}

proptest! {
    #[test]
    fn meet_is_the_intersection(a in closed(), b in closed()) {
        let l = interval_lattice(D).unwrap();
        let common: BTreeSet<u32> = points(&a, &l).intersection(&points(&b, &l)).copied().collect();
        prop_assert_eq!(l.meet(&a, &b), hull(&l, &common));
    }

    #[test]
    fn join_is_the_hull_of_the_union(a in closed(), b in closed()) {
        let l = interval_lattice(D).unwrap();
        let all: BTreeSet<u32> = points(&a, &l).union(&points(&b, &l)).copied().collect();
        prop_assert_eq!(l.join(&a, &b), hull(&l, &all));
    }

    #[test]
    fn order_is_containment(a in closed(), b in closed()) {
        let l = interval_lattice(D).unwrap();
        prop_assert_eq!(l.leq(&a, &b), points(&a, &l).is_subset(&points(&b, &l)));
    }
}

#[test]
fn unit_sits_above_the_widest_closed_interval() {
    let l = interval_lattice(D).unwrap();
    let widest = l.closed(l.point(1), l.point(D)).unwrap();
    assert!(l.leq(&widest, &IntervalElement::Unit));
    assert!(!l.leq(&IntervalElement::Unit, &widest));
    assert_eq!(l.elements().len() as u128, l.cardinality());
}
