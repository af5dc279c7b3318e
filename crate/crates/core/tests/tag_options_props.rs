use proptest::prelude::*;
use tolkit_core::tag_options::{
    options_join, options_leq, options_meet, phi, tol_join, tol_leq, tol_meet, OptionSet, OptionsElement,
    TagOptionsElement, TagOptionsLattice, TagOptionsSpace, TagSet,
};
use tolkit_core::FiniteLattice;

fn space() -> TagOptionsSpace {
    TagOptionsSpace::from_names(["t1", "t2", "t3"], ["x", "y", "z"]).unwrap()
}

fn options_over(domain: TagSet) -> impl Strategy<Value = OptionsElement> {
    prop::array::uniform3(0u64..8).prop_map(move |slots| {
        let s = space();
        OptionsElement::new(&s, domain, domain.iter().map(|t| (t, OptionSet::from_bits(slots[t])))).unwrap()
    })
}

fn tag_set() -> impl Strategy<Value = TagSet> {
    (0u64..8).prop_map(TagSet::from_bits)
}

fn element() -> impl Strategy<Value = TagOptionsElement> {
    tag_set().prop_flat_map(options_over).prop_map(TagOptionsElement::new)
}

proptest! {
    #[test]
    fn meet_and_join_commute(a in element(), b in element()) {
        let s = space();
        prop_assert_eq!(tol_meet(&s, &[a.clone(), b.clone()]).unwrap(), tol_meet(&s, &[b.clone(), a.clone()]).unwrap());
        prop_assert_eq!(tol_join(&s, &[a.clone(), b.clone()]).unwrap(), tol_join(&s, &[b, a]).unwrap());
    }

    #[test]
    fn absorption(a in element(), b in element()) {
        let s = space();
        let m = tol_meet(&s, &[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(tol_join(&s, &[a.clone(), m]).unwrap(), a.clone());
        let j = tol_join(&s, &[a.clone(), b]).unwrap();
        prop_assert_eq!(tol_meet(&s, &[a.clone(), j]).unwrap(), a);
    }

    #[test]
    fn order_agrees_with_meet(a in element(), b in element()) {
        let s = space();
        let m = tol_meet(&s, &[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(tol_leq(&s, &a, &b).unwrap(), m == a);
    }

    #[test]
    fn meet_is_below_and_greatest(a in element(), b in element(), c in element()) {
        let s = space();
        let m = tol_meet(&s, &[a.clone(), b.clone()]).unwrap();
        prop_assert!(tol_leq(&s, &m, &a).unwrap() && tol_leq(&s, &m, &b).unwrap());
        if tol_leq(&s, &c, &a).unwrap() && tol_leq(&s, &c, &b).unwrap() {
            prop_assert!(tol_leq(&s, &c, &m).unwrap());
        }
    }

    #[test]
    fn meet_associates(a in element(), b in element(), c in element()) {
        let s = space();
        let ab = tol_meet(&s, &[a.clone(), b.clone()]).unwrap();
        let bc = tol_meet(&s, &[b, c.clone()]).unwrap();
        prop_assert_eq!(tol_meet(&s, &[ab, c]).unwrap(), tol_meet(&s, &[a, bc]).unwrap());
    }

    #[test]
    fn transport_preserves_binary_meet_and_join(
        (a, f, g) in tag_set().prop_flat_map(|a| (Just(a), options_over(a), options_over(a))),
        b in tag_set(),
    ) {
        let s = space();
        let meet = options_meet(&s, a, &[f.clone(), g.clone()]).unwrap();
        let join = options_join(&s, a, &[f.clone(), g.clone()]).unwrap();
        let (pf, pg) = (phi(&s, a, b, &f), phi(&s, a, b, &g));
        prop_assert_eq!(phi(&s, a, b, &meet), options_meet(&s, b, &[pf.clone(), pg.clone()]).unwrap());
        prop_assert_eq!(phi(&s, a, b, &join), options_join(&s, b, &[pf.clone(), pg.clone()]).unwrap());
        if options_leq(&f, &g).unwrap() {
            prop_assert!(options_leq(&pf, &pg).unwrap());
        }
    }

    #[test]
    fn transports_compose(
        (a, f) in tag_set().prop_flat_map(|a| (Just(a), options_over(a))),
        b in tag_set(),
        c in tag_set(),
    ) {
        // Through B loses A − B, so compare with the direct map from A ∩ B.
        let s = space();
        let via = phi(&s, b, c, &phi(&s, a, b, &f));
        let ab = a.intersection(b);
        let direct = phi(&s, ab, c, &phi(&s, a, ab, &f));
        prop_assert_eq!(via, direct);
    }
}

#[test]
fn cardinality_of_the_combined_lattice() {
    // Σ over tag subsets of (2^|O|)^|A| = (1 + 2^|O|)^|T|.
    let l = TagOptionsLattice::new(space());
    assert_eq!(l.cardinality(), 9u128.pow(3));
    assert_eq!(l.elements().len(), 729);
}
