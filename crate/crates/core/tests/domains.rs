use tolkit_core::domains::{
    formalism_connection, properties_relation, reliability_bound, satisfies, Formalism, PropertiesElement, Universe,
    DEFAULT_BOUND_BUDGET,
};
use tolkit_core::galois::{check_correctness_relation, check_galois, induced_relation, transform};
use tolkit_core::{CheckConfig, FiniteLattice, Rational};

fn three() -> Universe {
    Universe::new(&["c1", "c2", "c3"], Some(&[("c1", "c2")]), 2).unwrap()
}

#[test]
fn connections_at_three_components() {
    let u = three();
    for f in Formalism::ALL {
        let c = formalism_connection(&u, f);
        let r = check_galois(&c, &CheckConfig::default()).unwrap();
        assert!(r.passed() && r.exhaustive, "{r:#?}");
        let sampled = check_galois(&c, &CheckConfig::sampled(2_000, 3)).unwrap();
        assert!(sampled.passed() && !sampled.exhaustive);
    }
}

#[test]
fn induced_relations_at_three_components() {
    let u = three();
    let base = properties_relation(&u, 1 << 10).unwrap();
    assert_eq!(base.systems().len(), 16);
    let cfg = CheckConfig::default();
    for f in Formalism::ALL {
        let c = formalism_connection(&u, f);
        let r = induced_relation(&c, &base, &cfg).unwrap();
        assert!(check_correctness_relation(&r, &cfg).unwrap().passed());
        for s in base.systems() {
            for m in c.abstract_domain().elements() {
                assert_eq!(r.holds(s, &m), satisfies(&u, s, &c.gamma(&m)).unwrap());
            }
        }
    }
}

#[test]
fn transform_through_the_same_formalism_is_identity() {
    let u = three();
    for f in Formalism::ALL {
        let c = formalism_connection(&u, f);
        for m in c.abstract_domain().elements() {
            assert_eq!(transform(&c, &c, &m).unwrap(), m);
        }
    }
}

#[test]
fn fully_determined_properties_give_a_point_bound() {
    use tolkit_core::domains::Presence::{Absent, Present};
    let u = Universe::network(&["a", "b", "c"], 2).unwrap();
    let half = [Rational::new(1, 2)];
    let one = [Rational::from_integer(1)];
    let rel = u
        .rel_constraint(&[
            ("a", &one),
            ("b", &one),
            ("c", &one),
            ("a-b", &half),
            ("b-c", &half),
            ("a-c", &half),
        ])
        .unwrap();
    let topo = u
        .topo_constraint(&[("a-b", &[Present]), ("b-c", &[Present]), ("a-c", &[Absent])])
        .unwrap();
    let p = PropertiesElement::new(&u, rel, topo).unwrap();
    let b = reliability_bound(&u, &p, "a", "c", DEFAULT_BOUND_BUDGET).unwrap();
    assert_eq!(
        (b.min, b.max, b.enumerated),
        (Rational::new(1, 4), Rational::new(1, 4), 1)
    );

    // Leaving a-c unknown adds the direct line as a possible parallel path.
    let topo = u.topo_constraint(&[("a-b", &[Present]), ("b-c", &[Present])]).unwrap();
    let p = PropertiesElement::new(&u, p.rel, topo).unwrap();
    let b = reliability_bound(&u, &p, "a", "c", DEFAULT_BOUND_BUDGET).unwrap();
    assert_eq!((b.min, b.max), (Rational::new(1, 4), Rational::new(5, 8)));
}
