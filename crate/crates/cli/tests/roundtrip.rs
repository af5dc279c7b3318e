use proptest::prelude::*;
use tolkit_cli::codec::{decode_box, decode_properties, encode_box, encode_properties, BoxLiteral, PropertiesLiteral};
use tolkit_core::domains::{Formalism, ModelBox, PropertiesElement, Universe};
use tolkit_core::tag_options::{OptionSet, OptionsElement, TagOptionsElement, TagOptionsSpace, TagSet};

fn universe() -> Universe {
    Universe::network(&["a", "b", "c"], 4).unwrap()
}

fn element(space: &TagOptionsSpace, domain: u64, slots: &[u64]) -> TagOptionsElement {
    let n = space.tags.len();
    let domain = TagSet::from_bits(domain & ((1 << n) - 1));
    let full = space.options.full().bits();
    let assigned = domain.iter().map(|t| (t, OptionSet::from_bits(slots[t] & full)));
    TagOptionsElement::new(OptionsElement::new(space, domain, assigned).unwrap())
}

proptest! {
    #[test]
    fn properties_survive_json(
        rd in any::<u64>(), rs in prop::collection::vec(any::<u64>(), 6),
        td in any::<u64>(), ts in prop::collection::vec(any::<u64>(), 3),
    ) {
        let u = universe();
        let p = PropertiesElement::new(&u, element(u.rel_space(), rd, &rs), element(u.topo_space(), td, &ts)).unwrap();
        let text = serde_json::to_string(&encode_properties(&u, &p)).unwrap();
        let back: PropertiesLiteral = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(decode_properties(&u, &back).unwrap(), p);
    }

    #[test]
    fn boxes_survive_json(d in any::<u64>(), s in prop::collection::vec(any::<u64>(), 6), topo in any::<bool>()) {
        let u = universe();
        let f = if topo { Formalism::Topology } else { Formalism::Reliability };
        let b = ModelBox(element(f.space(&u), d, &s));
        let text = serde_json::to_string(&encode_box(&u, f, &b)).unwrap();
        let back: BoxLiteral = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(decode_box(&u, &back).unwrap(), (f, b));
    }
}
