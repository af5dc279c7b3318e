//! JSON forms of constraint literals, model boxes, models and systems.
//!
//! Reliability values are grid rationals written `"n/d"` on output. On input
//! they may also be decimals (`"0.75"`, `0.75`) or an interval shorthand
//! string `"[0.8,1.0]"` that stands for every grid point in the interval.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tolkit_core::domains::{Formalism, Model, ModelBox, Presence, PropertiesElement, SystemInstance, Universe};
use tolkit_core::rational::{format_rational, parse_rational};
use tolkit_core::tag_options::{OptionSet, OptionsElement, TagOptionsElement, TagOptionsSpace, TagSet};
use tolkit_core::{Error, Rational, Result};

/// One allowed value as written in a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(serde_json::Number),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Number(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

/// Allowed values for one tag: an explicit list or an interval shorthand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Allowed {
    List(Vec<Scalar>),
    Interval(String),
}

pub type ConstraintMap = BTreeMap<String, Allowed>;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertiesLiteral {
    #[serde(default)]
    pub reliability: ConstraintMap,
    #[serde(default)]
    pub topology: ConstraintMap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxLiteral {
    pub formalism: String,
    #[serde(default)]
    pub constraints: ConstraintMap,
}

fn parse_interval(u: &Universe, text: &str) -> Result<OptionSet> {
    let bad = || Error::Validation(format!("bad interval shorthand `{text}`"));
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
    let (lo, hi) = (parse_rational(lo)?, parse_rational(hi)?);
    let grid = u.grid();
    grid.require(&lo)?;
    grid.require(&hi)?;
    if lo > hi {
        return Err(bad());
    }
    Ok(grid.points_in(&lo, &hi))
}

fn rel_slot(u: &Universe, allowed: &Allowed) -> Result<OptionSet> {
    match allowed {
        Allowed::Interval(text) => parse_interval(u, text),
        Allowed::List(values) => values
            .iter()
            .map(|v| u.grid().require(&parse_rational(&v.text())?))
            .collect(),
    }
}

fn topo_slot(allowed: &Allowed) -> Result<OptionSet> {
    match allowed {
        Allowed::Interval(text) => Err(Error::Validation(format!(
            "interval `{text}` given for a topology pair"
        ))),
        Allowed::List(values) => values
            .iter()
            .map(|v| Presence::parse(&v.text()).map(Presence::index))
            .collect(),
    }
}

fn tag_index(u: &Universe, formalism: Formalism, name: &str) -> Result<usize> {
    match formalism {
        Formalism::Reliability => u.component_index(name),
        Formalism::Topology => u.pair_by_name(name),
    }
}

/// Decodes the constraints of one formalism.
pub fn decode_constraints(u: &Universe, formalism: Formalism, map: &ConstraintMap) -> Result<TagOptionsElement> {
    let space = formalism.space(u);
    let mut domain = TagSet::EMPTY;
    let mut slots = Vec::with_capacity(map.len());
    for (name, allowed) in map {
        let t = tag_index(u, formalism, name)?;
        if domain.contains(t) {
            return Err(Error::Validation(format!("`{name}` constrained twice")));
        }
        let set = match formalism {
            Formalism::Reliability => rel_slot(u, allowed)?,
            Formalism::Topology => topo_slot(allowed)?,
        };
        domain = domain.with(t);
        slots.push((t, set));
    }
    Ok(TagOptionsElement::new(OptionsElement::new(space, domain, slots)?))
}

fn option_label(u: &Universe, formalism: Formalism, o: usize) -> String {
    match formalism {
        Formalism::Reliability => format_rational(&u.grid().value(o)),
        Formalism::Topology => Presence::from_index(o).name().to_string(),
    }
}

/// Canonical output form: tag name to the sorted list of allowed values.
pub fn encode_constraints(u: &Universe, formalism: Formalism, x: &TagOptionsElement) -> ConstraintMap {
    let space: &TagOptionsSpace = formalism.space(u);
    x.options()
        .iter()
        .map(|(t, set)| {
            let values = set
                .iter()
                .map(|o| Scalar::Text(option_label(u, formalism, o)))
                .collect();
            (space.tags.name(t).to_string(), Allowed::List(values))
        })
        .collect()
}

pub fn decode_properties(u: &Universe, lit: &PropertiesLiteral) -> Result<PropertiesElement> {
    PropertiesElement::new(
        u,
        decode_constraints(u, Formalism::Reliability, &lit.reliability)?,
        decode_constraints(u, Formalism::Topology, &lit.topology)?,
    )
}

pub fn encode_properties(u: &Universe, p: &PropertiesElement) -> PropertiesLiteral {
    PropertiesLiteral {
        reliability: encode_constraints(u, Formalism::Reliability, &p.rel),
        topology: encode_constraints(u, Formalism::Topology, &p.topo),
    }
}

pub fn decode_box(u: &Universe, lit: &BoxLiteral) -> Result<(Formalism, ModelBox)> {
    let f: Formalism = lit.formalism.parse()?;
    Ok((f, ModelBox(decode_constraints(u, f, &lit.constraints)?)))
}

pub fn encode_box(u: &Universe, f: Formalism, b: &ModelBox) -> BoxLiteral {
    BoxLiteral {
        formalism: f.name().to_string(),
        constraints: encode_constraints(u, f, &b.0),
    }
}

/// A fully-specified model: tag name to its single value.
pub fn decode_model(u: &Universe, f: Formalism, lit: &BTreeMap<String, Scalar>) -> Result<Model> {
    let mut choice = Vec::with_capacity(lit.len());
    for (name, v) in lit {
        let t = tag_index(u, f, name)?;
        let o = match f {
            Formalism::Reliability => u.grid().require(&parse_rational(&v.text())?)?,
            Formalism::Topology => Presence::parse(&v.text())?.index(),
        };
        choice.push((t, o));
    }
    choice.sort_unstable();
    if choice.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Validation("model assigns a tag twice".into()));
    }
    Ok(Model(choice))
}

pub fn encode_model(u: &Universe, f: Formalism, m: &Model) -> Value {
    let space = f.space(u);
    let map: BTreeMap<&str, String> =
        m.0.iter()
            .map(|&(t, o)| (space.tags.name(t), option_label(u, f, o)))
            .collect();
    json!(map)
}

pub fn encode_rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn encode_system(u: &Universe, s: &SystemInstance) -> Value {
    let reliability: BTreeMap<&str, String> = u
        .components()
        .iter()
        .zip(s.reliability())
        .map(|(c, r)| (c.as_str(), format_rational(r)))
        .collect();
    let edges: Vec<&str> = s.present().iter().map(|k| u.pair_name(k)).collect();
    json!({ "reliability": reliability, "edges": edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Universe {
        Universe::new(&["c1", "c2"], None, 20).unwrap()
    }

    #[test]
    fn interval_shorthand_expands_to_grid_points() {
        let lit: PropertiesLiteral = serde_json::from_str(r#"{"reliability": {"c1": "[0.8,1.0]"}}"#).unwrap();
        let p = decode_properties(&u(), &lit).unwrap();
        assert_eq!(p.rel.options().get(0).unwrap().len(), 5);
        let out = encode_properties(&u(), &p);
        let Allowed::List(vs) = &out.reliability["c1"] else {
            panic!()
        };
        assert_eq!(vs[0], Scalar::Text("4/5".into()));
        assert_eq!(decode_properties(&u(), &out).unwrap(), p);
    }

    #[test]
    fn numbers_decimals_and_fractions_agree() {
        let a: PropertiesLiteral = serde_json::from_str(r#"{"reliability": {"c1": [0.75, "1"]}}"#).unwrap();
        let b: PropertiesLiteral = serde_json::from_str(r#"{"reliability": {"c1": ["3/4", "1/1"]}}"#).unwrap();
        assert_eq!(
            decode_properties(&u(), &a).unwrap(),
            decode_properties(&u(), &b).unwrap()
        );
    }

    #[test]
    fn off_grid_and_unknown_names_are_rejected() {
        for text in [
            r#"{"reliability": {"c1": ["0.33"]}}"#,
            r#"{"reliability": {"c9": ["1"]}}"#,
            r#"{"reliability": {"c1": "[0.9,0.8]"}}"#,
            r#"{"topology": {"c1-c2": ["maybe"]}}"#,
            r#"{"topology": {"c1-c2": "[0.5,1]"}}"#,
        ] {
            let lit: PropertiesLiteral = serde_json::from_str(text).unwrap();
            assert!(decode_properties(&u(), &lit).is_err(), "{text}");
        }
    }

    #[test]
    fn pair_names_are_canonical_on_output() {
        let lit: PropertiesLiteral = serde_json::from_str(r#"{"topology": {"c2-c1": ["absent"]}}"#).unwrap();
        let p = decode_properties(&u(), &lit).unwrap();
        assert!(encode_properties(&u(), &p).topology.contains_key("c1-c2"));
    }
}
