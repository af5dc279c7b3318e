use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::properties::{PropertiesElement, PropertiesLattice};
use super::universe::{SystemInstance, Universe};
use crate::error::{Error, Result};
use crate::galois::{GaloisConnection, ModelSpace};
use crate::lattice::{powerset_lattice, FiniteLattice, PowersetLattice, SmallSet};
use crate::rational::format_rational;
use crate::tag_options::{
    render_set, OptionSet, OptionsElement, TagOptionsElement, TagOptionsLattice, TagOptionsSpace, TagSet,
};

/// Which half of the properties domain a model formalism speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formalism {
    Reliability,
    Topology,
}

impl Formalism {
    pub const ALL: [Formalism; 2] = [Formalism::Reliability, Formalism::Topology];

    pub fn name(self) -> &'static str {
        match self {
            Formalism::Reliability => "reliability",
            Formalism::Topology => "topology",
        }
    }

    pub fn space(self, u: &Universe) -> &TagOptionsSpace {
        match self {
            Formalism::Reliability => u.rel_space(),
            Formalism::Topology => u.topo_space(),
        }
    }

    /// `α`: the part of `p` this formalism can express.
    pub fn alpha(self, p: &PropertiesElement) -> ModelBox {
        ModelBox(match self {
            Formalism::Reliability => p.rel.clone(),
            Formalism::Topology => p.topo.clone(),
        })
    }

    /// `γ`: the box, with the other part unconstrained.
    pub fn gamma(self, u: &Universe, b: &ModelBox) -> PropertiesElement {
        let mut p = PropertiesElement::top(u);
        match self {
            Formalism::Reliability => p.rel = b.0.clone(),
            Formalism::Topology => p.topo = b.0.clone(),
        }
        p
    }

    /// The fully-specified model of `s` over `domain`.
    pub fn exact_model(self, u: &Universe, s: &SystemInstance, domain: TagSet) -> Model {
        let choice = domain
            .iter()
            .map(|t| {
                let option = match self {
                    Formalism::Reliability => u.grid().index_of(&s.reliability_of(t)).expect("grid value"),
                    Formalism::Topology => s.presence(t).index(),
                };
                (t, option)
            })
            .collect();
        Model(choice)
    }
}

impl fmt::Display for Formalism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formalism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reliability" => Ok(Formalism::Reliability),
            "topology" => Ok(Formalism::Topology),
            _ => Err(Error::UnknownFormalism(s.to_string())),
        }
    }
}

/// A box-closed model set: an independent choice of allowed values per tag
/// of its domain. Boxes with an empty slot denote the empty model set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelBox(pub TagOptionsElement);

impl ModelBox {
    pub fn is_empty_set(&self) -> bool {
        self.0.options().has_empty_slot()
    }

    pub fn model_count(&self) -> u128 {
        self.0.options().choice_count()
    }

    pub fn domain(&self) -> TagSet {
        self.0.tag_set()
    }
}

/// One fully-specified model: an option per tag, in ascending tag order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model(pub Vec<(usize, usize)>);

/// Model boxes of one formalism, ordered as its tag–options lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxLattice {
    formalism: Formalism,
    lattice: TagOptionsLattice,
}

impl BoxLattice {
    pub fn new(u: &Universe, formalism: Formalism) -> Self {
        BoxLattice {
            formalism,
            lattice: TagOptionsLattice::new(formalism.space(u).clone()),
        }
    }

    pub fn formalism(&self) -> Formalism {
        self.formalism
    }

    pub fn space(&self) -> &TagOptionsSpace {
        self.lattice.space()
    }

    pub fn render_model(&self, m: &Model) -> String {
        let s = self.space();
        let parts: Vec<String> =
            m.0.iter()
                .map(|&(t, o)| format!("({},{})", s.tags.name(t), s.options.name(o)))
                .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl FiniteLattice for BoxLattice {
    type Elem = ModelBox;

    fn name(&self) -> String {
        format!("{}-boxes", self.formalism)
    }

    fn cardinality(&self) -> u128 {
        self.lattice.cardinality()
    }

    fn elements(&self) -> Vec<ModelBox> {
        self.lattice.elements().into_iter().map(ModelBox).collect()
    }

    fn leq(&self, a: &ModelBox, b: &ModelBox) -> bool {
        self.lattice.leq(&a.0, &b.0)
    }

    fn meet_all(&self, xs: &[ModelBox]) -> ModelBox {
        let inner: Vec<TagOptionsElement> = xs.iter().map(|x| x.0.clone()).collect();
        ModelBox(self.lattice.meet_all(&inner))
    }

    fn join_all(&self, xs: &[ModelBox]) -> ModelBox {
        let inner: Vec<TagOptionsElement> = xs.iter().map(|x| x.0.clone()).collect();
        ModelBox(self.lattice.join_all(&inner))
    }

    fn top(&self) -> ModelBox {
        ModelBox(self.lattice.top())
    }

    fn bottom(&self) -> ModelBox {
        ModelBox(self.lattice.bottom())
    }

    fn render(&self, x: &ModelBox) -> String {
        self.lattice.render(&x.0)
    }
}

impl ModelSpace for BoxLattice {
    type Model = Model;

    /// Cartesian product of the slots, first tag varying slowest.
    fn models(&self, b: &ModelBox) -> Vec<Model> {
        let slots: Vec<(usize, Vec<usize>)> = b.0.options().iter().map(|(t, o)| (t, o.iter().collect())).collect();
        let mut out = vec![Model(Vec::with_capacity(slots.len()))];
        for (t, options) in &slots {
            out = out
                .into_iter()
                .flat_map(|m| {
                    options.iter().map(move |&o| {
                        let mut next = m.0.clone();
                        next.push((*t, o));
                        Model(next)
                    })
                })
                .collect();
        }
        out
    }

    fn contains(&self, b: &ModelBox, m: &Model) -> bool {
        let domain: TagSet = m.0.iter().map(|&(t, _)| t).collect();
        domain == b.domain()
            && m.0.len() == domain.len()
            && m.0.iter().all(|&(t, o)| b.0.get(t).is_some_and(|s| s.contains(o)))
    }

    fn lift(&self, m: &Model) -> Result<ModelBox> {
        let s = self.space();
        if let Some(&(t, o)) = m.0.iter().find(|&&(t, o)| t >= s.tags.len() || o >= s.options.len()) {
            return Err(Error::Lift(format!(
                "({t},{o}) is outside the {} formalism",
                self.formalism
            )));
        }
        let domain: TagSet = m.0.iter().map(|&(t, _)| t).collect();
        let assigned = m.0.iter().map(|&(t, o)| (t, OptionSet::singleton(o)));
        Ok(ModelBox(TagOptionsElement::new(OptionsElement::new(
            s, domain, assigned,
        )?)))
    }

    fn render_model(&self, m: &Model) -> String {
        BoxLattice::render_model(self, m)
    }
}

fn connection(u: &Universe, formalism: Formalism) -> GaloisConnection<PropertiesLattice, BoxLattice> {
    let uu = u.clone();
    GaloisConnection::new(
        formalism.name(),
        PropertiesLattice::new(u.clone()),
        BoxLattice::new(u, formalism),
        move |p: &PropertiesElement| formalism.alpha(p),
        move |b: &ModelBox| formalism.gamma(&uu, b),
    )
}

/// α keeps the reliability part; γ restores it with topology ⊤.
pub fn reliability_connection(u: &Universe) -> GaloisConnection<PropertiesLattice, BoxLattice> {
    connection(u, Formalism::Reliability)
}

/// α keeps the topology part; γ restores it with reliability ⊤.
pub fn topology_connection(u: &Universe) -> GaloisConnection<PropertiesLattice, BoxLattice> {
    connection(u, Formalism::Topology)
}

/// The connection for `formalism`.
pub fn formalism_connection(u: &Universe, formalism: Formalism) -> GaloisConnection<PropertiesLattice, BoxLattice> {
    connection(u, formalism)
}

/// Every total reliability assignment of the universe, first component
/// varying slowest, as option indices.
fn total_assignments(u: &Universe) -> Result<Vec<Vec<usize>>> {
    let n = u.components().len();
    let d = u.grid().len();
    let count = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > crate::lattice::MAX_ATOMS as u128 {
        return Err(Error::capacity(
            "total assignments",
            count,
            crate::lattice::MAX_ATOMS as u128,
        ));
    }
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..d).map(move |o| {
                    let mut next = a.clone();
                    next.push(o);
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// Reliability abstraction into the *full* powerset of total assignments,
/// with `γ` the box hull. Kept as a negative example: `γ` is not completely
/// multiplicative.
///
/// `α(p)` is the set of assignments allowed by `p.rel`. `γ(∅) = ⊥`; otherwise
/// `γ(M)` constrains each component whose hull over `M` is not the whole
/// grid, with topology ⊤.
pub fn box_hull_powerset_connection(u: &Universe) -> Result<GaloisConnection<PropertiesLattice, PowersetLattice>> {
    let assignments = total_assignments(u)?;
    let labels: Vec<String> = assignments
        .iter()
        .map(|a| {
            let vs: Vec<String> = a.iter().map(|&o| format_rational(&u.grid().value(o))).collect();
            format!("({})", vs.join(","))
        })
        .collect();
    let atoms = powerset_lattice(labels)?;
    let ug = u.clone();
    let (aa, ag) = (assignments.clone(), assignments);
    Ok(GaloisConnection::new(
        "box-hull-powerset",
        PropertiesLattice::new(u.clone()),
        atoms,
        move |p: &PropertiesElement| {
            aa.iter()
                .enumerate()
                .filter(|(_, a)| p.rel.options().iter().all(|(c, allowed)| allowed.contains(a[c])))
                .map(|(i, _)| i)
                .collect::<SmallSet>()
        },
        move |m: &SmallSet| {
            if m.is_empty() {
                return PropertiesElement::bottom(&ug);
            }
            let space = ug.rel_space();
            let full = space.options.full();
            let hulls: Vec<OptionSet> = (0..ug.components().len())
                .map(|c| m.iter().map(|i| ag[i][c]).collect())
                .collect();
            let domain: TagSet = (0..hulls.len()).filter(|&c| hulls[c] != full).collect();
            let rel = OptionsElement::new(space, domain, domain.iter().map(|c| (c, hulls[c]))).expect("valid hull");
            PropertiesElement {
                rel: TagOptionsElement::new(rel),
                topo: TagOptionsElement::top(ug.topo_space()),
            }
        },
    ))
}

/// Names of the atoms in a set of total assignments.
pub fn render_assignments(l: &PowersetLattice, m: SmallSet) -> String {
    render_set(l.atoms(), m)
}
