use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use super::connection::GaloisConnection;
use super::correctness::CorrectnessRelation;
use crate::error::{Error, Result};
use crate::lattice::{CheckConfig, FiniteLattice};
use crate::report::{LawReport, Tally, Witness};

/// An abstract lattice whose elements denote sets of fully-specified models.
pub trait ModelSpace: FiniteLattice {
    type Model: Clone + Eq + Hash + Debug + Send + Sync;

    /// Members of the model set `m`, in canonical order.
    fn models(&self, m: &Self::Elem) -> Vec<Self::Model>;

    fn contains(&self, m: &Self::Elem, model: &Self::Model) -> bool;

    /// The singleton `{model}`; fails if `model` is not well formed here.
    fn lift(&self, model: &Self::Model) -> Result<Self::Elem>;

    fn render_model(&self, model: &Self::Model) -> String {
        format!("{model:?}")
    }
}

type Choose<M> = Arc<dyn Fn(&M, &<M as FiniteLattice>::Elem) -> Option<<M as ModelSpace>::Model> + Send + Sync>;

/// `σ`: picks one model from a non-empty model set.
pub struct SelectionOperator<M: ModelSpace> {
    name: String,
    choose: Choose<M>,
}

impl<M: ModelSpace> Clone for SelectionOperator<M> {
    fn clone(&self) -> Self {
        SelectionOperator {
            name: self.name.clone(),
            choose: Arc::clone(&self.choose),
        }
    }
}

impl<M: ModelSpace> fmt::Debug for SelectionOperator<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SelectionOperator({})", self.name)
    }
}

impl<M: ModelSpace + 'static> SelectionOperator<M> {
    pub fn new(
        name: impl Into<String>,
        choose: impl Fn(&M, &M::Elem) -> Option<M::Model> + Send + Sync + 'static,
    ) -> Self {
        SelectionOperator {
            name: name.into(),
            choose: Arc::new(choose),
        }
    }

    /// The first member in canonical order.
    pub fn canonical_least() -> Self {
        Self::new("canonical-least", |space: &M, m: &M::Elem| {
            space.models(m).into_iter().next()
        })
    }

    /// Always proposes `model`; `select` rejects it for sets that lack it.
    pub fn fixed(model: M::Model) -> Self {
        Self::new("fixed", move |_: &M, _: &M::Elem| Some(model.clone()))
    }

    /// The first member `m` with `s ⊨ {m}`, falling back to the first member.
    /// This is the selector an engineer with full knowledge of `s` would use.
    pub fn for_system<S>(relation: CorrectnessRelation<S, M>, system: S) -> Self
    where
        S: Debug + Send + Sync + 'static,
        M: Clone,
    {
        Self::new("for-system", move |space: &M, m: &M::Elem| {
            let members = space.models(m);
            members
                .iter()
                .find(|x| space.lift(x).is_ok_and(|single| relation.holds(&system, &single)))
                .or(members.first())
                .cloned()
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

/// `σ(m)`, with membership checked at runtime.
pub fn select<M: ModelSpace>(sel: &SelectionOperator<M>, space: &M, m: &M::Elem) -> Result<M::Model> {
    if space.models(m).is_empty() {
        return Err(Error::NoModel);
    }
    let chosen = (sel.choose)(space, m).ok_or(Error::NoModel)?;
    if !space.contains(m, &chosen) {
        return Err(Error::Contract(format!(
            "selector `{}` chose {} outside {}",
            sel.name,
            space.render_model(&chosen),
            space.render(m)
        )));
    }
    Ok(chosen)
}

/// `p′ = p ⊓ γ({model})`.
pub fn refine<P: FiniteLattice, M: ModelSpace>(
    p: &P::Elem,
    c: &GaloisConnection<P, M>,
    model: &M::Model,
) -> Result<P::Elem> {
    let single = c
        .abstract_domain()
        .lift(model)
        .map_err(|e| Error::Lift(format!("{}: {e}", c.abstract_domain().render_model(model))))?;
    Ok(c.concrete().meet(p, &c.gamma(&single)))
}

/// Checks `σ(m) ∈ m` for every non-empty model set, and
/// `s ⊨ m ⟹ s ⊨ {σ(m)}` for the given system.
pub fn check_selection<S, M>(
    sel: &SelectionOperator<M>,
    relation: &CorrectnessRelation<S, M>,
    system: &S,
    cfg: &CheckConfig,
) -> Result<LawReport>
where
    S: Debug + Send + Sync,
    M: ModelSpace,
{
    let space = relation.lattice();
    let card = space.cardinality();
    if card > cfg.max_elements as u128 {
        return Err(Error::capacity("selection check", card, cfg.max_elements as u128));
    }
    let mut report = LawReport::new(format!("selection `{}` for {system:?}", sel.name));
    let (mut member, mut correct) = (Tally::default(), Tally::default());
    for m in space.elements() {
        if space.models(&m).is_empty() {
            continue;
        }
        let chosen = (sel.choose)(space, &m);
        member.check(chosen.as_ref().is_some_and(|x| space.contains(&m, x)), || {
            Witness::new(
                vec![space.render(&m)],
                "σ(m) ∈ m",
                chosen.as_ref().map_or("<none>".into(), |x| space.render_model(x)),
                space.render(&m),
            )
        });
        if !relation.holds(system, &m) {
            correct.vacuous();
            continue;
        }
        let single = chosen.as_ref().and_then(|x| space.lift(x).ok());
        correct.check(single.as_ref().is_some_and(|x| relation.holds(system, x)), || {
            Witness::new(
                vec![space.render(&m)],
                "s ⊨ m ⟹ s ⊨ {σ(m)}",
                "s ⊨ m",
                single
                    .as_ref()
                    .map_or("<none>".into(), |x| format!("s ⊭ {}", space.render(x))),
            )
        });
    }
    report.push("selection-member", member);
    report.push("selection-preserves-correctness", correct);
    Ok(report)
}
