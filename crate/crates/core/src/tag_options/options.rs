use std::fmt;

use smallvec::SmallVec;

use super::{render_set, OptionSet, TagOptionsSpace, TagSet};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// A total map from a tag set (its domain) to option subsets.
///
/// Stored densely by tag index over the whole universe; slots outside the
/// domain are always empty, so derived equality is element equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OptionsElement {
    domain: TagSet,
    slots: SmallVec<[OptionSet; 8]>,
}

impl OptionsElement {
    /// `assigned` must give exactly one option set per tag of `domain`.
    pub fn new(
        space: &TagOptionsSpace,
        domain: TagSet,
        assigned: impl IntoIterator<Item = (usize, OptionSet)>,
    ) -> Result<Self> {
        let n = space.tags.len();
        if !domain.is_subset(space.tags.full()) {
            return Err(Error::Validation(format!("domain {domain:?} exceeds the tag universe")));
        }
        let mut slots: SmallVec<[OptionSet; 8]> = SmallVec::from_elem(OptionSet::EMPTY, n);
        let mut seen = TagSet::EMPTY;
        for (t, opts) in assigned {
            if !domain.contains(t) {
                return Err(Error::Validation(format!("tag {t} is outside the domain")));
            }
            if seen.contains(t) {
                return Err(Error::Validation(format!(
                    "tag `{}` assigned twice",
                    space.tags.name(t)
                )));
            }
            if !opts.is_subset(space.options.full()) {
                return Err(Error::Validation(format!(
                    "options {opts:?} exceed the option universe"
                )));
            }
            seen = seen.with(t);
            slots[t] = opts;
        }
        if seen != domain {
            return Err(Error::Validation(format!(
                "tags {} have no assignment",
                space.tags.render_set(domain.difference(seen))
            )));
        }
        Ok(OptionsElement { domain, slots })
    }

    /// Unchecked constructor for internal callers that build `f` tag by tag.
    pub(crate) fn from_fn(space: &TagOptionsSpace, domain: TagSet, mut f: impl FnMut(usize) -> OptionSet) -> Self {
        let mut slots: SmallVec<[OptionSet; 8]> = SmallVec::from_elem(OptionSet::EMPTY, space.tags.len());
        for t in domain.iter() {
            slots[t] = f(t);
        }
        OptionsElement { domain, slots }
    }

    /// `λt.O` over `domain`.
    pub fn top(space: &TagOptionsSpace, domain: TagSet) -> Self {
        let all = space.options.full();
        Self::from_fn(space, domain, |_| all)
    }

    /// `λt.∅` over `domain`.
    pub fn bottom(space: &TagOptionsSpace, domain: TagSet) -> Self {
        Self::from_fn(space, domain, |_| OptionSet::EMPTY)
    }

    pub fn domain(&self) -> TagSet {
        self.domain
    }

    pub fn get(&self, tag: usize) -> Option<OptionSet> {
        self.domain.contains(tag).then(|| self.slots[tag])
    }

    /// `(tag, options)` pairs in ascending tag order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, OptionSet)> + '_ {
        self.domain.iter().map(move |t| (t, self.slots[t]))
    }

    /// True if some tag maps to the empty option set.
    pub fn has_empty_slot(&self) -> bool {
        self.iter().any(|(_, o)| o.is_empty())
    }

    /// Number of exact assignments choosing one option per tag.
    pub fn choice_count(&self) -> u128 {
        self.iter()
            .fold(1u128, |acc, (_, o)| acc.saturating_mul(o.len() as u128))
    }

    pub(crate) fn universe_len(&self) -> usize {
        self.slots.len()
    }

    pub(crate) fn check_space(&self, space: &TagOptionsSpace) -> Result<()> {
        let opts = space.options.full();
        if self.slots.len() != space.tags.len() || self.iter().any(|(_, o)| !o.is_subset(opts)) {
            return Err(Error::UniverseMismatch(format!(
                "element over {} tags does not belong to a space of {} tags and {} options",
                self.slots.len(),
                space.tags.len(),
                space.options.len()
            )));
        }
        Ok(())
    }

    pub fn render(&self, space: &TagOptionsSpace) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|(t, o)| format!("({},{})", space.tags.name(t), render_set(space.options.names(), o)))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for OptionsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

fn same_domain(f: &OptionsElement, g: &OptionsElement) -> Result<()> {
    if f.domain != g.domain || f.universe_len() != g.universe_len() {
        return Err(Error::DomainMismatch(format!(
            "options elements over {:?} and {:?}; transport with φ first",
            f.domain, g.domain
        )));
    }
    Ok(())
}

/// `f ⊑ g` iff `f(t) ⊆ g(t)` for every tag.
pub fn options_leq(f: &OptionsElement, g: &OptionsElement) -> Result<bool> {
    same_domain(f, g)?;
    Ok(f.iter().all(|(t, o)| o.is_subset(g.slots[t])))
}

fn pointwise(
    space: &TagOptionsSpace,
    domain: TagSet,
    elems: &[OptionsElement],
    start: OptionSet,
    op: impl Fn(OptionSet, OptionSet) -> OptionSet,
) -> Result<OptionsElement> {
    for e in elems {
        e.check_space(space)?;
        if e.domain != domain {
            return Err(Error::DomainMismatch(format!(
                "element over {} in a collection over {}; transport with φ first",
                space.tags.render_set(e.domain),
                space.tags.render_set(domain)
            )));
        }
    }
    Ok(OptionsElement::from_fn(space, domain, |t| {
        elems.iter().fold(start, |acc, e| op(acc, e.slots[t]))
    }))
}

/// `⨅O′ = λt.⋂{f(t) | f ∈ O′}`; the empty collection gives `λt.O`.
pub fn options_meet(space: &TagOptionsSpace, domain: TagSet, elems: &[OptionsElement]) -> Result<OptionsElement> {
    pointwise(space, domain, elems, space.options.full(), OptionSet::intersection)
}

/// `⨆O′ = λt.⋃{f(t) | f ∈ O′}`; the empty collection gives `λt.∅`.
pub fn options_join(space: &TagOptionsSpace, domain: TagSet, elems: &[OptionsElement]) -> Result<OptionsElement> {
    pointwise(space, domain, elems, OptionSet::EMPTY, OptionSet::union)
}

/// `φ_{A→B}`: keeps `f(t)` on `A ∩ B` and assigns the full option set to
/// tags of `B − A`; tags of `A − B` are dropped.
pub fn phi(space: &TagOptionsSpace, a: TagSet, b: TagSet, f: &OptionsElement) -> OptionsElement {
    debug_assert_eq!(f.domain, a, "φ source domain must match the element");
    let all = space.options.full();
    OptionsElement::from_fn(space, b, |t| if a.contains(t) { f.slots[t] } else { all })
}

/// The options lattice over one fixed tag set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionsLattice {
    space: TagOptionsSpace,
    domain: TagSet,
}

impl OptionsLattice {
    pub fn new(space: TagOptionsSpace, domain: TagSet) -> Result<Self> {
        if !domain.is_subset(space.tags.full()) {
            return Err(Error::Validation("domain exceeds the tag universe".into()));
        }
        Ok(OptionsLattice { space, domain })
    }

    pub fn space(&self) -> &TagOptionsSpace {
        &self.space
    }

    pub fn domain(&self) -> TagSet {
        self.domain
    }

    /// All options elements over `domain`, the first tag varying slowest.
    pub(crate) fn enumerate(space: &TagOptionsSpace, domain: TagSet) -> Vec<OptionsElement> {
        let tags: Vec<usize> = domain.iter().collect();
        let per_tag = 1u64 << space.options.len();
        let total = per_tag.pow(tags.len() as u32);
        (0..total)
            .map(|mut code| {
                let mut values = vec![OptionSet::EMPTY; tags.len()];
                for slot in values.iter_mut().rev() {
                    *slot = OptionSet::from_bits(code % per_tag);
                    code /= per_tag;
                }
                let mut it = values.into_iter();
                OptionsElement::from_fn(space, domain, |_| it.next().expect("one value per tag"))
            })
            .collect()
    }
}

impl FiniteLattice for OptionsLattice {
    type Elem = OptionsElement;

    fn name(&self) -> String {
        format!("options{}", self.space.tags.render_set(self.domain))
    }

    fn cardinality(&self) -> u128 {
        let bits = self.domain.len() * self.space.options.len();
        if bits >= 128 {
            u128::MAX
        } else {
            1u128 << bits
        }
    }

    fn elements(&self) -> Vec<OptionsElement> {
        Self::enumerate(&self.space, self.domain)
    }

    fn leq(&self, a: &OptionsElement, b: &OptionsElement) -> bool {
        options_leq(a, b).expect("elements of one options lattice")
    }

    fn meet_all(&self, xs: &[OptionsElement]) -> OptionsElement {
        options_meet(&self.space, self.domain, xs).expect("elements of one options lattice")
    }

    fn join_all(&self, xs: &[OptionsElement]) -> OptionsElement {
        options_join(&self.space, self.domain, xs).expect("elements of one options lattice")
    }

    fn top(&self) -> OptionsElement {
        OptionsElement::top(&self.space, self.domain)
    }

    fn bottom(&self) -> OptionsElement {
        OptionsElement::bottom(&self.space, self.domain)
    }

    fn render(&self, x: &OptionsElement) -> String {
        x.render(&self.space)
    }
}
