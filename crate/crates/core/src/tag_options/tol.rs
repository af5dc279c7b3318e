use std::fmt;

use super::options::{options_join, options_leq, options_meet, phi, OptionsElement, OptionsLattice};
use super::{TagOptionsSpace, TagSet, TagUniverse};
use crate::error::Result;
use crate::lattice::{dual_lattice, powerset_lattice, Dual, FiniteLattice, PowersetLattice};

/// The tag lattice: the dual of the powerset of `T`. `⊑` is `⊇`, meet is
/// union, join is intersection, `⊤ = ∅`.
pub fn tag_lattice(universe: &TagUniverse) -> Dual<PowersetLattice> {
    dual_lattice(powerset_lattice(universe.names().iter().cloned()).expect("universe already validated"))
}

/// `(T′, f)` with `f` an options element over `T′`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TagOptionsElement {
    options: OptionsElement,
}

impl TagOptionsElement {
    pub fn new(options: OptionsElement) -> Self {
        TagOptionsElement { options }
    }

    pub fn tag_set(&self) -> TagSet {
        self.options.domain()
    }

    pub fn options(&self) -> &OptionsElement {
        &self.options
    }

    pub fn into_options(self) -> OptionsElement {
        self.options
    }

    /// `(∅, {})`: no tags are known to apply.
    pub fn top(space: &TagOptionsSpace) -> Self {
        TagOptionsElement::new(OptionsElement::top(space, TagSet::EMPTY))
    }

    /// `(T, λt.∅)`: no option is valid for any tag.
    pub fn bottom(space: &TagOptionsSpace) -> Self {
        TagOptionsElement::new(OptionsElement::bottom(space, space.tags.full()))
    }

    pub fn get(&self, tag: usize) -> Option<super::OptionSet> {
        self.options.get(tag)
    }

    pub fn render(&self, space: &TagOptionsSpace) -> String {
        format!(
            "({}, {})",
            space.tags.render_set(self.tag_set()),
            self.options.render(space)
        )
    }
}

impl fmt::Debug for TagOptionsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.tag_set(), self.options)
    }
}

/// `(A, f) ⊑ (B, g)` iff `A ⊑ B` in the tag lattice and `φ_{A→B}(f) ⊑ g`.
pub fn tol_leq(space: &TagOptionsSpace, x: &TagOptionsElement, y: &TagOptionsElement) -> Result<bool> {
    x.options.check_space(space)?;
    y.options.check_space(space)?;
    let (a, b) = (x.tag_set(), y.tag_set());
    let tags = tag_lattice(&space.tags);
    if !tags.leq(&a, &b) {
        return Ok(false);
    }
    options_leq(&phi(space, a, b, &x.options), &y.options)
}

fn combine(
    space: &TagOptionsSpace,
    xs: &[TagOptionsElement],
    tag_op: impl Fn(&Dual<PowersetLattice>, &[TagSet]) -> TagSet,
    options_op: impl Fn(&TagOptionsSpace, TagSet, &[OptionsElement]) -> Result<OptionsElement>,
) -> Result<TagOptionsElement> {
    for x in xs {
        x.options.check_space(space)?;
    }
    let v: Vec<TagSet> = xs.iter().map(TagOptionsElement::tag_set).collect();
    let target = tag_op(&tag_lattice(&space.tags), &v);
    let transported: Vec<OptionsElement> = xs.iter().map(|x| phi(space, x.tag_set(), target, &x.options)).collect();
    Ok(TagOptionsElement::new(options_op(space, target, &transported)?))
}

/// `⨅Λ = (⨅V, ⨅{φ_{T′→⨅V}(f) | (T′,f) ∈ Λ})`; the empty collection gives ⊤.
pub fn tol_meet(space: &TagOptionsSpace, xs: &[TagOptionsElement]) -> Result<TagOptionsElement> {
    combine(space, xs, |l, v| l.meet_all(v), options_meet)
}

/// `⨆Λ = (⨆V, ⨆{φ_{T′→⨆V}(f) | (T′,f) ∈ Λ})`; the empty collection gives ⊥.
pub fn tol_join(space: &TagOptionsSpace, xs: &[TagOptionsElement]) -> Result<TagOptionsElement> {
    combine(space, xs, |l, v| l.join_all(v), options_join)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagOptionsLattice {
    space: TagOptionsSpace,
}

impl TagOptionsLattice {
    pub fn new(space: TagOptionsSpace) -> Self {
        TagOptionsLattice { space }
    }

    pub fn space(&self) -> &TagOptionsSpace {
        &self.space
    }
}

impl FiniteLattice for TagOptionsLattice {
    type Elem = TagOptionsElement;

    fn name(&self) -> String {
        format!(
            "tag-options(T={}, O={})",
            self.space.tags.render_set(self.space.tags.full()),
            self.space.options.render_set(self.space.options.full())
        )
    }

    /// `Σ_{T′ ⊆ T} 2^{|T′|·|O|} = (1 + 2^{|O|})^{|T|}`.
    fn cardinality(&self) -> u128 {
        let per_tag = 1u128.checked_shl(self.space.options.len() as u32).map(|p| p + 1);
        per_tag
            .and_then(|p| p.checked_pow(self.space.tags.len() as u32))
            .unwrap_or(u128::MAX)
    }

    fn elements(&self) -> Vec<TagOptionsElement> {
        self.space
            .tags
            .full()
            .subsets()
            .flat_map(|d| OptionsLattice::enumerate(&self.space, d))
            .map(TagOptionsElement::new)
            .collect()
    }

    fn leq(&self, a: &TagOptionsElement, b: &TagOptionsElement) -> bool {
        tol_leq(&self.space, a, b).expect("elements of one tag-options lattice")
    }

    fn meet_all(&self, xs: &[TagOptionsElement]) -> TagOptionsElement {
        tol_meet(&self.space, xs).expect("elements of one tag-options lattice")
    }

    fn join_all(&self, xs: &[TagOptionsElement]) -> TagOptionsElement {
        tol_join(&self.space, xs).expect("elements of one tag-options lattice")
    }

    fn top(&self) -> TagOptionsElement {
        TagOptionsElement::top(&self.space)
    }

    fn bottom(&self) -> TagOptionsElement {
        TagOptionsElement::bottom(&self.space)
    }

    fn render(&self, x: &TagOptionsElement) -> String {
        x.render(&self.space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const NONE: &[&str] = &[];

    fn space() -> TagOptionsSpace {
        TagOptionsSpace::from_names(["t1", "t2", "t3"], ["x", "y"]).unwrap()
    }

    #[test]
    fn tag_lattice_orders_by_reverse_inclusion() {
        let u = TagUniverse::new(["t1", "t2"]).unwrap();
        let l = tag_lattice(&u);
        let both = u.set(&["t1", "t2"]).unwrap();
        let t1 = u.set(&["t1"]).unwrap();
        let t2 = u.set(&["t2"]).unwrap();
        assert!(l.leq(&both, &t1));
        assert_eq!(l.meet(&t1, &t2), both);
        assert_eq!(l.top(), TagSet::EMPTY);
    }

    #[test]
    fn worked_meet_across_tag_sets() {
        let s = space();
        let x = s.tag_options(&[("t1", NONE), ("t2", &["x", "y"])]).unwrap();
        let y = s.tag_options(&[("t2", &["x"]), ("t3", &["y"])]).unwrap();
        let m = tol_meet(&s, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(
            m,
            s.tag_options(&[("t1", NONE), ("t2", &["x"]), ("t3", &["y"])]).unwrap()
        );
        assert!(tol_leq(&s, &m, &x).unwrap());
        assert!(tol_leq(&s, &m, &y).unwrap());
    }

    #[test]
    fn identities() {
        let s = space();
        let x = s.tag_options(&[("t1", &["x"]), ("t3", NONE)]).unwrap();
        let bot = TagOptionsElement::bottom(&s);
        let top = TagOptionsElement::top(&s);
        assert_eq!(tol_meet(&s, &[x.clone(), x.clone()]).unwrap(), x);
        assert_eq!(tol_join(&s, &[x.clone(), bot.clone()]).unwrap(), x);
        assert!(tol_leq(&s, &x, &top).unwrap());
        assert!(tol_leq(&s, &bot, &x).unwrap());
        assert_eq!(tol_meet(&s, &[]).unwrap(), top);
        assert_eq!(tol_join(&s, &[]).unwrap(), bot);
    }

    #[test]
    fn pointwise_inclusion_on_same_tags() {
        let s = space();
        let a = s.tag_options(&[("t1", &["x"])]).unwrap();
        let b = s.tag_options(&[("t1", &["x", "y"])]).unwrap();
        assert!(tol_leq(&s, &a, &b).unwrap());
        assert!(!tol_leq(&s, &b, &a).unwrap());
    }

    #[test]
    fn cardinality_matches_enumeration() {
        for (nt, no) in [(0, 2), (1, 2), (2, 2), (2, 1), (3, 1)] {
            let tags: Vec<String> = (0..nt).map(|i| format!("t{i}")).collect();
            let opts: Vec<String> = (0..no).map(|i| format!("o{i}")).collect();
            let l = TagOptionsLattice::new(TagOptionsSpace::from_names(tags, opts).unwrap());
            assert_eq!(l.elements().len() as u128, l.cardinality());
        }
    }

    #[test]
    fn foreign_elements_are_a_universe_mismatch() {
        let s = space();
        let other = TagOptionsSpace::from_names(["a"], ["x", "y"]).unwrap();
        let x = other.tag_options(&[("a", &["x"])]).unwrap();
        assert!(matches!(
            tol_leq(&s, &x, &TagOptionsElement::top(&s)),
            Err(Error::UniverseMismatch(_))
        ));
        assert!(matches!(tol_meet(&s, &[x]), Err(Error::UniverseMismatch(_))));
    }
}
