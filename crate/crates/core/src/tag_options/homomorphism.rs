//! Exhaustive harness for the φ transport laws: φ preserves meets of every
//! collection and joins of every non-empty collection, plus the order
//! corollary used to show that the tag–options lattice is complete.
//!
//! φ does not preserve the empty join when `B ⊄ A`: `⨆∅ = λt.∅` over `B`,
//! while `φ_{A→B}(λt.∅)` assigns `O` to the tags of `B − A`. That case is
//! counted separately and reported as the `phi-preserves-empty-join`
//! observation rather than as a law.

use rayon::prelude::*;

use super::options::{options_join, options_leq, options_meet, phi, OptionsElement, OptionsLattice};
use super::{TagOptionsSpace, TagSet};
use crate::error::{Error, Result};
use crate::lattice::enumerate::{par_tally, subsets_starting_at};
use crate::report::{LawReport, Tally, Witness};

/// Signature of a transport map `φ_{A→B}`, so mutated versions can be checked.
pub type PhiFn = dyn Fn(&TagOptionsSpace, TagSet, TagSet, &OptionsElement) -> OptionsElement + Sync;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomomorphismConfig {
    pub max_tags: usize,
    pub max_options: usize,
    /// Options lattices with at most this many subsets have every subset
    /// checked; larger ones use collections of size `≤ subset_cap` plus the
    /// full collection. The empty collection is always checked.
    pub subset_budget: u128,
    pub subset_cap: usize,
}

impl Default for HomomorphismConfig {
    fn default() -> Self {
        HomomorphismConfig {
            max_tags: 3,
            max_options: 2,
            subset_budget: 1 << 16,
            subset_cap: 3,
        }
    }
}

pub fn check_homomorphism(space: &TagOptionsSpace, cfg: &HomomorphismConfig) -> Result<LawReport> {
    check_homomorphism_with(space, cfg, &phi)
}

pub fn check_homomorphism_with(space: &TagOptionsSpace, cfg: &HomomorphismConfig, phi_fn: &PhiFn) -> Result<LawReport> {
    if space.tags.len() > cfg.max_tags {
        return Err(Error::capacity(
            "homomorphism check tags",
            space.tags.len() as u128,
            cfg.max_tags as u128,
        ));
    }
    if space.options.len() > cfg.max_options {
        return Err(Error::capacity(
            "homomorphism check options",
            space.options.len() as u128,
            cfg.max_options as u128,
        ));
    }

    let mut report = LawReport::new(format!(
        "φ over T={}, O={}",
        space.tags.render_set(space.tags.full()),
        space.options.render_set(space.options.full())
    ));
    let tag_sets: Vec<TagSet> = space.tags.full().subsets().collect();
    let lattices: Vec<Vec<OptionsElement>> = tag_sets.iter().map(|&a| OptionsLattice::enumerate(space, a)).collect();
    let rt = |t: TagSet| space.tags.render_set(t);
    let ro = |f: &OptionsElement| f.render(space);

    let mut identity = Tally::default();
    for (ai, &a) in tag_sets.iter().enumerate() {
        for f in &lattices[ai] {
            let g = phi_fn(space, a, a, f);
            identity.check(&g == f, || {
                Witness::new(vec![rt(a), ro(f)], "φ_{A→A}(f) = f", ro(&g), ro(f))
            });
        }
    }
    report.push("phi-identity", identity);

    let mut all_subsets = true;
    let mut meet = Tally::default();
    let mut join = Tally::default();
    let mut empty_join = Tally::default();
    for (ai, &a) in tag_sets.iter().enumerate() {
        let elems = &lattices[ai];
        let collections = Collections::new(elems.len(), cfg);
        all_subsets &= collections.is_all();
        let (m, j) = collections.run(|idx, meet_t, join_t| {
            if idx.is_empty() {
                return;
            }
            let picked: Vec<OptionsElement> = idx.iter().map(|&i| elems[i].clone()).collect();
            let inner_meet = options_meet(space, a, &picked).expect("same domain");
            let inner_join = options_join(space, a, &picked).expect("same domain");
            for &b in &tag_sets {
                let moved: Vec<OptionsElement> = picked.iter().map(|f| phi_fn(space, a, b, f)).collect();
                let inputs = || {
                    let mut v = vec![format!("A={}", rt(a)), format!("B={}", rt(b))];
                    v.extend(picked.iter().map(ro));
                    v
                };
                let lhs = options_meet(space, b, &moved);
                let rhs = phi_fn(space, a, b, &inner_meet);
                meet_t.check(lhs.as_ref() == Ok(&rhs), || {
                    Witness::new(
                        inputs(),
                        "⨅{φ_{A→B}(f) | f ∈ O′} = φ_{A→B}(⨅O′)",
                        render_result(&lhs, space),
                        ro(&rhs),
                    )
                });
                let lhs = options_join(space, b, &moved);
                let rhs = phi_fn(space, a, b, &inner_join);
                join_t.check(lhs.as_ref() == Ok(&rhs), || {
                    Witness::new(
                        inputs(),
                        "⨆{φ_{A→B}(f) | f ∈ O′} = φ_{A→B}(⨆O′)",
                        render_result(&lhs, space),
                        ro(&rhs),
                    )
                });
            }
        });
        meet = meet.merge(m);
        join = join.merge(j);

        // The empty collection: meets are a law, joins only an observation.
        for &b in &tag_sets {
            let top_b = options_meet(space, b, &[]).expect("empty collection");
            let moved_top = phi_fn(space, a, b, &options_meet(space, a, &[]).expect("empty collection"));
            meet.check(moved_top == top_b, || {
                Witness::new(
                    vec![format!("A={}", rt(a)), format!("B={}", rt(b))],
                    "⨅∅ = φ_{A→B}(⨅∅)",
                    ro(&top_b),
                    ro(&moved_top),
                )
            });
            let bottom_b = options_join(space, b, &[]).expect("empty collection");
            let moved_bottom = phi_fn(space, a, b, &options_join(space, a, &[]).expect("empty collection"));
            empty_join.check(moved_bottom == bottom_b, || Witness::new(vec![], "", "", ""));
        }
    }
    report.push("phi-preserves-meet", meet);
    report.push("phi-preserves-join", join);
    report.observations.insert("all-subsets-enumerated".into(), all_subsets);
    let empty_join = empty_join.into_result("phi-preserves-empty-join");
    report.observations.insert(empty_join.law.clone(), empty_join.passed());

    // A ⊑ B ⊑ C in the tag lattice means A ⊇ B ⊇ C as sets.
    let mut chains = Vec::new();
    for &a in &tag_sets {
        for b in a.subsets() {
            for c in b.subsets() {
                chains.push((a, b, c));
            }
        }
    }
    let index_of = |t: TagSet| tag_sets.iter().position(|&x| x == t).expect("enumerated");
    let corollary = par_tally(chains.len(), |k, tally| {
        let (a, b, c) = chains[k];
        for f in &lattices[index_of(a)] {
            let f_at_c = phi_fn(space, a, c, f);
            for g in &lattices[index_of(c)] {
                if !options_leq(&f_at_c, g).unwrap_or(false) {
                    tally.vacuous();
                    continue;
                }
                let lhs = phi_fn(space, a, b, f);
                let rhs = phi_fn(space, c, b, g);
                tally.check(options_leq(&lhs, &rhs).unwrap_or(false), || {
                    Witness::new(
                        vec![
                            format!("A={}", rt(a)),
                            format!("B={}", rt(b)),
                            format!("C={}", rt(c)),
                            ro(f),
                            ro(g),
                        ],
                        "φ_{A→C}(f) ⊑ g ⟹ φ_{A→B}(f) ⊑ φ_{C→B}(g)",
                        ro(&lhs),
                        ro(&rhs),
                    )
                });
            }
        }
    });
    report.push("order-corollary", corollary);
    Ok(report)
}

fn render_result(r: &Result<OptionsElement>, space: &TagOptionsSpace) -> String {
    match r {
        Ok(e) => e.render(space),
        Err(e) => format!("<{e}>"),
    }
}

/// Index collections of an options lattice with `n` elements.
enum Collections {
    /// Every subset, as bitmasks over element indices.
    All { n: usize },
    /// Non-empty collections of size `≤ cap`, plus the full one.
    Bounded { n: usize, cap: usize },
}

impl Collections {
    fn new(n: usize, cfg: &HomomorphismConfig) -> Self {
        let fits = n < 64 && (1u128 << n) <= cfg.subset_budget;
        if fits {
            Collections::All { n }
        } else {
            Collections::Bounded { n, cap: cfg.subset_cap }
        }
    }

    fn is_all(&self) -> bool {
        matches!(self, Collections::All { .. })
    }

    fn run<F>(&self, f: F) -> (Tally, Tally)
    where
        F: Fn(&[usize], &mut Tally, &mut Tally) + Sync,
    {
        let parts: Vec<(Tally, Tally)> = match *self {
            Collections::All { n } => (0..1u64 << n)
                .into_par_iter()
                .map(|mask| {
                    let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    let (mut a, mut b) = (Tally::default(), Tally::default());
                    f(&idx, &mut a, &mut b);
                    (a, b)
                })
                .collect(),
            Collections::Bounded { n, cap } => {
                let mut parts = Vec::with_capacity(n + 1);
                parts.extend(
                    (0..n)
                        .into_par_iter()
                        .map(|first| {
                            let (mut a, mut b) = (Tally::default(), Tally::default());
                            subsets_starting_at(first, n, cap, &mut |s| f(s, &mut a, &mut b));
                            (a, b)
                        })
                        .collect::<Vec<_>>(),
                );
                let all: Vec<usize> = (0..n).collect();
                let (mut a, mut b) = (Tally::default(), Tally::default());
                f(&all, &mut a, &mut b);
                parts.push((a, b));
                parts
            }
        };
        let (a, b): (Vec<Tally>, Vec<Tally>) = parts.into_iter().unzip();
        (Tally::merge_all(a), Tally::merge_all(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tag_options::OptionSet;

    fn mutated(space: &TagOptionsSpace, a: TagSet, b: TagSet, f: &OptionsElement) -> OptionsElement {
        OptionsElement::from_fn(space, b, |t| {
            f.get(t).filter(|_| a.contains(t)).unwrap_or(OptionSet::EMPTY)
        })
    }

    #[test]
    fn two_tags_two_options_pass() {
        let s = TagOptionsSpace::from_names(["t1", "t2"], ["x", "y"]).unwrap();
        let r = check_homomorphism(&s, &HomomorphismConfig::default()).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert!(r.observations["all-subsets-enumerated"]);
    }

    #[test]
    fn empty_join_is_not_preserved_when_target_has_new_tags() {
        let s = TagOptionsSpace::from_names(["t1", "t2"], ["x", "y"]).unwrap();
        let r = check_homomorphism(&s, &HomomorphismConfig::default()).unwrap();
        assert!(!r.observations["phi-preserves-empty-join"]);
        let a = TagSet::EMPTY;
        let b = s.tags.set(&["t1"]).unwrap();
        let bottom_a = options_join(&s, a, &[]).unwrap();
        assert_eq!(phi(&s, a, b, &bottom_a), OptionsElement::top(&s, b));
        assert_ne!(phi(&s, a, b, &bottom_a), options_join(&s, b, &[]).unwrap());
        // Shrinking the tag set never pads, so there it holds.
        assert_eq!(
            phi(&s, b, a, &options_join(&s, b, &[]).unwrap()),
            options_join(&s, a, &[]).unwrap()
        );
    }

    #[test]
    fn mutated_phi_fails_meet_preservation() {
        let s = TagOptionsSpace::from_names(["t1", "t2"], ["x", "y"]).unwrap();
        let r = check_homomorphism_with(&s, &HomomorphismConfig::default(), &mutated).unwrap();
        let law = r.law("phi-preserves-meet").unwrap();
        assert!(!law.passed());
        let w = law.witness.as_ref().unwrap();
        // A = ∅, B = {t1}, O′ = ∅: the empty meet is λt.O but the mutant gives λt.∅.
        assert_eq!(w.inputs, vec!["A=∅".to_string(), "B={t1}".to_string()]);
        assert_eq!(w.lhs, "{(t1,{x,y})}");
        assert_eq!(w.rhs, "{(t1,∅)}");
    }

    #[test]
    fn single_chain_reduces_to_monotonicity() {
        let s = TagOptionsSpace::from_names(["t1"], ["x", "y"]).unwrap();
        let r = check_homomorphism(&s, &HomomorphismConfig::default()).unwrap();
        assert!(r.law("order-corollary").unwrap().passed());
    }

    #[test]
    fn oversized_space_is_a_capacity_error() {
        let s = TagOptionsSpace::from_names(["a", "b", "c", "d"], ["x"]).unwrap();
        assert!(matches!(
            check_homomorphism(&s, &HomomorphismConfig::default()),
            Err(Error::Capacity { .. })
        ));
    }
}
