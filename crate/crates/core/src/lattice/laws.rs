//! Exhaustive (or sampled) verification of the complete-lattice obligations.

use std::collections::HashMap;

use super::enumerate::{par_tally, sample_subsets, sample_tuples, subsets_starting_at};
use super::{CheckConfig, FiniteLattice};
use crate::error::{Error, Result};
use crate::report::{LawReport, Tally, Witness};

/// Element tables shared by all laws: the carrier, its order matrix, and
/// binary meet/join tables by index (`None` when a result left the carrier).
struct Tables<'a, L: FiniteLattice> {
    lattice: &'a L,
    elems: Vec<L::Elem>,
    index: HashMap<L::Elem, usize>,
    leq: Vec<bool>,
    meet: Vec<Option<usize>>,
    join: Vec<Option<usize>>,
}

impl<'a, L: FiniteLattice> Tables<'a, L> {
    fn build(lattice: &'a L) -> Self {
        let elems = lattice.elements();
        let n = elems.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elems.iter().enumerate() {
            index.entry(e.clone()).or_insert(i);
        }
        let leq = (0..n * n).map(|k| lattice.leq(&elems[k / n], &elems[k % n])).collect();
        let mut t = Tables {
            lattice,
            elems,
            index,
            leq,
            meet: Vec::new(),
            join: Vec::new(),
        };
        let (meet, join) = rayon::join(
            || t.table(|a, b| lattice.meet(a, b)),
            || t.table(|a, b| lattice.join(a, b)),
        );
        t.meet = meet;
        t.join = join;
        t
    }

    fn table(&self, op: impl Fn(&L::Elem, &L::Elem) -> L::Elem + Sync) -> Vec<Option<usize>> {
        use rayon::prelude::*;
        let n = self.elems.len();
        (0..n * n)
            .into_par_iter()
            .map(|k| self.index.get(&op(&self.elems[k / n], &self.elems[k % n])).copied())
            .collect()
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n() + b]
    }

    fn m(&self, a: usize, b: usize) -> Option<usize> {
        self.meet[a * self.n() + b]
    }

    fn j(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a * self.n() + b]
    }

    fn r(&self, i: usize) -> String {
        self.lattice.render(&self.elems[i])
    }

    fn ro(&self, i: Option<usize>) -> String {
        i.map_or_else(|| "<not an element>".to_string(), |i| self.r(i))
    }

    fn rs(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.r(i)).collect()
    }

    fn re(&self, e: &L::Elem) -> String {
        self.lattice.render(e)
    }
}

/// Checks every complete-lattice law on `lattice`, returning one entry per law.
///
/// Binary laws are always exhaustive. Triple laws and the meet/join bound
/// laws over collections of up to `cfg.subset_cap` elements are exhaustive
/// unless `cfg.sampling` is set. The empty and full collections are always
/// checked.
pub fn check_lattice_laws<L: FiniteLattice>(lattice: &L, cfg: &CheckConfig) -> Result<LawReport> {
    let card = lattice.cardinality();
    if card > cfg.max_elements as u128 {
        return Err(Error::capacity(
            format!("law check of {}", lattice.name()),
            card,
            cfg.max_elements as u128,
        ));
    }
    let t = Tables::build(lattice);
    let n = t.n();
    let mut report = LawReport::new(lattice.name());
    report.exhaustive = cfg.sampling.is_none();

    // Carrier sanity.
    let mut enumeration = Tally::default();
    enumeration.check(n as u128 == card, || {
        Witness::new(vec![], "|elements| = cardinality", n.to_string(), card.to_string())
    });
    for (i, e) in t.elems.iter().enumerate() {
        let first = t.index[e];
        enumeration.check(first == i, || {
            Witness::new(
                vec![t.r(first), t.r(i)],
                "elements are distinct",
                first.to_string(),
                i.to_string(),
            )
        });
    }
    report.push("enumeration", enumeration);

    let top = lattice.top();
    let bottom = lattice.bottom();
    let top_i = t.index.get(&top).copied();
    let bottom_i = t.index.get(&bottom).copied();

    let closure = par_tally(n, |a, tally| {
        for b in 0..n {
            tally.check(t.m(a, b).is_some(), || {
                let e = lattice.meet(&t.elems[a], &t.elems[b]);
                Witness::new(t.rs(&[a, b]), "a ⊓ b ∈ elements", t.re(&e), "<not an element>")
            });
            tally.check(t.j(a, b).is_some(), || {
                let e = lattice.join(&t.elems[a], &t.elems[b]);
                Witness::new(t.rs(&[a, b]), "a ⊔ b ∈ elements", t.re(&e), "<not an element>")
            });
        }
    });
    let mut closure = closure;
    closure.check(top_i.is_some(), || {
        Witness::new(vec![], "⊤ ∈ elements", t.re(&top), "<not an element>")
    });
    closure.check(bottom_i.is_some(), || {
        Witness::new(vec![], "⊥ ∈ elements", t.re(&bottom), "<not an element>")
    });
    report.push("closure", closure);

    // Partial order.
    let mut refl = Tally::default();
    for a in 0..n {
        refl.check(t.le(a, a), || Witness::new(t.rs(&[a]), "a ⊑ a", t.r(a), t.r(a)));
    }
    report.push("reflexivity", refl);

    report.push(
        "antisymmetry",
        par_tally(n, |a, tally| {
            for b in 0..n {
                tally.check(!(t.le(a, b) && t.le(b, a)) || a == b, || {
                    Witness::new(t.rs(&[a, b]), "a ⊑ b ∧ b ⊑ a ⟹ a = b", t.r(a), t.r(b))
                });
            }
        }),
    );

    let triples = triple_source(n, cfg);
    report.push(
        "transitivity",
        triples.run(|a, b, c, tally| {
            if t.le(a, b) && t.le(b, c) {
                tally.check(t.le(a, c), || {
                    Witness::new(t.rs(&[a, b, c]), "a ⊑ b ∧ b ⊑ c ⟹ a ⊑ c", t.r(a), t.r(c))
                });
            } else {
                tally.vacuous();
            }
        }),
    );

    // Bounds.
    report.push(
        "top-greatest",
        par_tally(n, |a, tally| {
            tally.check(top_i.is_some_and(|ti| t.le(a, ti)), || {
                Witness::new(t.rs(&[a]), "a ⊑ ⊤", t.r(a), t.re(&top))
            });
        }),
    );
    report.push(
        "bottom-least",
        par_tally(n, |a, tally| {
            tally.check(bottom_i.is_some_and(|bi| t.le(bi, a)), || {
                Witness::new(t.rs(&[a]), "⊥ ⊑ a", t.re(&bottom), t.r(a))
            });
        }),
    );

    let mut empty = Tally::default();
    let empty_meet = lattice.meet_all(&[]);
    empty.check(empty_meet == top, || {
        Witness::new(vec![], "⨅∅ = ⊤", t.re(&empty_meet), t.re(&top))
    });
    report.push("empty-meet-is-top", empty);

    let mut empty = Tally::default();
    let empty_join = lattice.join_all(&[]);
    empty.check(empty_join == bottom, || {
        Witness::new(vec![], "⨆∅ = ⊥", t.re(&empty_join), t.re(&bottom))
    });
    report.push("empty-join-is-bottom", empty);

    let mut full = Tally::default();
    let full_meet = lattice.meet_all(&t.elems);
    full.check(full_meet == bottom, || {
        Witness::new(vec!["<all elements>".into()], "⨅L = ⊥", t.re(&full_meet), t.re(&bottom))
    });
    report.push("full-meet-is-bottom", full);

    let mut full = Tally::default();
    let full_join = lattice.join_all(&t.elems);
    full.check(full_join == top, || {
        Witness::new(vec!["<all elements>".into()], "⨆L = ⊤", t.re(&full_join), t.re(&top))
    });
    report.push("full-join-is-top", full);

    // Collection bounds: ⨅S is a lower bound of S and above every other one.
    let subsets = subset_source(n, cfg);
    let (meet_lower, meet_greatest) = subsets.run(|s, lower, greatest| {
        let picked: Vec<L::Elem> = s.iter().map(|&i| t.elems[i].clone()).collect();
        let m = lattice.meet_all(&picked);
        check_bound(&t, s, &m, true, lower, greatest);
    });
    report.push("meet-lower-bound", meet_lower);
    report.push("meet-greatest", meet_greatest);

    let (join_upper, join_least) = subsets.run(|s, upper, least| {
        let picked: Vec<L::Elem> = s.iter().map(|&i| t.elems[i].clone()).collect();
        let j = lattice.join_all(&picked);
        check_bound(&t, s, &j, false, upper, least);
    });
    report.push("join-upper-bound", join_upper);
    report.push("join-least", join_least);

    // Algebraic laws of the binary operations.
    report.push(
        "order-agrees-with-meet",
        par_tally(n, |a, tally| {
            for b in 0..n {
                tally.check(t.le(a, b) == (t.m(a, b) == Some(a)), || {
                    Witness::new(
                        t.rs(&[a, b]),
                        "a ⊑ b ⟺ a ⊓ b = a",
                        t.le(a, b).to_string(),
                        t.ro(t.m(a, b)),
                    )
                });
            }
        }),
    );
    report.push(
        "order-agrees-with-join",
        par_tally(n, |a, tally| {
            for b in 0..n {
                tally.check(t.le(a, b) == (t.j(a, b) == Some(b)), || {
                    Witness::new(
                        t.rs(&[a, b]),
                        "a ⊑ b ⟺ a ⊔ b = b",
                        t.le(a, b).to_string(),
                        t.ro(t.j(a, b)),
                    )
                });
            }
        }),
    );
    report.push(
        "commutativity",
        par_tally(n, |a, tally| {
            for b in 0..n {
                tally.check(t.m(a, b) == t.m(b, a), || {
                    Witness::new(t.rs(&[a, b]), "a ⊓ b = b ⊓ a", t.ro(t.m(a, b)), t.ro(t.m(b, a)))
                });
                tally.check(t.j(a, b) == t.j(b, a), || {
                    Witness::new(t.rs(&[a, b]), "a ⊔ b = b ⊔ a", t.ro(t.j(a, b)), t.ro(t.j(b, a)))
                });
            }
        }),
    );
    report.push(
        "associativity",
        triples.run(|a, b, c, tally| {
            let l = t.m(a, b).and_then(|ab| t.m(ab, c));
            let r = t.m(b, c).and_then(|bc| t.m(a, bc));
            tally.check(l.is_some() && l == r, || {
                Witness::new(t.rs(&[a, b, c]), "(a ⊓ b) ⊓ c = a ⊓ (b ⊓ c)", t.ro(l), t.ro(r))
            });
            let l = t.j(a, b).and_then(|ab| t.j(ab, c));
            let r = t.j(b, c).and_then(|bc| t.j(a, bc));
            tally.check(l.is_some() && l == r, || {
                Witness::new(t.rs(&[a, b, c]), "(a ⊔ b) ⊔ c = a ⊔ (b ⊔ c)", t.ro(l), t.ro(r))
            });
        }),
    );
    let mut idem = Tally::default();
    for a in 0..n {
        idem.check(t.m(a, a) == Some(a), || {
            Witness::new(t.rs(&[a]), "a ⊓ a = a", t.ro(t.m(a, a)), t.r(a))
        });
        idem.check(t.j(a, a) == Some(a), || {
            Witness::new(t.rs(&[a]), "a ⊔ a = a", t.ro(t.j(a, a)), t.r(a))
        });
    }
    report.push("idempotence", idem);
    report.push(
        "absorption",
        par_tally(n, |a, tally| {
            for b in 0..n {
                let l = t.j(a, b).and_then(|ab| t.m(a, ab));
                tally.check(l == Some(a), || {
                    Witness::new(t.rs(&[a, b]), "a ⊓ (a ⊔ b) = a", t.ro(l), t.r(a))
                });
                let l = t.m(a, b).and_then(|ab| t.j(a, ab));
                tally.check(l == Some(a), || {
                    Witness::new(t.rs(&[a, b]), "a ⊔ (a ⊓ b) = a", t.ro(l), t.r(a))
                });
            }
        }),
    );

    Ok(report)
}

/// `bound` is ⨅S (`is_meet`) or ⨆S. Checks it bounds S and dominates every
/// other bound of S.
fn check_bound<L: FiniteLattice>(
    t: &Tables<'_, L>,
    s: &[usize],
    bound: &L::Elem,
    is_meet: bool,
    is_bound: &mut Tally,
    extremal: &mut Tally,
) {
    let (op, rel) = if is_meet { ("⨅", "⊑") } else { ("⨆", "⊒") };
    let Some(bi) = t.index.get(bound).copied() else {
        is_bound.check(false, || {
            Witness::new(t.rs(s), format!("{op}S ∈ elements"), t.re(bound), "<not an element>")
        });
        return;
    };
    // below(x, y): x is on the "inside" of y for this direction.
    let below = |x: usize, y: usize| if is_meet { t.le(x, y) } else { t.le(y, x) };
    let bad = s.iter().copied().find(|&x| !below(bi, x));
    is_bound.check(bad.is_none(), || {
        let x = bad.expect("violation");
        Witness::new(t.rs(s), format!("{op}S {rel} x for x ∈ S"), t.r(bi), t.r(x))
    });
    let rival = (0..t.n()).find(|&g| s.iter().all(|&x| below(g, x)) && !below(g, bi));
    extremal.check(rival.is_none(), || {
        let g = rival.expect("violation");
        Witness::new(
            t.rs(s),
            format!("every bound g of S satisfies g {rel} {op}S"),
            t.r(g),
            t.r(bi),
        )
    });
}

pub(crate) enum TripleSource {
    Exhaustive(usize),
    Sampled(Vec<Vec<usize>>),
}

pub(crate) fn triple_source(n: usize, cfg: &CheckConfig) -> TripleSource {
    match cfg.sampling {
        Some(s) if n > 0 => TripleSource::Sampled(sample_tuples(n, 3, s.samples, s.seed)),
        _ => TripleSource::Exhaustive(n),
    }
}

impl TripleSource {
    pub(crate) fn run<F>(&self, f: F) -> Tally
    where
        F: Fn(usize, usize, usize, &mut Tally) + Sync,
    {
        match self {
            TripleSource::Exhaustive(n) => {
                let n = *n;
                par_tally(n, |a, tally| {
                    for b in 0..n {
                        for c in 0..n {
                            f(a, b, c, tally);
                        }
                    }
                })
            }
            TripleSource::Sampled(samples) => par_tally(samples.len(), |i, tally| {
                let s = &samples[i];
                f(s[0], s[1], s[2], tally);
            }),
        }
    }
}

pub(crate) enum SubsetSource {
    Exhaustive { n: usize, cap: usize },
    Sampled { all: Vec<Vec<usize>> },
}

/// Non-empty collections to check: all of size `≤ cap` (or a sample), plus
/// the full carrier.
pub(crate) fn subset_source(n: usize, cfg: &CheckConfig) -> SubsetSource {
    match cfg.sampling {
        Some(s) if n > 0 => {
            let mut all = sample_subsets(n, cfg.subset_cap, s.samples, s.seed ^ 0x5u64);
            all.push((0..n).collect());
            SubsetSource::Sampled { all }
        }
        _ => SubsetSource::Exhaustive { n, cap: cfg.subset_cap },
    }
}

impl SubsetSource {
    /// Runs `f` on every collection with two tallies and returns both.
    pub(crate) fn run<F>(&self, f: F) -> (Tally, Tally)
    where
        F: Fn(&[usize], &mut Tally, &mut Tally) + Sync,
    {
        use rayon::prelude::*;
        let parts: Vec<(Tally, Tally)> = match self {
            SubsetSource::Exhaustive { n, cap } => {
                let (n, cap) = (*n, *cap);
                let mut parts: Vec<(Tally, Tally)> = (0..n)
                    .into_par_iter()
                    .map(|first| {
                        let (mut a, mut b) = (Tally::default(), Tally::default());
                        subsets_starting_at(first, n, cap, &mut |s| f(s, &mut a, &mut b));
                        (a, b)
                    })
                    .collect();
                if n > cap {
                    let all: Vec<usize> = (0..n).collect();
                    let (mut a, mut b) = (Tally::default(), Tally::default());
                    f(&all, &mut a, &mut b);
                    parts.push((a, b));
                }
                parts
            }
            SubsetSource::Sampled { all } => all
                .par_iter()
                .map(|s| {
                    let (mut a, mut b) = (Tally::default(), Tally::default());
                    f(s, &mut a, &mut b);
                    (a, b)
                })
                .collect(),
        };
        let (a, b): (Vec<Tally>, Vec<Tally>) = parts.into_iter().unzip();
        (Tally::merge_all(a), Tally::merge_all(b))
    }
}
