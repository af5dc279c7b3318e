use std::fmt::{self, Debug};
use std::sync::Arc;

use super::connection::{check_galois, GaloisConnection};
use crate::error::{Error, Result};
use crate::lattice::enumerate::{par_tally, sample_pairs, sample_subsets, subsets_starting_at};
use crate::lattice::{CheckConfig, FiniteLattice};
use crate::report::{LawReport, Tally, Witness};

type Predicate<S, E> = Arc<dyn Fn(&S, &E) -> bool + Send + Sync>;

/// `s ⊨ l` over a finite set of systems and a finite lattice.
pub struct CorrectnessRelation<S, L: FiniteLattice> {
    name: String,
    systems: Vec<S>,
    lattice: L,
    holds: Predicate<S, L::Elem>,
}

impl<S: Clone, L: FiniteLattice + Clone> Clone for CorrectnessRelation<S, L> {
    fn clone(&self) -> Self {
        CorrectnessRelation {
            name: self.name.clone(),
            systems: self.systems.clone(),
            lattice: self.lattice.clone(),
            holds: Arc::clone(&self.holds),
        }
    }
}

impl<S, L: FiniteLattice> fmt::Debug for CorrectnessRelation<S, L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorrectnessRelation")
            .field("name", &self.name)
            .field("systems", &self.systems.len())
            .field("lattice", &self.lattice.name())
            .finish()
    }
}

impl<S, L> CorrectnessRelation<S, L>
where
    S: Debug + Send + Sync,
    L: FiniteLattice,
{
    pub fn new(
        name: impl Into<String>,
        systems: Vec<S>,
        lattice: L,
        holds: impl Fn(&S, &L::Elem) -> bool + Send + Sync + 'static,
    ) -> Self {
        CorrectnessRelation {
            name: name.into(),
            systems,
            lattice,
            holds: Arc::new(holds),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn systems(&self) -> &[S] {
        &self.systems
    }

    pub fn lattice(&self) -> &L {
        &self.lattice
    }

    pub fn holds(&self, s: &S, l: &L::Elem) -> bool {
        (self.holds)(s, l)
    }
}

/// Checks upward closure (`s ⊨ l₁ ∧ l₁ ⊑ l₂ ⟹ s ⊨ l₂`) and meet closure
/// (`s ⊨ l` for all `l ∈ L′` implies `s ⊨ ⨅L′`).
///
/// Meet closure is checked, per system, on the empty collection, every
/// collection of up to `cfg.subset_cap` satisfied elements and the set of
/// all satisfied elements. Sampling replaces the pair and collection sweeps
/// with random draws.
pub fn check_correctness_relation<S, L>(r: &CorrectnessRelation<S, L>, cfg: &CheckConfig) -> Result<LawReport>
where
    S: Debug + Send + Sync,
    L: FiniteLattice,
{
    let l = &r.lattice;
    let card = l.cardinality();
    if card > cfg.max_elements as u128 {
        return Err(Error::capacity(
            format!("correctness check of {}", r.name),
            card,
            cfg.max_elements as u128,
        ));
    }
    let elems = l.elements();
    let n = elems.len();
    let holds: Vec<Vec<bool>> = {
        use rayon::prelude::*;
        r.systems
            .par_iter()
            .map(|s| elems.iter().map(|e| r.holds(s, e)).collect())
            .collect()
    };
    let rs = |s: &S| format!("{s:?}");
    let re = |e: &L::Elem| l.render(e);

    let mut report = LawReport::new(r.name.clone());
    report.exhaustive = cfg.sampling.is_none();

    let upward_one = |si: usize, i: usize, j: usize, tally: &mut Tally| {
        if holds[si][i] && l.leq(&elems[i], &elems[j]) {
            tally.check(holds[si][j], || {
                Witness::new(
                    vec![rs(&r.systems[si]), re(&elems[i]), re(&elems[j])],
                    "s ⊨ l₁ ∧ l₁ ⊑ l₂ ⟹ s ⊨ l₂",
                    "s ⊨ l₁",
                    "s ⊭ l₂",
                )
            });
        } else {
            tally.vacuous();
        }
    };
    let upward = match cfg.sampling {
        None => Tally::merge_all(r.systems.iter().enumerate().map(|(si, _)| {
            par_tally(n, |i, tally| {
                for j in 0..n {
                    upward_one(si, i, j, tally);
                }
            })
        })),
        Some(smp) => Tally::merge_all((0..r.systems.len()).map(|si| {
            let picked = sample_pairs(n, n, smp.samples, smp.seed ^ si as u64);
            par_tally(picked.len(), |k, tally| upward_one(si, picked[k].0, picked[k].1, tally))
        })),
    };
    report.push("upward-closed", upward);

    let top = l.meet_all(&[]);
    let meet = Tally::merge_all(r.systems.iter().enumerate().map(|(si, s)| {
        let sat: Vec<usize> = (0..n).filter(|&i| holds[si][i]).collect();
        let check = |idx: &[usize], tally: &mut Tally| {
            let picked: Vec<L::Elem> = idx.iter().map(|&k| elems[sat[k]].clone()).collect();
            let m = l.meet_all(&picked);
            tally.check(r.holds(s, &m), || {
                let inputs = std::iter::once(rs(s)).chain(picked.iter().map(re)).collect();
                Witness::new(
                    inputs,
                    "∀l ∈ L′. s ⊨ l ⟹ s ⊨ ⨅L′",
                    "s ⊨ every l ∈ L′",
                    format!("s ⊭ {}", re(&m)),
                )
            });
        };
        let mut tally = Tally::default();
        tally.check(r.holds(s, &top), || {
            Witness::new(vec![rs(s)], "s ⊨ ⨅∅", "s ⊨ every l ∈ ∅", format!("s ⊭ {}", re(&top)))
        });
        let k = sat.len();
        let rest = match cfg.sampling {
            None => par_tally(k, |first, t| {
                subsets_starting_at(first, k, cfg.subset_cap, &mut |idx| check(idx, t))
            }),
            Some(smp) if k > 0 => {
                let picked = sample_subsets(k, cfg.subset_cap, smp.samples, smp.seed ^ (si as u64) << 8);
                par_tally(picked.len(), |i, t| check(&picked[i], t))
            }
            Some(_) => Tally::default(),
        };
        let mut tally = tally.merge(rest);
        if k > cfg.subset_cap {
            let all: Vec<usize> = (0..k).collect();
            check(&all, &mut tally);
        }
        tally
    }));
    report.push("meet-closed", meet);
    Ok(report)
}

/// The relation `s ⊨_M m ⟺ s ⊨_P γ(m)` induced on the abstract domain.
///
/// Both the connection and `base` are checked first; a failed law is an
/// error naming it.
pub fn induced_relation<S, P, M>(
    c: &GaloisConnection<P, M>,
    base: &CorrectnessRelation<S, P>,
    cfg: &CheckConfig,
) -> Result<CorrectnessRelation<S, M>>
where
    S: Clone + Debug + Send + Sync + 'static,
    P: FiniteLattice + Clone + 'static,
    M: FiniteLattice + Clone + 'static,
{
    for report in [check_galois(c, cfg)?, check_correctness_relation(base, cfg)?] {
        if let Some(bad) = report.failures().next() {
            return Err(Error::LawViolation {
                subject: report.subject.clone(),
                law: bad.law.clone(),
            });
        }
    }
    Ok(induced_relation_unchecked(c, base))
}

/// [`induced_relation`] without verifying its preconditions.
pub fn induced_relation_unchecked<S, P, M>(
    c: &GaloisConnection<P, M>,
    base: &CorrectnessRelation<S, P>,
) -> CorrectnessRelation<S, M>
where
    S: Clone + Debug + Send + Sync + 'static,
    P: FiniteLattice + Clone + 'static,
    M: FiniteLattice + Clone + 'static,
{
    let c = c.clone();
    let holds = Arc::clone(&base.holds);
    CorrectnessRelation::new(
        format!("{} induced by {}", base.name, c.name()),
        base.systems.clone(),
        c.abstract_domain().clone(),
        move |s, m| holds(s, &c.gamma(m)),
    )
}
