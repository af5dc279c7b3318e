use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::enumerate::{par_tally, sample_pairs};
use crate::lattice::laws::subset_source;
use crate::lattice::{CheckConfig, FiniteLattice};
use crate::report::{LawReport, Tally, Witness};

type Map<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;

/// An abstraction `α : ℙ → 𝕄` paired with a concretization `γ : 𝕄 → ℙ`.
///
/// The constructor trusts nothing; [`check_galois`] verifies the laws.
pub struct GaloisConnection<P: FiniteLattice, M: FiniteLattice> {
    name: String,
    concrete: P,
    abstract_domain: M,
    alpha: Map<P::Elem, M::Elem>,
    gamma: Map<M::Elem, P::Elem>,
}

impl<P: FiniteLattice + Clone, M: FiniteLattice + Clone> Clone for GaloisConnection<P, M> {
    fn clone(&self) -> Self {
        GaloisConnection {
            name: self.name.clone(),
            concrete: self.concrete.clone(),
            abstract_domain: self.abstract_domain.clone(),
            alpha: Arc::clone(&self.alpha),
            gamma: Arc::clone(&self.gamma),
        }
    }
}

impl<P: FiniteLattice, M: FiniteLattice> fmt::Debug for GaloisConnection<P, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisConnection")
            .field("name", &self.name)
            .field("concrete", &self.concrete.name())
            .field("abstract", &self.abstract_domain.name())
            .finish()
    }
}

impl<P: FiniteLattice, M: FiniteLattice> GaloisConnection<P, M> {
    pub fn new(
        name: impl Into<String>,
        concrete: P,
        abstract_domain: M,
        alpha: impl Fn(&P::Elem) -> M::Elem + Send + Sync + 'static,
        gamma: impl Fn(&M::Elem) -> P::Elem + Send + Sync + 'static,
    ) -> Self {
        GaloisConnection {
            name: name.into(),
            concrete,
            abstract_domain,
            alpha: Arc::new(alpha),
            gamma: Arc::new(gamma),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn concrete(&self) -> &P {
        &self.concrete
    }

    pub fn abstract_domain(&self) -> &M {
        &self.abstract_domain
    }

    pub fn alpha(&self, p: &P::Elem) -> M::Elem {
        (self.alpha)(p)
    }

    pub fn gamma(&self, m: &M::Elem) -> P::Elem {
        (self.gamma)(m)
    }
}

/// Identity connection on one lattice.
pub fn identity_connection<L: FiniteLattice + Clone>(lattice: L) -> GaloisConnection<L, L> {
    GaloisConnection::new(
        "identity",
        lattice.clone(),
        lattice,
        |x: &L::Elem| x.clone(),
        |x: &L::Elem| x.clone(),
    )
}

/// Verifies both maps are closed and monotone, `γ∘α ⊒ id`, `α∘γ ⊑ id`,
/// complete multiplicativity of `γ`, and the adjunction
/// `α(p) ⊑ m ⟺ p ⊑ γ(m)`.
///
/// Pairwise laws are exhaustive unless `cfg.sampling` is set. Multiplicativity
/// covers the empty collection, every collection of up to `cfg.subset_cap`
/// abstract elements (or a sample), and the full carrier. The observation
/// `alpha-gamma-identity` records whether `α∘γ = id` held everywhere.
pub fn check_galois<P: FiniteLattice, M: FiniteLattice>(
    c: &GaloisConnection<P, M>,
    cfg: &CheckConfig,
) -> Result<LawReport> {
    let (pl, ml) = (&c.concrete, &c.abstract_domain);
    for (what, card) in [("concrete", pl.cardinality()), ("abstract", ml.cardinality())] {
        if card > cfg.max_elements as u128 {
            return Err(Error::capacity(
                format!("Galois check of {} ({what} domain)", c.name),
                card,
                cfg.max_elements as u128,
            ));
        }
    }
    let ps = pl.elements();
    let ms = ml.elements();
    let (np, nm) = (ps.len(), ms.len());
    let (alpha_img, gamma_img): (Vec<M::Elem>, Vec<P::Elem>) = rayon::join(
        || {
            use rayon::prelude::*;
            ps.par_iter().map(|p| c.alpha(p)).collect()
        },
        || {
            use rayon::prelude::*;
            ms.par_iter().map(|m| c.gamma(m)).collect()
        },
    );
    let rp = |x: &P::Elem| pl.render(x);
    let rm = |x: &M::Elem| ml.render(x);

    let mut report = LawReport::new(c.name.clone());
    report.exhaustive = cfg.sampling.is_none();

    let p_set: HashSet<&P::Elem> = ps.iter().collect();
    let m_set: HashSet<&M::Elem> = ms.iter().collect();
    let mut closed = Tally::default();
    for (p, a) in ps.iter().zip(&alpha_img) {
        closed.check(m_set.contains(a), || {
            Witness::new(vec![rp(p)], "α(p) ∈ 𝕄", rm(a), "<not an element>")
        });
    }
    report.push("alpha-closed", closed);
    let mut closed = Tally::default();
    for (m, g) in ms.iter().zip(&gamma_img) {
        closed.check(p_set.contains(g), || {
            Witness::new(vec![rm(m)], "γ(m) ∈ ℙ", rp(g), "<not an element>")
        });
    }
    report.push("gamma-closed", closed);

    let pairs = |n1: usize, n2: usize, salt: u64, f: &(dyn Fn(usize, usize, &mut Tally) + Sync)| -> Tally {
        match cfg.sampling {
            None => par_tally(n1, |i, tally| {
                for j in 0..n2 {
                    f(i, j, tally);
                }
            }),
            Some(s) => {
                let picked = sample_pairs(n1, n2, s.samples, s.seed ^ salt);
                par_tally(picked.len(), |k, tally| f(picked[k].0, picked[k].1, tally))
            }
        }
    };

    report.push(
        "alpha-monotone",
        pairs(np, np, 1, &|i, j, tally| {
            if pl.leq(&ps[i], &ps[j]) {
                tally.check(ml.leq(&alpha_img[i], &alpha_img[j]), || {
                    Witness::new(
                        vec![rp(&ps[i]), rp(&ps[j])],
                        "p₁ ⊑ p₂ ⟹ α(p₁) ⊑ α(p₂)",
                        rm(&alpha_img[i]),
                        rm(&alpha_img[j]),
                    )
                });
            } else {
                tally.vacuous();
            }
        }),
    );
    report.push(
        "gamma-monotone",
        pairs(nm, nm, 2, &|i, j, tally| {
            if ml.leq(&ms[i], &ms[j]) {
                tally.check(pl.leq(&gamma_img[i], &gamma_img[j]), || {
                    Witness::new(
                        vec![rm(&ms[i]), rm(&ms[j])],
                        "m₁ ⊑ m₂ ⟹ γ(m₁) ⊑ γ(m₂)",
                        rp(&gamma_img[i]),
                        rp(&gamma_img[j]),
                    )
                });
            } else {
                tally.vacuous();
            }
        }),
    );

    report.push(
        "gamma-alpha-extensive",
        par_tally(np, |i, tally| {
            let back = c.gamma(&alpha_img[i]);
            tally.check(pl.leq(&ps[i], &back), || {
                Witness::new(vec![rp(&ps[i])], "p ⊑ γ(α(p))", rp(&ps[i]), rp(&back))
            });
        }),
    );

    let mut identity = true;
    let mut reductive = Tally::default();
    for (m, g) in ms.iter().zip(&gamma_img) {
        let back = c.alpha(g);
        identity &= &back == m;
        reductive.check(ml.leq(&back, m), || {
            Witness::new(vec![rm(m)], "α(γ(m)) ⊑ m", rm(&back), rm(m))
        });
    }
    report.push("alpha-gamma-reductive", reductive);
    report.observations.insert("alpha-gamma-identity".into(), identity);

    let mut multiplicative = Tally::default();
    let top = pl.meet_all(&[]);
    let gamma_top = c.gamma(&ml.meet_all(&[]));
    multiplicative.check(gamma_top == top, || {
        Witness::new(vec![], "γ(⨅∅) = ⨅∅", rp(&gamma_top), rp(&top))
    });
    let (rest, _) = subset_source(nm, cfg).run(|s, tally, _| {
        let picked: Vec<M::Elem> = s.iter().map(|&i| ms[i].clone()).collect();
        let images: Vec<P::Elem> = s.iter().map(|&i| gamma_img[i].clone()).collect();
        let lhs = c.gamma(&ml.meet_all(&picked));
        let rhs = pl.meet_all(&images);
        tally.check(lhs == rhs, || {
            Witness::new(
                picked.iter().map(rm).collect(),
                "γ(⨅M′) = ⨅{γ(m) | m ∈ M′}",
                rp(&lhs),
                rp(&rhs),
            )
        });
    });
    report.push("gamma-multiplicative", multiplicative.merge(rest));

    report.push(
        "adjunction",
        pairs(np, nm, 3, &|i, j, tally| {
            let left = ml.leq(&alpha_img[i], &ms[j]);
            let right = pl.leq(&ps[i], &gamma_img[j]);
            tally.check(left == right, || {
                Witness::new(
                    vec![rp(&ps[i]), rm(&ms[j])],
                    "α(p) ⊑ m ⟺ p ⊑ γ(m)",
                    left.to_string(),
                    right.to_string(),
                )
            });
        }),
    );

    Ok(report)
}

/// `τ = α₂ ∘ γ₁`: carries a model set of one formalism to another through
/// the shared concrete domain.
///
/// Only the domain match is checked here; soundness is claimed for
/// connections that pass [`check_galois`].
pub fn transform<P, M1, M2>(
    c1: &GaloisConnection<P, M1>,
    c2: &GaloisConnection<P, M2>,
    m1: &M1::Elem,
) -> Result<M2::Elem>
where
    P: FiniteLattice + PartialEq,
    M1: FiniteLattice,
    M2: FiniteLattice,
{
    if c1.concrete != c2.concrete {
        return Err(Error::DomainMismatch(format!(
            "`{}` and `{}` have different concrete domains",
            c1.name, c2.name
        )));
    }
    Ok(c2.alpha(&c1.gamma(m1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{powerset_lattice, PowersetLattice, SmallSet};
    use crate::report::Status;

    fn ab() -> PowersetLattice {
        powerset_lattice(["a", "b"]).unwrap()
    }

    #[test]
    fn identity_passes() {
        let r = check_galois(&identity_connection(ab()), &CheckConfig::default()).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert!(r.observations["alpha-gamma-identity"]);
    }

    #[test]
    fn constant_gamma_is_not_extensive() {
        let l = ab();
        let c = GaloisConnection::new("const", l.clone(), l, |p: &SmallSet| *p, |_: &SmallSet| SmallSet::EMPTY);
        let r = check_galois(&c, &CheckConfig::default()).unwrap();
        let eq1 = r.law("gamma-alpha-extensive").unwrap();
        assert_eq!(eq1.status, Status::Fail);
        let w = eq1.witness.as_ref().unwrap();
        assert_eq!(w.inputs, vec!["{a}"]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("{a}", "∅"));
        assert_eq!(r.law("gamma-multiplicative").unwrap().status, Status::Fail);
    }

    #[test]
    fn abstraction_to_a_coarser_lattice() {
        // ℙ = P({a,b}), 𝕄 = P({a}); α drops b, γ adds it back.
        let p = ab();
        let m = powerset_lattice(["a"]).unwrap();
        let c = GaloisConnection::new(
            "drop-b",
            p,
            m,
            |x: &SmallSet| x.intersection(SmallSet::singleton(0)),
            |y: &SmallSet| y.with(1),
        );
        let r = check_galois(&c, &CheckConfig::default()).unwrap();
        assert!(r.passed(), "{r:#?}");
        assert!(r.observations["alpha-gamma-identity"]);
    }

    #[test]
    fn transform_self_is_alpha_gamma() {
        let c = identity_connection(ab());
        let x = SmallSet::singleton(1);
        assert_eq!(transform(&c, &c, &x).unwrap(), x);
        let other = identity_connection(powerset_lattice(["a"]).unwrap());
        assert!(matches!(transform(&c, &other, &x), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn capacity_is_enforced() {
        let big = powerset_lattice((0..11).map(|i| format!("a{i}"))).unwrap();
        let c = identity_connection(big);
        assert!(matches!(
            check_galois(&c, &CheckConfig::default()),
            Err(Error::Capacity { .. })
        ));
    }
}
