//! Two-terminal reliability by enumeration of working-edge subsets.
//!
//! Nodes never fail. A present pair `{a, b}` is an edge that works with the
//! reliability of its line component `a-b`.

use num_traits::{One, Zero};

use super::properties::{is_inconsistent, PropertiesElement};
use super::universe::{Presence, SystemInstance, Universe};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tag_options::{OptionSet, TagSet};

pub const MAX_EDGES: usize = 20;
pub const DEFAULT_BOUND_BUDGET: u128 = 1 << 16;

/// Largest `d^|E|` accepted, keeping every intermediate below `i128::MAX`.
const MAX_DENOMINATOR_POWER: u128 = 1 << 120;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// `(endpoint, endpoint, line component)` for each present pair of `s`.
fn edges(u: &Universe, s: &SystemInstance) -> Result<Vec<(usize, usize, usize)>> {
    s.present()
        .iter()
        .map(|k| {
            let (a, b) = u.pairs()[k];
            let line = u
                .line_component(k)
                .ok_or_else(|| Error::Validation(format!("present pair `{}` has no line component", u.pair_name(k))))?;
            Ok((a, b, line))
        })
        .collect()
}

/// Probability that `source` and `sink` are joined by working edges.
pub fn two_terminal_reliability(u: &Universe, s: &SystemInstance, source: &str, sink: &str) -> Result<Rational> {
    let (src, dst) = (u.component_index(source)?, u.component_index(sink)?);
    if src == dst {
        return Ok(Rational::one());
    }
    let es = edges(u, s)?;
    if es.len() > MAX_EDGES {
        return Err(Error::capacity(
            "edges for two-terminal reliability",
            es.len() as u128,
            MAX_EDGES as u128,
        ));
    }
    let d = u.grid().denominator() as u128;
    let power = d.checked_pow(es.len() as u32).unwrap_or(u128::MAX);
    if power > MAX_DENOMINATOR_POWER {
        return Err(Error::capacity(
            "exact reliability denominator",
            power,
            MAX_DENOMINATOR_POWER,
        ));
    }
    let up: Vec<Rational> = es.iter().map(|&(_, _, l)| s.reliability_of(l)).collect();
    let down: Vec<Rational> = up.iter().map(|r| Rational::one() - r).collect();
    let n = u.components().len();
    let mut total = Rational::zero();
    let mut parent = vec![0usize; n];
    for mask in 0u32..(1u32 << es.len()) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut weight = Rational::one();
        for (i, &(a, b, _)) in es.iter().enumerate() {
            if mask & (1 << i) != 0 {
                weight *= up[i];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            } else {
                weight *= down[i];
            }
            if weight.is_zero() {
                break;
            }
        }
        if !weight.is_zero() && find(&mut parent, src) == find(&mut parent, dst) {
            total += weight;
        }
    }
    Ok(total)
}

/// Hull of two-terminal reliability over the systems described by `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReliabilityBound {
    pub min: Rational,
    pub max: Rational,
    /// First system in enumeration order attaining `min`.
    pub argmin: SystemInstance,
    pub argmax: SystemInstance,
    /// Systems evaluated.
    pub enumerated: u128,
}

/// `[min, max]` of [`two_terminal_reliability`] over every system that
/// satisfies `p`, by exhaustive enumeration.
///
/// Only line components of pairs that may be present affect the result, so
/// other components are fixed at their least allowed value and not
/// enumerated; the hull is the same as over all satisfying systems.
pub fn reliability_bound(
    u: &Universe,
    p: &PropertiesElement,
    source: &str,
    sink: &str,
    budget: u128,
) -> Result<ReliabilityBound> {
    u.component_index(source)?;
    u.component_index(sink)?;
    PropertiesElement::new(u, p.rel.clone(), p.topo.clone())?;
    if is_inconsistent(p) {
        return Err(Error::Inconsistent);
    }
    let grid_all = OptionSet::full(u.grid().len());
    let allowed_values = |c: usize| p.rel.get(c).unwrap_or(grid_all);
    let presence_all = OptionSet::full(2);
    let allowed_presence: Vec<OptionSet> = (0..u.pairs().len())
        .map(|k| p.topo.get(k).unwrap_or(presence_all))
        .collect();

    let mut relevant: Vec<usize> = Vec::new();
    for (k, allowed) in allowed_presence.iter().enumerate() {
        if allowed.contains(Presence::Present.index()) {
            let line = u.line_component(k).ok_or_else(|| {
                Error::Validation(format!(
                    "pair `{}` may be present but has no line component",
                    u.pair_name(k)
                ))
            })?;
            relevant.push(line);
        }
    }

    // Mixed-radix digits: pair presences, then relevant line values.
    let mut radices: Vec<Vec<usize>> = allowed_presence.iter().map(|s| s.iter().collect()).collect();
    radices.extend(relevant.iter().map(|&c| allowed_values(c).iter().collect::<Vec<_>>()));
    let count = radices
        .iter()
        .try_fold(1u128, |acc, r| acc.checked_mul(r.len() as u128))
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded { needed: count, budget });
    }

    let base: Vec<Rational> = (0..u.components().len())
        .map(|c| u.grid().value(allowed_values(c).first().expect("consistent")))
        .collect();
    let npairs = u.pairs().len();
    let mut digits = vec![0usize; radices.len()];
    let mut best: Option<(Rational, SystemInstance, Rational, SystemInstance)> = None;
    let mut enumerated = 0u128;
    loop {
        let mut values = base.clone();
        for (i, &c) in relevant.iter().enumerate() {
            values[c] = u.grid().value(radices[npairs + i][digits[npairs + i]]);
        }
        let present: TagSet = (0..npairs)
            .filter(|&k| radices[k][digits[k]] == Presence::Present.index())
            .collect();
        let s = u.system(values, present)?;
        let r = two_terminal_reliability(u, &s, source, sink)?;
        enumerated += 1;
        best = Some(match best {
            None => (r, s.clone(), r, s),
            Some((lo, lo_s, hi, hi_s)) => {
                let (lo, lo_s) = if r < lo { (r, s.clone()) } else { (lo, lo_s) };
                let (hi, hi_s) = if r > hi { (r, s) } else { (hi, hi_s) };
                (lo, lo_s, hi, hi_s)
            }
        });
        // Odometer, last digit fastest.
        let mut pos = radices.len();
        loop {
            if pos == 0 {
                let (min, argmin, max, argmax) = best.expect("at least one system");
                return Ok(ReliabilityBound {
                    min,
                    max,
                    argmin,
                    argmax,
                    enumerated,
                });
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < radices[pos].len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}
