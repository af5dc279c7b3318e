//! Index-tuple enumeration shared by the law checkers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::Tally;

/// Runs `f` once per outer index in parallel and merges the tallies in index
/// order, so the reported witness is the first in lexicographic order.
pub(crate) fn par_tally<F>(n: usize, f: F) -> Tally
where
    F: Fn(usize, &mut Tally) + Sync,
{
    let parts: Vec<Tally> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            f(i, &mut t);
            t
        })
        .collect();
    Tally::merge_all(parts)
}

/// Visits every strictly increasing index tuple of length `1..=cap` whose
/// first entry is `first`, depth first.
pub(crate) fn subsets_starting_at(first: usize, n: usize, cap: usize, f: &mut dyn FnMut(&[usize])) {
    if cap == 0 || first >= n {
        return;
    }
    let mut stack = vec![first];
    f(&stack);
    extend(&mut stack, n, cap, f);
}

fn extend(stack: &mut Vec<usize>, n: usize, cap: usize, f: &mut dyn FnMut(&[usize])) {
    if stack.len() >= cap {
        return;
    }
    let last = *stack.last().expect("non-empty");
    for next in last + 1..n {
        stack.push(next);
        f(stack);
        extend(stack, n, cap, f);
        stack.pop();
    }
}

#[cfg(test)]
/// Number of non-empty subsets of an `n`-set with at most `cap` elements.
pub(crate) fn bounded_subset_count(n: usize, cap: usize) -> u128 {
    let mut total = 0u128;
    let mut c = 1u128;
    for k in 1..=cap.min(n) {
        c = c * (n - k + 1) as u128 / k as u128;
        total += c;
    }
    total
}

pub(crate) fn sample_tuples(n: usize, arity: usize, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| (0..arity).map(|_| rng.random_range(0..n)).collect())
        .collect()
}

/// Random `(i, j)` with `i < n1`, `j < n2`, sorted so tallies over them stay
/// in enumeration order.
pub(crate) fn sample_pairs(n1: usize, n2: usize, samples: usize, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(usize, usize)> = (0..samples)
        .map(|_| (rng.random_range(0..n1), rng.random_range(0..n2)))
        .collect();
    out.sort_unstable();
    out
}

/// Random distinct-index subsets with sizes drawn from `1..=cap`.
pub(crate) fn sample_subsets(n: usize, cap: usize, samples: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = cap.min(n).max(1);
    (0..samples)
        .map(|_| {
            let k = rng.random_range(1..=cap);
            let mut picked: Vec<usize> = Vec::with_capacity(k);
            while picked.len() < k {
                let i = rng.random_range(0..n);
                if !picked.contains(&i) {
                    picked.push(i);
                }
            }
            picked.sort_unstable();
            picked
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration_counts_match_binomials() {
        for n in 0..7 {
            for cap in 0..5 {
                let mut count = 0u128;
                for first in 0..n {
                    subsets_starting_at(first, n, cap, &mut |s| {
                        assert!(s.windows(2).all(|w| w[0] < w[1]));
                        assert!(s.len() <= cap);
                        count += 1;
                    });
                }
                assert_eq!(count, bounded_subset_count(n, cap), "n={n} cap={cap}");
            }
        }
    }
}
