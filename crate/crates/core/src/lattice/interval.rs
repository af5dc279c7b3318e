//! Reliability intervals on a finite grid of `(0, 1]`.
//!
//! Elements are ⊥, the closed intervals `[lo, hi]` with endpoints in
//! `{k/d : 1 ≤ k ≤ d}`, and the half-open unit range `(0, 1]` as top.

use std::fmt;

use num_traits::Zero;

use super::FiniteLattice;
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntervalElement {
    Bottom,
    Closed {
        lo: Rational,
        hi: Rational,
    },
    /// `(0, 1]`, open at zero.
    Unit,
}

impl fmt::Display for IntervalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalElement::Bottom => f.write_str("⊥"),
            IntervalElement::Closed { lo, hi } => {
                write!(f, "[{},{}]", format_rational(lo), format_rational(hi))
            }
            IntervalElement::Unit => f.write_str("(0,1]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalLattice {
    denominator: u32,
}

pub fn interval_lattice(grid_denominator: u32) -> Result<IntervalLattice> {
    if grid_denominator == 0 {
        return Err(Error::Validation("grid denominator must be positive".into()));
    }
    Ok(IntervalLattice {
        denominator: grid_denominator,
    })
}

impl IntervalLattice {
    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    /// Grid index `k` of `r = k/d`, if `r` is a grid point.
    pub fn grid_index(&self, r: &Rational) -> Option<u32> {
        let d = self.denominator as i128;
        let scaled = r * Rational::from_integer(d);
        if !scaled.is_integer() {
            return None;
        }
        let k = scaled.to_integer();
        (1..=d).contains(&k).then_some(k as u32)
    }

    pub fn point(&self, k: u32) -> Rational {
        Rational::new(k as i128, self.denominator as i128)
    }

    /// `[lo, hi]`, validated against the grid.
    pub fn closed(&self, lo: Rational, hi: Rational) -> Result<IntervalElement> {
        for r in [&lo, &hi] {
            if self.grid_index(r).is_none() {
                return Err(Error::Validation(format!(
                    "{} is not a point of the 1/{} grid in (0,1]",
                    format_rational(r),
                    self.denominator
                )));
            }
        }
        if lo > hi {
            return Err(Error::Validation(format!(
                "empty interval [{},{}]",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(IntervalElement::Closed { lo, hi })
    }

    fn bounds(x: &IntervalElement) -> Option<(Rational, Rational)> {
        match x {
            IntervalElement::Closed { lo, hi } => Some((*lo, *hi)),
            _ => None,
        }
    }
}

impl FiniteLattice for IntervalLattice {
    type Elem = IntervalElement;

    fn name(&self) -> String {
        format!("interval(1/{})", self.denominator)
    }

    fn cardinality(&self) -> u128 {
        let d = self.denominator as u128;
        2 + d * (d + 1) / 2
    }

    fn elements(&self) -> Vec<IntervalElement> {
        let d = self.denominator;
        let mut out = vec![IntervalElement::Bottom];
        for lo in 1..=d {
            for hi in lo..=d {
                out.push(IntervalElement::Closed {
                    lo: self.point(lo),
                    hi: self.point(hi),
                });
            }
        }
        out.push(IntervalElement::Unit);
        out
    }

    fn leq(&self, a: &IntervalElement, b: &IntervalElement) -> bool {
        use IntervalElement::*;
        match (a, b) {
            (Bottom, _) | (_, Unit) => true,
            (_, Bottom) | (Unit, _) => false,
            (Closed { lo: l1, hi: h1 }, Closed { lo: l2, hi: h2 }) => l1 >= l2 && h1 <= h2,
        }
    }

    fn meet_all(&self, xs: &[IntervalElement]) -> IntervalElement {
        let mut acc = IntervalElement::Unit;
        for x in xs {
            acc = self.meet(&acc, x);
        }
        acc
    }

    fn join_all(&self, xs: &[IntervalElement]) -> IntervalElement {
        let mut acc = IntervalElement::Bottom;
        for x in xs {
            acc = self.join(&acc, x);
        }
        acc
    }

    fn top(&self) -> IntervalElement {
        IntervalElement::Unit
    }

    fn bottom(&self) -> IntervalElement {
        IntervalElement::Bottom
    }

    fn meet(&self, a: &IntervalElement, b: &IntervalElement) -> IntervalElement {
        use IntervalElement::*;
        match (a, b) {
            (Bottom, _) | (_, Bottom) => Bottom,
            (Unit, x) | (x, Unit) => x.clone(),
            _ => {
                let (l1, h1) = Self::bounds(a).expect("closed");
                let (l2, h2) = Self::bounds(b).expect("closed");
                let lo = l1.max(l2);
                let hi = h1.min(h2);
                if lo > hi || lo.is_zero() {
                    Bottom
                } else {
                    Closed { lo, hi }
                }
            }
        }
    }

    fn join(&self, a: &IntervalElement, b: &IntervalElement) -> IntervalElement {
        use IntervalElement::*;
        match (a, b) {
            (Unit, _) | (_, Unit) => Unit,
            (Bottom, x) | (x, Bottom) => x.clone(),
            _ => {
                let (l1, h1) = Self::bounds(a).expect("closed");
                let (l2, h2) = Self::bounds(b).expect("closed");
                Closed {
                    lo: l1.min(l2),
                    hi: h1.max(h2),
                }
            }
        }
    }

    fn render(&self, x: &IntervalElement) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn iv(l: &IntervalLattice, lo: &str, hi: &str) -> IntervalElement {
        l.closed(parse_rational(lo).unwrap(), parse_rational(hi).unwrap())
            .unwrap()
    }

    #[test]
    fn overlapping_meet_and_join() {
        let l = interval_lattice(20).unwrap();
        let p1 = iv(&l, "0.8", "1.0");
        let p2 = iv(&l, "0.75", "0.9");
        assert_eq!(l.meet(&p1, &p2), iv(&l, "0.8", "0.9"));
        assert_eq!(l.join(&p1, &p2), iv(&l, "0.75", "1.0"));
    }

    #[test]
    fn disjoint_meet_is_bottom() {
        let l = interval_lattice(20).unwrap();
        assert_eq!(
            l.meet(&iv(&l, "0.5", "0.7"), &iv(&l, "0.9", "1.0")),
            IntervalElement::Bottom
        );
    }

    #[test]
    fn off_grid_endpoint_is_rejected() {
        let l = interval_lattice(20).unwrap();
        let r = l.closed(parse_rational("0.33").unwrap(), Rational::from_integer(1));
        assert!(matches!(r, Err(Error::Validation(_))));
        let r = l.closed(Rational::from_integer(0), Rational::from_integer(1));
        assert!(matches!(r, Err(Error::Validation(_))));
        let r = l.closed(Rational::from_integer(1), Rational::new(1, 2));
        assert!(matches!(r, Err(Error::Validation(_))));
        assert!(interval_lattice(0).is_err());
    }

    #[test]
    fn unit_is_strictly_above_full_closed_range() {
        let l = interval_lattice(4).unwrap();
        let widest = iv(&l, "1/4", "1");
        assert!(l.leq(&widest, &IntervalElement::Unit));
        assert!(!l.leq(&IntervalElement::Unit, &widest));
        assert_eq!(l.elements().len() as u128, l.cardinality());
    }
}
