use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::MAX_ATOMS;
use crate::rational::{format_rational, Rational};
use crate::tag_options::{OptionSet, TagOptionsSpace, TagSet};

/// Reliability grid `{k/d : 1 ≤ k ≤ d}`; option `i` is `(i+1)/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grid {
    denominator: u32,
}

impl Grid {
    pub fn new(denominator: u32) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::Validation("grid denominator must be positive".into()));
        }
        if denominator as usize > MAX_ATOMS {
            return Err(Error::capacity("grid points", denominator as u128, MAX_ATOMS as u128));
        }
        Ok(Grid { denominator })
    }

    pub fn denominator(self) -> u32 {
        self.denominator
    }

    pub fn len(self) -> usize {
        self.denominator as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn value(self, i: usize) -> Rational {
        Rational::new(i as i128 + 1, self.denominator as i128)
    }

    pub fn values(self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    pub fn index_of(self, r: &Rational) -> Option<usize> {
        let scaled = r * Rational::from_integer(self.denominator as i128);
        if !scaled.is_integer() {
            return None;
        }
        let k = scaled.to_integer();
        (1..=self.denominator as i128).contains(&k).then(|| k as usize - 1)
    }

    pub fn require(self, r: &Rational) -> Result<usize> {
        self.index_of(r).ok_or_else(|| {
            Error::Validation(format!(
                "{} is not a point of the 1/{} grid in (0,1]",
                format_rational(r),
                self.denominator
            ))
        })
    }

    /// Grid points inside `[lo, hi]`.
    pub fn points_in(self, lo: &Rational, hi: &Rational) -> OptionSet {
        (0..self.len())
            .filter(|&i| {
                let v = self.value(i);
                *lo <= v && v <= *hi
            })
            .collect()
    }

    pub fn labels(self) -> Vec<String> {
        self.values().iter().map(format_rational).collect()
    }
}

/// Presence options of a topology pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Presence {
    Present,
    Absent,
}

impl Presence {
    pub const NAMES: [&'static str; 2] = ["present", "absent"];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Presence {
        if i == 0 {
            Presence::Present
        } else {
            Presence::Absent
        }
    }

    pub fn name(self) -> &'static str {
        Self::NAMES[self.index()]
    }

    pub fn parse(s: &str) -> Result<Presence> {
        match s {
            "present" => Ok(Presence::Present),
            "absent" => Ok(Presence::Absent),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Components, the unordered pairs that may carry a line, and the grid.
///
/// The reliability space has one tag per component and one option per grid
/// point. The topology space has one tag per pair, named `a-b` in component
/// order, with options `present`/`absent`. A present line between `a` and
/// `b` fails independently with the reliability of the component named
/// `a-b`, when the universe declares one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    components: Arc<[String]>,
    pairs: Arc<[(usize, usize)]>,
    grid: Grid,
    rel: TagOptionsSpace,
    topo: TagOptionsSpace,
}

impl Universe {
    /// `pairs = None` means every unordered pair of components.
    pub fn new<S: AsRef<str>>(components: &[S], pairs: Option<&[(S, S)]>, grid_denominator: u32) -> Result<Self> {
        let names: Vec<String> = components.iter().map(|c| c.as_ref().to_string()).collect();
        let grid = Grid::new(grid_denominator)?;
        let rel = TagOptionsSpace::from_names(names.iter().cloned(), grid.labels())?;
        let find = |n: &str| {
            names
                .iter()
                .position(|c| c == n)
                .ok_or_else(|| Error::UnknownName(n.to_string()))
        };
        let mut idx: Vec<(usize, usize)> = match pairs {
            None => (0..names.len())
                .flat_map(|i| (i + 1..names.len()).map(move |j| (i, j)))
                .collect(),
            Some(ps) => ps
                .iter()
                .map(|(a, b)| {
                    let (i, j) = (find(a.as_ref())?, find(b.as_ref())?);
                    if i == j {
                        return Err(Error::Validation(format!(
                            "pair `{}` joins a component to itself",
                            names[i]
                        )));
                    }
                    Ok((i.min(j), i.max(j)))
                })
                .collect::<Result<_>>()?,
        };
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Validation("duplicate pair".into()));
        }
        if idx.is_empty() {
            return Err(Error::Validation("the topology needs at least one pair".into()));
        }
        let pair_names: Vec<String> = idx.iter().map(|&(i, j)| format!("{}-{}", names[i], names[j])).collect();
        let topo = TagOptionsSpace::from_names(pair_names, Presence::NAMES)?;
        Ok(Universe {
            components: names.into(),
            pairs: idx.into(),
            grid,
            rel,
            topo,
        })
    }

    /// Nodes plus one line component per node pair; pairs are the node pairs.
    pub fn network<S: AsRef<str>>(nodes: &[S], grid_denominator: u32) -> Result<Self> {
        let nodes: Vec<String> = nodes.iter().map(|n| n.as_ref().to_string()).collect();
        let pairs: Vec<(String, String)> = (0..nodes.len())
            .flat_map(|i| (i + 1..nodes.len()).map(move |j| (i, j)))
            .map(|(i, j)| (nodes[i].clone(), nodes[j].clone()))
            .collect();
        let mut components = nodes.clone();
        components.extend(pairs.iter().map(|(a, b)| format!("{a}-{b}")));
        Universe::new(&components, Some(&pairs), grid_denominator)
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn component_index(&self, name: &str) -> Result<usize> {
        self.rel.tags.index(name)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_name(&self, k: usize) -> &str {
        self.topo.tags.name(k)
    }

    /// Index of the pair `{a, b}` in either order.
    pub fn pair_index(&self, a: &str, b: &str) -> Result<usize> {
        let (i, j) = (self.component_index(a)?, self.component_index(b)?);
        let key = (i.min(j), i.max(j));
        self.pairs
            .iter()
            .position(|&p| p == key)
            .ok_or_else(|| Error::UnknownName(format!("{a}-{b}")))
    }

    /// The component whose reliability a present line on pair `k` carries.
    pub fn line_component(&self, k: usize) -> Option<usize> {
        self.rel.tags.index(self.pair_name(k)).ok()
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn rel_space(&self) -> &TagOptionsSpace {
        &self.rel
    }

    pub fn topo_space(&self) -> &TagOptionsSpace {
        &self.topo
    }

    /// A system from per-component reliabilities (in component order) and
    /// the list of present pairs.
    pub fn system(&self, reliability: Vec<Rational>, present: TagSet) -> Result<SystemInstance> {
        if reliability.len() != self.components.len() {
            return Err(Error::UniverseMismatch(format!(
                "{} reliabilities for {} components",
                reliability.len(),
                self.components.len()
            )));
        }
        for r in &reliability {
            self.grid.require(r)?;
        }
        if !present.is_subset(self.topo.tags.full()) {
            return Err(Error::UniverseMismatch("edge outside the declared pairs".into()));
        }
        Ok(SystemInstance { reliability, present })
    }

    /// A system from named reliabilities and named edges; every component
    /// must be listed.
    pub fn system_named(&self, reliability: &[(&str, Rational)], edges: &[(&str, &str)]) -> Result<SystemInstance> {
        let mut values: Vec<Option<Rational>> = vec![None; self.components.len()];
        for (name, r) in reliability {
            let i = self.component_index(name)?;
            if values[i].replace(*r).is_some() {
                return Err(Error::Validation(format!("reliability of `{name}` given twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Validation(format!("no reliability for `{}`", self.components[i]))))
            .collect::<Result<Vec<_>>>()?;
        let mut present = TagSet::EMPTY;
        for (a, b) in edges {
            present = present.with(self.pair_index(a, b)?);
        }
        self.system(values, present)
    }

    /// Number of distinct systems: `d^|C| · 2^|pairs|`.
    pub fn system_count(&self) -> u128 {
        (self.grid.len() as u128)
            .checked_pow(self.components.len() as u32)
            .and_then(|v| {
                1u128
                    .checked_shl(self.pairs.len() as u32)
                    .and_then(|e| v.checked_mul(e))
            })
            .unwrap_or(u128::MAX)
    }

    /// Every system, reliabilities varying slowest (first component first),
    /// then edge sets in ascending bitmask order.
    pub fn systems(&self, budget: u128) -> Result<Vec<SystemInstance>> {
        let count = self.system_count();
        if count > budget {
            return Err(Error::BudgetExceeded { needed: count, budget });
        }
        let n = self.components.len();
        let d = self.grid.len();
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0usize; n];
        loop {
            let reliability: Vec<Rational> = digits.iter().map(|&k| self.grid.value(k)).collect();
            for present in self.topo.tags.full().subsets() {
                out.push(SystemInstance {
                    reliability: reliability.clone(),
                    present,
                });
            }
            // Odometer, last component fastest.
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < d {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    pub fn render_system(&self, s: &SystemInstance) -> String {
        let rel: Vec<String> = self
            .components
            .iter()
            .zip(&s.reliability)
            .map(|(c, r)| format!("{c}={}", format_rational(r)))
            .collect();
        let edges: Vec<&str> = s.present.iter().map(|k| self.pair_name(k)).collect();
        format!("{{{}; edges {{{}}}}}", rel.join(","), edges.join(","))
    }
}

/// One concrete system: a grid reliability per component and the set of
/// pairs that carry a line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SystemInstance {
    reliability: Vec<Rational>,
    present: TagSet,
}

impl SystemInstance {
    pub fn reliability(&self) -> &[Rational] {
        &self.reliability
    }

    pub fn reliability_of(&self, component: usize) -> Rational {
        self.reliability[component]
    }

    pub fn present(&self) -> TagSet {
        self.present
    }

    pub fn presence(&self, pair: usize) -> Presence {
        if self.present.contains(pair) {
            Presence::Present
        } else {
            Presence::Absent
        }
    }
}

impl fmt::Debug for SystemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<String> = self.reliability.iter().map(format_rational).collect();
        write!(f, "[{}; edges {:?}]", rel.join(","), self.present)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn grid_points() {
        let g = Grid::new(4).unwrap();
        assert_eq!(g.labels(), ["1/4", "1/2", "3/4", "1/1"]);
        assert_eq!(g.index_of(&Rational::new(1, 2)), Some(1));
        assert_eq!(g.index_of(&Rational::new(1, 3)), None);
        assert_eq!(g.index_of(&Rational::new(0, 1)), None);
        let g = Grid::new(20).unwrap();
        let s = g.points_in(&Rational::new(9, 10), &Rational::new(1, 1));
        assert_eq!(s.iter().map(|i| g.value(i)).collect::<Vec<_>>().len(), 3);
        assert!(Grid::new(0).is_err());
    }

    #[test]
    fn pairs_are_canonical() {
        let u = Universe::new(&["a", "b", "c"], Some(&[("c", "a"), ("b", "a")]), 2).unwrap();
        assert_eq!(u.pairs(), &[(0, 1), (0, 2)]);
        assert_eq!(u.pair_name(1), "a-c");
        assert_eq!(u.pair_index("c", "a").unwrap(), 1);
        assert!(Universe::new(&["a", "b"], Some(&[("a", "b"), ("b", "a")]), 2).is_err());
        assert!(Universe::new(&["a", "b"], Some(&[("a", "z")]), 2).is_err());
    }

    #[test]
    fn network_has_line_components() {
        let u = Universe::network(&["a", "b", "c"], 2).unwrap();
        assert_eq!(u.components(), &["a", "b", "c", "a-b", "a-c", "b-c"]);
        assert_eq!(u.line_component(2), Some(5));
    }

    #[test]
    fn systems_enumerate_the_product() {
        let u = Universe::new(&["c1", "c2"], None, 2).unwrap();
        let all = u.systems(1 << 16).unwrap();
        assert_eq!(all.len() as u128, u.system_count());
        assert_eq!(all.len(), 8);
        let distinct: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 8);
        assert!(matches!(u.systems(7), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn system_validation() {
        let u = Universe::new(&["c1", "c2"], None, 2).unwrap();
        assert!(u
            .system(vec![Rational::new(1, 3), Rational::one()], TagSet::EMPTY)
            .is_err());
        let s = u
            .system_named(&[("c1", Rational::new(1, 2)), ("c2", Rational::one())], &[("c2", "c1")])
            .unwrap();
        assert_eq!(s.presence(0), Presence::Present);
        assert_eq!(u.render_system(&s), "{c1=1/2,c2=1/1; edges {c1-c2}}");
    }
}
