use std::fmt;

/// Largest universe a [`SmallSet`] can index.
pub const MAX_ATOMS: usize = 64;

/// A subset of `{0, .., 63}` stored as a bitmask. Iteration is ascending, so
/// the representation is already canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SmallSet(u64);

impl SmallSet {
    pub const EMPTY: SmallSet = SmallSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> SmallSet {
        assert!(n <= MAX_ATOMS, "SmallSet holds at most {MAX_ATOMS} atoms");
        if n == MAX_ATOMS {
            SmallSet(u64::MAX)
        } else {
            SmallSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> SmallSet {
        assert!(i < MAX_ATOMS);
        SmallSet(1u64 << i)
    }

    pub const fn from_bits(bits: u64) -> SmallSet {
        SmallSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ATOMS && self.0 & (1u64 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> SmallSet {
        self.union(SmallSet::singleton(i))
    }

    #[must_use]
    pub fn union(self, other: SmallSet) -> SmallSet {
        SmallSet(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: SmallSet) -> SmallSet {
        SmallSet(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: SmallSet) -> SmallSet {
        SmallSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: SmallSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Every subset of `{0, .., n-1}` in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = SmallSet> {
        assert!(n < MAX_ATOMS, "cannot enumerate 2^{n} subsets");
        (0..1u64 << n).map(SmallSet)
    }

    /// Every subset of `self`, ascending.
    pub fn subsets(self) -> impl Iterator<Item = SmallSet> {
        // Standard sub-mask walk, yielded in increasing order.
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(SmallSet(cur))
        })
    }
}

impl FromIterator<usize> for SmallSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(SmallSet::EMPTY, SmallSet::with)
    }
}

impl fmt::Debug for SmallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
