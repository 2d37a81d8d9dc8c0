//! Compact sets of element indices.
//!
//! Every net and poset in this crate numbers its elements in a canonical
//! order (conditions before events, each group sorted by name). An
//! [`ElementSet`] is a subset of those indices backed by a single bitmask,
//! so set algebra is a handful of word operations and equality is
//! extensional equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

/// A subset of element indices, at most [`ElementSet::CAPACITY`] wide.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u128);

impl ElementSet {
    /// Largest universe this representation supports.
    pub const CAPACITY: usize = 128;

    /// The empty set.
    pub const EMPTY: ElementSet = ElementSet(0);

    /// The set {0, 1, .., n-1}.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::CAPACITY, "universe of {n} exceeds capacity");
        if n == Self::CAPACITY {
            ElementSet(!0)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    /// The set {i}.
    pub fn singleton(i: usize) -> Self {
        assert!(i < Self::CAPACITY, "index {i} exceeds capacity");
        ElementSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = Self::EMPTY;
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < Self::CAPACITY, "index {i} exceeds capacity");
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        if i < Self::CAPACITY {
            self.0 &= !(1u128 << i);
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < Self::CAPACITY && self.0 & (1u128 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.0 & other.0 != 0
    }

    /// Complement relative to a universe set.
    pub fn complement_in(&self, universe: ElementSet) -> ElementSet {
        ElementSet(universe.0 & !self.0)
    }

    /// Smallest index in the set, if any.
    pub fn first(&self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> Indices {
        Indices(self.0)
    }

    /// All subsets of this set, in ascending bitmask order.
    pub fn subsets(&self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 | rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & !rhs.0)
    }
}

/// Sets are ordered lexicographically by their sorted member lists, so the
/// empty set comes first and {0} precedes {1}. This is the canonical order
/// used for every enumeration in the crate.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_indices(iter)
    }
}

#[derive(Clone)]
pub struct Indices(u128);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        // Next submask in ascending numeric order.
        self.next = if cur == self.mask {
            None
        } else {
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(ElementSet(cur))
    }
}
