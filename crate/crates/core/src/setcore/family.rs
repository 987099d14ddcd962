use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::element_set::ElementSet;
use crate::{Error, Result};

/// A deduplicated, canonically ordered collection of sets over one universe.
///
/// The member list is kept sorted by the [`ElementSet`] order (cardinality,
/// then lexicographic), so two families are equal iff their member lists are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    n: usize,
    sets: Vec<ElementSet>,
    uniformity: Option<usize>,
}

impl Family {
    pub fn empty(n: usize) -> Result<Self> {
        ElementSet::empty(n)?;
        Ok(Family {
            n,
            sets: Vec::new(),
            uniformity: None,
        })
    }

    pub fn new<I: IntoIterator<Item = ElementSet>>(n: usize, sets: I) -> Result<Self> {
        ElementSet::empty(n)?;
        let mut sets: Vec<ElementSet> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| s.universe_size() != n) {
            return Err(Error::UniverseMismatch {
                left: n,
                right: bad.universe_size(),
            });
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(Self::from_sorted(n, sets))
    }

    /// Convenience constructor from 1-based element lists.
    pub fn from_lists<L: AsRef<[usize]>>(n: usize, lists: &[L]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| ElementSet::new(n, l.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Family::new(n, sets)
    }

    /// `sets` must already be sorted and free of duplicates.
    pub(crate) fn from_sorted(n: usize, sets: Vec<ElementSet>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        let uniformity = match sets.first() {
            Some(first) if sets.iter().all(|s| s.cardinality() == first.cardinality()) => {
                Some(first.cardinality())
            }
            _ => None,
        };
        Family {
            n,
            sets,
            uniformity,
        }
    }

    #[inline]
    pub fn universe_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Common cardinality of the members; `None` for an empty or mixed family.
    #[inline]
    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ElementSet> {
        self.sets.iter()
    }

    pub fn contains(&self, set: &ElementSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    /// Member lists as 1-based vectors.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(ElementSet::to_vec).collect()
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.sets.iter().all(|s| other.contains(s))
    }

    pub(crate) fn check_same_universe(&self, other: &Family) -> Result<()> {
        if self.n != other.n {
            return Err(Error::UniverseMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a ElementSet;
    type IntoIter = std::slice::Iter<'a, ElementSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

impl Ord for Family {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sets
            .cmp(&other.sets)
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for Family {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.sets.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sets.iter())
    }
}
