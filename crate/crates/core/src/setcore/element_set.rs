use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// Largest supported universe.
pub const MAX_UNIVERSE: usize = 128;

/// A subset of `[n] = {1, .., n}`, stored as a 128-bit mask.
///
/// Element `x` lives in bit `x - 1`. Elements are 1-based everywhere in the
/// public API.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: u8,
    bits: u128,
}

fn check_universe(n: usize) -> Result<()> {
    if n == 0 || n > MAX_UNIVERSE {
        return Err(Error::UniverseSize(n));
    }
    Ok(())
}

fn universe_mask(n: usize) -> u128 {
    if n == MAX_UNIVERSE {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl ElementSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_universe(n)?;
        Ok(ElementSet {
            n: n as u8,
            bits: 0,
        })
    }

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Result<Self> {
        check_universe(n)?;
        Ok(ElementSet {
            n: n as u8,
            bits: universe_mask(n),
        })
    }

    /// The prefix `[m]` inside the universe `[n]`. `m` is clamped to `n`.
    pub fn prefix(n: usize, m: usize) -> Result<Self> {
        check_universe(n)?;
        Ok(ElementSet {
            n: n as u8,
            bits: if m == 0 { 0 } else { universe_mask(m.min(n)) },
        })
    }

    /// Builds a set from 1-based elements. Repeated elements are rejected.
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        check_universe(n)?;
        let mut bits = 0u128;
        for x in elements {
            if x == 0 || x > n {
                return Err(Error::ElementOutOfRange { element: x, n });
            }
            let bit = 1u128 << (x - 1);
            if bits & bit != 0 {
                return Err(Error::Params(format!("element {x} repeated")));
            }
            bits |= bit;
        }
        Ok(ElementSet { n: n as u8, bits })
    }

    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        check_universe(n)?;
        if bits & !universe_mask(n) != 0 {
            let element = 128 - (bits & !universe_mask(n)).leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element, n });
        }
        Ok(ElementSet { n: n as u8, bits })
    }

    #[inline]
    pub fn universe_size(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn cardinality(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x >= 1 && x <= self.n as usize && self.bits & (1u128 << (x - 1)) != 0
    }

    /// Returns a copy with `x` added. `x` must lie in `[n]`.
    pub fn with(&self, x: usize) -> Result<Self> {
        self.check_element(x)?;
        Ok(ElementSet {
            n: self.n,
            bits: self.bits | (1u128 << (x - 1)),
        })
    }

    /// Returns a copy with `x` removed. `x` must lie in `[n]`.
    pub fn without(&self, x: usize) -> Result<Self> {
        self.check_element(x)?;
        Ok(ElementSet {
            n: self.n,
            bits: self.bits & !(1u128 << (x - 1)),
        })
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x == 0 || x > self.n as usize {
            return Err(Error::ElementOutOfRange {
                element: x,
                n: self.n as usize,
            });
        }
        Ok(())
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    #[inline]
    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        (self.bits & other.bits).count_ones() as usize
    }

    #[inline]
    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// Sum of the elements of the set.
    pub fn element_sum(&self) -> u64 {
        self.iter().map(|x| x as u64).sum()
    }
}

/// Iterator over the 1-based elements of an [`ElementSet`].
pub struct Elements {
    bits: u128,
}

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let low = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(low + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.bits.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

// Canonical order: cardinality first, then lexicographic on the sorted
// element lists. For equal cardinality the set holding the lowest
// differing element is the smaller one.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cardinality()
            .cmp(&other.cardinality())
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else if self.bits & (diff & diff.wrapping_neg()) != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.cardinality()))?;
        for x in self.iter() {
            seq.serialize_element(&x)?;
        }
        seq.end()
    }
}
