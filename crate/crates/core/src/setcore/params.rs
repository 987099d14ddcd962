use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::element_set::MAX_UNIVERSE;
use crate::{Error, Result};

/// A problem instance: universe size `n`, uniformities `r₁ ≤ … ≤ r_k` and the
/// intersection threshold `t`, with `1 ≤ t ≤ r₁` and `r_k ≤ n`.
///
/// The pair case `k = 2` uses `r = r₁`, `s = r₂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    n: usize,
    uniformities: Vec<usize>,
    t: usize,
}

impl Params {
    pub fn pair(n: usize, r: usize, s: usize, t: usize) -> Result<Self> {
        Self::k_ary(n, vec![r, s], t)
    }

    pub fn k_ary(n: usize, uniformities: Vec<usize>, t: usize) -> Result<Self> {
        if n == 0 || n > MAX_UNIVERSE {
            return Err(Error::UniverseSize(n));
        }
        if uniformities.len() < 2 {
            return Err(Error::Params(format!(
                "need at least two uniformities, got {}",
                uniformities.len()
            )));
        }
        if t == 0 {
            return Err(Error::Params("t must be at least 1".into()));
        }
        if uniformities.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Params(format!(
                "uniformities must be nondecreasing, got {uniformities:?}"
            )));
        }
        if uniformities[0] < t {
            return Err(Error::Params(format!(
                "t = {t} exceeds the smallest uniformity {}",
                uniformities[0]
            )));
        }
        let largest = *uniformities.last().unwrap();
        if largest > n {
            return Err(Error::Params(format!(
                "uniformity {largest} exceeds n = {n}"
            )));
        }
        Ok(Params { n, uniformities, t })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.uniformities.len()
    }

    pub fn uniformities(&self) -> &[usize] {
        &self.uniformities
    }

    /// Smallest uniformity.
    pub fn r(&self) -> usize {
        self.uniformities[0]
    }

    /// Largest uniformity.
    pub fn s(&self) -> usize {
        *self.uniformities.last().unwrap()
    }

    pub fn is_pair(&self) -> bool {
        self.uniformities.len() == 2
    }

    /// The two largest uniformities, `(r_{k-1}, r_k)`.
    pub fn top_two(&self) -> (usize, usize) {
        let k = self.uniformities.len();
        (self.uniformities[k - 2], self.uniformities[k - 1])
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pair() {
            write!(
                f,
                "n={} r={} s={} t={}",
                self.n, self.uniformities[0], self.uniformities[1], self.t
            )
        } else {
            write!(f, "n={} r={:?} t={}", self.n, self.uniformities, self.t)
        }
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("n", &self.n)?;
        if self.is_pair() {
            map.serialize_entry("r", &self.uniformities[0])?;
            map.serialize_entry("s", &self.uniformities[1])?;
        }
        map.serialize_entry("t", &self.t)?;
        map.serialize_entry("uniformities", &self.uniformities)?;
        map.end()
    }
}
