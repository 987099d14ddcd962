//! Shifting operators and compressed families.
//!
//! `δ_{i,j}` replaces `j` by `i` in a set that holds `j` but not `i`.
//! `Δ_{i,j}` applies `δ_{i,j}` to every member of a family whose image is not
//! already a member, so the family size never changes. A family is
//! (left-)compressed when every `Δ_{i,j}` with `i < j` fixes it.

use serde::{Deserialize, Serialize};

use crate::setcore::{BigCount, ElementSet, Family};
use crate::{Error, Result};

/// An ordered pair `(i, j)` of distinct elements of `[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompressionIndex {
    pub i: usize,
    pub j: usize,
}

impl CompressionIndex {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::BadIndex { i, j, n });
        }
        Ok(CompressionIndex { i, j })
    }

    #[inline]
    pub fn is_left(&self) -> bool {
        self.i < self.j
    }

    fn check(&self, n: usize) -> Result<()> {
        Self::new(self.i, self.j, n).map(|_| ())
    }

    /// All `(i, j)` with `i ≠ j` in `[n]`, lexicographic.
    pub fn all(n: usize) -> impl Iterator<Item = CompressionIndex> {
        (1..=n).flat_map(move |i| {
            (1..=n)
                .filter(move |&j| j != i)
                .map(move |j| CompressionIndex { i, j })
        })
    }

    /// Left-compressions `(i, j)`, `i < j`, in lexicographic order.
    pub fn left(n: usize) -> impl Iterator<Item = CompressionIndex> {
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| CompressionIndex { i, j }))
    }
}

#[inline]
fn shift(set: &ElementSet, idx: CompressionIndex) -> ElementSet {
    let (ib, jb) = (1u128 << (idx.i - 1), 1u128 << (idx.j - 1));
    let bits = set.bits();
    if bits & jb != 0 && bits & ib == 0 {
        ElementSet::from_bits(set.universe_size(), (bits & !jb) | ib).expect("index checked")
    } else {
        *set
    }
}

/// `δ_{i,j}(A)`.
pub fn delta(set: &ElementSet, idx: CompressionIndex) -> Result<ElementSet> {
    idx.check(set.universe_size())?;
    Ok(shift(set, idx))
}

/// `Δ_{i,j}(𝓕)`.
pub fn big_delta(family: &Family, idx: CompressionIndex) -> Result<Family> {
    idx.check(family.universe_size())?;
    Ok(apply(family, idx).unwrap_or_else(|| family.clone()))
}

/// `Some(image)` if `Δ_{i,j}` moves at least one member, `None` if it fixes
/// the family.
fn apply(family: &Family, idx: CompressionIndex) -> Option<Family> {
    let mut moved = false;
    let image: Vec<ElementSet> = family
        .iter()
        .map(|a| {
            let d = shift(a, idx);
            if d != *a && !family.contains(&d) {
                moved = true;
                d
            } else {
                *a
            }
        })
        .collect();
    if !moved {
        return None;
    }
    Some(Family::new(family.universe_size(), image).expect("same universe"))
}

/// `Σ_{F∈𝓕} Σ_{a∈F} a`.
pub fn potential(family: &Family) -> BigCount {
    BigCount::from(potential_u64(family))
}

fn potential_u64(family: &Family) -> u64 {
    family.iter().map(ElementSet::element_sum).sum()
}

/// First left-compression that moves a member, together with that member.
pub fn left_compression_violation(family: &Family) -> Option<(CompressionIndex, ElementSet)> {
    for idx in CompressionIndex::left(family.universe_size()) {
        for a in family {
            let d = shift(a, idx);
            if d != *a && !family.contains(&d) {
                return Some((idx, *a));
            }
        }
    }
    None
}

pub fn is_left_compressed(family: &Family) -> bool {
    left_compression_violation(family).is_none()
}

/// One left-compression that changed at least one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub index: CompressionIndex,
    /// Per input family: did this step change it?
    pub changed: Vec<bool>,
    /// Total potential of all families after the step.
    pub potential_after: BigCount,
}

/// Record of a fixpoint run. Only changing steps are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressionTrace {
    pub steps: Vec<TraceStep>,
    pub sweeps: usize,
    pub initial_potential: BigCount,
    pub final_potential: BigCount,
}

impl CompressionTrace {
    /// Potential strictly drops at every recorded step.
    pub fn is_strictly_decreasing(&self) -> bool {
        let mut prev = &self.initial_potential;
        for step in &self.steps {
            if step.potential_after >= *prev {
                return false;
            }
            prev = &step.potential_after;
        }
        *prev == self.final_potential
    }
}

/// Compresses all families simultaneously: each left-compression, taken in
/// lexicographic `(i, j)` order, is applied to every family as soon as it
/// changes any of them, and the sweep restarts from `(1, 2)`. Stops when a
/// full sweep changes nothing.
pub fn compress_all_to_fixpoint(families: &[Family]) -> Result<(Vec<Family>, CompressionTrace)> {
    let n = match families.first() {
        Some(f) => f.universe_size(),
        None => {
            return Ok((
                Vec::new(),
                CompressionTrace {
                    steps: Vec::new(),
                    sweeps: 0,
                    initial_potential: BigCount::zero(),
                    final_potential: BigCount::zero(),
                },
            ))
        }
    };
    for f in families {
        families[0].check_same_universe(f)?;
    }
    let mut current: Vec<Family> = families.to_vec();
    let mut total: u64 = current.iter().map(potential_u64).sum();
    let initial = total;
    let mut steps = Vec::new();
    let mut sweeps = 0;
    'sweep: loop {
        sweeps += 1;
        for idx in CompressionIndex::left(n) {
            let images: Vec<Option<Family>> = current.iter().map(|f| apply(f, idx)).collect();
            if images.iter().all(Option::is_none) {
                continue;
            }
            let changed: Vec<bool> = images.iter().map(Option::is_some).collect();
            for (slot, image) in current.iter_mut().zip(images) {
                if let Some(image) = image {
                    *slot = image;
                }
            }
            total = current.iter().map(potential_u64).sum();
            steps.push(TraceStep {
                index: idx,
                changed,
                potential_after: BigCount::from(total),
            });
            continue 'sweep;
        }
        break;
    }
    Ok((
        current,
        CompressionTrace {
            steps,
            sweeps,
            initial_potential: BigCount::from(initial),
            final_potential: BigCount::from(total),
        },
    ))
}

pub fn compress_to_fixpoint(family: &Family) -> (Family, CompressionTrace) {
    let (mut out, trace) =
        compress_all_to_fixpoint(std::slice::from_ref(family)).expect("single family");
    (out.pop().expect("one family in, one out"), trace)
}

pub fn compress_pair_to_fixpoint(
    a: &Family,
    b: &Family,
) -> Result<(Family, Family, CompressionTrace)> {
    let (mut out, trace) = compress_all_to_fixpoint(&[a.clone(), b.clone()])?;
    let b_out = out.pop().expect("two families");
    let a_out = out.pop().expect("two families");
    Ok((a_out, b_out, trace))
}
