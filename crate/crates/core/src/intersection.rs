//! Intersection predicates, t-stars and compatible families.

use itertools::Itertools;
use serde::Serialize;

use crate::setcore::{binomial, generate_uniform, BigCount, ElementSet, Family, Params};
use crate::{Error, Result};

/// First pair of distinct members sharing fewer than `t` elements.
pub fn t_intersection_violation(family: &Family, t: usize) -> Option<(ElementSet, ElementSet)> {
    let sets = family.sets();
    for (k, a) in sets.iter().enumerate() {
        for b in &sets[k + 1..] {
            if a.intersection_len(b) < t {
                return Some((*a, *b));
            }
        }
    }
    None
}

/// Every two distinct members share at least `t` elements. Vacuous for
/// families with at most one member.
pub fn is_t_intersecting(family: &Family, t: usize) -> bool {
    t_intersection_violation(family, t).is_none()
}

/// First `(A, B) ∈ 𝒜 × ℬ` with `|A ∩ B| < t`.
pub fn cross_violation(
    a: &Family,
    b: &Family,
    t: usize,
) -> Result<Option<(ElementSet, ElementSet)>> {
    a.check_same_universe(b)?;
    for x in a {
        for y in b {
            if x.intersection_len(y) < t {
                return Ok(Some((*x, *y)));
            }
        }
    }
    Ok(None)
}

pub fn is_cross_t_intersecting(a: &Family, b: &Family, t: usize) -> Result<bool> {
    Ok(cross_violation(a, b, t)?.is_none())
}

/// Pairwise cross-t-intersection of `k ≥ 2` families. An empty family does
/// not excuse a failing pair among the others.
pub fn is_cross_t_intersecting_k(families: &[Family], t: usize) -> Result<bool> {
    Ok(cross_violation_k(families, t)?.is_none())
}

/// First failing `(family index, family index, A, B)` in pair order.
pub fn cross_violation_k(
    families: &[Family],
    t: usize,
) -> Result<Option<(usize, usize, ElementSet, ElementSet)>> {
    if families.len() < 2 {
        return Err(Error::Params(format!(
            "need at least two families, got {}",
            families.len()
        )));
    }
    for f in &families[1..] {
        families[0].check_same_universe(f)?;
    }
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            if let Some((x, y)) = cross_violation(&families[i], &families[j], t)? {
                return Ok(Some((i, j, x, y)));
            }
        }
    }
    Ok(None)
}

/// The t-star `{A ∈ C([n], r) : T ⊆ A}` is described by `(n, r, T)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StarDescriptor {
    n: usize,
    r: usize,
    center: ElementSet,
}

impl StarDescriptor {
    pub fn new(n: usize, r: usize, center: ElementSet) -> Result<Self> {
        if center.universe_size() != n {
            return Err(Error::UniverseMismatch {
                left: n,
                right: center.universe_size(),
            });
        }
        if center.cardinality() > r || r > n {
            return Err(Error::Params(format!(
                "star needs |T| ≤ r ≤ n, got |T| = {}, r = {r}, n = {n}",
                center.cardinality()
            )));
        }
        Ok(StarDescriptor { n, r, center })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn center(&self) -> ElementSet {
        self.center
    }

    /// `C(n − |T|, r − |T|)`.
    pub fn size(&self) -> BigCount {
        let t = self.center.cardinality() as u64;
        binomial(self.n as u64 - t, self.r as u64 - t)
    }
}

pub fn star(desc: &StarDescriptor) -> Result<Family> {
    let n = desc.n;
    let center = desc.center;
    let free: Vec<usize> = (1..=n).filter(|x| !center.contains(*x)).collect();
    let extra = desc.r - center.cardinality();
    let sets = free
        .into_iter()
        .combinations(extra)
        .map(|c| {
            ElementSet::from_bits(n, c.iter().fold(center.bits(), |b, x| b | 1u128 << (x - 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new(n, sets)
}

/// Shorthand for `star(StarDescriptor::new(n, r, center))`.
pub fn star_on(n: usize, r: usize, center: &ElementSet) -> Result<Family> {
    star(&StarDescriptor::new(n, r, *center)?)
}

/// Returns `T` with `|T| = t` when the family equals the full t-star
/// `{A ∈ C([n], r) : T ⊆ A}`. When several centres qualify (a one-member
/// family, or `r = n`) the first in canonical order is reported.
pub fn recognize_star(family: &Family, t: usize) -> Result<Option<ElementSet>> {
    let n = family.universe_size();
    if family.is_empty() {
        return Ok(None);
    }
    let r = family.uniformity().ok_or(Error::NonUniform)?;
    if t > r {
        return Ok(None);
    }
    let common = family
        .iter()
        .fold(ElementSet::full(n)?, |acc, s| acc.intersection(s));
    if common.cardinality() < t {
        return Ok(None);
    }
    // Every member contains any t-subset T of `common`, so the family is a
    // subfamily of the star on T and equality reduces to a size check.
    let full_size = binomial((n - t) as u64, (r - t) as u64);
    if BigCount::from(family.len()) != full_size {
        return Ok(None);
    }
    let first = common.iter().take(t);
    Ok(Some(ElementSet::new(n, first)?))
}

/// Common centre `T`, `|T| = t`, such that every family is the full t-star
/// `{A ∈ C([n], rᵢ) : T ⊆ A}` of its own uniformity.
pub fn common_star_center(families: &[Family], t: usize) -> Option<ElementSet> {
    let n = families.first()?.universe_size();
    let mut common = ElementSet::full(n).ok()?;
    for f in families {
        if f.is_empty() || f.universe_size() != n {
            return None;
        }
        let r = f.uniformity()?;
        if r < t || BigCount::from(f.len()) != binomial((n - t) as u64, (r - t) as u64) {
            return None;
        }
        common = f.iter().fold(common, |acc, s| acc.intersection(s));
    }
    if common.cardinality() < t {
        return None;
    }
    ElementSet::new(n, common.iter().take(t)).ok()
}

/// The distinct star tuples `(star(n, r₁, T), …, star(n, r_k, T))` over all
/// `T ∈ C([n], t)`, sorted canonically.
pub fn all_star_tuples(params: &Params) -> Result<Vec<Vec<Family>>> {
    let n = params.n();
    let mut tuples = generate_uniform(n, params.t())?
        .iter()
        .map(|centre| {
            params
                .uniformities()
                .iter()
                .map(|&r| star_on(n, r, centre))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    tuples.sort();
    tuples.dedup();
    Ok(tuples)
}

/// `{B ∈ C([n], s) : |B ∩ A| ≥ t for all A ∈ 𝒜}`; the full layer when `𝒜 = ∅`.
pub fn compatible_family(a: &Family, s: usize, t: usize) -> Result<Family> {
    let n = a.universe_size();
    if let Some(r) = a.uniformity() {
        if !(t <= r && r <= s && s <= n) {
            return Err(Error::Params(format!(
                "compatible family needs t ≤ r ≤ s ≤ n, got t={t} r={r} s={s} n={n}"
            )));
        }
    } else if !a.is_empty() {
        return Err(Error::NonUniform);
    } else if !(t <= s && s <= n) {
        return Err(Error::Params(format!(
            "compatible family needs t ≤ s ≤ n, got t={t} s={s} n={n}"
        )));
    }
    let layer = generate_uniform(n, s)?;
    let sets = layer
        .iter()
        .filter(|b| a.iter().all(|x| x.intersection_len(b) >= t))
        .copied()
        .collect();
    Ok(Family::from_sorted(n, sets))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, lists: &[&[usize]]) -> Family {
        Family::from_lists(n, lists).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::new(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn t_intersecting_examples() {
        assert!(is_t_intersecting(&fam(3, &[&[1, 2], &[1, 3]]), 1));
        assert!(!is_t_intersecting(&fam(3, &[&[1, 2], &[1, 3]]), 2));
        assert!(is_t_intersecting(&fam(3, &[&[1, 2]]), 2));
        assert!(is_t_intersecting(&Family::empty(3).unwrap(), 7));
    }

    #[test]
    fn cross_examples() {
        let a = fam(3, &[&[1, 2]]);
        let b = fam(3, &[&[1, 3]]);
        assert!(is_cross_t_intersecting(&a, &b, 1).unwrap());
        assert!(!is_cross_t_intersecting(&a, &b, 2).unwrap());
        assert!(is_cross_t_intersecting(&Family::empty(3).unwrap(), &b, 5).unwrap());
        assert!(is_cross_t_intersecting(&a, &fam(4, &[&[1]]), 1).is_err());
    }

    #[test]
    fn cross_k_examples() {
        let f = |x: &[usize]| fam(4, &[x]);
        assert!(is_cross_t_intersecting_k(&[f(&[1, 2]), f(&[1, 3]), f(&[1, 4])], 1).unwrap());
        assert!(!is_cross_t_intersecting_k(&[f(&[1, 2]), f(&[1, 3]), f(&[3, 4])], 1).unwrap());
        assert!(!is_cross_t_intersecting_k(
            &[Family::empty(4).unwrap(), f(&[1, 2]), f(&[3, 4])],
            1
        )
        .unwrap());
        assert!(is_cross_t_intersecting_k(&[f(&[1, 2])], 1).is_err());
        let v = cross_violation_k(&[f(&[1, 2]), f(&[1, 3]), f(&[3, 4])], 1).unwrap();
        assert_eq!(v, Some((0, 2, set(4, &[1, 2]), set(4, &[3, 4]))));
    }

    #[test]
    fn star_examples() {
        assert_eq!(
            star_on(4, 2, &set(4, &[1])).unwrap(),
            fam(4, &[&[1, 2], &[1, 3], &[1, 4]])
        );
        assert_eq!(star_on(3, 2, &set(3, &[1, 2])).unwrap(), fam(3, &[&[1, 2]]));
        assert_eq!(star_on(5, 2, &set(5, &[1])).unwrap().len(), 4);
        assert!(StarDescriptor::new(4, 2, set(5, &[1])).is_err());
        assert!(StarDescriptor::new(4, 1, set(4, &[1, 2])).is_err());
    }

    #[test]
    fn recognize_examples() {
        assert_eq!(
            recognize_star(&fam(4, &[&[1, 2], &[1, 3], &[1, 4]]), 1).unwrap(),
            Some(set(4, &[1]))
        );
        assert_eq!(
            recognize_star(&fam(4, &[&[1, 2], &[3, 4]]), 1).unwrap(),
            None
        );
        assert_eq!(
            recognize_star(&fam(4, &[&[1, 2]]), 2).unwrap(),
            Some(set(4, &[1, 2]))
        );
        // A proper subfamily of a star is not a star.
        assert_eq!(
            recognize_star(&fam(4, &[&[1, 2], &[1, 3]]), 1).unwrap(),
            None
        );
        assert_eq!(recognize_star(&Family::empty(4).unwrap(), 1).unwrap(), None);
        assert_eq!(
            recognize_star(&fam(4, &[&[1], &[1, 2]]), 1),
            Err(Error::NonUniform)
        );
    }

    #[test]
    fn compatible_examples() {
        assert_eq!(
            compatible_family(&fam(3, &[&[1]]), 2, 1).unwrap(),
            fam(3, &[&[1, 2], &[1, 3]])
        );
        assert_eq!(
            compatible_family(&fam(4, &[&[1, 2]]), 2, 2).unwrap(),
            fam(4, &[&[1, 2]])
        );
        let all = compatible_family(&Family::empty(3).unwrap(), 2, 1).unwrap();
        assert_eq!(all, generate_uniform(3, 2).unwrap());
        assert!(compatible_family(&fam(3, &[&[1, 2]]), 1, 1).is_err());
        assert!(compatible_family(&fam(3, &[&[1], &[1, 2]]), 2, 1).is_err());
    }
}
