//! Populations of families for the verification suites.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::Rng;

use crate::compression::{big_delta, CompressionIndex};
use crate::intersection::star_on;
use crate::setcore::{binomial, layer_sets, ElementSet, Family};
use crate::{Error, Result};

/// Most subfamilies an exhaustive suite will enumerate on one side.
pub const MAX_SUBFAMILIES: u128 = 4096;

/// `Σ_{k ≤ max} C(layer, k)`, saturating.
pub fn subfamily_count(layer: usize, max_size: Option<usize>) -> u128 {
    let top = max_size.unwrap_or(layer).min(layer);
    (0..=top)
        .map(|k| {
            binomial(layer as u64, k as u64)
                .to_u128()
                .unwrap_or(u128::MAX)
        })
        .fold(0u128, u128::saturating_add)
}

/// Every subfamily of `C([n], r)` with at most `max_size` members, including
/// the empty one, ordered by size and then by member positions in the layer.
///
/// Refuses when there would be more than [`MAX_SUBFAMILIES`].
pub fn subfamilies(n: usize, r: usize, max_size: Option<usize>) -> Result<Vec<Family>> {
    let layer = layer_sets(n, r)?;
    let count = subfamily_count(layer.len(), max_size);
    if count > MAX_SUBFAMILIES {
        return Err(Error::Guard {
            what: format!("subfamilies of C([{n}], {r})"),
            size: count,
            limit: MAX_SUBFAMILIES,
        });
    }
    let top = max_size.unwrap_or(layer.len()).min(layer.len());
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..=top {
        for pick in itertools::Itertools::combinations(layer.iter().copied(), k) {
            out.push(Family::from_sorted(n, pick));
        }
    }
    Ok(out)
}

/// A random subfamily of `C([n], r)`: each member is kept independently with
/// probability `density`.
pub fn random_family<R: Rng>(rng: &mut R, n: usize, r: usize, density: f64) -> Result<Family> {
    let layer = layer_sets(n, r)?;
    let kept: Vec<ElementSet> = layer
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .collect();
    Ok(Family::from_sorted(n, kept))
}

/// Up to `max_len` random subsets of `[n]` of random sizes, deduplicated.
pub fn random_mixed_family<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Result<Family> {
    let len = rng.gen_range(0..=max_len);
    let mut sets = Vec::with_capacity(len);
    for _ in 0..len {
        let size = rng.gen_range(0..=n);
        sets.push(ElementSet::new(n, (1..=n).choose_multiple(rng, size))?);
    }
    Family::new(n, sets)
}

/// A random cross-`t`-intersecting pair in `C([n], r) × C([n], s)`.
///
/// Starts from the star pair on a random `t`-set, deletes members at random,
/// then applies random moves: replacing a member `X` by `δ_{j,i}(X)` (`i < j`)
/// or adding a random layer member, each only when the pair stays
/// cross-`t`-intersecting.
pub fn random_cross_pair<R: Rng>(
    rng: &mut R,
    n: usize,
    r: usize,
    s: usize,
    t: usize,
) -> Result<(Family, Family)> {
    if !(1 <= t && t <= r && r <= s && s <= n) {
        return Err(Error::Params(format!(
            "cross pair needs 1 ≤ t ≤ r ≤ s ≤ n, got n={n} r={r} s={s} t={t}"
        )));
    }
    let center = ElementSet::new(n, (1..=n).choose_multiple(rng, t))?;
    let keep = rng.gen_range(0.2..=1.0);
    let mut sides: [Vec<ElementSet>; 2] = [
        star_on(n, r, &center)?.sets().to_vec(),
        star_on(n, s, &center)?.sets().to_vec(),
    ];
    for side in &mut sides {
        side.retain(|_| rng.gen_bool(keep));
    }
    let uniformity = [r, s];
    let moves = if n < 2 { 0 } else { rng.gen_range(0..=3 * n) };
    for _ in 0..moves {
        let which = rng.gen_range(0..2usize);
        let candidate = if rng.gen_bool(0.75) {
            let Some(&x) = sides[which].choose(rng) else {
                continue;
            };
            let i = rng.gen_range(1..n);
            let j = rng.gen_range(i + 1..=n);
            if !x.contains(i) || x.contains(j) {
                continue;
            }
            let y = x.without(i)?.with(j)?;
            (Some(x), y)
        } else {
            let elements = (1..=n).choose_multiple(rng, uniformity[which]);
            (None, ElementSet::new(n, elements)?)
        };
        let (old, y) = candidate;
        if sides[which].contains(&y) || sides[1 - which].iter().any(|z| z.intersection_len(&y) < t)
        {
            continue;
        }
        match old {
            Some(x) => {
                let slot = sides[which]
                    .iter_mut()
                    .find(|z| **z == x)
                    .expect("chosen member");
                *slot = y;
            }
            None => sides[which].push(y),
        }
    }
    let [a, b] = sides;
    Ok((Family::new(n, a)?, Family::new(n, b)?))
}

/// A star pair on a random `t`-set after one or two random family-level
/// shifts `Δ_{x,y}` applied to both families, followed by up to two
/// feasibility-preserving single-member moves `X → δ_{j,i}(X)`.
///
/// The result is not filtered: callers that need a cross-`t`-intersecting
/// pair must check.
pub fn random_near_star_pair<R: Rng>(
    rng: &mut R,
    n: usize,
    r: usize,
    s: usize,
    t: usize,
) -> Result<(Family, Family)> {
    let center = ElementSet::new(n, (1..=n).choose_multiple(rng, t))?;
    let mut a = star_on(n, r, &center)?;
    let mut b = star_on(n, s, &center)?;
    if n < 2 {
        return Ok((a, b));
    }
    for _ in 0..rng.gen_range(1..=2) {
        let picked = (1..=n).choose_multiple(rng, 2);
        let idx = CompressionIndex::new(picked[0], picked[1], n)?;
        a = big_delta(&a, idx)?;
        b = big_delta(&b, idx)?;
    }
    let mut sides = [a.sets().to_vec(), b.sets().to_vec()];
    for _ in 0..rng.gen_range(0..=2) {
        let which = rng.gen_range(0..2usize);
        let Some(&x) = sides[which].choose(rng) else {
            continue;
        };
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        if !x.contains(i) || x.contains(j) {
            continue;
        }
        let y = x.without(i)?.with(j)?;
        if sides[which].contains(&y) || sides[1 - which].iter().any(|z| z.intersection_len(&y) < t)
        {
            continue;
        }
        let slot = sides[which]
            .iter_mut()
            .find(|z| **z == x)
            .expect("chosen member");
        *slot = y;
    }
    let [a, b] = sides;
    Ok((Family::new(n, a)?, Family::new(n, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::is_cross_t_intersecting;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_and_enumeration_agree() {
        assert_eq!(subfamily_count(6, Some(3)), 1 + 6 + 15 + 20);
        assert_eq!(subfamily_count(10, None), 1024);
        let all = subfamilies(4, 2, Some(3)).unwrap();
        assert_eq!(all.len(), 42);
        assert!(all[0].is_empty());
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), all.len());
    }

    #[test]
    fn exhaustive_guard_refuses() {
        assert!(matches!(subfamilies(6, 2, None), Err(Error::Guard { .. })));
        assert_eq!(subfamilies(6, 2, Some(3)).unwrap().len(), 576);
    }

    #[test]
    fn random_pairs_are_cross_intersecting_and_reproducible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut non_star = 0;
        for _ in 0..500 {
            let (a, b) = random_cross_pair(&mut rng, 8, 3, 3, 2).unwrap();
            assert_eq!(a.uniformity().unwrap_or(3), 3);
            assert!(is_cross_t_intersecting(&a, &b, 2).unwrap());
            if crate::intersection::common_star_center(&[a, b], 2).is_none() {
                non_star += 1;
            }
        }
        assert!(non_star > 100);
        let first = random_cross_pair(&mut ChaCha8Rng::seed_from_u64(1), 9, 2, 3, 2).unwrap();
        let again = random_cross_pair(&mut ChaCha8Rng::seed_from_u64(1), 9, 2, 3, 2).unwrap();
        assert_eq!(first, again);
    }

    #[test]
    fn random_family_density_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_family(&mut rng, 6, 2, 1.0).unwrap().len(), 15);
        assert!(random_family(&mut rng, 6, 2, 0.0).unwrap().is_empty());
    }
}
