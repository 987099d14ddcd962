//! Library results against small, deliberately naive reimplementations.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crossfam::bounds::{k_bound, n0_threshold, pair_bound};
use crossfam::compression::{big_delta, compress_all_to_fixpoint, CompressionIndex};
use crossfam::search::{max_product, max_product_k, SearchMode, SearchOptions};
use crossfam::{BigCount, Family, Params};

/// Binomials from Pascal's triangle in `u128`.
fn pascal(limit: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![1u128]];
    for n in 1..=limit {
        let prev = &rows[n - 1];
        let mut row = vec![1u128; n + 1];
        for k in 1..n {
            row[k] = prev[k - 1] + prev[k];
        }
        rows.push(row);
    }
    rows
}

fn choose(table: &[Vec<u128>], n: usize, k: usize) -> u128 {
    if k > n {
        0
    } else {
        table[n][k]
    }
}

#[test]
fn threshold_matches_direct_evaluation() {
    let c = pascal(40);
    for t in 1..=8 {
        for r in t..=10 {
            for s in r..=12 {
                let w = r + s - t;
                let first = (r * (s - t)) as u128 * choose(&c, w, t);
                let second = (r - t) as u128 * choose(&c, r, t) * choose(&c, w, t + 1);
                let expected = first.max(second) + t as u128 + 1;
                assert_eq!(
                    n0_threshold(r, s, t).unwrap(),
                    BigCount::from(expected),
                    "r={r} s={s} t={t}"
                );
            }
        }
    }
}

#[test]
fn bounds_match_direct_evaluation() {
    let c = pascal(40);
    for n in 1..=30 {
        for t in 1..=n.min(6) {
            for r in t..=n.min(8) {
                for s in r..=n.min(9) {
                    let expected = choose(&c, n - t, r - t) * choose(&c, n - t, s - t);
                    let p = Params::pair(n, r, s, t).unwrap();
                    assert_eq!(pair_bound(&p).unwrap(), BigCount::from(expected));
                    let third = choose(&c, n - t, s - t);
                    assert_eq!(
                        k_bound(n, &[r, s, s], t).unwrap(),
                        BigCount::from(expected * third)
                    );
                }
            }
        }
    }
}

type Naive = BTreeSet<Vec<usize>>;
type NaiveStep = (usize, usize, Vec<bool>);

fn naive_shift(f: &Naive, i: usize, j: usize) -> Naive {
    let mut out = Naive::new();
    for a in f {
        let moved = if a.contains(&j) && !a.contains(&i) {
            let mut m: Vec<usize> = a.iter().map(|&x| if x == j { i } else { x }).collect();
            m.sort();
            Some(m)
        } else {
            None
        };
        match moved {
            Some(m) if !f.contains(&m) => out.insert(m),
            _ => out.insert(a.clone()),
        };
    }
    out
}

/// Restart-from-(1,2) fixpoint driver; returns the result and the changing
/// indices with per-family change flags.
fn naive_fixpoint(n: usize, families: &[Naive]) -> (Vec<Naive>, Vec<NaiveStep>) {
    let mut current = families.to_vec();
    let mut steps = Vec::new();
    'outer: loop {
        for i in 1..=n {
            for j in i + 1..=n {
                let images: Vec<Naive> = current.iter().map(|f| naive_shift(f, i, j)).collect();
                let changed: Vec<bool> = images.iter().zip(&current).map(|(a, b)| a != b).collect();
                if changed.iter().any(|&c| c) {
                    current = images;
                    steps.push((i, j, changed));
                    continue 'outer;
                }
            }
        }
        return (current, steps);
    }
}

fn to_naive(f: &Family) -> Naive {
    f.iter().map(|s| s.to_vec()).collect()
}

fn random_family(rng: &mut ChaCha8Rng, n: usize) -> Family {
    let len = rng.gen_range(0..12);
    let sets: Vec<Vec<usize>> = (0..len)
        .map(|_| (1..=n).filter(|_| rng.gen_bool(0.4)).collect())
        .collect();
    Family::from_lists(n, &sets).unwrap()
}

#[test]
fn fixpoint_driver_matches_naive_driver_and_replays() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..400 {
        let n = rng.gen_range(1..=8);
        let families: Vec<Family> = (0..rng.gen_range(1..=3))
            .map(|_| random_family(&mut rng, n))
            .collect();
        let (out, trace) = compress_all_to_fixpoint(&families).unwrap();
        let naive: Vec<Naive> = families.iter().map(to_naive).collect();
        let (expected, steps) = naive_fixpoint(n, &naive);
        assert_eq!(out.iter().map(to_naive).collect::<Vec<_>>(), expected);
        let recorded: Vec<_> = trace
            .steps
            .iter()
            .map(|s| (s.index.i, s.index.j, s.changed.clone()))
            .collect();
        assert_eq!(recorded, steps);
        // Replaying the trace step by step lands on the same fixpoint.
        let mut replayed = families.clone();
        for step in &trace.steps {
            let idx = CompressionIndex::new(step.index.i, step.index.j, n).unwrap();
            for f in &mut replayed {
                *f = big_delta(f, idx).unwrap();
            }
        }
        assert_eq!(replayed, out);
    }
}

fn layer(n: usize, r: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .collect()
}

fn submasks(len: usize) -> impl Iterator<Item = u64> {
    0..1u64 << len
}

fn pick(layer: &[u32], mask: u64) -> Vec<u32> {
    (0..layer.len())
        .filter(|&k| mask >> k & 1 == 1)
        .map(|k| layer[k])
        .collect()
}

fn cross(a: &[u32], b: &[u32], t: usize) -> bool {
    a.iter()
        .all(|x| b.iter().all(|y| (x & y).count_ones() as usize >= t))
}

fn as_lists(n: usize, sets: &[u32]) -> Vec<Vec<usize>> {
    sets.iter()
        .map(|m| (1..=n).filter(|e| m >> (e - 1) & 1 == 1).collect())
        .collect()
}

/// Every pair of nonempty subfamilies, kept when cross-t-intersecting.
fn naive_pair_optimum(n: usize, r: usize, s: usize, t: usize) -> (u64, BTreeSet<Vec<Family>>) {
    let (la, lb) = (layer(n, r), layer(n, s));
    let mut best = 0u64;
    let mut hits = BTreeSet::new();
    for ma in submasks(la.len()).skip(1) {
        let a = pick(&la, ma);
        for mb in submasks(lb.len()).skip(1) {
            let b = pick(&lb, mb);
            if !cross(&a, &b, t) {
                continue;
            }
            let product = (a.len() * b.len()) as u64;
            if product > best {
                best = product;
                hits.clear();
            }
            if product == best {
                hits.insert(vec![
                    Family::from_lists(n, &as_lists(n, &a)).unwrap(),
                    Family::from_lists(n, &as_lists(n, &b)).unwrap(),
                ]);
            }
        }
    }
    (best, hits)
}

#[test]
fn pair_search_matches_naive_enumeration() {
    let opts = SearchOptions::default();
    for &(n, r, s, t) in &[
        (2, 1, 1, 1),
        (3, 1, 1, 1),
        (4, 1, 1, 1),
        (3, 1, 2, 1),
        (4, 1, 2, 1),
        (4, 1, 3, 1),
        (3, 2, 2, 1),
        (4, 2, 2, 1),
        (4, 2, 2, 2),
        (5, 1, 2, 1),
        (4, 2, 3, 2),
        (5, 2, 2, 2),
    ] {
        let params = Params::pair(n, r, s, t).unwrap();
        let (best, hits) = naive_pair_optimum(n, r, s, t);
        for mode in [
            SearchMode::Brute,
            SearchMode::Closure,
            SearchMode::Compressed,
        ] {
            let report = max_product(&params, mode, &opts).unwrap();
            assert_eq!(report.optimum, BigCount::from(best), "{params} {mode:?}");
            if mode.enumerates_all_witnesses() {
                let got: BTreeSet<Vec<Family>> = report.witnesses.into_iter().collect();
                assert_eq!(got, hits, "{params} {mode:?}");
            } else {
                assert!(report.witnesses.iter().all(|w| hits.contains(w)));
            }
        }
    }
}

#[test]
fn k_family_search_matches_naive_enumeration() {
    let opts = SearchOptions::default();
    for &(n, ref rs, t) in &[
        (3usize, vec![1usize, 1, 1], 1usize),
        (4, vec![1, 1, 1], 1),
        (4, vec![1, 1, 2], 1),
        (3, vec![1, 2, 2], 1),
    ] {
        let layers: Vec<Vec<u32>> = rs.iter().map(|&r| layer(n, r)).collect();
        let mut best = 0u64;
        let mut hits = BTreeSet::new();
        let sizes: Vec<u64> = layers.iter().map(|l| 1u64 << l.len()).collect();
        let total: u64 = sizes.iter().product();
        for code in 0..total {
            let mut rest = code;
            let picks: Vec<Vec<u32>> = layers
                .iter()
                .zip(&sizes)
                .map(|(l, &size)| {
                    let m = rest % size;
                    rest /= size;
                    pick(l, m)
                })
                .collect();
            if picks.iter().any(Vec::is_empty) {
                continue;
            }
            let ok = (0..picks.len())
                .all(|p| (p + 1..picks.len()).all(|q| cross(&picks[p], &picks[q], t)));
            if !ok {
                continue;
            }
            let product: u64 = picks.iter().map(|p| p.len() as u64).product();
            if product > best {
                best = product;
                hits.clear();
            }
            if product == best {
                hits.insert(
                    picks
                        .iter()
                        .map(|p| Family::from_lists(n, &as_lists(n, p)).unwrap())
                        .collect::<Vec<_>>(),
                );
            }
        }
        let params = Params::k_ary(n, rs.clone(), t).unwrap();
        let report = max_product_k(&params, &opts).unwrap();
        assert_eq!(report.optimum, BigCount::from(best), "{params}");
        let got: BTreeSet<Vec<Family>> = report.witnesses.into_iter().collect();
        assert_eq!(got, hits, "{params}");
    }
}
