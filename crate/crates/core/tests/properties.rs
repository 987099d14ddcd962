use proptest::prelude::*;

use crossfam::compression::{
    big_delta, compress_pair_to_fixpoint, compress_to_fixpoint, delta, is_left_compressed,
    potential, CompressionIndex,
};
use crossfam::intersection::{compatible_family, is_cross_t_intersecting, recognize_star, star_on};
use crossfam::setcore::{read_family, write_family};
use crossfam::{binomial, generate_uniform, BigCount, ElementSet, Family};

fn family_over(n: usize, masks: Vec<u128>) -> Family {
    let sets = masks
        .into_iter()
        .map(|m| ElementSet::from_bits(n, m).unwrap());
    Family::new(n, sets).unwrap()
}

/// An arbitrary family over `[n]`, `1 ≤ n ≤ 9`.
fn any_family() -> impl Strategy<Value = Family> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec(0u128..(1u128 << n), 0..16).prop_map(move |m| family_over(n, m))
    })
}

/// A subfamily of `C([n], r)` given by a membership mask over the layer.
fn uniform_family(n: usize, r: usize) -> impl Strategy<Value = Family> {
    let layer = generate_uniform(n, r).unwrap().sets().to_vec();
    prop::collection::vec(any::<bool>(), layer.len()).prop_map(move |keep| {
        let sets = layer.iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| *s);
        Family::new(n, sets).unwrap()
    })
}

/// `(n, r, s, t)` with `1 ≤ t ≤ r ≤ s ≤ n ≤ 7`.
fn small_params() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (2usize..=7)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, s)| (Just(n), 1..=s, Just(s)))
        .prop_flat_map(|(n, r, s)| (Just(n), Just(r), Just(s), 1..=r))
}

fn index_for(n: usize) -> impl Strategy<Value = CompressionIndex> {
    (1..=n, 1..=n)
        .prop_filter("distinct", |(i, j)| i != j)
        .prop_map(move |(i, j)| CompressionIndex::new(i, j, n).unwrap())
}

fn family_and_index() -> impl Strategy<Value = (Family, CompressionIndex)> {
    any_family()
        .prop_filter("needs two elements", |f| f.universe_size() >= 2)
        .prop_flat_map(|f| {
            let n = f.universe_size();
            (Just(f), index_for(n))
        })
}

/// A cross-`t`-intersecting pair obtained by thinning `𝒜` until `ℬ` fits.
fn cross_pair() -> impl Strategy<Value = (Family, Family, usize, usize, usize)> {
    small_params().prop_flat_map(|(n, r, s, t)| {
        (uniform_family(n, r), uniform_family(n, s)).prop_map(move |(a, b)| {
            let compat = compatible_family(&a, s, t).unwrap();
            let b = Family::new(n, b.iter().filter(|x| compat.contains(x)).copied()).unwrap();
            (a, b, r, s, t)
        })
    })
}

proptest! {
    #[test]
    fn text_format_round_trips(f in any_family()) {
        let text = write_family(&f);
        prop_assert_eq!(read_family(&text, f.universe_size()).unwrap(), f);
    }

    #[test]
    fn delta_keeps_cardinality_and_is_idempotent((f, idx) in family_and_index()) {
        for a in &f {
            let d = delta(a, idx).unwrap();
            prop_assert_eq!(d.cardinality(), a.cardinality());
        }
        let image = big_delta(&f, idx).unwrap();
        prop_assert_eq!(image.len(), f.len());
        prop_assert_eq!(big_delta(&image, idx).unwrap(), image.clone());
        if idx.is_left() && image != f {
            prop_assert!(potential(&image) < potential(&f));
        }
    }

    #[test]
    fn fixpoint_is_compressed_with_decreasing_trace(f in any_family()) {
        let (fixed, trace) = compress_to_fixpoint(&f);
        prop_assert!(is_left_compressed(&fixed));
        prop_assert_eq!(fixed.len(), f.len());
        prop_assert!(trace.is_strictly_decreasing());
        prop_assert_eq!(trace.final_potential, potential(&fixed));
        let (again, second) = compress_to_fixpoint(&fixed);
        prop_assert_eq!(again, fixed);
        prop_assert!(second.steps.is_empty());
    }

    #[test]
    fn joint_shifts_preserve_cross_intersection((a, b, _r, _s, t) in cross_pair(), i in 1usize..=7, j in 1usize..=7) {
        let n = a.universe_size();
        prop_assume!(i != j && i <= n && j <= n);
        let idx = CompressionIndex::new(i, j, n).unwrap();
        prop_assert!(is_cross_t_intersecting(&a, &b, t).unwrap());
        let (da, db) = (big_delta(&a, idx).unwrap(), big_delta(&b, idx).unwrap());
        prop_assert!(is_cross_t_intersecting(&da, &db, t).unwrap());
    }

    #[test]
    fn compressed_pairs_meet_in_the_window((a, b, r, s, t) in cross_pair()) {
        let n = a.universe_size();
        let (ca, cb, trace) = compress_pair_to_fixpoint(&a, &b).unwrap();
        prop_assert!(trace.is_strictly_decreasing());
        prop_assert!(is_cross_t_intersecting(&ca, &cb, t).unwrap());
        let window = ElementSet::prefix(n, (r + s - t).min(n)).unwrap();
        for x in &ca {
            for y in &cb {
                prop_assert!(x.intersection(y).intersection(&window).cardinality() >= t);
            }
        }
    }

    #[test]
    fn compatible_family_is_the_largest_partner((a, b, _r, s, t) in cross_pair()) {
        let compat = compatible_family(&a, s, t).unwrap();
        prop_assert!(is_cross_t_intersecting(&a, &compat, t).unwrap());
        prop_assert!(b.is_subfamily_of(&compat));
        for x in generate_uniform(a.universe_size(), s).unwrap().iter() {
            let single = Family::new(a.universe_size(), [*x]).unwrap();
            prop_assert_eq!(
                compat.contains(x),
                is_cross_t_intersecting(&a, &single, t).unwrap()
            );
        }
    }

    #[test]
    fn stars_have_binomial_size_and_are_recognized(
        (n, r, _s, t) in small_params(),
        seed in any::<u64>(),
    ) {
        // A t-subset of [n] picked from the seed.
        let centers = generate_uniform(n, t).unwrap();
        let center = centers.sets()[(seed % centers.len() as u64) as usize];
        let star = star_on(n, r, &center).unwrap();
        prop_assert_eq!(BigCount::from(star.len()), binomial((n - t) as u64, (r - t) as u64));
        prop_assert!(star.iter().all(|x| center.is_subset(x)));
        let found = recognize_star(&star, t).unwrap().expect("a full star");
        prop_assert_eq!(star_on(n, r, &found).unwrap(), star.clone());
        if star.len() > 1 {
            let mut fewer = star.sets().to_vec();
            fewer.pop();
            prop_assert_eq!(recognize_star(&Family::new(n, fewer).unwrap(), t).unwrap(), None);
        }
    }
}
