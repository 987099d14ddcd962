//! Threshold `n₀(r, s, t)` and the extremal product bounds.
//!
//! Everything here is exact integer arithmetic.

use crate::setcore::{binomial, BigCount, Params};
use crate::{Error, Result};

/// `max{ r(s−t)·C(r+s−t, t), (r−t)·C(r, t)·C(r+s−t, t+1) } + t + 1`
/// for `1 ≤ t ≤ r ≤ s`.
pub fn n0_threshold(r: usize, s: usize, t: usize) -> Result<BigCount> {
    if !(1 <= t && t <= r && r <= s) {
        return Err(Error::Params(format!(
            "n0 needs 1 ≤ t ≤ r ≤ s, got r={r} s={s} t={t}"
        )));
    }
    let (r, s, t) = (r as u64, s as u64, t as u64);
    let w = r + s - t;
    let first = BigCount::from(r * (s - t)) * binomial(w, t);
    let second = BigCount::from(r - t) * binomial(r, t) * binomial(w, t + 1);
    Ok(first.max(second) + BigCount::from(t + 1))
}

/// `C(n−t, r−t)·C(n−t, s−t)` for a pair instance.
pub fn pair_bound(params: &Params) -> Result<BigCount> {
    if !params.is_pair() {
        return Err(Error::Params(format!(
            "pair bound needs two uniformities, got {}",
            params.k()
        )));
    }
    Ok(k_product(params))
}

/// `∏ C(n−t, rᵢ−t)` over all uniformities.
pub fn k_bound(n: usize, uniformities: &[usize], t: usize) -> Result<BigCount> {
    let params = Params::k_ary(n, uniformities.to_vec(), t)?;
    Ok(k_product(&params))
}

fn k_product(params: &Params) -> BigCount {
    let (n, t) = (params.n() as u64, params.t() as u64);
    params
        .uniformities()
        .iter()
        .map(|&r| binomial(n - t, r as u64 - t))
        .product()
}

/// The bound for `params`, whatever its arity.
pub fn product_bound(params: &Params) -> BigCount {
    k_product(params)
}

/// `n ≥ n₀(r_{k−1}, r_k, t)`.
pub fn threshold_applicable(params: &Params) -> bool {
    let (a, b) = params.top_two();
    // Params already guarantees 1 ≤ t ≤ a ≤ b.
    let n0 = n0_threshold(a, b, params.t()).expect("validated params");
    BigCount::from(params.n()) >= n0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn n0_examples() {
        assert_eq!(n0_threshold(1, 1, 1).unwrap(), big(2));
        assert_eq!(n0_threshold(2, 2, 1).unwrap(), big(8));
        assert_eq!(n0_threshold(2, 3, 2).unwrap(), big(9));
        assert!(n0_threshold(2, 1, 1).is_err());
        assert!(n0_threshold(1, 1, 0).is_err());
        assert!(n0_threshold(1, 2, 2).is_err());
    }

    #[test]
    fn pair_bound_examples() {
        assert_eq!(
            pair_bound(&Params::pair(4, 1, 2, 1).unwrap()).unwrap(),
            big(3)
        );
        assert_eq!(
            pair_bound(&Params::pair(3, 2, 2, 2).unwrap()).unwrap(),
            big(1)
        );
        assert_eq!(
            pair_bound(&Params::pair(8, 2, 2, 1).unwrap()).unwrap(),
            big(49)
        );
        assert!(pair_bound(&Params::k_ary(5, vec![1, 1, 2], 1).unwrap()).is_err());
    }

    #[test]
    fn k_bound_examples() {
        assert_eq!(k_bound(5, &[1, 1, 2], 1).unwrap(), big(4));
        assert_eq!(k_bound(4, &[2, 2], 2).unwrap(), big(1));
        assert_eq!(k_bound(6, &[2, 2, 2], 1).unwrap(), big(125));
        assert!(k_bound(6, &[2], 1).is_err());
        assert!(k_bound(6, &[2, 1], 1).is_err());
    }

    #[test]
    fn applicability_examples() {
        assert!(threshold_applicable(&Params::pair(2, 1, 1, 1).unwrap()));
        assert!(!threshold_applicable(&Params::pair(7, 2, 2, 1).unwrap()));
        assert!(threshold_applicable(&Params::pair(9, 2, 3, 2).unwrap()));
        // k-ary: only the two largest uniformities matter.
        let p = Params::k_ary(4, vec![1, 1, 2], 1).unwrap();
        assert!(threshold_applicable(&p));
        assert_eq!(n0_threshold(1, 2, 1).unwrap(), big(4));
    }

    #[test]
    fn pair_bound_equals_k_bound_on_grid() {
        for n in 1..=12 {
            for t in 1..=n {
                for r in t..=n {
                    for s in r..=n {
                        let p = Params::pair(n, r, s, t).unwrap();
                        assert_eq!(pair_bound(&p).unwrap(), k_bound(n, &[r, s], t).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn n0_symmetry_and_monotonicity() {
        for t in 1..=6 {
            for r in t..=6 {
                for s in r..6 {
                    assert!(n0_threshold(r, s, t).unwrap() <= n0_threshold(r, s + 1, t).unwrap());
                }
            }
        }
    }
}
