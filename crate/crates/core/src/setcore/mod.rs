//! Ground universe, sets, families, uniform layers and exact counts.

mod count;
mod element_set;
mod family;
pub mod io;
mod params;

use itertools::Itertools;

pub use count::{binomial, BigCount};
pub use element_set::{ElementSet, Elements, MAX_UNIVERSE};
pub use family::Family;
pub use io::{read_family, write_family};
pub use params::Params;

use crate::{Error, Result};

/// The full layer `C([n], r)` in canonical order.
pub fn generate_uniform(n: usize, r: usize) -> Result<Family> {
    ElementSet::empty(n)?;
    if r > n {
        return Err(Error::Params(format!("r = {r} exceeds n = {n}")));
    }
    // itertools yields combinations in lexicographic order, which is the
    // canonical order within one layer.
    let sets = (1..=n)
        .combinations(r)
        .map(|c| ElementSet::new(n, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Family::from_sorted(n, sets))
}

/// `generate_uniform` without the `Family` wrapper, for callers that index
/// into the layer.
pub(crate) fn layer_sets(n: usize, r: usize) -> Result<Vec<ElementSet>> {
    Ok(generate_uniform(n, r)?.sets().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_layers() {
        assert_eq!(
            generate_uniform(3, 2).unwrap().to_lists(),
            vec![vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        let zero = generate_uniform(4, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero.sets()[0].is_empty());
        assert_eq!(generate_uniform(5, 2).unwrap().len(), 10);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_uniform(3, 4).is_err());
        assert!(generate_uniform(0, 0).is_err());
    }

    #[test]
    fn layer_sizes_match_binomials() {
        for n in 1..=12usize {
            for r in 0..=n {
                let layer = generate_uniform(n, r).unwrap();
                assert_eq!(BigCount::from(layer.len()), binomial(n as u64, r as u64));
                assert_eq!(layer.uniformity(), Some(r));
            }
        }
    }
}
