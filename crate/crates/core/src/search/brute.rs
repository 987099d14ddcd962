use rayon::prelude::*;

use super::{Best, RawOutcome};
use crate::setcore::{generate_uniform, ElementSet, Family, Params};
use crate::Result;

/// Every nonempty `𝒜 ⊆ C([n], r)` (optionally also `∅`), with `ℬ` the full
/// compatible family recomputed from scratch for each `𝒜`.
pub(super) fn run(params: &Params, include_empty: bool) -> Result<RawOutcome> {
    let (n, t) = (params.n(), params.t());
    let a_layer = generate_uniform(n, params.r())?;
    let b_layer = generate_uniform(n, params.s())?;
    let m = a_layer.len();
    let first = if include_empty { 0u64 } else { 1u64 };
    let end = 1u64 << m;

    let compatible = |mask: u64| -> Vec<ElementSet> {
        let members: Vec<&ElementSet> = a_layer
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, s)| s)
            .collect();
        b_layer
            .iter()
            .filter(|b| members.iter().all(|a| a.intersection_len(b) >= t))
            .copied()
            .collect()
    };

    let best = (first..end)
        .into_par_iter()
        .fold(
            || Best::<u64>::new(0),
            |mut best, mask| {
                let product = mask.count_ones() as u128 * compatible(mask).len() as u128;
                if product > 0 {
                    best.offer(product, || mask);
                }
                best
            },
        )
        .collect::<Vec<_>>();
    let best = Best::merge(best, 0);

    let tuples = best
        .hits
        .iter()
        .map(|&mask| {
            let a = Family::new(
                n,
                a_layer
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, s)| *s),
            )?;
            let b = Family::new(n, compatible(mask))?;
            Ok(vec![a, b])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawOutcome {
        optimum: best.value,
        tuples,
        nodes: end - first,
    })
}
