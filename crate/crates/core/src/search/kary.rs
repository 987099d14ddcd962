//! Exhaustive search over k pairwise cross-t-intersecting families.
//!
//! Families are fixed one layer at a time: the `i`-th family ranges over all
//! subfamilies of the members of its layer compatible with every family
//! already chosen, and the last family is the full compatible remainder
//! (a maximal last family is forced at any positive optimum).

use super::bits::Bits;
use super::closure::select;
use super::{
    build_report, layer_size, Best, RawOutcome, SearchMode, SearchOptions, SearchReport,
    DEFAULT_K_GUARD,
};
use crate::setcore::{layer_sets, ElementSet, Family, Params};
use crate::{Error, Result};

struct Layers {
    sets: Vec<Vec<ElementSet>>,
    /// `rel[p][q][a]`: members of layer `q` meeting member `a` of layer `p`
    /// in at least `t` elements.
    rel: Vec<Vec<Vec<Bits>>>,
}

impl Layers {
    fn new(params: &Params) -> Result<Self> {
        let sets = params
            .uniformities()
            .iter()
            .map(|&r| layer_sets(params.n(), r))
            .collect::<Result<Vec<_>>>()?;
        let k = sets.len();
        let t = params.t();
        let rel = (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| {
                        sets[p]
                            .iter()
                            .map(|a| {
                                let mut row = Bits::zeros(sets[q].len());
                                for (bi, b) in sets[q].iter().enumerate() {
                                    if a.intersection_len(b) >= t {
                                        row.set(bi);
                                    }
                                }
                                row
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Layers { sets, rel })
    }
}

struct Enumerator<'a> {
    layers: &'a Layers,
    include_empty: bool,
    best: Best<(Vec<u64>, Bits)>,
    nodes: u64,
}

impl Enumerator<'_> {
    fn level(&mut self, p: usize, chosen: &mut Vec<u64>, allowed: &[Bits]) {
        let k = self.layers.sets.len();
        if p == k - 1 {
            self.nodes += 1;
            let last = &allowed[p];
            let product: u128 = chosen
                .iter()
                .map(|m| m.count_ones() as u128)
                .product::<u128>()
                * last.count() as u128;
            // Product-zero tuples (possible only with `include_empty`) never
            // compete with the star tuple.
            if product > 0 {
                self.best.offer(product, || (chosen.clone(), last.clone()));
            }
            return;
        }
        // Layers before the last are guarded to at most 64 members.
        let region = allowed[p].iter_ones().fold(0u64, |m, i| m | 1u64 << i);
        let mut sub = region;
        loop {
            if sub != 0 || self.include_empty {
                let mut next: Vec<Bits> = allowed.to_vec();
                let mut rest = sub;
                while rest != 0 {
                    let a = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    for (q, slot) in next.iter_mut().enumerate().skip(p + 1) {
                        *slot = slot.and(&self.layers.rel[p][q][a]);
                    }
                }
                chosen.push(sub);
                self.level(p + 1, chosen, &next);
                chosen.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & region;
        }
    }
}

/// Exact optimum of `∏|𝒜ᵢ|` over nonempty, pairwise cross-t-intersecting
/// `𝒜ᵢ ⊆ C([n], rᵢ)`, with every optimal tuple.
///
/// The guard caps `∏_{i<k} 2^{C(n, rᵢ)}`, the worst-case number of
/// enumerated tuples.
pub fn max_product_k(params: &Params, options: &SearchOptions) -> Result<SearchReport> {
    let guard = options.guard.unwrap_or(DEFAULT_K_GUARD);
    let k = params.k();
    let mut work: u128 = 1;
    for &r in &params.uniformities()[..k - 1] {
        let size = layer_size(params.n(), r);
        if size > 64 {
            return Err(Error::Guard {
                what: format!("C({}, {r})", params.n()),
                size,
                limit: 64,
            });
        }
        work = work.saturating_mul(1u128 << size);
    }
    if work > guard {
        return Err(Error::Guard {
            what: "enumerated tuples".into(),
            size: work,
            limit: guard,
        });
    }
    let raw = options.run(|| run(params, options.include_empty))??;
    Ok(build_report(
        params,
        SearchMode::Brute,
        raw,
        options.witness_limit,
        true,
    ))
}

fn run(params: &Params, include_empty: bool) -> Result<RawOutcome> {
    let layers = Layers::new(params)?;
    let allowed: Vec<Bits> = layers.sets.iter().map(|l| Bits::ones(l.len())).collect();
    let mut e = Enumerator {
        layers: &layers,
        include_empty,
        best: Best::new(0),
        nodes: 0,
    };
    e.level(0, &mut Vec::new(), &allowed);
    let n = params.n();
    let k = layers.sets.len();
    let tuples = e
        .best
        .hits
        .iter()
        .map(|(masks, last)| {
            let mut tuple = masks
                .iter()
                .enumerate()
                .map(|(p, &m)| Family::new(n, select(&layers.sets[p], m)))
                .collect::<Result<Vec<_>>>()?;
            tuple.push(Family::new(
                n,
                last.iter_ones().map(|i| layers.sets[k - 1][i]),
            )?);
            Ok(tuple)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawOutcome {
        optimum: e.best.value,
        tuples,
        nodes: e.nodes,
    })
}
