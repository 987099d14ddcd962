//! Enumeration of left-compressed first-layer families.
//!
//! Within one layer a family is left-compressed iff it is a down-set of the
//! shifting order, whose cover relation moves one element `x` to `x − 1`.
//! The canonical layer order extends the shifting order, so every down-set
//! is built exactly once by adding indices in increasing order, each only
//! after all of its lower covers. The compatible family of a compressed
//! family is itself compressed, so the optimum over these pairs equals the
//! global optimum.

use std::collections::HashMap;

use super::bits::{mask_below, Bits, Incidence};
use super::closure::select;
use super::{Best, RawOutcome};
use crate::setcore::{layer_sets, ElementSet, Family, Params};
use crate::Result;

struct Walk<'a> {
    inc: &'a Incidence,
    lower_covers: Vec<u64>,
    m: usize,
}

impl Walk<'_> {
    fn visit(&self, a: u64, b: &Bits, start: usize, best: &mut Best<u64>, nodes: &mut u64) {
        *nodes += 1;
        let a_len = a.count_ones() as u128;
        let b_len = b.count() as u128;
        if a != 0 {
            best.offer(a_len * b_len, || a);
        }
        for j in start..self.m {
            let remaining = (self.inc.full_a() & !mask_below(j)).count_ones() as u128;
            if (a_len + remaining) * b_len < best.value {
                break;
            }
            if self.lower_covers[j] & !a != 0 {
                continue;
            }
            let b2 = b.and(&self.inc.rows[j]);
            if b2.is_zero() {
                continue;
            }
            self.visit(a | 1u64 << j, &b2, j + 1, best, nodes);
        }
    }
}

fn lower_covers(layer: &[ElementSet]) -> Vec<u64> {
    let index: HashMap<ElementSet, usize> =
        layer.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    layer
        .iter()
        .map(|set| {
            let mut mask = 0u64;
            for x in set.iter() {
                if x > 1 && !set.contains(x - 1) {
                    let down = set
                        .without(x)
                        .and_then(|s| s.with(x - 1))
                        .expect("elements stay in range");
                    mask |= 1u64 << index[&down];
                }
            }
            mask
        })
        .collect()
}

pub(super) fn run(params: &Params, seed: u128) -> Result<RawOutcome> {
    let n = params.n();
    let inc = Incidence::new(
        layer_sets(n, params.r())?,
        layer_sets(n, params.s())?,
        params.t(),
    );
    let walk = Walk {
        lower_covers: lower_covers(&inc.a_layer),
        m: inc.a_layer.len(),
        inc: &inc,
    };
    let mut best = Best::new(seed);
    let mut nodes = 0;
    walk.visit(0, &Bits::ones(inc.b_layer.len()), 0, &mut best, &mut nodes);

    let tuples = best
        .hits
        .iter()
        .map(|&mask| {
            let a = Family::new(n, select(&inc.a_layer, mask))?;
            let b = Family::new(n, inc.compat(mask).iter_ones().map(|k| inc.b_layer[k]))?;
            Ok(vec![a, b])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawOutcome {
        optimum: best.value,
        tuples,
        nodes,
    })
}
