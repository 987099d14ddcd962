//! Close-by-one enumeration of closed `𝒜` with bound pruning.
//!
//! A first-layer family is closed when it equals the set of all `r`-sets
//! compatible with its compatible family. Each closed family is reached from
//! exactly one parent: adding index `j` and closing must not introduce any
//! index below `j` (the canonicity test). Subtrees under distinct first
//! additions are independent and run in parallel, each seeded with the star
//! product, so node counts do not depend on scheduling.

use rayon::prelude::*;

use super::bits::{mask_below, Bits, Incidence};
use super::{Best, RawOutcome};
use crate::setcore::{layer_sets, Family, Params};
use crate::Result;

struct Node<'a> {
    inc: &'a Incidence,
    m: usize,
}

struct State {
    best: Best<u64>,
    nodes: u64,
}

impl Node<'_> {
    /// Count of first-layer indices `≥ from` outside `a`.
    #[inline]
    fn free_from(&self, a: u64, from: usize) -> u32 {
        (!a & self.inc.full_a() & !mask_below(from)).count_ones()
    }

    fn visit(&self, a: u64, b: &Bits, start: usize, st: &mut State) {
        st.nodes += 1;
        let a_len = a.count_ones() as u128;
        let b_len = b.count() as u128;
        if a != 0 {
            st.best.offer(a_len * b_len, || a);
        }
        for j in start..self.m {
            if a >> j & 1 == 1 {
                continue;
            }
            // Descendants only add indices ≥ j and can only shrink ℬ.
            if (a_len + self.free_from(a, j) as u128) * b_len < st.best.value {
                break;
            }
            if let Some((a2, b2)) = self.extend(a, b, j, st.best.value) {
                self.visit(a2, &b2, j + 1, st);
            }
        }
    }

    /// Adds index `j`, closes, and applies the canonicity test and the
    /// bound on the child.
    #[inline]
    fn extend(&self, a: u64, b: &Bits, j: usize, best: u128) -> Option<(u64, Bits)> {
        let b2 = b.and(&self.inc.rows[j]);
        if b2.is_zero() {
            return None;
        }
        let b2_len = b2.count() as u128;
        let a_len = a.count_ones() as u128;
        if (a_len + self.free_from(a, j) as u128) * b2_len < best {
            return None;
        }
        let a2 = self.inc.closure_of(&b2);
        let low = mask_below(j);
        if a2 & low != a & low {
            return None;
        }
        Some((a2, b2))
    }
}

pub(super) fn run(params: &Params, seed: u128) -> Result<RawOutcome> {
    let n = params.n();
    let inc = Incidence::new(
        layer_sets(n, params.r())?,
        layer_sets(n, params.s())?,
        params.t(),
    );
    let m = inc.a_layer.len();
    let node = Node { inc: &inc, m };

    let root_b = Bits::ones(inc.b_layer.len());
    let root_a = inc.closure_of(&root_b);
    let mut root = State {
        best: Best::new(seed),
        nodes: 1,
    };
    if root_a != 0 {
        let product = root_a.count_ones() as u128 * root_b.count() as u128;
        root.best.offer(product, || root_a);
    }

    let parts: Vec<State> = (0..m)
        .into_par_iter()
        .filter(|&j| root_a >> j & 1 == 0)
        .map(|j| {
            let mut st = State {
                best: Best::new(seed),
                nodes: 0,
            };
            if let Some((a2, b2)) = node.extend(root_a, &root_b, j, seed) {
                node.visit(a2, &b2, j + 1, &mut st);
            }
            st
        })
        .collect();

    let nodes = root.nodes + parts.iter().map(|p| p.nodes).sum::<u64>();
    let mut all = vec![root.best];
    all.extend(parts.into_iter().map(|p| p.best));
    let best = Best::merge(all, seed);

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

pub(super) fn select<T: Copy>(layer: &[T], mask: u64) -> impl Iterator<Item = T> + '_ {
    layer
        .iter()
        .enumerate()
        .filter(move |(k, _)| mask >> k & 1 == 1)
        .map(|(_, s)| *s)
}
