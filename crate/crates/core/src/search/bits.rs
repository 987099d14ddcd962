use crate::setcore::ElementSet;

/// Fixed-length bitset over layer indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Self::zeros(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }
}

/// The bipartite "t-intersects" relation between two uniform layers.
pub(crate) struct Incidence {
    pub a_layer: Vec<ElementSet>,
    pub b_layer: Vec<ElementSet>,
    /// `rows[a]`: members of the second layer meeting `a_layer[a]` in ≥ t elements.
    pub rows: Vec<Bits>,
    /// `cols[b]`: same relation seen from the second layer, as a mask over
    /// the first. Only built when the first layer has at most 64 members.
    pub cols: Vec<u64>,
}

impl Incidence {
    pub fn new(a_layer: Vec<ElementSet>, b_layer: Vec<ElementSet>, t: usize) -> Self {
        let mut rows = vec![Bits::zeros(b_layer.len()); a_layer.len()];
        let narrow = a_layer.len() <= 64;
        let mut cols = if narrow {
            vec![0u64; b_layer.len()]
        } else {
            Vec::new()
        };
        for (ai, a) in a_layer.iter().enumerate() {
            for (bi, b) in b_layer.iter().enumerate() {
                if a.intersection_len(b) >= t {
                    rows[ai].set(bi);
                    if narrow {
                        cols[bi] |= 1u64 << ai;
                    }
                }
            }
        }
        Incidence {
            a_layer,
            b_layer,
            rows,
            cols,
        }
    }

    pub fn full_a(&self) -> u64 {
        mask_below(self.a_layer.len())
    }

    /// Members of the second layer compatible with every member of `a`.
    pub fn compat(&self, a: u64) -> Bits {
        let mut acc = Bits::ones(self.b_layer.len());
        let mut rest = a;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc = acc.and(&self.rows[i]);
        }
        acc
    }

    /// Members of the first layer compatible with every member of `b`.
    pub fn closure_of(&self, b: &Bits) -> u64 {
        b.iter_ones()
            .fold(self.full_a(), |acc, bi| acc & self.cols[bi])
    }
}

#[inline]
pub(crate) fn mask_below(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
