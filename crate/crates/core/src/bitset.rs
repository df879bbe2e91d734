//! Fixed-width bitsets used for neighborhood arithmetic.

/// A bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 != 0
    }

    pub fn zero(&mut self) {
        self.words.fill(0);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Removes from `self` every bit set in `other`.
    pub fn and_not_assign(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// `|self ∩ other|`.
    pub fn intersection_count(&self, other: &BitSet) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// Per-vertex neighbor bitsets for a graph.
pub struct AdjBitsets {
    pub rows: Vec<BitSet>,
}

impl AdjBitsets {
    pub fn build(g: &crate::graph::Graph) -> Self {
        let n = g.n();
        let mut rows = vec![BitSet::new(n); n];
        for e in g.edges() {
            rows[e.u() as usize].set(e.v() as usize);
            rows[e.v() as usize].set(e.u() as usize);
        }
        AdjBitsets { rows }
    }

    /// `|N(u) ∩ N(v)|`.
    pub fn shared_neighbors(&self, u: crate::graph::Vertex, v: crate::graph::Vertex) -> usize {
        self.rows[u as usize].intersection_count(&self.rows[v as usize])
    }

    /// External neighborhood N(S) \ S as a bitset, given S as sorted indices.
    pub fn external_neighborhood(&self, n: usize, s: &[usize]) -> BitSet {
        let mut acc = BitSet::new(n);
        for &v in s {
            acc.or_assign(&self.rows[v]);
        }
        for &v in s {
            acc.clear(v);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut b = BitSet::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert!(b.get(0) && b.get(64) && b.get(129));
        assert!(!b.get(1));
        assert_eq!(b.count(), 3);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.clear(64);
        assert_eq!(b.count(), 2);
    }

    #[test]
    fn intersection_count() {
        let mut a = BitSet::new(100);
        let mut b = BitSet::new(100);
        for i in (0..100).step_by(2) {
            a.set(i);
        }
        for i in (0..100).step_by(3) {
            b.set(i);
        }
        // multiples of 6 in 0..100
        assert_eq!(a.intersection_count(&b), 17);
    }
}
