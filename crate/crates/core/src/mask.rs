//! Vertex bitsets used for edge disjointness tests.
//!
//! Orders up to 64 fit a single machine word; larger orders spill to a boxed
//! multi-word slice. All masks built for the same `n` share a representation.

use crate::hypergraph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexMask {
    Word(u64),
    Words(Box<[u64]>),
}

impl VertexMask {
    pub fn empty(n: usize) -> Self {
        if n <= 64 {
            VertexMask::Word(0)
        } else {
            VertexMask::Words(vec![0; n.div_ceil(64)].into_boxed_slice())
        }
    }

    pub fn from_vertices(n: usize, vertices: &[Vertex]) -> Self {
        let mut mask = Self::empty(n);
        for &v in vertices {
            mask.insert(v);
        }
        mask
    }

    pub fn full(n: usize) -> Self {
        let mut mask = Self::empty(n);
        for v in 0..n as Vertex {
            mask.insert(v);
        }
        mask
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        match self {
            VertexMask::Word(w) => std::slice::from_ref(w),
            VertexMask::Words(ws) => ws,
        }
    }

    #[inline]
    fn words_mut(&mut self) -> &mut [u64] {
        match self {
            VertexMask::Word(w) => std::slice::from_mut(w),
            VertexMask::Words(ws) => ws,
        }
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        let v = v as usize;
        self.words_mut()[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        let v = v as usize;
        self.words_mut()[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        let v = v as usize;
        self.words()
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &VertexMask) -> bool {
        self.words()
            .iter()
            .zip(other.words())
            .all(|(a, b)| a & b == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &VertexMask) -> bool {
        self.words()
            .iter()
            .zip(other.words())
            .all(|(a, b)| a & !b == 0)
    }

    /// In-place union.
    #[inline]
    pub fn union_with(&mut self, other: &VertexMask) {
        for (a, b) in self.words_mut().iter_mut().zip(other.words()) {
            *a |= b;
        }
    }

    /// In-place difference; `other` is assumed to be a subset of `self` when
    /// used to undo a prior union.
    #[inline]
    pub fn difference_with(&mut self, other: &VertexMask) {
        for (a, b) in self.words_mut().iter_mut().zip(other.words()) {
            *a &= !b;
        }
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &VertexMask) {
        for (a, b) in self.words_mut().iter_mut().zip(other.words()) {
            *a &= b;
        }
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words().iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words().iter().all(|&w| w == 0)
    }

    /// Smallest member that is at least `from`.
    pub fn next_at_or_after(&self, from: usize) -> Option<Vertex> {
        let words = self.words();
        let mut idx = from / 64;
        if idx >= words.len() {
            return None;
        }
        let mut word = words[idx] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                return Some((idx * 64 + word.trailing_zeros() as usize) as Vertex);
            }
            idx += 1;
            if idx >= words.len() {
                return None;
            }
            word = words[idx];
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words().iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros();
                word &= word - 1;
                Some((i * 64 + bit as usize) as Vertex)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_multiword_agree() {
        for n in [10usize, 64, 65, 130] {
            let a = VertexMask::from_vertices(n, &[0, 3, (n - 1) as Vertex]);
            let b = VertexMask::from_vertices(n, &[1, 4]);
            assert!(a.is_disjoint(&b));
            assert_eq!(a.count(), 3);
            assert_eq!(a.to_vec(), vec![0, 3, (n - 1) as Vertex]);
            let mut c = a.clone();
            c.union_with(&b);
            assert_eq!(c.count(), 5);
            assert!(!c.is_disjoint(&b));
            assert!(b.is_subset(&c));
            c.difference_with(&b);
            assert_eq!(c, a);
        }
    }

    #[test]
    fn next_member_scan_crosses_words() {
        let m = VertexMask::from_vertices(200, &[5, 70, 199]);
        assert_eq!(m.next_at_or_after(0), Some(5));
        assert_eq!(m.next_at_or_after(6), Some(70));
        assert_eq!(m.next_at_or_after(71), Some(199));
        assert_eq!(m.next_at_or_after(200), None);
        let empty = VertexMask::empty(30);
        assert_eq!(empty.next_at_or_after(0), None);
    }
}
