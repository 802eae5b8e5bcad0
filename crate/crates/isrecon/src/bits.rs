//! Fixed-width bit sets over a graph's vertex range.
//!
//! The constraint solver does almost all of its work through intersections,
//! unions and popcounts of vertex sets, so those sets are kept as packed
//! `u64` words rather than sorted id lists.

use crate::graph::VertexSet;

const WORD: usize = 64;

/// A set of vertex ids in `0..width`, packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Box<[u64]>,
}

impl BitSet {
    pub fn empty(width: usize) -> Self {
        let n_words = width.div_ceil(WORD).max(1);
        BitSet { words: vec![0u64; n_words].into_boxed_slice() }
    }

    pub fn from_vertex_set(width: usize, set: &VertexSet) -> Self {
        let mut b = BitSet::empty(width);
        for &v in set.iter() {
            b.insert(v);
        }
        b
    }

    pub fn from_slice(width: usize, vs: &[usize]) -> Self {
        let mut b = BitSet::empty(width);
        for &v in vs {
            b.insert(v);
        }
        b
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / WORD] |= 1u64 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / WORD] &= !(1u64 << (v % WORD));
    }

    pub fn contains(&self, v: usize) -> bool {
        match self.words.get(v / WORD) {
            Some(w) => w >> (v % WORD) & 1 == 1,
            None => false,
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn or(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a | b)
    }

    /// Set difference `self \ other`.
    pub fn minus(&self, other: &BitSet) -> BitSet {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `|self ∩ other|` without allocating.
    pub fn and_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(other.words.iter()).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn or_assign(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + bit)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vertex_set(&self) -> VertexSet {
        VertexSet::from_sorted_unchecked(self.iter().collect())
    }

    fn zip_with(&self, other: &BitSet, f: impl Fn(u64, u64) -> u64) -> BitSet {
        debug_assert_eq!(self.words.len(), other.words.len());
        BitSet {
            words: self
                .words
                .iter()
                .zip(other.words.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
