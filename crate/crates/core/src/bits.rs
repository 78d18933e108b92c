//! Bit-row vertex sets.
//!
//! [`VertexSet`] is the public, growable set type. The [`Row`] trait lets the
//! hot search loops run on a bare `u64` when the host has at most 64 vertices
//! and on a multi-word [`VertexSet`] otherwise.

use serde::{Serialize, Serializer};
use smallvec::SmallVec;
use std::fmt;

/// A set of vertices backed by 64-bit words. Serializes as the ascending
/// list of its members.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::with_capacity(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(n);
            *w = if hi - lo == 64 { u64::MAX } else { (1u64 << (hi - lo)) - 1 };
        }
        s
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut words = SmallVec::new();
        words.resize(n.div_ceil(64), 0);
        VertexSet { words }
    }

    pub fn from_words(words: &[u64]) -> Self {
        let mut s = VertexSet { words: SmallVec::from_slice(words) };
        s.trim();
        s
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if let Some(w) = self.words.get_mut(v / 64) {
            *w &= !(1u64 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words.get(v / 64).is_some_and(|w| w >> (v % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn max(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| Ones(w).map(move |b| i * 64 + b))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let words = self.words.iter().zip(other.words.iter()).map(|(a, b)| a & b).collect();
        let mut s = VertexSet { words };
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        let len = self.words.len().max(other.words.len());
        let words = (0..len)
            .map(|i| self.words.get(i).copied().unwrap_or(0) | other.words.get(i).copied().unwrap_or(0))
            .collect();
        VertexSet { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words = self.words.iter().enumerate().map(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0)).collect();
        let mut s = VertexSet { words };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().enumerate().all(|(i, a)| a & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bit positions of a word.
pub(crate) struct Ones(pub u64);

impl Iterator for Ones {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Minimal bitset interface shared by the single-word and multi-word rows.
pub(crate) trait Row: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn empty() -> Self;
    fn from_set(set: &VertexSet) -> Self;
    fn and(&self, other: &Self) -> Self;
    fn and_not(&self, other: &Self) -> Self;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn count(&self) -> usize;
    fn lowest(&self) -> Option<usize>;
    /// Lowest element strictly greater than `v`.
    fn next_after(&self, v: usize) -> Option<usize>;
}

impl Row for u64 {
    #[inline]
    fn empty() -> Self {
        0
    }
    fn from_set(set: &VertexSet) -> Self {
        debug_assert!(set.words().len() <= 1);
        set.words().first().copied().unwrap_or(0)
    }
    #[inline]
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    #[inline]
    fn and_not(&self, other: &Self) -> Self {
        self & !other
    }
    #[inline]
    fn insert(&mut self, v: usize) {
        *self |= 1 << v;
    }
    #[inline]
    fn remove(&mut self, v: usize) {
        *self &= !(1 << v);
    }
    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }
    #[inline]
    fn lowest(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    #[inline]
    fn next_after(&self, v: usize) -> Option<usize> {
        if v >= 63 {
            return None;
        }
        (self & (u64::MAX << (v + 1))).lowest()
    }
}

impl Row for VertexSet {
    fn empty() -> Self {
        VertexSet::new()
    }
    fn from_set(set: &VertexSet) -> Self {
        set.clone()
    }
    fn and(&self, other: &Self) -> Self {
        self.intersection(other)
    }
    fn and_not(&self, other: &Self) -> Self {
        self.difference(other)
    }
    fn insert(&mut self, v: usize) {
        VertexSet::insert(self, v)
    }
    fn remove(&mut self, v: usize) {
        VertexSet::remove(self, v);
        self.trim();
    }
    fn count(&self) -> usize {
        self.len()
    }
    fn lowest(&self) -> Option<usize> {
        self.first()
    }
    fn next_after(&self, v: usize) -> Option<usize> {
        let start = v + 1;
        let (w0, b0) = (start / 64, start % 64);
        for (i, &w) in self.words.iter().enumerate().skip(w0) {
            let masked = if i == w0 { w & (u64::MAX << b0) } else { w };
            if masked != 0 {
                return Some(i * 64 + masked.trailing_zeros() as usize);
            }
        }
        None
    }
}
