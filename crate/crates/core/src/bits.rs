//! Vertex sets as bitsets.
//!
//! Graphs with at most 64 vertices use a single `u64` per row; larger graphs
//! fall back to [`FixedBitSet`]. The clique kernels are generic over
//! [`VertexBits`] so both paths share one implementation.

use fixedbitset::FixedBitSet;

pub const WORD_BITS: usize = 64;

pub trait VertexBits: Clone {
    /// Empty set able to hold vertices `0..n`.
    fn empty(n: usize) -> Self;
    /// Builds a set from little-endian 64-bit words.
    fn from_words(words: &[u64], n: usize) -> Self;
    fn insert(&mut self, v: usize);
    fn remove(&mut self, v: usize);
    fn contains(&self, v: usize) -> bool;
    fn is_empty(&self) -> bool;
    fn count(&self) -> usize;
    fn first(&self) -> Option<usize>;
    fn intersect_with(&mut self, other: &Self);
    fn difference_with(&mut self, other: &Self);

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }
}

impl VertexBits for u64 {
    fn empty(n: usize) -> Self {
        debug_assert!(n <= WORD_BITS);
        0
    }

    fn from_words(words: &[u64], n: usize) -> Self {
        debug_assert!(n <= WORD_BITS);
        words.first().copied().unwrap_or(0)
    }

    #[inline]
    fn insert(&mut self, v: usize) {
        *self |= 1u64 << v;
    }

    #[inline]
    fn remove(&mut self, v: usize) {
        *self &= !(1u64 << v);
    }

    #[inline]
    fn contains(&self, v: usize) -> bool {
        (*self >> v) & 1 == 1
    }

    #[inline]
    fn is_empty(&self) -> bool {
        *self == 0
    }

    #[inline]
    fn count(&self) -> usize {
        self.count_ones() as usize
    }

    #[inline]
    fn first(&self) -> Option<usize> {
        if *self == 0 {
            None
        } else {
            Some(self.trailing_zeros() as usize)
        }
    }

    #[inline]
    fn intersect_with(&mut self, other: &Self) {
        *self &= *other;
    }

    #[inline]
    fn difference_with(&mut self, other: &Self) {
        *self &= !*other;
    }

    fn full(n: usize) -> Self {
        if n >= WORD_BITS {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }
}

impl VertexBits for FixedBitSet {
    fn empty(n: usize) -> Self {
        FixedBitSet::with_capacity(n)
    }

    fn from_words(words: &[u64], n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        for (w, &word) in words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                s.insert(w * WORD_BITS + b);
                bits &= bits - 1;
            }
        }
        s
    }

    fn insert(&mut self, v: usize) {
        FixedBitSet::insert(self, v);
    }

    fn remove(&mut self, v: usize) {
        self.set(v, false);
    }

    fn contains(&self, v: usize) -> bool {
        FixedBitSet::contains(self, v)
    }

    fn is_empty(&self) -> bool {
        self.is_clear()
    }

    fn count(&self) -> usize {
        self.count_ones(..)
    }

    fn first(&self) -> Option<usize> {
        self.ones().next()
    }

    fn intersect_with(&mut self, other: &Self) {
        FixedBitSet::intersect_with(self, other);
    }

    fn difference_with(&mut self, other: &Self) {
        FixedBitSet::difference_with(self, other);
    }
}

/// Number of 64-bit words needed for `n` bits.
pub fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}
