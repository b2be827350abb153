//! Fixed-capacity bit set for membership counting during value-set
//! enumeration: one bit per field element.

use alloc::vec;
use alloc::vec::Vec;

pub struct BitSet {
    words: Vec<u64>,
    len: u64,
}

impl BitSet {
    /// An empty set over the universe `0..len`.
    pub fn new(len: u64) -> Self {
        BitSet {
            words: vec![0; (len as usize).div_ceil(64)],
            len,
        }
    }

    /// Inserts `value`; returns `true` when it was not present before.
    #[inline]
    pub fn insert(&mut self, value: u64) -> bool {
        debug_assert!(value < self.len);
        let word = &mut self.words[(value >> 6) as usize];
        let bit = 1u64 << (value & 63);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    #[inline]
    pub fn contains(&self, value: u64) -> bool {
        debug_assert!(value < self.len);
        self.words[(value >> 6) as usize] & (1u64 << (value & 63)) != 0
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn universe_len(&self) -> u64 {
        self.len
    }
}
