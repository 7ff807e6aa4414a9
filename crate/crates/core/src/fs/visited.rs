use std::sync::atomic::{AtomicU64, Ordering};

/// One bit per rank, safe for concurrent marking.
pub(crate) struct AtomicBitSet {
    words: Vec<AtomicU64>,
    len: u64,
}

impl AtomicBitSet {
    pub fn new(len: u64) -> Self {
        let words = len.div_ceil(64) as usize;
        AtomicBitSet {
            words: (0..words).map(|_| AtomicU64::new(0)).collect(),
            len,
        }
    }

    /// Sets bit `i`; true if this call flipped it from 0 to 1.
    #[inline]
    pub fn insert(&self, i: u64) -> bool {
        let mask = 1u64 << (i % 64);
        let prev = self.words[(i / 64) as usize].fetch_or(mask, Ordering::Relaxed);
        prev & mask == 0
    }

    #[cfg(test)]
    pub fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize].load(Ordering::Relaxed) >> (i % 64) & 1 == 1
    }

    /// Smallest unset index `>= from`, if any.
    pub fn next_unset(&self, from: u64) -> Option<u64> {
        let mut w = (from / 64) as usize;
        let mut mask = !0u64 << (from % 64);
        while w < self.words.len() {
            let free = !self.words[w].load(Ordering::Relaxed) & mask;
            if free != 0 {
                let i = w as u64 * 64 + free.trailing_zeros() as u64;
                return (i < self.len).then_some(i);
            }
            w += 1;
            mask = !0;
        }
        None
    }
}
