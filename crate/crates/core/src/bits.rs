//! Word-level helpers for row bitsets.

pub(crate) const WORD: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

pub(crate) fn get(row: &[u64], i: usize) -> bool {
    row[i / WORD] >> (i % WORD) & 1 != 0
}

pub(crate) fn set(row: &mut [u64], i: usize) {
    row[i / WORD] |= 1u64 << (i % WORD);
}

pub(crate) fn clear(row: &mut [u64], i: usize) {
    row[i / WORD] &= !(1u64 << (i % WORD));
}

pub(crate) fn and_assign(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d &= *s;
    }
}

pub(crate) fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// Mask with the lowest `n` bits set, spread over `words_for(n)` words.
pub(crate) fn full_mask(n: usize) -> Vec<u64> {
    let mut m = vec![u64::MAX; words_for(n)];
    let rem = n % WORD;
    if rem != 0 {
        if let Some(last) = m.last_mut() {
            *last = (1u64 << rem) - 1;
        }
    }
    if n == 0 {
        m.clear();
    }
    m
}

/// Clears bits `0..=i`.
pub(crate) fn clear_through(row: &mut [u64], i: usize) {
    let w = i / WORD;
    for word in row.iter_mut().take(w) {
        *word = 0;
    }
    if w < row.len() {
        let rem = i % WORD;
        if rem == WORD - 1 {
            row[w] = 0;
        } else {
            row[w] &= !((1u64 << (rem + 1)) - 1);
        }
    }
}

pub(crate) fn iter_ones(row: &[u64]) -> OnesIter<'_> {
    OnesIter {
        row,
        word_idx: 0,
        current: row.first().copied().unwrap_or(0),
    }
}

pub(crate) struct OnesIter<'a> {
    row: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for OnesIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + bit);
            }
            self.word_idx += 1;
            if self.word_idx >= self.row.len() {
                return None;
            }
            self.current = self.row[self.word_idx];
        }
    }
}
