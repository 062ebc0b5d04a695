//! Fixed-width bitsets and row-major bit matrices.
//!
//! Subsets of a finite carrier are stored as [`BitSet`]s. Their total order is
//! the numeric order of the bitmask (element `i` is bit `i`), which is the
//! canonical order used for concepts and powerset carriers throughout the crate.

use std::cmp::Ordering;
use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `len` bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        let mut s = Self::empty(len);
        if !s.words.is_empty() {
            s.words[0] = if len >= 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, items: I) -> Self {
        let mut s = Self::empty(len);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// The bitmask of a set over a carrier of at most 64 elements.
    pub fn mask(&self) -> u64 {
        assert!(self.len <= 64, "mask() on a set over {} elements", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet::empty(self.len);
        for i in 0..self.len {
            if !self.contains(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            // numeric comparison, most significant word first
            for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Dense boolean matrix with one bitset-backed row per row index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitSet>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitSet::empty(cols); rows],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::new(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].contains(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.data[i].insert(j);
        } else {
            self.data[i].remove(j);
        }
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.data[i]
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |j| (i, j)))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = (0..self.cols)
                .map(|j| if self.get(i, j) { 'X' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        let s = BitSet::from_mask(5, 0b10110);
        assert_eq!(s.to_vec(), vec![1, 2, 4]);
        assert_eq!(s.mask(), 0b10110);
        assert_eq!(BitSet::from_mask(3, 0xff).mask(), 0b111);
    }

    #[test]
    fn ordering_is_numeric() {
        let a = BitSet::from_mask(4, 0b0011);
        let b = BitSet::from_mask(4, 0b0100);
        assert!(a < b);
        let mut wide_a = BitSet::empty(130);
        wide_a.insert(0);
        let mut wide_b = BitSet::empty(130);
        wide_b.insert(129);
        assert!(wide_a < wide_b);
    }

    #[test]
    fn iteration_crosses_words() {
        let s = BitSet::from_indices(200, [0, 63, 64, 199]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 199]);
        assert_eq!(s.count(), 4);
        assert_eq!(s.complement().count(), 196);
    }
}
