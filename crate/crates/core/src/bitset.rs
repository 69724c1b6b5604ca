//! Fixed-width vertex subsets.
//!
//! Sets are stored as blocks of 64 bits; a universe larger than one block
//! simply uses more blocks. Every set carries its universe size so that
//! complements and iteration stay in range.

use std::fmt;

const BLOCK: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn new(universe: usize) -> Self {
        BitSet {
            universe,
            blocks: vec![0; universe.div_ceil(BLOCK)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = BitSet::new(universe);
        for b in s.blocks.iter_mut() {
            *b = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = BitSet::new(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        let mut s = BitSet::new(universe);
        s.insert(i);
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % BLOCK;
        if rem != 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.blocks[i / BLOCK] >> (i % BLOCK) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "bit {i} outside universe {}", self.universe);
        self.blocks[i / BLOCK] |= 1 << (i % BLOCK);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.blocks[i / BLOCK] &= !(1 << (i % BLOCK));
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn clear(&mut self) {
        for b in self.blocks.iter_mut() {
            *b = 0;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
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

    pub fn difference(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> BitSet {
        let mut s = self.clone();
        for b in s.blocks.iter_mut() {
            *b = !*b;
        }
        s.trim();
        s
    }

    pub fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(i, b)| i * BLOCK + b.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            blocks: &self.blocks,
            idx: 0,
            cur: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Raw blocks, least significant bit first.
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub(crate) fn blocks_mut(&mut self) -> &mut [u64] {
        &mut self.blocks
    }
}

pub struct Iter<'a> {
    blocks: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * BLOCK + tz);
            }
            self.idx += 1;
            if self.idx >= self.blocks.len() {
                return None;
            }
            self.cur = self.blocks[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a BitSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Enumerates the nonempty subsets of `base` in a fixed order (by the
/// binary counter over the members of `base`, lowest member least
/// significant).
pub fn nonempty_subsets(base: &BitSet) -> impl Iterator<Item = BitSet> + '_ {
    let members = base.to_vec();
    let k = members.len();
    assert!(k < 63, "subset enumeration over {k} members");
    (1u64..(1u64 << k)).map(move |mask| {
        let mut s = BitSet::new(base.universe());
        for (j, &m) in members.iter().enumerate() {
            if mask >> j & 1 == 1 {
                s.insert(m);
            }
        }
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops_across_blocks() {
        let mut a = BitSet::new(130);
        a.insert(0);
        a.insert(64);
        a.insert(129);
        assert_eq!(a.len(), 3);
        assert_eq!(a.to_vec(), vec![0, 64, 129]);
        let c = a.complement();
        assert_eq!(c.len(), 127);
        assert!(!c.contains(64));
        assert!(a.union(&c) == BitSet::full(130));
        assert!(!a.intersects(&c));
    }

    #[test]
    fn subsets_count() {
        let base = BitSet::from_indices(10, [1, 3, 7]);
        let subs: Vec<_> = nonempty_subsets(&base).collect();
        assert_eq!(subs.len(), 7);
        assert!(subs.iter().all(|s| s.is_subset(&base) && !s.is_empty()));
    }
}
