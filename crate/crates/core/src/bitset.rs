//! Dense membership bit-vectors over the elements of one group.
//!
//! Every subgroup, coset and raw element subset in this crate is an
//! [`ElementSet`]: a fixed-width bit-vector indexed by element id. Sets
//! from the same group share a universe size and compare, hash and order
//! canonically, which is what makes lattice dedup and deterministic node
//! ordering cheap.

const BLOCK_BITS: usize = 64;

/// A subset of the elements `0..universe` of a group, as a bit-vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl ElementSet {
    /// The empty subset of a universe with `universe` elements.
    pub fn empty(universe: usize) -> Self {
        let nblocks = universe.div_ceil(BLOCK_BITS);
        ElementSet {
            universe,
            blocks: vec![0; nblocks],
        }
    }

    /// The full subset `{0, .., universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    /// Builds a set from explicit members.
    pub fn from_members(universe: usize, members: &[usize]) -> Self {
        let mut set = Self::empty(universe);
        for &m in members {
            set.insert(m);
        }
        set
    }

    /// Number of elements the universe holds (the group order, usually).
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / BLOCK_BITS] |= 1u64 << (i % BLOCK_BITS);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / BLOCK_BITS] &= !(1u64 << (i % BLOCK_BITS));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.blocks[i / BLOCK_BITS] >> (i % BLOCK_BITS) & 1 != 0
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// `self ⊆ other`. Both sets must share a universe.
    pub fn is_subset(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(&a, &b)| a & !b == 0)
    }

    /// Strict containment `self ⊂ other`.
    pub fn is_proper_subset(&self, other: &ElementSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, &b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, &b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    /// Iterates members in increasing order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            set: self,
            block: 0,
            bits: self.blocks.first().copied().unwrap_or(0),
        }
    }

    /// The set as a lowercase hex string, lowest block last, for reports.
    /// Leading zero digits are trimmed so the encoding is width-independent.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for (i, block) in self.blocks.iter().enumerate().rev() {
            if s.is_empty() {
                if *block == 0 && i > 0 {
                    continue;
                }
                s.push_str(&format!("{block:x}"));
            } else {
                s.push_str(&format!("{block:016x}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Canonical order: by cardinality first, then by the numeric value of the
/// bit-vector (element 0 is the least significant bit). Lattice node ids
/// derive from this order, so it must stay stable.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Members<'a> {
    set: &'a ElementSet,
    block: usize,
    bits: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let low = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.block * BLOCK_BITS + low);
            }
            self.block += 1;
            if self.block >= self.set.blocks.len() {
                return None;
            }
            self.bits = self.set.blocks[self.block];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_iter() {
        let mut s = ElementSet::empty(130);
        for i in [0, 1, 63, 64, 65, 128, 129] {
            s.insert(i);
        }
        assert_eq!(s.len(), 7);
        assert!(s.contains(64));
        assert!(!s.contains(2));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 63, 64, 65, 128, 129]);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(s.len(), 6);
    }

    #[test]
    fn subset_relations() {
        let a = ElementSet::from_members(8, &[0, 2]);
        let b = ElementSet::from_members(8, &[0, 2, 5]);
        assert!(a.is_subset(&b));
        assert!(a.is_proper_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.is_subset(&a));
        assert!(!a.is_proper_subset(&a));
    }

    #[test]
    fn canonical_order_sorts_by_size_then_bits() {
        let small = ElementSet::from_members(8, &[7]);
        let big = ElementSet::from_members(8, &[0, 1]);
        assert!(small < big);
        let x = ElementSet::from_members(8, &[0, 3]);
        let y = ElementSet::from_members(8, &[1, 2]);
        // 0b1001 < 0b0110 is false numerically: 9 > 6.
        assert!(y < x);
    }

    #[test]
    fn hex_rendering() {
        let s = ElementSet::from_members(8, &[0, 1, 2]);
        assert_eq!(s.to_hex(), "7");
        let mut t = ElementSet::empty(70);
        t.insert(65);
        assert_eq!(t.to_hex(), "20000000000000000");
        assert_eq!(ElementSet::empty(4).to_hex(), "0");
    }
}
