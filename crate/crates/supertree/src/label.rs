//! Label interning and dense label-id bitsets.
//!
//! All trees in one problem instance share a [`LabelUniverse`] that maps
//! label strings to dense ids. Ids are assigned in lexicographic order of
//! the label strings, so canonical tree output is stable across runs.

use std::collections::HashMap;
use std::fmt;

/// Dense id of a leaf label within a [`LabelUniverse`].
pub type LabelId = u32;

/// Bijective mapping between label strings and dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelUniverse {
    names: Vec<String>,
    index: HashMap<String, LabelId>,
}

impl LabelUniverse {
    /// Builds a universe from label strings; duplicates are collapsed and
    /// ids follow lexicographic order.
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = labels.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as LabelId))
            .collect();
        LabelUniverse { names, index }
    }

    pub fn id(&self, name: &str) -> Option<LabelId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.names[id as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LabelId> + '_ {
        (0..self.names.len() as LabelId).into_iter()
    }

    /// The set of every label in the universe.
    pub fn full_set(&self) -> LabelSet {
        self.ids().collect()
    }
}

/// A set of label ids, stored as a packed bitset.
///
/// Trailing zero blocks are always trimmed, so `Eq` and `Hash` agree with
/// set equality regardless of how the set was produced.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LabelSet {
    blocks: Vec<u64>,
}

impl LabelSet {
    pub fn new() -> Self {
        LabelSet::default()
    }

    pub fn singleton(id: LabelId) -> Self {
        let mut s = LabelSet::new();
        s.insert(id);
        s
    }

    pub fn insert(&mut self, id: LabelId) {
        let (block, bit) = (id as usize / 64, id as usize % 64);
        if block >= self.blocks.len() {
            self.blocks.resize(block + 1, 0);
        }
        self.blocks[block] |= 1u64 << bit;
    }

    pub fn remove(&mut self, id: LabelId) {
        let (block, bit) = (id as usize / 64, id as usize % 64);
        if block < self.blocks.len() {
            self.blocks[block] &= !(1u64 << bit);
            self.trim();
        }
    }

    pub fn contains(&self, id: LabelId) -> bool {
        let (block, bit) = (id as usize / 64, id as usize % 64);
        block < self.blocks.len() && self.blocks[block] & (1u64 << bit) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<LabelId> {
        for (i, b) in self.blocks.iter().enumerate() {
            if *b != 0 {
                return Some((i * 64 + b.trailing_zeros() as usize) as LabelId);
            }
        }
        None
    }

    pub fn union(&self, other: &LabelSet) -> LabelSet {
        let mut blocks = vec![0u64; self.blocks.len().max(other.blocks.len())];
        for (i, b) in blocks.iter_mut().enumerate() {
            *b = self.blocks.get(i).copied().unwrap_or(0) | other.blocks.get(i).copied().unwrap_or(0);
        }
        let mut s = LabelSet { blocks };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &LabelSet) {
        *self = self.union(other);
    }

    pub fn intersection(&self, other: &LabelSet) -> LabelSet {
        let mut blocks = vec![0u64; self.blocks.len().min(other.blocks.len())];
        for (i, b) in blocks.iter_mut().enumerate() {
            *b = self.blocks[i] & other.blocks[i];
        }
        let mut s = LabelSet { blocks };
        s.trim();
        s
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &LabelSet) -> LabelSet {
        let mut blocks = self.blocks.clone();
        for (i, b) in blocks.iter_mut().enumerate() {
            *b &= !other.blocks.get(i).copied().unwrap_or(0);
        }
        let mut s = LabelSet { blocks };
        s.trim();
        s
    }

    pub fn is_subset_of(&self, other: &LabelSet) -> bool {
        self.blocks
            .iter()
            .enumerate()
            .all(|(i, b)| b & !other.blocks.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = LabelId> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, b)| {
            (0..64u32)
                .filter(move |bit| b & (1u64 << bit) != 0)
                .map(move |bit| (i as u32) * 64 + bit)
        })
    }

    /// Members in ascending order.
    pub fn to_vec(&self) -> Vec<LabelId> {
        self.iter().collect()
    }

    fn trim(&mut self) {
        while self.blocks.last() == Some(&0) {
            self.blocks.pop();
        }
    }
}

impl FromIterator<LabelId> for LabelSet {
    fn from_iter<I: IntoIterator<Item = LabelId>>(iter: I) -> Self {
        let mut s = LabelSet::new();
        for id in iter {
            s.insert(id);
        }
        s
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
