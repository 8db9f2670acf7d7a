use std::fmt;

use fixedbitset::FixedBitSet;

use crate::af::ArgId;

/// A set of argument ids drawn from `0..capacity`.
///
/// Backed by a dense bit vector so that copying a search state is a handful
/// of word copies and iteration is always in ascending id order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NodeSet {
    bits: FixedBitSet,
}

impl NodeSet {
    pub fn empty(capacity: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(capacity),
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        Self { bits }
    }

    pub fn from_ids<I: IntoIterator<Item = ArgId>>(capacity: usize, ids: I) -> Self {
        let mut set = Self::empty(capacity);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, id: ArgId) -> bool {
        self.bits.contains(id)
    }

    pub fn insert(&mut self, id: ArgId) {
        self.bits.insert(id);
    }

    pub fn remove(&mut self, id: ArgId) {
        self.bits.set(id, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = ArgId> + '_ {
        self.bits.ones()
    }

    /// Ids present in both `self` and `other`, ascending.
    pub fn intersection<'a>(&'a self, other: &'a NodeSet) -> impl Iterator<Item = ArgId> + 'a {
        self.bits.intersection(&other.bits)
    }

    pub fn is_disjoint(&self, other: &NodeSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Removes every member of `other` from `self`.
    pub fn subtract(&mut self, other: &NodeSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn to_vec(&self) -> Vec<ArgId> {
        self.iter().collect()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
