use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

/// A subgroup of a [`PermGroup`](super::PermGroup), stored as a membership
/// bitset over the parent's element numbering.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: FixedBitSet,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub(crate) fn from_parts(members: FixedBitSet, gens: Vec<u32>) -> Self {
        let elements = members.ones().map(|x| x as u32).collect();
        Subgroup {
            members,
            elements,
            gens,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }

    /// Members in increasing element order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Sort key used for deterministic ordering of subgroup lists.
    pub fn sort_key(&self) -> (usize, &[u32]) {
        (self.order(), &self.elements)
    }
}
