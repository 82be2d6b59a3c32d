//! Subgroups as membership masks over the parent's element indices.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::group::GroupId;

/// A subgroup of a specific [`Group`](crate::Group), stored as a bitmask over
/// the parent's canonical element indices.
///
/// Two subgroups are equal iff they have the same parent and the same mask.
/// The ordering is by order first and then lexicographic on the sorted
/// element-index lists; chief-series tie-breaking relies on it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub(crate) group: GroupId,
    pub(crate) mask: FixedBitSet,
    pub(crate) order: usize,
}

impl Subgroup {
    pub(crate) fn from_mask(group: GroupId, mask: FixedBitSet) -> Self {
        let order = mask.count_ones(..);
        Subgroup { group, mask, order }
    }

    pub fn group_id(&self) -> GroupId {
        self.group
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn contains(&self, element: usize) -> bool {
        self.mask.contains(element)
    }

    /// Element indices in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.ones()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `self ≤ other`; always false across different parents.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.mask.is_subset(&other.mask)
    }

    /// `self < other`.
    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order < other.order && self.is_subgroup_of(other)
    }

    /// Compact description used in witnesses: `{0,3,5}`.
    pub fn describe(&self) -> String {
        let items: Vec<String> = self.elements().map(|i| i.to_string()).collect();
        format!("{{{}}}", items.join(","))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.mask.ones().cmp(other.mask.ones()))
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, {})", self.order, self.describe())
    }
}
