use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

/// A subgroup of some [`FiniteGroup`](crate::FiniteGroup), stored as a set of
/// element ordinals together with a generating set.
///
/// Subgroups do not hold a reference to their parent; every operation that
/// needs the multiplication takes the parent explicitly and rejects
/// subgroups of a different group with [`Error::ForeignSubgroup`](crate::Error).
///
/// Equality and hashing use the member set only. The ordering is the
/// canonical lattice order: by order, then by the ascending member list.
#[derive(Clone)]
pub struct Subgroup {
    pub(crate) group_id: u64,
    pub(crate) members: FixedBitSet,
    pub(crate) order: usize,
    pub(crate) gens: Vec<u32>,
}

impl Subgroup {
    pub(crate) fn new(group_id: u64, parent_order: usize, members: FixedBitSet, gens: Vec<u32>) -> Self {
        let order = members.count_ones(..);
        assert!(members.contains(0), "subgroup without identity");
        assert_eq!(parent_order % order, 0, "subgroup order {order} does not divide {parent_order}");
        Subgroup {
            group_id,
            members,
            order,
            gens,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        self.members.contains(element)
    }

    /// Member ordinals in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    /// A generating set, as element ordinals. Empty for the trivial subgroup.
    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.gens.iter().map(|&g| g as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group_id == other.group_id && self.order <= other.order && self.members.is_subset(&other.members)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order < other.order && self.is_subgroup_of(other)
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order / self.order
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group_id == other.group_id && self.order == other.order && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.ones().cmp(other.members.ones()))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.gens)
    }
}
