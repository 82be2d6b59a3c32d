//! Finite permutation groups small enough to enumerate: subgroup lattices,
//! chief series, F-central chief factors, the sublattices `L_F(G)` and
//! `L_Δ(G)`, permutability predicates, and a harness that checks the
//! lattice theorems over a corpus of small groups.

pub mod classes;
pub mod error;
pub mod group;
pub mod harness;
pub mod iso;
pub mod lattice;
pub mod perm;
pub mod permutability;
pub mod series;
pub mod subgroup;
pub mod sublattices;

pub use classes::{is_in_class, radical, residual, section_in_class, GroupClass};
pub use error::{GroupError, Result};
pub use group::{direct_product, semidirect_product, Action, Group, GroupId, Morphism};
pub use lattice::SubgroupLattice;
pub use perm::Permutation;
pub use permutability::{classify_t_pt_pst, PermutabilityProfile, TClass};
pub use series::{ChiefFactor, NormalSection, TieBreak};
pub use subgroup::Subgroup;
pub use sublattices::{Delta, LatticeSpec};

/// Size caps. Exceeding one yields a `*CapExceeded` error, which the
/// harness reports as UNDECIDED.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group `generate` will enumerate.
    pub max_order: usize,
    /// Largest group whose full subgroup lattice is built.
    pub lattice_order: usize,
    pub max_subgroups: usize,
    /// Largest order handed to the isomorphism search.
    pub iso_order: usize,
    /// Largest chief factor for the `G`-isomorphism search.
    pub g_iso_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 5000,
            lattice_order: 400,
            max_subgroups: 20000,
            iso_order: 200,
            g_iso_order: 64,
        }
    }
}
