//! Finite permutation groups, their subgroup lattices, and predicates for
//! special triples and NR-subgroups.
//!
//! Groups are small (order at most 10 000, lattices at most 1200) and fully
//! enumerated: every element gets an ordinal and subgroups are bitsets over
//! those ordinals.

pub mod corpus;
pub mod error;
pub mod group;
pub mod lattice;
pub mod map;
pub mod nr;
pub mod numtheory;
pub mod perm;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use corpus::{build, load_corpus, parse_group_def, Corpus, GroupKind, GroupSpec};
pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use lattice::{all_subgroups, LatticeRecord, SubgroupLattice};
pub use map::{are_isomorphic, quotient, GroupMap, MapKind};
pub use nr::{hypothesis, is_nr_subgroup, is_special_triple, HypothesisVerdict, SpecialTripleRecord, TheoremId};
pub use perm::Permutation;
pub use subgroup::Subgroup;
pub use verify::{run_suite, SuiteId, SuiteOptions, Verdict, VerificationReport};
