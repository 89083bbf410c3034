// Divisibility tests are written with `%` throughout; that is the clearer
// idiom for modular arithmetic at this density.
#![allow(clippy::manual_is_multiple_of)]

//! Finite-group computation kernel for 3-pyramidal groups: groups with
//! exactly three involutions, all conjugate to each other.
//!
//! The crate materializes small finite groups as full multiplication tables,
//! decides 3-pyramidality both by definition and by structural
//! classification, constructs every realizable family of 3-pyramidal groups,
//! and ships a deterministic corpus over which the two decision routes are
//! differentially tested.

pub mod error;
pub mod families;
pub mod io;
pub mod kernel;
pub mod maps;
pub mod pyramidal;
pub mod structure;

pub use error::{Error, Result};
pub use families::{
    corpus, load_reference, make_homocyclic_family, make_s3_times_h, make_suzuki64_family, resolve,
    CorpusEntry, Expectation, FamilySpec, GroupSpec, Profile, ReferenceName,
};
pub use kernel::{two_adic_valuation, ElementId, Group, Permutation, DEFAULT_CAP};
pub use maps::{
    are_isomorphic, automorphism_group_order, make_gamma, GroupMap, DEFAULT_AUT_BUDGET,
    DEFAULT_ISO_BUDGET,
};
pub use pyramidal::{
    classify, classify_with_budget, involutions, is_3_pyramidal_definition, structural_checks,
    sylow_profile, NotPyramidalReason, PyramidalReport, ReducedSylowShape, StructuralChecks,
    Verdict,
};
pub use structure::{
    abelian_two_group_type, center, centralizer, conjugacy_classes, derived_subgroup,
    direct_product, enumerate_normal_subgroups, enumerate_subgroups, find_complement, is_normal,
    is_solvable, normal_closure, odd_core, p_length, quotient, semidirect_product,
    subgroup_generated, subgroup_to_group, sylow_subgroup, ConjugacyClass, SubgroupSet,
};
