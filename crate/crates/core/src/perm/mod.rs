//! Permutation arithmetic and enumerated permutation groups.
//!
//! All products use the right-action convention: `πσ` applies `π` first.

mod group;
mod permutation;

pub use group::{
    canonical_coset_rep, normalizes, CosetTable, GroupContext, Subgroup, DEFAULT_ENUMERATION_CAP,
};
pub use permutation::{compose, Permutation, MAX_DEGREE};
