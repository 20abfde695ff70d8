//! Cayley coset digraphs of finite permutation groups: construction, exact
//! connectivity oracles, group-theoretic atoms and theorem checkers.

pub mod atom_analysis;
pub mod cli;
pub mod corpus;
pub mod coset;
pub mod cp;
pub mod digraph;
pub mod error;
pub mod perm;
pub mod theorems;

pub use error::{Error, Result};
