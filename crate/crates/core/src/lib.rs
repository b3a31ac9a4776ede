//! Binomial edge ideals of trees and block graphs.
//!
//! The crate has two halves that are meant to check each other:
//!
//! * [`rules`] turns structural facts about a graph (spines, limbs, cliques,
//!   cut vertices) into a certified interval for `reg(S/J_G)`, with the
//!   provenance of every bound.
//! * [`groebner`] and [`betti`] compute the regularity exactly over a prime
//!   field, either from Koszul homology of `S/J_G` or from Hochster's formula
//!   applied to the squarefree initial ideal.
//!
//! [`graph`] and [`taxonomy`] hold the combinatorics both halves share.
//!
//! The crate is `no_std` (it needs `alloc`); the `std` feature only adds
//! `std::error::Error` integration through `thiserror`.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod betti;
pub mod graph;
pub mod groebner;
pub mod rules;
pub mod taxonomy;

pub use betti::{regularity, BettiTable, OracleConfig, OracleError, OracleResult, Tier};
pub use graph::{Graph, GraphError, Vertex};
pub use taxonomy::{build_jewel, classify_tree, TreeProfile};
pub use rules::{apply_all_rules, RegularityInterval, RuleApplication, RuleId};
