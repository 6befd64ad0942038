//! Exact engine for axiomatic analysis of citation-based journal rankings.
//!
//! A ranking problem is a list of journals together with a square nonnegative
//! rational matrix of citations, `c[i][j]` being the citations journal `i`
//! received from journal `j`. On top of that this crate provides:
//!
//! * the symmetric matches matrix and the balanced / unweighted / loopless /
//!   extremal domain classes ([`problem`]),
//! * the extremal rounding transform that forgets citation magnitudes,
//! * aggregation of two journals into one and entrywise sums of problems,
//! * decomposition of a problem into unweighted layers ([`decomp`]),
//! * the self-consistency axiom: dominance witnesses, admissible weak orders
//!   and score checking ([`sc`]),
//! * scoring methods — least squares, flat, net sum ([`methods`]),
//! * invariance-to-aggregation checking in weak and strict modes, plus
//!   impossibility certificates pitting the two axioms against each other
//!   ([`axioms`]),
//! * exhaustive sweeps over small instance families ([`search`]).
//!
//! All citation arithmetic is exact (`Ratio<i64>`); floating point appears
//! only in scores. The crate is `no_std`-compatible with `alloc`; the `std`
//! feature (default) only adds `std::error::Error` impls, and the `parallel`
//! feature parallelises sweeps without changing their results.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod axioms;
pub mod decomp;
mod error;
pub mod methods;
pub mod order;
pub mod problem;
pub mod rational;
pub mod sc;
pub mod search;

pub use error::{Error, Result};
pub use problem::{ClassFlags, MatchesMatrix, Problem};
pub use rational::Rational;
