//! Enumeration of pattern-avoiding stabilized-interval-free (SIF)
//! permutations.
//!
//! A permutation of `{1, ..., n}` is stabilized-interval-free when it maps no
//! proper contiguous interval `[j, k]` onto itself. This crate enumerates the
//! SIF permutations avoiding classical patterns of size 3 (and pairs of
//! them) along three independent routes, and cross-validates the routes
//! against each other:
//!
//! * [`enumerate`] — pruned backtracking generation, the ground-truth oracle;
//! * [`formula`] — closed forms, recurrences and continued fractions;
//! * [`series`] — exact truncated power-series machinery behind the
//!   generating-function identities, including bivariate statistic markers.
//!
//! [`perm`] holds the permutation representation and its interval structure;
//! [`forest`] the bijection between 231-avoiders and ordered forests;
//! [`registry`] named sequences with provenance and the overlap cross-check;
//! [`verify`] the suites that tie all of it together; [`cli`] the command
//! line on top.

pub mod cli;
pub mod enumerate;
pub mod forest;
pub mod formula;
pub mod known;
pub mod numbers;
pub mod perm;
pub mod registry;
pub mod series;
pub mod verify;

pub use perm::{BoxReport, Interval, PermError, Permutation, Symmetry};
