//! Symmetry handling for finite-domain constraint problems.
//!
//! A symmetry-breaking constraint set rules out some solutions of a
//! symmetric problem while keeping at least one per symmetry class. Such a
//! set is not unique: pushing it through any symmetry of the problem gives
//! another valid set that selects different representatives. This crate
//! makes that transformation a first-class operation and builds two search
//! strategies on top of it:
//!
//! * **model restarts** – restart search periodically, each time posting
//!   the image of the canonical set under a freshly sampled random group
//!   element, so a single unlucky interaction between the heuristic and
//!   the posted constraints cannot dominate the run;
//! * **symmetric refutation** (`strategies::run_sbds`) – leave the model
//!   untouched and instead prune symmetric images of refuted branches
//!   during search.
//!
//! The [`oracle`] module re-derives everything by brute force (independent
//! generate-and-test enumeration) and checks the transformation laws on
//! concrete models, so the algebra in [`perm`] and [`symbreak`] is testable
//! against ground truth rather than against itself.

pub mod constraints;
pub mod csp;
pub mod models;
pub mod oracle;
pub mod perm;
pub mod rng;
pub mod search;
pub mod strategies;
pub mod symbreak;

pub use csp::{Assignment, Csp, Domain, Objective};
pub use perm::{Permutation, Symmetry, SymmetryGroup};
pub use symbreak::SymBreakSet;
