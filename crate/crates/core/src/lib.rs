//! Exact solvers for transferable-utility roommate markets: integer and
//! fractional optima, stability verdicts with certificates, interventions
//! that restore stability, and large-market gap sequences.
//!
//! All arithmetic is over exact rationals.

#![allow(clippy::needless_range_loop)]

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod instance;
pub mod interventions;
pub mod rational;
pub mod report;
pub mod roommate;
pub mod stability;
pub mod transport;

pub use error::{Error, Result};
pub use instance::{parse_instance, symmetrize, Instance, ValidationReport};
pub use interventions::{clone, recover_ordered_matching, stabilize_by_removal, OrderedMatching, RemovalPlan};
pub use rational::Rational;
pub use roommate::{brute_force_optimum, solve_integer_optimum, RoommateMatching};
pub use stability::{decide_stability, diagnose_matching, verify_outcome, Outcome, StabilityVerdict};
pub use transport::{half_integral_optimum, solve_transportation, FractionalMatching};
