//! Exact computational algebra for equisingularity analysis of map-germs.
//!
//! Everything runs over the rationals with no floating point and no hashing
//! nondeterminism: identical inputs produce byte-identical Gröbner bases,
//! certificates, and reports. Verdicts are conservative — `CERTIFIED` means
//! a replayable exact certificate exists, `REFUTED` means an explicit
//! witness is attached, and everything else is reported as evidence, not
//! proof.

pub mod curves;
pub mod equising;
pub mod formats;
pub mod groebner;
pub mod ideal_ops;
pub mod jacobian;
pub mod local;
pub mod monomial;
pub mod mult;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod report;
pub mod ring;
pub mod scenarios;
pub mod series;
pub mod verdict;

pub use rational::Q;
