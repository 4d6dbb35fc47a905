//! Exact computational algebra for root-system combinatorics over finite
//! reductive groups: pseudo-Levi posets and their Möbius functions, generic
//! semisimple tuples, interpolated Green-function tables, the two point-count
//! formulas (tensor multiplicity and additive character varieties), and a
//! finite-field brute-force oracle that cross-validates all of it.

pub mod exact;
pub mod refdata;
pub mod rootsys;
pub mod genericity;
pub mod appendix;
pub mod counting;
pub mod liedata;
pub mod oracle;
pub mod subposet;

pub use exact::{CountFn, IntMat, QPoly, QuadNum, Rat, RatFn};
