//! Exact arithmetic for finite linear groups.
//!
//! The crate computes the Minkowski bound `M(n)` and the Schur bound
//! `S(n, K)` on orders of finite groups of `n × n` matrices, builds the
//! integer matrix groups that attain `M(n)`, and checks the divisibility
//! statements surrounding them with exact integers, rationals and
//! cyclotomic numbers.
//!
//! Heavy inner loops (group closure, brute-force enumeration over finite
//! fields, per-element order computations) run on rayon when the
//! `parallel` feature is on. Every result is independent of the
//! [`Execution`] mode chosen.

pub mod bounds;
pub mod certificate;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod finfield;
pub mod matgroup;
pub mod seqcheck;

pub use error::{Error, Result};
pub use exec::Execution;
