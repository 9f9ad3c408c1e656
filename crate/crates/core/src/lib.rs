//! Exact computations with free nilpotent Lie algebras: Lyndon bases, GL(V)
//! representation decompositions, verbal ideals and pseudo-free quotients,
//! and the Kuranishi deformation theory of the associated complex
//! parallelisable nilmanifolds.
//!
//! All arithmetic is exact over Q or Q(i); no floating point anywhere.

pub mod cli;
pub mod error;
pub mod exact;
pub mod freelie;
pub mod io;
pub mod kuranishi;
pub mod schur;
pub mod verbal;

pub use error::{Error, Result};
