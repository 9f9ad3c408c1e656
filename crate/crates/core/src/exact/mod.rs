//! Exact linear algebra over Q and Q(i): the substrate for every other module.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to use from multiple threads.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
