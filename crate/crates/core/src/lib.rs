//! Exact computation of A∞-structures on the cohomology of finite
//! dg-algebras, Massey products via defining systems, and formality
//! certificates.

pub mod a_infinity;
pub mod cli;
pub mod complexes;
pub mod dg_algebra;
pub mod error;
pub mod formality;
pub mod massey;
pub mod transfer;
pub mod exact_linear;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;
