//! Exact computation of universality types for sequences of points, oriented
//! lines and k-flats, together with rapidly increasing (RI) matrices and the
//! construction of homogeneous oriented-line sequences realising every
//! two-sided stacked permutation.
//!
//! All geometry runs over arbitrary-precision rationals; nothing is rounded.

pub mod construct;
pub mod continuous;
pub mod error;
pub mod exact;

pub use error::{Error, Result};
pub use exact::{ExactScalar, Matrix, Multivector, Vector};
pub mod par;
pub mod explore;
pub mod flats;
pub mod io;
pub mod lines;
pub mod points;
pub mod rimatrix;
