//! Exact rational scalars, vectors, matrices and exterior algebra.

mod affine;
mod matrix;
mod multivector;
mod scalar;
mod vector;

pub use affine::affine_dependence;
pub use matrix::{det_integer, Matrix};
pub use multivector::{top_pairing, wedge_to_vector, wedge_vectors, Multivector, MAX_DIM};
pub use scalar::ExactScalar;
pub use vector::Vector;
