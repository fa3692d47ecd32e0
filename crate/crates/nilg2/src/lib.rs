//! Exact certification of coclosed G₂-structures on 7-dimensional nilpotent
//! Lie algebras.

pub mod ansatz;
pub mod exact_algebra;
pub mod exterior;
pub mod kv;
pub mod nilpotent;
pub mod g2;
pub mod obstructions;
pub mod report;
pub mod stable_forms;

pub use exact_algebra::{
    ExactSign, Field, Matrix, Poly, QuadField, QuadScalar, Rational, Scalar,
};
pub use exterior::{KForm, KVector, Mono};
pub use nilpotent::LieAlgebra;
