//! Exact scalar arithmetic and dense linear algebra over `F_p` and `Q`.

mod field;
mod matrix;
mod rational;
pub mod sparse;
mod subspace;

pub use field::{is_prime, Field, FieldSpec, PrimeField, RationalField, ScalarError};
pub use matrix::Matrix;
pub use rational::Rational;
pub use subspace::{combine, LinAlgError, RelativeBasis, Subspace};
