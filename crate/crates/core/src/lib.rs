//! Exact computations around Waring rank, apolarity and secant varieties.
//!
//! Everything runs over the rationals (optionally over a prime field for
//! fast probabilistic ranks): catalecticant matrices and Hilbert functions
//! of apolar algebras, Sylvester's algorithm for binary forms, Terracini
//! dimension counts for secant varieties of Veronese and Segre varieties,
//! tensor flattenings and the Strassen equation for 3x3x3 tensors.

pub mod apolarity;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod secant;
pub mod tensor;

pub use error::{Error, Result};
pub use matrix::QMatrix;
pub use poly::{HomogPoly, LinearForm, Monomial, ProjPoint};
pub use scalar::{Arithmetic, ArithmeticMode, PrimeField, Rational};
pub use tensor::{DenseTensor, FlatteningSpec};
