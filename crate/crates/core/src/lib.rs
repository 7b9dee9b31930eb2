//! Exact arithmetic for noncommutative symmetric functions and their
//! q, t-deformations.

pub mod commutative;
pub mod composition;
pub mod error;
pub mod family;
pub mod hlq;
pub mod macqt;
pub mod nabla;
pub mod nsym;
pub mod qsym;
pub mod render;
pub mod scalar;
pub mod verify;

use num_bigint::BigInt;

pub use composition::Composition;
pub use error::{Error, Result};
pub use nsym::{Basis, Matrix, NSymElement, NSymOperator, NSymTensor};
pub use scalar::{CyclotomicScalar, Factored, LaurentPoly, Monomial, Scalar, Target};

/// Laurent polynomials in `q, t` with integer coefficients.
pub type QTScalar = LaurentPoly<BigInt>;
/// Fractions with products of `1 − q^a t^b` in the denominator.
pub type FactoredScalar = Factored<BigInt>;
pub type NSym = NSymElement<QTScalar>;
pub type NSymFactored = NSymElement<FactoredScalar>;
