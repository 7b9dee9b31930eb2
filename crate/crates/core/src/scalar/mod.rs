//! Exact coefficient rings.
//!
//! Everything above this module is generic over [`Scalar`]; the concrete
//! rings are Laurent polynomials in `q, t` ([`LaurentPoly`]), their
//! factored-denominator fractions ([`Factored`]), and residues modulo a
//! cyclotomic polynomial ([`CyclotomicScalar`]).

mod cyclotomic;
mod factored;
mod laurent;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicScalar};
pub use factored::Factored;
pub use laurent::{LaurentPoly, Monomial, Target};

/// A commutative ring with exact arithmetic.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + From<i64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `self` when `negate` is false, `-self` otherwise.
    fn signed(self, negate: bool) -> Self {
        if negate {
            -self
        } else {
            self
        }
    }

    /// True when printing needs parentheses as a factor, e.g. `(t + q)`.
    fn is_compound(&self) -> bool {
        false
    }
}

/// Scalars with a partial multiplicative inverse.
pub trait TryInverse: Scalar {
    fn try_inverse(&self) -> crate::error::Result<Self>;
}

impl TryInverse for LaurentPoly<BigInt> {
    /// Only `±q^a t^b` are units.
    fn try_inverse(&self) -> crate::error::Result<Self> {
        match self.as_monomial() {
            Some((m, c)) if c.is_one() || (-c.clone()).is_one() => Ok(LaurentPoly::monomial(c.clone(), -m.q, -m.t)),
            _ => Err(crate::error::Error::NotInvertible(self.to_string())),
        }
    }
}

impl TryInverse for Factored<BigInt> {
    fn try_inverse(&self) -> crate::error::Result<Self> {
        self.try_invert()
    }
}

/// Integral coefficients of a [`LaurentPoly`].
pub trait Coefficient: Scalar + Ord {
    /// `self / d` when the division is exact.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Scalar for BigInt {}

impl Coefficient for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (quo, rem) = (self / d, self % d);
        rem.is_zero().then_some(quo)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// `(−1)^k` as a boolean "negate" flag.
pub(crate) fn odd(k: usize) -> bool {
    k % 2 == 1
}

pub(crate) fn is_one<S: Scalar>(x: &S) -> bool {
    *x == S::one()
}
