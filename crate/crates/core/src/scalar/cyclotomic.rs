use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// The class of a polynomial in `q` modulo the cyclotomic polynomial `Φ_r(q)`.
///
/// Zero residue means the polynomial vanishes at every primitive `r`-th
/// root of unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicScalar {
    r: u32,
    residue: Vec<BigInt>,
}

impl CyclotomicScalar {
    pub fn order(&self) -> u32 {
        self.r
    }

    /// Coefficients of the reduced representative, constant term first.
    pub fn residue(&self) -> &[BigInt] {
        &self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_empty()
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LaurentPoly::from_terms(
            self.residue.iter().enumerate().map(|(i, c)| (super::Monomial::new(i as i32, 0), c.clone())),
        );
        write!(f, "{p} mod Phi_{}(q)", self.r)
    }
}

/// `Φ_r(q)` as coefficients, constant term first.
pub fn cyclotomic_polynomial(r: u32) -> Vec<BigInt> {
    assert!(r >= 1);
    // q^r − 1 divided by Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); r as usize + 1];
    p[0] = -BigInt::one();
    p[r as usize] = BigInt::one();
    for d in (1..r).filter(|d| r.is_multiple_of(*d)) {
        let (quo, rem) = divmod_monic(&p, &cyclotomic_polynomial(d));
        debug_assert!(rem.is_empty());
        p = quo;
    }
    p
}

/// Quotient and remainder by a monic divisor; remainder is trimmed.
fn divmod_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
        quo[k] = c;
    }
    trim(&mut rem);
    trim(&mut quo);
    (quo, rem)
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl LaurentPoly<BigInt> {
    /// Residue modulo `Φ_r(q)` for `2 ≤ r ≤ 12`.
    pub fn reduce_cyclotomic(&self, r: u32) -> Result<CyclotomicScalar> {
        if !(2..=12).contains(&r) {
            return Err(Error::OutOfRange(format!("root order {r} outside 2..=12")));
        }
        let coeffs = self.univariate_q().ok_or(Error::NotUnivariate)?;
        let (_, residue) = divmod_monic(&coeffs, &cyclotomic_polynomial(r));
        Ok(CyclotomicScalar { r, residue })
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    type P = LaurentPoly<BigInt>;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn reduction_examples() {
        assert!(P::one_minus(2, 0).reduce_cyclotomic(2).unwrap().is_zero());
        let r = P::one_minus(1, 0).reduce_cyclotomic(2).unwrap();
        assert_eq!(r.residue(), ints(&[2]).as_slice());
        let phi3: P = "1 + q + q^2".parse().unwrap();
        assert!(phi3.reduce_cyclotomic(3).unwrap().is_zero());
        assert!(matches!(P::t().reduce_cyclotomic(2), Err(Error::NotUnivariate)));
        assert!(matches!(P::qt(-1, 0).reduce_cyclotomic(2), Err(Error::NotUnivariate)));
        assert!(P::q().reduce_cyclotomic(13).is_err());
    }

    proptest! {
        #[test]
        fn multiples_of_phi_vanish(r in 2u32..=12, coeffs in prop::collection::vec(-9i64..=9, 0..8)) {
            let p = P::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (super::super::Monomial::new(i as i32, 0), BigInt::from(c))));
            let phi = P::from_terms(cyclotomic_polynomial(r).into_iter().enumerate().map(|(i, c)| (super::super::Monomial::new(i as i32, 0), c)));
            prop_assert!((&p * &phi).reduce_cyclotomic(r).unwrap().is_zero());
        }

        #[test]
        fn reduction_is_additive_and_multiplicative(r in 2u32..=12, a in prop::collection::vec(-5i64..=5, 0..6), b in prop::collection::vec(-5i64..=5, 0..6)) {
            let mk = |v: &Vec<i64>| P::from_terms(v.iter().enumerate().map(|(i, &c)| (super::super::Monomial::new(i as i32, 0), BigInt::from(c))));
            let (x, y) = (mk(&a), mk(&b));
            let lift = |c: &CyclotomicScalar| P::from_terms(c.residue().iter().enumerate().map(|(i, c)| (super::super::Monomial::new(i as i32, 0), c.clone())));
            let rx = lift(&x.reduce_cyclotomic(r).unwrap());
            let ry = lift(&y.reduce_cyclotomic(r).unwrap());
            prop_assert_eq!((&x * &y).reduce_cyclotomic(r).unwrap(), (&rx * &ry).reduce_cyclotomic(r).unwrap());
            prop_assert_eq!((&x + &y).reduce_cyclotomic(r).unwrap(), (&rx + &ry).reduce_cyclotomic(r).unwrap());
        }
    }
}
