use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Coefficient, LaurentPoly, Monomial, Scalar};
use crate::error::{Error, Result};

/// A rational scalar `numerator / ∏ (1 − q^a t^b)^m`.
///
/// The denominator is kept as a multiset of binomial factors; no general
/// gcd is attempted. Equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct Factored<C> {
    numerator: LaurentPoly<C>,
    denominator: BTreeMap<(u32, u32), u32>,
}

/// Multiplicities of the factors `1 − q^a t^b`, keyed by `(a, b)`.
type Denominator = BTreeMap<(u32, u32), u32>;

impl<C: Coefficient> Factored<C> {
    pub fn new(numerator: LaurentPoly<C>) -> Self {
        Factored { numerator, denominator: BTreeMap::new() }
    }

    /// `1 / ∏ (1 − q^a t^b)` over the given exponent pairs.
    pub fn reciprocal_of(factors: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut out = Self::one();
        for (a, b) in factors {
            out = out.with_denominator_factor(a, b, 1)?;
        }
        Ok(out)
    }

    /// Divides by `(1 − q^a t^b)^mult`.
    pub fn with_denominator_factor(mut self, a: u32, b: u32, mult: u32) -> Result<Self> {
        if (a, b) == (0, 0) {
            return Err(Error::NotInvertible("1 - 1 = 0".into()));
        }
        if mult > 0 {
            *self.denominator.entry((a, b)).or_insert(0) += mult;
        }
        Ok(self)
    }

    pub fn numerator(&self) -> &LaurentPoly<C> {
        &self.numerator
    }

    pub fn denominator_factors(&self) -> impl Iterator<Item = ((u32, u32), u32)> + '_ {
        self.denominator.iter().map(|(k, v)| (*k, *v))
    }

    /// The expanded denominator polynomial.
    pub fn denominator_poly(&self) -> LaurentPoly<C> {
        expand(&self.denominator)
    }

    /// The value as a Laurent polynomial when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly<C>> {
        self.denominator.is_empty().then_some(&self.numerator)
    }

    /// Removes denominator factors that divide the numerator exactly.
    pub fn try_cancel(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return self;
        }
        let keys: Vec<_> = self.denominator.keys().copied().collect();
        for (a, b) in keys {
            let f = binomial::<C>(a, b);
            while let Some(m) = self.denominator.get_mut(&(a, b)) {
                match self.numerator.div_exact(&f) {
                    Some(quo) => {
                        self.numerator = quo;
                        *m -= 1;
                        if *m == 0 {
                            self.denominator.remove(&(a, b));
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    /// The multiplicative inverse, when the numerator factors as a unit
    /// monomial times binomials `1 − q^a t^b` with `a, b ≥ 0`.
    pub fn try_invert(&self) -> Result<Self> {
        let fail = || Error::NotInvertible(self.to_string());
        if self.numerator.is_zero() {
            return Err(fail());
        }
        let mut rest = self.numerator.clone();
        let mut found: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        // every factor (1 − q^a t^b) divides the span between the extreme
        // exponents, which bounds the search
        let (qmax, tmax) = rest.terms().fold((0i32, 0i32), |(qa, ta), (m, _)| (qa.max(m.q), ta.max(m.t)));
        let (qmin, tmin) = rest.terms().fold((i32::MAX, i32::MAX), |(qa, ta), (m, _)| (qa.min(m.q), ta.min(m.t)));
        let qspan = (qmax - qmin).max(0) as u32;
        let tspan = (tmax - tmin).max(0) as u32;
        let mut progress = true;
        while progress && rest.num_terms() > 1 {
            progress = false;
            // largest binomials first, so 1 − m² is not split as (1 − m)(1 + m)
            'search: for deg in (1..=(qspan + tspan)).rev() {
                for a in 0..=deg.min(qspan) {
                    let b = deg - a;
                    if b > tspan {
                        continue;
                    }
                    if let Some(quo) = rest.div_exact(&binomial(a, b)) {
                        rest = quo;
                        *found.entry((a, b)).or_insert(0) += 1;
                        progress = true;
                        break 'search;
                    }
                }
            }
        }
        let (m, c) = rest.as_monomial().ok_or_else(fail)?;
        if !(c.is_one() || (-c.clone()).is_one()) {
            return Err(fail());
        }
        let unit_inverse = LaurentPoly::monomial(c.clone(), -m.q, -m.t);
        Ok(Factored { numerator: &expand(&self.denominator) * &unit_inverse, denominator: found })
    }

    /// Exchanges `q` and `t` in numerator and denominator.
    pub fn swap_qt(&self) -> Self {
        Factored {
            numerator: self.numerator.swap_qt(),
            denominator: self.denominator.iter().map(|(&(a, b), &m)| ((b, a), m)).collect(),
        }
    }

    /// Brings two values onto the lcm of their denominators.
    fn common(&self, other: &Self) -> (LaurentPoly<C>, LaurentPoly<C>, Denominator) {
        let mut lcm = self.denominator.clone();
        for (k, &m) in &other.denominator {
            let e = lcm.entry(*k).or_insert(0);
            *e = (*e).max(m);
        }
        let lift = |x: &Self| {
            let missing = lcm
                .iter()
                .filter_map(|(k, &m)| {
                    let have = x.denominator.get(k).copied().unwrap_or(0);
                    (m > have).then_some((*k, m - have))
                })
                .collect();
            &x.numerator * &expand(&missing)
        };
        (lift(self), lift(other), lcm)
    }
}

fn binomial<C: Coefficient>(a: u32, b: u32) -> LaurentPoly<C> {
    LaurentPoly::one_minus(a as i32, b as i32)
}

fn expand<C: Coefficient>(den: &BTreeMap<(u32, u32), u32>) -> LaurentPoly<C> {
    den.iter().fold(LaurentPoly::one(), |acc, (&(a, b), &m)| &acc * &binomial::<C>(a, b).pow(m))
}

impl<C: Coefficient> From<LaurentPoly<C>> for Factored<C> {
    fn from(p: LaurentPoly<C>) -> Self {
        Factored::new(p)
    }
}

impl<C: Coefficient> From<i64> for Factored<C> {
    fn from(v: i64) -> Self {
        Factored::new(LaurentPoly::from(v))
    }
}

impl<C: Coefficient> PartialEq for Factored<C> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.common(other);
        a == b
    }
}

impl<C: Coefficient> Zero for Factored<C> {
    fn zero() -> Self {
        Factored::new(LaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl<C: Coefficient> One for Factored<C> {
    fn one() -> Self {
        Factored::new(LaurentPoly::one())
    }
}

impl<C: Coefficient> Add for Factored<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (a, b, den) = self.common(&rhs);
        Factored { numerator: a + b, denominator: den }.try_cancel()
    }
}

impl<C: Coefficient> Sub for Factored<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Coefficient> Neg for Factored<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Factored { numerator: -self.numerator, denominator: self.denominator }
    }
}

impl<C: Coefficient> Mul for Factored<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut den = self.denominator;
        for (k, m) in rhs.denominator {
            *den.entry(k).or_insert(0) += m;
        }
        Factored { numerator: &self.numerator * &rhs.numerator, denominator: den }.try_cancel()
    }
}

impl<C: Coefficient> Scalar for Factored<C> {
    fn is_compound(&self) -> bool {
        !self.denominator.is_empty() || self.numerator.is_compound()
    }
}

impl<C: Coefficient> fmt::Display for Factored<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        if self.numerator.is_compound() {
            write!(f, "({})/(", self.numerator)?;
        } else {
            write!(f, "{}/(", self.numerator)?;
        }
        for (i, (&(a, b), &m)) in self.denominator.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "(1 - {})", Monomial::new(a as i32, b as i32))?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        f.write_str(")")
    }
}

impl<C: Coefficient> fmt::Debug for Factored<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> Serialize for Factored<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let den: Vec<(u32, u32, u32)> = self.denominator.iter().map(|(&(a, b), &m)| (a, b, m)).collect();
        let mut st = s.serialize_struct("Factored", 2)?;
        st.serialize_field("numerator", &self.numerator)?;
        st.serialize_field("denominator", &den)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    type P = LaurentPoly<BigInt>;
    type F = Factored<BigInt>;

    fn over(num: P, factors: &[(u32, u32)]) -> F {
        F::new(num) * F::reciprocal_of(factors.iter().copied()).unwrap()
    }

    #[test]
    fn cancellation_examples() {
        let s = "3*q - t^2".parse::<P>().unwrap();
        let x = over(&P::one_minus(1, 1) * &s, &[(1, 1)]).try_cancel();
        assert_eq!(x.as_poly(), Some(&s));

        let y = over(P::one_minus(2, 2), &[(1, 1)]).try_cancel();
        assert_eq!(y.as_poly(), Some(&(P::one() + P::qt(1, 1))));

        let z = over(s.clone(), &[(3, 1)]).try_cancel();
        assert_eq!(z.denominator_factors().collect::<Vec<_>>(), vec![((3, 1), 1)]);
        assert_eq!(z.numerator(), &s);
    }

    #[test]
    fn inverse_of_binomial_products() {
        let x = over(P::one_minus(1, 2) * P::one_minus(2, 0) * P::qt(1, -1), &[(1, 1)]);
        let inv = x.try_invert().unwrap();
        assert_eq!(x * inv, F::one());
        assert!(F::new("1 + q + q^3".parse().unwrap()).try_invert().is_err());
        assert!(F::zero().try_invert().is_err());
    }

    #[test]
    fn printing() {
        let x = over(P::one() + P::q(), &[(1, 1), (1, 1), (2, 0)]);
        assert_eq!(x.to_string(), "(1 + q)/((1 - q*t)^2*(1 - q^2))");
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-3i32..=3, -3i32..=3, -9i64..=9), 0..5)
            .prop_map(|v| P::from_terms(v.into_iter().map(|(a, b, c)| (Monomial::new(a, b), BigInt::from(c)))))
    }

    fn arb_factors() -> impl Strategy<Value = Vec<(u32, u32)>> {
        prop::collection::vec((1u32..=3, 0u32..=2), 0..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn agrees_with_cross_multiplication(x in arb_poly(), dx in arb_factors(), y in arb_poly(), dy in arb_factors()) {
            let fx = over(x.clone(), &dx);
            let fy = over(y.clone(), &dy);
            let ex = F::reciprocal_of(dx.iter().copied()).unwrap().denominator_poly();
            let ey = F::reciprocal_of(dy.iter().copied()).unwrap().denominator_poly();
            // (x/Dx + y/Dy)·Dx·Dy = x·Dy + y·Dx
            let sum = fx.clone() + fy.clone();
            prop_assert_eq!(sum, over(&(&x * &ey) + &(&y * &ex), &[dx.clone(), dy.clone()].concat()));
            let prod = fx * fy;
            prop_assert_eq!(prod, over(&x * &y, &[dx, dy].concat()));
        }
    }
}
