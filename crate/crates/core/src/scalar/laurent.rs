use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Coefficient, Scalar};
use crate::error::{Error, Result};

/// The monomial `q^q t^t`, ordered by total degree, then `q`, then `t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub q: i32,
    pub t: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, t: 0 };

    pub fn new(q: i32, t: i32) -> Self {
        Monomial { q, t }
    }

    pub fn degree(self) -> i32 {
        self.q + self.t
    }

    fn key(self) -> (i32, i32, i32) {
        (self.degree(), self.q, self.t)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.q + o.q, self.t + o.t)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in [("q", self.q), ("t", self.t)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Image of a variable under [`LaurentPoly::substitute`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Q,
    T,
    InvQ,
    InvT,
    Int(i64),
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "q" => Target::Q,
            "t" => Target::T,
            "1/q" => Target::InvQ,
            "1/t" => Target::InvT,
            other => Target::Int(other.parse().map_err(|_| Error::Parse(format!("bad substitution `{other}`")))?),
        })
    }
}

/// A Laurent polynomial in `q` and `t` with coefficients in `C`.
///
/// Zero coefficients are never stored; the empty map is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn monomial(coef: C, q: i32, t: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(Monomial::new(q, t), coef);
        }
        LaurentPoly { terms }
    }

    /// `q^a t^b` with coefficient one.
    pub fn qt(a: i32, b: i32) -> Self {
        Self::monomial(C::one(), a, b)
    }

    pub fn q() -> Self {
        Self::qt(1, 0)
    }

    pub fn t() -> Self {
        Self::qt(0, 1)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `1 − q^a t^b`.
    pub fn one_minus(a: i32, b: i32) -> Self {
        Self::one() - Self::qt(a, b)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = slot.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, q: i32, t: i32) -> C {
        self.terms.get(&Monomial::new(q, t)).cloned().unwrap_or_else(C::zero)
    }

    /// The single term of a monomial scalar.
    pub fn as_monomial(&self) -> Option<(Monomial, &C)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c))
        } else {
            None
        }
    }

    /// The constant value when no variable occurs.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, x)| (*m, x.clone() * c.clone())))
    }

    pub fn shift(&self, by: Monomial) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m * by, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Applies the monomial substitution `q ↦ q_to`, `t ↦ t_to`.
    ///
    /// Integer targets other than `±1` reject negative exponents.
    pub fn substitute(&self, q_to: &Target, t_to: &Target) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let img = image(q_to, m.q)? * image(t_to, m.t)?;
            out = out + img.scale(c);
        }
        Ok(out)
    }

    /// Exchanges `q` and `t`.
    pub fn swap_qt(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (Monomial::new(m.t, m.q), c.clone())))
    }

    /// `self / d` when `d` divides `self` exactly in the Laurent ring.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dq, dt) = exponent_box(d);
        let (nq, nt) = exponent_box(self);
        // supp(quotient) lies in the difference of the exponent boxes
        let q_range = (nq.0 - dq.0)..=(nq.1 - dq.1);
        let t_range = (nt.0 - dt.0)..=(nt.1 - dt.1);
        let (dlead, dcoef) = d.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))?;
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((lead, coef)) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let m = Monomial::new(lead.q - dlead.q, lead.t - dlead.t);
            if !q_range.contains(&m.q) || !t_range.contains(&m.t) {
                return None;
            }
            let c = coef.div_exact(&dcoef)?;
            let term = Self::monomial(c, m.q, m.t);
            rem = rem - &term * d;
            quo = quo + term;
        }
        Some(quo)
    }

    /// Coefficient vector in `q` when no `t` and no negative power occurs.
    pub fn univariate_q(&self) -> Option<Vec<C>> {
        if self.terms.keys().any(|m| m.t != 0 || m.q < 0) {
            return None;
        }
        let deg = self.terms.keys().map(|m| m.q).max().unwrap_or(-1);
        let mut v = vec![C::zero(); (deg + 1) as usize];
        for (m, c) in &self.terms {
            v[m.q as usize] = c.clone();
        }
        Some(v)
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.q >= 0 && m.t >= 0)
    }

    /// True when all coefficients are nonnegative.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `[a, b, "coef"]` triples in canonical order.
    pub fn to_triples(&self) -> Vec<(i32, i32, String)> {
        self.terms.iter().map(|(m, c)| (m.q, m.t, c.to_string())).collect()
    }
}

fn image<C: Coefficient>(target: &Target, e: i32) -> Result<LaurentPoly<C>> {
    Ok(match target {
        Target::Q => LaurentPoly::qt(e, 0),
        Target::T => LaurentPoly::qt(0, e),
        Target::InvQ => LaurentPoly::qt(-e, 0),
        Target::InvT => LaurentPoly::qt(0, -e),
        Target::Int(v) => {
            if e < 0 && v.abs() != 1 {
                return Err(Error::Substitution(format!("{v}^{e} is not an integer")));
            }
            let base = LaurentPoly::constant(C::from(*v));
            base.pow(e.unsigned_abs())
        }
    })
}

fn exponent_box<C>(p: &LaurentPoly<C>) -> ((i32, i32), (i32, i32)) {
    let mut qs = (i32::MAX, i32::MIN);
    let mut ts = (i32::MAX, i32::MIN);
    for m in p.terms.keys() {
        qs = (qs.0.min(m.q), qs.1.max(m.q));
        ts = (ts.0.min(m.t), ts.1.max(m.t));
    }
    (qs, ts)
}

impl<C: Coefficient> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coefficient> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Coefficient> From<i64> for LaurentPoly<C> {
    fn from(v: i64) -> Self {
        Self::constant(C::from(v))
    }
}

impl<C: Coefficient> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<C: Coefficient> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<C: Coefficient> Add for LaurentPoly<C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> Add<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Sub for LaurentPoly<C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Coefficient> Sub<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Coefficient> Mul<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(*m1 * *m2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for LaurentPoly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<C: Coefficient> Scalar for LaurentPoly<C> {
    fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> Serialize for LaurentPoly<C> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        self.to_triples().serialize(s)
    }
}

impl<'de, C: Coefficient + std::str::FromStr> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(i32, i32, String)>::deserialize(d)?;
        let mut p = Self::zero();
        for (a, b, c) in triples {
            let c = c.parse::<C>().map_err(|_| D::Error::custom(format!("bad coefficient `{c}`")))?;
            p.add_term(Monomial::new(a, b), c);
        }
        Ok(p)
    }
}

impl<C: Coefficient> std::str::FromStr for LaurentPoly<C>
where
    C: std::str::FromStr,
{
    type Err = Error;

    /// Parses sums of terms like `3*q^2*t - q*t^-1 + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad scalar `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let neg = rest.starts_with('-');
            if rest.starts_with('-') || rest.starts_with('+') {
                rest = &rest[1..];
            }
            // a term ends at the next sign not preceded by '^'
            let bytes = rest.as_bytes();
            let end = (1..bytes.len())
                .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^')
                .unwrap_or(bytes.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let mut coef = C::one();
            let mut mono = Monomial::ONE;
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<i32>().map_err(|_| bad())?),
                    None => (factor, 1),
                };
                match base {
                    "q" => mono.q += exp,
                    "t" => mono.t += exp,
                    num if exp == 1 => coef = coef * num.parse::<C>().map_err(|_| bad())?,
                    _ => return Err(bad()),
                }
            }
            out.add_term(mono, coef.signed(neg));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    type P = LaurentPoly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(P::one_minus(1, 0) * (P::one() + P::q()), P::one_minus(2, 0));
        let x = p("3*q^2*t - q*t^-1 + 1");
        assert_eq!(x.clone() + P::zero(), x);
        let lhs = (P::t() + P::qt(2, 0)) * (P::qt(0, 2) + P::q());
        assert_eq!(lhs, p("t^3 + q*t + q^2*t^2 + q^3"));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("3*q^2*t - q*t^-1 + 1").to_string(), "1 - q*t^-1 + 3*q^2*t");
        assert_eq!(p("t + q").to_string(), "t + q");
        assert_eq!(p("-q*t").to_string(), "-q*t");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("2*q^-3").to_string(), "2*q^-3");
    }

    #[test]
    fn substitution_examples() {
        let x = P::qt(1, 2);
        assert_eq!(x.substitute(&Target::InvQ, &Target::InvT).unwrap(), P::qt(-1, -2));
        assert_eq!(p("1 + q").substitute(&Target::Int(1), &Target::T).unwrap(), P::from(2));
        assert_eq!(P::qt(2, 1).substitute(&Target::T, &Target::Q).unwrap(), P::qt(1, 2));
        assert_eq!(P::qt(2, 1).swap_qt(), P::qt(1, 2));
        assert!(P::qt(-1, 0).substitute(&Target::Int(2), &Target::T).is_err());
        assert_eq!(P::qt(-3, 0).substitute(&Target::Int(-1), &Target::T).unwrap(), P::from(-1));
    }

    #[test]
    fn exact_division() {
        let d = P::one_minus(1, 1);
        assert_eq!(P::one_minus(2, 2).div_exact(&d), Some(P::one() + P::qt(1, 1)));
        assert_eq!(P::one_minus(3, 1).div_exact(&d), None);
        assert_eq!(P::from(6).div_exact(&P::from(4)), None);
        let num = p("t^2 - q^3") * p("q*t^-1 + 5");
        assert_eq!(num.div_exact(&p("t^2 - q^3")), Some(p("q*t^-1 + 5")));
    }

    #[test]
    fn json_round_trip() {
        let x = p("3*q^2*t - q*t^-1 + 1");
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"[[0,0,"1"],[1,-1,"-1"],[2,1,"3"]]"#);
        let y: P = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-6i32..=6, -6i32..=6, -9i64..=9), 0..6)
            .prop_map(|v| P::from_terms(v.into_iter().map(|(a, b, c)| (Monomial::new(a, b), BigInt::from(c)))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn inversion_is_an_involution(x in arb_poly()) {
            let once = x.substitute(&Target::InvQ, &Target::T).unwrap();
            prop_assert_eq!(once.substitute(&Target::InvQ, &Target::T).unwrap(), x);
        }

        #[test]
        fn division_recovers_factor(x in arb_poly(), y in arb_poly()) {
            prop_assume!(!y.is_zero());
            prop_assert_eq!((&x * &y).div_exact(&y), Some(x));
        }

        #[test]
        fn text_round_trip(x in arb_poly()) {
            prop_assert_eq!(x.to_string().parse::<P>().unwrap(), x);
        }
    }
}
