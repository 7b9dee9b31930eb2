//! The Hopf algebra of noncommutative symmetric functions.
//!
//! Elements are homogeneous and carry a basis tag. The `h`, `e` and `s`
//! bases convert freely; the deformed families convert to `s` through their
//! defining expansions.

mod hopf;
mod matrix;
mod operator;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::composition::{all_compositions, coarsenings, Composition};
use crate::error::{Error, Result};
use crate::scalar::{odd, Scalar, Target};
use crate::QTScalar;

pub use hopf::NSymTensor;
pub use matrix::Matrix;
pub use operator::NSymOperator;

/// A ring that contains the Laurent polynomials in `q, t`.
pub trait QtRing: Scalar + From<QTScalar> {}

impl<S: Scalar + From<QTScalar>> QtRing for S {}

/// `q^a t^b` in any [`QtRing`].
pub fn qt<S: QtRing>(a: i32, b: i32) -> S {
    S::from(QTScalar::qt(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    H,
    E,
    S,
    /// `H^q_α`.
    Hq,
    /// `H^q_α` with `q` renamed to `t`.
    Htq,
    Hqt,
    Htilde,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::H => "h",
            Basis::E => "e",
            Basis::S => "s",
            Basis::Hq => "Hq",
            Basis::Htq => "Htq",
            Basis::Hqt => "Hqt",
            Basis::Htilde => "Htilde",
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Basis::H | Basis::E | Basis::S)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "h" => Basis::H,
            "e" => Basis::E,
            "s" => Basis::S,
            "Hq" => Basis::Hq,
            "Htq" | "Ht" => Basis::Htq,
            "Hqt" => Basis::Hqt,
            "Htilde" => Basis::Htilde,
            other => return Err(Error::UnsupportedBasis(other.into())),
        })
    }
}

/// A homogeneous element of NSym.
#[derive(Clone, PartialEq)]
pub struct NSymElement<S> {
    degree: usize,
    basis: Basis,
    terms: BTreeMap<Composition, S>,
}

pub(crate) fn accumulate<K: Ord, S: Scalar>(map: &mut BTreeMap<K, S>, key: K, c: S) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = std::mem::replace(o.get_mut(), S::zero()) + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl<S: Scalar> NSymElement<S> {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        NSymElement { degree, basis, terms: BTreeMap::new() }
    }

    /// The basis element indexed by `alpha`.
    pub fn basis_element(basis: Basis, alpha: &Composition) -> Self {
        let mut x = Self::zero(alpha.size(), basis);
        x.terms.insert(alpha.clone(), S::one());
        x
    }

    pub fn s(alpha: &Composition) -> Self {
        Self::basis_element(Basis::S, alpha)
    }

    pub fn h(alpha: &Composition) -> Self {
        Self::basis_element(Basis::H, alpha)
    }

    pub fn e(alpha: &Composition) -> Self {
        Self::basis_element(Basis::E, alpha)
    }

    /// The unit `1 = s_∅`.
    pub fn unit() -> Self {
        Self::s(&Composition::empty())
    }

    pub fn from_terms(degree: usize, basis: Basis, terms: impl IntoIterator<Item = (Composition, S)>) -> Result<Self> {
        let mut x = Self::zero(degree, basis);
        for (alpha, c) in terms {
            x.add_term(alpha, c)?;
        }
        Ok(x)
    }

    pub fn add_term(&mut self, alpha: Composition, c: S) -> Result<()> {
        if alpha.size() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: alpha.size() });
        }
        accumulate(&mut self.terms, alpha, c);
        Ok(())
    }

    /// Adds a term whose index is known to have the right size.
    pub(crate) fn push(&mut self, alpha: Composition, c: S) {
        debug_assert_eq!(alpha.size(), self.degree);
        accumulate(&mut self.terms, alpha, c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &S)> {
        self.terms.iter()
    }

    /// Number of nonzero terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &Composition) -> S {
        self.terms.get(alpha).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree, self.basis);
        for (a, x) in &self.terms {
            out.push(a.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn map_coefficients<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> NSymElement<T> {
        let mut out = NSymElement::zero(self.degree, self.basis);
        for (a, x) in &self.terms {
            out.push(a.clone(), f(x));
        }
        out
    }

    /// Same coefficients, relabelled indices (must preserve size).
    fn map_indices(&self, basis: Basis, mut f: impl FnMut(&Composition) -> (Composition, bool)) -> Self {
        let mut out = Self::zero(self.degree, basis);
        for (a, x) in &self.terms {
            let (b, negate) = f(a);
            out.push(b, x.clone().signed(negate));
        }
        out
    }

    /// Linear extension of `alpha ↦ image(alpha)` into an output of the given degree and basis.
    pub(crate) fn linear_map(
        &self,
        degree: usize,
        basis: Basis,
        mut image: impl FnMut(&Composition) -> NSymElement<S>,
    ) -> Self {
        let mut out = Self::zero(degree, basis);
        for (a, x) in &self.terms {
            let y = image(a);
            debug_assert_eq!(y.basis, basis);
            for (b, c) in y.terms {
                out.push(b, x.clone() * c);
            }
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }

    /// `self + other`, converting `other` to this basis when needed.
    pub fn try_add(&self, other: &Self) -> Result<Self>
    where
        S: QtRing,
    {
        self.check_same_shape(other)?;
        let other = if other.basis == self.basis { other.clone() } else { other.convert(self.basis)? };
        let mut out = self.clone();
        for (a, c) in other.terms {
            out.push(a, c);
        }
        Ok(out)
    }

    // ---- classical conversions -------------------------------------------

    fn s_to_h(&self) -> Self {
        self.linear_map(self.degree, Basis::H, |alpha| {
            let mut y = Self::zero(alpha.size(), Basis::H);
            for beta in coarsenings(alpha) {
                let sign = odd(alpha.len() - beta.len());
                y.push(beta, S::one().signed(sign));
            }
            y
        })
    }

    fn h_to_s(&self) -> Self {
        self.linear_map(self.degree, Basis::S, |alpha| {
            let mut y = Self::zero(alpha.size(), Basis::S);
            for beta in coarsenings(alpha) {
                y.push(beta, S::one());
            }
            y
        })
    }

    /// Swaps `h` and `e` using `h_k = Σ_{β⊨k} (−1)^{k−ℓ(β)} e_β` (and the same with roles exchanged).
    fn swap_h_e(&self, target: Basis) -> Self {
        self.linear_map(self.degree, target, |alpha| {
            let mut y = NSymElement::basis_element(target, &Composition::empty());
            for &k in alpha.parts() {
                let mut factor = Self::zero(k, target);
                for beta in all_compositions(k) {
                    let sign = odd(k - beta.len());
                    factor.push(beta, S::one().signed(sign));
                }
                y = y.concat_product(&factor);
            }
            y
        })
    }

    /// Product in a basis where basis elements multiply by concatenation.
    fn concat_product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree, self.basis);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.push(a.concat(b), x.clone() * y.clone());
            }
        }
        out
    }

    /// Product in the `s` basis: `s_β s_α = s_{β·α} + s_{β|α}`.
    fn ribbon_product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree, Basis::S);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = x.clone() * y.clone();
                out.push(a.concat(b), c.clone());
                if let Ok(att) = a.attach(b) {
                    out.push(att, c);
                }
            }
        }
        out
    }

    /// Conversion among `h`, `e`, `s` only.
    pub(crate) fn convert_classical(&self, target: Basis) -> Result<Self> {
        use Basis::*;
        if !self.basis.is_classical() {
            return Err(Error::UnsupportedBasis(self.basis.tag().into()));
        }
        Ok(match (self.basis, target) {
            (a, b) if a == b => self.clone(),
            (S, H) => self.s_to_h(),
            (H, S) => self.h_to_s(),
            (H, E) | (E, H) => self.swap_h_e(target),
            (S, E) => self.s_to_h().swap_h_e(E),
            (E, S) => self.swap_h_e(H).h_to_s(),
            (_, other) => return Err(Error::UnsupportedBasis(other.tag().into())),
        })
    }
}

impl<S: QtRing> NSymElement<S> {
    /// The `s`-expansion of a deformed basis element, with coefficients in `S`.
    fn family_in_s(basis: Basis, alpha: &Composition) -> Self {
        let x: NSymElement<QTScalar> = match basis {
            Basis::Hq => crate::hlq::h_q(alpha),
            Basis::Htq => crate::hlq::h_q(alpha).swap_qt(),
            Basis::Hqt => crate::macqt::h_qt(alpha),
            Basis::Htilde => crate::macqt::h_tilde(alpha),
            _ => unreachable!("classical bases convert directly"),
        };
        x.map_coefficients(|c| S::from(c.clone()))
    }

    pub fn to_s(&self) -> Self {
        if self.basis.is_classical() {
            return self.convert_classical(Basis::S).expect("classical conversion");
        }
        let basis = self.basis;
        self.linear_map(self.degree, Basis::S, |alpha| Self::family_in_s(basis, alpha))
    }

    /// Re-expresses the element in `target`.
    ///
    /// Every basis converts to `h`, `e`, `s`. The unitriangular families
    /// `Hq` and `Htq` are also valid targets; `Hqt` and `Htilde` are not.
    pub fn convert(&self, target: Basis) -> Result<Self> {
        if self.basis == target {
            return Ok(self.clone());
        }
        match target {
            Basis::H | Basis::E | Basis::S => self.to_s().convert_classical(target),
            Basis::Hq | Basis::Htq => Ok(self.to_s().solve_unitriangular(target)),
            other => Err(Error::UnsupportedBasis(other.tag().into())),
        }
    }

    /// Expands an `s`-basis element in a family whose members are `s_α` plus coarser terms.
    fn solve_unitriangular(&self, target: Basis) -> Self {
        let mut rest = self.clone();
        let mut out = Self::zero(self.degree, target);
        while let Some(alpha) = rest.terms.keys().max_by_key(|a| (a.len(), a.phi_index())).cloned() {
            let c = rest.terms[&alpha].clone();
            let member = Self::family_in_s(target, &alpha);
            debug_assert!(crate::scalar::is_one(&member.coefficient(&alpha)));
            for (b, x) in member.terms {
                rest.push(b, -(c.clone() * x));
            }
            out.push(alpha, c);
        }
        out
    }

    /// Product; `h·h` and `e·e` stay in their basis, everything else lands in `s`.
    pub fn multiply(&self, other: &Self) -> Self {
        match (self.basis, other.basis) {
            (Basis::H, Basis::H) | (Basis::E, Basis::E) => self.concat_product(other),
            _ => self.to_s().ribbon_product(&other.to_s()),
        }
    }

    /// `S(s_α) = (−1)^{|α|} s_{α′}`; on `h` and `e` this exchanges the two bases.
    pub fn antipode(&self) -> Self {
        let n = self.degree;
        match self.basis {
            Basis::H => self.map_indices(Basis::E, |a| (a.reverse(), odd(n))),
            Basis::E => self.map_indices(Basis::H, |a| (a.reverse(), odd(n))),
            _ => self.to_s().map_indices(Basis::S, |a| (a.conjugate(), odd(n))),
        }
    }

    /// `ω′`: `s_α ↦ s_{α′}`, `h_α ↦ e_{ᾱ}`.
    pub fn omega_prime(&self) -> Self {
        match self.basis {
            Basis::H => self.map_indices(Basis::E, |a| (a.reverse(), false)),
            Basis::E => self.map_indices(Basis::H, |a| (a.reverse(), false)),
            _ => self.to_s().map_indices(Basis::S, |a| (a.conjugate(), false)),
        }
    }

    /// `ω̄`: `s_α ↦ s_{ᾱ}`, `h_α ↦ h_{ᾱ}`.
    pub fn omega_bar(&self) -> Self {
        match self.basis {
            Basis::H | Basis::E => self.map_indices(self.basis, |a| (a.reverse(), false)),
            _ => self.to_s().map_indices(Basis::S, |a| (a.reverse(), false)),
        }
    }

    /// `ω^c`: `s_α ↦ s_{α^c}`, `h_α ↦ e_α`.
    pub fn omega_c(&self) -> Self {
        match self.basis {
            Basis::H => self.map_indices(Basis::E, |a| (a.clone(), false)),
            Basis::E => self.map_indices(Basis::H, |a| (a.clone(), false)),
            _ => self.to_s().map_indices(Basis::S, |a| (a.complement(), false)),
        }
    }

    /// `⟨x, y⟩` with `⟨s_α, s_β⟩ = (−1)^{|α|+ℓ(α)} δ_{α,β^c}`.
    pub fn scalar_product(&self, other: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let (x, y) = (self.to_s(), other.to_s());
        let n = self.degree;
        let mut total = S::zero();
        for (a, c) in &x.terms {
            if let Some(d) = y.terms.get(&a.complement()) {
                let sign = n > 0 && odd(n + a.len());
                total = total + (c.clone() * d.clone()).signed(sign);
            }
        }
        Ok(total)
    }

    /// Recovers the `s`-expansion from the scalar products `⟨s_{α^c}, f⟩`.
    pub fn expand_by_scalar(&self) -> Self {
        let mut out = Self::zero(self.degree, Basis::S);
        for alpha in all_compositions(self.degree) {
            let probe = Self::s(&alpha.complement());
            let c = probe.scalar_product(self).expect("same degree");
            let sign = self.degree > 0 && odd(alpha.len() + 1);
            out.push(alpha, c.signed(sign));
        }
        out
    }

    /// Equality after normalising both sides to `s`.
    pub fn same_as(&self, other: &Self) -> bool {
        self.degree == other.degree && self.to_s() == other.to_s()
    }

    /// `self − other` in the `s` basis.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(self.to_s() - other.to_s())
    }
}

impl NSymElement<QTScalar> {
    /// Applies `q ↦ q_to, t ↦ t_to` to every coefficient.
    pub fn substitute(&self, q_to: &Target, t_to: &Target) -> Result<Self> {
        let mut out = Self::zero(self.degree, self.basis);
        for (a, c) in &self.terms {
            out.push(a.clone(), c.substitute(q_to, t_to)?);
        }
        Ok(out)
    }

    pub fn swap_qt(&self) -> Self {
        self.map_coefficients(|c| c.swap_qt())
    }
}

impl<S: Scalar> Add for NSymElement<S> {
    type Output = Self;

    /// Panics on a degree or basis mismatch; use [`NSymElement::try_add`] to convert.
    fn add(mut self, rhs: Self) -> Self {
        assert_eq!((self.degree, self.basis), (rhs.degree, rhs.basis), "adding unlike elements");
        for (a, c) in rhs.terms {
            self.push(a, c);
        }
        self
    }
}

impl<S: Scalar> Sub for NSymElement<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for NSymElement<S> {
    type Output = Self;

    fn neg(self) -> Self {
        let basis = self.basis;
        self.map_indices(basis, |a| (a.clone(), true))
    }
}

impl<S: Scalar> fmt::Display for NSymElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.basis.tag();
        let terms = self.terms_in_print_order().into_iter().map(|(a, c)| (c, format!("{tag}{a}")));
        f.write_str(&crate::render::join_terms(terms))
    }
}

impl<S: Scalar> fmt::Debug for NSymElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Terms listed in descending `phi_index`, matching the printed order.
impl<S: Scalar> NSymElement<S> {
    pub fn terms_in_print_order(&self) -> Vec<(&Composition, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(a, _)| std::cmp::Reverse(a.phi_index()));
        v
    }
}

struct Term<'a, S> {
    parts: &'a Composition,
    scalar: &'a S,
}

impl<S: Serialize> Serialize for Term<'_, S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut m = ser.serialize_map(Some(2))?;
        m.serialize_entry("parts", self.parts)?;
        m.serialize_entry("scalar", self.scalar)?;
        m.end()
    }
}

impl<S: Scalar + Serialize> Serialize for NSymElement<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let terms: Vec<_> =
            self.terms_in_print_order().into_iter().map(|(parts, scalar)| Term { parts, scalar }).collect();
        let mut st = ser.serialize_struct("NSymElement", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("basis", self.basis.tag())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests;
