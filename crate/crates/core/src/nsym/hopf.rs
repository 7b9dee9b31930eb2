use std::collections::BTreeMap;
use std::fmt;

use super::{accumulate, Basis, NSymElement, QtRing};
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A homogeneous element of `NSym ⊗ NSym`, both factors in the same basis.
///
/// Only the total degree is fixed; the two factor degrees vary term by term.
#[derive(Clone, PartialEq)]
pub struct NSymTensor<S> {
    degree: usize,
    basis: Basis,
    terms: BTreeMap<(Composition, Composition), S>,
}

impl<S: Scalar> NSymTensor<S> {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        NSymTensor { degree, basis, terms: BTreeMap::new() }
    }

    /// `x ⊗ y`.
    pub fn tensor(x: &NSymElement<S>, y: &NSymElement<S>) -> Result<Self> {
        if x.basis() != y.basis() {
            return Err(Error::UnsupportedBasis(format!("{} ⊗ {}", x.basis(), y.basis())));
        }
        let mut out = Self::zero(x.degree() + y.degree(), x.basis());
        for (a, c) in x.terms() {
            for (b, d) in y.terms() {
                out.push(a.clone(), b.clone(), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    pub(crate) fn push(&mut self, a: Composition, b: Composition, c: S) {
        debug_assert_eq!(a.size() + b.size(), self.degree);
        accumulate(&mut self.terms, (a, b), c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Composition, Composition), &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &Composition, b: &Composition) -> S {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product in the tensor algebra for a basis that multiplies by concatenation.
    fn concat_product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree, self.basis);
        for ((a1, b1), x) in &self.terms {
            for ((a2, b2), y) in &other.terms {
                out.push(a1.concat(a2), b1.concat(b2), x.clone() * y.clone());
            }
        }
        out
    }

    /// `(f ⊗ g)` applied termwise; `f` and `g` must land in a common basis.
    pub fn map_factors(
        &self,
        basis: Basis,
        mut f: impl FnMut(&Composition) -> NSymElement<S>,
        mut g: impl FnMut(&Composition) -> NSymElement<S>,
    ) -> Result<Self> {
        let mut out: Option<Self> = None;
        for ((a, b), c) in &self.terms {
            let t = Self::tensor(&f(a), &g(b))?;
            let acc = out.get_or_insert_with(|| Self::zero(t.degree, basis));
            if t.degree != acc.degree {
                return Err(Error::DegreeMismatch { left: acc.degree, right: t.degree });
            }
            for ((x, y), d) in t.terms {
                acc.push(x, y, c.clone() * d);
            }
        }
        Ok(out.unwrap_or_else(|| Self::zero(self.degree, basis)))
    }
}

impl<S: QtRing> NSymTensor<S> {
    /// `μ`: multiplies the two factors.
    pub fn multiply_out(&self) -> NSymElement<S> {
        let mut out = NSymElement::zero(self.degree, if self.basis == Basis::H { Basis::H } else { Basis::S });
        for ((a, b), c) in &self.terms {
            let x: NSymElement<S> = NSymElement::basis_element(self.basis, a);
            let y = NSymElement::basis_element(self.basis, b);
            let p = x.multiply(&y).convert(out.basis()).expect("classical");
            for (g, d) in p.terms() {
                out.push(g.clone(), c.clone() * d.clone());
            }
        }
        out
    }

    /// Re-expresses both factors in `target`.
    pub fn convert(&self, target: Basis) -> Result<Self> {
        let conv = |a: &Composition| NSymElement::basis_element(self.basis, a).convert(target);
        let mut cache = BTreeMap::new();
        for (a, b) in self.terms.keys() {
            for k in [a, b] {
                if !cache.contains_key(k) {
                    cache.insert(k.clone(), conv(k)?);
                }
            }
        }
        self.map_factors(target, |a| cache[a].clone(), |b| cache[b].clone())
    }

    /// Whether `(Δ ⊗ id)Δx = (id ⊗ Δ)Δx`, compared in `h`.
    pub fn coassociative_at(x: &NSymElement<S>) -> bool {
        let d = x.coproduct();
        let mut left: BTreeMap<(Composition, Composition, Composition), S> = BTreeMap::new();
        let mut right: BTreeMap<(Composition, Composition, Composition), S> = BTreeMap::new();
        for ((a, b), c) in d.terms() {
            for ((a1, a2), e) in NSymElement::<S>::h(a).coproduct().terms() {
                accumulate(&mut left, (a1.clone(), a2.clone(), b.clone()), c.clone() * e.clone());
            }
            for ((b1, b2), e) in NSymElement::<S>::h(b).coproduct().terms() {
                accumulate(&mut right, (a.clone(), b1.clone(), b2.clone()), c.clone() * e.clone());
            }
        }
        left == right
    }
}

impl<S: QtRing> NSymElement<S> {
    /// `Δ` in `h ⊗ h`, from `Δ(h_k) = Σ_i h_i ⊗ h_{k−i}` extended multiplicatively.
    pub fn coproduct(&self) -> NSymTensor<S> {
        let x = self.convert(Basis::H).expect("classical");
        let mut out = NSymTensor::zero(self.degree(), Basis::H);
        for (alpha, c) in x.terms() {
            let mut acc = NSymTensor::zero(0, Basis::H);
            acc.push(Composition::empty(), Composition::empty(), S::one());
            for &k in alpha.parts() {
                let mut dk = NSymTensor::zero(k, Basis::H);
                for i in 0..=k {
                    dk.push(Composition::row(i), Composition::row(k - i), S::one());
                }
                acc = acc.concat_product(&dk);
            }
            for ((a, b), d) in acc.terms {
                out.push(a, b, c.clone() * d);
            }
        }
        out
    }

    /// `ε`: the degree-zero coefficient.
    pub fn counit(&self) -> S {
        if self.degree() == 0 {
            self.to_s().coefficient(&Composition::empty())
        } else {
            S::zero()
        }
    }
}

impl<S: Scalar> fmt::Display for NSymTensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.basis.tag();
        let terms = self.terms.iter().map(|((a, b), c)| (c, format!("{tag}{a}⊗{tag}{b}")));
        f.write_str(&crate::render::join_terms(terms))
    }
}

impl<S: Scalar> fmt::Debug for NSymTensor<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
