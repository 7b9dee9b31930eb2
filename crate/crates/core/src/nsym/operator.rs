use std::collections::BTreeMap;

use super::{qt, Basis, Matrix, NSymElement, QtRing};
use crate::composition::{all_compositions, Composition};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A graded linear map on NSym, tabulated on `s_β` for every `|β| ≤ bound`.
///
/// The image of a degree `d` element has degree `d + shift`.
#[derive(Clone, PartialEq)]
pub struct NSymOperator<S> {
    shift: usize,
    bound: usize,
    images: BTreeMap<Composition, NSymElement<S>>,
}

impl<S: QtRing> NSymOperator<S> {
    /// Tabulates `rule` on the `s` basis up to degree `bound`.
    pub fn from_rule(shift: usize, bound: usize, mut rule: impl FnMut(&Composition) -> NSymElement<S>) -> Self {
        let mut images = BTreeMap::new();
        for n in 0..=bound {
            for beta in all_compositions(n) {
                let y = rule(&beta).to_s();
                assert_eq!(y.degree(), n + shift, "operator image has the wrong degree");
                images.insert(beta, y);
            }
        }
        NSymOperator { shift, bound, images }
    }

    pub fn identity(bound: usize) -> Self {
        Self::from_rule(0, bound, NSymElement::s)
    }

    /// Multiplies degree-`d` elements by `f(d)`.
    pub fn grading(bound: usize, f: impl Fn(usize) -> S) -> Self {
        Self::from_rule(0, bound, |b| NSymElement::s(b).scale(&f(b.size())))
    }

    /// `R^q`: degree `d` is scaled by `q^d`.
    pub fn q_grading(bound: usize) -> Self {
        Self::grading(bound, |d| qt(d as i32, 0))
    }

    pub fn antipode(bound: usize) -> Self {
        Self::from_rule(0, bound, |b| NSymElement::s(b).antipode())
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn image(&self, beta: &Composition) -> Result<&NSymElement<S>> {
        self.images.get(beta).ok_or(Error::DegreeBound { bound: self.bound, degree: beta.size() })
    }

    pub fn apply(&self, x: &NSymElement<S>) -> Result<NSymElement<S>> {
        if x.degree() > self.bound {
            return Err(Error::DegreeBound { bound: self.bound, degree: x.degree() });
        }
        Ok(x.to_s().linear_map(x.degree() + self.shift, Basis::S, |b| self.images[b].clone()))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.bound + inner.shift > self.bound {
            return Err(Error::DegreeBound { bound: self.bound, degree: inner.bound + inner.shift });
        }
        let mut images = BTreeMap::new();
        for (beta, y) in &inner.images {
            images.insert(beta.clone(), self.apply(y)?);
        }
        Ok(NSymOperator { shift: self.shift + inner.shift, bound: inner.bound, images })
    }

    /// `V ∗ W = μ ∘ (V ⊗ W) ∘ Δ`.
    pub fn convolve(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let shift = self.shift + other.shift;
        Self::from_rule(shift, bound, |beta| {
            let delta = NSymElement::<S>::s(beta).coproduct().convert(Basis::S).expect("classical");
            let mut out = NSymElement::zero(beta.size() + shift, Basis::S);
            for ((a, b), c) in delta.terms() {
                let prod = self.images[a].multiply(&other.images[b]).scale(c);
                out = out + prod;
            }
            out
        })
    }

    /// `V̄ = id ∗ (V ∘ S)`.
    pub fn bar(&self) -> Self {
        let vs = self.compose(&Self::antipode(self.bound)).expect("antipode preserves degree");
        Self::identity(self.bound).convolve(&vs)
    }

    /// `bar(bar(V) ∘ bar(R^q))`.
    pub fn q_twist(&self) -> Self {
        let rq = Self::q_grading(self.bound).bar();
        self.bar().compose(&rq).expect("grading preserves degree").bar()
    }

    /// Rows: `s_β` with `|β| = n`; columns: `s_γ` with `|γ| = n + shift`; both in phi order.
    pub fn matrix(&self, n: usize) -> Result<Matrix<S>> {
        if n > self.bound {
            return Err(Error::DegreeBound { bound: self.bound, degree: n });
        }
        let rows = all_compositions(n);
        let cols = all_compositions(n + self.shift);
        Ok(Matrix::from_fn(rows.len(), cols.len(), |r, c| self.images[&rows[r]].coefficient(&cols[c])))
    }

    /// First `β` where the two operators disagree, if any.
    pub fn first_difference(&self, other: &Self) -> Option<Composition> {
        let bound = self.bound.min(other.bound);
        (0..=bound).flat_map(all_compositions).find(|b| self.images[b] != other.images[b])
    }
}

impl<S: Scalar> NSymOperator<S> {
    pub fn images(&self) -> impl Iterator<Item = (&Composition, &NSymElement<S>)> {
        self.images.iter()
    }
}

impl<S: Scalar> std::fmt::Debug for NSymOperator<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("NSymOperator")
            .field("shift", &self.shift)
            .field("bound", &self.bound)
            .field("images", &self.images)
            .finish()
    }
}
