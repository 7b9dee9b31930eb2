//! Quasi-symmetric functions in the `M` and `F` bases, paired with NSym by
//! `[M_α, h_β] = δ_{αβ}` and `[F_α, s_β] = δ_{αβ}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::composition::{all_compositions, common_descent_sum, refinements, Composition};
use crate::error::{Error, Result};
use crate::hlq::bre;
use crate::nsym::{accumulate, qt, Basis, NSymElement, QtRing};
use crate::scalar::{odd, Scalar, TryInverse};
use crate::{FactoredScalar, QTScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QBasis {
    M,
    F,
}

impl QBasis {
    pub fn tag(self) -> &'static str {
        match self {
            QBasis::M => "M",
            QBasis::F => "F",
        }
    }
}

impl fmt::Display for QBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for QBasis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" => Ok(QBasis::M),
            "F" => Ok(QBasis::F),
            other => Err(Error::Parse(format!("unknown QSym basis `{other}`"))),
        }
    }
}

/// A homogeneous element of QSym. Basis symbols are formal.
#[derive(Clone, PartialEq)]
pub struct QSymElement<S> {
    degree: usize,
    basis: QBasis,
    terms: BTreeMap<Composition, S>,
}

impl<S: Scalar> QSymElement<S> {
    pub fn zero(degree: usize, basis: QBasis) -> Self {
        QSymElement { degree, basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: QBasis, alpha: &Composition) -> Self {
        let mut x = Self::zero(alpha.size(), basis);
        x.push(alpha.clone(), S::one());
        x
    }

    pub fn m(alpha: &Composition) -> Self {
        Self::basis_element(QBasis::M, alpha)
    }

    pub fn f(alpha: &Composition) -> Self {
        Self::basis_element(QBasis::F, alpha)
    }

    pub fn add_term(&mut self, alpha: Composition, c: S) -> Result<()> {
        if alpha.size() != self.degree {
            return Err(Error::DegreeMismatch { left: self.degree, right: alpha.size() });
        }
        self.push(alpha, c);
        Ok(())
    }

    pub(crate) fn push(&mut self, alpha: Composition, c: S) {
        accumulate(&mut self.terms, alpha, c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> QBasis {
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
        for (a, d) in &self.terms {
            out.push(a.clone(), d.clone() * c.clone());
        }
        out
    }

    pub fn map_coefficients<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> QSymElement<T> {
        let mut out = QSymElement::zero(self.degree, self.basis);
        for (a, c) in &self.terms {
            out.push(a.clone(), f(c));
        }
        out
    }

    /// Re-expresses in `target`, using `F_α = Σ_{β≤α} M_β` and its Möbius inverse.
    pub fn convert(&self, target: QBasis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(self.degree, target);
        for (a, c) in &self.terms {
            for b in refinements(a) {
                let neg = target == QBasis::F && odd(b.len() - a.len());
                out.push(b, c.clone().signed(neg));
            }
        }
        out
    }

    pub fn terms_in_print_order(&self) -> Vec<(&Composition, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(a, _)| std::cmp::Reverse(a.phi_index()));
        v
    }
}

impl<S: QtRing> QSymElement<S> {
    /// `[self, y]`.
    pub fn pair(&self, y: &NSymElement<S>) -> Result<S> {
        if self.degree != y.degree() {
            return Err(Error::DegreeMismatch { left: self.degree, right: y.degree() });
        }
        let y = match self.basis {
            QBasis::M => y.convert(Basis::H)?,
            QBasis::F => y.to_s(),
        };
        Ok(self.terms.iter().fold(S::zero(), |acc, (a, c)| acc + c.clone() * y.coefficient(a)))
    }
}

impl<S: Scalar> std::ops::Add for QSymElement<S> {
    type Output = Self;

    fn add(mut self, other: Self) -> Self {
        assert_eq!((self.degree, self.basis), (other.degree, other.basis), "adding QSym elements of different shape");
        for (a, c) in other.terms {
            self.push(a, c);
        }
        self
    }
}

impl<S: Scalar> std::ops::Sub for QSymElement<S> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        self + other.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for QSymElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.basis.tag();
        let terms = self.terms_in_print_order().into_iter().map(|(a, c)| (c, format!("{tag}{a}")));
        f.write_str(&crate::render::join_terms(terms))
    }
}

impl<S: Scalar> fmt::Debug for QSymElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
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

impl<S: Scalar + Serialize> Serialize for QSymElement<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let terms: Vec<_> =
            self.terms_in_print_order().into_iter().map(|(parts, scalar)| Term { parts, scalar }).collect();
        let mut st = ser.serialize_struct("QSymElement", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("basis", self.basis.tag())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// The family dual to `{A_α : α ⊨ n}` under the pairing.
///
/// `A` must satisfy `⟨A_α, A_β⟩ = (−1)^{n+ℓ(α)} δ_{α,β^c} κ` for a single
/// invertible `κ`, which is read off at `α = (n)` and checked on every pair.
/// The dual is `κ⁻¹ (−1)^{n+ℓ(α^c)} Σ_β ⟨A_{α^c}, s_β⟩ F_β`.
pub fn dual_of<S: QtRing + TryInverse>(
    n: usize,
    family: impl Fn(&Composition) -> NSymElement<S>,
) -> Result<Vec<(Composition, QSymElement<S>)>> {
    if n == 0 {
        return Ok(vec![(Composition::empty(), QSymElement::f(&Composition::empty()))]);
    }
    let comps = all_compositions(n);
    let members: BTreeMap<Composition, NSymElement<S>> = comps.iter().map(|a| (a.clone(), family(a).to_s())).collect();
    let row = Composition::row(n);
    let kappa = members[&row].scalar_product(&members[&row.complement()])?.signed(odd(n + 1));
    for a in &comps {
        for b in &comps {
            let got = members[a].scalar_product(&members[b])?;
            let want = if *b == a.complement() { kappa.clone().signed(odd(n + a.len())) } else { S::zero() };
            if got != want {
                return Err(Error::NotOrthogonal { alpha: a.to_string(), beta: b.to_string() });
            }
        }
    }
    let inv = kappa.try_inverse()?;
    let mut out = Vec::with_capacity(comps.len());
    for a in &comps {
        let ac = a.complement();
        let pre = inv.clone().signed(odd(n + ac.len()));
        let mut x = QSymElement::zero(n, QBasis::F);
        for b in &comps {
            x.push(b.clone(), pre.clone() * members[&ac].scalar_product(&NSymElement::s(b))?);
        }
        out.push((a.clone(), x));
    }
    Ok(out)
}

/// The first `(α, β)` with `[D_α, A_β] ≠ δ_{αβ}`, if any.
pub fn duality_witness<S: QtRing>(
    duals: &[(Composition, QSymElement<S>)],
    family: impl Fn(&Composition) -> NSymElement<S>,
) -> Result<Option<(Composition, Composition)>> {
    for (b, _) in duals {
        let fb = family(b);
        for (a, d) in duals {
            let want = if a == b { S::one() } else { S::zero() };
            if d.pair(&fb)? != want {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// `P^q_α = Σ_{β≤α} (−1)^{ℓ(β)−ℓ(α)} q^{c(α^c,β)} F_β`, dual to `H^q`.
pub fn p_q(alpha: &Composition) -> QSymElement<QTScalar> {
    let ac = alpha.complement();
    let mut x = QSymElement::zero(alpha.size(), QBasis::F);
    for b in refinements(alpha) {
        let c: QTScalar = qt(common_descent_sum(&ac, &b) as i32, 0);
        let neg = odd(b.len() - alpha.len());
        x.push(b, c.signed(neg));
    }
    x
}

/// `P^{qt}_α = ∏ 1/(1−q^i t^{n−i}) Σ_β (−1)^{ℓ(β)−ℓ(α)} t^{c(α^c,β)} q^{c(ᾱ,β′)} F_β`, dual to `H^{qt}`.
///
/// Coefficients keep the full denominator.
pub fn p_qt(alpha: &Composition) -> QSymElement<FactoredScalar> {
    let n = alpha.size();
    let ac = alpha.complement();
    let rev = alpha.reverse();
    let pre = FactoredScalar::reciprocal_of((1..n).map(|i| (i as u32, (n - i) as u32))).expect("nonzero exponents");
    let mut x = QSymElement::zero(n, QBasis::F);
    for b in all_compositions(n) {
        let t = common_descent_sum(&ac, &b) as i32;
        let q = common_descent_sum(&rev, &b.conjugate()) as i32;
        let neg = odd(b.len() + alpha.len());
        x.push(b, (pre.clone() * FactoredScalar::from(QTScalar::qt(q, t))).signed(neg));
    }
    x
}

/// `Σ_i i (γ_i − 1)`.
fn hivert_stat(gamma: &Composition) -> usize {
    gamma.parts().iter().enumerate().map(|(i, &p)| (i + 1) * (p - 1)).sum()
}

/// Hivert's `G^q_α = Σ_{β≤α} (−1)^{ℓ(β)−ℓ(α)} q^{e(Bre(β,α))} F_β` with
/// `e(γ) = Σ_i i (γ_i − 1)`, dual to `W^q`.
pub fn g_q_hivert(alpha: &Composition) -> QSymElement<QTScalar> {
    let mut x = QSymElement::zero(alpha.size(), QBasis::F);
    for b in refinements(alpha) {
        let k = hivert_stat(&bre(&b, alpha).expect("refinement"));
        let neg = odd(b.len() - alpha.len());
        x.push(b, qt::<QTScalar>(k as i32, 0).signed(neg));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::hlq::{h_q, w_q};
    use crate::macqt::h_qt;
    use crate::NSym;
    use num_traits::{One, Zero};

    type Q = QSymElement<QTScalar>;

    #[test]
    fn pairing_examples() {
        assert_eq!(Q::m(&comp![2, 1]).pair(&NSym::h(&comp![2, 1])).unwrap(), QTScalar::one());
        assert!(Q::f(&comp![1, 2]).pair(&NSym::s(&comp![2, 1])).unwrap().is_zero());
        assert_eq!(Q::f(&comp![2]).pair(&NSym::h(&comp![1, 1])).unwrap(), QTScalar::one());
        assert!(Q::f(&comp![2]).pair(&NSym::h(&comp![1, 1, 1])).is_err());
    }

    #[test]
    fn m_f_conversion() {
        assert_eq!(Q::f(&comp![2]).convert(QBasis::M).to_string(), "M(1,1) + M(2)");
        assert_eq!(Q::f(&comp![1, 1, 1]).convert(QBasis::M), Q::m(&comp![1, 1, 1]));
        for n in 1..=5 {
            for a in all_compositions(n) {
                let m = Q::m(&a);
                assert_eq!(m.convert(QBasis::F).convert(QBasis::M), m);
                // the conversion must respect both dualities
                let f = Q::f(&a).convert(QBasis::M);
                for b in all_compositions(n) {
                    assert_eq!(f.pair(&NSym::h(&b)).unwrap(), Q::f(&a).pair(&NSym::h(&b)).unwrap());
                    assert_eq!(f.pair(&NSym::s(&b)).unwrap(), Q::f(&a).pair(&NSym::s(&b)).unwrap());
                }
            }
        }
    }

    #[test]
    fn duals_of_classical_bases() {
        for n in 1..=4 {
            for (a, d) in dual_of(n, NSym::s).unwrap() {
                assert_eq!(d, Q::f(&a));
            }
            for (a, d) in dual_of(n, NSym::h).unwrap() {
                assert_eq!(d.convert(QBasis::M), Q::m(&a));
            }
        }
    }

    #[test]
    fn hall_littlewood_duals() {
        let p = p_q(&comp![2]);
        assert_eq!(p.to_string(), "-q*F(1,1) + F(2)");
        assert!(p.pair(&h_q(&comp![1, 1])).unwrap().is_zero());
        for n in 1..=5 {
            let duals = dual_of(n, h_q).unwrap();
            for (a, d) in &duals {
                assert_eq!(*d, p_q(a), "{a}");
            }
            assert_eq!(duality_witness(&duals, h_q).unwrap(), None);
        }
        for n in 1..=6 {
            let g: Vec<_> = all_compositions(n).into_iter().map(|a| (a.clone(), g_q_hivert(&a))).collect();
            assert_eq!(duality_witness(&g, w_q).unwrap(), None, "n={n}");
        }
    }

    #[test]
    fn hivert_small() {
        assert_eq!(g_q_hivert(&comp![2]), p_q(&comp![2]));
        let g = g_q_hivert(&comp![3]);
        assert_eq!(g.coefficient(&comp![1, 1, 1]), qt(2, 0));
        assert_eq!(g.coefficient(&comp![1, 2]), -qt::<QTScalar>(1, 0));
    }

    #[test]
    fn macdonald_duals() {
        let lift = |a: &Composition| h_qt(a).map_coefficients(|c| FactoredScalar::from(c.clone()));
        for n in 1..=4 {
            let duals = dual_of(n, lift).unwrap();
            for (a, d) in &duals {
                assert_eq!(*d, p_qt(a), "{a}");
            }
            let p: Vec<_> = all_compositions(n).into_iter().map(|a| (a.clone(), p_qt(&a))).collect();
            assert_eq!(duality_witness(&p, lift).unwrap(), None);
        }
    }

    #[test]
    fn non_orthogonal_family_is_rejected() {
        let err =
            dual_of(3, |a: &Composition| if a.len() == 1 { NSym::s(a) + NSym::s(&comp![2, 1]) } else { NSym::s(a) });
        assert!(matches!(err, Err(Error::NotOrthogonal { .. })));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(p_q(&comp![2])).unwrap();
        assert_eq!(v["basis"], "F");
        assert_eq!(v["terms"][0]["parts"], serde_json::json!([1, 1]));
    }
}
