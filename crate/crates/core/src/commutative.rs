//! The commutative image `χ: NSym → Sym` and the preferential-arrangement counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::composition::{all_compositions, Composition};
use crate::error::{Error, Result};
use crate::hlq::h_q;
use crate::nabla::nabla_s;
use crate::nsym::{accumulate, qt, Basis, NSymElement, QtRing};
use crate::scalar::{Scalar, Target};
use crate::QTScalar;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidComposition(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts `parts` and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn of_composition(alpha: &Composition) -> Self {
        Self::from_unsorted(alpha.parts().to_vec())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `m_i`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// Partitions contained in `(n−1, …, 1, 0)`.
    pub fn inside_staircase(n: usize) -> Vec<Partition> {
        fn go(i: usize, n: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if i + 1 >= n {
                return;
            }
            for p in 1..=cap.min(n - 1 - i) {
                cur.push(p);
                go(i + 1, n, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(0, n, n.saturating_sub(1), &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymBasis {
    H,
    E,
}

impl SymBasis {
    pub fn tag(self) -> &'static str {
        match self {
            SymBasis::H => "h",
            SymBasis::E => "e",
        }
    }

    fn nsym(self) -> Basis {
        match self {
            SymBasis::H => Basis::H,
            SymBasis::E => Basis::E,
        }
    }
}

/// A homogeneous symmetric function in the `h` or `e` basis.
#[derive(Clone, PartialEq)]
pub struct SymElement<S> {
    degree: usize,
    basis: SymBasis,
    terms: BTreeMap<Partition, S>,
}

impl<S: Scalar> SymElement<S> {
    pub fn zero(degree: usize, basis: SymBasis) -> Self {
        SymElement { degree, basis, terms: BTreeMap::new() }
    }

    pub fn basis_element(basis: SymBasis, lambda: &Partition) -> Self {
        let mut x = Self::zero(lambda.size(), basis);
        x.push(lambda.clone(), S::one());
        x
    }

    pub fn h(lambda: &Partition) -> Self {
        Self::basis_element(SymBasis::H, lambda)
    }

    pub fn e(lambda: &Partition) -> Self {
        Self::basis_element(SymBasis::E, lambda)
    }

    pub(crate) fn push(&mut self, lambda: Partition, c: S) {
        accumulate(&mut self.terms, lambda, c);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Partition) -> S {
        self.terms.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.degree, self.basis);
        for (l, d) in &self.terms {
            out.push(l.clone(), d.clone() * c.clone());
        }
        out
    }

    /// Product of two elements in the same basis.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.basis != other.basis {
            return Err(Error::UnsupportedBasis(format!("{} times {}", self.basis.tag(), other.basis.tag())));
        }
        let mut out = Self::zero(self.degree + other.degree, self.basis);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let parts = a.parts().iter().chain(b.parts()).copied().collect();
                out.push(Partition::from_unsorted(parts), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// Terms by increasing length, then decreasing parts: `q*h(2) + h(1,1)`.
    pub fn terms_in_print_order(&self) -> Vec<(&Partition, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
        v
    }
}

impl<S: QtRing> SymElement<S> {
    /// Re-expresses in `target` by lifting each term to NSym and applying `χ`.
    pub fn convert(&self, target: SymBasis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(self.degree, target);
        for (l, c) in &self.terms {
            let lift = NSymElement::<S>::basis_element(self.basis.nsym(), &composition_of(l));
            for (m, d) in chi_in(&lift, target).terms {
                out.push(m, d * c.clone());
            }
        }
        out
    }
}

impl SymElement<QTScalar> {
    pub fn substitute(&self, q_to: &Target, t_to: &Target) -> Result<Self> {
        let mut out = Self::zero(self.degree, self.basis);
        for (l, c) in &self.terms {
            out.push(l.clone(), c.substitute(q_to, t_to)?);
        }
        Ok(out)
    }
}

fn composition_of(lambda: &Partition) -> Composition {
    Composition::new(lambda.parts().to_vec()).expect("positive parts")
}

impl<S: Scalar> std::ops::Add for SymElement<S> {
    type Output = Self;

    fn add(mut self, other: Self) -> Self {
        assert_eq!((self.degree, self.basis), (other.degree, other.basis), "adding Sym elements of different shape");
        for (l, c) in other.terms {
            self.push(l, c);
        }
        self
    }
}

impl<S: Scalar> std::ops::Sub for SymElement<S> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        self + other.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for SymElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.basis.tag();
        let terms = self.terms_in_print_order().into_iter().map(|(l, c)| (c, format!("{tag}{l}")));
        f.write_str(&crate::render::join_terms(terms))
    }
}

impl<S: Scalar> fmt::Debug for SymElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Term<'a, S> {
    parts: &'a Partition,
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

impl<S: Scalar + Serialize> Serialize for SymElement<S> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let terms: Vec<_> =
            self.terms_in_print_order().into_iter().map(|(parts, scalar)| Term { parts, scalar }).collect();
        let mut st = ser.serialize_struct("SymElement", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("basis", self.basis.tag())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// `χ(x)` in the `h` basis.
pub fn chi<S: QtRing>(x: &NSymElement<S>) -> SymElement<S> {
    chi_in(x, SymBasis::H)
}

/// `χ(x)` in the `e` basis, through the NSym `e` expansion.
pub fn chi_e<S: QtRing>(x: &NSymElement<S>) -> SymElement<S> {
    chi_in(x, SymBasis::E)
}

fn chi_in<S: QtRing>(x: &NSymElement<S>, target: SymBasis) -> SymElement<S> {
    let y = x.convert(target.nsym()).expect("h and e are always reachable");
    let mut out = SymElement::zero(x.degree(), target);
    for (a, c) in y.terms() {
        out.push(Partition::of_composition(a), c.clone());
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `⟨x, h_{1^n}⟩ = Σ_λ c_λ n!/∏ λ_i!`.
pub fn pair_h1n<S: QtRing>(x: &SymElement<S>) -> S {
    let x = x.convert(SymBasis::H);
    let n = factorial(x.degree);
    let mut total = S::zero();
    for (l, c) in x.terms() {
        let d = l.parts().iter().fold(BigInt::one(), |acc, &p| acc * factorial(p));
        let m: QTScalar = QTScalar::constant(&n / d);
        total = total + c.clone() * S::from(m);
    }
    total
}

/// `⟨x, e_n⟩`, the coefficient of `h_{1^n}`.
pub fn pair_en<S: QtRing>(x: &SymElement<S>) -> S {
    let x = x.convert(SymBasis::H);
    x.coefficient(&Partition(vec![1; x.degree]))
}

/// The number of surjections `[n] → [k]` summed over `k`, by enumeration.
pub fn fubini_oracle(n: usize) -> Result<u64> {
    if !(1..=9).contains(&n) {
        return Err(Error::OutOfRange(format!("fubini_oracle needs 1 ≤ n ≤ 9, got {n}")));
    }
    // assign values left to right; prune when too few positions remain to hit every value
    fn go(i: usize, n: usize, k: usize, hit: u32) -> u64 {
        let missing = k - hit.count_ones() as usize;
        if n - i < missing {
            return 0;
        }
        if i == n {
            return 1;
        }
        (0..k).map(|v| go(i + 1, n, k, hit | 1 << v)).sum()
    }
    Ok((1..=n).map(|k| go(0, n, k, 0)).sum())
}

/// `Σ_{α⊨n} q^{n(α′)} h_α`, collected by sorted index.
pub fn frobenius_pref(n: usize) -> SymElement<QTScalar> {
    let mut x = SymElement::zero(n, SymBasis::H);
    for a in all_compositions(n) {
        x.push(Partition::of_composition(&a), qt(a.conjugate().n_stat() as i32, 0));
    }
    x
}

fn check_small_n(n: usize) -> Result<()> {
    if !(1..=8).contains(&n) {
        return Err(Error::OutOfRange(format!("need 1 ≤ n ≤ 8, got {n}")));
    }
    Ok(())
}

/// `Σ_{μ⊆δ_n} q^{C(n,2)−|μ|} e_{λ(μ)}`, where `λ(μ) = (m_1(μ), …, m_{n−1}(μ), n − Σ m_i)`.
pub fn nabla_en_t1_commutative(n: usize) -> Result<SymElement<QTScalar>> {
    check_small_n(n)?;
    let top = n * (n - 1) / 2;
    let mut x = SymElement::zero(n, SymBasis::E);
    for mu in Partition::inside_staircase(n) {
        let mut parts: Vec<usize> = (1..n).map(|i| mu.multiplicity(i)).collect();
        parts.push(n - mu.len());
        x.push(Partition::from_unsorted(parts), qt((top - mu.size()) as i32, 0));
    }
    Ok(x)
}

/// `χ(∇ e_n)`, in the `h` basis.
pub fn chi_nabla_en(n: usize) -> SymElement<QTScalar> {
    chi(&nabla_s(&Composition::column(n)))
}

/// The staircase sum minus `χ(∇ e_n)|_{t=1}`, in the `e` basis.
pub fn e_positivity_gap(n: usize) -> Result<SymElement<QTScalar>> {
    let lhs = nabla_en_t1_commutative(n)?;
    let rhs = chi_e(&nabla_s(&Composition::column(n)).substitute(&Target::Q, &Target::Int(1))?);
    Ok(lhs - rhs)
}

/// Whether every coefficient is a polynomial in `q` with nonnegative coefficients.
pub fn is_q_positive(x: &SymElement<QTScalar>) -> bool {
    x.terms().all(|(_, c)| c.is_polynomial() && c.has_nonnegative_coefficients() && c.terms().all(|(m, _)| m.t == 0))
}

/// `h_b χ(H^q_{(1^a)}) = χ(H^q_{(1^a,b)}) + (1−q^a) χ(H^q_{(1^{a−1},b+1)})`, for `a, b ≥ 1`.
pub fn hook_recurrence_commutative(a: usize, b: usize) -> Result<bool> {
    if a == 0 || b == 0 {
        return Err(Error::OutOfRange("hook recurrence needs a, b ≥ 1".into()));
    }
    let hook = |a: usize, b: usize| {
        let mut parts = vec![1; a];
        parts.push(b);
        chi(&h_q(&Composition::new(parts).expect("positive parts")))
    };
    let col = chi(&h_q(&Composition::column(a)));
    let lhs = SymElement::h(&Partition(vec![b])).multiply(&col)?;
    let rhs = hook(a, b) + hook(a - 1, b + 1).scale(&QTScalar::one_minus(a as i32, 0));
    Ok(lhs == rhs)
}

/// `∏_{i=1}^{n−1} (q^{n−i} + t^i)`.
pub fn pair_en_formula(n: usize) -> QTScalar {
    (1..n).fold(QTScalar::one(), |acc, i| acc * (qt::<QTScalar>((n - i) as i32, 0) + qt(0, i as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;
    use crate::NSym;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&h_q(&comp![1, 2])).to_string(), "(-1 + q)*h(3) + h(2,1)");
        assert_eq!(chi(&NSym::h(&comp![1, 2])), SymElement::h(&p(&[2, 1])));
        assert_eq!(chi(&NSym::s(&comp![2])), SymElement::h(&p(&[2])));
        let x = NSym::s(&comp![1, 2]);
        assert_eq!(chi_e(&x).convert(SymBasis::H), chi(&x));
    }

    #[test]
    fn chi_is_multiplicative() {
        for n in 1..=3 {
            for m in 1..=3 {
                for a in all_compositions(n) {
                    for b in all_compositions(m) {
                        let (x, y) = (h_q(&a), NSym::s(&b));
                        assert_eq!(chi(&x.multiply(&y)), chi(&x).multiply(&chi(&y)).unwrap(), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn pairings() {
        let x = chi_nabla_en(2);
        assert_eq!(pair_h1n(&x), "1 + t + q".parse().unwrap());
        assert_eq!(pair_en(&x), pair_en_formula(2));
        let one = Target::Int(1);
        for n in 1..=6 {
            let x = chi_nabla_en(n);
            assert_eq!(pair_en(&x), pair_en_formula(n), "n={n}");
            let v = pair_h1n(&x.substitute(&one, &one).unwrap());
            assert_eq!(v, QTScalar::from(fubini_oracle(n).unwrap() as i64), "n={n}");
        }
        assert_eq!(pair_h1n(&chi_nabla_en(4).substitute(&one, &one).unwrap()), QTScalar::from(75));
    }

    #[test]
    fn fubini() {
        let v: Vec<u64> = (1..=6).map(|n| fubini_oracle(n).unwrap()).collect();
        assert_eq!(v, [1, 3, 13, 75, 541, 4683]);
        assert!(fubini_oracle(0).is_err());
        assert!(fubini_oracle(10).is_err());
    }

    #[test]
    fn frobenius() {
        assert_eq!(frobenius_pref(2).to_string(), "q*h(2) + h(1,1)");
        let one = Target::Int(1);
        assert_eq!(pair_h1n(&frobenius_pref(4).substitute(&one, &one).unwrap()), QTScalar::from(75));
        // exchanging h and e turns it into χ(∇e_n) at t = 1
        for n in 1..=5 {
            let chi_t1 = chi_e(&nabla_s(&Composition::column(n)).substitute(&Target::Q, &one).unwrap());
            let mut swapped = SymElement::zero(n, SymBasis::E);
            for (l, c) in frobenius_pref(n).terms() {
                swapped.push(l.clone(), c.clone());
            }
            assert_eq!(swapped, chi_t1, "n={n}");
        }
    }

    #[test]
    fn staircase() {
        assert_eq!(Partition::inside_staircase(3).len(), 5);
        assert_eq!(nabla_en_t1_commutative(2).unwrap().to_string(), "q*e(2) + e(1,1)");
        assert_eq!(nabla_en_t1_commutative(1).unwrap(), SymElement::e(&p(&[1])));
        for n in 1..=6 {
            let gap = e_positivity_gap(n).unwrap();
            assert!(is_q_positive(&gap), "n={n}: {gap}");
        }
        assert!(e_positivity_gap(2).unwrap().is_zero());
        assert!(nabla_en_t1_commutative(9).is_err());
    }

    #[test]
    fn hook_recurrence() {
        for a in 1..=6 {
            for b in 1..=(7 - a) {
                assert!(hook_recurrence_commutative(a, b).unwrap(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn partition_rules() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::from_unsorted(vec![1, 0, 3]), p(&[3, 1]));
    }
}
