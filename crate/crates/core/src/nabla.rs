//! The operator `∇`, diagonal on `H̃^{qt}_α` with eigenvalue `q^{n(α′)} t^{n(α)}`.

use num_traits::{One, Zero};

use crate::composition::{all_compositions, coarsenings, refinements, Composition};
use crate::error::{Error, Result};
use crate::nsym::{Basis, Matrix};
use crate::scalar::odd;
use crate::{NSym, QTScalar};

fn qt(a: i64, b: i64) -> QTScalar {
    QTScalar::qt(a as i32, b as i32)
}

/// `∏_{i∈mask} (t^i + q^{n−i})`.
fn bracket_product(mask: u64, n: usize) -> QTScalar {
    (1..n)
        .filter(|i| mask >> (i - 1) & 1 == 1)
        .fold(QTScalar::one(), |acc, i| acc * (qt(0, i as i64) + qt((n - i) as i64, 0)))
}

/// `∇(s_α) = (−1)^{n+ℓ(α)} q^{n(α′)} t^{n(α^c)} Σ_{β≤α^c} ∏_{i∈D(α)∩D(β)} (t^i + q^{n−i}) s_β`.
pub fn nabla_s(alpha: &Composition) -> NSym {
    let n = alpha.size();
    if n == 0 {
        return NSym::unit();
    }
    let ac = alpha.complement();
    let pre = qt(alpha.conjugate().n_stat() as i64, ac.n_stat() as i64);
    let pre = if odd(n + alpha.len()) { -pre } else { pre };
    let mut x = NSym::zero(n, Basis::S);
    for beta in refinements(&ac) {
        let c = bracket_product(alpha.descent_mask() & beta.descent_mask(), n);
        x.push(beta, pre.clone() * c);
    }
    x
}

/// `∇⁻¹(s_α) = (−1)^{ℓ(α)+1} Σ_{β≥α^c} q^{−n(β′)} t^{−n(β^c)} ∏_{i∈D(β^c)∩D(α^c)} (t^i + q^{n−i}) s_β`.
pub fn nabla_inverse_s(alpha: &Composition) -> NSym {
    let n = alpha.size();
    if n == 0 {
        return NSym::unit();
    }
    let ac = alpha.complement();
    let negate = odd(alpha.len() + 1);
    let mut x = NSym::zero(n, Basis::S);
    for beta in coarsenings(&ac) {
        let mono = qt(-(beta.conjugate().n_stat() as i64), -(beta.complement().n_stat() as i64));
        let c = mono * bracket_product(beta.complement().descent_mask() & ac.descent_mask(), n);
        x.push(beta, if negate { -c } else { c });
    }
    x
}

pub fn nabla(x: &NSym) -> NSym {
    x.to_s().linear_map(x.degree(), Basis::S, nabla_s)
}

pub fn nabla_inverse(x: &NSym) -> NSym {
    x.to_s().linear_map(x.degree(), Basis::S, nabla_inverse_s)
}

/// `q^{n(α′)} t^{n(α)}`.
pub fn eigenvalue(alpha: &Composition) -> QTScalar {
    qt(alpha.conjugate().n_stat() as i64, alpha.n_stat() as i64)
}

/// Matrix of `∇` on the `s` basis in degree `n` (rows are inputs, phi order), from the closed form.
pub fn nabla_matrix(n: usize) -> Matrix<QTScalar> {
    let comps = all_compositions(n);
    Matrix::from_fn(comps.len(), comps.len(), |r, c| nabla_s(&comps[r]).coefficient(&comps[c]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// `H̃` in terms of `s`.
    Hwtos,
    /// `s` in terms of `H̃`, before the scalar prefactor `∏ 1/(t^i − q^{n−i})`.
    StoHw,
    /// `∇` on the `H̃` basis.
    NablaOnHw,
    /// `∇` on the `s` basis.
    NablaOnS,
}

/// `M_1 ⊗ ⋯ ⊗ M_{n−1}`; factor `i` carries `q^{n−i}` and `t^i`.
///
/// Under the convention `A ⊗ B = [b_ij A]`, factor `i` acts on bit `i−1` of
/// the phi index, i.e. on whether `i` is a descent.
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerChain {
    pub n: usize,
    pub kind: ChainKind,
    pub factors: Vec<Matrix<QTScalar>>,
}

fn m2(a: QTScalar, b: QTScalar, c: QTScalar, d: QTScalar) -> Matrix<QTScalar> {
    Matrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("2x2")
}

pub fn kron_chain(kind: ChainKind, n: usize) -> Result<KroneckerChain> {
    if !(2..=12).contains(&n) {
        return Err(Error::OutOfRange(format!("Kronecker chains need 2 ≤ n ≤ 12, got {n}")));
    }
    let factors = (1..n)
        .map(|i| {
            let (qi, ti) = (qt((n - i) as i64, 0), qt(0, i as i64));
            let one = QTScalar::one();
            let zero = QTScalar::zero();
            match kind {
                ChainKind::Hwtos => m2(one.clone(), qi, one, ti),
                ChainKind::StoHw => m2(ti, -qi, -one.clone(), one),
                ChainKind::NablaOnHw => m2(qi, zero.clone(), zero, ti),
                ChainKind::NablaOnS => m2(zero, -(qi.clone() * ti.clone()), one, ti + qi),
            }
        })
        .collect();
    Ok(KroneckerChain { n, kind, factors })
}

impl KroneckerChain {
    pub fn expand(&self) -> Matrix<QTScalar> {
        Matrix::kron_chain(&self.factors)
    }
}

/// `∏_{i=1}^{n−1} (t^i − q^{n−i})`, the denominator of the `StoHw` chain.
pub fn stohw_denominator(n: usize) -> QTScalar {
    (1..n).fold(QTScalar::one(), |acc, i| acc * (qt(0, i as i64) - qt((n - i) as i64, 0)))
}

/// `∇` on `s` from the eigen-decomposition: `StoHw · diag(q^{n(γ′)} t^{n(γ)}) · Hwtos`, divided exactly by the prefactor.
pub fn nabla_matrix_by_eigen(n: usize) -> Result<Matrix<QTScalar>> {
    let comps = all_compositions(n);
    let hw: Matrix<QTScalar> =
        Matrix::from_fn(comps.len(), comps.len(), |r, c| crate::macqt::h_tilde(&comps[r]).coefficient(&comps[c]));
    let diag =
        Matrix::from_fn(comps.len(), comps.len(), |r, c| if r == c { eigenvalue(&comps[r]) } else { QTScalar::zero() });
    let sto = kron_chain(ChainKind::StoHw, n)?.expand();
    let m = sto.mul(&diag)?.mul(&hw)?;
    let d = stohw_denominator(n);
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c).div_exact(&d).ok_or_else(|| Error::NotInvertible(format!("entry ({r}, {c})")))?;
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// `⟨∇f, ∇g⟩ = (qt)^{C(n,2)} ⟨f, g⟩`.
pub fn check_nabla_scalar_law(f: &NSym, g: &NSym) -> Result<bool> {
    let n = f.degree() as i64;
    let lhs = nabla(f).scalar_product(&nabla(g))?;
    let rhs = f.scalar_product(g)? * qt(n * (n - 1) / 2, n * (n - 1) / 2);
    Ok(lhs == rhs)
}

/// `∇(e_n)` at `t = 1` in the `e` basis, checked against `Σ_{α⊨n} q^{n(α′)} e_α`.
pub fn nabla_e_t1(n: usize) -> Result<NSym> {
    if n == 0 {
        return Err(Error::OutOfRange("nabla_e_t1 needs n ≥ 1".into()));
    }
    let x = nabla_s(&Composition::column(n))
        .substitute(&crate::scalar::Target::Q, &crate::scalar::Target::Int(1))?
        .convert(Basis::E)?;
    let expected = nabla_e_t1_formula(n);
    if x != expected {
        return Err(Error::IdentityFailed(format!("{x} != {expected}")));
    }
    Ok(x)
}

/// `Σ_{α⊨n} q^{n(α′)} e_α`.
pub fn nabla_e_t1_formula(n: usize) -> NSym {
    let mut x = NSym::zero(n, Basis::E);
    for a in all_compositions(n) {
        x.push(a.clone(), qt(a.conjugate().n_stat() as i64, 0));
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    #[test]
    fn reference_rows() {
        assert_eq!(nabla_s(&comp![2]).to_string(), "-q*t*s(1,1)");
        assert_eq!(nabla_s(&comp![1, 1]).to_string(), "(t + q)*s(1,1) + s(2)");
        let x = nabla_s(&comp![1, 1, 1]);
        assert_eq!(x.coefficient(&comp![3]), QTScalar::one());
        assert_eq!(x.coefficient(&comp![1, 2]), "t + q^2".parse().unwrap());
        assert_eq!(x.coefficient(&comp![2, 1]), "q + t^2".parse().unwrap());
        assert_eq!(x.coefficient(&comp![1, 1, 1]), "t + q^2".parse::<QTScalar>().unwrap() * "q + t^2".parse().unwrap());
    }

    #[test]
    fn chains() {
        let h = kron_chain(ChainKind::Hwtos, 2).unwrap().expand();
        assert_eq!(h, m2(QTScalar::one(), QTScalar::q(), QTScalar::one(), QTScalar::t()));
        for n in 2..=5 {
            assert_eq!(kron_chain(ChainKind::NablaOnS, n).unwrap().expand(), nabla_matrix(n), "n={n}");
            assert_eq!(nabla_matrix_by_eigen(n).unwrap(), nabla_matrix(n), "n={n}");
        }
        assert!(kron_chain(ChainKind::Hwtos, 1).is_err());
        assert!(kron_chain(ChainKind::Hwtos, 13).is_err());
    }

    #[test]
    fn eigen_and_inverse() {
        let x = nabla(&crate::macqt::h_tilde(&comp![2]));
        assert_eq!(x, crate::macqt::h_tilde(&comp![2]).scale(&QTScalar::q()));
        for n in 1..=4 {
            for a in all_compositions(n) {
                let h = crate::macqt::h_tilde(&a);
                assert_eq!(nabla(&h), h.scale(&eigenvalue(&a)), "{a}");
                assert_eq!(nabla(&nabla_inverse_s(&a)), NSym::s(&a), "{a}");
            }
        }
    }

    #[test]
    fn e_at_t_one() {
        assert_eq!(nabla_e_t1(2).unwrap().to_string(), "e(1,1) + q*e(2)");
        for n in 1..=5 {
            let x = nabla_e_t1(n).unwrap();
            assert_eq!(x.coefficient(&Composition::column(n)), QTScalar::one());
        }
    }

    #[test]
    fn scalar_law_small() {
        let f = NSym::s(&comp![1, 1]);
        assert!(check_nabla_scalar_law(&f, &f).unwrap());
    }
}
