//! The q-Hall-Littlewood family `H^q_α`, the row-adding operators, Hivert's
//! `W^q_α`, the product rules and root-of-unity factorization.

use std::collections::BTreeSet;

use crate::composition::{c_stat, coarsenings, common_descent_sum, Composition};
use crate::error::{Error, Result};
use crate::nsym::{Basis, NSymOperator};
use crate::scalar::CyclotomicScalar;
use crate::{NSym, QTScalar};

fn q_pow(k: usize) -> QTScalar {
    QTScalar::qt(k as i32, 0)
}

/// `H^q_α = Σ_{β≥α} q^{c(α,β^c)} s_β`.
pub fn h_q(alpha: &Composition) -> NSym {
    let mut x = NSym::zero(alpha.size(), Basis::S);
    for beta in coarsenings(alpha) {
        let k = common_descent_sum(alpha, &beta.complement());
        x.push(beta, q_pow(k));
    }
    x
}

/// `H^q_α` as `Ã^q_{α_ℓ} ∘ ⋯ ∘ Ã^q_{α_1}(1)`.
pub fn h_q_by_operators(alpha: &Composition) -> NSym {
    alpha.parts().iter().fold(NSym::unit(), |x, &m| apply_atilde_q(&Composition::row(m), &x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    A,
    B,
    AtildeQ,
}

/// `A_α`, `B_α` or `Ã^q_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOperator {
    pub kind: RowKind,
    pub index: Composition,
}

impl RowOperator {
    pub fn new(kind: RowKind, index: Composition) -> Self {
        RowOperator { kind, index }
    }

    pub fn apply(&self, x: &NSym) -> Result<NSym> {
        match self.kind {
            RowKind::A => Ok(apply_a(&self.index, x)),
            RowKind::B => apply_b(&self.index, x),
            RowKind::AtildeQ => Ok(apply_atilde_q(&self.index, x)),
        }
    }

    /// Tabulates the operator up to degree `bound`; `B` sends `1` to zero.
    pub fn to_operator(&self, bound: usize) -> NSymOperator<QTScalar> {
        let shift = self.index.size();
        NSymOperator::from_rule(shift, bound, |beta| {
            let x = NSym::s(beta);
            match self.kind {
                RowKind::B if beta.is_empty() => NSym::zero(shift, Basis::S),
                _ => self.apply(&x).expect("nonempty input"),
            }
        })
    }
}

/// `s_β ↦ s_{β·α}`.
pub fn apply_a(alpha: &Composition, x: &NSym) -> NSym {
    x.to_s().linear_map(x.degree() + alpha.size(), Basis::S, |b| NSym::s(&b.concat(alpha)))
}

/// `s_β ↦ s_{β|α}`; rejects the empty index.
pub fn apply_b(alpha: &Composition, x: &NSym) -> Result<NSym> {
    let x = x.to_s();
    for (b, _) in x.terms() {
        b.attach(alpha)?;
    }
    Ok(x.linear_map(x.degree() + alpha.size(), Basis::S, |b| NSym::s(&b.attach(alpha).expect("checked"))))
}

/// `Ã^q_α(s_β) = s_{β·α} + q^{|β|} s_{β|α}` and `Ã^q_α(1) = s_α`.
pub fn apply_atilde_q(alpha: &Composition, x: &NSym) -> NSym {
    let x = x.to_s();
    let n = x.degree();
    x.linear_map(n + alpha.size(), Basis::S, |b| {
        let mut y = NSym::s(&b.concat(alpha));
        if let Ok(att) = b.attach(alpha) {
            y.push(att, q_pow(n));
        }
        y
    })
}

/// `Bre(α, β)` for `β ≥ α`: the composition of `ℓ(α)` with descents
/// `#{a_j ≤ b_i}` over the descents `b_i` of `β`.
pub fn bre(alpha: &Composition, beta: &Composition) -> Result<Composition> {
    if !alpha.refines(beta)? {
        return Err(Error::InvalidComposition(format!("{beta} is not a coarsening of {alpha}")));
    }
    let da = alpha.descent_set();
    let d: BTreeSet<usize> = beta.descent_set().iter().map(|&b| da.iter().filter(|&&a| a <= b).count()).collect();
    Composition::from_descent_set(&d, alpha.len())
}

/// `W^q_α = Σ_{β≥α} q^{n(Bre(α,β)^c)} s_β`.
pub fn w_q(alpha: &Composition) -> NSym {
    let mut x = NSym::zero(alpha.size(), Basis::S);
    for beta in coarsenings(alpha) {
        let k = bre(alpha, &beta).expect("coarsening").complement().n_stat();
        x.push(beta, q_pow(k));
    }
    x
}

/// `W^q_α` from `W_{α·(m)} = A_{(m)} W_α + q^{ℓ(α)} B_{(m)} W_α`, starting at `W_{(m)} = s_{(m)}`.
pub fn w_q_by_recurrence(alpha: &Composition) -> NSym {
    let parts = alpha.parts();
    let Some((&first, rest)) = parts.split_first() else {
        return NSym::unit();
    };
    let mut w = NSym::s(&Composition::row(first));
    for (l, &m) in rest.iter().enumerate() {
        let row = Composition::row(m);
        let b = apply_b(&row, &w).expect("nonempty").scale(&q_pow(l + 1));
        w = apply_a(&row, &w) + b;
    }
    w
}

/// The right side of `H^q_α s_β = Σ_{γ≥β} g^γ_{αβ}(q)(H^q_{α·γ} + (1−q^{|α|}) H^q_{α|γ})`, in the `Hq` basis.
pub fn product_hq_s(alpha: &Composition, beta: &Composition) -> Result<NSym> {
    check_nonempty(alpha, beta)?;
    let n = alpha.size() + beta.size();
    let ab = alpha.concat(beta);
    let mut out = NSym::zero(n, Basis::Hq);
    for gamma in coarsenings(beta) {
        let ag = alpha.concat(&gamma);
        let sign = (beta.len() - gamma.len()) % 2 == 1;
        let g = q_pow(c_stat(&ab, &ag.complement())?);
        let g = if sign { -g } else { g };
        push_pair(&mut out, alpha, &gamma, g);
    }
    Ok(out)
}

/// The right side of `H^q_α H^q_β = Σ_{γ≥β} f^γ_{αβ}(q)(H^q_{α·γ} + (1−q^{|α|}) H^q_{α|γ})`, in the `Hq` basis.
pub fn product_hq_hq(alpha: &Composition, beta: &Composition) -> Result<NSym> {
    check_nonempty(alpha, beta)?;
    let n = alpha.size() + beta.size();
    let mut out = NSym::zero(n, Basis::Hq);
    let one_minus = QTScalar::one_minus(alpha.size() as i32, 0);
    for gamma in coarsenings(beta) {
        let f = q_pow(c_stat(beta, &gamma.complement())?) * one_minus.pow((beta.len() - gamma.len()) as u32);
        push_pair(&mut out, alpha, &gamma, f);
    }
    Ok(out)
}

fn push_pair(out: &mut NSym, alpha: &Composition, gamma: &Composition, c: QTScalar) {
    let one_minus = QTScalar::one_minus(alpha.size() as i32, 0);
    out.push(alpha.concat(gamma), c.clone());
    out.push(alpha.attach(gamma).expect("nonempty"), c * one_minus);
}

fn check_nonempty(alpha: &Composition, beta: &Composition) -> Result<()> {
    if alpha.is_empty() || beta.is_empty() {
        return Err(Error::EmptyAttach);
    }
    Ok(())
}

/// `H^q_{(1^a)} h_b − H^q_{(1^a,b)} − (1−q^a) H^q_{(1^{a−1},b+1)}` in the `s` basis.
pub fn hook_recurrence_residual(a: usize, b: usize) -> Result<NSym> {
    if a == 0 || b == 0 {
        return Err(Error::OutOfRange(format!("hook recurrence needs a, b ≥ 1, got ({a}, {b})")));
    }
    let lhs = h_q(&Composition::column(a)).multiply(&NSym::h(&Composition::row(b)));
    let rhs =
        h_q(&Composition::hook(a, b)) + h_q(&Composition::hook(a - 1, b + 1)).scale(&QTScalar::one_minus(a as i32, 0));
    lhs.difference(&rhs)
}

/// Outcome of a root-of-unity factorization check.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationCheck {
    pub holds: bool,
    /// First `s_β` whose coefficient does not vanish modulo `Φ_r(q)`.
    pub witness: Option<(Composition, CyclotomicScalar)>,
}

/// Checks `H^ζ_α = H^ζ_{α⁽¹⁾} ⋯ H^ζ_{α⁽ᵏ⁾}` at primitive `r`-th roots of unity.
pub fn check_root_of_unity_factorization(
    alpha: &Composition,
    r: u32,
    blocks: &[Composition],
) -> Result<FactorizationCheck> {
    if !(2..=6).contains(&r) {
        return Err(Error::OutOfRange(format!("root order {r} outside 2..=6")));
    }
    validate_split(alpha, r, blocks)?;
    let product = blocks.iter().fold(NSym::unit(), |acc, b| acc.multiply(&h_q(b)));
    let diff = h_q(alpha).difference(&product)?;
    let mut terms: Vec<_> = diff.terms().collect();
    terms.sort_by_key(|(a, _)| a.phi_index());
    for (beta, c) in terms {
        let res = c.reduce_cyclotomic(r)?;
        if !res.is_zero() {
            return Ok(FactorizationCheck { holds: false, witness: Some((beta.clone(), res)) });
        }
    }
    Ok(FactorizationCheck { holds: true, witness: None })
}

fn validate_split(alpha: &Composition, r: u32, blocks: &[Composition]) -> Result<()> {
    let joined = blocks.iter().fold(Composition::empty(), |acc, b| acc.concat(b));
    if &joined != alpha || blocks.iter().any(Composition::is_empty) {
        return Err(Error::InvalidSplit(format!("blocks do not concatenate to {alpha}")));
    }
    if let Some(bad) = blocks[..blocks.len().saturating_sub(1)].iter().find(|b| b.size() % r as usize != 0) {
        return Err(Error::InvalidSplit(format!("block {bad} has size {} not divisible by {r}", bad.size())));
    }
    Ok(())
}

/// Every split of `α` into at least two consecutive blocks whose non-final sizes are multiples of `r`.
pub fn valid_splits(alpha: &Composition, r: u32) -> Vec<Vec<Composition>> {
    let parts = alpha.parts();
    let mut out = Vec::new();
    let mut current = Vec::new();
    split_from(parts, 0, r as usize, &mut current, &mut out);
    out.retain(|s| s.len() >= 2);
    out
}

fn split_from(
    parts: &[usize],
    start: usize,
    r: usize,
    current: &mut Vec<Composition>,
    out: &mut Vec<Vec<Composition>>,
) {
    if start == parts.len() {
        out.push(current.clone());
        return;
    }
    for end in start + 1..=parts.len() {
        let block = &parts[start..end];
        let last = end == parts.len();
        if last || block.iter().sum::<usize>() % r == 0 {
            current.push(Composition::new(block.to_vec()).expect("positive parts"));
            split_from(parts, end, r, current, out);
            current.pop();
        }
    }
}

/// `H^q_α` with `q` specialised to an integer, as an `s`-expansion with integer coefficients.
pub fn h_q_at(alpha: &Composition, q: i64) -> NSym {
    let target = crate::scalar::Target::Int(q);
    h_q(alpha).substitute(&target, &crate::scalar::Target::T).expect("integer substitution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    #[test]
    fn reference_rows() {
        assert_eq!(h_q(&comp![1, 2]).to_string(), "s(1,2) + q*s(3)");
        assert_eq!(h_q(&comp![2, 1]).to_string(), "s(2,1) + q^2*s(3)");
        assert_eq!(h_q(&comp![1, 1, 1]).to_string(), "s(1,1,1) + q*s(2,1) + q^2*s(1,2) + q^3*s(3)");
    }

    #[test]
    fn operator_chain_agrees() {
        for n in 0..=7 {
            for a in crate::composition::all_compositions(n) {
                assert_eq!(h_q(&a), h_q_by_operators(&a), "{a}");
            }
        }
    }

    #[test]
    fn row_operator_examples() {
        let s1 = NSym::s(&comp![1]);
        assert_eq!(apply_a(&comp![2], &s1), NSym::s(&comp![1, 2]));
        assert_eq!(apply_b(&comp![2], &s1).unwrap(), NSym::s(&comp![3]));
        assert!(apply_b(&comp![2], &NSym::unit()).is_err());
        assert_eq!(apply_atilde_q(&comp![2], &s1).to_string(), "s(1,2) + q*s(3)");
        assert_eq!(apply_atilde_q(&comp![2], &NSym::unit()), NSym::s(&comp![2]));
        assert_eq!(apply_atilde_q(&comp![1], &NSym::s(&comp![1, 1])).to_string(), "s(1,1,1) + q^2*s(1,2)");
        for (r, s) in [(1, 1), (2, 3), (1, 4)] {
            let bb = apply_b(&comp![r], &apply_b(&comp![s], &s1).unwrap()).unwrap();
            assert_eq!(bb, apply_b(&comp![r + s], &s1).unwrap());
        }
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_q(&comp![2, 1]).to_string(), "s(2,1) + q*s(3)");
        assert_eq!(w_q(&comp![1, 2]), h_q(&comp![1, 2]));
        assert_ne!(w_q(&comp![2, 1]), h_q(&comp![2, 1]));
        assert!(bre(&comp![3], &comp![2, 1]).is_err());
        for n in 1..=6 {
            for a in crate::composition::all_compositions(n) {
                assert_eq!(w_q(&a), w_q_by_recurrence(&a), "{a}");
            }
        }
    }

    #[test]
    fn product_examples() {
        let p = product_hq_s(&comp![1], &comp![1]).unwrap();
        assert_eq!(p.to_string(), "Hq(1,1) + (1 - q)*Hq(2)");
        let p = product_hq_s(&comp![2], &comp![1]).unwrap();
        assert_eq!(p.to_string(), "Hq(2,1) + (1 - q^2)*Hq(3)");
        let p = product_hq_hq(&comp![1], &comp![1]).unwrap();
        assert_eq!(p.to_string(), "Hq(1,1) + (1 - q)*Hq(2)");
    }

    #[test]
    fn root_of_unity_examples() {
        let ok = check_root_of_unity_factorization(&comp![1, 1, 1], 2, &[comp![1, 1], comp![1]]).unwrap();
        assert!(ok.holds);
        assert!(check_root_of_unity_factorization(&comp![2, 2], 2, &[comp![2], comp![2]]).unwrap().holds);
        let bad = check_root_of_unity_factorization(&comp![1, 1, 1], 2, &[comp![1], comp![1, 1]]);
        assert!(matches!(bad, Err(Error::InvalidSplit(_))));
        assert_eq!(valid_splits(&comp![1, 1, 1], 2), vec![vec![comp![1, 1], comp![1]]]);
    }

    #[test]
    fn factorization_fails_without_the_root() {
        // at q = 2 the split (1,1)|(1) is not a factorization
        let lhs = h_q_at(&comp![1, 1, 1], 2);
        let rhs = h_q_at(&comp![1, 1], 2).multiply(&h_q_at(&comp![1], 2));
        assert!(!lhs.same_as(&rhs));
    }
}
