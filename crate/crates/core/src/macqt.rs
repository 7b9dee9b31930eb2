//! The q,t-family `H^{qt}_α`, its twisted form `H̃^{qt}_α`, the bold-P
//! normalisation and the factorisation at `t = 1`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::composition::{all_compositions, common_descent_sum, refinements, Composition};
use crate::error::{Error, Result};
use crate::nsym::Basis;
use crate::scalar::{odd, Scalar, Target};
use crate::{FactoredScalar, NSym, NSymFactored, QTScalar};

fn qt(a: usize, b: usize) -> QTScalar {
    QTScalar::qt(a as i32, b as i32)
}

/// `H^{qt}_α = Σ_β t^{c(α,β^c)} q^{c(α′,β̄)} s_β`.
pub fn h_qt(alpha: &Composition) -> NSym {
    let conj = alpha.conjugate();
    let mut x = NSym::zero(alpha.size(), Basis::S);
    for beta in all_compositions(alpha.size()) {
        let t = common_descent_sum(alpha, &beta.complement());
        let q = common_descent_sum(&conj, &beta.reverse());
        x.push(beta, qt(q, t));
    }
    x
}

/// `H̃^{qt}_α = Σ_β t^{c(α,β)} q^{c(α′,β̄)} s_β`.
pub fn h_tilde(alpha: &Composition) -> NSym {
    let conj = alpha.conjugate();
    let mut x = NSym::zero(alpha.size(), Basis::S);
    for beta in all_compositions(alpha.size()) {
        let t = common_descent_sum(alpha, &beta);
        let q = common_descent_sum(&conj, &beta.reverse());
        x.push(beta, qt(q, t));
    }
    x
}

/// `∏_{i=1}^{n−1} (1 − q^i t^{n−i})`, the norm in `⟨H^{qt}_α, H^{qt}_{α^c}⟩`.
pub fn hqt_norm(n: usize) -> QTScalar {
    (1..n).fold(QTScalar::one(), |acc, i| acc * QTScalar::one_minus(i as i32, (n - i) as i32))
}

/// Whether `H^{tq}_α = ω′(H^{qt}_{α′})` and `q^{n(α′)} t^{n(α)} H^{1/q,1/t}_α = ω^c(H^{qt}_α)`.
pub fn check_relations(alpha: &Composition) -> bool {
    let h = h_qt(alpha);
    let first = h.swap_qt() == h_qt(&alpha.conjugate()).omega_prime();
    let inverted = h.substitute(&Target::InvQ, &Target::InvT).expect("inversion");
    let scale = qt(alpha.conjugate().n_stat(), alpha.n_stat());
    let second = inverted.scale(&scale) == h.omega_c();
    first && second
}

/// `H^{qt}_α` at the given values of `q` and `t`.
pub fn specialize(alpha: &Composition, q: &Target, t: &Target) -> Result<NSym> {
    h_qt(alpha).substitute(q, t)
}

/// `H^{q(i)}_{(m)} = Σ_{β⊨m} q^{(ℓ(β)−1)i + n(β̄)} s_β`.
pub fn h_q_shifted_row(m: usize, i: usize) -> NSym {
    let mut x = NSym::zero(m, Basis::S);
    for beta in all_compositions(m) {
        let e = (beta.len() - 1) * i + beta.reverse().n_stat();
        x.push(beta, qt(e, 0));
    }
    x
}

/// The factors `H^{q(Σ_{j>1}α_j)}_{(α_1)}, …, H^{q(0)}_{(α_k)}` whose product is `H^{qt}_α` at `t = 1`.
pub fn h_q1_factors(alpha: &Composition) -> Result<Vec<NSym>> {
    if alpha.is_empty() {
        return Err(Error::InvalidComposition("factorisation needs a nonempty composition".into()));
    }
    let parts = alpha.parts();
    Ok((0..parts.len()).map(|j| h_q_shifted_row(parts[j], parts[j + 1..].iter().sum())).collect())
}

/// `(1−q^b t^a) H_{(1^a)} H_{(b)} − (1−q^b) H_{(1^a,b)} − (1−t^a) H_{(1^{a−1},b+1)}` for `H = H^{qt}`.
pub fn hook_recurrence_residual(a: usize, b: usize) -> Result<NSym> {
    if a == 0 || b == 0 {
        return Err(Error::OutOfRange(format!("hook recurrence needs a, b ≥ 1, got ({a}, {b})")));
    }
    let (ai, bi) = (a as i32, b as i32);
    let lhs = h_qt(&Composition::column(a)).multiply(&h_qt(&Composition::row(b))).scale(&QTScalar::one_minus(bi, ai));
    let rhs = h_qt(&Composition::hook(a, b)).scale(&QTScalar::one_minus(bi, 0))
        + h_qt(&Composition::hook(a - 1, b + 1)).scale(&QTScalar::one_minus(0, ai));
    lhs.difference(&rhs)
}

pub fn hook_recurrence_check(a: usize, b: usize) -> Result<bool> {
    Ok(hook_recurrence_residual(a, b)?.is_zero())
}

// ---- bold P ---------------------------------------------------------------

/// Descents `i` of `mask` as exponent pairs `(n−i, i)` of `1 − q^{n−i} t^i`.
fn binomials(mask: u64, n: usize) -> impl Iterator<Item = (u32, u32)> {
    (1..n).filter(move |i| mask >> (i - 1) & 1 == 1).map(move |i| ((n - i) as u32, i as u32))
}

fn poly_of(pairs: impl Iterator<Item = (u32, u32)>) -> QTScalar {
    pairs.fold(QTScalar::one(), |acc, (a, b)| acc * QTScalar::one_minus(a as i32, b as i32))
}

/// `r_α = 1/∏_{i∈D(α^c)} (1 − q^{n−i} t^i)`.
pub fn r_alpha(alpha: &Composition) -> FactoredScalar {
    let n = alpha.size();
    FactoredScalar::reciprocal_of(binomials(alpha.complement().descent_mask(), n)).expect("nonzero binomials")
}

/// `c_{αβ} = ∏_{i∈D(α^c)∩D(β)} q^{n−i}/(1 − t^i q^{n−i})` for `β ≤ α`, zero otherwise.
pub fn c_alpha_beta(alpha: &Composition, beta: &Composition) -> Result<FactoredScalar> {
    if !beta.refines(alpha)? {
        return Ok(FactoredScalar::zero());
    }
    let n = alpha.size();
    let common = alpha.complement().descent_mask() & beta.descent_mask();
    let shift = binomials(common, n).map(|(a, _)| a as usize).sum::<usize>();
    let mut c = FactoredScalar::new(qt(shift, 0));
    for (a, b) in binomials(common, n) {
        c = c.with_denominator_factor(a, b, 1)?;
    }
    Ok(c)
}

/// `a_α = ∏_{i∈D(α)} (1 − q^{n−i} t^i) / ∏_{i∈D(α^c)} (1 − q^{n−i} t^i)`.
pub fn a_alpha(alpha: &Composition) -> FactoredScalar {
    let n = alpha.size();
    let num = poly_of(binomials(alpha.descent_mask(), n));
    let mut a = FactoredScalar::new(num);
    for (x, y) in binomials(alpha.complement().descent_mask(), n) {
        a = a.with_denominator_factor(x, y, 1).expect("nonzero binomial");
    }
    a
}

/// `P^{qt}_α = r_α H^{qt}_α`, with the denominator kept literally.
pub fn bold_p(alpha: &Composition) -> NSymFactored {
    let r = r_alpha(alpha);
    h_qt(alpha).map_coefficients(|c| FactoredScalar::from(c.clone()) * r.clone())
}

/// `P^{tq}_α`: `bold_p` with `q` and `t` exchanged.
pub fn bold_p_swapped(alpha: &Composition) -> NSymFactored {
    bold_p(alpha).map_coefficients(FactoredScalar::swap_qt)
}

/// Tabulated bold-P data in one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BoldPCoefficients {
    pub n: usize,
    pub r_alpha: BTreeMap<Composition, FactoredScalar>,
    pub c_table: BTreeMap<(Composition, Composition), FactoredScalar>,
    pub a_alpha: BTreeMap<Composition, FactoredScalar>,
}

impl BoldPCoefficients {
    pub fn c(&self, alpha: &Composition, beta: &Composition) -> FactoredScalar {
        self.c_table.get(&(alpha.clone(), beta.clone())).cloned().unwrap_or_else(FactoredScalar::zero)
    }
}

/// The closed-form coefficients for every `α ⊨ n`.
pub fn bold_p_coefficients(n: usize) -> BoldPCoefficients {
    let comps = all_compositions(n);
    let mut c_table = BTreeMap::new();
    for alpha in &comps {
        for beta in refinements(alpha) {
            c_table.insert((alpha.clone(), beta.clone()), c_alpha_beta(alpha, &beta).expect("same size"));
        }
    }
    BoldPCoefficients {
        n,
        r_alpha: comps.iter().map(|a| (a.clone(), r_alpha(a))).collect(),
        c_table,
        a_alpha: comps.iter().map(|a| (a.clone(), a_alpha(a))).collect(),
    }
}

/// A violated bold-P condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoldPWitness {
    pub condition: u8,
    pub alpha: Composition,
    pub beta: Composition,
}

fn to_factored(x: &NSym) -> NSymFactored {
    x.map_coefficients(|c| FactoredScalar::from(c.clone()))
}

fn h_t(beta: &Composition) -> NSym {
    crate::hlq::h_q(beta).swap_qt()
}

/// Checks the three defining conditions against the tabulated coefficients.
pub fn check_bold_p(coeffs: &BoldPCoefficients) -> std::result::Result<(), BoldPWitness> {
    let n = coeffs.n;
    let comps = all_compositions(n);
    let p: BTreeMap<_, _> = comps.iter().map(|a| (a.clone(), bold_p(a).to_s())).collect();
    for alpha in &comps {
        // (1) triangular in H^t with the tabulated coefficients
        let mut expansion = NSymFactored::zero(n, Basis::S);
        for beta in refinements(alpha) {
            expansion = expansion + to_factored(&h_t(&beta)).scale(&coeffs.c(alpha, &beta));
        }
        if expansion != p[alpha] {
            let beta = first_difference(&expansion, &p[alpha]).unwrap_or_else(|| alpha.clone());
            return Err(BoldPWitness { condition: 1, alpha: alpha.clone(), beta });
        }
        // (2) ω′P^{qt}_α = a_α P^{tq}_{α′}
        let lhs = p[alpha].omega_prime();
        let rhs = bold_p_swapped(&alpha.conjugate()).to_s().scale(&coeffs.a_alpha[alpha]);
        if lhs != rhs {
            return Err(BoldPWitness { condition: 2, alpha: alpha.clone(), beta: alpha.conjugate() });
        }
    }
    // (3) orthogonality off the complement pairs
    for alpha in &comps {
        for beta in &comps {
            if *alpha != beta.complement() && !p[alpha].scalar_product(&p[beta]).expect("same degree").is_zero() {
                return Err(BoldPWitness { condition: 3, alpha: alpha.clone(), beta: beta.clone() });
            }
        }
    }
    Ok(())
}

fn first_difference(x: &NSymFactored, y: &NSymFactored) -> Option<Composition> {
    all_compositions(x.degree()).into_iter().find(|b| x.coefficient(b) != y.coefficient(b))
}

/// `c_{αβ}` and `a_{β̄}(t,q)` rebuilt by the inductive recursion, without the closed forms.
///
/// Compositions are processed by decreasing length; within one `α`, coarser
/// `β` first, so every coefficient the recursion needs is already known.
pub fn bold_p_by_recursion(n: usize) -> Result<BoldPCoefficients> {
    let mut comps = all_compositions(n);
    comps.sort_by_key(|a| std::cmp::Reverse(a.len()));
    let mut c_table: BTreeMap<(Composition, Composition), FactoredScalar> = BTreeMap::new();
    let mut a_table: BTreeMap<Composition, FactoredScalar> = BTreeMap::new();
    let mut p_tq_cache: BTreeMap<Composition, NSymFactored> = BTreeMap::new();

    // P^{tq}_γ = Σ_δ c_{γδ}(t,q) H^q_δ, from coefficients of a longer γ
    let p_tq = |gamma: &Composition, table: &BTreeMap<(Composition, Composition), FactoredScalar>| {
        let mut x = NSymFactored::zero(n, Basis::S);
        for delta in refinements(gamma) {
            let c = table.get(&(gamma.clone(), delta.clone())).expect("computed earlier").swap_qt();
            x = x + to_factored(&crate::hlq::h_q(&delta)).scale(&c);
        }
        x
    };

    for alpha in &comps {
        c_table.insert((alpha.clone(), alpha.clone()), FactoredScalar::one());
        let mut betas: Vec<_> = refinements(alpha).into_iter().filter(|b| b != alpha).collect();
        betas.sort_by_key(|b| b.len());
        for beta in betas {
            let bb = beta.reverse();
            if !p_tq_cache.contains_key(&bb) {
                let x = p_tq(&bb, &c_table).omega_prime();
                p_tq_cache.insert(bb.clone(), x);
            }
            let w = &p_tq_cache[&bb];
            let a_val = to_factored(&h_t(&beta)).scalar_product(w)?.signed(odd(n + beta.len()));
            let mut sum = FactoredScalar::zero();
            for theta in refinements(alpha) {
                if theta == beta || !beta.refines(&theta)? {
                    continue;
                }
                let pairing = to_factored(&h_t(&theta)).scalar_product(w)?;
                sum = sum + c_table[&(alpha.clone(), theta.clone())].clone() * pairing;
            }
            let c = (sum * a_val.try_invert()?).signed(odd(n + 1 + beta.len()));
            a_table.insert(bb.clone(), a_val);
            c_table.insert((alpha.clone(), beta), c);
        }
    }
    let comps = all_compositions(n);
    Ok(BoldPCoefficients {
        n,
        r_alpha: comps.iter().map(|a| (a.clone(), r_alpha(a))).collect(),
        c_table,
        // the recursion only meets a_{β̄}(t,q); report them swapped back to (q,t)
        a_alpha: a_table.into_iter().map(|(k, v)| (k, v.swap_qt())).collect(),
    })
}

/// Whether two coefficient tables agree on every entry of `reference`.
pub fn same_coefficients(
    reference: &BoldPCoefficients,
    other: &BoldPCoefficients,
) -> Option<(Composition, Composition)> {
    for ((a, b), c) in &reference.c_table {
        if other.c(a, b) != *c {
            return Some((a.clone(), b.clone()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    #[test]
    fn reference_rows() {
        assert_eq!(h_tilde(&comp![2]).to_string(), "q*s(1,1) + s(2)");
        assert_eq!(h_tilde(&comp![1, 1]).to_string(), "t*s(1,1) + s(2)");
        assert_eq!(h_tilde(&comp![2, 1]), {
            let mut x = NSym::zero(3, Basis::S);
            x.push(comp![3], QTScalar::one());
            x.push(comp![1, 2], qt(2, 0));
            x.push(comp![2, 1], qt(0, 2));
            x.push(comp![1, 1, 1], qt(2, 2));
            x
        });
    }

    #[test]
    fn relations_and_specialisations() {
        for n in 1..=5 {
            for a in all_compositions(n) {
                assert!(check_relations(&a), "{a}");
                let zero = Target::Int(0);
                let one = Target::Int(1);
                assert_eq!(specialize(&a, &zero, &zero).unwrap(), NSym::s(&a));
                assert!(specialize(&a, &zero, &one).unwrap().same_as(&NSym::h(&a)));
                assert!(specialize(&a, &one, &zero).unwrap().same_as(&NSym::e(&a.complement())));
                assert_eq!(specialize(&a, &zero, &Target::Q).unwrap(), crate::hlq::h_q(&a));
            }
        }
    }

    #[test]
    fn factorisation_at_t_one() {
        let f = h_q1_factors(&comp![2]).unwrap();
        assert_eq!(f[0].to_string(), "q*s(1,1) + s(2)");
        for n in 1..=5 {
            for a in all_compositions(n) {
                let prod = h_q1_factors(&a).unwrap().iter().fold(NSym::unit(), |x, y| x.multiply(y));
                let spec = specialize(&a, &Target::Q, &Target::Int(1)).unwrap();
                assert!(prod.same_as(&spec), "{a}");
            }
        }
    }

    #[test]
    fn hook_examples() {
        assert!(hook_recurrence_check(1, 1).unwrap());
        assert!(hook_recurrence_check(2, 1).unwrap());
    }

    #[test]
    fn bold_p_small() {
        let p = bold_p(&comp![2]);
        let expected = to_factored(&NSym::s(&comp![2]).try_add(&NSym::s(&comp![1, 1]).scale(&QTScalar::q())).unwrap())
            .scale(&FactoredScalar::reciprocal_of([(1, 1)]).unwrap());
        assert_eq!(p, expected);
        for n in 1..=3 {
            let coeffs = bold_p_coefficients(n);
            assert_eq!(check_bold_p(&coeffs), Ok(()));
            let rec = bold_p_by_recursion(n).unwrap();
            assert_eq!(same_coefficients(&coeffs, &rec), None);
        }
    }
}
