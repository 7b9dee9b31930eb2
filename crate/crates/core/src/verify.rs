//! Named verification suites. Each reports how many checks ran and the first
//! counterexample, if any.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commutative::{
    chi, chi_nabla_en, e_positivity_gap, fubini_oracle, hook_recurrence_commutative, is_q_positive, pair_en,
    pair_en_formula, pair_h1n,
};
use crate::composition::{all_compositions, Composition};
use crate::error::{Error, Result};
use crate::family::{transition_matrix, Family, TransitionMatrix};
use crate::hlq::{self, h_q, w_q, RowKind, RowOperator};
use crate::macqt::{self, h_qt, hqt_norm};
use crate::nabla::{self, ChainKind};
use crate::nsym::{Basis, Matrix, NSymOperator, NSymTensor};
use crate::qsym::{dual_of, duality_witness, g_q_hivert, QBasis, QSymElement};
use crate::render::{render_matrix, Format, LabeledMatrix};
use crate::scalar::{cyclotomic_polynomial, Monomial, Target};
use crate::{FactoredScalar, NSym, QTScalar};

type Member = fn(&Composition) -> NSym;

const SEED: u64 = 0x6e63_7366;

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub checks: u64,
    pub failure: Option<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} checks)", self.suite, self.checks),
            Some(w) => write!(f, "FAIL {} after {} checks: {}", self.suite, self.checks, w),
        }
    }
}

struct Ctx {
    n_max: usize,
    check: &'static str,
    checks: u64,
    failure: Option<String>,
    rng: ChaCha8Rng,
}

impl Ctx {
    fn new(n_max: usize) -> Self {
        Ctx { n_max, check: "", checks: 0, failure: None, rng: ChaCha8Rng::seed_from_u64(SEED) }
    }

    fn cap(&self, n: usize) -> usize {
        n.min(self.n_max)
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(format!("[{}] {}", self.check, witness()));
        }
    }

    fn ok<T>(&mut self, r: Result<T>, what: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let w = what();
                self.check(false, || format!("{w}: {e}"));
                None
            }
        }
    }

    fn poly(&mut self, terms: usize, lo: i32, hi: i32, coef: i64) -> QTScalar {
        let mut x = QTScalar::zero();
        for _ in 0..self.rng.gen_range(1..=terms) {
            let c = BigInt::from(self.rng.gen_range(-coef..=coef));
            x.add_term(Monomial::new(self.rng.gen_range(lo..=hi), self.rng.gen_range(lo..=hi)), c);
        }
        x
    }

    fn composition(&mut self, n: usize) -> Composition {
        let comps = all_compositions(n);
        comps[self.rng.gen_range(0..comps.len())].clone()
    }

    /// A sparse `s`-combination of degree `n` with small polynomial coefficients.
    fn element(&mut self, n: usize) -> NSym {
        let mut x = NSym::zero(n, Basis::S);
        for _ in 0..self.rng.gen_range(1..=3) {
            let a = self.composition(n);
            let c = self.poly(2, 0, 2, 3);
            x = x + NSym::s(&a).scale(&c);
        }
        x
    }
}

struct Check {
    name: &'static str,
    module: &'static str,
    run: fn(&mut Ctx),
}

const CHECKS: &[Check] = &[
    Check { name: "involutions", module: "compositions", run: involutions },
    Check { name: "refinement-order", module: "compositions", run: refinement_order },
    Check { name: "ring-axioms", module: "scalars", run: ring_axioms },
    Check { name: "substitution", module: "scalars", run: substitution },
    Check { name: "cyclotomic", module: "scalars", run: cyclotomic },
    Check { name: "factored", module: "scalars", run: factored },
    Check { name: "selfdual", module: "nsym-core", run: selfdual },
    Check { name: "pairing-laws", module: "nsym-core", run: pairing_laws },
    Check { name: "antipode-involution", module: "nsym-core", run: antipode_involution },
    Check { name: "hopf-axioms", module: "nsym-core", run: hopf_axioms },
    Check { name: "round-trips", module: "nsym-core", run: round_trips },
    Check { name: "duality", module: "qsym", run: duality },
    Check { name: "pairing-invariance", module: "qsym", run: pairing_invariance },
    Check { name: "hq-specializations", module: "hl-q", run: hq_specializations },
    Check { name: "hq-coefficients", module: "hl-q", run: hq_coefficients },
    Check { name: "hq-scalar", module: "hl-q", run: hq_scalar },
    Check { name: "q-twist", module: "hl-q", run: q_twist },
    Check { name: "products", module: "hl-q", run: products },
    Check { name: "root-of-unity", module: "hl-q", run: root_of_unity },
    Check { name: "hq-hook-recurrence", module: "hl-q", run: hq_hook_recurrence },
    Check { name: "w-vs-h", module: "hl-q", run: w_vs_h },
    Check { name: "hqt-scalar", module: "mac-qt", run: hqt_scalar },
    Check { name: "hqt-coefficients", module: "mac-qt", run: hqt_coefficients },
    Check { name: "hqt-hook-recurrence", module: "mac-qt", run: hqt_hook_recurrence },
    Check { name: "bold-p", module: "mac-qt", run: bold_p },
    Check { name: "reference-tables", module: "nabla", run: reference_tables },
    Check { name: "nabla-kronecker", module: "nabla", run: nabla_kronecker },
    Check { name: "stohw-inverse", module: "nabla", run: stohw_inverse },
    Check { name: "nabla-coherence", module: "nabla", run: nabla_coherence },
    Check { name: "chi-multiplicative", module: "commutative", run: chi_multiplicative },
    Check { name: "chi-hook-recurrence", module: "commutative", run: chi_hook_recurrence },
    Check { name: "counts", module: "commutative", run: counts },
    Check { name: "e-positivity", module: "commutative", run: e_positivity },
];

/// One suite per module, in dependency order.
pub const MODULES: [&str; 8] =
    ["compositions", "scalars", "nsym-core", "qsym", "hl-q", "mac-qt", "nabla", "commutative"];

/// Every name accepted by [`run`].
pub fn suite_names() -> Vec<&'static str> {
    std::iter::once("all").chain(MODULES).chain(CHECKS.iter().map(|c| c.name)).collect()
}

fn run_checks(name: &str, checks: &[&Check], n_max: usize) -> Report {
    let mut ctx = Ctx::new(n_max);
    for c in checks {
        ctx.check = c.name;
        (c.run)(&mut ctx);
        if ctx.failed() {
            break;
        }
    }
    Report { suite: name.to_string(), checks: ctx.checks, failure: ctx.failure }
}

/// Runs `suite` (a module, a single check, or `all`) with degrees capped at `n_max`.
pub fn run(suite: &str, n_max: usize) -> Result<Vec<Report>> {
    let module = |m: &str| -> Vec<&Check> { CHECKS.iter().filter(|c| c.module == m).collect() };
    if suite == "all" {
        return Ok(MODULES.iter().map(|m| run_checks(m, &module(m), n_max)).collect());
    }
    if MODULES.contains(&suite) {
        return Ok(vec![run_checks(suite, &module(suite), n_max)]);
    }
    match CHECKS.iter().find(|c| c.name == suite) {
        Some(c) => Ok(vec![run_checks(suite, &[c], n_max)]),
        None => Err(Error::Parse(format!("unknown suite `{suite}`"))),
    }
}

// ---- compositions ---------------------------------------------------------

fn involutions(ctx: &mut Ctx) {
    for n in 0..=ctx.cap(8) {
        let half = (n * n.saturating_sub(1) / 2) as u64;
        for a in all_compositions(n) {
            ctx.check(a.reverse().reverse() == a, || format!("reverse twice at {a}"));
            ctx.check(a.complement().complement() == a, || format!("complement twice at {a}"));
            ctx.check(a.conjugate().conjugate() == a, || format!("conjugate twice at {a}"));
            let c = a.conjugate();
            ctx.check(c == a.complement().reverse() && c == a.reverse().complement(), || format!("conjugate at {a}"));
            if n > 0 {
                ctx.check(a.len() + a.complement().len() == n + 1, || format!("lengths at {a}"));
                ctx.check((a.n_stat() + a.complement().n_stat()) as u64 == half, || format!("n-statistics at {a}"));
            }
        }
    }
}

fn refinement_order(ctx: &mut Ctx) {
    for n in 0..=ctx.cap(8) {
        let comps = all_compositions(n);
        let k = comps.len();
        let le: Vec<Vec<bool>> =
            comps.iter().map(|a| comps.iter().map(|b| a.refines(b).unwrap_or(false)).collect()).collect();
        for i in 0..k {
            ctx.check(le[i][i], || format!("not reflexive at {}", comps[i]));
            for j in 0..k {
                if le[i][j] {
                    ctx.check(i == j || !le[j][i], || format!("not antisymmetric at {}, {}", comps[i], comps[j]));
                    ctx.check(comps[i].phi_index() >= comps[j].phi_index(), || {
                        format!("phi order does not extend {} ≤ {}", comps[i], comps[j])
                    });
                    for l in 0..k {
                        if le[j][l] && !le[i][l] {
                            ctx.check(false, || format!("not transitive at {}, {}, {}", comps[i], comps[j], comps[l]));
                        }
                    }
                }
            }
        }
    }
}

// ---- scalars --------------------------------------------------------------

fn ring_axioms(ctx: &mut Ctx) {
    for _ in 0..10_000 {
        let (a, b, c) = (ctx.poly(4, -6, 6, 9), ctx.poly(4, -6, 6, 9), ctx.poly(4, -6, 6, 9));
        let w = || format!("{a} | {b} | {c}");
        ctx.check((a.clone() + b.clone()) + c.clone() == a.clone() + (b.clone() + c.clone()), w);
        ctx.check((a.clone() * b.clone()) * c.clone() == a.clone() * (b.clone() * c.clone()), w);
        ctx.check(a.clone() * (b.clone() + c.clone()) == a.clone() * b.clone() + a.clone() * c.clone(), w);
        ctx.check(a.clone() * b.clone() == b.clone() * a.clone() && a.clone() - a.clone() == QTScalar::zero(), w);
        if ctx.failed() {
            return;
        }
    }
}

fn substitution(ctx: &mut Ctx) {
    for _ in 0..1_000 {
        let x = ctx.poly(4, -6, 6, 9);
        let twice = x.substitute(&Target::InvQ, &Target::T).and_then(|y| y.substitute(&Target::InvQ, &Target::T));
        ctx.check(twice.as_ref() == Ok(&x), || format!("q → 1/q twice at {x}"));
        let swap = x.substitute(&Target::T, &Target::Q);
        ctx.check(swap.as_ref() == Ok(&x.swap_qt()), || format!("swap at {x}"));
    }
}

fn cyclotomic(ctx: &mut Ctx) {
    for r in 2..=12u32 {
        let phi = QTScalar::from_terms(
            cyclotomic_polynomial(r).into_iter().enumerate().map(|(i, c)| (Monomial::new(i as i32, 0), c)),
        );
        for _ in 0..50 {
            let mut p = QTScalar::zero();
            for e in 0..ctx.rng.gen_range(1..8) {
                p.add_term(Monomial::new(e, 0), BigInt::from(ctx.rng.gen_range(-9..=9)));
            }
            let x = p.clone() * phi.clone();
            let res = ctx.ok(x.reduce_cyclotomic(r), || format!("reduce at r={r}"));
            ctx.check(res.is_some_and(|v| v.is_zero()), || format!("({p})·Φ_{r} has nonzero residue"));
        }
    }
}

fn factored(ctx: &mut Ctx) {
    for _ in 0..500 {
        let (a, b) = (ctx.poly(3, 0, 4, 9), ctx.poly(3, 0, 4, 9));
        let f1 = (ctx.rng.gen_range(0..3u32), ctx.rng.gen_range(1..3u32));
        let f2 = (ctx.rng.gen_range(1..3u32), ctx.rng.gen_range(0..3u32));
        let (d1, d2) = (QTScalar::one_minus(f1.0 as i32, f1.1 as i32), QTScalar::one_minus(f2.0 as i32, f2.1 as i32));
        let x = FactoredScalar::new(a.clone()).with_denominator_factor(f1.0, f1.1, 1).expect("nonzero");
        let y = FactoredScalar::new(b.clone()).with_denominator_factor(f2.0, f2.1, 1).expect("nonzero");
        // cross-multiplied: num(z) · d1 d2 = (expected numerator) · den(z)
        let agree = |z: FactoredScalar, num: QTScalar| {
            z.numerator().clone() * d1.clone() * d2.clone() == num * z.denominator_poly()
        };
        let w = || format!("({a})/({d1}) and ({b})/({d2})");
        ctx.check(agree(x.clone() + y.clone(), a.clone() * d2.clone() + b.clone() * d1.clone()), w);
        ctx.check(agree(x.clone() - y.clone(), a.clone() * d2.clone() - b.clone() * d1.clone()), w);
        ctx.check(agree(x.clone() * y.clone(), a.clone() * b.clone()), w);
    }
}

// ---- nsym-core ------------------------------------------------------------

fn selfdual(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(6) {
        for (name, make) in [("h", NSym::h as fn(&Composition) -> NSym), ("e", NSym::e), ("s", NSym::s)] {
            // e pairs with the sign of the second index: ⟨e_α, e_β⟩ = ⟨h_β, h_α⟩
            if let Some(w) = selfdual_witness(n, make, name == "e") {
                ctx.check(false, || format!("⟨{name}{}, {name}{}⟩ = {}", w.0, w.1, w.2));
            }
            ctx.checks += 1 << (2 * (n - 1));
        }
    }
}

/// First pair violating `⟨x_α, x_β⟩ = (−1)^{n+ℓ} δ_{α,β^c}`, with `ℓ = ℓ(β)` if `second` else `ℓ(α)`.
pub fn selfdual_witness(
    n: usize,
    make: fn(&Composition) -> NSym,
    second: bool,
) -> Option<(Composition, Composition, String)> {
    let comps = all_compositions(n);
    let xs: Vec<_> = comps.iter().map(|a| make(a).to_s()).collect();
    for (i, a) in comps.iter().enumerate() {
        for (j, b) in comps.iter().enumerate() {
            let l = if second { b.len() } else { a.len() };
            let want = if *b == a.complement() { QTScalar::one().signed(odd(n + l)) } else { QTScalar::zero() };
            match xs[i].scalar_product(&xs[j]) {
                Ok(v) if v == want => {}
                Ok(v) => return Some((a.clone(), b.clone(), v.to_string())),
                Err(e) => return Some((a.clone(), b.clone(), e.to_string())),
            }
        }
    }
    None
}

fn odd(k: usize) -> bool {
    k % 2 == 1
}

use crate::scalar::Scalar as _;

fn pairing_laws(ctx: &mut Ctx) {
    for _ in 0..60 {
        let n = ctx.rng.gen_range(1..=ctx.cap(6).max(1));
        let (f, g) = (ctx.element(n), ctx.element(n));
        let p = |x: &NSym, y: &NSym| x.scalar_product(y).expect("same degree");
        let w = || format!("f = {f}, g = {g}");
        ctx.check(p(&f, &g) == p(&g, &f).signed(odd(n + 1)), w);
        ctx.check(p(&f.antipode(), &g.antipode()) == p(&g, &f), w);
        ctx.check(p(&f.omega_bar(), &g.omega_bar()) == p(&f, &g), w);
        ctx.check(p(&f.omega_prime(), &g.omega_prime()) == p(&g, &f), w);
        ctx.check(p(&f.omega_c(), &g.omega_c()) == p(&g, &f), w);
    }
}

fn antipode_involution(ctx: &mut Ctx) {
    for n in 0..=ctx.cap(6) {
        for a in all_compositions(n) {
            let x = NSym::s(&a);
            ctx.check(x.antipode().antipode() == x, || format!("S∘S at s{a}"));
        }
    }
}

fn hopf_axioms(ctx: &mut Ctx) {
    let bound = ctx.cap(5);
    for n in 0..=bound {
        for a in all_compositions(n) {
            let x = NSym::h(&a);
            ctx.check(NSymTensor::coassociative_at(&x), || format!("coassociativity at h{a}"));
            let d = x.coproduct();
            let mut left = NSym::zero(n, Basis::H);
            let mut right = NSym::zero(n, Basis::H);
            for ((b, c), k) in d.terms() {
                if b.is_empty() {
                    left = left + NSym::h(c).scale(k);
                }
                if c.is_empty() {
                    right = right + NSym::h(b).scale(k);
                }
            }
            ctx.check(left == x && right == x, || format!("counit at h{a}"));
        }
    }
    let id = NSymOperator::<QTScalar>::identity(bound);
    let s = NSymOperator::antipode(bound);
    for op in [id.convolve(&s), s.convolve(&id)] {
        for n in 0..=bound {
            for b in all_compositions(n) {
                let want = if n == 0 { NSym::unit() } else { NSym::zero(n, Basis::S) };
                ctx.check(op.image(&b).ok() == Some(&want), || format!("antipode identity at s{b}"));
            }
        }
    }
}

fn round_trips(ctx: &mut Ctx) {
    for n in 0..=ctx.cap(7) {
        for a in all_compositions(n) {
            for basis in [Basis::H, Basis::E] {
                let x = NSym::basis_element(basis, &a);
                let back = x.to_s().convert(basis);
                ctx.check(back.as_ref() == Ok(&x), || format!("{basis} → s → {basis} at {a}"));
            }
        }
    }
}

// ---- qsym -----------------------------------------------------------------

fn duality(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(5) {
        let families: [(&str, Member); 3] = [("s", NSym::s), ("h", NSym::h), ("Hq", h_q)];
        for (name, fam) in families {
            if let Some(d) = ctx.ok(dual_of(n, fam), || format!("dual of {name} at n={n}")) {
                let w = duality_witness(&d, fam);
                ctx.check(matches!(w, Ok(None)), || format!("dual of {name}: {w:?}"));
            }
        }
        let lift = |a: &Composition| h_qt(a).map_coefficients(|c| FactoredScalar::from(c.clone()));
        if let Some(d) = ctx.ok(dual_of(n, lift), || format!("dual of Hqt at n={n}")) {
            let w = duality_witness(&d, lift);
            ctx.check(matches!(w, Ok(None)), || format!("dual of Hqt: {w:?}"));
        }
    }
    for n in 1..=ctx.cap(6) {
        let g: Vec<_> = all_compositions(n).into_iter().map(|a| (a.clone(), g_q_hivert(&a))).collect();
        let w = duality_witness(&g, w_q);
        ctx.check(matches!(w, Ok(None)), || format!("G^q against W^q: {w:?}"));
    }
}

fn pairing_invariance(ctx: &mut Ctx) {
    for _ in 0..60 {
        let n = ctx.rng.gen_range(1..=ctx.cap(6).max(1));
        let mut x = QSymElement::zero(n, QBasis::M);
        for _ in 0..3 {
            let a = ctx.composition(n);
            let c = ctx.poly(2, 0, 2, 3);
            x = x + QSymElement::m(&a).scale(&c);
        }
        let y = ctx.element(n);
        let base = x.pair(&y).ok();
        let others = [
            x.convert(QBasis::F).pair(&y).ok(),
            y.convert(Basis::H).ok().and_then(|z| x.pair(&z).ok()),
            y.convert(Basis::E).ok().and_then(|z| x.convert(QBasis::F).pair(&z).ok()),
            y.convert(Basis::Hq).ok().and_then(|z| x.pair(&z).ok()),
        ];
        ctx.check(base.is_some() && others.iter().all(|o| *o == base), || format!("[{x}, {y}]"));
    }
}

// ---- hl-q -----------------------------------------------------------------

fn hq_specializations(ctx: &mut Ctx) {
    for n in 0..=ctx.cap(6) {
        for a in all_compositions(n) {
            ctx.check(hlq::h_q_at(&a, 0) == NSym::s(&a), || format!("H^q{a} at q=0"));
            ctx.check(hlq::h_q_at(&a, 1) == NSym::h(&a).to_s(), || format!("H^q{a} at q=1"));
        }
    }
}

fn hq_coefficients(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(7) {
        for a in all_compositions(n) {
            let x = h_q(&a);
            let monomials =
                x.terms().all(|(_, c)| c.as_monomial().is_some_and(|(m, k)| k.is_one() && m.t == 0 && m.q >= 0));
            ctx.check(monomials, || format!("H^q{a} = {x}"));
            let top = x.coefficient(&Composition::row(n));
            ctx.check(top == QTScalar::qt(a.n_stat() as i32, 0), || format!("s({n}) in H^q{a}"));
        }
    }
}

fn hq_scalar(ctx: &mut Ctx) {
    orthogonality(ctx, 6, h_q, |_| QTScalar::one());
}

fn orthogonality(ctx: &mut Ctx, bound: usize, fam: fn(&Composition) -> NSym, norm: fn(usize) -> QTScalar) {
    for n in 1..=ctx.cap(bound) {
        let comps = all_compositions(n);
        let xs: Vec<_> = comps.iter().map(fam).collect();
        let k = norm(n);
        for (i, a) in comps.iter().enumerate() {
            for (j, b) in comps.iter().enumerate() {
                let want = if *b == a.complement() { k.clone().signed(odd(n + a.len())) } else { QTScalar::zero() };
                let got = ctx.ok(xs[i].scalar_product(&xs[j]), || format!("pairing {a}, {b}"));
                ctx.check(got.as_ref() == Some(&want), || format!("⟨{a}, {b}⟩ = {got:?}, expected {want}"));
            }
        }
    }
}

fn q_twist(ctx: &mut Ctx) {
    let bound = ctx.cap(4);
    for m in 1..=ctx.cap(3) {
        for a in all_compositions(m) {
            let twisted = RowOperator::new(RowKind::A, a.clone()).to_operator(bound).q_twist();
            // A_α + q^{|β|} B_α on s_β
            let closed = NSymOperator::from_rule(m, bound, |b| {
                let x = NSym::s(b);
                let mut y = hlq::apply_a(&a, &x);
                if !b.is_empty() {
                    y = y + hlq::apply_b(&a, &x).expect("nonempty").scale(&QTScalar::qt(b.size() as i32, 0));
                }
                y
            });
            let diff = twisted.first_difference(&closed);
            ctx.check(diff.is_none(), || format!("q-twist of A{a} differs at s{}", diff.clone().unwrap_or_default()));
            for n in 0..=bound {
                ctx.checks += all_compositions(n).len() as u64;
            }
        }
    }
}

fn products(ctx: &mut Ctx) {
    for total in 2..=ctx.cap(5) {
        for k in 1..total {
            for a in all_compositions(k) {
                for b in all_compositions(total - k) {
                    let direct = h_q(&a).multiply(&NSym::s(&b));
                    let rule = ctx.ok(hlq::product_hq_s(&a, &b), || format!("H^q{a} s{b}"));
                    ctx.check(rule.map(|r| r.to_s()) == Some(direct), || format!("H^q{a} s{b}"));
                    let direct = h_q(&a).multiply(&h_q(&b));
                    let rule = ctx.ok(hlq::product_hq_hq(&a, &b), || format!("H^q{a} H^q{b}"));
                    ctx.check(rule.map(|r| r.to_s()) == Some(direct), || format!("H^q{a} H^q{b}"));
                }
            }
        }
    }
}

fn root_of_unity(ctx: &mut Ctx) {
    for r in [2u32, 3] {
        for n in 1..=ctx.cap(6) {
            for a in all_compositions(n) {
                for split in hlq::valid_splits(&a, r) {
                    let res = ctx.ok(hlq::check_root_of_unity_factorization(&a, r, &split), || format!("{a} at r={r}"));
                    if let Some(res) = res {
                        ctx.check(res.holds, || format!("H^ζ{a} at r={r}, split {split:?}: {:?}", res.witness));
                    }
                }
            }
        }
    }
}

fn hook_pairs(ctx: &Ctx) -> Vec<(usize, usize)> {
    let top = ctx.cap(7);
    (1..top).flat_map(|a| (1..=top - a).map(move |b| (a, b))).collect()
}

fn hq_hook_recurrence(ctx: &mut Ctx) {
    for (a, b) in hook_pairs(ctx) {
        let r = ctx.ok(hlq::hook_recurrence_residual(a, b), || format!("a={a}, b={b}"));
        ctx.check(r.is_some_and(|x| x.is_zero()), || format!("H^q hook recurrence at a={a}, b={b}"));
    }
}

fn is_hook(a: &Composition) -> bool {
    a.parts().iter().rev().skip(1).all(|&p| p == 1)
}

fn w_vs_h(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(6) {
        for a in all_compositions(n) {
            let same = w_q(&a) == h_q(&a);
            ctx.check(same == is_hook(&a), || format!("W^q{a} = H^q{a} is {same}"));
        }
    }
    if ctx.n_max >= 3 {
        let a = Composition::new(vec![2, 1]).expect("valid");
        let three = Composition::row(3);
        let (w, h) = (w_q(&a).coefficient(&three), h_q(&a).coefficient(&three));
        ctx.check(w == QTScalar::qt(1, 0) && h == QTScalar::qt(2, 0), || {
            format!("s(3) in W^q(2,1) is {w}, in H^q(2,1) is {h}")
        });
    }
}

// ---- mac-qt ---------------------------------------------------------------

fn hqt_scalar(ctx: &mut Ctx) {
    orthogonality(ctx, 5, h_qt, hqt_norm);
    if ctx.n_max >= 2 {
        let (a, b) = (Composition::row(2), Composition::column(2));
        let got = h_qt(&a).scalar_product(&h_qt(&b)).ok();
        ctx.check(got == Some(-QTScalar::one_minus(1, 1)), || format!("⟨H(2), H(1,1)⟩ = {got:?}"));
    }
}

fn hqt_coefficients(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(6) {
        for a in all_compositions(n) {
            let x = h_qt(&a);
            let monomials =
                x.terms().all(|(_, c)| c.as_monomial().is_some_and(|(m, k)| k.is_one() && m.q >= 0 && m.t >= 0));
            ctx.check(monomials, || format!("H^qt{a} = {x}"));
            let (row, col) = (Composition::row(n), Composition::column(n));
            ctx.check(x.coefficient(&row) == QTScalar::qt(0, a.n_stat() as i32), || format!("s({n}) in H^qt{a}"));
            ctx.check(x.coefficient(&col) == QTScalar::qt(a.conjugate().n_stat() as i32, 0), || {
                format!("s(1^{n}) in H^qt{a}")
            });
            let spec = macqt::specialize(&a, &Target::Int(0), &Target::Q);
            ctx.check(spec.as_ref() == Ok(&h_q(&a)), || format!("H^qt{a} at q=0, t→q"));
            ctx.check(macqt::check_relations(&a), || format!("ω-relations at {a}"));
        }
    }
}

fn hqt_hook_recurrence(ctx: &mut Ctx) {
    for (a, b) in hook_pairs(ctx) {
        let r = ctx.ok(macqt::hook_recurrence_residual(a, b), || format!("a={a}, b={b}"));
        ctx.check(r.is_some_and(|x| x.is_zero()), || format!("H^qt hook recurrence at a={a}, b={b}"));
    }
}

fn bold_p(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(4) {
        let closed = macqt::bold_p_coefficients(n);
        let conditions = macqt::check_bold_p(&closed);
        ctx.check(conditions.is_ok(), || format!("n={n}: {conditions:?}"));
        if let Some(rec) = ctx.ok(macqt::bold_p_by_recursion(n), || format!("recursion at n={n}")) {
            let diff = macqt::same_coefficients(&closed, &rec);
            ctx.check(diff.is_none(), || format!("recursion differs at {diff:?}"));
        }
    }
}

// ---- nabla ----------------------------------------------------------------

/// Hand-transcribed reference matrices.
pub const REFERENCE_TABLES: [(&str, usize, &str); 8] = [
    ("Hq", 2, include_str!("../tests/fixtures/hq_2.csv")),
    ("Hq", 3, include_str!("../tests/fixtures/hq_3.csv")),
    ("Hq", 4, include_str!("../tests/fixtures/hq_4.csv")),
    ("Htilde", 2, include_str!("../tests/fixtures/htilde_2.csv")),
    ("Htilde", 3, include_str!("../tests/fixtures/htilde_3.csv")),
    ("Htilde", 4, include_str!("../tests/fixtures/htilde_4.csv")),
    ("nabla", 2, include_str!("../tests/fixtures/nabla_2.csv")),
    ("nabla", 3, include_str!("../tests/fixtures/nabla_3.csv")),
];

/// Parses a matrix CSV with composition labels, as written by the CSV emitter.
pub fn parse_matrix_csv(text: &str) -> Result<LabeledMatrix<QTScalar>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let perr = |e: csv::Error| Error::Parse(e.to_string());
    let header = reader.headers().map_err(perr)?.clone();
    let cols: Vec<Composition> = header.iter().skip(1).map(str::parse).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(perr)?;
        rows.push(rec.get(0).unwrap_or_default().parse::<Composition>()?);
        entries.push(rec.iter().skip(1).map(str::parse).collect::<Result<Vec<QTScalar>>>()?);
    }
    Ok(LabeledMatrix { rows, cols, entries: Matrix::from_rows(entries)? })
}

fn reference_tables(ctx: &mut Ctx) {
    for (name, n, text) in REFERENCE_TABLES {
        if n > ctx.n_max {
            continue;
        }
        let family: Family = name.parse().expect("registered family");
        let Some(TransitionMatrix::Poly(m)) = ctx.ok(transition_matrix(family, n), || format!("{name} n={n}")) else {
            continue;
        };
        let Some(expected) = ctx.ok(parse_matrix_csv(text), || format!("fixture {name} n={n}")) else {
            continue;
        };
        ctx.check(expected.rows == m.rows && expected.cols == m.cols, || format!("{name} n={n}: labels"));
        for r in 0..m.rows.len() {
            for c in 0..m.cols.len() {
                let (got, want) = (m.entries.get(r, c), expected.entries.get(r, c));
                ctx.check(got == want, || format!("{name} n={n} at ({}, {}): {got} vs {want}", m.rows[r], m.cols[c]));
            }
        }
        let csv = render_matrix(&m, Format::Csv).unwrap_or_default();
        ctx.check(csv == text, || format!("{name} n={n}: CSV text differs from fixture"));
    }
}

fn nabla_kronecker(ctx: &mut Ctx) {
    for n in 2..=ctx.cap(8) {
        let chain = ctx.ok(nabla::kron_chain(ChainKind::NablaOnS, n), || format!("n={n}"));
        ctx.check(chain.is_some_and(|c| c.expand() == nabla::nabla_matrix(n)), || format!("Kronecker route at n={n}"));
    }
}

fn stohw_inverse(ctx: &mut Ctx) {
    for n in 2..=ctx.cap(6) {
        let (Ok(sto), Ok(hw)) = (nabla::kron_chain(ChainKind::StoHw, n), nabla::kron_chain(ChainKind::Hwtos, n)) else {
            ctx.check(false, || format!("chains at n={n}"));
            continue;
        };
        let prod = sto.expand().mul(&hw.expand());
        let d = nabla::stohw_denominator(n);
        let k = 1usize << (n - 1);
        let want = Matrix::from_fn(k, k, |r, c| if r == c { d.clone() } else { QTScalar::zero() });
        ctx.check(prod.as_ref() == Ok(&want), || format!("StoHw · Hwtos at n={n}"));
        let hw_direct = Matrix::from_fn(k, k, |r, c| {
            let comps = all_compositions(n);
            macqt::h_tilde(&comps[r]).coefficient(&comps[c])
        });
        ctx.check(hw.expand() == hw_direct, || format!("Hwtos chain against H̃ at n={n}"));
    }
}

fn nabla_coherence(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(5) {
        let comps = all_compositions(n);
        if n >= 2 {
            let eig = ctx.ok(nabla::nabla_matrix_by_eigen(n), || format!("eigen route at n={n}"));
            ctx.check(eig == Some(nabla::nabla_matrix(n)), || format!("eigen route at n={n}"));
            let chain = nabla::kron_chain(ChainKind::NablaOnS, n).map(|c| c.expand());
            ctx.check(chain.as_ref() == Ok(&nabla::nabla_matrix(n)), || format!("Kronecker route at n={n}"));
        }
        let images: Vec<_> = comps.iter().map(nabla::nabla_s).collect();
        let c2 = (n * (n - 1) / 2) as i32;
        for (i, a) in comps.iter().enumerate() {
            let h = macqt::h_tilde(a);
            ctx.check(nabla::nabla(&h) == h.scale(&nabla::eigenvalue(a)), || format!("eigenvector H̃{a}"));
            ctx.check(nabla::nabla(&nabla::nabla_inverse_s(a)) == NSym::s(a), || format!("∇∇⁻¹ s{a}"));
            ctx.check(nabla::nabla_inverse(&images[i]) == NSym::s(a), || format!("∇⁻¹∇ s{a}"));
            for (j, b) in comps.iter().enumerate() {
                let lhs = images[i].scalar_product(&images[j]).ok();
                let rhs = NSym::s(a).scalar_product(&NSym::s(b)).ok().map(|v| v * QTScalar::qt(c2, c2));
                ctx.check(lhs == rhs, || format!("⟨∇s{a}, ∇s{b}⟩"));
            }
        }
    }
}

// ---- commutative ----------------------------------------------------------

fn chi_multiplicative(ctx: &mut Ctx) {
    let top = ctx.cap(6);
    if top < 2 {
        return;
    }
    for _ in 0..60 {
        let n = ctx.rng.gen_range(1..top);
        let m = ctx.rng.gen_range(1..=top - n);
        let (x, y) = (ctx.element(n), ctx.element(m));
        let prod = chi(&x).multiply(&chi(&y));
        ctx.check(prod.as_ref() == Ok(&chi(&x.multiply(&y))), || format!("χ({x} · {y})"));
    }
}

fn chi_hook_recurrence(ctx: &mut Ctx) {
    for (a, b) in hook_pairs(ctx) {
        let ok = hook_recurrence_commutative(a, b);
        ctx.check(matches!(ok, Ok(true)), || format!("commutative hook recurrence at a={a}, b={b}"));
    }
}

fn counts(ctx: &mut Ctx) {
    let one = Target::Int(1);
    for n in 1..=ctx.cap(7) {
        let x = chi_nabla_en(n);
        let oracle = ctx.ok(fubini_oracle(n), || format!("oracle at n={n}"));
        let at_one = x.substitute(&one, &one).map(|y| pair_h1n(&y));
        ctx.check(oracle.is_some_and(|v| at_one.as_ref().ok() == Some(&QTScalar::from(v as i64))), || {
            format!("⟨χ(∇e_{n}), h_1^{n}⟩ at q=t=1 is {at_one:?}, oracle {oracle:?}")
        });
        let en = pair_en(&x);
        ctx.check(en == pair_en_formula(n), || format!("⟨χ(∇e_{n}), e_{n}⟩ = {en}"));
        let two = en.substitute(&one, &one).ok();
        ctx.check(two == Some(QTScalar::from(1i64 << (n - 1))), || format!("⟨χ(∇e_{n}), e_{n}⟩ at q=t=1"));
    }
}

fn e_positivity(ctx: &mut Ctx) {
    for n in 1..=ctx.cap(6) {
        let gap = ctx.ok(e_positivity_gap(n), || format!("gap at n={n}"));
        ctx.check(gap.as_ref().is_some_and(is_q_positive), || format!("gap at n={n}: {gap:?}"));
    }
}
