use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::comp;
use crate::composition::all_compositions;
use crate::hlq::{RowKind, RowOperator};
use crate::{NSym, QTScalar};

fn s(a: Composition) -> NSym {
    NSym::s(&a)
}

#[test]
fn conversions() {
    assert_eq!(s(comp![1, 1]).convert(Basis::H).unwrap().to_string(), "h(1,1) - h(2)");
    assert_eq!(NSym::h(&comp![1, 1]).convert(Basis::S).unwrap().to_string(), "s(1,1) + s(2)");
    assert_eq!(NSym::e(&comp![2]).convert(Basis::H).unwrap().to_string(), "h(1,1) - h(2)");
    for n in 0..=6 {
        for a in all_compositions(n) {
            for b in [Basis::H, Basis::E] {
                let x = NSym::basis_element(b, &a);
                assert_eq!(x.convert(Basis::S).unwrap().convert(b).unwrap(), x);
            }
            let hq = NSym::basis_element(Basis::Hq, &a);
            assert_eq!(hq.convert(Basis::S).unwrap().convert(Basis::Hq).unwrap(), hq);
        }
    }
    assert!(s(comp![2]).convert(Basis::Hqt).is_err());
}

#[test]
fn products() {
    assert_eq!(s(comp![1]).multiply(&s(comp![1])).to_string(), "s(1,1) + s(2)");
    assert_eq!(NSym::h(&comp![2]).multiply(&NSym::h(&comp![1])).to_string(), "h(2,1)");
    assert_eq!(s(comp![1, 1]).multiply(&s(comp![1])).to_string(), "s(1,1,1) + s(1,2)");
    assert_eq!(NSym::unit().multiply(&s(comp![2])), s(comp![2]));
}

#[test]
fn coproduct_examples() {
    let d = NSym::h(&comp![2]).coproduct();
    assert_eq!(d.coefficient(&comp![], &comp![2]), QTScalar::one());
    assert_eq!(d.coefficient(&comp![1], &comp![1]), QTScalar::one());
    assert_eq!(d.coefficient(&comp![2], &comp![]), QTScalar::one());
    let d = NSym::h(&comp![1, 1]).coproduct();
    assert_eq!(d.coefficient(&comp![1], &comp![1]), QTScalar::from(2));
    assert_eq!(d.coefficient(&comp![1, 1], &comp![]), QTScalar::one());
    let d = NSym::unit().coproduct();
    assert_eq!(d.terms().count(), 1);
}

#[test]
fn antipode_and_omegas() {
    assert_eq!(s(comp![2]).antipode(), s(comp![1, 1]));
    assert_eq!(s(comp![1]).antipode(), -s(comp![1]));
    assert_eq!(NSym::h(&comp![2, 1]).antipode(), -NSym::e(&comp![1, 2]));
    assert_eq!(s(comp![2]).omega_c(), s(comp![1, 1]));
    assert_eq!(NSym::h(&comp![2, 1]).omega_bar(), NSym::h(&comp![1, 2]));
    for a in all_compositions(5) {
        let x = NSym::h(&a);
        assert!(x.omega_bar().omega_prime().same_as(&x.omega_c()));
        assert!(x.antipode().antipode().same_as(&x));
    }
}

#[test]
fn scalar_products() {
    let sp = |a: Composition, b: Composition| s(a).scalar_product(&s(b)).unwrap();
    assert_eq!(sp(comp![2], comp![1, 1]), QTScalar::from(-1));
    assert_eq!(sp(comp![2], comp![2]), QTScalar::zero());
    assert_eq!(sp(comp![1, 1], comp![2]), QTScalar::one());
    assert_eq!(NSym::unit().scalar_product(&NSym::unit()).unwrap(), QTScalar::one());
    assert!(s(comp![2]).scalar_product(&s(comp![1])).is_err());
}

#[test]
fn expand_by_scalar_examples() {
    assert_eq!(NSym::h(&comp![1, 1]).expand_by_scalar().to_string(), "s(1,1) + s(2)");
    assert_eq!(s(comp![2, 1]).expand_by_scalar(), s(comp![2, 1]));
    assert!(NSym::zero(3, Basis::S).expand_by_scalar().is_zero());
}

#[test]
fn text_and_json() {
    let x = crate::hlq::h_q(&comp![1, 2]);
    assert_eq!(x.to_string(), "s(1,2) + q*s(3)");
    let j = serde_json::to_value(&x).unwrap();
    assert_eq!(j["degree"], 3);
    assert_eq!(j["basis"], "s");
    assert_eq!(j["terms"][1]["parts"], serde_json::json!([3]));
    assert_eq!(NSym::zero(2, Basis::S).to_string(), "0");
    let y = s(comp![2]).scale(&"t + q".parse().unwrap()) - s(comp![1, 1]);
    assert_eq!(y.to_string(), "-s(1,1) + (t + q)*s(2)");
}

#[test]
fn operator_calculus() {
    let a2 = RowOperator::new(RowKind::A, comp![2]).to_operator(4);
    assert_eq!(a2.bar().bar(), a2);
    let tw = a2.q_twist();
    assert_eq!(tw.apply(&s(comp![1])).unwrap().to_string(), "s(1,2) + q*s(3)");
    // id ∗ S = unit ∘ counit
    let ids = NSymOperator::<QTScalar>::identity(4).convolve(&NSymOperator::antipode(4));
    for n in 0..=4 {
        for b in all_compositions(n) {
            let img = ids.image(&b).unwrap();
            if n == 0 {
                assert_eq!(*img, NSym::unit());
            } else {
                assert!(img.is_zero(), "{b}");
            }
        }
    }
    assert!(a2.apply(&s(comp![1, 1, 1, 1, 1])).is_err());
    let m = a2.matrix(1).unwrap();
    assert_eq!((m.rows(), m.cols()), (1, 4));
}

#[test]
fn hopf_axioms() {
    for n in 0..=4 {
        for a in all_compositions(n) {
            let x = NSym::h(&a);
            assert!(NSymTensor::coassociative_at(&x));
            // (ε ⊗ id)Δ = id
            let d = x.coproduct();
            let left = d
                .terms()
                .filter(|((l, _), _)| l.is_empty())
                .fold(NSym::zero(n, Basis::H), |acc, ((_, r), c)| acc + NSym::h(r).scale(c));
            assert_eq!(left, x);
        }
    }
}

fn arb_element(n: usize) -> impl Strategy<Value = NSym> {
    let comps = all_compositions(n);
    prop::collection::vec((-3i64..=3, 0..comps.len(), 0i32..3, 0i32..3), 0..5).prop_map(move |v| {
        let mut x = NSym::zero(n, Basis::S);
        for (c, i, a, b) in v {
            x.push(comps[i].clone(), QTScalar::monomial(c.into(), a, b));
        }
        x
    })
}

proptest! {
    #[test]
    fn scalar_product_laws((f, g) in (1usize..=5).prop_flat_map(|n| (arb_element(n), arb_element(n)))) {
        let n = f.degree();
        let fg = f.scalar_product(&g).unwrap();
        let gf = g.scalar_product(&f).unwrap();
        prop_assert_eq!(fg.clone(), if n % 2 == 0 { -gf.clone() } else { gf.clone() });
        prop_assert_eq!(f.antipode().scalar_product(&g.antipode()).unwrap(), gf.clone());
        prop_assert_eq!(f.omega_bar().scalar_product(&g.omega_bar()).unwrap(), fg.clone());
        prop_assert_eq!(f.omega_prime().scalar_product(&g.omega_prime()).unwrap(), gf.clone());
        prop_assert_eq!(f.omega_c().scalar_product(&g.omega_c()).unwrap(), gf);
        prop_assert_eq!(f.expand_by_scalar(), f.to_s());
    }
}
