//! Worked instances, one assertion each, checked by recomposition or by
//! direct arithmetic where a witness is returned.

use fpoly::admissible::{
    d3_decompose, d3_decompose_components, kernel_equals_sigma_check, level_via_derivations, levelder_decompose,
    monomials_up_to, recompose_levelder, sigma_commute_check, LevelDerOutcome,
};
use fpoly::bounded::{
    c_membership, cusp_counterexample_check, d3_flat_decompose, recompose_flat, subring_member, BoundedSubring,
    CMembership, FlatD3Outcome, FlatElement,
};
use fpoly::fields::{in_kp_span, kp_independent, ppow_decompose, recompose_span};
use fpoly::frobfactor::{f4_decompose, frobenius, level, pfac2_descend, phi, recompose_f4, sigma, sigma_preimage};
use fpoly::hahn::{aleph1_failure_check, hahn_invert_truncated, shift_into_a_check};
use fpoly::hasse::binom_mod_p;
use fpoly::parse::{parse_field, parse_gamma, parse_hahn, parse_poly};
use fpoly::{FieldCtx, GammaExp, HasseDerivative, Level, Prime, RatFunc, XPoly};

fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn k(p: u64, m: usize) -> FieldCtx {
    FieldCtx::new(pr(p), m)
}

fn a(ctx: &FieldCtx, s: &str) -> RatFunc {
    parse_field(ctx, s).unwrap()
}

fn x(ctx: &FieldCtx, s: &str) -> XPoly {
    parse_poly(ctx, 4, s).unwrap()
}

fn g(s: &str) -> GammaExp {
    parse_gamma(s).unwrap()
}

#[test]
fn ppow_examples() {
    let c = k(2, 1);
    assert_eq!(ppow_decompose(&a(&c, "t")).get(&[1]), c.one());
    assert_eq!(ppow_decompose(&a(&c, "t")).get(&[0]), c.zero());
    assert_eq!(ppow_decompose(&a(&c, "t^2")).get(&[0]), a(&c, "t"));
    let d = ppow_decompose(&a(&c, "1/(t^3 + t)"));
    assert_eq!(d.get(&[0]), c.zero());
    let entry = d.get(&[1]);
    assert_eq!(entry, a(&c, "(t + 1)/(t^3 + t)"));
    assert_eq!(&entry.pow(2) * &a(&c, "t"), a(&c, "1/(t^3 + t)"));
}

#[test]
fn span_examples() {
    let c = k(2, 1);
    let t = a(&c, "t");
    assert_eq!(in_kp_span(&t, std::slice::from_ref(&t)), Some(vec![c.one()]));
    assert_eq!(in_kp_span(&a(&c, "t^2 + t"), std::slice::from_ref(&t)), None);
    let lambda = in_kp_span(&a(&c, "t^3"), std::slice::from_ref(&t)).unwrap();
    assert_eq!(lambda, vec![t.clone()]);
    assert_eq!(recompose_span(c, std::slice::from_ref(&t), &lambda), a(&c, "t^3"));

    let ind = kp_independent(&[c.one(), t.clone()]);
    assert!(ind.independent);
    assert_eq!(ind.basis, vec![0, 1]);
    let dep = kp_independent(&[t.clone(), a(&c, "t^3")]);
    assert!(!dep.independent);
    assert_eq!(dep.basis, vec![0]);
    assert_eq!(a(&c, "t^3"), &t * &t.pow(2));
    assert!(kp_independent(&[]).independent);
}

#[test]
fn poly_examples() {
    let c = k(2, 1);
    assert_eq!(&x(&c, "x1") * &x(&c, "x1"), x(&c, "x1^2"));
    assert_eq!(x(&c, "x1 + x2").pow(2), x(&c, "x1^2 + x2^2"));
    assert_eq!(&x(&c, "t*x1") * &x(&c, "x1 + x2"), x(&c, "t*x1^2 + t*x1*x2"));

    let comps = x(&c, "x1 + x1^2").homogeneous_components();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[&1], x(&c, "x1"));
    assert_eq!(comps[&2], x(&c, "x1^2"));
    assert!(XPoly::zero(&c).homogeneous_components().is_empty());
    let comps = x(&c, "t + x1").homogeneous_components();
    assert_eq!(comps[&0], x(&c, "t"));
    assert_eq!(comps[&1], x(&c, "x1"));

    assert!(x(&c, "x1").in_positive_ideal());
    assert!(!x(&c, "1 + x1").in_positive_ideal());
    assert!(XPoly::zero(&c).in_positive_ideal());
}

#[test]
fn frobenius_factor_examples() {
    let c = k(2, 1);
    assert_eq!(phi(&x(&c, "t*x1")), x(&c, "t^2*x1"));
    assert_eq!(phi(&x(&c, "x1")), x(&c, "x1"));
    assert_eq!(phi(&x(&c, "(t + 1)*x1*x2")), x(&c, "(t^2 + 1)*x1*x2"));
    assert_eq!(sigma(&x(&c, "t*x1")), x(&c, "t*x1^2"));
    assert_eq!(sigma(&x(&c, "t")), x(&c, "t"));
    assert_eq!(sigma(&x(&c, "x1 + x2")), x(&c, "x1^2 + x2^2"));
    assert_eq!(frobenius(&x(&c, "t*x1")), x(&c, "t^2*x1^2"));
    assert_eq!(frobenius(&x(&c, "1")), x(&c, "1"));
    assert_eq!(frobenius(&x(&c, "x1 + t")), x(&c, "x1^2 + t^2"));

    assert_eq!(sigma_preimage(&x(&c, "t*x1^2")), Some(x(&c, "t*x1")));
    assert_eq!(sigma_preimage(&x(&c, "x1")), None);
    let y = sigma_preimage(&x(&c, "t*x1^2 + x2^4")).unwrap();
    assert_eq!(y, x(&c, "t*x1 + x2^2"));
    assert_eq!(sigma(&y), x(&c, "t*x1^2 + x2^4"));

    assert_eq!(level(&x(&c, "x1")), Level::Finite(0));
    assert_eq!(level(&x(&c, "t*x1^2")), Level::Finite(1));
    assert_eq!(level(&x(&c, "x1^4")), Level::Finite(2));
}

#[test]
fn f4_and_descent_examples() {
    let c = k(2, 1);
    let t = a(&c, "t");
    let h = f4_decompose(&x(&c, "t*x1^2"), std::slice::from_ref(&t)).unwrap();
    assert_eq!(h, vec![x(&c, "x1")]);
    assert_eq!(recompose_f4(&c, std::slice::from_ref(&t), &h), x(&c, "t*x1^2"));
    assert_eq!(f4_decompose(&x(&c, "x1^2"), &[c.one()]).unwrap(), vec![x(&c, "x1")]);
    assert!(f4_decompose(&x(&c, "t*x1"), std::slice::from_ref(&t)).is_err());

    // σ(x) = t·x1^4 = t·(x1^2)^2, so y = [x1^2] and x = t·φ(x1^2).
    let y = pfac2_descend(&x(&c, "t*x1^2"), std::slice::from_ref(&t)).unwrap();
    assert_eq!(y, vec![x(&c, "x1^2")]);
    assert_eq!(phi(&y[0]).scale(&t), x(&c, "t*x1^2"));
    assert_eq!(pfac2_descend(&x(&c, "1"), &[c.one()]).unwrap(), vec![x(&c, "1")]);
    assert!(pfac2_descend(&x(&c, "x1"), &[]).is_err());
}

#[test]
fn hasse_examples() {
    let c = k(2, 1);
    let d1 = HasseDerivative::new(1);
    assert_eq!(d1.apply(2, &x(&c, "x1^3")), x(&c, "x1"));
    assert!(d1.apply(1, &x(&c, "x1^2")).is_zero());
    assert_eq!(d1.apply(1, &x(&c, "x1*x2")), x(&c, "x2"));

    assert_eq!(binom_mod_p(4, 2, pr(2)), 0);
    for kk in [0, 1, 7, 100] {
        assert_eq!(binom_mod_p(kk, 0, pr(3)), 1);
    }
    for p in [2, 3, 5, 7] {
        assert_eq!(binom_mod_p(p, 1, pr(p)), 0);
    }

    assert_eq!(d1.bracket(0, &x(&c, "x1")).unwrap(), x(&c, "1"));
    assert_eq!(d1.bracket(1, &x(&c, "x1^2")).unwrap(), x(&c, "1"));
    assert!(d1.bracket(1, &x(&c, "t*x2^3")).unwrap().is_zero());

    assert!(sigma_commute_check(d1, 1, 1, &x(&c, "x1")).unwrap());
    assert!(d1.bracket(1, &x(&c, "x1^4")).unwrap().is_zero());
    assert!(sigma_commute_check(d1, 2, 1, &x(&c, "x1")).unwrap());
    assert!(sigma_commute_check(d1, 0, 0, &x(&c, "t*x1 + x2^3")).unwrap());

    assert_eq!(level_via_derivations(&x(&c, "x1")), Level::Finite(0));
    assert_eq!(level_via_derivations(&x(&c, "t*x1^2")), Level::Finite(1));
    assert_eq!(d1.bracket(1, &x(&c, "t*x1^2")).unwrap(), x(&c, "t"));
    assert_eq!(level_via_derivations(&x(&c, "x1^4")), Level::Finite(2));
}

#[test]
fn d3_examples() {
    let c = k(2, 1);
    let t = a(&c, "t");
    // Not homogeneous, so it is split degree by degree.
    let f = x(&c, "t*x1 + x2^2");
    assert!(d3_decompose(&f, std::slice::from_ref(&t)).is_err());
    let w = d3_decompose_components(&f, std::slice::from_ref(&t)).unwrap();
    assert_eq!(w.h, x(&c, "x2"));
    assert_eq!(w.g, vec![x(&c, "x1")]);
    assert_eq!(w.recompose(&c, std::slice::from_ref(&t)), f);

    assert_eq!(d3_decompose(&x(&c, "t*x1"), &[]).unwrap(), None);
    let w = d3_decompose(&x(&c, "x1^2"), &[]).unwrap().unwrap();
    assert_eq!(w.h, x(&c, "x1"));
    assert!(w.g.is_empty());
}

#[test]
fn kernel_examples() {
    let c = k(2, 0);
    let pool = [c.zero(), c.one()];
    let r = kernel_equals_sigma_check(&c, &monomials_up_to(1, 2), &pool, 1000).unwrap();
    assert!(r.holds());
    assert_eq!(r.checked, 8);
    let r = kernel_equals_sigma_check(&c, &[], &pool, 1000).unwrap();
    assert!(r.holds());
    let c = k(3, 0);
    let pool = [c.zero(), c.one(), c.int(2)];
    let r = kernel_equals_sigma_check(&c, &monomials_up_to(1, 3), &pool, 1000).unwrap();
    assert!(r.holds());
    assert_eq!(r.checked, 81);
}

#[test]
fn levelder_examples() {
    let c = k(2, 1);
    let t = a(&c, "t");
    match levelder_decompose(&x(&c, "x1^4"), &[], 1).unwrap() {
        LevelDerOutcome::Witness { c: cc, b } => {
            assert_eq!(cc, x(&c, "x1"));
            assert_eq!(sigma(&sigma(&cc)), x(&c, "x1^4"));
            assert!(b.is_empty());
        }
        other => panic!("{other:?}"),
    }
    let f = x(&c, "t*x1^4");
    match levelder_decompose(&f, std::slice::from_ref(&t), 1).unwrap() {
        LevelDerOutcome::Witness { c: cc, b } => {
            assert_eq!(recompose_levelder(&c, std::slice::from_ref(&t), 1, &cc, &b), f);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        levelder_decompose(&x(&c, "x1^2"), &[], 1).unwrap(),
        LevelDerOutcome::HypothesisFailed { var: 1 }
    );
}

#[test]
fn bounded_examples() {
    let c = k(2, 2);
    assert!(subring_member(&BoundedSubring::cusp(2), &a(&c, "t1^2*t2^3")));
    assert!(!subring_member(&BoundedSubring::cusp(2), &a(&c, "t1")));
    assert!(!subring_member(&BoundedSubring::poly(2), &a(&c, "1/t1")));

    let c1 = k(2, 1);
    let poly = BoundedSubring::poly(1);
    let eps = [a(&c1, "1/t1")];
    match c_membership(&poly, &eps, &a(&c1, "t1"), &a(&c1, "t1"), 100).unwrap() {
        CMembership::Verified(l) => {
            assert_eq!(l, vec![a(&c1, "t1^2")]);
            assert_eq!(recompose_span(c1, &eps, &l), a(&c1, "t1^3"));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(
        c_membership(&poly, &[c1.one()], &a(&c1, "t1^2"), &c1.one(), 100).unwrap(),
        CMembership::Verified(vec![a(&c1, "t1")])
    );
    assert_eq!(
        c_membership(&poly, &[c1.one()], &a(&c1, "t1"), &c1.one(), 100).unwrap(),
        CMembership::Refuted
    );

    assert!(cusp_counterexample_check(1, &a(&c1, "t1^2")).unwrap());
    assert!(cusp_counterexample_check(1, &a(&c1, "t1^3 + t1^2")).unwrap());
    assert!(cusp_counterexample_check(2, &a(&c, "t1^2*t2^3")).unwrap());
    assert!(cusp_counterexample_check(1, &a(&c, "t2^2")).is_err());
}

#[test]
fn flat_d3_examples() {
    let c = k(2, 1);
    let ring = BoundedSubring::poly(1);
    let one = fpoly::TPoly::one(pr(2), 1);
    let f = FlatElement::new(&ring, x(&c, "t1^2*x1 + x2^2"), one.clone()).unwrap();
    match d3_flat_decompose(&ring, &f, &[c.one()], &one, 100).unwrap() {
        FlatD3Outcome::Witness { h, g } => {
            assert_eq!(h.poly, x(&c, "x2"));
            assert_eq!(g[0].poly, x(&c, "t1*x1"));
            assert_eq!(recompose_flat(&c, &[c.one()], &h, &g), f.poly);
        }
        other => panic!("{other:?}"),
    }
    let f = FlatElement::new(&ring, x(&c, "x1^2"), one.clone()).unwrap();
    match d3_flat_decompose(&ring, &f, &[], &one, 100).unwrap() {
        FlatD3Outcome::Witness { h, g } => {
            assert_eq!(h.poly, x(&c, "x1"));
            assert!(g.is_empty());
        }
        other => panic!("{other:?}"),
    }

    let c2 = k(2, 2);
    let cusp = BoundedSubring::cusp(2);
    let one2 = fpoly::TPoly::one(pr(2), 2);
    let f = FlatElement::new(&cusp, x(&c2, "t1^2*x1"), one2.clone()).unwrap();
    assert!(matches!(
        d3_flat_decompose(&cusp, &f, &[c2.one()], &one2, 100).unwrap(),
        FlatD3Outcome::Refuted(_)
    ));
}

#[test]
fn gamma_examples() {
    assert!(g("g2") > g("3g1"));
    assert_eq!(g("2g1-1g3").cmp(&g("2g1-1g3")), std::cmp::Ordering::Equal);
    assert!(g("-1g1") < GammaExp::zero());
    assert!(g("g1").in_gamma_plus() && !g("g1").in_delta());
    assert!(g("2g1").in_gamma_plus() && g("2g1").in_delta());
    let e = g("g2-5g1");
    assert!(e.in_gamma_plus() && !e.in_delta());
}

#[test]
fn hahn_examples() {
    let p = pr(2);
    let h = |s: &str| parse_hahn(p, s).unwrap();
    assert_eq!(h("t[2g1] + t[3g1]").valuation().unwrap(), g("2g1"));
    assert_eq!(&h("t[1g1-2g2]") * &h("t[3g3]"), h("t[1g1-2g2+3g3]"));
    assert_eq!(&h("t[2g1]") * &h("t[2g1] + t[3g1]"), h("t[4g1] + t[5g1]"));
    assert!(h("t[2g1]").a_member());
    assert!(!h("t[g1]").a_member());
    assert!(h("0").a_member());

    let inv = hahn_invert_truncated(&h("t[2g1] + t[3g1]"), 4).unwrap();
    assert_eq!(inv.value, h("t[-2g1] + t[-1g1] + 1 + t[g1]"));
    assert_eq!(inv.residual, h("t[4g1]"));
    assert_eq!(inv.error_valuation, Some(g("2g1")));
    let inv = hahn_invert_truncated(&h("t[3g2-1g1]"), 3).unwrap();
    assert_eq!(inv.value, h("t[1g1-3g2]"));
    assert!(inv.residual.is_zero());
    let inv = hahn_invert_truncated(&h("1 + t[2g1]"), 2).unwrap();
    assert_eq!(inv.value, h("1 + t[2g1]"));
    assert_eq!(inv.residual, h("t[4g1]"));

    assert!(shift_into_a_check(&h("t[2g1] + t[5g1]"), &g("2g2"), 4).unwrap());
    assert!(shift_into_a_check(&h("t[2g1]"), &g("2g2"), 4).unwrap());
    assert!(shift_into_a_check(&h("t[2g2] + t[3g2]"), &g("2g1"), 4).is_err());

    assert!(aleph1_failure_check(&h("t[2g1]"), 2).unwrap());
    assert!(aleph1_failure_check(&h("t[3g1] + t[2g1]"), 3).unwrap());
    assert!(aleph1_failure_check(&h("t[2g2]"), 1).is_err());
}
