use num_rational::BigRational;
use proptest::prelude::*;
use qrr_core::laurentz::*;
use qrr_core::qcore::{pochhammer_infinite, sum_series};
use qrr_core::{Monomial, QError, QLaurent, Term};

fn m(s: &str) -> Monomial {
    s.parse().unwrap()
}

/// Admissible E4-type instances: every coefficient a power series.
fn grid() -> Vec<(i64, Monomial, Monomial)> {
    let mut out = Vec::new();
    for base in [1, 2, 4] {
        for t in ["q", "q^2", "q^3", "-q"] {
            for b in ["0", "-q", "q^2", "q^3"] {
                let (t, b) = (m(t), m(b));
                let eb = if b.is_zero() { i64::MAX } else { b.q_exp };
                if t.q_exp <= base.min(eb) {
                    out.push((base, t, b));
                }
            }
        }
    }
    out
}

fn assert_same_on_shared(a: &ZSeries, b: &ZSeries) {
    let (lo, hi) = a.shared_window(b).expect("shared window");
    assert_eq!(a.first_mismatch_on(b, lo, hi).unwrap(), None);
}

#[test]
fn theorem1_theta_coefficients() {
    let n = 30;
    let s = bilateral_theta(1, &m("q"), &m("-q"), 2, n).unwrap();
    assert!(s.closed_above());
    for k in 0..=5 {
        let mut t = Term::from_monomial(&Monomial::from_int(if k % 2 == 0 { 1 } else { -1 }, k * k));
        t.divide_poch(&m("-q"), 2, k).unwrap();
        assert_eq!(s.coeff(k).unwrap(), t.build(n), "z^{k}");
    }
}

#[test]
fn theorem1_instance_matches_product_side() {
    let n = 40;
    let th = bilateral_theta(1, &m("q"), &m("-q"), 2, n).unwrap();
    let pr = triple_product_form(1, &m("q"), &m("-q"), 2, n).unwrap();
    assert_eq!(th.window(), pr.window());
    assert_same_on_shared(&th, &pr);
}

#[test]
fn e4_grid_holds() {
    let n = 24;
    let g = grid();
    assert!(g.len() >= 12);
    for (base, t, b) in g {
        for zexp in [1, -1] {
            let th = bilateral_theta(zexp, &t, &b, base, n).unwrap();
            let pr = triple_product_form(zexp, &t, &b, base, n).unwrap();
            let (lo, hi) = th.window();
            assert_eq!(th.first_mismatch_on(&pr, lo, hi).unwrap(), None, "base {base} t {t} b {b} z^{zexp}");
        }
    }
}

#[test]
fn jacobi_triple_product_brute_force() {
    // b = 0, base 1, t = zq: (zq)_inf (1/z)_inf (q)_inf; the z^0 coefficient
    // of sum (-1)^n q^(n(n+1)/2) z^n is 1
    let n = 20;
    let s = triple_product_form(1, &m("q"), &m("0"), 1, n).unwrap();
    assert_eq!(s.coeff(0).unwrap(), QLaurent::one(n));
    for k in -4..=4i64 {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let expect = QLaurent::monomial(&Monomial::from_int(sign, k * (k + 1) / 2), n);
        assert_eq!(s.coeff(k).unwrap(), expect, "z^{k}");
    }
}

#[test]
fn window_stability() {
    let n = 30;
    for (base, t, b) in grid() {
        let a = bilateral_theta(1, &t, &b, base, n).unwrap();
        let (lo, hi) = a.window();
        let reach = Reach { neg: Some(-lo + 2), pos: Some(hi + 2), slack: 0 };
        let w = bilateral_theta_windowed(1, &t, &b, base, n, reach).unwrap();
        for k in lo - 2..=hi + 2 {
            if a.is_anchored() || (lo..=hi).contains(&k) {
                assert_eq!(a.coeff(k).unwrap(), w.coeff(k).unwrap());
            }
        }
    }
}

#[test]
fn product_expansion_examples() {
    let n = 24;
    // 1/(z^-1 q^2; q^2)_inf: z^-m coefficient q^(2m)/(q^2;q^2)_m
    let s = product_expansion(&m("q^2"), -1, 2, false, n, (-3, 0)).unwrap();
    for k in 0..=3 {
        let mut t = Term::from_monomial(&Monomial::q_pow(2 * k));
        t.divide_poch(&m("q^2"), 2, k).unwrap();
        assert_eq!(s.coeff(-k).unwrap(), t.build(n));
    }
    // (-z^-1 q^2; q^4)_inf: z^-m coefficient q^(4 binom(m,2) + 2m)/(q^4;q^4)_m
    let s = product_expansion(&m("q^2"), -1, 4, true, n, (-3, 0)).unwrap();
    for k in 0..=3 {
        let mut t = Term::from_monomial(&Monomial::q_pow(2 * k * (k - 1) + 2 * k));
        t.divide_poch(&m("q^4"), 4, k).unwrap();
        assert_eq!(s.coeff(-k).unwrap(), t.build(n));
    }
    let c = product_expansion(&m("q^2"), -1, 4, true, n, (0, 0)).unwrap();
    assert_eq!(c.window(), (0, 0));
    assert_eq!(c.ct().unwrap(), QLaurent::one(n));
    // 1/(z^-1; q^4)_inf has valuation 0 at every z^-m
    let open = product_expansion(&m("1"), -1, 4, false, n, (-3, 0)).unwrap();
    assert!(!open.closed_below());
    // (-z^-1; q^4)_inf closes, so a wide enough window is closed
    let closed = product_expansion(&m("1"), -1, 4, true, n, (-8, 0)).unwrap();
    assert!(closed.is_anchored());
}

fn theorem_ct(n: i64, cof: Monomial) -> QLaurent {
    let th = bilateral_theta(1, &m("q"), &m("-q"), 2, n).unwrap();
    let (_, hi) = th.window();
    let p = product_expansion(&cof, -1, 4, true, n, (-hi - 1, 0)).unwrap();
    zmul(&th, &p, Some((0, 0))).unwrap().ct().unwrap()
}

fn direct(n: i64, quad: i64, lin: i64) -> QLaurent {
    sum_series(n, 0, |k| {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut t = Term::from_monomial(&Monomial::from_int(sign, quad * k * k + lin * k));
        t.divide_poch(&m("q^4"), 4, k)?;
        t.divide_poch(&m("-q"), 2, k)?;
        Ok(t)
    })
    .unwrap()
}

#[test]
fn theorem1_and_2_constant_terms() {
    let n = 40;
    assert_eq!(theorem_ct(n, m("q^2")), direct(n, 3, 0));
    assert_eq!(theorem_ct(n, m("1")), direct(n, 3, -2));
}

#[test]
fn unanchored_pair_is_refused() {
    let n = 10;
    let a = product_expansion(&m("1"), -1, 4, false, n, (-3, 0)).unwrap();
    let b = product_expansion(&m("q"), -1, 2, false, n, (-20, 0)).unwrap();
    assert!(b.is_anchored());
    let b = b.with_window(-3, 0).unwrap();
    assert!(matches!(zmul(&a, &b, None), Err(QError::WindowUnderspecified(_))));
}

#[test]
fn splitting_identity_on_window() {
    // (-z^-1; q^2)_inf = (-z^-1; q^4)_inf (-z^-1 q^2; q^4)_inf on [-M, 0]
    let n = 30;
    let mm = 6;
    let lhs = product_expansion(&m("1"), -1, 2, true, n, (-mm, 0)).unwrap();
    let a = product_expansion(&m("1"), -1, 4, true, n, (-mm, 0)).unwrap();
    let b = product_expansion(&m("q^2"), -1, 4, true, n, (-mm, 0)).unwrap();
    let rhs = zmul(&a, &b, Some((-mm, 0))).unwrap();
    assert_eq!(lhs.first_mismatch_on(&rhs, -mm, 0).unwrap(), None);
}

fn thm1_recipe(n: i64) -> (CtRecipe, ZProduct) {
    let theta = HyperZSum::theta(1, &m("q"), &m("-q"), 2);
    let cof = HyperZSum::poch_factor(&m("-q^2"), -1, 4, true);
    let mut pre = Term::one();
    pre.divide_poch_inf(&m("-q"), 2).unwrap();
    let recipe = CtRecipe { anchored: theta.clone(), cofactors: vec![cof.clone()], prefactor: pre.build(n) };
    (recipe, ZProduct::new(pre, vec![theta, cof]))
}

#[test]
fn ct_recipe_matches_zmul_path() {
    let n = 36;
    let (r, p) = thm1_recipe(n);
    assert_eq!(ct_recipe(&r, n).unwrap(), p.ct(n, 0).unwrap());
    // two cofactors, one of them closing on its own
    let mut r2 = r.clone();
    let extra = HyperZSum::poch_factor(&m("q"), -1, 2, false);
    r2.cofactors.push(extra.clone());
    let mut p2 = p.clone();
    p2.factors.push(extra);
    assert_eq!(ct_recipe(&r2, n).unwrap(), p2.ct(n, 0).unwrap());
    assert_eq!(p2.ct(n, 2).unwrap(), p2.ct(n, 0).unwrap());
}

#[test]
fn ct_recipe_with_unit_cofactor() {
    let n = 20;
    let theta = HyperZSum::theta(1, &m("q"), &m("0"), 1);
    let unit = HyperZSum::poch_factor(&m("0"), -1, 1, true);
    let pre = pochhammer_infinite(&m("q^2"), 1, n).unwrap();
    let r = CtRecipe { anchored: theta.clone(), cofactors: vec![unit], prefactor: pre.clone() };
    let direct = bilateral_theta(1, &m("q"), &m("0"), 1, n).unwrap().ct().unwrap();
    assert_eq!(ct_recipe(&r, n).unwrap(), direct.checked_mul(&pre).unwrap());
}

#[test]
fn classical_theta_against_all_ones() {
    let n = 25;
    let theta = HyperZSum::theta(1, &m("1"), &m("0"), 1);
    let ones = HyperZSum {
        z_step: -1,
        ratio: BigRational::from_integer(1.into()),
        quad: 0,
        lin: 0,
        num: vec![],
        den: vec![],
        bilateral: false,
    };
    let r = CtRecipe { anchored: theta, cofactors: vec![ones], prefactor: QLaurent::one(n) };
    let expect = sum_series(n, 0, |k| {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        Ok(Term::from_monomial(&Monomial::from_int(sign, k * (k - 1) / 2)))
    })
    .unwrap();
    assert_eq!(ct_recipe(&r, n).unwrap(), expect);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ct_is_linear(
        a in prop::collection::vec(prop::collection::vec(-3i64..4, 0..5), 1..6),
        b in prop::collection::vec(prop::collection::vec(-3i64..4, 0..5), 1..6),
        lo_a in -3i64..1, lo_b in -3i64..1, s in prop::collection::vec(-2i64..3, 0..4),
    ) {
        let n = 6;
        let mk = |lo: i64, v: &Vec<Vec<i64>>| {
            ZSeries::from_parts(lo, v.iter().map(|c| QLaurent::from_ints(c, n)).collect(), n, true, true).unwrap()
        };
        let (x, y) = (mk(lo_a, &a), mk(lo_b, &b));
        let sum = x.checked_add(&y).unwrap();
        prop_assert_eq!(sum.ct().unwrap(), x.ct().unwrap().checked_add(&y.ct().unwrap()).unwrap());
        let s = QLaurent::from_ints(&s, n);
        prop_assert_eq!(x.scale(&s).unwrap().ct().unwrap(), x.ct().unwrap().checked_mul(&s).unwrap());
        let xy = zmul(&x, &y, None).unwrap();
        prop_assert_eq!(xy, zmul(&y, &x, None).unwrap());
    }

    #[test]
    fn product_side_is_window_stable(idx in 0usize..32, zexp in prop::sample::select(vec![1i64, -1])) {
        let g = grid();
        let (base, t, b) = &g[idx % g.len()];
        let n = 16;
        let w = bilateral_theta(zexp, t, b, *base, n).unwrap().window();
        let a = triple_product_on(zexp, t, b, *base, n, w, 0).unwrap();
        let c = triple_product_on(zexp, t, b, *base, n, w, 2).unwrap();
        prop_assert_eq!(a.first_mismatch_on(&c, w.0, w.1).unwrap(), None);
    }
}
