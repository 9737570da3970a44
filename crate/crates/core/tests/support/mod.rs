//! Generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use std::ops::RangeInclusive;
use std::path::Path;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qrr_core::catalog::{self, Sample};
use qrr_core::qcore::{pochhammer_finite, pochhammer_infinite};
use qrr_core::qdsl::{eval, format, parse, parse_file, Exponent, Expr, Poly};
use qrr_core::{Monomial, QLaurent};

const VARS: [&str; 3] = ["n", "m", "k"];

pub fn arb_poly() -> impl Strategy<Value = Poly> {
    let leaf = prop_oneof![(0i64..12).prop_map(Poly::Int), (0usize..3).prop_map(|i| Poly::Var(VARS[i].into()))];
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Poly::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Poly::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Poly::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Poly::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1i64..5).prop_map(|(a, k)| Poly::Div(Box::new(a), k)),
            (inner, 0u32..3).prop_map(|(a, k)| Poly::Pow(Box::new(a), k)),
        ]
    })
}

pub fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(Expr::Int),
        Just(Expr::Q),
        (0usize..3).prop_map(|i| Expr::Var(VARS[i].into())),
    ];
    leaf.prop_recursive(5, 40, 3, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| Expr::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Div(b(x), b(y))),
            (inner.clone(), 0i64..6).prop_map(move |(x, k)| Expr::Pow(b(x), Exponent::Int(k))),
            (inner.clone(), arb_poly()).prop_map(move |(x, p)| Expr::Pow(b(x), Exponent::Poly(p))),
            (inner.clone(), inner.clone(), proptest::option::of(inner.clone()))
                .prop_map(move |(a, base, count)| Expr::Poch { a: b(a), base: b(base), count: count.map(b) }),
            (0usize..3, inner.clone(), proptest::option::of(inner.clone()), inner.clone()).prop_map(
                move |(v, lower, upper, body)| Expr::Sum {
                    var: VARS[v].into(),
                    lower: b(lower),
                    upper: upper.map(b),
                    body: b(body)
                }
            ),
            (0usize..3, inner.clone()).prop_map(move |(v, body)| Expr::BiSum { var: VARS[v].into(), body: b(body) }),
            (0usize..3, inner.clone(), inner).prop_map(move |(v, lower, body)| Expr::Prod {
                var: VARS[v].into(),
                lower: b(lower),
                body: b(body)
            }),
        ]
    })
    .prop_map(|e| close(e, &mut Vec::new()))
}

fn close_poly(p: Poly, scope: &[String]) -> Poly {
    let bx = |p| Box::new(close_poly(p, scope));
    match p {
        Poly::Var(v) if !scope.contains(&v) => Poly::Int(1),
        Poly::Neg(a) => Poly::Neg(bx(*a)),
        Poly::Add(a, c) => Poly::Add(bx(*a), bx(*c)),
        Poly::Sub(a, c) => Poly::Sub(bx(*a), bx(*c)),
        Poly::Mul(a, c) => Poly::Mul(bx(*a), bx(*c)),
        Poly::Div(a, k) => Poly::Div(bx(*a), k),
        Poly::Pow(a, k) => Poly::Pow(bx(*a), k),
        p => p,
    }
}

/// Replace free variables by 1 and over-degree exponents by a constant, so
/// that the tree is something the parser can produce.
fn close(e: Expr, scope: &mut Vec<String>) -> Expr {
    let bx = |e: Expr, scope: &mut Vec<String>| Box::new(close(e, scope));
    match e {
        Expr::Var(v) if !scope.contains(&v) => Expr::Int(1),
        Expr::Neg(a) => Expr::Neg(bx(*a, scope)),
        Expr::Add(a, c) => Expr::Add(bx(*a, scope), bx(*c, scope)),
        Expr::Sub(a, c) => Expr::Sub(bx(*a, scope), bx(*c, scope)),
        Expr::Mul(a, c) => Expr::Mul(bx(*a, scope), bx(*c, scope)),
        Expr::Div(a, c) => Expr::Div(bx(*a, scope), bx(*c, scope)),
        Expr::Pow(a, Exponent::Poly(p)) => {
            let p = close_poly(p, scope);
            let x = if p.degree() > 2 { Exponent::Int(2) } else { Exponent::Poly(p) };
            Expr::Pow(bx(*a, scope), x)
        }
        Expr::Pow(a, x) => Expr::Pow(bx(*a, scope), x),
        Expr::Poch { a, base, count } => {
            Expr::Poch { a: bx(*a, scope), base: bx(*base, scope), count: count.map(|c| bx(*c, scope)) }
        }
        Expr::Sum { var, lower, upper, body } => {
            let lower = bx(*lower, scope);
            let upper = upper.map(|u| bx(*u, scope));
            scope.push(var.clone());
            let body = bx(*body, scope);
            scope.pop();
            Expr::Sum { var, lower, upper, body }
        }
        Expr::BiSum { var, body } => {
            scope.push(var.clone());
            let body = bx(*body, scope);
            scope.pop();
            Expr::BiSum { var, body }
        }
        Expr::Prod { var, lower, body } => {
            let lower = bx(*lower, scope);
            scope.push(var.clone());
            let body = bx(*body, scope);
            scope.pop();
            Expr::Prod { var, lower, body }
        }
        e => e,
    }
}

// ---- series ----

pub fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, d)| BigRational::new(BigInt::from(p), BigInt::from(d)))
}

/// Series with at most `len` stored coefficients starting at some `q^lo`,
/// truncated at `order`.
pub fn arb_series(lo: RangeInclusive<i64>, order: i64, len: usize) -> impl Strategy<Value = QLaurent> {
    (lo, proptest::collection::vec(arb_rational(), 0..=len)).prop_map(move |(lo, c)| QLaurent::from_dense(lo, c, order))
}

/// Power series with a nonzero constant term.
pub fn arb_unit(order: i64, len: usize) -> impl Strategy<Value = QLaurent> {
    (
        arb_rational().prop_filter("nonzero", |c| *c != BigRational::from_integer(0.into())),
        proptest::collection::vec(arb_rational(), 0..=len),
    )
        .prop_map(move |(c0, mut c)| {
            c.insert(0, c0);
            QLaurent::from_dense(0, c, order)
        })
}

/// `±q^e`, or `c q^e` with a small integer `c`.
pub fn arb_monomial(max_exp: i64) -> impl Strategy<Value = Monomial> {
    (-3i64..=3, 0..=max_exp).prop_map(|(c, e)| Monomial::from_int(if c == 0 { 1 } else { c }, e))
}

// ---- algebra laws at a fixed order ----

pub const ALGEBRA_ORDER: i64 = 30;

pub fn power_series() -> impl Strategy<Value = QLaurent> {
    arb_series(0..=3, ALGEBRA_ORDER, 14)
}

pub fn ring_case() -> impl Strategy<Value = (QLaurent, QLaurent, QLaurent)> {
    (power_series(), power_series(), power_series())
}

pub fn ring_axioms((a, b, c): (QLaurent, QLaurent, QLaurent)) -> Result<(), TestCaseError> {
    let zero = QLaurent::zero(ALGEBRA_ORDER);
    let one = QLaurent::one(ALGEBRA_ORDER);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c), "additive associativity");
    prop_assert_eq!(&a + &b, &b + &a, "additive commutativity");
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "multiplicative associativity");
    prop_assert_eq!(&a * &b, &b * &a, "multiplicative commutativity");
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "distributivity");
    prop_assert_eq!(&a + &zero, a.clone(), "additive identity");
    prop_assert_eq!(&a * &one, a.clone(), "multiplicative identity");
    prop_assert_eq!(&a + &a.negate(), zero.clone(), "additive inverse");
    prop_assert_eq!(&(&a - &b) + &b, a.clone(), "subtraction");
    prop_assert_eq!(&a * &zero, zero, "absorbing zero");
    Ok(())
}

pub fn inverse_case() -> impl Strategy<Value = (QLaurent, QLaurent)> {
    (arb_unit(ALGEBRA_ORDER, 10), power_series())
}

pub fn inverse_law((u, a): (QLaurent, QLaurent)) -> Result<(), TestCaseError> {
    let inv = u.inverse().map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&u * &inv, QLaurent::one(ALGEBRA_ORDER));
    prop_assert_eq!(inv.inverse().unwrap(), u.clone());
    let quotient = a.checked_div(&u).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&quotient * &u, a);
    Ok(())
}

pub fn substitution_case() -> impl Strategy<Value = (QLaurent, QLaurent, i64)> {
    (power_series(), power_series(), 1i64..=4)
}

pub fn substitution_homomorphism((a, b, k): (QLaurent, QLaurent, i64)) -> Result<(), TestCaseError> {
    let sub = |x: &QLaurent| x.substitute_power(k).unwrap();
    prop_assert_eq!(sub(&(&a + &b)), &sub(&a) + &sub(&b));
    prop_assert_eq!(sub(&(&a * &b)), &sub(&a) * &sub(&b));
    prop_assert_eq!(sub(&QLaurent::one(ALGEBRA_ORDER)), QLaurent::one(ALGEBRA_ORDER));
    let neg = |x: &QLaurent| x.substitute_negate();
    prop_assert_eq!(neg(&(&a + &b)), &neg(&a) + &neg(&b));
    prop_assert_eq!(neg(&(&a * &b)), &neg(&a) * &neg(&b));
    prop_assert_eq!(neg(&neg(&a)), a.clone());
    // q -> -q commutes with q -> q^k for odd k
    if k % 2 == 1 {
        prop_assert_eq!(neg(&sub(&a)), sub(&neg(&a)));
    }
    Ok(())
}

pub fn pochhammer_case() -> impl Strategy<Value = (Monomial, i64, i64)> {
    (arb_monomial(4), 1i64..=3, 0i64..=10)
}

/// `(a; q^s)_{n+1} = (a; q^s)_n (1 - a q^{sn})` and
/// `(a; q^s)_inf = (1 - a) (a q^s; q^s)_inf`.
pub fn pochhammer_recurrence((a, s, n): (Monomial, i64, i64)) -> Result<(), TestCaseError> {
    let order = ALGEBRA_ORDER;
    let one = QLaurent::one(order);
    let step = |m: &Monomial, k: i64| &one - &QLaurent::monomial(&Monomial::new(m.coeff.clone(), m.q_exp + k), order);
    let lhs = pochhammer_finite(&a, s, n + 1, order).unwrap();
    let rhs = &pochhammer_finite(&a, s, n, order).unwrap() * &step(&a, s * n);
    prop_assert_eq!(lhs, rhs, "finite, a = {}, s = {}, n = {}", a, s, n);
    let shifted = Monomial::new(a.coeff.clone(), a.q_exp + s);
    let lhs = pochhammer_infinite(&a, s, order).unwrap();
    let rhs = &step(&a, 0) * &pochhammer_infinite(&shifted, s, order).unwrap();
    prop_assert_eq!(lhs, rhs, "infinite, a = {}, s = {}", a, s);
    Ok(())
}

// ---- shipped identity files ----

fn sample_from(meta: &str) -> Result<Sample, String> {
    meta.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| format!("bad sample `{kv}`"))?;
            let m = v.trim().parse::<Monomial>().map_err(|e| e.to_string())?;
            Ok((k.trim().to_string(), m))
        })
        .collect()
}

/// Evaluate every file under `identities/`, compare both sides with the
/// catalog builders, check the text round-trips and that every fixed id and
/// parametric family has a file. Returns the number of files.
pub fn shipped_files_match_catalog(order: i64) -> Result<usize, String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("identities");
    let mut files: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    files.sort();
    let mut fixed_seen = Vec::new();
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let file = parse_file(&text).map_err(|e| format!("{name}: {e}"))?;
        let id = file.meta.get("id").ok_or_else(|| format!("{name}: no id"))?;
        let sample = file.meta.get("sample").map(|s| sample_from(s)).transpose()?;
        let (lhs, rhs) = catalog::sides(id, order, sample.as_ref()).map_err(|e| format!("{name}: {e}"))?;
        let rhs_expr = file.rhs.as_ref().ok_or_else(|| format!("{name}: one-sided"))?;
        for (side, expr, want) in [("lhs", &file.lhs, &lhs), ("rhs", rhs_expr, &rhs)] {
            let got = eval(expr, order).map_err(|e| format!("{name} {side}: {e}"))?;
            if let Some(m) = got.first_mismatch(want) {
                return Err(format!("{name} {side}: differs from catalog at q^{}", m.q_exp));
            }
            if parse(&format(expr)).as_ref() != Ok(expr) {
                return Err(format!("{name} {side}: text does not round-trip"));
            }
        }
        if sample.is_none() {
            fixed_seen.push(id.clone());
        }
    }
    fixed_seen.sort();
    let mut fixed = catalog::fixed_ids();
    fixed.sort();
    if fixed_seen != fixed {
        return Err(format!("fixed ids with files {fixed_seen:?}, catalog {fixed:?}"));
    }
    for id in ["E3", "E4", "E5", "GG"] {
        if !files.iter().any(|p| p.file_name().unwrap().to_string_lossy().starts_with(&format!("{id}-"))) {
            return Err(format!("no sample file for {id}"));
        }
    }
    Ok(files.len())
}
