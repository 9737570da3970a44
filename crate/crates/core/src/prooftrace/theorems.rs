use super::{ct_expr, series_expr, Line, Proof, SideCheck};
use crate::catalog::{infinite_product, sides};
use crate::error::{QError, Result};
use crate::laurentz::{HyperZSum, Poch};
use crate::oracles::{double_sum_eval, DoubleSum, Index, IntPoch, QuadForm};
use crate::qcore::sums::{double_sum_series, sum_series};
use crate::qcore::{rat, Monomial, QLaurent, Term};

fn q(e: i64) -> Monomial {
    Monomial::q_pow(e)
}

fn nq(e: i64) -> Monomial {
    Monomial::neg_q_pow(e)
}

fn c(k: i64) -> Monomial {
    Monomial::constant(k)
}

fn p(a: Monomial, step: i64) -> Poch {
    Poch::new(a, step)
}

/// `sum ratio^n q^(quad*binom(n,2) + lin*n) prod num / prod den z^(z_step*n)`
fn hz(z_step: i64, ratio: i64, quad: i64, lin: i64, num: Vec<Poch>, den: Vec<Poch>, bilateral: bool) -> HyperZSum {
    HyperZSum { z_step, ratio: rat(ratio), quad, lin, num, den, bilateral }
}

/// `(a z^z_exp; q^base)_inf`, reciprocal unless `numerator`.
fn pf(a: Monomial, z_exp: i64, base: i64, numerator: bool) -> HyperZSum {
    HyperZSum::poch_factor(&a, z_exp, base, numerator)
}

type Factors = [(Monomial, i64, i32)];

fn units(f: &Factors) -> Result<Term> {
    let mut t = Term::one();
    for (a, step, power) in f {
        for _ in 0..power.unsigned_abs() {
            if *power > 0 {
                t.times_poch_inf(a, *step)?;
            } else {
                t.divide_poch_inf(a, *step)?;
            }
        }
    }
    Ok(t)
}

fn times(f: &Factors, s: QLaurent) -> Result<QLaurent> {
    infinite_product(f, s.order())?.checked_mul(&s)
}

fn lhs(id: &'static str) -> impl Fn(i64) -> Result<QLaurent> {
    move |n| Ok(sides(id, n, None)?.0)
}

fn rhs(id: &'static str) -> impl Fn(i64) -> Result<QLaurent> {
    move |n| Ok(sides(id, n, None)?.1)
}

pub(crate) fn window(k: u32, order: i64) -> Result<(i64, i64)> {
    if !(1..=5).contains(&k) {
        return Err(QError::UnknownTheorem(k));
    }
    let h = ((order.max(0) as f64).sqrt() as i64).clamp(1, 6);
    Ok((-h, h))
}

pub(crate) fn proof(k: u32) -> Result<Proof> {
    match k {
        1 => thm12(1),
        2 => thm12(2),
        3 => thm3(),
        4 => thm4(),
        5 => thm5(),
        _ => Err(QError::UnknownTheorem(k)),
    }
}

fn thm12(k: u32) -> Result<Proof> {
    // Theorem 1 has lin = 0 and the sum G, Theorem 2 has lin = -2 and H.
    let first = k == 1;
    let (id, rr, cof_lin, cof_text) =
        if first { ("E11", "RR1", 2, "q^(2m^2)") } else { ("E12", "RR2", 0, "q^(2m^2-2m)") };
    let odd = [(nq(1), 2, -1)];
    let theta = || hz(1, -1, 2, 1, vec![], vec![p(nq(1), 2)], true);
    let jacobi = || vec![pf(q(1), 1, 2, true), pf(q(1), -1, 2, true)];
    let pre = |extra: &Factors| -> Result<Term> {
        let mut f = vec![(q(2), 2, 1), (nq(1), 2, -1)];
        f.extend_from_slice(extra);
        units(&f)
    };
    let cof_product = if first { pf(nq(2), -1, 4, true) } else { pf(c(-1), -1, 4, true) };
    let cof_text2 = if first { "(-z^-1 q^2;q^4)" } else { "(-z^-1;q^4)" };
    let with = |den: Monomial| {
        let mut f = jacobi();
        f.push(pf(den, -1, 2, false));
        f.push(cof_product.clone());
        f
    };
    let name = if first { "G" } else { "H" };
    let shift = if first { 0 } else { 2 };
    let mut lines = vec![
        Line::series(
            &format!("sum (-1)^n q^(3n^2{})/((q^4;q^4)_n (-q;q^2)_n)", if first { "" } else { "-2n" }),
            "",
            lhs(id),
        ),
        Line::ct(
            &format!("CT[sum_n (-1)^n q^(n^2) z^n/(-q;q^2)_n * sum_m z^(-m) {cof_text}/(q^4;q^4)_m]"),
            "constant term of a bilateral sum times a one-sided sum",
            Term::one(),
            vec![theta(), hz(-1, 1, 4, cof_lin, vec![], vec![p(q(4), 4)], false)],
        )
        .with_recipe(),
        Line::new(
            &format!("CT[(zq;q^2)(z^-1 q;q^2)(q^2;q^2)/((-z^-1;q^2)(-q;q^2)) * {cof_text2}]"),
            "bilateral summation (E4) and the q-binomial theorem",
            ct_expr(pre(&[])?, with(c(-1))),
        )
        .readings(
            ("(-z^-1 q;q^2) in the denominator", ct_expr(pre(&[])?, with(nq(1)))),
            ("(-z^-1;q^2) in the denominator", ct_expr(pre(&[])?, with(c(-1)))),
        ),
    ];
    if first {
        lines.push(Line::ct(
            "1/(-q;q^2) CT[(zq;q^2)(z^-1 q;q^2)(q^2;q^2) (-z^-1 q^2;q^4)/(-z^-1;q^2)]",
            "regrouping",
            pre(&[])?,
            with(c(-1)),
        ));
        let mut f = jacobi();
        f.push(pf(c(-1), -1, 4, false));
        lines.push(Line::ct(
            "1/(-q;q^2) CT[(zq;q^2)(z^-1 q;q^2)(q^2;q^2)/(-z^-1;q^4)]",
            "(-z^-1;q^2) = (-z^-1;q^4)(-z^-1 q^2;q^4)",
            pre(&[])?,
            f,
        ));
    } else {
        let mut f = jacobi();
        f.push(pf(nq(2), -1, 4, false));
        lines.push(Line::ct(
            "1/(-q;q^2) CT[(zq;q^2)(z^-1 q;q^2)(q^2;q^2)/(-z^-1 q^2;q^4)]",
            "(-z^-1;q^2) = (-z^-1;q^4)(-z^-1 q^2;q^4)",
            pre(&[])?,
            f,
        ));
    }
    lines.push(
        Line::ct(
            &format!(
                "1/(-q;q^2) CT[sum_n (-1)^n q^(n^2) z^n * sum_m (-1)^m z^(-m){}/(q^4;q^4)_m]",
                if first { "" } else { " q^(2m)" }
            ),
            "Jacobi triple product and the q-binomial theorem",
            units(&odd)?,
            vec![hz(1, -1, 2, 1, vec![], vec![], true), hz(-1, -1, 0, shift, vec![], vec![p(q(4), 4)], false)],
        )
        .with_recipe(),
    );
    lines.push(Line::series(
        &format!("1/(-q;q^2) sum q^(n^2{})/(q^4;q^4)_n", if first { "" } else { "+2n" }),
        "taking the constant term",
        move |n| {
            let s = sum_series(n, 0, |j| {
                let mut t = Term::from_monomial(&q(j * j + shift * j));
                t.divide_poch(&q(4), 4, j)?;
                Ok(t)
            })?;
            times(&[(nq(1), 2, -1)], s)
        },
    ));
    lines.push(Line::series(
        &format!("1/(-q;q^2) * {name}(q)/(-q^2;q^2)"),
        if first { "E6" } else { "E7" },
        move |n| times(&[(nq(1), 2, -1), (nq(2), 2, -1)], lhs(rr)(n)?),
    ));
    lines.push(Line::series(&format!("{name}(q)/(-q)_inf"), "(-q;q^2)(-q^2;q^2) = (-q)_inf", move |n| {
        times(&[(nq(1), 1, -1)], lhs(rr)(n)?)
    }));
    lines.push(Line::series(
        &format!("1/prod (1+q^n)(1-q^(5n-{}))(1-q^(5n-{}))", if first { 4 } else { 3 }, if first { 1 } else { 2 }),
        if first { "RR1" } else { "RR2" },
        rhs(id),
    ));
    Ok(Proof {
        title: format!("sum (-1)^n q^(3n^2{})/((q^4;q^4)_n (-q;q^2)_n) as a product", if first { "" } else { "-2n" }),
        lines,
        side_checks: vec![],
    })
}

fn thm3_double(n: i64, plus_m: bool) -> Result<QLaurent> {
    let s = double_sum_series(n, |m, r| {
        let mut t = Term::from_monomial(&q((m + r) * (m + r) + if plus_m { m } else { 0 }));
        t.times_poch(&c(-1), 2, m)?;
        t.divide_poch(&q(2), 2, m)?;
        t.divide_poch(&q(2), 2, r)?;
        Ok(t)
    })?;
    times(&[(nq(2), 2, -1)], s)
}

fn thm3_inner(m: i64, n: i64) -> Result<QLaurent> {
    sum_series(n, 0, |r| {
        let mut t = Term::from_monomial(&q(r * r + 2 * m * r));
        t.divide_poch(&q(2), 2, r)?;
        Ok(t)
    })
}

fn thm3_outer_term(m: i64) -> Result<Term> {
    let mut t = Term::from_monomial(&q(m * m + m));
    t.times_poch(&c(-1), 2, m)?;
    t.divide_poch(&q(2), 2, m)?;
    Ok(t)
}

fn thm3() -> Result<Proof> {
    let product_with = |sq: (Monomial, i64)| {
        move |n| infinite_product(&[(q(6), 6, 1), (nq(1), 2, 1), (q(2), 2, -1), (sq.0.clone(), sq.1, 2)], n)
    };
    let sums = || hz(-1, 1, 0, 0, vec![p(nq(1), 2)], vec![p(q(2), 2)], false);
    let theta = || pf(nq(1), 1, 2, true);
    let pre = || units(&[(q(2), 2, 1), (nq(2), 2, -1)]);
    let regroup = |den: Monomial| {
        vec![theta(), pf(nq(1), -1, 2, true), pf(nq(1), -1, 2, true), pf(den, -1, 2, false), pf(c(1), -1, 2, false)]
    };
    let lines = vec![
        Line::series("sum q^(n^2)(-q;q^2)_n/(q^4;q^4)_n", "", lhs("E8")),
        Line::series("(q^3;q^6)^2 (q^6;q^6)(-q;q^2)/(q^2;q^2)", "E8", product_with((q(3), 6))).readings(
            ("(q^3;q^3)_inf^2", series_expr(product_with((q(3), 3)))),
            ("(q^3;q^6)_inf^2", series_expr(product_with((q(3), 6)))),
        ),
        Line::series(
            "sum q^(n^2)(-q;q^2)_n/((-q^2;q^2)_n (q^2;q^2)_n)",
            "(q^4;q^4)_n = (-q^2;q^2)_n (q^2;q^2)_n",
            |n| {
                sum_series(n, 0, |j| {
                    let mut t = Term::from_monomial(&q(j * j));
                    t.times_poch(&nq(1), 2, j)?;
                    t.divide_poch(&nq(2), 2, j)?;
                    t.divide_poch(&q(2), 2, j)?;
                    Ok(t)
                })
            },
        ),
        Line::ct(
            "CT[sum_n q^(n^2) z^n/(-q^2;q^2)_n * sum_m z^(-m)(-q;q^2)_m/(q^2;q^2)_m]",
            "constant term of a bilateral sum times a one-sided sum",
            Term::one(),
            vec![hz(1, 1, 2, 1, vec![], vec![p(nq(2), 2)], true), sums()],
        )
        .with_recipe(),
        Line::ct(
            "CT[(-zq;q^2)(-z^-1 q;q^2)(q^2;q^2)/((z^-1 q;q^2)(-q^2;q^2)) * (-z^-1 q;q^2)/(z^-1;q^2)]",
            "bilateral summation (E4) and the q-binomial theorem",
            pre()?,
            vec![
                theta(),
                pf(nq(1), -1, 2, true),
                pf(q(1), -1, 2, false),
                pf(nq(1), -1, 2, true),
                pf(c(1), -1, 2, false),
            ],
        ),
        Line::new(
            "1/(-q^2;q^2) CT[(-zq;q^2)(-z^-1 q;q^2)(q^2;q^2) * (-z^-1 q;q^2)/(z^-1 q;q^2) * 1/(z^-1;q^2)]",
            "regrouping",
            ct_expr(pre()?, regroup(q(1))),
        )
        .readings(
            ("(-z^-1 q;q^2) in the middle denominator", ct_expr(pre()?, regroup(nq(1)))),
            ("(z^-1 q;q^2) in the middle denominator", ct_expr(pre()?, regroup(q(1)))),
        ),
        Line::ct(
            "1/(-q^2;q^2) CT[sum_n q^(n^2) z^n * sum_m (-1;q^2)_m z^(-m) q^m/(q^2;q^2)_m * sum_r z^(-r)/(q^2;q^2)_r]",
            "Jacobi triple product and the q-binomial theorem",
            units(&[(nq(2), 2, -1)])?,
            vec![
                hz(1, 1, 2, 1, vec![], vec![], true),
                hz(-1, 1, 0, 1, vec![p(c(-1), 2)], vec![p(q(2), 2)], false),
                hz(-1, 1, 0, 0, vec![], vec![p(q(2), 2)], false),
            ],
        )
        .with_recipe(),
        Line::series(
            "1/(-q^2;q^2) sum_(m,r) q^((m+r)^2+m)(-1;q^2)_m/((q^2;q^2)_m (q^2;q^2)_r)",
            "taking the constant term",
            |n| thm3_double(n, true),
        )
        .readings(
            ("exponent (m+r)^2", series_expr(|n| thm3_double(n, false))),
            ("exponent (m+r)^2+m", series_expr(|n| thm3_double(n, true))),
        ),
        Line::series(
            "1/(-q^2;q^2) sum_m q^(m^2+m)(-1;q^2)_m/(q^2;q^2)_m sum_r q^(r^2+2mr)/(q^2;q^2)_r",
            "expanding (m+r)^2+m",
            |n| {
                let mut acc = QLaurent::zero(n);
                let mut m = 0;
                while m * m + m <= n {
                    let outer = thm3_outer_term(m)?.build(n);
                    acc = acc.checked_add(&outer.checked_mul(&thm3_inner(m, n)?)?)?;
                    m += 1;
                }
                times(&[(nq(2), 2, -1)], acc)
            },
        ),
        Line::series("1/(-q^2;q^2) sum_m q^(m^2+m)(-1;q^2)_m/(q^2;q^2)_m (-q^(2m+1);q^2)_inf", "E5", |n| {
            let s = sum_series(n, 0, |m| {
                let mut t = thm3_outer_term(m)?;
                t.times_poch_inf(&nq(2 * m + 1), 2)?;
                Ok(t)
            })?;
            times(&[(nq(2), 2, -1)], s)
        }),
        Line::series(
            "(-q;q^2)/(-q^2;q^2) sum q^(m^2+m)(-1;q^2)_m/((q^2;q^2)_m (-q;q^2)_m)",
            "(-q^(2m+1);q^2)_inf = (-q;q^2)_inf/(-q;q^2)_m",
            |n| times(&[(nq(1), 2, 1), (nq(2), 2, -1)], lhs("E13")(n)?),
        ),
        Line::series("(-q;q^2)/(-q^2;q^2) prod (1-q^(6n-3))^2 (1-q^(6n))/((1-q^(4n-2))(1-q^(2n)))", "E13", |n| {
            times(&[(nq(1), 2, 1), (nq(2), 2, -1)], rhs("E13")(n)?)
        }),
    ];
    let inner = SideCheck {
        label: "sum_r q^(r^2+2mr)/(q^2;q^2)_r = (-q^(2m+1);q^2)_inf for each m with m^2+m <= N".into(),
        run: Box::new(|n| {
            let mut m = 0;
            while m * m + m <= n {
                let prod = infinite_product(&[(nq(2 * m + 1), 2, 1)], n)?;
                if let Some(bad) = thm3_inner(m, n)?.first_mismatch(&prod) {
                    return Ok(Some(bad));
                }
                m += 1;
            }
            Ok(None)
        }),
    };
    Ok(Proof {
        title: "sum (-1;q^2)_n q^(n^2+n)/((q^2;q^2)_n (-q;q^2)_n) as a mod 6 product".into(),
        lines,
        side_checks: vec![(9, inner)],
    })
}

fn thm4_double(n: i64, exponent: fn(i64, i64) -> i64, m_base: i64) -> Result<QLaurent> {
    let s = double_sum_series(n, |m, r| {
        let mut t = Term::from_monomial(&q(exponent(m, r)));
        t.divide_poch(&q(m_base), m_base, m)?;
        t.divide_poch(&q(2), 2, r)?;
        Ok(t)
    })?;
    times(&[(q(2), 4, -1)], s)
}

fn thm4_raw(m: i64, r: i64) -> i64 {
    2 * (m + r) * (m + r) - (m + r) + 2 * m * m + m
}

fn thm4_expanded(m: i64, r: i64) -> i64 {
    4 * m * m + 4 * m * r + 2 * r * r - r
}

fn thm4() -> Result<Proof> {
    let pre = || units(&[(q(4), 4, 1), (q(2), 4, -1)]);
    let first = |third: Monomial, third_base: i64| {
        vec![
            pf(nq(1), 1, 4, true),
            pf(third, -1, third_base, true),
            pf(nq(1), -1, 4, false),
            pf(nq(1), -1, 2, true),
            pf(c(1), -1, 2, false),
        ]
    };
    let expansions = |sign: i64| -> Result<super::Expr> {
        Ok(super::Expr::Ct {
            product: crate::laurentz::ZProduct::new(
                units(&[(q(2), 4, -1)])?,
                vec![
                    hz(1, sign, 4, 1, vec![], vec![], true),
                    hz(-1, 1, 4, 3, vec![], vec![p(q(4), 4)], false),
                    hz(-1, 1, 0, 0, vec![], vec![p(q(2), 2)], false),
                ],
            ),
            recipe: true,
        })
    };
    let lines = vec![
        Line::series("(-q)_inf", "", |n| infinite_product(&[(nq(1), 1, 1)], n)),
        Line::series("sum q^(2n^2-n)(-q;q^2)_n/((q^2;q^2)_n (q^2;q^4)_n)", "E9", lhs("E9")),
        Line::ct(
            "CT[sum_n q^(2n^2-n) z^n/(q^2;q^4)_n * sum_m z^(-m)(-q;q^2)_m/(q^2;q^2)_m]",
            "constant term of a bilateral sum times a one-sided sum",
            Term::one(),
            vec![
                hz(1, 1, 4, 1, vec![], vec![p(q(2), 4)], true),
                hz(-1, 1, 0, 0, vec![p(nq(1), 2)], vec![p(q(2), 2)], false),
            ],
        )
        .with_recipe(),
        Line::new(
            "CT[(-zq;q^4)(-z^-1 q^3;q^4)(q^4;q^4)/((-z^-1 q;q^4)(q^2;q^4)) * (-z^-1 q;q^2)/(z^-1;q^2)]",
            "bilateral summation (E4) and the q-binomial theorem",
            ct_expr(pre()?, first(nq(3), 4)),
        )
        .readings(
            ("(-z^-1 q^3;q^2)", ct_expr(pre()?, first(nq(3), 2))),
            ("(-z^-1 q^3;q^4)", ct_expr(pre()?, first(nq(3), 4))),
        ),
        Line::ct(
            "1/(q^2;q^4) CT[(-zq;q^4)(-z^-1 q^3;q^4)(q^4;q^4) * (-z^-1 q^3;q^4)/(z^-1;q^2)]",
            "(-z^-1 q;q^2) = (-z^-1 q;q^4)(-z^-1 q^3;q^4)",
            pre()?,
            vec![pf(nq(1), 1, 4, true), pf(nq(3), -1, 4, true), pf(nq(3), -1, 4, true), pf(c(1), -1, 2, false)],
        ),
        Line::new(
            "1/(q^2;q^4) CT[sum_n q^(2n^2-n) z^n * sum_m q^(2m^2+m) z^(-m)/(q^4;q^4)_m * sum_r z^(-r)/(q^2;q^2)_r]",
            "Jacobi triple product, E5 and the q-binomial theorem",
            expansions(1)?,
        )
        .readings(("(-1)^n q^(2n^2-n) z^n", expansions(-1)?), ("q^(2n^2-n) z^n", expansions(1)?)),
        Line::series(
            "1/(q^2;q^4) sum_(m,r) q^(2(m+r)^2-(m+r)+2m^2+m)/((q^4;q^4)_m (q^2;q^2)_r)",
            "taking the constant term",
            |n| thm4_double(n, thm4_raw, 4),
        )
        .readings(
            ("(q^2;q^2)_m", series_expr(|n| thm4_double(n, thm4_raw, 2))),
            ("(q^4;q^4)_m", series_expr(|n| thm4_double(n, thm4_raw, 4))),
        ),
        Line::series(
            "1/(q^2;q^4) sum_(m,r) q^(4m^2+4mr+2r^2-r)/((q^4;q^4)_m (q^2;q^2)_r)",
            "expanding the exponent",
            |n| times(&[(q(2), 4, -1)], lhs("E17")(n)?),
        )
        .readings(
            ("(q^2;q^2)_m", series_expr(|n| thm4_double(n, thm4_expanded, 2))),
            ("(q^4;q^4)_m", series_expr(|n| times(&[(q(2), 4, -1)], lhs("E17")(n)?))),
        ),
        Line::series("1/(q^2;q^4) prod (1+q^(2n-1))", "(-q)_inf (q^2;q^4)_inf = (-q;q^2)_inf", |n| {
            times(&[(q(2), 4, -1)], rhs("E17")(n)?)
        }),
    ];
    Ok(Proof {
        title: "sum_(m,r) q^(4m^2+4mr+2r^2-r)/((q^4;q^4)_m (q^2;q^2)_r) = prod (1+q^(2n-1))".into(),
        lines,
        side_checks: vec![],
    })
}

fn thm5() -> Result<Proof> {
    let mut first = Term::one();
    first.divide_poch(&q(1), 1, 1)?;
    let pre = || units(&[(q(2), 2, 1), (q(1), 2, -1)]);
    let odd = [(q(1), 2, -1)];
    let lines = vec![
        Line::series("(q^3;q^6)^2 (q^6;q^6)(-q)_inf/(q)_inf", "", rhs("E10")),
        Line::series("sum q^(n^2)(-q)_n/((q;q^2)_(n+1) (q)_n)", "E10", lhs("E10")),
        Line::ct(
            "CT[1/(1-q) sum_n q^(n^2) z^n/(q^3;q^2)_n * sum_m z^(-m)(-q)_m/(q)_m]",
            "constant term of a bilateral sum times a one-sided sum",
            first,
            vec![
                hz(1, 1, 2, 1, vec![], vec![p(q(3), 2)], true),
                hz(-1, 1, 0, 0, vec![p(nq(1), 1)], vec![p(q(1), 1)], false),
            ],
        )
        .with_recipe(),
        Line::ct(
            "CT[(-zq;q^2)(-z^-1 q;q^2)(q^2;q^2)/((-z^-1 q^2;q^2)(q;q^2)) * (-z^-1 q)_inf/(z^-1)_inf]",
            "bilateral summation (E4) and the q-binomial theorem",
            pre()?,
            vec![
                pf(nq(1), 1, 2, true),
                pf(nq(1), -1, 2, true),
                pf(nq(2), -1, 2, false),
                pf(nq(1), -1, 1, true),
                pf(c(1), -1, 1, false),
            ],
        ),
        Line::ct(
            "1/(q;q^2) CT[(-zq;q^2)(-z^-1 q;q^2)(q^2;q^2) * (-z^-1 q;q^2) * 1/(z^-1)_inf]",
            "(-z^-1 q)_inf = (-z^-1 q;q^2)_inf (-z^-1 q^2;q^2)_inf",
            pre()?,
            vec![pf(nq(1), 1, 2, true), pf(nq(1), -1, 2, true), pf(nq(1), -1, 2, true), pf(c(1), -1, 1, false)],
        ),
        Line::ct(
            "1/(q;q^2) CT[sum_n q^(n^2) z^n * sum_m q^(m^2) z^(-m)/(q^2;q^2)_m * sum_r z^(-r)/(q)_r]",
            "Jacobi triple product, E5 and the q-binomial theorem",
            units(&odd)?,
            vec![
                hz(1, 1, 2, 1, vec![], vec![], true),
                hz(-1, 1, 2, 1, vec![], vec![p(q(2), 2)], false),
                hz(-1, 1, 0, 0, vec![], vec![p(q(1), 1)], false),
            ],
        )
        .with_recipe(),
        Line::series("1/(q;q^2) sum_(m,r) q^((m+r)^2+m^2)/((q^2;q^2)_m (q)_r)", "taking the constant term", |n| {
            let s = double_sum_series(n, |m, r| {
                let mut t = Term::from_monomial(&q((m + r) * (m + r) + m * m));
                t.divide_poch(&q(2), 2, m)?;
                t.divide_poch(&q(1), 1, r)?;
                Ok(t)
            })?;
            times(&[(q(1), 2, -1)], s)
        }),
        Line::series(
            "1/(q;q^2) sum_(m,r) q^(2m^2+2mr+r^2)/((q^2;q^2)_m (q)_r)",
            "expanding the exponent (independent integer evaluation)",
            |n| {
                let ds = DoubleSum {
                    quad: QuadForm { mm: 2, mr: 2, rr: 1, m: 0, r: 0 },
                    denoms: vec![IntPoch::qq(2, Index::M), IntPoch::qq(1, Index::R)],
                    numer: None,
                    weight: None,
                };
                times(&[(q(1), 2, -1)], double_sum_eval(&ds, n)?)
            },
        ),
        Line::series("1/(q;q^2) prod (1-q^(6n-3))^2 (1-q^(6n))/(1-q^n)", "(-q)_inf (q;q^2)_inf = 1", |n| {
            times(&[(q(1), 2, -1)], rhs("E18")(n)?)
        }),
    ];
    Ok(Proof {
        title: "sum_(m,r) q^(2m^2+2mr+r^2)/((q^2;q^2)_m (q)_r) as a mod 6 product".into(),
        lines,
        side_checks: vec![],
    })
}
