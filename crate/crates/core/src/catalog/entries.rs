use std::sync::Arc;

use super::{Identity, Sample};
use crate::error::{QError, Result};
use crate::qcore::sums::{bilateral_sum_series, double_sum_series, sum_series};
use crate::qcore::{Monomial, QLaurent, Term};

fn q(e: i64) -> Monomial {
    Monomial::q_pow(e)
}

fn nq(e: i64) -> Monomial {
    Monomial::neg_q_pow(e)
}

fn signed(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `prod (a; q^step)_inf^power` for the listed factors.
pub(crate) fn product(factors: &[(Monomial, i64, i32)], order: i64) -> Result<QLaurent> {
    let mut t = Term::one();
    for (a, step, power) in factors {
        for _ in 0..power.unsigned_abs() {
            if *power > 0 {
                t.times_poch_inf(a, *step)?;
            } else {
                t.divide_poch_inf(a, *step)?;
            }
        }
    }
    Ok(t.build(order))
}

fn param(s: &Sample, name: &str) -> Result<Monomial> {
    s.get(name).cloned().ok_or_else(|| QError::InvalidArgument(format!("missing sample value for `{name}`")))
}

/// Residues kept by the first Rogers–Ramanujan product; exposed for
/// mutation checks.
pub fn rr1_with_residues(r1: i64, r2: i64) -> Identity {
    let mut id = rr1();
    id.rhs = Arc::new(move |_, n| product(&[(q(r1), 5, -1), (q(r2), 5, -1)], n));
    id.notes = format!("product side uses residues {r1}, {r2} mod 5");
    id
}

fn rr1() -> Identity {
    Identity::fixed(
        "RR1",
        "Rogers–Ramanujan identity G(q)",
        "sum q^(n^2)/(q)_n; parts = 1, 4 mod 5",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(k * k));
                t.divide_poch(&q(1), 1, k)?;
                Ok(t)
            })
        },
        |n| product(&[(q(1), 5, -1), (q(4), 5, -1)], n),
    )
}

fn rr2() -> Identity {
    Identity::fixed(
        "RR2",
        "Rogers–Ramanujan identity H(q)",
        "sum q^(n^2+n)/(q)_n; parts = 2, 3 mod 5",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(k * k + k));
                t.divide_poch(&q(1), 1, k)?;
                Ok(t)
            })
        },
        |n| product(&[(q(2), 5, -1), (q(3), 5, -1)], n),
    )
}

fn default_grid() -> Vec<Monomial> {
    ["q", "-q", "q^2", "-q^2", "q^3", "0"].iter().map(|s| s.parse().expect("grid literal")).collect()
}

fn e3() -> Identity {
    let mut samples = Vec::new();
    for a in default_grid() {
        for t in default_grid() {
            samples.push(Sample::from([("a".to_string(), a.clone()), ("t".to_string(), t)]));
        }
    }
    Identity::parametric(
        "E3",
        "q-binomial theorem",
        "sum (a)_n t^n/(q)_n = (at)_inf/(t)_inf",
        &["a", "t"],
        samples,
        |s, n| {
            let (a, t) = (param(s, "a")?, param(s, "t")?);
            sum_series(n, 0, |k| {
                let mut term = Term::from_monomial(&t.pow(k)?);
                term.times_poch(&a, 1, k)?;
                term.divide_poch(&q(1), 1, k)?;
                Ok(term)
            })
        },
        |s, n| {
            let (a, t) = (param(s, "a")?, param(s, "t")?);
            product(&[(a.mul(&t), 1, 1), (t, 1, -1)], n)
        },
    )
}

fn e4() -> Identity {
    let mut samples = Vec::new();
    for t in default_grid().into_iter().filter(|t| !t.is_zero()) {
        samples.push(Sample::from([("t".to_string(), t), ("b".to_string(), Monomial::zero())]));
    }
    for t in ["q", "-q"] {
        samples.push(Sample::from([("t".to_string(), t.parse().expect("literal")), ("b".to_string(), nq(2))]));
    }
    Identity::parametric(
        "E4",
        "Bilateral summation (triple product with a denominator)",
        "sum over all n of (-1)^n q^binom(n,2) t^n/(b)_n = (t)(q/t)(q)/((b/t)(b)); z-free samples",
        &["t", "b"],
        samples,
        |s, n| {
            let (t, b) = (param(s, "t")?, param(s, "b")?);
            bilateral_sum_series(n, |k| {
                let mut term = Term::from_monomial(&Monomial::from_int(signed(k), k * (k - 1) / 2));
                term.times_monomial(&t.pow(k)?);
                term.divide_poch(&b, 1, k)?;
                Ok(term)
            })
        },
        |s, n| {
            let (t, b) = (param(s, "t")?, param(s, "b")?);
            let bt = if b.is_zero() { Monomial::zero() } else { b.div(&t)? };
            let mut term = Term::one();
            term.times_poch_inf(&t, 1)?;
            term.times_poch_inf(&q(1).div(&t)?, 1)?;
            term.times_poch_inf(&q(1), 1)?;
            term.divide_poch_inf(&bt, 1)?;
            term.divide_poch_inf(&b, 1)?;
            Ok(term.build(n))
        },
    )
}

fn e5() -> Identity {
    let samples = default_grid().into_iter().map(|t| Sample::from([("t".to_string(), t)])).collect();
    Identity::parametric(
        "E5",
        "Euler's product for (-t)_inf",
        "sum q^binom(n,2) t^n/(q)_n = (-t)_inf",
        &["t"],
        samples,
        |s, n| {
            let t = param(s, "t")?;
            sum_series(n, 0, |k| {
                let mut term = Term::from_monomial(&q(k * (k - 1) / 2));
                term.times_monomial(&t.pow(k)?);
                term.divide_poch(&q(1), 1, k)?;
                Ok(term)
            })
        },
        |s, n| product(&[(param(s, "t")?.neg(), 1, 1)], n),
    )
}

fn e6() -> Identity {
    Identity::fixed(
        "E6",
        "Rogers",
        "sum q^(n^2)/(q^4;q^4)_n = G(q)/(-q^2;q^2)_inf",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(k * k));
                t.divide_poch(&q(4), 4, k)?;
                Ok(t)
            })
        },
        |n| product(&[(q(1), 5, -1), (q(4), 5, -1), (nq(2), 2, -1)], n),
    )
}

fn e7() -> Identity {
    Identity::fixed(
        "E7",
        "Rogers",
        "sum q^(n^2+2n)/(q^4;q^4)_n = H(q)/(-q^2;q^2)_inf",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(k * k + 2 * k));
                t.divide_poch(&q(4), 4, k)?;
                Ok(t)
            })
        },
        |n| product(&[(q(2), 5, -1), (q(3), 5, -1), (nq(2), 2, -1)], n),
    )
}

fn e8() -> Identity {
    Identity::fixed(
        "E8",
        "Slater; Ramanujan's lost notebook",
        "sum q^(n^2)(-q;q^2)_n/(q^4;q^4)_n = (q^3;q^6)^2 (q^6;q^6)(-q;q^2)/(q^2;q^2); the squared factor is read as (q^3;q^6)_inf^2",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(k * k));
                t.times_poch(&nq(1), 2, k)?;
                t.divide_poch(&q(4), 4, k)?;
                Ok(t)
            })
        },
        |n| product(&[(q(3), 6, 2), (q(6), 6, 1), (nq(1), 2, 1), (q(2), 2, -1)], n),
    )
}

fn e9() -> Identity {
    Identity::fixed(
        "E9",
        "Slater",
        "sum q^(2n^2-n)(-q;q^2)_n/((q^2;q^2)_n (q^2;q^4)_n) = (-q)_inf",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(2 * k * k - k));
                t.times_poch(&nq(1), 2, k)?;
                t.divide_poch(&q(2), 2, k)?;
                t.divide_poch(&q(2), 4, k)?;
                Ok(t)
            })
        },
        |n| product(&[(nq(1), 1, 1)], n),
    )
}

fn e10() -> Identity {
    Identity::fixed(
        "E10",
        "Slater",
        "sum q^(n^2)(-q)_n/((q;q^2)_(n+1) (q)_n) = (q^3;q^6)^2 (q^6;q^6)(-q)/(q); the n = 0 term is 1/(1-q)",
        |n| {
            sum_series(n, 0, |k| {
                let mut t = Term::from_monomial(&q(k * k));
                t.times_poch(&nq(1), 1, k)?;
                t.divide_poch(&q(1), 2, k + 1)?;
                t.divide_poch(&q(1), 1, k)?;
                Ok(t)
            })
        },
        |n| product(&[(q(3), 6, 2), (q(6), 6, 1), (nq(1), 1, 1), (q(1), 1, -1)], n),
    )
}

fn thm12_lhs(n: i64, lin: i64) -> Result<QLaurent> {
    sum_series(n, 0, |k| {
        let mut t = Term::from_monomial(&Monomial::from_int(signed(k), 3 * k * k + lin * k));
        t.divide_poch(&q(4), 4, k)?;
        t.divide_poch(&nq(1), 2, k)?;
        Ok(t)
    })
}

fn e11() -> Identity {
    Identity::fixed(
        "E11",
        "Theorem 1 (Rogers)",
        "sum (-1)^n q^(3n^2)/((q^4;q^4)_n (-q;q^2)_n) = 1/prod (1+q^n)(1-q^(5n-4))(1-q^(5n-1))",
        |n| thm12_lhs(n, 0),
        |n| product(&[(nq(1), 1, -1), (q(1), 5, -1), (q(4), 5, -1)], n),
    )
}

fn e12() -> Identity {
    Identity::fixed(
        "E12",
        "Theorem 2 (Rogers)",
        "sum (-1)^n q^(3n^2-2n)/((q^4;q^4)_n (-q;q^2)_n) = 1/prod (1+q^n)(1-q^(5n-3))(1-q^(5n-2))",
        |n| thm12_lhs(n, -2),
        |n| product(&[(nq(1), 1, -1), (q(2), 5, -1), (q(3), 5, -1)], n),
    )
}

pub(crate) fn e13_lhs(n: i64) -> Result<QLaurent> {
    sum_series(n, 0, |k| {
        let mut t = Term::from_monomial(&q(k * k + k));
        t.times_poch(&Monomial::constant(-1), 2, k)?;
        t.divide_poch(&q(2), 2, k)?;
        t.divide_poch(&nq(1), 2, k)?;
        Ok(t)
    })
}

pub(crate) fn e13_rhs(n: i64) -> Result<QLaurent> {
    product(&[(q(3), 6, 2), (q(6), 6, 1), (q(2), 4, -1), (q(2), 2, -1)], n)
}

fn e13() -> Identity {
    Identity::fixed(
        "E13",
        "Theorem 3 (mod 6, via constant terms)",
        "sum (-1;q^2)_n q^(n^2+n)/((q^2;q^2)_n (-q;q^2)_n) = prod (1-q^(6n-3))^2 (1-q^(6n))/((1-q^(4n-2))(1-q^(2n)))",
        e13_lhs,
        e13_rhs,
    )
}

fn gg_lhs(t: &Monomial, n: i64) -> Result<QLaurent> {
    double_sum_series(n, |m, r| {
        let mut term = Term::from_monomial(&q(4 * m * m + 4 * m * r + 2 * r * r - r));
        term.times_monomial(&t.pow(2 * m + r)?);
        term.divide_poch(&q(4), 4, m)?;
        term.divide_poch(&q(2), 2, r)?;
        Ok(term)
    })
}

fn e17() -> Identity {
    Identity::fixed(
        "E17",
        "Theorem 4 (double sum)",
        "sum over m,r of q^(4m^2+4mr+2r^2-r)/((q^4;q^4)_m (q^2;q^2)_r) = prod (1+q^(2n-1))",
        |n| gg_lhs(&Monomial::one(), n),
        |n| product(&[(nq(1), 2, 1)], n),
    )
}

fn e18() -> Identity {
    Identity::fixed(
        "E18",
        "Theorem 5 (double sum)",
        "sum over m,r of q^(2m^2+2mr+r^2)/((q^2;q^2)_m (q)_r) = prod (1-q^(6n-3))^2 (1-q^(6n))/(1-q^n)",
        |n| {
            double_sum_series(n, |m, r| {
                let mut t = Term::from_monomial(&q(2 * m * m + 2 * m * r + r * r));
                t.divide_poch(&q(2), 2, m)?;
                t.divide_poch(&q(1), 1, r)?;
                Ok(t)
            })
        },
        |n| product(&[(q(3), 6, 2), (q(6), 6, 1), (q(1), 1, -1)], n),
    )
}

fn gg() -> Identity {
    let samples = ["0", "1", "q", "-q", "q^2", "-q^2", "q^3"]
        .iter()
        .map(|t| Sample::from([("t".to_string(), t.parse().expect("literal"))]))
        .collect();
    Identity::parametric(
        "GG",
        "Andrews' generalization of Theorem 4",
        "sum over m,r of t^(2m+r) q^(4m^2+4mr+2r^2-r)/((q^4;q^4)_m (q^2;q^2)_r) = prod (1+t q^(2n-1))",
        &["t"],
        samples,
        |s, n| gg_lhs(&param(s, "t")?, n),
        |s, n| product(&[(param(s, "t")?.mul(&q(1)).neg(), 2, 1)], n),
    )
}

pub(crate) fn all() -> Vec<Identity> {
    vec![rr1(), rr2(), e3(), e4(), e5(), e6(), e7(), e8(), e9(), e10(), e11(), e12(), e13(), e17(), e18(), gg()]
}
