use num_traits::One;

use super::{Exponent, Expr};
use crate::error::{QError, Result};
use crate::qcore::sums::{tail_certified, Valuation};
use crate::qcore::{rat, Monomial, QLaurent, Term};

/// Valuation stand-in for a quantity known to vanish.
const ZERO: i64 = i64::MAX / 8;

type Env = Vec<(String, i64)>;

fn cap(order: i64) -> i64 {
    16 * (order.max(0) + 4) + 64
}

/// Expand `e` through `q^order`.
pub fn eval(e: &Expr, order: i64) -> Result<QLaurent> {
    eval_with(e, &[], order)
}

/// Like [`eval`], with free variables bound to integers.
pub fn eval_with(e: &Expr, bindings: &[(&str, i64)], order: i64) -> Result<QLaurent> {
    let mut env: Env = bindings.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    series(e, &mut env, order)
}

fn lookup(env: &Env, v: &str) -> Option<i64> {
    env.iter().rev().find(|(k, _)| k == v).map(|(_, x)| *x)
}

fn unbound(v: &str) -> QError {
    QError::InvalidArgument(format!("unbound variable `{v}`"))
}

fn exponent(x: &Exponent, env: &Env) -> Result<i64> {
    match x {
        Exponent::Int(k) => Ok(*k),
        Exponent::Poly(p) => p.eval(&|v| lookup(env, v)),
    }
}

fn eval_int(e: &Expr, env: &Env) -> Result<i64> {
    let overflow = || QError::InvalidArgument(format!("integer overflow in `{e}`"));
    match e {
        Expr::Int(n) => Ok(*n),
        Expr::Var(v) => lookup(env, v).ok_or_else(|| unbound(v)),
        Expr::Neg(a) => eval_int(a, env)?.checked_neg().ok_or_else(overflow),
        Expr::Add(a, b) => eval_int(a, env)?.checked_add(eval_int(b, env)?).ok_or_else(overflow),
        Expr::Sub(a, b) => eval_int(a, env)?.checked_sub(eval_int(b, env)?).ok_or_else(overflow),
        Expr::Mul(a, b) => eval_int(a, env)?.checked_mul(eval_int(b, env)?).ok_or_else(overflow),
        Expr::Pow(a, x) => {
            let k = u32::try_from(exponent(x, env)?)
                .map_err(|_| QError::InvalidArgument(format!("negative power in integer `{e}`")))?;
            eval_int(a, env)?.checked_pow(k).ok_or_else(overflow)
        }
        _ => Err(QError::InvalidArgument(format!("`{e}` is not an integer expression"))),
    }
}

fn mono_of(e: &Expr, env: &Env) -> Result<Option<Monomial>> {
    Ok(match e {
        Expr::Int(n) => Some(Monomial::constant(*n)),
        Expr::Q => Some(Monomial::q_pow(1)),
        Expr::Var(v) => Some(Monomial::constant(lookup(env, v).ok_or_else(|| unbound(v))?)),
        Expr::Neg(a) => mono_of(a, env)?.map(|m| m.neg()),
        Expr::Mul(a, b) => match (mono_of(a, env)?, mono_of(b, env)?) {
            (Some(x), Some(y)) => Some(x.mul(&y)),
            _ => None,
        },
        Expr::Div(a, b) => match (mono_of(a, env)?, mono_of(b, env)?) {
            (Some(x), Some(y)) => Some(x.div(&y)?),
            _ => None,
        },
        Expr::Pow(a, x) => match mono_of(a, env)? {
            Some(m) => Some(m.pow(exponent(x, env)?)?),
            None => None,
        },
        _ => None,
    })
}

fn poch_step(base: &Expr, env: &Env) -> Result<i64> {
    match mono_of(base, env)? {
        Some(m) if m.coeff.is_one() && m.q_exp >= 1 => Ok(m.q_exp),
        _ => Err(QError::InvalidArgument(format!("poch base `{base}` must be q^k with k >= 1"))),
    }
}

/// `e` as a product of a monomial and binomials, when it has that shape.
fn term_of(e: &Expr, env: &Env) -> Result<Option<Term>> {
    if let Some(m) = mono_of(e, env)? {
        return Ok(Some(Term::from_monomial(&m)));
    }
    Ok(match e {
        Expr::Neg(a) => term_of(a, env)?.map(|mut t| {
            t.times_scalar(&rat(-1));
            t
        }),
        Expr::Mul(a, b) => match (term_of(a, env)?, term_of(b, env)?) {
            (Some(mut x), Some(y)) => {
                x.times_term(&y);
                Some(x)
            }
            _ => None,
        },
        Expr::Div(a, b) => match (term_of(a, env)?, term_of(b, env)?) {
            (Some(mut x), Some(y)) => {
                x.times_term(&y.recip()?);
                Some(x)
            }
            _ => None,
        },
        Expr::Pow(a, x) => match term_of(a, env)? {
            Some(t) => {
                let k = exponent(x, env)?;
                let t = if k < 0 { t.recip()? } else { t };
                let mut out = Term::one();
                for _ in 0..k.unsigned_abs() {
                    out.times_term(&t);
                }
                Some(out)
            }
            None => None,
        },
        Expr::Poch { a, base, count } => {
            let am = mono_of(a, env)?
                .ok_or_else(|| QError::InvalidArgument(format!("poch argument `{a}` must be a monomial")))?;
            let step = poch_step(base, env)?;
            let mut t = Term::one();
            match count {
                Some(c) => t.times_poch(&am, step, eval_int(c, env)?)?,
                None => t.times_poch_inf(&am, step)?,
            };
            Some(t)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => match (mono_of(a, env)?, mono_of(b, env)?) {
            (Some(x), Some(y)) => {
                let y = if matches!(e, Expr::Sub(..)) { y.neg() } else { y };
                let (x, y) = if x.is_zero() || (!y.is_zero() && y.q_exp < x.q_exp) { (y, x) } else { (x, y) };
                let mut t = Term::from_monomial(&x);
                if !x.is_zero() {
                    // x + y = x (1 - (-y/x))
                    t.times_binomial(&y.div(&x)?.neg());
                }
                Some(t)
            }
            _ => None,
        },
        _ => None,
    })
}

fn with_var<T>(env: &mut Env, var: &str, n: i64, f: impl FnOnce(&mut Env) -> Result<T>) -> Result<T> {
    env.push((var.to_string(), n));
    let r = f(env);
    env.pop();
    r
}

/// Lower bound for the valuation of `e`; `ZERO` when it vanishes.
fn low(e: &Expr, env: &mut Env, order: i64) -> Result<i64> {
    if let Some(t) = term_of(e, env)? {
        return Ok(t.valuation().unwrap_or(ZERO));
    }
    Ok(match e {
        Expr::Neg(a) => low(a, env, order)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => low(a, env, order)?.min(low(b, env, order)?),
        Expr::Mul(a, b) => {
            let (x, y) = (low(a, env, order)?, low(b, env, order)?);
            if x >= ZERO || y >= ZERO {
                ZERO
            } else {
                x + y
            }
        }
        Expr::Div(a, b) => {
            let x = low(a, env, order)?;
            if x >= ZERO {
                ZERO
            } else {
                x - exact(b, env, order)?
            }
        }
        Expr::Pow(a, x) => {
            let k = exponent(x, env)?;
            match k {
                0 => 0,
                k if k > 0 => {
                    let v = low(a, env, order)?;
                    if v >= ZERO {
                        ZERO
                    } else {
                        v * k
                    }
                }
                k => exact(a, env, order)? * k,
            }
        }
        Expr::Sum { var, lower, upper, body } => {
            let start = eval_int(lower, env)?;
            let end = upper.as_ref().map(|u| eval_int(u, env)).transpose()?;
            sum_low(body, var, env, start, 1, end, order)?
        }
        Expr::BiSum { var, body } => {
            let up = sum_low(body, var, env, 0, 1, None, order)?;
            up.min(sum_low(body, var, env, -1, -1, None, order)?)
        }
        _ => series(e, env, order)?.min_exp().unwrap_or(ZERO),
    })
}

fn sum_low(body: &Expr, var: &str, env: &mut Env, start: i64, dir: i64, end: Option<i64>, order: i64) -> Result<i64> {
    let mut min = ZERO;
    let mut vals: Vec<Valuation> = Vec::new();
    let mut n = start;
    loop {
        if end.is_some_and(|end| n > end) {
            return Ok(min);
        }
        let v = with_var(env, var, n, |env| low(body, env, order))?;
        min = min.min(v);
        vals.push((v < ZERO).then_some(v));
        if end.is_none() {
            if tail_certified(&vals, min) {
                return Ok(min);
            }
            if (n - start).abs() > cap(order) {
                return Err(QError::Monotonicity(format!("term valuations near {var} = {n} never settle")));
            }
        }
        n += dir;
    }
}

/// Exact valuation of a denominator.
fn exact(e: &Expr, env: &mut Env, order: i64) -> Result<i64> {
    if let Some(t) = term_of(e, env)? {
        return t.valuation().ok_or(QError::NotInvertible);
    }
    let mut probe = order.max(0) + 8;
    while probe <= cap(order) {
        if let Some(v) = series(e, env, probe)?.min_exp() {
            return Ok(v);
        }
        probe *= 2;
    }
    Err(QError::NotInvertible)
}

fn relabel(s: &QLaurent, shift: i64, order: i64) -> QLaurent {
    QLaurent::from_terms(s.terms().map(|(e, c)| (e + shift, c.clone())), order)
}

/// `A * B` through `order`, given valuation bounds `la`, `lb` and
/// evaluators for each side at a requested order.
fn product(
    env: &mut Env,
    order: i64,
    (la, lb): (i64, i64),
    fa: impl FnOnce(&mut Env, i64) -> Result<QLaurent>,
    fb: impl FnOnce(&mut Env, i64) -> Result<QLaurent>,
) -> Result<QLaurent> {
    if la >= ZERO || lb >= ZERO || la + lb > order {
        return Ok(QLaurent::zero(order));
    }
    let a = fa(env, order - lb)?;
    let b = fb(env, order - la)?;
    let top = a.order().max(b.order()).max(order);
    relabel(&a, 0, top).checked_mul(&relabel(&b, 0, top))?.truncate(order)
}

/// `1 / e` through `order`, where `v` is the exact valuation of `e`.
fn recip(e: &Expr, env: &mut Env, v: i64, order: i64) -> Result<QLaurent> {
    if order + v < 0 {
        return Ok(QLaurent::zero(order));
    }
    let s = series(e, env, order + 2 * v)?;
    let unit = relabel(&s, -v, order + v);
    Ok(relabel(&unit.inverse()?, -v, order))
}

fn directed(
    body: &Expr,
    var: &str,
    env: &mut Env,
    (start, dir, end): (i64, i64, Option<i64>),
    order: i64,
) -> Result<QLaurent> {
    let mut acc = QLaurent::zero(order);
    let mut vals: Vec<Valuation> = Vec::new();
    let mut n = start;
    loop {
        if end.is_some_and(|end| n > end) {
            return Ok(acc);
        }
        let v = with_var(env, var, n, |env| {
            if let Some(t) = term_of(body, env)? {
                let v = t.valuation();
                if v.is_some_and(|v| v <= order) {
                    acc = acc.checked_add(&t.build(order))?;
                }
                return Ok(v);
            }
            let v = low(body, env, order)?;
            if v <= order {
                acc = acc.checked_add(&series(body, env, order)?)?;
            }
            Ok((v < ZERO).then_some(v))
        })?;
        vals.push(v);
        if end.is_none() {
            if tail_certified(&vals, order) {
                return Ok(acc);
            }
            if (n - start).abs() > cap(order) {
                let quiet = vals.iter().rev().take(8).all(|v| v.is_none_or(|v| v > order));
                return Err(if quiet {
                    QError::Monotonicity(format!("term valuations near {var} = {n} never settle"))
                } else {
                    QError::DivergentSum(format!("terms still reach q^{order} at {var} = {n}"))
                });
            }
        }
        n += dir;
    }
}

fn infinite_product(body: &Expr, var: &str, env: &mut Env, start: i64, order: i64) -> Result<QLaurent> {
    if order < 0 {
        return Ok(QLaurent::zero(order));
    }
    let probe = 2 * order + 2;
    let mut acc = QLaurent::one(order);
    let mut vals: Vec<Valuation> = Vec::new();
    let mut n = start;
    loop {
        let f = with_var(env, var, n, |env| series(body, env, probe))?;
        if f.min_exp().is_some_and(|m| m < 0) {
            return Err(QError::DivergentProduct(format!("factor at {var} = {n} has negative powers of q")));
        }
        let dev = f.checked_sub(&QLaurent::one(probe))?;
        vals.push(dev.min_exp());
        if dev.min_exp().is_some_and(|m| m <= order) || f.is_zero() {
            acc = acc.checked_mul(&f.truncate(order)?)?;
        }
        if tail_certified(&vals, order) {
            return Ok(acc);
        }
        if n - start > cap(order) {
            return Err(QError::DivergentProduct(format!("factors still reach q^{order} at {var} = {n}")));
        }
        n += 1;
    }
}

fn series(e: &Expr, env: &mut Env, order: i64) -> Result<QLaurent> {
    if let Some(t) = term_of(e, env)? {
        return Ok(t.build(order));
    }
    match e {
        Expr::Neg(a) => Ok(series(a, env, order)?.negate()),
        Expr::Add(a, b) => series(a, env, order)?.checked_add(&series(b, env, order)?),
        Expr::Sub(a, b) => series(a, env, order)?.checked_sub(&series(b, env, order)?),
        Expr::Mul(a, b) => {
            let bounds = (low(a, env, order)?, low(b, env, order)?);
            product(env, order, bounds, |env, o| series(a, env, o), |env, o| series(b, env, o))
        }
        Expr::Div(a, b) => {
            let v = exact(b, env, order)?;
            let bounds = (low(a, env, order)?, -v);
            product(env, order, bounds, |env, o| series(a, env, o), |env, o| recip(b, env, v, o))
        }
        Expr::Pow(a, x) => {
            let k = exponent(x, env)?;
            if k < 0 {
                let v = exact(a, env, order)?;
                let pos = Expr::Pow(a.clone(), Exponent::Int(-k));
                return recip(&pos, env, -k * v, order);
            }
            if k == 0 {
                return Ok(QLaurent::one(order));
            }
            let l = low(a, env, order)?;
            if l >= ZERO {
                return Ok(QLaurent::zero(order));
            }
            let base = series(a, env, order - (k - 1) * l)?;
            let top = base.order().max(order);
            let base = relabel(&base, 0, top);
            let mut out = QLaurent::one(top);
            for _ in 0..k {
                out = out.checked_mul(&base)?;
            }
            out.truncate(order)
        }
        Expr::Sum { var, lower, upper, body } => {
            let start = eval_int(lower, env)?;
            let end = upper.as_ref().map(|u| eval_int(u, env)).transpose()?;
            directed(body, var, env, (start, 1, end), order)
        }
        Expr::BiSum { var, body } => {
            let up = directed(body, var, env, (0, 1, None), order)?;
            up.checked_add(&directed(body, var, env, (-1, -1, None), order)?)
        }
        Expr::Prod { var, lower, body } => {
            let start = eval_int(lower, env)?;
            infinite_product(body, var, env, start, order)
        }
        Expr::Poch { .. } | Expr::Int(_) | Expr::Q | Expr::Var(_) => {
            unreachable!("handled by the term path")
        }
    }
}
