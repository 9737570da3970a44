//! Truncated evaluation of single, bilateral and double sums whose terms are
//! products of monomials and Pochhammer symbols.
//!
//! A sum is cut off once three consecutive terms have valuation above the
//! order and the valuations are strictly increasing and convex there. For
//! quadratic exponents this holds from some index on and then every later
//! term lies beyond the order as well.

use super::{QLaurent, Term};
use crate::error::{QError, Result};

/// Valuation of a term, `None` for an identically zero term.
pub type Valuation = Option<i64>;

fn cap(order: i64) -> i64 {
    16 * (order.max(0) + 4) + 64
}

/// True once the last three valuations certify that the remaining terms
/// vanish through `q^order`.
pub fn tail_certified(vals: &[Valuation], order: i64) -> bool {
    let n = vals.len();
    if n < 3 {
        return false;
    }
    let w = &vals[n - 3..];
    if w.iter().any(|v| v.is_some_and(|v| v <= order)) {
        return false;
    }
    match (w[0], w[1], w[2]) {
        (None, None, None) => true,
        (Some(a), Some(b), Some(c)) => b > a && c - b >= b - a,
        // a term dropping out to zero: accept if the finite ones increase
        (Some(a), Some(b), None) => b > a,
        (Some(_), None, None) => true,
        _ => false,
    }
}

/// Running sum of `term(n)` for `n = start, start + dir, ...`.
/// Returns the sum and the minimum valuation over all terms.
fn directed_sum<F>(order: i64, start: i64, dir: i64, term: &mut F) -> Result<(QLaurent, Valuation)>
where
    F: FnMut(i64) -> Result<Term>,
{
    let mut acc = QLaurent::zero(order);
    let mut vals: Vec<Valuation> = Vec::new();
    let mut min_val: Valuation = None;
    let limit = cap(order);
    let mut n = start;
    loop {
        let t = term(n)?;
        let v = t.valuation();
        if let Some(v) = v {
            min_val = Some(min_val.map_or(v, |m: i64| m.min(v)));
            if v <= order {
                acc = acc.checked_add(&t.build(order))?;
            }
        }
        vals.push(v);
        if tail_certified(&vals, order) {
            return Ok((acc, min_val));
        }
        if (n - start).abs() > limit {
            let recent_above = vals.iter().rev().take(8).all(|v| v.is_none_or(|v| v > order));
            return Err(if recent_above {
                QError::Monotonicity(format!("term valuations near index {n} never settle"))
            } else {
                QError::DivergentSum(format!("terms still reach q^{order} at index {n}"))
            });
        }
        n += dir;
    }
}

/// `sum_{n >= start} term(n)` through `q^order`.
pub fn sum_series<F>(order: i64, start: i64, mut term: F) -> Result<QLaurent>
where
    F: FnMut(i64) -> Result<Term>,
{
    Ok(directed_sum(order, start, 1, &mut term)?.0)
}

/// `sum_{n in Z} term(n)` through `q^order`.
pub fn bilateral_sum_series<F>(order: i64, mut term: F) -> Result<QLaurent>
where
    F: FnMut(i64) -> Result<Term>,
{
    let (up, _) = directed_sum(order, 0, 1, &mut term)?;
    let (down, _) = directed_sum(order, -1, -1, &mut term)?;
    up.checked_add(&down)
}

/// `sum_{m, r >= 0} term(m, r)` through `q^order`; rows (fixed `m`) are cut
/// by the single-sum rule and the row minima by the same rule again.
pub fn double_sum_series<F>(order: i64, mut term: F) -> Result<QLaurent>
where
    F: FnMut(i64, i64) -> Result<Term>,
{
    let mut acc = QLaurent::zero(order);
    let mut row_mins: Vec<Valuation> = Vec::new();
    let limit = cap(order);
    for m in 0.. {
        let (row, min_val) = directed_sum(order, 0, 1, &mut |r| term(m, r))?;
        acc = acc.checked_add(&row)?;
        row_mins.push(min_val);
        if tail_certified(&row_mins, order) {
            return Ok(acc);
        }
        if m > limit {
            return Err(QError::DivergentSum(format!("rows still reach q^{order} at m = {m}")));
        }
    }
    unreachable!()
}
