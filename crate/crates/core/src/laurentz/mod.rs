//! Laurent series in `z` with power-series coefficients in `q`, the
//! bilateral and product expansions that generate them, and constant-term
//! extraction.

mod hyper;
mod zseries;

pub use hyper::{ct_recipe, CtRecipe, HyperZSum, Poch, Reach, ZProduct};
pub use zseries::{zmul, ZSeries};

use crate::error::{QError, Result};
use crate::qcore::{Monomial, QLaurent, Term};

fn check_theta_args(t_zexp: i64, base: i64) -> Result<()> {
    if t_zexp == 0 {
        return Err(QError::InvalidArgument("t must contain z (t_zexp = 0)".into()));
    }
    if base < 1 {
        return Err(QError::InvalidArgument(format!("base must be >= 1, got {base}")));
    }
    Ok(())
}

/// `sum_n (-1)^n Q^binom(n,2) t^n / (b; Q)_n` with `Q = q^base`,
/// `t = t_mono z^t_zexp`.
///
/// Directions in which the terms die out are built until they vanish
/// through `q^order`. A direction where they do not (the valuation stays
/// bounded) is built as far as the other one and left open.
pub fn bilateral_theta(t_zexp: i64, t_mono: &Monomial, b: &Monomial, base: i64, order: i64) -> Result<ZSeries> {
    check_theta_args(t_zexp, base)?;
    let h = HyperZSum::theta(t_zexp, t_mono, b, base);
    let (pos, neg) = (h.closes(1)?, h.closes(-1)?);
    let reach = match (pos, neg) {
        (true, true) => Reach::auto(),
        (false, false) => {
            return Err(QError::WindowUnderspecified("the bilateral sum terminates in neither direction".into()))
        }
        (true, false) => {
            let s = h.build(order, Reach { neg: Some(0), pos: None, slack: 0 })?;
            let e = s.hi().max(-s.window().0) / t_zexp.abs();
            Reach { neg: Some(e.max(1)), pos: None, slack: 0 }
        }
        (false, true) => {
            let s = h.build(order, Reach { neg: None, pos: Some(0), slack: 0 })?;
            let e = s.hi().max(-s.window().0) / t_zexp.abs();
            Reach { neg: None, pos: Some(e.max(1)), slack: 0 }
        }
    };
    h.build(order, reach)
}

/// [`bilateral_theta`] with explicit index extents (minimums on
/// terminating sides) and extra slack on both sides.
pub fn bilateral_theta_windowed(
    t_zexp: i64,
    t_mono: &Monomial,
    b: &Monomial,
    base: i64,
    order: i64,
    reach: Reach,
) -> Result<ZSeries> {
    check_theta_args(t_zexp, base)?;
    HyperZSum::theta(t_zexp, t_mono, b, base).build(order, reach)
}

/// `(t; Q)_inf (Q/t; Q)_inf (Q; Q)_inf / ((b/t; Q)_inf (b; Q)_inf)` expanded
/// on the window [`bilateral_theta`] chooses for the same arguments.
pub fn triple_product_form(t_zexp: i64, t_mono: &Monomial, b: &Monomial, base: i64, order: i64) -> Result<ZSeries> {
    check_theta_args(t_zexp, base)?;
    let window = bilateral_theta(t_zexp, t_mono, b, base, order)?.window();
    triple_product_on(t_zexp, t_mono, b, base, order, window, 0)
}

/// The product side on an explicit z-window.
pub fn triple_product_on(
    t_zexp: i64,
    t_mono: &Monomial,
    b: &Monomial,
    base: i64,
    order: i64,
    window: (i64, i64),
    slack: i64,
) -> Result<ZSeries> {
    check_theta_args(t_zexp, base)?;
    let qt = Monomial::q_pow(base).div(t_mono)?;
    let bt = if b.is_zero() { Monomial::zero() } else { b.div(t_mono)? };
    let mut pre = Term::one();
    pre.times_poch_inf(&Monomial::q_pow(base), base)?;
    if b.q_exp < 0 {
        return Err(QError::DivergentProduct(format!("(b; q^{base})_inf with b = {b}")));
    }
    pre.divide_poch_inf(b, base)?;
    let factors = vec![
        HyperZSum::poch_factor(t_mono, t_zexp, base, true),
        HyperZSum::poch_factor(&qt, -t_zexp, base, true),
        HyperZSum::poch_factor(&bt, -t_zexp, base, false),
    ];
    ZProduct::new(pre, factors).materialize(order, Some(window), slack)
}

/// `(-c z^z_exp; q^base)_inf` when `numerator`, else `1/(c z^z_exp; q^base)_inf`,
/// on the given z-window.
pub fn product_expansion(
    c: &Monomial,
    z_exp: i64,
    base: i64,
    numerator: bool,
    order: i64,
    window: (i64, i64),
) -> Result<ZSeries> {
    if z_exp == 0 {
        return Err(QError::InvalidArgument("z_exp must be nonzero".into()));
    }
    if base < 1 {
        return Err(QError::InvalidArgument(format!("base must be >= 1, got {base}")));
    }
    let a = if numerator { c.neg() } else { c.clone() };
    let h = HyperZSum::poch_factor(&a, z_exp, base, numerator);
    let far = if z_exp > 0 { window.1 } else { -window.0 };
    let steps = (far.max(0) + z_exp.abs() - 1) / z_exp.abs();
    let s = h.build(order, Reach { neg: Some(0), pos: Some(steps), slack: 0 })?;
    s.with_window(window.0, window.1)
}

/// Constant term of a series.
pub fn ct(a: &ZSeries) -> Result<QLaurent> {
    a.ct()
}
