use std::fmt;

use crate::error::{QError, Result};
use crate::qcore::{Mismatch, QLaurent};

/// A Laurent series in `z` whose coefficients are power series in `q`,
/// stored on the window `z^lo ..= z^hi`.
///
/// Each side of the window is either *closed* (every coefficient beyond it
/// vanishes through `q^order`) or *open* (coefficients beyond it exist but
/// were not computed). A series closed on both sides is anchored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSeries {
    lo: i64,
    coeffs: Vec<QLaurent>,
    order: i64,
    closed_below: bool,
    closed_above: bool,
}

impl ZSeries {
    /// `coeffs[i]` is the coefficient of `z^(lo + i)`. Coefficients must
    /// share the order and carry no negative powers of `q`.
    pub fn from_parts(
        lo: i64,
        coeffs: Vec<QLaurent>,
        order: i64,
        closed_below: bool,
        closed_above: bool,
    ) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(QError::InvalidArgument("z-window must contain at least one exponent".into()));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if c.order() != order {
                return Err(QError::OrderMismatch { left: order, right: c.order() });
            }
            if let Some(m) = c.min_exp().filter(|&m| m < 0) {
                return Err(QError::NegativeDegree { z_exp: lo + i as i64, q_exp: m });
            }
        }
        Ok(ZSeries { lo, coeffs, order, closed_below, closed_above })
    }

    /// `s * z^0`, closed on both sides.
    pub fn z_free(s: QLaurent) -> Result<Self> {
        let order = s.order();
        Self::from_parts(0, vec![s], order, true, true)
    }

    /// `s * z^k`, closed on both sides.
    pub fn z_monomial(s: QLaurent, k: i64) -> Result<Self> {
        let order = s.order();
        Self::from_parts(k, vec![s], order, true, true)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn closed_below(&self) -> bool {
        self.closed_below
    }

    pub fn closed_above(&self) -> bool {
        self.closed_above
    }

    pub fn is_anchored(&self) -> bool {
        self.closed_below && self.closed_above
    }

    /// Coefficient of `z^k`; zero beyond a closed side, an error beyond an
    /// open one.
    pub fn coeff(&self, k: i64) -> Result<QLaurent> {
        if k < self.lo {
            if self.closed_below {
                return Ok(QLaurent::zero(self.order));
            }
            return Err(QError::WindowUnderspecified(format!("z^{k} lies below the open lower edge z^{}", self.lo)));
        }
        if k > self.hi() {
            if self.closed_above {
                return Ok(QLaurent::zero(self.order));
            }
            return Err(QError::WindowUnderspecified(format!("z^{k} lies above the open upper edge z^{}", self.hi())));
        }
        Ok(self.coeffs[(k - self.lo) as usize].clone())
    }

    fn stored(&self, k: i64) -> Option<&QLaurent> {
        if k < self.lo {
            return None;
        }
        self.coeffs.get((k - self.lo) as usize)
    }

    fn known(&self, k: i64) -> bool {
        (k >= self.lo || self.closed_below) && (k <= self.hi() || self.closed_above)
    }

    /// Restrict or extend the window. Extending past an open side fails.
    pub fn with_window(&self, lo: i64, hi: i64) -> Result<ZSeries> {
        if lo > hi {
            return Err(QError::InvalidArgument(format!("empty z-window [{lo}, {hi}]")));
        }
        let coeffs = (lo..=hi).map(|k| self.coeff(k)).collect::<Result<Vec<_>>>()?;
        let closed_below = self.closed_below && lo <= self.lo;
        let closed_above = self.closed_above && hi >= self.hi();
        ZSeries::from_parts(lo, coeffs, self.order, closed_below, closed_above)
    }

    /// Coefficientwise sum. The result window covers the exponents where
    /// both operands are known.
    pub fn checked_add(&self, other: &ZSeries) -> Result<ZSeries> {
        if self.order != other.order {
            return Err(QError::OrderMismatch { left: self.order, right: other.order });
        }
        let lo = match (self.closed_below, other.closed_below) {
            (true, true) => self.lo.min(other.lo),
            (true, false) => other.lo,
            (false, true) => self.lo,
            (false, false) => self.lo.max(other.lo),
        };
        let hi = match (self.closed_above, other.closed_above) {
            (true, true) => self.hi().max(other.hi()),
            (true, false) => other.hi(),
            (false, true) => self.hi(),
            (false, false) => self.hi().min(other.hi()),
        };
        if lo > hi {
            return Err(QError::WindowUnderspecified("operands share no known z-exponent".into()));
        }
        let coeffs = (lo..=hi).map(|k| self.coeff(k)?.checked_add(&other.coeff(k)?)).collect::<Result<Vec<_>>>()?;
        ZSeries::from_parts(
            lo,
            coeffs,
            self.order,
            self.closed_below && other.closed_below,
            self.closed_above && other.closed_above,
        )
    }

    /// Multiply every coefficient by the z-free series `s`.
    pub fn scale(&self, s: &QLaurent) -> Result<ZSeries> {
        let coeffs = self.coeffs.iter().map(|c| c.checked_mul(s)).collect::<Result<Vec<_>>>()?;
        ZSeries::from_parts(self.lo, coeffs, self.order, self.closed_below, self.closed_above)
    }

    /// The `z^0` coefficient.
    pub fn ct(&self) -> Result<QLaurent> {
        self.coeff(0)
    }

    /// First `(z-exponent, q-mismatch)` where the two series differ on
    /// `[lo, hi]`; both must be known there.
    pub fn first_mismatch_on(&self, other: &ZSeries, lo: i64, hi: i64) -> Result<Option<(i64, Mismatch)>> {
        for k in lo..=hi {
            if let Some(m) = self.coeff(k)?.first_mismatch(&other.coeff(k)?) {
                return Ok(Some((k, m)));
            }
        }
        Ok(None)
    }

    /// The window on which both series are known.
    pub fn shared_window(&self, other: &ZSeries) -> Option<(i64, i64)> {
        let lo = if self.closed_below && other.closed_below {
            self.lo.min(other.lo)
        } else if self.closed_below {
            other.lo
        } else if other.closed_below {
            self.lo
        } else {
            self.lo.max(other.lo)
        };
        let hi = if self.closed_above && other.closed_above {
            self.hi().max(other.hi())
        } else if self.closed_above {
            other.hi()
        } else if other.closed_above {
            self.hi()
        } else {
            self.hi().min(other.hi())
        };
        (lo <= hi).then_some((lo, hi))
    }
}

/// The range of result exponents `k` for which `sum_i a_i b_(k-i)` involves
/// only known coefficients (`None` bounds are unrestricted).
fn determined_range(a: &ZSeries, b: &ZSeries) -> Option<(Option<i64>, Option<i64>)> {
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    let raise = |v: &mut Option<i64>, x: i64| *v = Some(v.map_or(x, |y: i64| y.max(x)));
    let lower = |v: &mut Option<i64>, x: i64| *v = Some(v.map_or(x, |y: i64| y.min(x)));
    for (x, y) in [(a, b), (b, a)] {
        if !x.closed_below {
            // unknown x_i for i < x.lo pair with y_j, j > k - x.lo
            if !y.closed_above {
                return None;
            }
            raise(&mut lo, x.lo + y.hi());
        }
        if !x.closed_above {
            if !y.closed_below {
                return None;
            }
            lower(&mut hi, x.hi() + y.lo);
        }
    }
    Some((lo, hi))
}

/// Convolution in `z` with coefficientwise `q`-series products.
///
/// Without an explicit window at least one operand must be anchored; the
/// result then spans every determined exponent. With a window, every
/// exponent in it must be determined by the known coefficients.
pub fn zmul(a: &ZSeries, b: &ZSeries, window: Option<(i64, i64)>) -> Result<ZSeries> {
    if a.order != b.order {
        return Err(QError::OrderMismatch { left: a.order, right: b.order });
    }
    let (det_lo, det_hi) = determined_range(a, b).ok_or_else(|| {
        QError::WindowUnderspecified("operands are open on opposite sides; the product is not determined".into())
    })?;
    let nat_lo = a.lo + b.lo;
    let nat_hi = a.hi() + b.hi();
    let (lo, hi) = match window {
        Some((lo, hi)) => {
            if lo > hi {
                return Err(QError::InvalidArgument(format!("empty z-window [{lo}, {hi}]")));
            }
            if det_lo.is_some_and(|d| lo < d) || det_hi.is_some_and(|d| hi > d) {
                return Err(QError::WindowUnderspecified(format!(
                    "requested z-window [{lo}, {hi}] exceeds the determined range [{}, {}]",
                    det_lo.map_or("-inf".into(), |d| d.to_string()),
                    det_hi.map_or("inf".into(), |d| d.to_string())
                )));
            }
            (lo, hi)
        }
        None => {
            if !a.is_anchored() && !b.is_anchored() {
                return Err(QError::WindowUnderspecified(
                    "neither operand is anchored; supply an explicit z-window".into(),
                ));
            }
            (det_lo.unwrap_or(nat_lo), det_hi.unwrap_or(nat_hi))
        }
    };
    if lo > hi {
        return Err(QError::WindowUnderspecified("the product has no determined z-exponent".into()));
    }
    let order = a.order;
    let mut coeffs = Vec::with_capacity((hi - lo + 1) as usize);
    for k in lo..=hi {
        let mut acc = QLaurent::zero(order);
        let (ilo, ihi) = ((k - b.hi()).max(a.lo), (k - b.lo).min(a.hi()));
        for i in ilo..=ihi {
            let (Some(x), Some(y)) = (a.stored(i), b.stored(k - i)) else {
                continue;
            };
            if x.is_zero() || y.is_zero() {
                continue;
            }
            debug_assert!(a.known(i) && b.known(k - i));
            acc = acc.checked_add(&x.checked_mul(y)?)?;
        }
        coeffs.push(acc);
    }
    let closed_below = a.closed_below && b.closed_below && lo <= nat_lo;
    let closed_above = a.closed_above && b.closed_above && hi >= nat_hi;
    ZSeries::from_parts(lo, coeffs, order, closed_below, closed_above)
}

impl fmt::Display for ZSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.window();
        writeln!(
            f,
            "z-window [{lo}, {hi}] ({} below, {} above)",
            if self.closed_below { "closed" } else { "open" },
            if self.closed_above { "closed" } else { "open" }
        )?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                writeln!(f, "  z^{}: {}", self.lo + i as i64, c)?;
            }
        }
        Ok(())
    }
}
