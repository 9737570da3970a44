use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{QError, Result};

/// A Laurent series in `q` with exact rational coefficients, trusted through
/// `q^order` inclusive.
///
/// Stored densely from the lowest nonzero exponent up to the highest nonzero
/// exponent not exceeding `order`. The representation is canonical: the first
/// and last stored coefficients are nonzero, so structural equality coincides
/// with coefficientwise equality at equal orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QLaurent {
    min_exp: i64,
    order: i64,
    coeffs: Vec<BigRational>,
}

/// Coefficientwise disagreement between two series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub q_exp: i64,
    pub lhs: String,
    pub rhs: String,
}

impl QLaurent {
    pub fn zero(order: i64) -> Self {
        QLaurent { min_exp: 0, order, coeffs: Vec::new() }
    }

    pub fn one(order: i64) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: i64) -> Self {
        Self::from_dense(0, vec![c], order)
    }

    pub fn monomial(m: &Monomial, order: i64) -> Self {
        Self::from_dense(m.q_exp, vec![m.coeff.clone()], order)
    }

    /// Builds a series from coefficients of `q^min_exp, q^(min_exp+1), ...`;
    /// entries above `order` are discarded.
    pub fn from_dense(min_exp: i64, coeffs: Vec<BigRational>, order: i64) -> Self {
        let mut s = QLaurent { min_exp, order, coeffs };
        s.normalize();
        s
    }

    /// Integer coefficients of `q^0, q^1, ...`.
    pub fn from_ints(coeffs: &[i64], order: i64) -> Self {
        let v = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self::from_dense(0, v, order)
    }

    pub fn from_bigints(min_exp: i64, coeffs: &[BigInt], order: i64) -> Self {
        let v = coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Self::from_dense(min_exp, v, order)
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I>(terms: I, order: i64) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(e, _)| *e <= order).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero(order);
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            v[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, v, order)
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.min_exp + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.min_exp = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn get(&self, e: i64) -> Option<&BigRational> {
        if e < self.min_exp {
            return None;
        }
        self.coeffs.get((e - self.min_exp) as usize).filter(|c| !c.is_zero())
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    /// Coefficients of `q^0..=q^order` (negative powers are not shown).
    pub fn dense_from_zero(&self) -> Vec<BigRational> {
        (0..=self.order.max(-1)).map(|e| self.coeff(e)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check_order(&self, other: &QLaurent) -> Result<()> {
        if self.order != other.order {
            return Err(QError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &QLaurent) -> Result<QLaurent> {
        self.check_order(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &QLaurent) -> Result<QLaurent> {
        self.check_order(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &QLaurent, subtract: bool) -> QLaurent {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { other.negate() } else { other.clone() };
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(self.min_exp - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut v[(other.min_exp - lo) as usize + i];
            if subtract {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        QLaurent::from_dense(lo, v, self.order)
    }

    pub fn negate(&self) -> QLaurent {
        QLaurent { min_exp: self.min_exp, order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Cauchy product, discarding exponents above the common order.
    pub fn checked_mul(&self, other: &QLaurent) -> Result<QLaurent> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(QLaurent::zero(self.order));
        }
        let lo = self.min_exp + other.min_exp;
        if lo > self.order {
            return Ok(QLaurent::zero(self.order));
        }
        let len = ((self.order - lo + 1) as usize).min(self.coeffs.len() + other.coeffs.len() - 1);
        let mut v = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        Ok(QLaurent::from_dense(lo, v, self.order))
    }

    /// Multiplicative inverse of a power series with nonzero constant term.
    pub fn inverse(&self) -> Result<QLaurent> {
        if self.is_zero() || self.min_exp != 0 {
            return Err(QError::NotInvertible);
        }
        let n = (self.order + 1).max(0) as usize;
        let inv0 = self.coeffs[0].recip();
        let mut b: Vec<BigRational> = Vec::with_capacity(n);
        if n > 0 {
            b.push(inv0.clone());
        }
        for k in 1..n {
            let mut acc = BigRational::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &b[k - j];
                }
            }
            b.push(-(acc * &inv0));
        }
        Ok(QLaurent::from_dense(0, b, self.order))
    }

    pub fn checked_div(&self, other: &QLaurent) -> Result<QLaurent> {
        self.checked_mul(&other.inverse()?)
    }

    /// Multiply by `m.coeff * q^m.q_exp`; exponents pushed above the order
    /// are dropped.
    pub fn scale_monomial(&self, m: &Monomial) -> QLaurent {
        if m.is_zero() || self.is_zero() {
            return QLaurent::zero(self.order);
        }
        QLaurent::from_dense(self.min_exp + m.q_exp, self.coeffs.iter().map(|c| c * &m.coeff).collect(), self.order)
    }

    pub fn scale(&self, c: &BigRational) -> QLaurent {
        self.scale_monomial(&Monomial::new(c.clone(), 0))
    }

    /// `q -> q^k` for `k >= 1`. The order is kept; images above it are dropped.
    pub fn substitute_power(&self, k: i64) -> Result<QLaurent> {
        if k < 1 {
            return Err(QError::InvalidArgument(format!("substitute_power needs k >= 1, got {k}")));
        }
        Ok(QLaurent::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())), self.order))
    }

    /// `q -> -q`.
    pub fn substitute_negate(&self) -> QLaurent {
        QLaurent {
            min_exp: self.min_exp,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (self.min_exp + i as i64).rem_euclid(2) == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Drop everything above `order` (which must not exceed the current one).
    pub fn truncate(&self, order: i64) -> Result<QLaurent> {
        if order > self.order {
            return Err(QError::InsufficientOrder { have: self.order, want: order });
        }
        Ok(QLaurent::from_dense(self.min_exp, self.coeffs.clone(), order))
    }

    /// First exponent (up to the common order) where the two series differ.
    pub fn first_mismatch(&self, other: &QLaurent) -> Option<Mismatch> {
        let order = self.order.min(other.order);
        let lo = [self.min_exp(), other.min_exp()].into_iter().flatten().min()?;
        (lo..=order).find_map(|e| {
            let (a, b) = (self.coeff(e), other.coeff(e));
            (a != b).then(|| Mismatch { q_exp: e, lhs: a.to_string(), rhs: b.to_string() })
        })
    }

    /// Exact `(exponent, numerator, denominator)` triples of the nonzero terms.
    pub fn to_triples(&self) -> Vec<(i64, String, String)> {
        self.terms().map(|(e, c)| (e, c.numer().to_string(), c.denom().to_string())).collect()
    }

    /// In-place multiplication by `(1 - c q^e)`, `e >= 1`, on a dense buffer
    /// holding exponents `0..buf.len()`.
    pub(crate) fn mul_binomial_dense(buf: &mut [BigRational], c: &BigRational, e: usize) {
        for i in (e..buf.len()).rev() {
            if !buf[i - e].is_zero() {
                let t = &buf[i - e] * c;
                buf[i] -= t;
            }
        }
    }

    /// In-place division by `(1 - c q^e)`, `e >= 1`.
    pub(crate) fn div_binomial_dense(buf: &mut [BigRational], c: &BigRational, e: usize) {
        for i in e..buf.len() {
            if !buf[i - e].is_zero() {
                let t = &buf[i - e] * c;
                buf[i] += t;
            }
        }
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O(q^{})", self.order + 1);
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_c = !abs.is_one() || e == 0;
            if show_c {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QLaurent> for &QLaurent {
            type Output = QLaurent;
            fn $method(self, rhs: &QLaurent) -> QLaurent {
                self.$checked(rhs).expect("truncation orders must agree")
            }
        }
        impl $tr<QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $method(self, rhs: QLaurent) -> QLaurent {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.negate()
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.negate()
    }
}
