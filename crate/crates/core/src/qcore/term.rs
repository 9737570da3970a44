use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, QLaurent};
use crate::error::{QError, Result};

/// A product `scalar * q^shift * prod (1 - c q^e)^{+-1}` with every stored
/// binomial normalized to `e >= 1`, so `shift` is the exact valuation.
///
/// Terms of hypergeometric-type sums are assembled here and only expanded
/// once the truncation order is known, which keeps negative exponents (from
/// negative-index Pochhammer symbols) exact.
#[derive(Clone, Debug)]
pub struct Term {
    scalar: BigRational,
    shift: i64,
    num: Vec<(BigRational, i64)>,
    den: Vec<(BigRational, i64)>,
    // (c, e0, step): prod_{j>=0} (1 - c q^(e0 + step j)), with e0 >= 1
    num_inf: Vec<(BigRational, i64, i64)>,
    den_inf: Vec<(BigRational, i64, i64)>,
}

impl Default for Term {
    fn default() -> Self {
        Self::one()
    }
}

impl Term {
    pub fn one() -> Self {
        Term {
            scalar: BigRational::one(),
            shift: 0,
            num: Vec::new(),
            den: Vec::new(),
            num_inf: Vec::new(),
            den_inf: Vec::new(),
        }
    }

    pub fn from_monomial(m: &Monomial) -> Self {
        let mut t = Self::one();
        t.times_monomial(m);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Exact lowest exponent, `None` for the zero term.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.shift)
    }

    pub fn times_monomial(&mut self, m: &Monomial) -> &mut Self {
        self.scalar *= &m.coeff;
        self.shift += m.q_exp;
        self
    }

    pub fn times_scalar(&mut self, c: &BigRational) -> &mut Self {
        self.scalar *= c;
        self
    }

    /// Multiply by `(1 - a)`.
    pub fn times_binomial(&mut self, a: &Monomial) -> &mut Self {
        if a.is_zero() {
            return self;
        }
        let (c, e) = (&a.coeff, a.q_exp);
        match e.cmp(&0) {
            std::cmp::Ordering::Greater => self.num.push((c.clone(), e)),
            std::cmp::Ordering::Equal => self.scalar *= BigRational::one() - c,
            std::cmp::Ordering::Less => {
                // 1 - c q^e = -c q^e (1 - c^-1 q^-e)
                self.scalar *= -c;
                self.shift += e;
                self.num.push((c.recip(), -e));
            }
        }
        self
    }

    /// Divide by `(1 - a)`.
    pub fn divide_binomial(&mut self, a: &Monomial) -> Result<&mut Self> {
        if a.is_zero() {
            return Ok(self);
        }
        let (c, e) = (&a.coeff, a.q_exp);
        match e.cmp(&0) {
            std::cmp::Ordering::Greater => self.den.push((c.clone(), e)),
            std::cmp::Ordering::Equal => {
                let f = BigRational::one() - c;
                if f.is_zero() {
                    return Err(QError::SingularTerm(format!("division by (1 - {a})")));
                }
                self.scalar /= f;
            }
            std::cmp::Ordering::Less => {
                self.scalar /= -c;
                self.shift -= e;
                self.den.push((c.recip(), -e));
            }
        }
        Ok(self)
    }

    /// Multiply by `(a; q^step)_n`; negative `n` uses
    /// `(a; Q)_{-k} = 1 / (a Q^{-k}; Q)_k`.
    pub fn times_poch(&mut self, a: &Monomial, step: i64, n: i64) -> Result<&mut Self> {
        if a.is_zero() {
            return Ok(self);
        }
        if n >= 0 {
            for j in 0..n {
                self.times_binomial(&a.shift(step * j));
            }
        } else {
            for j in 0..-n {
                self.divide_binomial(&a.shift(step * (j + n)))?;
            }
        }
        Ok(self)
    }

    /// Divide by `(a; q^step)_n`, same negative-index convention.
    pub fn divide_poch(&mut self, a: &Monomial, step: i64, n: i64) -> Result<&mut Self> {
        if a.is_zero() {
            return Ok(self);
        }
        if n >= 0 {
            for j in 0..n {
                self.divide_binomial(&a.shift(step * j))?;
            }
        } else {
            for j in 0..-n {
                self.times_binomial(&a.shift(step * (j + n)));
            }
        }
        Ok(self)
    }

    /// Multiply by `(a; q^step)_inf`. Finitely many factors with nonpositive
    /// exponent are applied exactly; the tail is deferred to expansion time.
    pub fn times_poch_inf(&mut self, a: &Monomial, step: i64) -> Result<&mut Self> {
        if a.is_zero() {
            return Ok(self);
        }
        let (first, head) = split_infinite(a, step)?;
        for j in 0..head {
            self.times_binomial(&a.shift(step * j));
        }
        self.num_inf.push((a.coeff.clone(), first, step));
        Ok(self)
    }

    pub fn divide_poch_inf(&mut self, a: &Monomial, step: i64) -> Result<&mut Self> {
        if a.is_zero() {
            return Ok(self);
        }
        let (first, head) = split_infinite(a, step)?;
        for j in 0..head {
            self.divide_binomial(&a.shift(step * j))?;
        }
        self.den_inf.push((a.coeff.clone(), first, step));
        Ok(self)
    }

    /// Product of two terms.
    pub fn times_term(&mut self, other: &Term) -> &mut Self {
        self.scalar *= &other.scalar;
        self.shift += other.shift;
        self.num.extend(other.num.iter().cloned());
        self.den.extend(other.den.iter().cloned());
        self.num_inf.extend(other.num_inf.iter().cloned());
        self.den_inf.extend(other.den_inf.iter().cloned());
        self
    }

    /// `1 / self`; fails for the zero term.
    pub fn recip(&self) -> Result<Term> {
        if self.is_zero() {
            return Err(QError::NotInvertible);
        }
        Ok(Term {
            scalar: self.scalar.recip(),
            shift: -self.shift,
            num: self.den.clone(),
            den: self.num.clone(),
            num_inf: self.den_inf.clone(),
            den_inf: self.num_inf.clone(),
        })
    }

    /// Expand through `q^order`.
    pub fn build(&self, order: i64) -> QLaurent {
        if self.is_zero() || self.shift > order {
            return QLaurent::zero(order);
        }
        let width = (order - self.shift) as usize;
        let mut buf = vec![BigRational::zero(); width + 1];
        buf[0] = self.scalar.clone();
        for (c, e) in &self.num {
            if (*e as usize) <= width {
                QLaurent::mul_binomial_dense(&mut buf, c, *e as usize);
            }
        }
        for (c, e, step) in &self.num_inf {
            let mut x = *e;
            while x as usize <= width {
                QLaurent::mul_binomial_dense(&mut buf, c, x as usize);
                x += step;
            }
        }
        for (c, e) in &self.den {
            if (*e as usize) <= width {
                QLaurent::div_binomial_dense(&mut buf, c, *e as usize);
            }
        }
        for (c, e, step) in &self.den_inf {
            let mut x = *e;
            while x as usize <= width {
                QLaurent::div_binomial_dense(&mut buf, c, x as usize);
                x += step;
            }
        }
        QLaurent::from_dense(self.shift, buf, order)
    }
}

/// For `(a; q^step)_inf`, returns the exponent of the first factor with a
/// positive exponent and how many factors precede it.
fn split_infinite(a: &Monomial, step: i64) -> Result<(i64, i64)> {
    if step < 1 {
        return Err(QError::DivergentProduct(format!("base q^{step} does not advance")));
    }
    let mut head = 0;
    let mut e = a.q_exp;
    while e <= 0 {
        head += 1;
        e += step;
    }
    Ok((e, head))
}

/// `(a; q^step)_n` truncated at `order`; `(a; q)_0 = 1` and `(0; q)_n = 1`.
pub fn pochhammer_finite(a: &Monomial, step: i64, n: i64, order: i64) -> Result<QLaurent> {
    if step < 1 {
        return Err(QError::InvalidArgument(format!("Pochhammer base q^{step} must have step >= 1")));
    }
    if n < 0 {
        return Err(QError::InvalidArgument(format!("finite Pochhammer length {n} is negative")));
    }
    Ok(Term::one().times_poch(a, step, n)?.build(order))
}

/// `(a; q^step)_inf` truncated at `order`. Requires `a.q_exp >= 0` so that
/// every factor is a power series.
pub fn pochhammer_infinite(a: &Monomial, step: i64, order: i64) -> Result<QLaurent> {
    if a.is_zero() {
        return Ok(QLaurent::one(order));
    }
    if step < 1 {
        return Err(QError::DivergentProduct(format!("base q^{step} does not advance")));
    }
    if a.q_exp < 0 {
        return Err(QError::DivergentProduct(format!("({a}; q^{step})_inf has factors with negative q-degree")));
    }
    Ok(Term::one().times_poch_inf(a, step)?.build(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[i64], n: i64) -> QLaurent {
        QLaurent::from_ints(c, n)
    }

    #[test]
    fn finite_examples() {
        assert_eq!(pochhammer_finite(&Monomial::q_pow(1), 1, 0, 6).unwrap(), QLaurent::one(6));
        assert_eq!(pochhammer_finite(&Monomial::neg_q_pow(1), 2, 2, 6).unwrap(), s(&[1, 1, 0, 1, 1], 6));
        // (1-q)(1-q^2)(1-q^3), expanded by hand
        assert_eq!(pochhammer_finite(&Monomial::q_pow(1), 1, 3, 8).unwrap(), s(&[1, -1, -1, 0, 1, 1, -1], 8));
        assert_eq!(pochhammer_finite(&Monomial::zero(), 1, 5, 6).unwrap(), QLaurent::one(6));
        assert_eq!(pochhammer_finite(&Monomial::one(), 1, 2, 6).unwrap(), QLaurent::zero(6));
    }

    #[test]
    fn inverse_of_finite_poch_counts_bounded_partitions() {
        // partitions of k into parts <= 3, enumerated by hand: 1,1,2,3,4,5,7
        let p = pochhammer_finite(&Monomial::q_pow(1), 1, 3, 6).unwrap();
        assert_eq!(p.inverse().unwrap(), s(&[1, 1, 2, 3, 4, 5, 7], 6));
    }

    #[test]
    fn infinite_examples() {
        assert_eq!(
            pochhammer_infinite(&Monomial::q_pow(1), 1, 12).unwrap(),
            s(&[1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1], 12)
        );
        assert_eq!(pochhammer_infinite(&Monomial::neg_q_pow(1), 1, 6).unwrap(), s(&[1, 1, 1, 2, 2, 3, 4], 6));
        assert_eq!(pochhammer_infinite(&Monomial::q_pow(13), 1, 12).unwrap(), QLaurent::one(12));
        assert!(matches!(pochhammer_infinite(&Monomial::q_pow(-1), 1, 12), Err(QError::DivergentProduct(_))));
        // (-1; q^2)_inf = 2 (-q^2; q^2)_inf
        let lhs = pochhammer_infinite(&Monomial::constant(-1), 2, 10).unwrap();
        let rhs = pochhammer_infinite(&Monomial::neg_q_pow(2), 2, 10).unwrap();
        assert_eq!(lhs, rhs.scale(&BigRational::from_integer(2.into())));
    }

    #[test]
    fn negative_index_pochhammer() {
        // (b; q)_{-1} = 1/(1 - b q^-1); with b = q^3 this is 1/(1-q^2)
        let mut t = Term::one();
        t.times_poch(&Monomial::q_pow(3), 1, -1).unwrap();
        let expect = s(&[1, 0, -1], 6).inverse().unwrap();
        assert_eq!(t.build(6), expect);
        // (q^2; q)_{-2} = 1/((1-1)(1-q)) is singular
        let mut t = Term::one();
        assert!(matches!(t.times_poch(&Monomial::q_pow(2), 1, -2), Err(QError::SingularTerm(_))));
    }

    #[test]
    fn laurent_factors_are_exact() {
        // (1 - q^-2) (1 + q^-1) = 1 + q^-1 - q^-2 - q^-3
        let mut t = Term::one();
        t.times_binomial(&Monomial::q_pow(-2)).times_binomial(&Monomial::neg_q_pow(-1));
        assert_eq!(t.valuation(), Some(-3));
        let built = t.build(2);
        assert_eq!(built.min_exp(), Some(-3));
        assert_eq!(built.to_triples().len(), 4);
        // dividing back restores 1
        t.divide_binomial(&Monomial::q_pow(-2)).unwrap();
        t.divide_binomial(&Monomial::neg_q_pow(-1)).unwrap();
        assert_eq!(t.build(9), QLaurent::one(9));
    }
}
