use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{QError, Result};

/// `coeff * q^q_exp`. A zero coefficient marks the zero monomial, for which
/// every Pochhammer symbol `(0; q)_n` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigRational,
    pub q_exp: i64,
}

impl Monomial {
    pub fn new(coeff: BigRational, q_exp: i64) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Monomial { coeff, q_exp }
    }

    pub fn from_int(coeff: i64, q_exp: i64) -> Self {
        Self::new(BigRational::from_integer(coeff.into()), q_exp)
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::from_int(1, e)
    }

    /// `-q^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        Self::from_int(-1, e)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_int(c, 0)
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn zero() -> Self {
        Monomial { coeff: BigRational::zero(), q_exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn neg(&self) -> Self {
        Monomial { coeff: -self.coeff.clone(), q_exp: self.q_exp }
    }

    pub fn mul(&self, other: &Monomial) -> Self {
        Self::new(&self.coeff * &other.coeff, self.q_exp + other.q_exp)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Monomial { coeff: self.coeff.clone(), q_exp: self.q_exp + e }
    }

    pub fn div(&self, other: &Monomial) -> Result<Self> {
        if other.is_zero() {
            return Err(QError::InvalidArgument("division by the zero monomial".into()));
        }
        Ok(Self::new(&self.coeff / &other.coeff, self.q_exp - other.q_exp))
    }

    pub fn recip(&self) -> Result<Self> {
        Monomial::one().div(self)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            let c = num_traits::pow::pow(self.coeff.clone(), k as usize);
            Ok(Self::new(c, self.q_exp * k))
        } else {
            self.recip()?.pow(-k)
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.q_exp == 0 {
            return write!(f, "{}", self.coeff);
        }
        let c = &self.coeff;
        if c.is_one() {
        } else if (-c).is_one() {
            write!(f, "-")?;
        } else if c.is_integer() {
            write!(f, "{}", c)?;
        } else {
            write!(f, "({})", c)?;
        }
        match self.q_exp {
            1 => write!(f, "q"),
            e => write!(f, "q^{}", e),
        }
    }
}

/// Accepts forms such as `q`, `-q^2`, `3q^-1`, `1/2q`, `(1/2)q^3`, `0`, `-1`.
impl FromStr for Monomial {
    type Err = QError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || QError::InvalidArgument(format!("cannot parse monomial `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let (coeff_part, q_part) = match t.find('q') {
            Some(i) => (&t[..i], Some(&t[i + 1..])),
            None => (t.as_str(), None),
        };
        let coeff_part = coeff_part.trim_start_matches('(').trim_end_matches(')');
        let coeff_part = coeff_part.replace("(", "").replace(")", "");
        let coeff = match coeff_part.as_str() {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_rational(c).ok_or_else(bad)?,
        };
        let q_exp = match q_part {
            None => 0,
            Some("") => 1,
            Some(rest) => {
                let e = rest.strip_prefix('^').ok_or_else(bad)?;
                let e = e.trim_start_matches('(').trim_end_matches(')');
                e.parse::<i64>().map_err(|_| bad())?
            }
        };
        Ok(Monomial::new(coeff, q_exp))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for (s, c, e) in [("q", 1, 1), ("-q^2", -1, 2), ("3q^-1", 3, -1), ("-1", -1, 0), ("q^0", 1, 0)] {
            let m: Monomial = s.parse().unwrap();
            assert_eq!(m, Monomial::from_int(c, e), "{s}");
        }
        let half: Monomial = "1/2q^3".parse().unwrap();
        assert_eq!(half.coeff, BigRational::new(1.into(), 2.into()));
        assert_eq!(half.q_exp, 3);
        assert!("0".parse::<Monomial>().unwrap().is_zero());
        assert!("x".parse::<Monomial>().is_err());
        assert_eq!(Monomial::neg_q_pow(2).to_string(), "-q^2");
        assert_eq!(Monomial::q_pow(1).to_string(), "q");
        let m = Monomial::from_int(-3, 4);
        assert_eq!(m.to_string().parse::<Monomial>().unwrap(), m);
    }

    #[test]
    fn arithmetic() {
        let a = Monomial::from_int(-2, 3);
        assert_eq!(a.pow(2).unwrap(), Monomial::from_int(4, 6));
        assert_eq!(a.pow(0).unwrap(), Monomial::one());
        let inv = a.pow(-1).unwrap();
        assert_eq!(inv.mul(&a), Monomial::one());
        assert!(Monomial::zero().recip().is_err());
    }
}
