use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{QError, Result};

/// An exponent polynomial in bound variables, kept as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poly {
    Int(i64),
    Var(String),
    Neg(Box<Poly>),
    Add(Box<Poly>, Box<Poly>),
    Sub(Box<Poly>, Box<Poly>),
    Mul(Box<Poly>, Box<Poly>),
    /// Division by a positive integer literal, as in `n(n-1)/2`.
    Div(Box<Poly>, i64),
    Pow(Box<Poly>, u32),
}

type Q = Ratio<i128>;

/// Monomials (sorted variable lists) to coefficients.
pub type Expanded = BTreeMap<Vec<String>, Q>;

fn add_into(acc: &mut Expanded, other: &Expanded, sign: i128) {
    for (k, v) in other {
        let e = acc.entry(k.clone()).or_insert_with(Q::zero);
        *e += *v * sign;
    }
    acc.retain(|_, v| !v.is_zero());
}

fn mul(a: &Expanded, b: &Expanded) -> Expanded {
    let mut out = Expanded::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let mut k = ka.clone();
            k.extend(kb.iter().cloned());
            k.sort();
            *out.entry(k).or_insert_with(Q::zero) += *va * *vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl Poly {
    pub fn expand(&self) -> Expanded {
        match self {
            Poly::Int(c) => {
                let mut m = Expanded::new();
                if *c != 0 {
                    m.insert(vec![], Q::from_integer(*c as i128));
                }
                m
            }
            Poly::Var(v) => Expanded::from([(vec![v.clone()], Q::one())]),
            Poly::Neg(a) => {
                let mut m = Expanded::new();
                add_into(&mut m, &a.expand(), -1);
                m
            }
            Poly::Add(a, b) | Poly::Sub(a, b) => {
                let mut m = a.expand();
                add_into(&mut m, &b.expand(), if matches!(self, Poly::Add(..)) { 1 } else { -1 });
                m
            }
            Poly::Mul(a, b) => mul(&a.expand(), &b.expand()),
            Poly::Div(a, k) => a.expand().into_iter().map(|(m, v)| (m, v / Q::from_integer(*k as i128))).collect(),
            Poly::Pow(a, k) => {
                let base = a.expand();
                let mut m = Expanded::from([(vec![], Q::one())]);
                for _ in 0..*k {
                    m = mul(&m, &base);
                }
                m
            }
        }
    }

    /// Total degree after expansion (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.expand().keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Variables occurring in the written form.
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Poly::Int(_) => {}
            Poly::Var(v) => out.push(v.clone()),
            Poly::Neg(a) | Poly::Div(a, _) | Poly::Pow(a, _) => a.vars(out),
            Poly::Add(a, b) | Poly::Sub(a, b) | Poly::Mul(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    fn value(&self, env: &dyn Fn(&str) -> Option<i64>) -> Result<Q> {
        Ok(match self {
            Poly::Int(c) => Q::from_integer(*c as i128),
            Poly::Var(v) => {
                let x = env(v).ok_or_else(|| QError::InvalidArgument(format!("unbound variable `{v}`")))?;
                Q::from_integer(x as i128)
            }
            Poly::Neg(a) => -a.value(env)?,
            Poly::Add(a, b) => a.value(env)? + b.value(env)?,
            Poly::Sub(a, b) => a.value(env)? - b.value(env)?,
            Poly::Mul(a, b) => a.value(env)? * b.value(env)?,
            Poly::Div(a, k) => a.value(env)? / Q::from_integer(*k as i128),
            Poly::Pow(a, k) => {
                let b = a.value(env)?;
                (0..*k).fold(Q::one(), |acc, _| acc * b)
            }
        })
    }

    /// Integer value under the given bindings.
    pub fn eval(&self, env: &dyn Fn(&str) -> Option<i64>) -> Result<i64> {
        let v = self.value(env)?;
        if !v.is_integer() {
            return Err(QError::InvalidArgument(format!("exponent ({self}) takes the non-integer value {v}")));
        }
        i64::try_from(v.to_integer()).map_err(|_| QError::InvalidArgument(format!("exponent ({self}) overflows")))
    }

    fn prec(&self) -> u8 {
        match self {
            Poly::Add(..) | Poly::Sub(..) => 1,
            Poly::Div(..) => 2,
            Poly::Mul(..) => 3,
            Poly::Neg(_) => 4,
            Poly::Pow(..) => 5,
            Poly::Int(_) | Poly::Var(_) => 6,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Poly::Int(c) => write!(f, "{c}"),
            Poly::Var(v) => write!(f, "{v}"),
            Poly::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 4)
            }
            Poly::Add(a, b) | Poly::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " {} ", if matches!(self, Poly::Add(..)) { '+' } else { '-' })?;
                b.write_at(f, 2)
            }
            Poly::Mul(a, b) => {
                a.write_at(f, 3)?;
                let right = format!("{}", Wrap(b, 4));
                if right.starts_with('-') {
                    write!(f, " * {right}")
                } else {
                    write!(f, " {right}")
                }
            }
            Poly::Div(a, k) => {
                a.write_at(f, 2)?;
                write!(f, " / {k}")
            }
            Poly::Pow(a, k) => {
                a.write_at(f, 6)?;
                write!(f, "^{k}")
            }
        }
    }
}

struct Wrap<'a>(&'a Poly, u8);

impl fmt::Display for Wrap<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.write_at(f, self.1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}
