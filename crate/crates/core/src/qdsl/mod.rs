//! A small expression language for q-series.
//!
//! ```text
//! sum n=0..inf q^(n^2) / poch(q, q, n)
//! prod n=1..inf 1/((1 - q^(5n-1)) (1 - q^(5n-4)))
//! ```
//!
//! Multiplication (written `*` or by juxtaposition) binds tighter than `/`,
//! so `q^n / poch(q,q,n) poch(q^2,q^2,n)` divides by both symbols. Unary
//! minus applies to a whole power: `-q^2` is `-(q^2)`. Exponents are integer
//! literals or parenthesized polynomials of degree at most 2 in the bound
//! variables; they may divide by an integer literal, as in `q^(n(n-1)/2)`.
//! A `sum` upper bound is a single factor (`..inf`, `..5`, `..(m+1)`); the
//! body of `sum`, `bisum` and `prod` extends as far right as possible.

mod eval;
mod format;
mod lexer;
mod parser;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

pub use eval::{eval, eval_with};
pub use poly::Poly;

/// Exponent of a power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exponent {
    Int(i64),
    Poly(Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Q,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Exponent),
    /// `(a; base)_count`, `count = None` for `inf`.
    Poch {
        a: Box<Expr>,
        base: Box<Expr>,
        count: Option<Box<Expr>>,
    },
    Sum {
        var: String,
        lower: Box<Expr>,
        upper: Option<Box<Expr>>,
        body: Box<Expr>,
    },
    BiSum {
        var: String,
        body: Box<Expr>,
    },
    Prod {
        var: String,
        lower: Box<Expr>,
        body: Box<Expr>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    UnboundVariable(String),
    NonQuadratic,
}

/// A parse failure with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn syntax(line: usize, col: usize, message: String, expected: Vec<String>) -> Self {
        ParseError { line, col, kind: ParseErrorKind::Syntax, message, expected }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

/// Parse one expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    parser::parse_at(text, 1)
}

/// Canonical text of an expression; `parse(&format(e)) == Ok(e)`.
pub fn format(e: &Expr) -> String {
    e.to_string()
}

/// Contents of a `.qid` file: an expression, or two separated by a line
/// holding only `=`. Comment lines of the form `# key: value` are collected
/// into `meta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QidFile {
    pub lhs: Expr,
    pub rhs: Option<Expr>,
    pub meta: BTreeMap<String, String>,
}

pub fn parse_file(text: &str) -> Result<QidFile, ParseError> {
    let mut meta = BTreeMap::new();
    let mut split = None;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(c) = t.strip_prefix('#') {
            if let Some((k, v)) = c.split_once(':') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if t == "=" {
            if split.is_some() {
                return Err(ParseError::syntax(i + 1, 1, "more than one `=` separator line".into(), vec![]));
            }
            split = Some(i);
        }
    }
    let lines: Vec<&str> = text.lines().collect();
    match split {
        None => Ok(QidFile { lhs: parse(text)?, rhs: None, meta }),
        Some(i) => {
            let lhs = lines[..i].join("\n");
            let rhs = lines[i + 1..].join("\n");
            Ok(QidFile { lhs: parser::parse_at(&lhs, 1)?, rhs: Some(parser::parse_at(&rhs, i + 2)?), meta })
        }
    }
}
