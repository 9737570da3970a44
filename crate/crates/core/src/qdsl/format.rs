use std::fmt::{self, Write};

use super::{Exponent, Expr};

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Div(..) => 2,
        Expr::Mul(..) => 3,
        Expr::Neg(_) => 4,
        Expr::Pow(..) => 5,
        _ => 6,
    }
}

/// `sum`, `bisum` and `prod` swallow everything to their right.
fn greedy(e: &Expr) -> bool {
    matches!(e, Expr::Sum { .. } | Expr::BiSum { .. } | Expr::Prod { .. })
}

fn show(e: &Expr, min: u8, open: bool) -> String {
    let mut s = String::new();
    write(&mut s, e, min, open).expect("writing to a String");
    s
}

/// Write `e` in a context that needs precedence at least `min`; `open`
/// means more text follows on the right.
fn write(out: &mut String, e: &Expr, min: u8, open: bool) -> fmt::Result {
    if prec(e) < min || (greedy(e) && open) {
        out.push('(');
        write(out, e, 0, false)?;
        out.push(')');
        return Ok(());
    }
    match e {
        Expr::Int(n) => write!(out, "{n}"),
        Expr::Q => write!(out, "q"),
        Expr::Var(v) => write!(out, "{v}"),
        Expr::Neg(a) => {
            out.push('-');
            write(out, a, 4, open)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write(out, a, 1, true)?;
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write(out, b, 2, open)
        }
        Expr::Div(a, b) => {
            write(out, a, 2, true)?;
            out.push_str(" / ");
            write(out, b, 3, open)
        }
        Expr::Mul(a, b) => {
            write(out, a, 3, true)?;
            let right = show(b, 4, open);
            out.push_str(if right.starts_with('-') { " * " } else { " " });
            out.push_str(&right);
            Ok(())
        }
        Expr::Pow(a, x) => {
            write(out, a, 6, true)?;
            match x {
                Exponent::Int(k) => write!(out, "^{k}"),
                Exponent::Poly(p) => write!(out, "^({p})"),
            }
        }
        Expr::Poch { a, base, count } => {
            write!(out, "poch({}, {}, ", show(a, 0, false), show(base, 0, false))?;
            match count {
                Some(c) => write(out, c, 0, false)?,
                None => out.push_str("inf"),
            }
            out.push(')');
            Ok(())
        }
        Expr::Sum { var, lower, upper, body } => {
            write!(out, "sum {var}={}..", show(lower, 0, true))?;
            match upper {
                Some(u) => write(out, u, 4, true)?,
                None => out.push_str("inf"),
            }
            out.push(' ');
            write(out, body, 0, open)
        }
        Expr::BiSum { var, body } => {
            write!(out, "bisum {var} ")?;
            write(out, body, 0, open)
        }
        Expr::Prod { var, lower, body } => {
            write!(out, "prod {var}={}..inf ", show(lower, 0, true))?;
            write(out, body, 0, open)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&show(self, 0, false))
    }
}
