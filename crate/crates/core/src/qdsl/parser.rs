use super::lexer::{lex, Tok, Token};
use super::{Exponent, Expr, ParseError, ParseErrorKind, Poly};

const ATOM_START: &[&str] = &["integer", "`q`", "variable", "`(`", "`poch`", "`sum`", "`bisum`", "`prod`"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
}

fn b(e: Expr) -> Box<Expr> {
    Box::new(e)
}

fn bp(p: Poly) -> Box<Poly> {
    Box::new(p)
}

pub(crate) fn parse_at(text: &str, first_line: usize) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text, first_line)?, pos: 0, scope: Vec::new() };
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        let mut exp = vec!["`+`", "`-`", "`*`", "`/`", "end of input"];
        exp.extend_from_slice(ATOM_START);
        return Err(p.unexpected(&exp));
    }
    Ok(e)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let (line, col) = self.here();
        ParseError::syntax(
            line,
            col,
            format!("unexpected {}", self.peek()),
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            let want = t.to_string();
            Err(self.unexpected(&[want.as_str()]))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&["variable name"])),
        }
    }

    fn bound_var(&mut self, name: String) -> Result<String, ParseError> {
        if self.scope.contains(&name) {
            return Ok(name);
        }
        // the name was just consumed
        let t = &self.toks[self.pos - 1];
        Err(ParseError {
            line: t.line,
            col: t.col,
            kind: ParseErrorKind::UnboundVariable(name.clone()),
            message: format!("variable `{name}` is not bound by an enclosing sum or product"),
            expected: vec![],
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Expr::Add(b(e), b(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    e = Expr::Sub(b(e), b(self.term()?));
                }
                _ => return Ok(e),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.mterm()?;
        while *self.peek() == Tok::Slash {
            self.bump();
            e = Expr::Div(b(e), b(self.mterm()?));
        }
        Ok(e)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Int(_) | Tok::Q | Tok::Ident(_) | Tok::LParen | Tok::Poch | Tok::Sum | Tok::BiSum | Tok::Prod
        )
    }

    fn mterm(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !self.starts_atom() {
                return Ok(e);
            }
            e = Expr::Mul(b(e), b(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(b(self.factor()?)));
        }
        let a = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            return Ok(Expr::Pow(b(a), self.exponent()?));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Q => {
                self.bump();
                Ok(Expr::Q)
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Var(self.bound_var(s)?))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Poch => {
                self.bump();
                self.expect(Tok::LParen)?;
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let base = self.expr()?;
                self.expect(Tok::Comma)?;
                let count = if *self.peek() == Tok::Inf {
                    self.bump();
                    None
                } else {
                    Some(b(self.expr()?))
                };
                self.expect(Tok::RParen)?;
                Ok(Expr::Poch { a: b(a), base: b(base), count })
            }
            Tok::Sum => {
                self.bump();
                let var = self.ident()?;
                self.expect(Tok::Eq)?;
                let lower = self.expr()?;
                self.expect(Tok::DotDot)?;
                let upper = if *self.peek() == Tok::Inf {
                    self.bump();
                    None
                } else {
                    Some(b(self.factor()?))
                };
                let body = self.scoped(var.clone())?;
                Ok(Expr::Sum { var, lower: b(lower), upper, body: b(body) })
            }
            Tok::BiSum => {
                self.bump();
                let var = self.ident()?;
                let body = self.scoped(var.clone())?;
                Ok(Expr::BiSum { var, body: b(body) })
            }
            Tok::Prod => {
                self.bump();
                let var = self.ident()?;
                self.expect(Tok::Eq)?;
                let lower = self.expr()?;
                self.expect(Tok::DotDot)?;
                self.expect(Tok::Inf)?;
                let body = self.scoped(var.clone())?;
                Ok(Expr::Prod { var, lower: b(lower), body: b(body) })
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn scoped(&mut self, var: String) -> Result<Expr, ParseError> {
        self.scope.push(var);
        let body = self.expr();
        self.scope.pop();
        body
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Exponent::Int(n))
            }
            Tok::LParen => {
                let (line, col) = self.here();
                self.bump();
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                if p.degree() > 2 {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::NonQuadratic,
                        message: format!("exponent ({p}) has degree {} (at most 2 allowed)", p.degree()),
                        expected: vec![],
                    });
                }
                Ok(Exponent::Poly(p))
            }
            _ => Err(self.unexpected(&["integer", "`(`"])),
        }
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut p = self.pterm()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    p = Poly::Add(bp(p), bp(self.pterm()?));
                }
                Tok::Minus => {
                    self.bump();
                    p = Poly::Sub(bp(p), bp(self.pterm()?));
                }
                _ => return Ok(p),
            }
        }
    }

    fn pterm(&mut self) -> Result<Poly, ParseError> {
        let mut p = self.pmterm()?;
        while *self.peek() == Tok::Slash {
            self.bump();
            match self.peek().clone() {
                Tok::Int(k) if k > 0 => {
                    self.bump();
                    p = Poly::Div(bp(p), k);
                }
                _ => return Err(self.unexpected(&["positive integer divisor"])),
            }
        }
        Ok(p)
    }

    fn pmterm(&mut self) -> Result<Poly, ParseError> {
        let mut p = self.pfactor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
            } else if !matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen) {
                return Ok(p);
            }
            p = Poly::Mul(bp(p), bp(self.pfactor()?));
        }
    }

    fn pfactor(&mut self) -> Result<Poly, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Poly::Neg(bp(self.pfactor()?)));
        }
        let a = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Poly::Int(n)
            }
            Tok::Ident(s) => {
                self.bump();
                Poly::Var(self.bound_var(s)?)
            }
            Tok::LParen => {
                self.bump();
                let p = self.poly()?;
                self.expect(Tok::RParen)?;
                p
            }
            Tok::Q => {
                let (line, col) = self.here();
                return Err(ParseError::syntax(line, col, "`q` cannot appear in an exponent".into(), vec![]));
            }
            _ => return Err(self.unexpected(&["integer", "variable", "`(`"])),
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            return match self.peek().clone() {
                Tok::Int(k) if k <= u32::MAX as i64 => {
                    self.bump();
                    Ok(Poly::Pow(bp(a), k as u32))
                }
                _ => Err(self.unexpected(&["integer power"])),
            };
        }
        Ok(a)
    }
}
