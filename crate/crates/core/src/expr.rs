//! A small expression language for generating functions typed on the
//! command line, e.g. `x^4 + y^4` or `ln(3*x^2*y - y^3)`.
//!
//! Grammar: `+ - * / ^`, parentheses, the variables `x` and `y`, numeric
//! literals, `pi`, and the functions `sqrt`, `cbrt`, `ln`, `exp`. Exponents
//! must be constant.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::jet::{Jet2, Taylor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Func {
    Sqrt,
    Cbrt,
    Ln,
    Exp,
}

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Y,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Call(FuncName, Box<Expr>),
}

/// Built-in function names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuncName(Func);

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, x: &Jet2, y: &Jet2) -> Result<Jet2> {
        Ok(match self {
            Expr::Num(c) => x.constant_like(*c),
            Expr::X => *x,
            Expr::Y => *y,
            Expr::Neg(a) => -a.eval(x, y)?,
            Expr::Add(a, b) => a.eval(x, y)? + b.eval(x, y)?,
            Expr::Sub(a, b) => a.eval(x, y)? - b.eval(x, y)?,
            Expr::Mul(a, b) => a.eval(x, y)? * b.eval(x, y)?,
            Expr::Div(a, b) => a.eval(x, y)?.try_div(&b.eval(x, y)?)?,
            Expr::Pow(a, r) => a.eval(x, y)?.pow_real(*r)?,
            Expr::Call(FuncName(f), a) => {
                let v = a.eval(x, y)?;
                match f {
                    Func::Sqrt => v.sqrt()?,
                    Func::Cbrt => v.signed_cbrt()?,
                    Func::Ln => {
                        if !(v.value() > 0.0) {
                            return Err(Error::Domain {
                                op: "ln",
                                value: v.value(),
                            });
                        }
                        v.ln_abs()?
                    }
                    Func::Exp => v.exp()?,
                }
            }
        })
    }

    /// The constant value, if the tree has no variables.
    fn constant(&self) -> Option<f64> {
        let (x, y) = Jet2::seed(0.0, 0.0, 0).ok()?;
        if self.has_var() {
            return None;
        }
        self.eval(&x, &y).ok().map(|j| j.value())
    }

    fn has_var(&self) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::X | Expr::Y => true,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.has_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_var() || b.has_var()
            }
        }
    }

    pub fn into_field(self) -> Field {
        let e = Arc::new(self);
        Field::new(move |x, y| e.eval(x, y))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let at = self.pos;
            let exp = self.unary()?;
            let r = exp.constant().ok_or(Error::Parse {
                pos: at,
                msg: "exponent must be a constant".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), r));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == b'.')
                {
                    self.pos += 1;
                }
                // exponent part, e.g. 1e-3
                if matches!(self.peek(), Some(b'e' | b'E')) {
                    let save = self.pos;
                    self.pos += 1;
                    if matches!(self.peek(), Some(b'+' | b'-')) {
                        self.pos += 1;
                    }
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                            self.pos += 1;
                        }
                    } else {
                        self.pos = save;
                    }
                }
                self.src[start..self.pos]
                    .parse::<f64>()
                    .map(Expr::Num)
                    .map_err(|_| Error::Parse {
                        pos: start,
                        msg: "malformed number".into(),
                    })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let func = match name {
                    "x" => return Ok(Expr::X),
                    "y" => return Ok(Expr::Y),
                    "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
                    "sqrt" => Func::Sqrt,
                    "cbrt" => Func::Cbrt,
                    "ln" => Func::Ln,
                    "exp" => Func::Exp,
                    _ => {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("unknown identifier `{name}`"),
                        })
                    }
                };
                if !self.eat(b'(') {
                    return Err(self.error("expected `(` after function name"));
                }
                let arg = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(Expr::Call(FuncName(func), Box::new(arg)))
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_at(src: &str, x: f64, y: f64, order: usize) -> Jet2 {
        Expr::parse(src).unwrap().into_field().jet(x, y, order).unwrap()
    }

    #[test]
    fn quartic_monomial() {
        let j = eval_at("x^4", 1.0, 0.0, 3);
        assert_eq!(j.value(), 1.0);
        assert_eq!(j.deriv(2, 0).unwrap(), 12.0);
        assert_eq!(j.deriv(3, 0).unwrap(), 24.0);
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(eval_at("1 + 2*3^2", 0.0, 0.0, 0).value(), 19.0);
        assert_eq!(eval_at("-x^2", 3.0, 0.0, 0).value(), -9.0);
        assert_eq!(eval_at("(x - y)/2", 3.0, 1.0, 0).value(), 1.0);
        assert_eq!(eval_at("2^-1", 0.0, 0.0, 0).value(), 0.5);
        assert_eq!(eval_at("1.5e1*x", 2.0, 0.0, 0).value(), 30.0);
    }

    #[test]
    fn functions() {
        let j = eval_at("ln(3*x^2*y - y^3)", 1.0, 1.0, 1);
        assert!((j.value() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(eval_at("cbrt(x)", -8.0, 0.0, 0).value(), -2.0);
        assert_eq!(eval_at("sqrt(y)", 0.0, 9.0, 0).value(), 3.0);
        assert_eq!(eval_at("exp(0*x)", 1.0, 0.0, 0).value(), 1.0);
        assert_eq!(eval_at("x^(1/3)", 8.0, 0.0, 0).value(), 2.0);
    }

    #[test]
    fn parse_errors() {
        for bad in ["x^y", "foo(x)", "x +", "(x", "x y", "sqrt x"] {
            assert!(matches!(Expr::parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn ln_of_negative_is_domain_error() {
        let f = Expr::parse("ln(x)").unwrap().into_field();
        assert!(matches!(f.value(-1.0, 0.0), Err(Error::Domain { .. })));
    }
}
