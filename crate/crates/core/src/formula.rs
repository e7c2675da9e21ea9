//! A small arithmetic expression grammar for time-dependent data fields.
//!
//! Grammar: `+ - * / ^`, unary minus, parentheses, `sin cos exp`, the
//! variables `t x y`, and numeric literals. Expressions are parsed once
//! into an AST; the analytic time derivative is obtained symbolically so
//! that rate terms never rely on finite differences.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    /// Natural logarithm; not part of the surface grammar but may appear
    /// in symbolic derivatives of general powers.
    Ln(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    T,
    X,
    Y,
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        Parser::new(src).parse()
    }

    pub fn eval(&self, t: f64, x: f64, y: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var(Var::T) => t,
            Expr::Var(Var::X) => x,
            Expr::Var(Var::Y) => y,
            Expr::Neg(e) => -e.eval(t, x, y),
            Expr::Add(a, b) => a.eval(t, x, y) + b.eval(t, x, y),
            Expr::Sub(a, b) => a.eval(t, x, y) - b.eval(t, x, y),
            Expr::Mul(a, b) => a.eval(t, x, y) * b.eval(t, x, y),
            Expr::Div(a, b) => a.eval(t, x, y) / b.eval(t, x, y),
            Expr::Pow(a, b) => a.eval(t, x, y).powf(b.eval(t, x, y)),
            Expr::Sin(e) => e.eval(t, x, y).sin(),
            Expr::Cos(e) => e.eval(t, x, y).cos(),
            Expr::Exp(e) => e.eval(t, x, y).exp(),
            Expr::Ln(e) => e.eval(t, x, y).ln(),
        }
    }

    /// Symbolic partial derivative with respect to time.
    pub fn d_dt(&self) -> Expr {
        use Expr::*;
        match self {
            Num(_) | Var(self::Var::X) | Var(self::Var::Y) => Num(0.0),
            Var(self::Var::T) => Num(1.0),
            Neg(e) => Neg(Box::new(e.d_dt())).simplify(),
            Add(a, b) => Add(Box::new(a.d_dt()), Box::new(b.d_dt())).simplify(),
            Sub(a, b) => Sub(Box::new(a.d_dt()), Box::new(b.d_dt())).simplify(),
            Mul(a, b) => Add(
                Box::new(Mul(Box::new(a.d_dt()), b.clone()).simplify()),
                Box::new(Mul(a.clone(), Box::new(b.d_dt())).simplify()),
            )
            .simplify(),
            Div(a, b) => Div(
                Box::new(
                    Sub(
                        Box::new(Mul(Box::new(a.d_dt()), b.clone()).simplify()),
                        Box::new(Mul(a.clone(), Box::new(b.d_dt())).simplify()),
                    )
                    .simplify(),
                ),
                Box::new(Mul(b.clone(), b.clone())),
            )
            .simplify(),
            // d/dt a^b = a^b * (b' ln a + b a'/a); constant exponents reduce
            // to the power rule below.
            Pow(a, b) => {
                if b.d_dt() == Num(0.0) {
                    // b a^(b-1) a'
                    Mul(
                        Box::new(Mul(
                            b.clone(),
                            Box::new(Pow(
                                a.clone(),
                                Box::new(Sub(b.clone(), Box::new(Num(1.0))).simplify()),
                            )),
                        )),
                        Box::new(a.d_dt()),
                    )
                    .simplify()
                } else {
                    Mul(
                        Box::new(Pow(a.clone(), b.clone())),
                        Box::new(
                            Add(
                                Box::new(Mul(Box::new(b.d_dt()), Box::new(Ln(a.clone())))),
                                Box::new(Mul(
                                    b.clone(),
                                    Box::new(Div(Box::new(a.d_dt()), a.clone())),
                                )),
                            )
                            .simplify(),
                        ),
                    )
                    .simplify()
                }
            }
            Sin(e) => Mul(Box::new(Cos(e.clone())), Box::new(e.d_dt())).simplify(),
            Cos(e) => Neg(Box::new(
                Mul(Box::new(Sin(e.clone())), Box::new(e.d_dt())).simplify(),
            ))
            .simplify(),
            Exp(e) => Mul(Box::new(Exp(e.clone())), Box::new(e.d_dt())).simplify(),
            Ln(e) => Div(Box::new(e.d_dt()), e.clone()).simplify(),
        }
    }

    fn simplify(self) -> Expr {
        use Expr::*;
        match self {
            Add(a, b) => match (*a, *b) {
                (Num(x), Num(y)) => Num(x + y),
                (Num(z), e) | (e, Num(z)) if z == 0.0 => e,
                (a, b) => Add(Box::new(a), Box::new(b)),
            },
            Sub(a, b) => match (*a, *b) {
                (Num(x), Num(y)) => Num(x - y),
                (e, Num(z)) if z == 0.0 => e,
                (a, b) => Sub(Box::new(a), Box::new(b)),
            },
            Mul(a, b) => match (*a, *b) {
                (Num(x), Num(y)) => Num(x * y),
                (Num(z), _) | (_, Num(z)) if z == 0.0 => Num(0.0),
                (Num(o), e) | (e, Num(o)) if o == 1.0 => e,
                (a, b) => Mul(Box::new(a), Box::new(b)),
            },
            Div(a, b) => match (*a, *b) {
                (Num(z), e) if z == 0.0 && e != Num(0.0) => Num(0.0),
                (a, Num(o)) if o == 1.0 => a,
                (a, b) => Div(Box::new(a), Box::new(b)),
            },
            Neg(a) => match *a {
                Num(x) => Num(-x),
                a => Neg(Box::new(a)),
            },
            Pow(a, b) => match (*a, *b) {
                (a, Num(o)) if o == 1.0 => a,
                (_, Num(z)) if z == 0.0 => Num(1.0),
                (a, b) => Pow(Box::new(a), Box::new(b)),
            },
            e => e,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(Var::T) => write!(f, "t"),
            Expr::Var(Var::X) => write!(f, "x"),
            Expr::Var(Var::Y) => write!(f, "y"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, b) => write!(f, "({a} ^ {b})"),
            Expr::Sin(e) => write!(f, "sin({e})"),
            Expr::Cos(e) => write!(f, "cos({e})"),
            Expr::Exp(e) => write!(f, "exp({e})"),
            Expr::Ln(e) => write!(f, "ln({e})"),
        }
    }
}

/// A two-component field (t, x, y) -> R^2 with its analytic time derivative.
#[derive(Debug, Clone)]
pub struct VecField {
    pub comps: [Expr; 2],
    pub comps_dt: [Expr; 2],
    pub source: [String; 2],
}

impl VecField {
    pub fn parse(fx: &str, fy: &str) -> Result<VecField> {
        let ex = Expr::parse(fx)?;
        let ey = Expr::parse(fy)?;
        Ok(VecField {
            comps_dt: [ex.d_dt(), ey.d_dt()],
            comps: [ex, ey],
            source: [fx.to_string(), fy.to_string()],
        })
    }

    pub fn zero() -> VecField {
        VecField::parse("0", "0").expect("constant zero parses")
    }

    pub fn eval(&self, t: f64, p: [f64; 2]) -> [f64; 2] {
        [
            self.comps[0].eval(t, p[0], p[1]),
            self.comps[1].eval(t, p[0], p[1]),
        ]
    }

    pub fn eval_dt(&self, t: f64, p: [f64; 2]) -> [f64; 2] {
        [
            self.comps_dt[0].eval(t, p[0], p[1]),
            self.comps_dt[1].eval(t, p[0], p[1]),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.comps == [Expr::Num(0.0), Expr::Num(0.0)]
    }

    /// Max of |f| over a sampling grid of [0, horizon] x bbox; an estimate
    /// used for growth-constant bookkeeping, not a certified bound.
    pub fn sup_estimate(&self, horizon: f64, bbox: ([f64; 2], [f64; 2]), n: usize) -> f64 {
        let mut m: f64 = 0.0;
        for it in 0..=n {
            let t = horizon * it as f64 / n as f64;
            for ix in 0..=n {
                let x = bbox.0[0] + (bbox.1[0] - bbox.0[0]) * ix as f64 / n as f64;
                for iy in 0..=n {
                    let y = bbox.0[1] + (bbox.1[1] - bbox.0[1]) * iy as f64 / n as f64;
                    let v = self.eval(t, [x, y]);
                    m = m.max(crate::geom::norm(v));
                }
            }
        }
        m
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<Expr> {
        let e = self.expr()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(self.err("trailing input"));
        }
        Ok(e)
    }

    fn err(&self, msg: &str) -> Error {
        Error::FormulaError(format!("{msg} at byte {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    // exponentiation binds tighter than unary minus and associates right
    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary()?;
            Ok(Expr::Pow(Box::new(base), Box::new(exp)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(self.err("expected expression")),
        }
    }

    fn number(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_digit() || c == b'.' {
                self.pos += 1;
            } else if (c == b'e' || c == b'E')
                && self.pos > start
                && self
                    .bytes
                    .get(self.pos + 1)
                    .is_some_and(|&d| d.is_ascii_digit() || d == b'+' || d == b'-')
            {
                self.pos += 2;
            } else {
                break;
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map(Expr::Num)
            .map_err(|_| self.err("bad number"))
    }

    fn ident(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        match name {
            "t" => Ok(Expr::Var(Var::T)),
            "x" => Ok(Expr::Var(Var::X)),
            "y" => Ok(Expr::Var(Var::Y)),
            "pi" => Ok(Expr::Num(std::f64::consts::PI)),
            "sin" | "cos" | "exp" => {
                if self.peek() != Some(b'(') {
                    return Err(self.err("expected '(' after function name"));
                }
                self.pos += 1;
                let arg = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(match name {
                    "sin" => Expr::Sin(Box::new(arg)),
                    "cos" => Expr::Cos(Box::new(arg)),
                    _ => Expr::Exp(Box::new(arg)),
                })
            }
            _ => Err(self.err("unknown identifier")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_eval() {
        let e = Expr::parse("2*t*x - y^2 + sin(t)").unwrap();
        let v = e.eval(0.5, 2.0, 3.0);
        assert!((v - (2.0 * 0.5 * 2.0 - 9.0 + 0.5_f64.sin())).abs() < 1e-15);
    }

    #[test]
    fn precedence() {
        let e = Expr::parse("2 + 3 * 4 ^ 2").unwrap();
        assert!((e.eval(0.0, 0.0, 0.0) - 50.0).abs() < 1e-15);
        let e = Expr::parse("-t^2").unwrap();
        assert!((e.eval(2.0, 0.0, 0.0) + 4.0).abs() < 1e-15);
    }

    #[test]
    fn time_derivative_matches_finite_difference() {
        for src in ["t*x", "t^3 - 2*t*y", "sin(2*t)*x + exp(t)", "x^2 + y", "t^2*t"] {
            let e = Expr::parse(src).unwrap();
            let d = e.d_dt();
            let (t, x, y) = (0.7, 1.3, -0.4);
            let h = 1e-6;
            let fd = (e.eval(t + h, x, y) - e.eval(t - h, x, y)) / (2.0 * h);
            let an = d.eval(t, x, y);
            assert!((fd - an).abs() <= 1e-8 * (1.0 + an.abs()), "{src}: {fd} vs {an}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(Expr::parse("2 +").is_err());
        assert!(Expr::parse("foo(3)").is_err());
        assert!(Expr::parse("1 2").is_err());
    }

    #[test]
    fn vecfield_dt() {
        let f = VecField::parse("t*x", "0").unwrap();
        assert_eq!(f.eval_dt(9.9, [2.0, 5.0]), [2.0, 0.0]);
    }
}
