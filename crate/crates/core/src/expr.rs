//! Polynomial-rational expressions in named parameters, used for the
//! parameterized matrix entries of scenario files.
//!
//! Grammar: `sum := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
//! `unary := '-' unary | power`, `power := atom ('^' integer)?`,
//! `atom := number | ident | '(' sum ')'`. Numbers are integers or decimals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::linalg::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

/// Parse failure at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("column {column}: {message}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

pub type Env = BTreeMap<String, Scalar>;

impl Expr {
    pub fn parse(src: &str) -> Result<Expr, ExprError> {
        let mut p = Parser { chars: src.chars().collect(), pos: 0 };
        let e = p.sum()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error(format!("unexpected {:?}", p.chars[p.pos])));
        }
        Ok(e)
    }

    pub fn constant(c: Scalar) -> Expr {
        Expr::Num(c)
    }

    /// Free parameter names.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Exact value; fails on an unbound name or a zero divisor.
    pub fn eval(&self, env: &Env) -> Result<Scalar, String> {
        Ok(match self {
            Expr::Num(c) => c.clone(),
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| format!("unbound parameter {v:?}"))?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                let inv = d.recip().ok_or_else(|| format!("division by zero in {self}"))?;
                a.eval(env)? * inv
            }
            Expr::Pow(a, k) => a.eval(env)?.pow(*k).ok_or_else(|| format!("zero to a negative power in {self}"))?,
        })
    }
}

impl FromStr for Expr {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Expr::parse(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) if c.denom() == &1.into() && c >= &Scalar::zero() => write!(f, "{c}"),
            Expr::Num(c) => write!(f, "({c})"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ExprError {
        ExprError { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                if let Expr::Num(c) = &d {
                    if c.is_zero() {
                        return Err(ExprError { column: at + 1, message: "division by zero".into() });
                    }
                }
                e = Expr::Div(Box::new(e), Box::new(d));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        let k: i32 = digits.parse().map_err(|_| self.error("expected an integer exponent"))?;
        Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) => Err(self.error(format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let digits = |p: &mut Parser| {
            let s = p.pos;
            while p.pos < p.chars.len() && p.chars[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.chars[s..p.pos].iter().collect::<String>()
        };
        let int = digits(self);
        let mut value: Scalar = int.parse().map_err(|_| ExprError { column: start + 1, message: "bad number".into() })?;
        if self.pos < self.chars.len() && self.chars[self.pos] == '.' {
            self.pos += 1;
            let frac = digits(self);
            if frac.is_empty() {
                return Err(self.error("expected digits after '.'"));
            }
            let scale = Scalar::from_int(10).pow(frac.len() as i32).expect("nonzero base");
            let f: Scalar = frac.parse().expect("digits");
            value = value + f * scale.recip().expect("nonzero");
        }
        Ok(Expr::Num(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), Scalar::from_int(*v))).collect()
    }

    #[test]
    fn evaluates_polynomials_and_quotients() {
        let e: Expr = "-b/a^2 + 2*(c - 1.5)".parse().unwrap();
        let v = e.eval(&env(&[("a", 2), ("b", 3), ("c", 4)])).unwrap();
        assert_eq!(v, Scalar::ratio(-3, 4) + Scalar::from_int(5));
        assert_eq!(e.vars().into_iter().collect::<Vec<_>>(), ["a", "b", "c"]);
    }

    #[test]
    fn rationals_and_signs() {
        assert_eq!(Expr::parse("1/3").unwrap().eval(&Env::new()).unwrap(), Scalar::ratio(1, 3));
        assert_eq!(Expr::parse("--2").unwrap().eval(&Env::new()).unwrap(), Scalar::from_int(2));
        assert_eq!(Expr::parse("a^-1").unwrap().eval(&env(&[("a", 4)])).unwrap(), Scalar::ratio(1, 4));
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(Expr::parse("1/0").unwrap_err().column, 2);
        assert_eq!(Expr::parse("2 * (a").unwrap_err().column, 7);
        assert!(Expr::parse("3 $").is_err());
        assert!(Expr::parse("1/a").unwrap().eval(&env(&[("a", 0)])).is_err());
        assert!(Expr::parse("x").unwrap().eval(&Env::new()).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["a*b - c/2", "-(x+1)^3", "r11 + 0.25"] {
            let e = Expr::parse(s).unwrap();
            let again = Expr::parse(&e.to_string()).unwrap();
            let en = env(&[("a", 3), ("b", 5), ("c", 7), ("x", 2), ("r11", 1)]);
            assert_eq!(e.eval(&en), again.eval(&en));
        }
    }
}
