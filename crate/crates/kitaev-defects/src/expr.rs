//! Small expression language over `Z/p`, used by the data files.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^-1')?
//! atom   := integer | identifier | '(' expr ')'
//! cond   := expr ('==' | '!=') expr
//! ```

use std::collections::HashMap;
use std::fmt;

use crate::arith::PrimeModulus;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Inv(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

/// Variable bindings.
pub type Env = HashMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Eq(Expr, Expr),
    Ne(Expr, Expr),
    Always,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(&'static str),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let err = |reason: &str| Error::InvalidExpression {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Int(s.parse().map_err(|_| err("integer overflow"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            let rest: String = chars[i..].iter().take(3).collect();
            let sym = ["^-1", "==", "!=", "+", "-", "*", "(", ")"]
                .into_iter()
                .find(|s| rest.starts_with(s))
                .ok_or_else(|| err(&format!("unexpected character `{c}`")))?;
            i += sym.len();
            out.push(Tok::Sym(sym));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::InvalidExpression {
            text: self.text.to_string(),
            reason: reason.to_string(),
        }
    }

    fn peek_sym(&self, s: &str) -> bool {
        matches!(self.toks.get(self.pos), Some(Tok::Sym(x)) if *x == s)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.peek_sym("+") {
                self.pos += 1;
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.peek_sym("-") {
                self.pos += 1;
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek_sym("*") {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.peek_sym("-") {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let atom = match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Expr::Int(n)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Expr::Var(s)
            }
            Some(Tok::Sym("(")) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.peek_sym(")") {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                e
            }
            _ => return Err(self.err("expected a value")),
        };
        if self.peek_sym("^-1") {
            self.pos += 1;
            return Ok(Expr::Inv(Box::new(atom)));
        }
        Ok(atom)
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.toks.len() {
            return Err(self.err("trailing input"));
        }
        Ok(())
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser {
            toks: tokenize(text)?,
            pos: 0,
            text,
        };
        let e = p.expr()?;
        p.finish()?;
        Ok(e)
    }

    /// Evaluates modulo `p`; unbound variables and inverses of zero are errors.
    pub fn eval(&self, env: &Env, p: PrimeModulus) -> Result<u32> {
        let err = |reason: String| Error::InvalidExpression {
            text: self.to_string(),
            reason,
        };
        Ok(match self {
            Expr::Int(n) => p.reduce(*n),
            Expr::Var(v) => *env
                .get(v)
                .ok_or_else(|| err(format!("unbound variable `{v}`")))?,
            Expr::Neg(a) => p.neg(a.eval(env, p)?),
            Expr::Inv(a) => {
                let x = a.eval(env, p)?;
                p.inv(x).ok_or_else(|| err("inverse of zero".into()))?
            }
            Expr::Add(a, b) => p.add(a.eval(env, p)?, b.eval(env, p)?),
            Expr::Sub(a, b) => p.sub(a.eval(env, p)?, b.eval(env, p)?),
            Expr::Mul(a, b) => p.mul(a.eval(env, p)?, b.eval(env, p)?),
        })
    }

    /// Names of the variables used.
    pub fn variables(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone())
                }
            }
            Expr::Neg(a) | Expr::Inv(a) => a.variables(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }
}

impl Cond {
    pub fn parse(text: &str) -> Result<Cond> {
        let t = text.trim();
        if t == "otherwise" {
            return Ok(Cond::Always);
        }
        let (op, at) = if let Some(i) = t.find("==") {
            ("==", i)
        } else if let Some(i) = t.find("!=") {
            ("!=", i)
        } else {
            return Err(Error::InvalidExpression {
                text: text.to_string(),
                reason: "expected a comparison".into(),
            });
        };
        let (a, b) = (Expr::parse(&t[..at])?, Expr::parse(&t[at + 2..])?);
        Ok(if op == "==" {
            Cond::Eq(a, b)
        } else {
            Cond::Ne(a, b)
        })
    }

    pub fn holds(&self, env: &Env, p: PrimeModulus) -> Result<bool> {
        Ok(match self {
            Cond::Always => true,
            Cond::Eq(a, b) => a.eval(env, p)? == b.eval(env, p)?,
            Cond::Ne(a, b) => a.eval(env, p)? != b.eval(env, p)?,
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => write!(f, "-({a})"),
            Expr::Inv(a) => write!(f, "({a})^-1"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, u32)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn evaluates_modular_expressions() {
        let p = PrimeModulus::new(5).unwrap();
        let e = Expr::parse("k^-1*(k*x + z - nu)").unwrap();
        let v = e
            .eval(&env(&[("k", 2), ("x", 1), ("z", 3), ("nu", 4)]), p)
            .unwrap();
        // 2^-1 * (2 + 3 - 4) = 3 * 1 = 3.
        assert_eq!(v, 3);
        assert_eq!(Expr::parse("-3").unwrap().eval(&Env::new(), p).unwrap(), 2);
        assert_eq!(
            Expr::parse("(k*m)^-1*z")
                .unwrap()
                .eval(&env(&[("k", 2), ("m", 3), ("z", 1)]), p)
                .unwrap(),
            1
        );
    }

    #[test]
    fn reports_errors() {
        let p = PrimeModulus::new(3).unwrap();
        assert!(Expr::parse("a +").is_err());
        assert!(Expr::parse("a $ b").is_err());
        assert!(Expr::parse("x").unwrap().eval(&Env::new(), p).is_err());
        assert!(Expr::parse("0^-1").unwrap().eval(&Env::new(), p).is_err());
    }

    #[test]
    fn conditions() {
        let p = PrimeModulus::new(3).unwrap();
        let e = env(&[("k", 1), ("m", 2), ("l", 2), ("n", 1)]);
        assert!(Cond::parse("k*m == l*n").unwrap().holds(&e, p).unwrap());
        assert!(!Cond::parse("k != 1").unwrap().holds(&e, p).unwrap());
        assert!(Cond::parse("otherwise").unwrap().holds(&e, p).unwrap());
    }
}
