//! Table expressions such as `(q^n-1)/(q-1)` or `2|T|/(2n+1)`.
//!
//! Grammar: `+ - * / ^`, parentheses, implicit multiplication by
//! juxtaposition, integer literals, the variables `q`, `n`, `r` (the integer
//! square root in Suzuki and Ree groups) and `|T|`, cyclotomic values
//! `Phi12` and the twisted factors `Phi8'` / `Phi8''`, and `gcd(a, b)`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::cyclo::TwistedFactor;
use crate::error::{invalid, Error, Result};
use crate::exactnum::cyclo_eval;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Int(BigInt),
    Q,
    N,
    R,
    T,
    Phi(u64),
    Twisted(TwistedFactor),
    Gcd(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
}

/// A parsed expression; displays as its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    source: &'static str,
    root: Node,
}

/// Variable bindings for [`Expr::eval`].
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub q: BigInt,
    pub n: BigInt,
    pub r: Option<BigInt>,
    pub t: Option<BigRational>,
}

impl Expr {
    pub fn parse(source: &'static str) -> Result<Expr> {
        let mut parser = Parser {
            src: source.as_bytes(),
            pos: 0,
        };
        let root = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(invalid!("trailing input in {source:?} at {}", parser.pos));
        }
        Ok(Expr { source, root })
    }

    pub fn source(&self) -> &'static str {
        self.source
    }

    pub fn eval(&self, env: &Env) -> Result<BigRational> {
        eval(&self.root, env)
    }

    /// Evaluates and requires a nonnegative integer result.
    pub fn eval_nat(&self, env: &Env) -> Result<BigUint> {
        let v = self.eval(env)?;
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Internal(format!(
                "{} evaluated to {v}, expected a natural number",
                self.source
            )));
        }
        Ok(v.to_integer().to_biguint().unwrap())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.source)
    }
}

fn int_of(v: &BigRational, what: &str) -> Result<BigInt> {
    if !v.is_integer() {
        return Err(Error::Internal(format!(
            "{what} must be an integer, got {v}"
        )));
    }
    Ok(v.to_integer())
}

fn eval(node: &Node, env: &Env) -> Result<BigRational> {
    let rat = |i: BigInt| BigRational::from_integer(i);
    Ok(match node {
        Node::Int(i) => rat(i.clone()),
        Node::Q => rat(env.q.clone()),
        Node::N => rat(env.n.clone()),
        Node::R => rat(env
            .r
            .clone()
            .ok_or_else(|| Error::Internal("r is only bound for Suzuki and Ree groups".into()))?),
        Node::T => env
            .t
            .clone()
            .ok_or_else(|| Error::Internal("|T| is not bound here".into()))?,
        Node::Phi(d) => {
            let q = env
                .q
                .to_biguint()
                .ok_or_else(|| Error::Internal("negative q".into()))?;
            rat(BigInt::from(cyclo_eval(*d, &q)))
        }
        Node::Twisted(tf) => {
            let r = env
                .r
                .as_ref()
                .ok_or_else(|| Error::Internal("twisted factor without r".into()))?;
            rat(tf.eval_with_root(&env.q, r))
        }
        Node::Gcd(a, b) => {
            let a = int_of(&eval(a, env)?, "gcd argument")?;
            let b = int_of(&eval(b, env)?, "gcd argument")?;
            rat(a.gcd(&b))
        }
        Node::Neg(a) => -eval(a, env)?,
        Node::Add(a, b) => eval(a, env)? + eval(b, env)?,
        Node::Sub(a, b) => eval(a, env)? - eval(b, env)?,
        Node::Mul(a, b) => eval(a, env)? * eval(b, env)?,
        Node::Div(a, b) => {
            let d = eval(b, env)?;
            if d.is_zero() {
                return Err(Error::Internal(
                    "division by zero in table expression".into(),
                ));
            }
            eval(a, env)? / d
        }
        Node::Pow(a, b) => {
            let base = eval(a, env)?;
            let e = int_of(&eval(b, env)?, "exponent")?;
            let e = e
                .to_u32()
                .ok_or_else(|| Error::Internal(format!("exponent {e} out of range")))?;
            num_traits::pow(base, e as usize)
        }
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(invalid!("expected {:?} at {}", c as char, self.pos))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.power()?;
        loop {
            if self.eat(b'*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
            } else if self.eat(b'/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.power()?));
            } else if self.starts_primary() {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_primary(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'|')
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.unary()?;
        if self.eat(b'^') {
            let exp = self.power()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat(b'-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.primary()
    }

    fn number(&mut self) -> u64 {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap_or(0)
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn primary(&mut self) -> Result<Node> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(Node::Int(BigInt::from(self.number()))),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'|') => {
                if self.keyword("|T|") {
                    Ok(Node::T)
                } else {
                    Err(invalid!("expected |T| at {}", self.pos))
                }
            }
            _ if self.keyword("gcd") => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(Node::Gcd(Box::new(a), Box::new(b)))
            }
            _ if self.keyword("Phi") => {
                let d = self.number();
                if d == 0 {
                    return Err(invalid!("Phi needs a positive index at {}", self.pos));
                }
                let primes = if self.keyword("''") {
                    2
                } else if self.keyword("'") {
                    1
                } else {
                    0
                };
                match primes {
                    0 => Ok(Node::Phi(d)),
                    1 => Ok(Node::Twisted(TwistedFactor::new(d, false)?)),
                    _ => Ok(Node::Twisted(TwistedFactor::new(d, true)?)),
                }
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Node::Q)
            }
            Some(b'n') => {
                self.pos += 1;
                Ok(Node::N)
            }
            Some(b'r') => {
                self.pos += 1;
                Ok(Node::R)
            }
            other => Err(invalid!(
                "unexpected {:?} at {}",
                other.map(|c| c as char),
                self.pos
            )),
        }
    }
}
