//! A tiny expression language for exact scalars and parameter predicates.
//!
//! Arithmetic: numbers (`3`, `1/2`, `0.25`), identifiers, `+ - * / ^`,
//! parentheses and `sqrt(q)` for a rational `q`. Predicates: comparisons
//! (`<`, `<=`, `>`, `>=`, `==`, `!=`, chainable as in `-1 < mu <= 1`),
//! `&&`, `||`, `!`, `true`, `false`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;

pub type Bindings = BTreeMap<String, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError(pub String);

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ExprError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Scalar),
    Bool(bool),
    Var(String),
    Neg(Box<Expr>),
    Not(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
    /// `a op1 b op2 c ...`
    Chain(Vec<Expr>, Vec<CmpOp>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(Scalar),
    Bool(bool),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(&'static str),
}

const OPS: [&str; 17] = [
    "<=", ">=", "==", "!=", "&&", "||", "<", ">", "+", "-", "*", "/", "^", "(", ")", "!", ",",
];

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    'outer: while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            out.push((start, Tok::Num(parse_decimal(&src[start..i])?)));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
            continue;
        }
        for op in OPS {
            if src[i..].starts_with(op) {
                out.push((i, Tok::Op(op)));
                i += op.len();
                continue 'outer;
            }
        }
        return err(format!("unexpected character {c:?} at offset {i}"));
    }
    Ok(out)
}

fn parse_decimal(s: &str) -> Result<BigRational, ExprError> {
    let (int, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
        return err(format!("bad number {s:?}"));
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits.parse().map_err(|_| ExprError(format!("bad number {s:?}")))?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Ok(BigRational::new(n, den))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, op: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Op(o)) if *o == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn where_(&self) -> String {
        match self.toks.get(self.pos) {
            Some((off, t)) => format!("{t:?} at offset {off}"),
            None => format!("end of input at offset {}", self.len),
        }
    }

    fn or(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.and()?;
        while self.eat("||") {
            lhs = Expr::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.not()?;
        while self.eat("&&") {
            lhs = Expr::And(Box::new(lhs), Box::new(self.not()?));
        }
        Ok(lhs)
    }

    fn not(&mut self) -> Result<Expr, ExprError> {
        if self.eat("!") {
            return Ok(Expr::Not(Box::new(self.not()?)));
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Expr, ExprError> {
        let first = self.sum()?;
        let mut terms = vec![first];
        let mut ops = Vec::new();
        loop {
            let op = match self.peek() {
                Some(Tok::Op("<")) => CmpOp::Lt,
                Some(Tok::Op("<=")) => CmpOp::Le,
                Some(Tok::Op(">")) => CmpOp::Gt,
                Some(Tok::Op(">=")) => CmpOp::Ge,
                Some(Tok::Op("==")) => CmpOp::Eq,
                Some(Tok::Op("!=")) => CmpOp::Ne,
                _ => break,
            };
            self.pos += 1;
            ops.push(op);
            terms.push(self.sum()?);
        }
        if ops.is_empty() {
            Ok(terms.pop().unwrap())
        } else {
            Ok(Expr::Chain(terms, ops))
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat("^") {
            let e = match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) if n.is_integer() => n.to_integer().to_u32(),
                _ => None,
            };
            let Some(e) = e else {
                return err(format!("expected small exponent, found {}", self.where_()));
            };
            self.pos += 1;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return err(format!("unexpected {}", self.where_()));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Expr::Num(Scalar::from_rational(n))),
            Tok::Ident(name) => match name.as_str() {
                "true" => Ok(Expr::Bool(true)),
                "false" => Ok(Expr::Bool(false)),
                "sqrt" => {
                    if !self.eat("(") {
                        return err(format!("expected '(' after sqrt, found {}", self.where_()));
                    }
                    let inner = self.or()?;
                    if !self.eat(")") {
                        return err(format!("expected ')', found {}", self.where_()));
                    }
                    Ok(Expr::Sqrt(Box::new(inner)))
                }
                _ => Ok(Expr::Var(name)),
            },
            Tok::Op("(") => {
                let inner = self.or()?;
                if !self.eat(")") {
                    return err(format!("expected ')', found {}", self.where_()));
                }
                Ok(inner)
            }
            Tok::Op(_) => {
                self.pos -= 1;
                err(format!("unexpected {}", self.where_()))
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, len: src.len() };
    let e = p.or()?;
    if p.pos != p.toks.len() {
        return err(format!("trailing input: {}", p.where_()));
    }
    Ok(e)
}

/// Square root of a non-negative rational as `(k/q)·√s` with `s` square-free.
pub fn sqrt_rational(r: &BigRational) -> Result<Scalar, ExprError> {
    if r.is_negative() {
        return err(format!("sqrt of negative number {r}"));
    }
    if r.is_zero() {
        return Ok(Scalar::zero());
    }
    // √(p/q) = √(p·q) / q
    let pq = r.numer() * r.denom();
    let (k, s) = split_square(&pq).ok_or_else(|| ExprError(format!("sqrt({r}) too large")))?;
    let coeff = BigRational::new(k, r.denom().clone());
    if s == 1 {
        return Ok(Scalar::from_rational(coeff));
    }
    Scalar::quadratic(BigRational::zero(), coeff, s).map_err(|e| ExprError(e.to_string()))
}

/// Writes `n = k²·s` with `s` square-free; `None` if `s` overflows `u64`.
pub fn split_square(n: &BigInt) -> Option<(BigInt, u64)> {
    let mut n = n.abs();
    let mut k = BigInt::one();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        k *= num_traits::pow(p.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            s *= &p;
        }
        p += 1;
    }
    s *= n;
    s.to_u64().map(|s| (k, s))
}

impl Expr {
    pub fn eval(&self, env: &Bindings) -> Result<Value, ExprError> {
        use Value::*;
        let num = |e: &Expr| -> Result<Scalar, ExprError> {
            match e.eval(env)? {
                Num(x) => Ok(x),
                Bool(_) => err("expected a number, found a boolean"),
            }
        };
        let boolean = |e: &Expr| -> Result<bool, ExprError> {
            match e.eval(env)? {
                Bool(b) => Ok(b),
                Num(_) => err("expected a boolean, found a number"),
            }
        };
        let guard = |a: &Scalar, b: &Scalar| {
            super::join_discriminant(a.discriminant(), b.discriminant())
                .map_err(|e| ExprError(e.to_string()))
        };
        Ok(match self {
            Expr::Num(x) => Num(x.clone()),
            Expr::Bool(b) => Bool(*b),
            Expr::Var(v) => match env.get(v) {
                Some(x) => Num(x.clone()),
                None => return err(format!("unbound identifier {v:?}")),
            },
            Expr::Neg(a) => Num(-num(a)?),
            Expr::Not(a) => Bool(!boolean(a)?),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let (x, y) = (num(a)?, num(b)?);
                guard(&x, &y)?;
                Num(match self {
                    Expr::Add(..) => x + y,
                    Expr::Sub(..) => x - y,
                    Expr::Mul(..) => x * y,
                    _ => {
                        if y.is_zero() {
                            return err("division by zero");
                        }
                        x / y
                    }
                })
            }
            Expr::Pow(a, e) => Num(num(a)?.pow(*e)),
            Expr::Sqrt(a) => {
                let x = num(a)?;
                match x.to_rational() {
                    Some(r) => Num(sqrt_rational(&r)?),
                    None => return err("sqrt of an irrational number"),
                }
            }
            Expr::Chain(terms, ops) => {
                let vals = terms.iter().map(num).collect::<Result<Vec<_>, _>>()?;
                let mut ok = true;
                for (w, op) in vals.windows(2).zip(ops) {
                    guard(&w[0], &w[1])?;
                    ok &= match op {
                        CmpOp::Lt => w[0] < w[1],
                        CmpOp::Le => w[0] <= w[1],
                        CmpOp::Gt => w[0] > w[1],
                        CmpOp::Ge => w[0] >= w[1],
                        CmpOp::Eq => w[0] == w[1],
                        CmpOp::Ne => w[0] != w[1],
                    };
                }
                Bool(ok)
            }
            Expr::And(a, b) => Bool(boolean(a)? && boolean(b)?),
            Expr::Or(a, b) => Bool(boolean(a)? || boolean(b)?),
        })
    }

    pub fn eval_scalar(&self, env: &Bindings) -> Result<Scalar, ExprError> {
        match self.eval(env)? {
            Value::Num(x) => Ok(x),
            Value::Bool(_) => err("expected a number, found a boolean"),
        }
    }

    pub fn eval_bool(&self, env: &Bindings) -> Result<bool, ExprError> {
        match self.eval(env)? {
            Value::Bool(b) => Ok(b),
            Value::Num(_) => err("expected a boolean, found a number"),
        }
    }

    /// Identifiers mentioned by the expression.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => out.push(v.clone()),
            Expr::Num(_) | Expr::Bool(_) => {}
            Expr::Neg(a) | Expr::Not(a) | Expr::Pow(a, _) | Expr::Sqrt(a) => a.collect_vars(out),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::And(a, b)
            | Expr::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Chain(ts, _) => ts.iter().for_each(|t| t.collect_vars(out)),
        }
    }
}

pub fn eval_scalar(src: &str, env: &Bindings) -> Result<Scalar, ExprError> {
    parse(src)?.eval_scalar(env)
}

pub fn eval_bool(src: &str, env: &Bindings) -> Result<bool, ExprError> {
    parse(src)?.eval_bool(env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, &str)]) -> Bindings {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
            .collect()
    }

    #[test]
    fn arithmetic() {
        let e = env(&[("lambda", "1/2")]);
        assert_eq!(eval_scalar("1 - lambda", &e).unwrap(), Scalar::from_frac(1, 2));
        assert_eq!(eval_scalar("2*lambda^2 + 0.25", &e).unwrap(), Scalar::from_frac(3, 4));
        assert_eq!(eval_scalar("-(3)/-(6)", &e).unwrap(), Scalar::from_frac(1, 2));
        assert_eq!(eval_scalar("sqrt(8/9)", &e).unwrap().to_string(), "2/3*sqrt(2)");
        assert_eq!(eval_scalar("sqrt(9/4)", &e).unwrap(), Scalar::from_frac(3, 2));
    }

    #[test]
    fn chained_predicates() {
        let p = parse("-1 < mu && mu <= 1 && mu != 0 || mu == -5").unwrap();
        for (v, want) in [("-1", false), ("-1/2", true), ("0", false), ("1", true), ("-5", true)] {
            assert_eq!(p.eval_bool(&env(&[("mu", v)])).unwrap(), want, "mu = {v}");
        }
        let q = parse("-1 < mu <= lambda <= 1").unwrap();
        assert!(q.eval_bool(&env(&[("mu", "0"), ("lambda", "1")])).unwrap());
        assert!(!q.eval_bool(&env(&[("mu", "1/2"), ("lambda", "1/3")])).unwrap());
        assert_eq!(q.vars(), vec!["lambda".to_string(), "mu".to_string()]);
    }

    #[test]
    fn golden_ratio_comparisons() {
        let e = env(&[("c", "1/2+1/2*sqrt(5)")]);
        assert!(eval_bool("c^2 - c - 1 == 0", &e).unwrap());
        assert!(eval_bool("8/5 < c < 13/8", &e).unwrap());
    }

    #[test]
    fn errors_carry_location() {
        let e = parse("1 + * 2").unwrap_err();
        assert!(e.0.contains("offset 4"), "{e}");
        assert!(parse("1 $ 2").is_err());
        assert!(eval_scalar("x", &Bindings::new()).is_err());
        assert!(eval_scalar("1/0", &Bindings::new()).is_err());
        assert!(eval_scalar("sqrt(-1)", &Bindings::new()).is_err());
    }

    #[test]
    fn split_square_examples() {
        assert_eq!(split_square(&BigInt::from(72)), Some((BigInt::from(6), 2)));
        assert_eq!(split_square(&BigInt::from(49)), Some((BigInt::from(7), 1)));
        assert_eq!(split_square(&BigInt::from(30)), Some((BigInt::from(1), 30)));
    }
}
