//! Small s-expression language for registry conditions and results.
//!
//! Atoms: integers, rationals `a/b`, `true`, `false`, and the variables
//! `p`, `n`, `x`, `y`. Operators: `+ - * /`, `sym` (Jacobi symbol),
//! `mod`, `=` (all arguments equal), `<`, `>`, `and`, `or`, `not`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{jacobi, parse_rational};
use crate::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    P,
    N,
    X,
    Y,
}

impl Var {
    fn name(&self) -> &'static str {
        match self {
            Var::P => "p",
            Var::N => "n",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Sym,
    Mod,
    Eq,
    Lt,
    Gt,
    And,
    Or,
    Not,
}

impl Op {
    fn parse(s: &str) -> Option<Op> {
        Some(match s {
            "+" => Op::Add,
            "-" => Op::Sub,
            "*" => Op::Mul,
            "/" => Op::Div,
            "sym" => Op::Sym,
            "mod" => Op::Mod,
            "=" => Op::Eq,
            "<" => Op::Lt,
            ">" => Op::Gt,
            "and" => Op::And,
            "or" => Op::Or,
            "not" => Op::Not,
            _ => return None,
        })
    }

    fn name(&self) -> &'static str {
        match self {
            Op::Add => "+",
            Op::Sub => "-",
            Op::Mul => "*",
            Op::Div => "/",
            Op::Sym => "sym",
            Op::Mod => "mod",
            Op::Eq => "=",
            Op::Lt => "<",
            Op::Gt => ">",
            Op::And => "and",
            Op::Or => "or",
            Op::Not => "not",
        }
    }

    /// (min, max) argument count.
    fn arity(&self) -> (usize, usize) {
        match self {
            Op::Add | Op::Mul | Op::And | Op::Or => (1, usize::MAX),
            Op::Sub => (1, 2),
            Op::Eq => (2, usize::MAX),
            Op::Div | Op::Sym | Op::Mod | Op::Lt | Op::Gt => (2, 2),
            Op::Not => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Type {
    Num,
    Bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(ExactRational),
    Bool(bool),
    Var(Var),
    Apply(Op, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(ExactRational),
    Bool(bool),
}

impl Value {
    pub fn as_num(&self) -> Result<&ExactRational> {
        match self {
            Value::Num(q) => Ok(q),
            Value::Bool(_) => Err(Error::Expr("expected a number, found a boolean".into())),
        }
    }

    pub fn as_bool(&self) -> Result<bool> {
        match self {
            Value::Bool(b) => Ok(*b),
            Value::Num(_) => Err(Error::Expr("expected a boolean, found a number".into())),
        }
    }
}

/// Variable bindings; unbound variables are evaluation errors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Env {
    pub p: Option<u64>,
    pub n: Option<u64>,
    pub x: Option<i64>,
    pub y: Option<i64>,
}

impl Env {
    pub fn with_p(p: u64) -> Self {
        Env {
            p: Some(p),
            ..Env::default()
        }
    }

    fn lookup(&self, v: Var) -> Option<BigInt> {
        match v {
            Var::P => self.p.map(BigInt::from),
            Var::N => self.n.map(BigInt::from),
            Var::X => self.x.map(BigInt::from),
            Var::Y => self.y.map(BigInt::from),
        }
    }
}

fn tokenize(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_atom(tok: &str) -> Result<Expr> {
    Ok(match tok {
        "true" => Expr::Bool(true),
        "false" => Expr::Bool(false),
        "p" => Expr::Var(Var::P),
        "n" => Expr::Var(Var::N),
        "x" => Expr::Var(Var::X),
        "y" => Expr::Var(Var::Y),
        _ => Expr::Num(
            parse_rational(tok).ok_or_else(|| Error::Expr(format!("unknown atom `{tok}`")))?,
        ),
    })
}

fn parse_tokens(toks: &[String], pos: &mut usize) -> Result<Expr> {
    let tok = toks
        .get(*pos)
        .ok_or_else(|| Error::Expr("unexpected end of expression".into()))?;
    *pos += 1;
    match tok.as_str() {
        ")" => Err(Error::Expr("unexpected `)`".into())),
        "(" => {
            let head = toks
                .get(*pos)
                .ok_or_else(|| Error::Expr("unexpected end after `(`".into()))?;
            let op = Op::parse(head).ok_or_else(|| Error::Expr(format!("unknown operator `{head}`")))?;
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match toks.get(*pos).map(String::as_str) {
                    None => return Err(Error::Expr("missing `)`".into())),
                    Some(")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_tokens(toks, pos)?),
                }
            }
            let (lo, hi) = op.arity();
            if args.len() < lo || args.len() > hi {
                return Err(Error::Expr(format!(
                    "`{}` takes {lo}..{} arguments, got {}",
                    op.name(),
                    if hi == usize::MAX { "n".to_string() } else { hi.to_string() },
                    args.len()
                )));
            }
            Ok(Expr::Apply(op, args))
        }
        atom => parse_atom(atom),
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let toks = tokenize(src);
        let mut pos = 0;
        let e = parse_tokens(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(Error::Expr(format!("trailing input after expression in `{src}`")));
        }
        Ok(e)
    }

    pub fn int(v: i64) -> Expr {
        Expr::Num(ExactRational::from_integer(v.into()))
    }

    /// Static type, rejecting ill-typed applications and variables not in `allowed`.
    pub fn check(&self, allowed: &[Var]) -> Result<Type> {
        match self {
            Expr::Num(_) => Ok(Type::Num),
            Expr::Bool(_) => Ok(Type::Bool),
            Expr::Var(v) => {
                if allowed.contains(v) {
                    Ok(Type::Num)
                } else {
                    Err(Error::Expr(format!("variable `{}` is not available here", v.name())))
                }
            }
            Expr::Apply(op, args) => {
                let types = args
                    .iter()
                    .map(|a| a.check(allowed))
                    .collect::<Result<Vec<_>>>()?;
                let want = match op {
                    Op::And | Op::Or | Op::Not => Type::Bool,
                    _ => Type::Num,
                };
                if types.iter().any(|t| *t != want) {
                    return Err(Error::Expr(format!("`{}` applied to wrong argument type", op.name())));
                }
                Ok(match op {
                    Op::Add | Op::Sub | Op::Mul | Op::Div | Op::Sym | Op::Mod => Type::Num,
                    _ => Type::Bool,
                })
            }
        }
    }

    pub fn eval(&self, env: &Env) -> Result<Value> {
        match self {
            Expr::Num(q) => Ok(Value::Num(q.clone())),
            Expr::Bool(b) => Ok(Value::Bool(*b)),
            Expr::Var(v) => env
                .lookup(*v)
                .map(|i| Value::Num(ExactRational::from_integer(i)))
                .ok_or_else(|| Error::Expr(format!("variable `{}` is unbound", v.name()))),
            Expr::Apply(op, args) => eval_apply(*op, args, env),
        }
    }

    pub fn eval_num(&self, env: &Env) -> Result<ExactRational> {
        self.eval(env)?.as_num().cloned()
    }

    pub fn eval_bool(&self, env: &Env) -> Result<bool> {
        self.eval(env)?.as_bool()
    }

    /// Integer literals used as `sym` arguments or `mod` moduli; a prime
    /// dividing one of them is where symbol conditions may degenerate.
    pub fn arithmetic_literals(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals(&self, out: &mut Vec<BigInt>) {
        if let Expr::Apply(op, args) = self {
            for (i, a) in args.iter().enumerate() {
                let counted = *op == Op::Sym || (*op == Op::Mod && i == 1);
                if let (true, Expr::Num(q)) = (counted, a) {
                    out.push(q.to_integer());
                }
                a.collect_literals(out);
            }
        }
    }
}

fn as_int(q: &ExactRational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Expr(format!("{what} needs an integer, got {q}")))
    }
}

fn eval_apply(op: Op, args: &[Expr], env: &Env) -> Result<Value> {
    match op {
        Op::And => {
            for a in args {
                if !a.eval_bool(env)? {
                    return Ok(Value::Bool(false));
                }
            }
            Ok(Value::Bool(true))
        }
        Op::Or => {
            for a in args {
                if a.eval_bool(env)? {
                    return Ok(Value::Bool(true));
                }
            }
            Ok(Value::Bool(false))
        }
        Op::Not => Ok(Value::Bool(!args[0].eval_bool(env)?)),
        _ => {
            let vals = args
                .iter()
                .map(|a| a.eval_num(env))
                .collect::<Result<Vec<_>>>()?;
            let num = |q: ExactRational| Ok(Value::Num(q));
            match op {
                Op::Add => num(vals.into_iter().fold(ExactRational::zero(), |a, b| a + b)),
                Op::Mul => num(vals.into_iter().fold(ExactRational::one(), |a, b| a * b)),
                Op::Sub if vals.len() == 1 => num(-vals[0].clone()),
                Op::Sub => num(&vals[0] - &vals[1]),
                Op::Div => {
                    if vals[1].is_zero() {
                        return Err(Error::Expr("division by zero".into()));
                    }
                    num(&vals[0] / &vals[1])
                }
                Op::Sym => {
                    let top = as_int(&vals[0], "sym")?;
                    let bottom = as_int(&vals[1], "sym")?;
                    let (t, b) = (
                        top.to_i64().ok_or_else(|| Error::Expr("sym argument too large".into()))?,
                        bottom.to_i64().ok_or_else(|| Error::Expr("sym argument too large".into()))?,
                    );
                    num(ExactRational::from_integer(jacobi(t, b)?.into()))
                }
                Op::Mod => {
                    let a = as_int(&vals[0], "mod")?;
                    let m = as_int(&vals[1], "mod")?;
                    if !m.is_positive() {
                        return Err(Error::Expr("mod needs a positive modulus".into()));
                    }
                    num(ExactRational::from_integer(a.mod_floor(&m)))
                }
                Op::Eq => Ok(Value::Bool(vals.windows(2).all(|w| w[0] == w[1]))),
                Op::Lt => Ok(Value::Bool(vals[0] < vals[1])),
                Op::Gt => Ok(Value::Bool(vals[0] > vals[1])),
                Op::And | Op::Or | Op::Not => unreachable!(),
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Bool(b) => write!(f, "{b}"),
            Expr::Var(v) => f.write_str(v.name()),
            Expr::Apply(op, args) => {
                write!(f, "({}", op.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn num(src: &str, env: &Env) -> ExactRational {
        Expr::parse(src).unwrap().eval_num(env).unwrap()
    }

    #[test]
    fn arithmetic_and_symbols() {
        let env = Env::with_p(13);
        assert_eq!(num("(- (* 4 x x) (* 2 p))", &Env { x: Some(3), ..env }), rat(10, 1));
        assert_eq!(num("(* (/ p 26) (+ 1 1))", &env), rat(1, 1));
        assert_eq!(num("(sym -1 p)", &env), rat(1, 1));
        assert_eq!(num("(sym p 3)", &env), rat(1, 1));
        assert_eq!(num("(mod -3 5)", &env), rat(2, 1));
        assert_eq!(num("-1/2", &env), rat(-1, 2));
        assert_eq!(num("(- p)", &env), rat(-13, 1));
    }

    #[test]
    fn booleans() {
        let env = Env::with_p(29);
        let t = |s: &str| Expr::parse(s).unwrap().eval_bool(&env).unwrap();
        assert!(t("(= (mod p 20) 9)"));
        assert!(t("(and (= (sym -1 p) 1) (not (= (sym p 3) 1)))"));
        assert!(t("(or false (> p 5))"));
        assert!(t("(= 1 1 1)"));
        assert!(!t("(= 1 1 -1)"));
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("(+ 1 2").is_err());
        assert!(Expr::parse("(frob 1)").is_err());
        assert!(Expr::parse("(/ 1)").is_err());
        assert!(Expr::parse("1 2").is_err());
        assert!(Expr::parse("z").is_err());
    }

    #[test]
    fn type_check() {
        let e = Expr::parse("(and (= x 1) 2)").unwrap();
        assert!(e.check(&[Var::X]).is_err());
        let e = Expr::parse("(* 4 x y)").unwrap();
        assert_eq!(e.check(&[Var::P, Var::X, Var::Y]).unwrap(), Type::Num);
        assert!(e.check(&[Var::P]).is_err());
    }

    #[test]
    fn display_round_trip() {
        let src = "(and (= (sym -2 p) 1) (= (mod p 8) 3))";
        let e = Expr::parse(src).unwrap();
        assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn literals_found() {
        let e = Expr::parse("(and (= (sym -13 p) (sym p 7) 1) (= (mod p 20) 3))").unwrap();
        assert_eq!(
            e.arithmetic_literals(),
            vec![BigInt::from(-13), BigInt::from(7), BigInt::from(20)]
        );
    }
}
