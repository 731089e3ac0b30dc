//! Registry records and the JSON-lines loader.
//!
//! One JSON object per line; blank lines and lines starting with `#` are
//! skipped. Rationals are `"num/den"` strings and all conditions and results
//! are s-expressions (see [`super::expr`]).

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Value};

use super::expr::{Expr, Type, Var};
use super::rep::NormTag;
use crate::error::{Error, Result};
use crate::exactmath::parse_rational;
use crate::ExactRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    RepCongruence,
    RhsCongruence,
    PadicIntegrality,
    Divisibility,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::RepCongruence => "rep-congruence",
            CheckKind::RhsCongruence => "rhs-congruence",
            CheckKind::PadicIntegrality => "padic-integrality",
            CheckKind::Divisibility => "divisibility",
        }
    }

    pub fn is_congruence(&self) -> bool {
        matches!(self, CheckKind::RepCongruence | CheckKind::RhsCongruence)
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            CheckKind::RepCongruence,
            CheckKind::RhsCongruence,
            CheckKind::PadicIntegrality,
            CheckKind::Divisibility,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a divisibility claim asserts about its scaled sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivTarget {
    Integer,
    PositiveInteger,
    /// p-integral at every prime satisfying the record's condition.
    PadicInteger,
}

impl FromStr for DivTarget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "Z" => Ok(DivTarget::Integer),
            "Z+" => Ok(DivTarget::PositiveInteger),
            "Zp" => Ok(DivTarget::PadicInteger),
            _ => Err(format!("unknown target `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepCase {
    pub when: Expr,
    pub a: u64,
    pub d: u64,
    /// The form represents `target_multiple * p`.
    pub target_multiple: u64,
    pub norm: NormTag,
    pub result: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OtherwiseCase {
    pub when: Expr,
    pub result: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepRule {
    pub cases: Vec<RepCase>,
    pub otherwise: Option<OtherwiseCase>,
}

/// One checkable claim about `sum (a k + b) r^k S_k^(m)(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureSpec {
    pub id: String,
    /// Short human label of the claim's source, e.g. "4.7(ii)".
    pub label: String,
    pub kind: CheckKind,
    pub m: u32,
    pub c: ExactRational,
    pub r: ExactRational,
    /// `(a, b)`; `(0, 1)` for a plain sum.
    pub weights: (ExactRational, ExactRational),
    pub p_min: u64,
    pub excluded: Vec<u64>,
    pub condition: Expr,
    pub rule: Option<RepRule>,
    pub rhs: Option<Expr>,
    pub epsilon: Expr,
    pub scale: Option<Expr>,
    pub target: Option<DivTarget>,
    pub note: Option<String>,
}

impl ConjectureSpec {
    /// True when `self.id` equals `prefix` or starts with `prefix` followed by `.`.
    pub fn matches_id(&self, prefix: &str) -> bool {
        self.id == prefix
            || self
                .id
                .strip_prefix(prefix)
                .is_some_and(|rest| rest.starts_with('.'))
    }
}

const BUILTIN: &str = include_str!("builtin.jsonl");

/// The shipped registry.
pub fn builtin_registry() -> Vec<ConjectureSpec> {
    parse_registry(BUILTIN).expect("built-in registry is well formed")
}

pub fn registry_load(path: &Path) -> Result<Vec<ConjectureSpec>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Registry {
        line: 0,
        field: "file".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    parse_registry(&text)
}

/// `base` extended by `extra`; records of `extra` replace those of `base`
/// with the same id and otherwise follow in file order.
pub fn merge_registry(base: Vec<ConjectureSpec>, extra: Vec<ConjectureSpec>) -> Vec<ConjectureSpec> {
    let mut out = base;
    for spec in extra {
        match out.iter_mut().find(|s| s.id == spec.id) {
            Some(slot) => *slot = spec,
            None => out.push(spec),
        }
    }
    out
}

/// Parses registry text; ids must be unique.
pub fn parse_registry(text: &str) -> Result<Vec<ConjectureSpec>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: Value = serde_json::from_str(trimmed).map_err(|e| Error::Registry {
            line,
            field: "<record>".into(),
            message: e.to_string(),
        })?;
        let spec = parse_record(&value, line)?;
        if !seen.insert(spec.id.clone()) {
            return Err(Error::Registry {
                line,
                field: "id".into(),
                message: format!("duplicate id `{}`", spec.id),
            });
        }
        out.push(spec);
    }
    Ok(out)
}

const FIELDS: &[&str] = &[
    "id", "label", "kind", "m", "c", "r", "weights", "p_min", "excluded", "condition", "cases",
    "otherwise", "rhs", "epsilon", "scale", "target", "note",
];

struct Record<'a> {
    obj: &'a Map<String, Value>,
    line: usize,
}

impl<'a> Record<'a> {
    fn err(&self, field: &str, message: impl Into<String>) -> Error {
        Error::Registry {
            line: self.line,
            field: field.into(),
            message: message.into(),
        }
    }

    fn get(&self, field: &str) -> Option<&'a Value> {
        self.obj.get(field).filter(|v| !v.is_null())
    }

    fn required(&self, field: &str) -> Result<&'a Value> {
        self.get(field).ok_or_else(|| self.err(field, "missing"))
    }

    fn string(&self, field: &str) -> Result<&'a str> {
        self.required(field)?
            .as_str()
            .ok_or_else(|| self.err(field, "expected a string"))
    }

    fn opt_string(&self, field: &str) -> Result<Option<&'a str>> {
        match self.get(field) {
            None => Ok(None),
            Some(v) => v
                .as_str()
                .map(Some)
                .ok_or_else(|| self.err(field, "expected a string")),
        }
    }

    fn uint(&self, v: &Value, field: &str) -> Result<u64> {
        v.as_u64()
            .ok_or_else(|| self.err(field, "expected a nonnegative integer"))
    }

    fn rational(&self, v: &Value, field: &str) -> Result<ExactRational> {
        match v {
            Value::String(s) => {
                parse_rational(s).ok_or_else(|| self.err(field, format!("bad rational `{s}`")))
            }
            Value::Number(n) => n
                .as_i64()
                .map(|i| ExactRational::from_integer(i.into()))
                .ok_or_else(|| self.err(field, "expected an integer or \"num/den\"")),
            _ => Err(self.err(field, "expected a rational")),
        }
    }

    fn expr(&self, v: &Value, field: &str, vars: &[Var], ty: Type) -> Result<Expr> {
        let src = v
            .as_str()
            .ok_or_else(|| self.err(field, "expected an s-expression string"))?;
        let e = Expr::parse(src).map_err(|e| self.err(field, e.to_string()))?;
        let got = e.check(vars).map_err(|e| self.err(field, e.to_string()))?;
        if got != ty {
            return Err(self.err(field, format!("expected a {ty:?} expression")));
        }
        Ok(e)
    }
}

fn parse_record(value: &Value, line: usize) -> Result<ConjectureSpec> {
    let obj = value.as_object().ok_or_else(|| Error::Registry {
        line,
        field: "<record>".into(),
        message: "expected a JSON object".into(),
    })?;
    let rec = Record { obj, line };
    for key in obj.keys() {
        if !FIELDS.contains(&key.as_str()) {
            return Err(rec.err(key, "unknown field"));
        }
    }

    let id = rec.string("id")?.to_string();
    if id.is_empty() {
        return Err(rec.err("id", "empty"));
    }
    let label = rec.opt_string("label")?.unwrap_or(&id).to_string();
    let kind: CheckKind = rec
        .string("kind")?
        .parse()
        .map_err(|e: String| rec.err("kind", e))?;
    let m = match rec.get("m") {
        None => 2,
        Some(v) => rec.uint(v, "m")? as u32,
    };
    let c = rec.rational(rec.required("c")?, "c")?;
    let r = match rec.get("r") {
        None => ExactRational::from_integer(1.into()),
        Some(v) => rec.rational(v, "r")?,
    };
    if num_traits::Zero::is_zero(&r) {
        return Err(rec.err("r", "ratio must be nonzero"));
    }
    let weights = match rec.get("weights") {
        None => (
            ExactRational::from_integer(0.into()),
            ExactRational::from_integer(1.into()),
        ),
        Some(Value::Array(a)) if a.len() == 2 => {
            (rec.rational(&a[0], "weights")?, rec.rational(&a[1], "weights")?)
        }
        Some(_) => return Err(rec.err("weights", "expected [a, b]")),
    };
    let p_min = match rec.get("p_min") {
        None => 3,
        Some(v) => rec.uint(v, "p_min")?,
    };
    let excluded = match rec.get("excluded") {
        None => Vec::new(),
        Some(Value::Array(a)) => a
            .iter()
            .map(|v| rec.uint(v, "excluded"))
            .collect::<Result<Vec<_>>>()?,
        Some(_) => return Err(rec.err("excluded", "expected a list of primes")),
    };
    let p_only = [Var::P];
    let condition = match rec.get("condition") {
        None => Expr::Bool(true),
        Some(v) => rec.expr(v, "condition", &p_only, Type::Bool)?,
    };
    let epsilon = match rec.get("epsilon") {
        None => Expr::int(1),
        Some(v) => rec.expr(v, "epsilon", &p_only, Type::Num)?,
    };
    let rhs = rec
        .get("rhs")
        .map(|v| rec.expr(v, "rhs", &p_only, Type::Num))
        .transpose()?;
    let scale = rec
        .get("scale")
        .map(|v| rec.expr(v, "scale", &[Var::N], Type::Num))
        .transpose()?;
    let target = rec
        .opt_string("target")?
        .map(|s| s.parse::<DivTarget>().map_err(|e| rec.err("target", e)))
        .transpose()?;
    let note = rec.opt_string("note")?.map(str::to_string);

    let rule = if kind == CheckKind::RepCongruence {
        Some(parse_rule(&rec)?)
    } else {
        for f in ["cases", "otherwise"] {
            if rec.get(f).is_some() {
                return Err(rec.err(f, format!("not allowed for kind {kind}")));
            }
        }
        None
    };

    match kind {
        CheckKind::RhsCongruence if rhs.is_none() => return Err(rec.err("rhs", "missing")),
        CheckKind::Divisibility => {
            if scale.is_none() {
                return Err(rec.err("scale", "missing"));
            }
            if target.is_none() {
                return Err(rec.err("target", "missing"));
            }
        }
        _ => {}
    }

    Ok(ConjectureSpec {
        id,
        label,
        kind,
        m,
        c,
        r,
        weights,
        p_min,
        excluded,
        condition,
        rule,
        rhs,
        epsilon,
        scale,
        target,
        note,
    })
}

fn parse_rule(rec: &Record<'_>) -> Result<RepRule> {
    let raw = rec
        .required("cases")?
        .as_array()
        .ok_or_else(|| rec.err("cases", "expected a list"))?;
    let result_vars = [Var::P, Var::X, Var::Y];
    let mut cases = Vec::new();
    for (i, v) in raw.iter().enumerate() {
        let field = |f: &str| format!("cases[{i}].{f}");
        let obj = v
            .as_object()
            .ok_or_else(|| rec.err(&format!("cases[{i}]"), "expected an object"))?;
        for key in obj.keys() {
            if !["when", "a", "d", "target", "norm", "result"].contains(&key.as_str()) {
                return Err(rec.err(&field(key), "unknown field"));
            }
        }
        let get = |f: &str| obj.get(f).ok_or_else(|| rec.err(&field(f), "missing"));
        let when = rec.expr(get("when")?, &field("when"), &[Var::P], Type::Bool)?;
        let a = rec.uint(get("a")?, &field("a"))?;
        let d = rec.uint(get("d")?, &field("d"))?;
        if a == 0 || d == 0 {
            return Err(rec.err(&field("a"), "form coefficients must be positive"));
        }
        let target_multiple = match obj.get("target") {
            None => 1,
            Some(t) => rec.uint(t, &field("target"))?,
        };
        if !(1..=2).contains(&target_multiple) {
            return Err(rec.err(&field("target"), "expected 1 or 2"));
        }
        let norm = match obj.get("norm") {
            None => NormTag::None,
            Some(t) => t
                .as_str()
                .ok_or_else(|| rec.err(&field("norm"), "expected a string"))?
                .parse()
                .map_err(|e: String| rec.err(&field("norm"), e))?,
        };
        let result = rec.expr(get("result")?, &field("result"), &result_vars, Type::Num)?;
        cases.push(RepCase {
            when,
            a,
            d,
            target_multiple,
            norm,
            result,
        });
    }
    let otherwise = match rec.get("otherwise") {
        None => None,
        Some(v) => {
            let obj = v
                .as_object()
                .ok_or_else(|| rec.err("otherwise", "expected an object"))?;
            let when = obj
                .get("when")
                .ok_or_else(|| rec.err("otherwise.when", "missing"))?;
            let result = obj
                .get("result")
                .ok_or_else(|| rec.err("otherwise.result", "missing"))?;
            Some(OtherwiseCase {
                when: rec.expr(when, "otherwise.when", &[Var::P], Type::Bool)?,
                result: rec.expr(result, "otherwise.result", &[Var::P], Type::Num)?,
            })
        }
    };
    Ok(RepRule { cases, otherwise })
}
