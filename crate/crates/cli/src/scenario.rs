//! Line-oriented scenario files.
//!
//! ```text
//! # Example: x/3 on [0, 1]
//! name = "thirds"
//! domain = [0, 1]
//! maps.T = "x/3"
//! gauges.q = 0.577
//! gauges.delta = "1 + x + y"
//! ```
//!
//! Each line is `key = value` (or `key: value`); `#` starts a comment outside
//! quotes. Matrix-valued entries take a scalar expression (times the unit), a
//! diagonal `diag[e1, e2]` or a full matrix `[a, b; c, d]`.

use std::collections::HashMap;
use std::fmt;

use cstar_core::gallery::{builtin_map, BUILTIN_MAPS, DEFAULT_STARTS};
use cstar_core::{
    Algebra, Element, Gauge, GaugeForm, Map, MappingScenario, MetricSpace, NormMode, OrderMode, PointDomain,
    ScalarField, Tolerance,
};
use thiserror::Error;

use crate::expr::{EvalError, Expr, ParseError, Var};

pub const DEFAULT_MAX_POWER: u32 = 10;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SAMPLE_STEP: f64 = cstar_core::gallery::SAMPLE_STEP;

/// Every accepted key, in the order of the normalised form.
pub const KEYS: [&str; 20] = [
    "name",
    "algebra.scalar",
    "algebra.dim",
    "algebra.norm_mode",
    "algebra.order_mode",
    "domain",
    "complete",
    "metric",
    "maps.T",
    "maps.S",
    "gauges.q",
    "gauges.delta",
    "gauges.form",
    "gauges.a",
    "gauges.kannan",
    "run.max_power",
    "run.max_iter",
    "run.tol",
    "run.sample_step",
    "run.starts",
];

const REQUIRED: [&str; 4] = ["domain", "maps.T", "gauges.q", "gauges.delta"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Code {
    Syntax,
    UnknownField,
    DuplicateField,
    MissingField,
    InvalidValue,
    UnknownBuiltin,
    Invariant,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::Syntax => "syntax",
            Code::UnknownField => "unknown-field",
            Code::DuplicateField => "duplicate-field",
            Code::MissingField => "missing-field",
            Code::InvalidValue => "invalid-value",
            Code::UnknownBuiltin => "unknown-builtin",
            Code::Invariant => "invariant",
        }
    }
}

/// A problem at a 1-based line and column; line 0 refers to the whole file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: Code,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "error[{}]: {}", self.code.as_str(), self.message)
        } else {
            write!(
                f,
                "{}:{}: error[{}]: {}",
                self.line,
                self.column,
                self.code.as_str(),
                self.message
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl Diagnostics {
    pub fn codes(&self) -> Vec<Code> {
        self.0.iter().map(|d| d.code).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    Interval {
        lo: f64,
        hi: f64,
        lo_closed: bool,
        hi_closed: bool,
    },
    Finite(Vec<f64>),
    Dyadic(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    Builtin(String),
    Expr(Expr),
}

/// A matrix-valued function of `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSpec {
    /// Expression times the unit.
    Scalar(Expr),
    Diag(Vec<Expr>),
    Full(Vec<Vec<Expr>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum MetricSpec {
    /// `|x − y|` times the unit.
    Usual,
    Value(MatrixSpec),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraSpec {
    pub scalar: ScalarField,
    pub dim: usize,
    pub norm_mode: NormMode,
    pub order_mode: OrderMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub max_power: u32,
    pub max_iter: usize,
    pub tol: f64,
    pub sample_step: f64,
    pub starts: Option<Vec<f64>>,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            max_power: DEFAULT_MAX_POWER,
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
            sample_step: DEFAULT_SAMPLE_STEP,
            starts: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub name: String,
    pub algebra: AlgebraSpec,
    pub domain: DomainSpec,
    pub complete: bool,
    pub metric: MetricSpec,
    pub t: MapSpec,
    pub s: Option<MapSpec>,
    pub q: MatrixSpec,
    pub delta: MatrixSpec,
    pub form: GaugeForm,
    /// Gauge of the plain contraction check.
    pub eq1_gauge: Option<MatrixSpec>,
    /// Coefficient of the Kannan check.
    pub kannan_gauge: Option<MatrixSpec>,
    pub run: RunSpec,
}

/// A scenario ready for the certifiers and solvers.
#[derive(Debug, Clone)]
pub struct Built {
    pub scenario: MappingScenario,
    pub eq1_gauge: Option<Element>,
    pub kannan_gauge: Option<Element>,
    pub starts: Vec<f64>,
}

impl DomainSpec {
    pub fn to_domain(&self, step: f64) -> cstar_core::Result<PointDomain> {
        match self {
            DomainSpec::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => PointDomain::interval(*lo, *hi, *lo_closed, *hi_closed, step),
            DomainSpec::Finite(points) => PointDomain::finite(points.clone()),
            DomainSpec::Dyadic(depth) => PointDomain::dyadic(*depth),
        }
    }

    /// Open intervals are the only incomplete default.
    fn default_complete(&self) -> bool {
        match self {
            DomainSpec::Interval {
                lo_closed, hi_closed, ..
            } => *lo_closed && *hi_closed,
            _ => true,
        }
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainSpec::Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            } => {
                let open = if *lo_closed { '[' } else { '(' };
                let close = if *hi_closed { ']' } else { ')' };
                write!(f, "{open}{lo:?}, {hi:?}{close}")
            }
            DomainSpec::Finite(points) => write!(f, "{{{}}}", join_numbers(points)),
            DomainSpec::Dyadic(depth) => write!(f, "dyadic({depth})"),
        }
    }
}

impl MapSpec {
    pub fn to_map(&self) -> Map {
        match self {
            MapSpec::Builtin(name) => builtin_map(name).expect("builtin checked at parse time"),
            MapSpec::Expr(e) => {
                let e = e.clone();
                Map::new(e.to_string(), move |x| e.eval(x, None).unwrap_or(f64::NAN))
            }
        }
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Builtin(name) => f.write_str(name),
            MapSpec::Expr(e) => write!(f, "\"{e}\""),
        }
    }
}

impl MatrixSpec {
    fn exprs(&self) -> Vec<&Expr> {
        match self {
            MatrixSpec::Scalar(e) => vec![e],
            MatrixSpec::Diag(es) => es.iter().collect(),
            MatrixSpec::Full(rows) => rows.iter().flatten().collect(),
        }
    }

    fn shape_fits(&self, dim: usize) -> bool {
        match self {
            MatrixSpec::Scalar(_) => true,
            MatrixSpec::Diag(es) => es.len() == dim,
            MatrixSpec::Full(rows) => rows.len() == dim && rows.iter().all(|r| r.len() == dim),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.exprs().iter().all(|e| e.is_constant())
    }

    pub fn element(&self, dim: usize, x: f64, y: f64) -> Result<Element, EvalError> {
        Ok(match self {
            MatrixSpec::Scalar(e) => Element::scalar(dim, e.eval(x, Some(y))?),
            MatrixSpec::Diag(es) => {
                let vals = es.iter().map(|e| e.eval(x, Some(y))).collect::<Result<Vec<_>, _>>()?;
                Element::diag(&vals)
            }
            MatrixSpec::Full(rows) => {
                let vals = rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.eval(x, Some(y))).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let refs: Vec<&[f64]> = vals.iter().map(|r| r.as_slice()).collect();
                Element::from_real_rows(&refs)
            }
        })
    }

    fn gauge(&self, dim: usize) -> Gauge {
        let spec = self.clone();
        Gauge::new(move |x, y| {
            spec.element(dim, x, y)
                .unwrap_or_else(|_| Element::scalar(dim, f64::NAN))
        })
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |es: &[Expr]| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
        match self {
            MatrixSpec::Scalar(e) => write!(f, "\"{e}\""),
            MatrixSpec::Diag(es) => write!(f, "\"diag[{}]\"", list(es)),
            MatrixSpec::Full(rows) => {
                let rows: Vec<String> = rows.iter().map(|r| list(r)).collect();
                write!(f, "\"[{}]\"", rows.join("; "))
            }
        }
    }
}

fn join_numbers(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(", ")
}

fn field_name(s: ScalarField) -> &'static str {
    match s {
        ScalarField::Real => "real",
        ScalarField::Complex => "complex",
    }
}

fn norm_name(m: NormMode) -> &'static str {
    match m {
        NormMode::Operator => "operator",
        NormMode::MaxEntry => "max-entry",
    }
}

fn order_name(m: OrderMode) -> &'static str {
    match m {
        OrderMode::Positivity => "positivity",
        OrderMode::Entrywise => "entrywise",
    }
}

fn form_name(f: GaugeForm) -> &'static str {
    match f {
        GaugeForm::Type1 => "type1",
        GaugeForm::Type2 => "type2",
    }
}

impl ScenarioFile {
    /// Normalised text: every key spelled out, in [`KEYS`] order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        put("name", format!("\"{}\"", self.name));
        put("algebra.scalar", field_name(self.algebra.scalar).into());
        put("algebra.dim", self.algebra.dim.to_string());
        put("algebra.norm_mode", norm_name(self.algebra.norm_mode).into());
        put("algebra.order_mode", order_name(self.algebra.order_mode).into());
        put("domain", self.domain.to_string());
        put("complete", self.complete.to_string());
        put(
            "metric",
            match &self.metric {
                MetricSpec::Usual => "usual".into(),
                MetricSpec::Value(m) => m.to_string(),
            },
        );
        put("maps.T", self.t.to_string());
        if let Some(s) = &self.s {
            put("maps.S", s.to_string());
        }
        put("gauges.q", self.q.to_string());
        put("gauges.delta", self.delta.to_string());
        put("gauges.form", form_name(self.form).into());
        if let Some(a) = &self.eq1_gauge {
            put("gauges.a", a.to_string());
        }
        if let Some(k) = &self.kannan_gauge {
            put("gauges.kannan", k.to_string());
        }
        put("run.max_power", self.run.max_power.to_string());
        put("run.max_iter", self.run.max_iter.to_string());
        put("run.tol", format!("{:?}", self.run.tol));
        put("run.sample_step", format!("{:?}", self.run.sample_step));
        if let Some(starts) = &self.run.starts {
            put("run.starts", format!("[{}]", join_numbers(starts)));
        }
        out
    }

    pub fn algebra(&self) -> cstar_core::Result<Algebra> {
        let base = match self.algebra.scalar {
            ScalarField::Real => Algebra::real(self.algebra.dim),
            ScalarField::Complex => Algebra::complex(self.algebra.dim),
        };
        Ok(base
            .with_norm(self.algebra.norm_mode)
            .with_order(self.algebra.order_mode)
            .with_tol(Tolerance::uniform(self.run.tol)?))
    }

    pub fn build(&self) -> cstar_core::Result<Built> {
        let dim = self.algebra.dim;
        let algebra = self.algebra()?;
        let domain = self.domain.to_domain(self.run.sample_step)?;
        let space = match &self.metric {
            MetricSpec::Usual => MetricSpace::usual(domain, algebra, self.complete),
            MetricSpec::Value(m) => {
                let m = m.clone();
                MetricSpace::new(domain, algebra, self.complete, move |x, y| {
                    m.element(dim, x, y).unwrap_or_else(|_| Element::scalar(dim, f64::NAN))
                })
            }
        };
        let starts = match &self.run.starts {
            Some(s) => s.clone(),
            None => default_starts(&space),
        };
        let mut scenario = MappingScenario::new(space, self.t.to_map(), self.q.gauge(dim), self.delta.gauge(dim))
            .with_form(self.form)
            .with_max_power(self.run.max_power);
        if let Some(s) = &self.s {
            scenario = scenario.with_s(s.to_map());
        }
        let constant = |m: &Option<MatrixSpec>| m.as_ref().and_then(|m| m.element(dim, 0.0, 0.0).ok());
        Ok(Built {
            scenario,
            eq1_gauge: constant(&self.eq1_gauge),
            kannan_gauge: constant(&self.kannan_gauge),
            starts,
        })
    }
}

/// The standard starting points that lie in the space.
pub fn default_starts(space: &MetricSpace) -> Vec<f64> {
    let eps = space.eps_eq();
    DEFAULT_STARTS
        .iter()
        .copied()
        .filter(|&x| space.domain.contains(x, eps) && space.domain.snap(x, eps) == x)
        .collect()
}

/// A value with the 1-based column of its first character.
#[derive(Debug, Clone)]
struct Value {
    line: usize,
    col: usize,
    text: String,
}

impl Value {
    fn diag(&self, code: Code, offset: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            line: self.line,
            column: self.col + offset,
            message: message.into(),
        }
    }

    fn sub(&self, offset: usize, text: &str) -> Value {
        Value {
            line: self.line,
            col: self.col + offset,
            text: text.to_string(),
        }
    }

    /// Strips surrounding whitespace, keeping the column in step.
    fn trimmed(&self) -> Value {
        let lead = self.text.chars().take_while(|c| c.is_whitespace()).count();
        let inner: String = self.text.chars().skip(lead).collect();
        self.sub(lead, inner.trim_end())
    }

    /// Top-level pieces separated by `sep`, ignoring separators inside parentheses.
    fn split(&self, sep: char) -> Vec<Value> {
        let mut out = Vec::new();
        let (mut depth, mut start) = (0i32, 0);
        let chars: Vec<char> = self.text.chars().collect();
        for (i, &c) in chars.iter().enumerate() {
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                _ if c == sep && depth == 0 => {
                    out.push(self.sub(start, &chars[start..i].iter().collect::<String>()).trimmed());
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(self.sub(start, &chars[start..].iter().collect::<String>()).trimmed());
        out
    }

    /// Contents between one leading and one trailing delimiter.
    fn inner(&self, skip: usize) -> Value {
        let n = self.text.chars().count();
        let s: String = self.text.chars().skip(skip).take(n - skip - 1).collect();
        self.sub(skip, &s)
    }
}

fn expr_diag(v: &Value, e: ParseError) -> Diagnostic {
    v.diag(Code::Syntax, e.pos, e.message)
}

fn parse_expr(v: &Value) -> Result<Expr, Diagnostic> {
    Expr::parse(&v.text).map_err(|e| expr_diag(v, e))
}

fn parse_number(v: &Value) -> Result<f64, Diagnostic> {
    let v = v.trimmed();
    if v.text.is_empty() {
        return Err(v.diag(Code::Syntax, 0, "expected a number"));
    }
    let e = parse_expr(&v)?;
    if !e.is_constant() {
        return Err(v.diag(Code::InvalidValue, 0, "expected a constant"));
    }
    e.eval(0.0, None)
        .map_err(|err| v.diag(Code::InvalidValue, 0, err.to_string()))
}

fn parse_list(v: &Value) -> Result<Vec<f64>, Diagnostic> {
    let t = v.trimmed();
    let body = if t.text.starts_with('[') && t.text.ends_with(']') && t.text.len() >= 2 {
        t.inner(1)
    } else {
        t
    };
    if body.text.trim().is_empty() {
        return Err(body.diag(Code::InvalidValue, 0, "empty list"));
    }
    body.split(',').iter().map(parse_number).collect()
}

fn parse_domain(v: &Value) -> Result<DomainSpec, Diagnostic> {
    let t = v.trimmed();
    let text = t.text.as_str();
    if let Some(rest) = text.strip_prefix("dyadic(") {
        let depth = rest.strip_suffix(')').and_then(|d| d.trim().parse::<u32>().ok());
        return match depth {
            Some(d) if d >= 1 => Ok(DomainSpec::Dyadic(d)),
            _ => Err(t.diag(Code::InvalidValue, 7, "dyadic depth must be a positive integer")),
        };
    }
    let first = text.chars().next();
    let last = text.chars().last();
    match (first, last) {
        (Some(o @ ('[' | '(')), Some(c @ (']' | ')'))) if text.len() >= 2 => {
            let parts = t.inner(1).split(',');
            if parts.len() != 2 {
                return Err(t.diag(Code::InvalidValue, 0, "an interval needs exactly two endpoints"));
            }
            let lo = parse_number(&parts[0])?;
            let hi = parse_number(&parts[1])?;
            if lo >= hi {
                return Err(t.diag(Code::Invariant, 0, format!("empty interval: {lo} >= {hi}")));
            }
            Ok(DomainSpec::Interval {
                lo,
                hi,
                lo_closed: o == '[',
                hi_closed: c == ']',
            })
        }
        (Some('{'), Some('}')) if text.len() >= 2 => {
            let inner = t.inner(1);
            if inner.text.trim().is_empty() {
                return Err(t.diag(Code::InvalidValue, 0, "a finite domain needs at least one point"));
            }
            let points = inner.split(',').iter().map(parse_number).collect::<Result<_, _>>()?;
            Ok(DomainSpec::Finite(points))
        }
        _ => Err(t.diag(
            Code::InvalidValue,
            0,
            "expected `[lo, hi]`, `(lo, hi)`, `{a, b, ...}` or `dyadic(n)`",
        )),
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') && !s.starts_with(|c: char| c.is_ascii_digit())
}

fn parse_map(v: &Value) -> Result<MapSpec, Diagnostic> {
    let t = v.trimmed();
    if BUILTIN_MAPS.contains(&t.text.as_str()) {
        return Ok(MapSpec::Builtin(t.text));
    }
    if is_identifier(&t.text) && t.text != "x" && t.text != "y" {
        return Err(t.diag(
            Code::UnknownBuiltin,
            0,
            format!(
                "unknown builtin map `{}`; available: {}",
                t.text,
                BUILTIN_MAPS.join(", ")
            ),
        ));
    }
    let e = parse_expr(&t)?;
    if e.uses(Var::Y) {
        return Err(t.diag(Code::Invariant, 0, "a map may only use the variable x"));
    }
    Ok(MapSpec::Expr(e))
}

fn parse_matrix(v: &Value) -> Result<MatrixSpec, Diagnostic> {
    let t = v.trimmed();
    let text = t.text.as_str();
    if text.starts_with("diag[") && text.ends_with(']') {
        let entries = t.inner(5).split(',');
        let es = entries.iter().map(parse_expr).collect::<Result<_, _>>()?;
        return Ok(MatrixSpec::Diag(es));
    }
    if text.starts_with('[') && text.ends_with(']') && text.len() >= 2 {
        let mut rows = Vec::new();
        for row in t.inner(1).split(';') {
            rows.push(row.split(',').iter().map(parse_expr).collect::<Result<Vec<_>, _>>()?);
        }
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(t.diag(Code::InvalidValue, 0, "matrix rows have different lengths"));
        }
        return Ok(MatrixSpec::Full(rows));
    }
    Ok(MatrixSpec::Scalar(parse_expr(&t)?))
}

fn parse_keyword<T: Copy>(v: &Value, options: &[(&str, T)]) -> Result<T, Diagnostic> {
    let t = v.trimmed();
    options
        .iter()
        .find(|(name, _)| *name == t.text)
        .map(|(_, val)| *val)
        .ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            t.diag(
                Code::InvalidValue,
                0,
                format!("expected one of {}, found `{}`", names.join(", "), t.text),
            )
        })
}

fn parse_count(v: &Value) -> Result<u64, Diagnostic> {
    let t = v.trimmed();
    match t.text.parse::<u64>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(t.diag(
            Code::InvalidValue,
            0,
            format!("expected a positive integer, found `{}`", t.text),
        )),
    }
}

fn parse_positive(v: &Value, allow_zero: bool) -> Result<f64, Diagnostic> {
    let x = parse_number(v)?;
    if x > 0.0 || (allow_zero && x == 0.0) {
        Ok(x)
    } else {
        Err(v
            .trimmed()
            .diag(Code::InvalidValue, 0, format!("expected a positive number, found {x}")))
    }
}

/// Splits one line into key and value; `None` for blank and comment lines.
fn split_line(line: usize, text: &str) -> Result<Option<(String, usize, Value)>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let at = |i: usize, code: Code, msg: &str| Diagnostic {
        code,
        line,
        column: i + 1,
        message: msg.to_string(),
    };
    let skip_ws = |mut i: usize| {
        while i < chars.len() && chars[i].is_whitespace() {
            i += 1;
        }
        i
    };
    let mut i = skip_ws(0);
    if i == chars.len() || chars[i] == '#' {
        return Ok(None);
    }
    let key_start = i;
    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '.') {
        i += 1;
    }
    if i == key_start {
        return Err(at(i, Code::Syntax, "expected a key"));
    }
    let key: String = chars[key_start..i].iter().collect();
    i = skip_ws(i);
    if i == chars.len() || (chars[i] != '=' && chars[i] != ':') {
        return Err(at(i, Code::Syntax, "expected `=` after the key"));
    }
    i = skip_ws(i + 1);
    if i == chars.len() || chars[i] == '#' {
        return Err(at(i, Code::Syntax, "missing value"));
    }
    let value = if chars[i] == '"' {
        let Some(len) = chars[i + 1..].iter().position(|&c| c == '"') else {
            return Err(at(i, Code::Syntax, "unterminated string"));
        };
        let end = i + 1 + len;
        let after = skip_ws(end + 1);
        if after < chars.len() && chars[after] != '#' {
            return Err(at(after, Code::Syntax, "unexpected text after the closing quote"));
        }
        Value {
            line,
            col: i + 2,
            text: chars[i + 1..end].iter().collect(),
        }
    } else {
        let end = chars[i..].iter().position(|&c| c == '#').map_or(chars.len(), |p| i + p);
        let raw: String = chars[i..end].iter().collect();
        Value {
            line,
            col: i + 1,
            text: raw.trim_end().to_string(),
        }
    };
    Ok(Some((key, key_start + 1, value)))
}

fn suggestion(key: &str) -> String {
    let lower = key.to_lowercase();
    match KEYS
        .iter()
        .find(|k| k.to_lowercase() == lower || k.rsplit('.').next() == Some(key))
    {
        Some(k) => format!("; did you mean `{k}`?"),
        None => String::new(),
    }
}

/// Parses and validates a scenario file.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile, Diagnostics> {
    let mut diags = Vec::new();
    let mut values: HashMap<&'static str, Value> = HashMap::new();
    let mut last_line = 0;
    for (n, line) in text.lines().enumerate() {
        last_line = n + 1;
        match split_line(n + 1, line) {
            Ok(None) => {}
            Ok(Some((key, col, value))) => match KEYS.iter().find(|k| **k == key) {
                None => diags.push(Diagnostic {
                    code: Code::UnknownField,
                    line: n + 1,
                    column: col,
                    message: format!("unknown field `{key}`{}", suggestion(&key)),
                }),
                Some(k) if values.contains_key(k) => diags.push(Diagnostic {
                    code: Code::DuplicateField,
                    line: n + 1,
                    column: col,
                    message: format!("`{key}` already set on line {}", values[k].line),
                }),
                Some(k) => {
                    values.insert(k, value);
                }
            },
            Err(d) => diags.push(d),
        }
    }
    for key in REQUIRED {
        if !values.contains_key(key) {
            diags.push(Diagnostic {
                code: Code::MissingField,
                line: 0,
                column: 0,
                message: format!("missing required field `{key}` (file has {last_line} lines)"),
            });
        }
    }

    macro_rules! field {
        ($key:expr, $parse:expr, $default:expr) => {
            match values.get($key) {
                Some(v) => match $parse(v) {
                    Ok(x) => Some(x),
                    Err(d) => {
                        diags.push(d);
                        None
                    }
                },
                None => $default,
            }
        };
    }

    let name = field!(
        "name",
        |v: &Value| if v.text.contains('"') {
            Err(v.diag(Code::InvalidValue, 0, "names may not contain `\"`"))
        } else {
            Ok(v.text.trim().to_string())
        },
        Some("scenario".to_string())
    );
    let scalar = field!(
        "algebra.scalar",
        |v| parse_keyword(v, &[("real", ScalarField::Real), ("complex", ScalarField::Complex)]),
        Some(ScalarField::Real)
    );
    let dim = field!("algebra.dim", |v| parse_count(v).map(|n| n as usize), Some(1));
    let norm_mode = field!(
        "algebra.norm_mode",
        |v| parse_keyword(
            v,
            &[("operator", NormMode::Operator), ("max-entry", NormMode::MaxEntry)]
        ),
        Some(NormMode::Operator)
    );
    let order_mode = field!(
        "algebra.order_mode",
        |v| parse_keyword(
            v,
            &[
                ("positivity", OrderMode::Positivity),
                ("entrywise", OrderMode::Entrywise)
            ]
        ),
        Some(OrderMode::Positivity)
    );
    let domain = field!("domain", parse_domain, None);
    let complete = field!(
        "complete",
        |v| parse_keyword(v, &[("true", true), ("false", false)]),
        None
    );
    let metric = field!(
        "metric",
        |v: &Value| if v.trimmed().text == "usual" {
            Ok(MetricSpec::Usual)
        } else {
            parse_matrix(v).map(MetricSpec::Value)
        },
        Some(MetricSpec::Usual)
    );
    let t = field!("maps.T", parse_map, None);
    let s = field!("maps.S", |v| parse_map(v).map(Some), Some(None));
    let q = field!("gauges.q", parse_matrix, None);
    let delta = field!("gauges.delta", parse_matrix, None);
    let form = field!(
        "gauges.form",
        |v| parse_keyword(v, &[("type1", GaugeForm::Type1), ("type2", GaugeForm::Type2)]),
        Some(GaugeForm::Type1)
    );
    let eq1_gauge = field!("gauges.a", |v| parse_matrix(v).map(Some), Some(None));
    let kannan_gauge = field!("gauges.kannan", |v| parse_matrix(v).map(Some), Some(None));
    let max_power = field!(
        "run.max_power",
        |v| parse_count(v).and_then(|n| u32::try_from(n).map_err(|_| v.diag(Code::InvalidValue, 0, "too large"))),
        Some(DEFAULT_MAX_POWER)
    );
    let max_iter = field!(
        "run.max_iter",
        |v| parse_count(v).map(|n| n as usize),
        Some(DEFAULT_MAX_ITER)
    );
    let tol = field!("run.tol", |v| parse_positive(v, true), Some(DEFAULT_TOL));
    let sample_step = field!(
        "run.sample_step",
        |v| parse_positive(v, false),
        Some(DEFAULT_SAMPLE_STEP)
    );
    let starts = field!("run.starts", |v| parse_list(v).map(Some), Some(None));

    let (
        Some(name),
        Some(scalar),
        Some(dim),
        Some(norm_mode),
        Some(order_mode),
        Some(domain),
        Some(metric),
        Some(t),
        Some(s),
        Some(q),
        Some(delta),
        Some(form),
        Some(eq1_gauge),
        Some(kannan_gauge),
        Some(max_power),
        Some(max_iter),
        Some(tol),
        Some(sample_step),
        Some(starts),
    ) = (
        name,
        scalar,
        dim,
        norm_mode,
        order_mode,
        domain,
        metric,
        t,
        s,
        q,
        delta,
        form,
        eq1_gauge,
        kannan_gauge,
        max_power,
        max_iter,
        tol,
        sample_step,
        starts,
    )
    else {
        return Err(Diagnostics(diags));
    };
    if !diags.is_empty() {
        return Err(Diagnostics(diags));
    }
    let complete = complete.unwrap_or_else(|| domain.default_complete());
    let file = ScenarioFile {
        name,
        algebra: AlgebraSpec {
            scalar,
            dim,
            norm_mode,
            order_mode,
        },
        domain,
        complete,
        metric,
        t,
        s,
        q,
        delta,
        form,
        eq1_gauge,
        kannan_gauge,
        run: RunSpec {
            max_power,
            max_iter,
            tol,
            sample_step,
            starts,
        },
    };
    let diags = check_invariants(&file, &values);
    if diags.is_empty() {
        Ok(file)
    } else {
        Err(Diagnostics(diags))
    }
}

/// Shape, constancy, start membership and totality on the sample.
fn check_invariants(file: &ScenarioFile, values: &HashMap<&'static str, Value>) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let at = |key: &str, message: String| {
        let v = values.get(key).map(Value::trimmed);
        Diagnostic {
            code: Code::Invariant,
            line: v.as_ref().map_or(0, |v| v.line),
            column: v.as_ref().map_or(0, |v| v.col),
            message,
        }
    };
    let dim = file.algebra.dim;

    let mut matrices: Vec<(&str, &MatrixSpec)> = vec![("gauges.q", &file.q), ("gauges.delta", &file.delta)];
    if let MetricSpec::Value(m) = &file.metric {
        matrices.push(("metric", m));
    }
    let constants: Vec<(&str, &MatrixSpec)> = [("gauges.a", &file.eq1_gauge), ("gauges.kannan", &file.kannan_gauge)]
        .into_iter()
        .filter_map(|(k, m)| m.as_ref().map(|m| (k, m)))
        .collect();
    for &(key, m) in matrices.iter().chain(&constants) {
        if !m.shape_fits(dim) {
            diags.push(at(key, format!("`{key}` does not have the algebra dimension {dim}")));
        }
    }
    for &(key, m) in &constants {
        if !m.is_constant() {
            diags.push(at(key, format!("`{key}` must be a constant")));
        }
    }

    let algebra = match file.algebra() {
        Ok(a) => a,
        Err(e) => {
            diags.push(at("run.tol", e.to_string()));
            return diags;
        }
    };
    let domain = match file.domain.to_domain(file.run.sample_step) {
        Ok(d) => d,
        Err(e) => {
            diags.push(at("domain", e.to_string()));
            return diags;
        }
    };
    let eps = algebra.tol.eps_eq;
    if let Some(starts) = &file.run.starts {
        for &x in starts {
            if !domain.contains(x, eps) {
                diags.push(at("run.starts", format!("start {x} lies outside the domain")));
            }
        }
    }
    if !diags.is_empty() {
        return diags;
    }

    let sample = domain.sample();
    let mut maps = vec![("maps.T", &file.t)];
    if let Some(s) = &file.s {
        maps.push(("maps.S", s));
    }
    for (key, m) in maps {
        if let MapSpec::Expr(e) = m {
            if let Some((x, why)) = sample.iter().find_map(|&x| match e.eval(x, None) {
                Ok(v) if v.is_finite() => None,
                Ok(v) => Some((x, format!("value {v}"))),
                Err(err) => Some((x, err.to_string())),
            }) {
                diags.push(at(key, format!("`{key}` is undefined at x = {x}: {why}")));
            }
        }
    }
    for &(key, m) in &matrices {
        let bad = sample
            .iter()
            .flat_map(|&x| sample.iter().map(move |&y| (x, y)))
            .find_map(|(x, y)| match m.element(dim, x, y) {
                Ok(e) if e.matrix().iter().all(|z| z.re.is_finite()) => None,
                Ok(_) => Some((x, y, "non-finite value".to_string())),
                Err(err) => Some((x, y, err.to_string())),
            });
        if let Some((x, y, why)) = bad {
            diags.push(at(key, format!("`{key}` is undefined at (x, y) = ({x}, {y}): {why}")));
        }
    }
    for &(key, m) in &constants {
        if let Err(err) = m.element(dim, 0.0, 0.0) {
            diags.push(at(key, format!("`{key}`: {err}")));
        }
    }
    diags
}
