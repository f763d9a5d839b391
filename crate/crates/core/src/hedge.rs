//! Hedge truth functions and their validation.
//!
//! A hedge function is piecewise linear over rational breakpoints, which
//! makes every shape property (monotonicity, 0/1 preservation, sub- and
//! superdiagonality, Lipschitz bound) decidable exactly from the breakpoints.
//! The hedge axioms themselves are checked instance by instance over a
//! finite chain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lang::{parse_signature, HedgeKind, HedgeMode, HedgeSignature};
use crate::mv::{luk_imp, luk_neg, MvChain, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HedgeError {
    #[error("invalid breakpoints: {0}")]
    Breakpoints(String),
    #[error("invalid hedge model: {0}")]
    Model(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("boundary envelopes need dual hedges (mode dh)")]
    NotDual,
}

/// A piecewise-linear map `[0,1] → [0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HedgeFunction {
    points: Vec<(TruthValue, TruthValue)>,
}

fn tv(r: BigRational) -> TruthValue {
    TruthValue::new(r).expect("interpolated value stays in [0,1]")
}

impl HedgeFunction {
    /// Breakpoints must start at x = 0, end at x = 1, with strictly
    /// increasing x.
    pub fn new(points: Vec<(TruthValue, TruthValue)>) -> Result<Self, HedgeError> {
        if points.len() < 2 {
            return Err(HedgeError::Breakpoints("need at least the points at x=0 and x=1".into()));
        }
        if !points[0].0.is_zero() || !points[points.len() - 1].0.is_one() {
            return Err(HedgeError::Breakpoints("x-coordinates must run from 0 to 1".into()));
        }
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(HedgeError::Breakpoints(format!(
                "x-coordinates not strictly increasing at {}",
                w[1].0
            )));
        }
        Ok(HedgeFunction { points })
    }

    pub fn identity() -> Self {
        HedgeFunction {
            points: vec![(TruthValue::zero(), TruthValue::zero()), (TruthValue::one(), TruthValue::one())],
        }
    }

    fn from_pairs(pairs: &[((i64, i64), (i64, i64))]) -> Self {
        let points = pairs
            .iter()
            .map(|&((xn, xd), (yn, yd))| (TruthValue::frac(xn, xd), TruthValue::frac(yn, yd)))
            .collect();
        Self::new(points).expect("preset breakpoints are valid")
    }

    /// `x²` interpolated at the quarter points.
    pub fn pl_square() -> Self {
        Self::from_pairs(&[
            ((0, 1), (0, 1)),
            ((1, 4), (1, 16)),
            ((1, 2), (1, 4)),
            ((3, 4), (9, 16)),
            ((1, 1), (1, 1)),
        ])
    }

    /// `√x` interpolated where it is rational at quarter-point outputs; the
    /// inverse of [`HedgeFunction::pl_square`].
    pub fn pl_sqrt() -> Self {
        Self::from_pairs(&[
            ((0, 1), (0, 1)),
            ((1, 16), (1, 4)),
            ((1, 4), (1, 2)),
            ((9, 16), (3, 4)),
            ((1, 1), (1, 1)),
        ])
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "identity" => Some(Self::identity()),
            "pl-square" => Some(Self::pl_square()),
            "pl-sqrt" => Some(Self::pl_sqrt()),
            _ => None,
        }
    }

    /// `(1-λ)·x + λ·f(x)`, exact on the same breakpoints since both parts are
    /// linear between them.
    pub fn blend(&self, lambda: &TruthValue) -> Self {
        let l = lambda.as_ratio();
        let one_minus = BigRational::from_integer(1.into()) - l;
        let points = self
            .points
            .iter()
            .map(|(x, y)| (x.clone(), tv(&one_minus * x.as_ratio() + l * y.as_ratio())))
            .collect();
        HedgeFunction { points }
    }

    pub fn breakpoints(&self) -> &[(TruthValue, TruthValue)] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        self.points.iter().all(|(x, y)| x == y)
    }

    pub fn eval(&self, a: &TruthValue) -> TruthValue {
        let i = self.points.partition_point(|(x, _)| x <= a);
        if i == 0 {
            return self.points[0].1.clone();
        }
        let (x0, y0) = &self.points[i - 1];
        if x0 == a || i == self.points.len() {
            return y0.clone();
        }
        let (x1, y1) = &self.points[i];
        let (x0, y0, x1, y1) = (x0.as_ratio(), y0.as_ratio(), x1.as_ratio(), y1.as_ratio());
        tv(y0 + (a.as_ratio() - x0) * (y1 - y0) / (x1 - x0))
    }

    pub fn slopes(&self) -> Vec<BigRational> {
        self.points
            .windows(2)
            .map(|w| (w[1].1.as_ratio() - w[0].1.as_ratio()) / (w[1].0.as_ratio() - w[0].0.as_ratio()))
            .collect()
    }

    /// Smallest positive integer k with `|f(a) - f(b)| ≤ k·|a - b|`, i.e. with
    /// `(a ⇔ b)^k ≤ f(a) ⇔ f(b)` everywhere: the ceiling of the steepest
    /// segment slope, at least 1.
    pub fn fitting_constant(&self) -> u64 {
        let steepest = self
            .slopes()
            .into_iter()
            .map(|s| s.abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        steepest.ceil().to_integer().to_u64().unwrap_or(u64::MAX).max(1)
    }

    /// Checks the shape every hedge must have: non-decreasing, `f(0) = 0`,
    /// `f(1) = 1`, plus subdiagonal for stressers or superdiagonal for
    /// depressers. Exact, since `f(x) - x` is linear between breakpoints.
    pub fn validate_shape(&self, kind: HedgeKind) -> ValidationReport {
        let mut report = ValidationReport::default();
        for w in self.points.windows(2) {
            if w[1].1 < w[0].1 {
                report.push(Violation::new("MONOTONE", vec![w[0].0.clone(), w[1].0.clone()], w[1].1.clone()));
            }
        }
        let (x0, y0) = &self.points[0];
        if !y0.is_zero() {
            report.push(Violation::new("PRESERVES-0", vec![x0.clone()], y0.clone()));
        }
        let (x1, y1) = &self.points[self.points.len() - 1];
        if !y1.is_one() {
            report.push(Violation::new("PRESERVES-1", vec![x1.clone()], y1.clone()));
        }
        for (x, y) in &self.points {
            match kind {
                HedgeKind::Stresser if y > x => {
                    report.push(Violation::new("SUBDIAGONAL", vec![x.clone()], y.clone()))
                }
                HedgeKind::Depresser if y < x => {
                    report.push(Violation::new("SUPERDIAGONAL", vec![x.clone()], y.clone()))
                }
                _ => {}
            }
        }
        report
    }
}

impl fmt::Display for HedgeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() && self.points.len() == 2 {
            return f.write_str("identity");
        }
        f.write_str("pl {")?;
        for (x, y) in &self.points {
            write!(f, " ({x},{y})")?;
        }
        f.write_str(" }")
    }
}

/// One failed instance: the property or axiom label, its inputs and the
/// attained truth value (`< 1` for axioms).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub property: String,
    pub hedge: Option<String>,
    pub inputs: Vec<TruthValue>,
    pub value: TruthValue,
}

impl Violation {
    fn new(property: &str, inputs: Vec<TruthValue>, value: TruthValue) -> Self {
        Violation {
            property: property.to_string(),
            hedge: None,
            inputs,
            value,
        }
    }

    fn on(mut self, hedge: &str) -> Self {
        self.hedge = Some(hedge.to_string());
        self
    }

    fn inputs_text(&self) -> String {
        let parts: Vec<String> = self.inputs.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(", "))
    }

    /// `VIOLATION <axiom> <inputs> <value>`
    pub fn machine_line(&self) -> String {
        format!("VIOLATION {} {} {}", self.property, self.inputs_text(), self.value)
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hedge {
            Some(h) => write!(f, "{} fails for {h} at {}: value {}", self.property, self.inputs_text(), self.value),
            None => write!(f, "{} fails at {}: value {}", self.property, self.inputs_text(), self.value),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn machine_lines(&self) -> Vec<String> {
        self.violations.iter().map(Violation::machine_line).collect()
    }
}

/// Instances of `(A → B) → (hA → hB)` at constants: `(a⇒b) ⇒ (f(a)⇒f(b))`
/// for every pair of chain values.
pub fn implication_axiom_violations(label: &str, f: &HedgeFunction, chain: MvChain) -> Vec<Violation> {
    let vals = chain.values();
    let images: Vec<TruthValue> = vals.iter().map(|a| f.eval(a)).collect();
    let mut out = Vec::new();
    for (a, fa) in vals.iter().zip(&images) {
        for (b, fb) in vals.iter().zip(&images) {
            let v = luk_imp(&luk_imp(a, b), &luk_imp(fa, fb));
            if !v.is_one() {
                out.push(Violation::new(label, vec![a.clone(), b.clone()], v));
            }
        }
    }
    out
}

/// Assignment of a truth function to every hedge of a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HedgeModel {
    signature: HedgeSignature,
    functions: BTreeMap<String, HedgeFunction>,
}

/// Per-hedge lower/upper bounds tabulated on chain points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub hedge: String,
    /// `(x, lower(x), upper(x), h(x))`
    pub rows: Vec<(TruthValue, TruthValue, TruthValue, TruthValue)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundaries {
    pub envelopes: Vec<Envelope>,
    pub report: ValidationReport,
}

impl HedgeModel {
    pub fn new(signature: HedgeSignature, functions: BTreeMap<String, HedgeFunction>) -> Result<Self, HedgeError> {
        for name in signature.hedge_names() {
            if !functions.contains_key(name) {
                return Err(HedgeError::Model(format!("no truth function for hedge `{name}`")));
            }
        }
        if let Some(extra) = functions.keys().find(|n| !signature.contains(n)) {
            return Err(HedgeError::Model(format!("`{extra}` is not a declared hedge")));
        }
        Ok(HedgeModel { signature, functions })
    }

    /// Every hedge interpreted as the identity.
    pub fn identity(signature: &HedgeSignature) -> Self {
        let functions = signature
            .hedge_names()
            .map(|n| (n.to_string(), HedgeFunction::identity()))
            .collect();
        HedgeModel {
            signature: signature.clone(),
            functions,
        }
    }

    pub fn signature(&self) -> &HedgeSignature {
        &self.signature
    }

    pub fn function(&self, name: &str) -> Option<&HedgeFunction> {
        self.functions.get(name)
    }

    pub fn functions(&self) -> &BTreeMap<String, HedgeFunction> {
        &self.functions
    }

    pub fn eval(&self, name: &str, a: &TruthValue) -> Option<TruthValue> {
        self.functions.get(name).map(|f| f.eval(a))
    }

    fn stresser(&self, i: usize) -> (&str, &HedgeFunction) {
        stresser_of(&self.signature, &self.functions, i)
    }

    fn depresser(&self, j: usize) -> (&str, &HedgeFunction) {
        depresser_of(&self.signature, &self.functions, j)
    }

    /// Shape report for every hedge, by its kind.
    pub fn validate_shapes(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for name in self.signature.hedge_names() {
            let (kind, _) = self.signature.lookup(name).expect("declared hedge");
            for v in self.functions[name].validate_shape(kind).violations {
                report.push(v.on(name));
            }
        }
        report
    }

    /// Instantiates every hedge axiom of the signature's mode at truth
    /// constants drawn from `chain` and reports each instance below 1.
    pub fn validate_axioms(&self, chain: MvChain) -> ValidationReport {
        let dual = self.signature.mode() == HedgeMode::DH;
        let label = |h: u8, dh: u8| if dual { format!("DH{dh}") } else { format!("H{h}") };
        let vals = chain.values();
        let p = self.signature.stressers().len();
        let q = self.signature.depressers().len();
        let mut report = ValidationReport::default();

        for name in self.signature.hedge_names() {
            for v in implication_axiom_violations(&label(6, 11), &self.functions[name], chain) {
                report.push(v.on(name));
            }
        }
        for i in 1..=p {
            let (name, s) = self.stresser(i);
            let (_, weaker) = self.stresser(i - 1);
            for a in &vals {
                let v = luk_imp(&s.eval(a), &weaker.eval(a));
                if !v.is_one() {
                    report.push(Violation::new(&label(7, 12), vec![a.clone()], v).on(name));
                }
            }
        }
        let (top, s_top) = self.stresser(p);
        let v = s_top.eval(&TruthValue::one());
        if !v.is_one() {
            report.push(Violation::new(&label(8, 13), vec![TruthValue::one()], v).on(top));
        }
        for j in 1..=q {
            let (name, d) = self.depresser(j);
            let (_, weaker) = self.depresser(j - 1);
            for a in &vals {
                let v = luk_imp(&weaker.eval(a), &d.eval(a));
                if !v.is_one() {
                    report.push(Violation::new(&label(9, 14), vec![a.clone()], v).on(name));
                }
            }
        }
        if dual {
            for i in 1..=p {
                let (name, d) = self.depresser(i);
                let (_, s) = self.stresser(i);
                for a in &vals {
                    let v = luk_imp(&d.eval(a), &luk_neg(&s.eval(&luk_neg(a))));
                    if !v.is_one() {
                        report.push(Violation::new("DH15", vec![a.clone()], v).on(name));
                    }
                }
            }
        } else {
            let (name, d) = self.depresser(q);
            let v = luk_neg(&d.eval(&TruthValue::zero()));
            if !v.is_one() {
                report.push(Violation::new("H10", vec![TruthValue::zero()], v).on(name));
            }
        }
        report
    }

    /// Lower/upper envelopes each hedge function must respect in mode dh:
    /// `s_{i+1}(x) ≤ s_i(x) ≤ x` (with `0` below `s_n`), and
    /// `d_{i-1}(x) ≤ d_i(x) ≤ ¬s_i(¬x)` with `d_0` the identity.
    ///
    /// Rows are tabulated on `chain`; breaches are searched on the chain and
    /// on every breakpoint of the functions involved, which makes the breach
    /// check exact on all of `[0,1]`.
    pub fn boundaries(&self, chain: MvChain) -> Result<Boundaries, HedgeError> {
        if self.signature.mode() != HedgeMode::DH {
            return Err(HedgeError::NotDual);
        }
        let n = self.signature.stressers().len();
        let mut probes: BTreeSet<TruthValue> = chain.values().into_iter().collect();
        for f in self.functions.values() {
            for (x, _) in f.breakpoints() {
                probes.insert(x.clone());
                probes.insert(luk_neg(x));
            }
        }
        type Bound<'a> = Box<dyn Fn(&TruthValue) -> TruthValue + 'a>;
        let mut envelopes = Vec::new();
        let mut report = ValidationReport::default();
        let mut table = |name: &str, h: &HedgeFunction, lower: Bound<'_>, upper: Bound<'_>| {
            let rows = chain
                .values()
                .into_iter()
                .map(|x| (x.clone(), lower(&x), upper(&x), h.eval(&x)))
                .collect();
            for x in &probes {
                let (lo, hi, at) = (lower(x), upper(x), h.eval(x));
                if at < lo {
                    report.push(Violation::new("ENVELOPE-LOWER", vec![x.clone()], at).on(name));
                } else if at > hi {
                    report.push(Violation::new("ENVELOPE-UPPER", vec![x.clone()], at).on(name));
                }
            }
            envelopes.push(Envelope {
                hedge: name.to_string(),
                rows,
            });
        };
        for i in (1..=n).rev() {
            let (name, s) = self.stresser(i);
            let lower: Bound<'_> = if i == n {
                Box::new(|_| TruthValue::zero())
            } else {
                let (_, stronger) = self.stresser(i + 1);
                Box::new(move |x| stronger.eval(x))
            };
            table(name, s, lower, Box::new(|x| x.clone()));
        }
        for i in 1..=n {
            let (name, d) = self.depresser(i);
            let (_, weaker) = self.depresser(i - 1);
            let (_, s) = self.stresser(i);
            table(
                name,
                d,
                Box::new(move |x| weaker.eval(x)),
                Box::new(move |x| luk_neg(&s.eval(&luk_neg(x)))),
            );
        }
        Ok(Boundaries { envelopes, report })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "mode {}", self.signature.mode()).unwrap();
        if !self.signature.stressers().is_empty() {
            writeln!(s, "stressers {}", self.signature.stressers().join(" ")).unwrap();
        }
        if !self.signature.depressers().is_empty() {
            writeln!(s, "depressers {}", self.signature.depressers().join(" ")).unwrap();
        }
        for name in self.signature.hedge_names() {
            writeln!(s, "{name} = {}", self.functions[name]).unwrap();
        }
        s
    }
}

static IDENTITY: std::sync::OnceLock<HedgeFunction> = std::sync::OnceLock::new();

fn identity_fn() -> &'static HedgeFunction {
    IDENTITY.get_or_init(HedgeFunction::identity)
}

fn stresser_of<'a>(
    sig: &'a HedgeSignature,
    fns: &'a BTreeMap<String, HedgeFunction>,
    i: usize,
) -> (&'a str, &'a HedgeFunction) {
    match sig.stresser(i) {
        Some(n) => (n, &fns[n]),
        None => ("s0", identity_fn()),
    }
}

fn depresser_of<'a>(
    sig: &'a HedgeSignature,
    fns: &'a BTreeMap<String, HedgeFunction>,
    j: usize,
) -> (&'a str, &'a HedgeFunction) {
    match sig.depresser(j) {
        Some(n) => (n, &fns[n]),
        None => ("d0", identity_fn()),
    }
}

fn parse_function(def: &str) -> Result<HedgeFunction, String> {
    let mut words = def.split_whitespace();
    match words.next() {
        Some("identity") if words.next().is_none() => Ok(HedgeFunction::identity()),
        Some("preset") => {
            let name = words.next().ok_or("expected a preset name")?;
            HedgeFunction::preset(name).ok_or_else(|| format!("unknown preset `{name}`"))
        }
        Some("blend") => {
            let lambda: TruthValue = words
                .next()
                .ok_or("expected a blend weight")?
                .parse()
                .map_err(|e| format!("bad blend weight: {e}"))?;
            let name = words.next().ok_or("expected a preset name")?;
            let base = HedgeFunction::preset(name).ok_or_else(|| format!("unknown preset `{name}`"))?;
            Ok(base.blend(&lambda))
        }
        Some(w) if w == "pl" || w.starts_with("pl{") => {
            let body = def.trim_start()[2..].trim();
            let body = body
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .ok_or("expected `pl { (x,y) ... }`")?;
            let mut points = Vec::new();
            let mut rest = body.trim();
            while !rest.is_empty() {
                let inner = rest.strip_prefix('(').ok_or("expected `(`")?;
                let close = inner.find(')').ok_or("unclosed `(`")?;
                let (x, y) = inner[..close].split_once(',').ok_or("expected `(x,y)`")?;
                let x: TruthValue = x.parse().map_err(|e| format!("bad x: {e}"))?;
                let y: TruthValue = y.parse().map_err(|e| format!("bad y: {e}"))?;
                points.push((x, y));
                rest = inner[close + 1..].trim_start();
            }
            HedgeFunction::new(points).map_err(|e| e.to_string())
        }
        _ => Err(format!("unknown hedge definition `{def}`")),
    }
}

/// Parses a hedge-model file: an optional signature header followed by one
/// `name = identity | preset NAME | blend λ NAME | pl { (x,y) ... }` line per
/// hedge. Without `stressers`/`depressers` lines, names must be `s1..sp`,
/// `d1..dq`.
pub fn parse_hedge_model(text: &str) -> Result<HedgeModel, HedgeError> {
    let mut header = String::new();
    let mut defs: BTreeMap<String, HedgeFunction> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |message: String| HedgeError::Parse { line: i + 1, message };
        match line.split_once('=') {
            Some((name, def)) => {
                let name = name.trim().to_string();
                let f = parse_function(def).map_err(perr)?;
                if defs.insert(name.clone(), f).is_some() {
                    return Err(perr(format!("hedge `{name}` defined twice")));
                }
            }
            None => {
                header.push_str(line);
                header.push('\n');
            }
        }
    }
    let sig = parse_signature(&header).map_err(|e| HedgeError::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    let sig = if sig.is_empty() && !defs.is_empty() {
        infer_canonical(sig.mode(), defs.keys())?
    } else {
        sig
    };
    HedgeModel::new(sig, defs)
}

fn infer_canonical<'a>(mode: HedgeMode, names: impl Iterator<Item = &'a String>) -> Result<HedgeSignature, HedgeError> {
    let (mut s, mut d) = (BTreeSet::new(), BTreeSet::new());
    for n in names {
        let idx = |rest: &str| rest.parse::<usize>().ok().filter(|&i| i >= 1);
        match (n.chars().next(), idx(&n[1..])) {
            (Some('s'), Some(i)) => s.insert(i),
            (Some('d'), Some(j)) => d.insert(j),
            _ => {
                return Err(HedgeError::Model(format!(
                    "`{n}` is not a canonical hedge name; declare `stressers`/`depressers`"
                )))
            }
        };
    }
    let contiguous = |set: &BTreeSet<usize>| set.iter().copied().eq(1..=set.len());
    if !contiguous(&s) || !contiguous(&d) {
        return Err(HedgeError::Model("hedge indices must run 1..n without gaps".into()));
    }
    HedgeSignature::canonical(mode, s.len(), d.len()).map_err(|e| HedgeError::Model(e.to_string()))
}
