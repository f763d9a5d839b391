//! Proof objects and their checker.
//!
//! Text format, one step per line:
//!
//! ```text
//! 1. 4/5 / P ; sax
//! 2. 9/10 / P -> Q ; sax
//! 3. 7/10 / Q ; mp(1,2)
//! ```
//!
//! Justifications: `lax(R1)`, `sax`, `mp(i,j)`, `gen(i,x)`, `lc(i,#(p/q))`.
//! Step references are 1-based.

use std::fmt::{self, Write};

use thiserror::Error;

use super::{apply_gen, apply_lc, apply_mp, lax_grade, match_schema, DeductionError, Schema};
use crate::lang::{parse_formula, print_formula_with, EvaluatedFormula, HedgeSignature, PrintOptions, Theory};
use crate::mv::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Lax(Schema),
    Sax,
    /// `mp(i, j)`: step `i` proves `A`, step `j` proves `A → B`.
    Mp(usize, usize),
    Gen(usize, String),
    Lc(usize, TruthValue),
}

impl Justification {
    fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Lax(_) | Justification::Sax => vec![],
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::Gen(i, _) | Justification::Lc(i, _) => vec![*i],
        }
    }
}

fn constant_text(v: &TruthValue) -> String {
    if v.is_zero() {
        "#0".into()
    } else if v.is_one() {
        "#1".into()
    } else {
        format!("#({v})")
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Lax(s) => write!(f, "lax({s})"),
            Justification::Sax => f.write_str("sax"),
            Justification::Mp(i, j) => write!(f, "mp({i},{j})"),
            Justification::Gen(i, x) => write!(f, "gen({i},{x})"),
            Justification::Lc(i, a) => write!(f, "lc({i},{})", constant_text(a)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofStep {
    pub conclusion: EvaluatedFormula,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Proof {
    steps: Vec<ProofStep>,
}

impl Proof {
    /// `None` for an empty step list. Formulas are expanded.
    pub fn new(steps: Vec<ProofStep>) -> Option<Self> {
        if steps.is_empty() {
            return None;
        }
        let steps = steps
            .into_iter()
            .map(|mut s| {
                s.conclusion.formula = s.conclusion.formula.expand();
                s
            })
            .collect();
        Some(Proof { steps })
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn conclusion(&self) -> &EvaluatedFormula {
        &self.steps[self.steps.len() - 1].conclusion
    }

    /// `Val(w)`: the grade of the last step.
    pub fn value(&self) -> &TruthValue {
        &self.conclusion().grade
    }

    pub fn to_text(&self) -> String {
        let opts = PrintOptions {
            recover_negation: true,
        };
        let mut s = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(
                s,
                "{}. {} / {} ; {}",
                i + 1,
                step.conclusion.grade,
                print_formula_with(&step.conclusion.formula, opts),
                step.justification
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofErrorKind {
    ForwardReference(usize),
    InvalidIndex(usize),
    GradeMismatch { claimed: TruthValue, computed: TruthValue },
    GradeAboveAxiom { claimed: TruthValue, allowed: TruthValue },
    SchemaMismatch(Schema),
    ConclusionMismatch,
    Premise(DeductionError),
}

impl fmt::Display for ProofErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofErrorKind::ForwardReference(i) => write!(f, "forward reference (step {i})"),
            ProofErrorKind::InvalidIndex(i) => write!(f, "invalid index (step {i})"),
            ProofErrorKind::GradeMismatch { claimed, computed } => {
                write!(f, "grade mismatch (claimed {claimed}, recomputed {computed})")
            }
            ProofErrorKind::GradeAboveAxiom { claimed, allowed } => {
                write!(f, "grade mismatch (claimed {claimed}, axiom degree {allowed})")
            }
            ProofErrorKind::SchemaMismatch(s) => write!(f, "schema mismatch (not an instance of {s})"),
            ProofErrorKind::ConclusionMismatch => f.write_str("conclusion does not follow from the cited premises"),
            ProofErrorKind::Premise(e) => write!(f, "{e}"),
        }
    }
}

/// The first invalid step (1-based) and why.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {kind}")]
pub struct ProofError {
    pub step: usize,
    pub kind: ProofErrorKind,
}

/// Recomputes every step against LAx of the theory's signature and the
/// theory's special axioms, returning `Val(p)`.
pub fn check_proof(p: &Proof, theory: &Theory) -> Result<TruthValue, ProofError> {
    let sig = theory.signature();
    for (idx, step) in p.steps.iter().enumerate() {
        let n = idx + 1;
        let err = |kind| ProofError { step: n, kind };
        for i in step.justification.premises() {
            if i == 0 || i > p.steps.len() {
                return Err(err(ProofErrorKind::InvalidIndex(i)));
            }
            if i >= n {
                return Err(err(ProofErrorKind::ForwardReference(i)));
            }
        }
        let premise = |i: usize| &p.steps[i - 1].conclusion;
        let claimed = &step.conclusion.grade;
        let derived = match &step.justification {
            Justification::Lax(schema) => {
                let m = match_schema(&step.conclusion.formula, *schema, sig)
                    .ok_or_else(|| err(ProofErrorKind::SchemaMismatch(*schema)))?;
                if m.grade() != *claimed {
                    return Err(err(ProofErrorKind::GradeMismatch {
                        claimed: claimed.clone(),
                        computed: m.grade(),
                    }));
                }
                continue;
            }
            Justification::Sax => {
                let allowed = theory
                    .sax(&step.conclusion.formula)
                    .max(lax_grade(&step.conclusion.formula, sig).0);
                if *claimed > allowed {
                    return Err(err(ProofErrorKind::GradeAboveAxiom {
                        claimed: claimed.clone(),
                        allowed,
                    }));
                }
                continue;
            }
            Justification::Mp(i, j) => apply_mp(premise(*i), premise(*j)),
            Justification::Gen(i, x) => apply_gen(premise(*i), x),
            Justification::Lc(i, a) => Ok(apply_lc(premise(*i), a)),
        }
        .map_err(|e| err(ProofErrorKind::Premise(e)))?;
        if derived.formula != step.conclusion.formula {
            return Err(err(ProofErrorKind::ConclusionMismatch));
        }
        if derived.grade != *claimed {
            return Err(err(ProofErrorKind::GradeMismatch {
                claimed: claimed.clone(),
                computed: derived.grade,
            }));
        }
    }
    Ok(p.value().clone())
}

fn parse_constant(s: &str) -> Result<TruthValue, String> {
    let s = s.trim();
    let body = s.strip_prefix('#').ok_or("expected a truth constant `#(p/q)`")?;
    let body = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .unwrap_or(body);
    body.parse().map_err(|e| format!("bad constant: {e}"))
}

fn parse_index(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("bad step index `{}`", s.trim()))
}

fn parse_justification(s: &str) -> Result<Justification, String> {
    let s = s.trim();
    if s == "sax" {
        return Ok(Justification::Sax);
    }
    let (name, args) = s
        .split_once('(')
        .and_then(|(n, rest)| rest.strip_suffix(')').map(|a| (n.trim(), a)))
        .ok_or_else(|| format!("unknown justification `{s}`"))?;
    match name {
        "lax" => Ok(Justification::Lax(args.trim().parse()?)),
        "mp" => {
            let (i, j) = args.split_once(',').ok_or("mp needs two step indices")?;
            Ok(Justification::Mp(parse_index(i)?, parse_index(j)?))
        }
        "gen" => {
            let (i, x) = args.split_once(',').ok_or("gen needs a step index and a variable")?;
            Ok(Justification::Gen(parse_index(i)?, x.trim().to_string()))
        }
        "lc" => {
            let (i, a) = args.split_once(',').ok_or("lc needs a step index and a constant")?;
            Ok(Justification::Lc(parse_index(i)?, parse_constant(a)?))
        }
        _ => Err(format!("unknown justification `{s}`")),
    }
}

/// Parses the proof text format. Steps must be numbered `1, 2, ...` in
/// order; reference errors are left to [`check_proof`].
pub fn parse_proof(text: &str, sig: &HedgeSignature) -> Result<Proof, DeductionError> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |message: String| DeductionError::Parse { line: i + 1, message };
        let (num, rest) = line.split_once('.').ok_or_else(|| perr("expected `n. grade / formula ; rule`".into()))?;
        if num.trim().parse::<usize>().ok() != Some(steps.len() + 1) {
            return Err(perr(format!("expected step number {}", steps.len() + 1)));
        }
        let rest = rest.trim_start();
        let (grade, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| perr("missing formula".into()))?;
        let grade: TruthValue = grade.parse().map_err(|e| perr(format!("bad grade: {e}")))?;
        let rest = rest
            .trim_start()
            .strip_prefix('/')
            .ok_or_else(|| perr("expected `/` after the grade".into()))?;
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| perr("missing `; justification`".into()))?;
        let formula = parse_formula(formula, sig).map_err(|e| perr(e.to_string()))?;
        let justification = parse_justification(just).map_err(perr)?;
        steps.push(ProofStep {
            conclusion: EvaluatedFormula::new(grade, formula),
            justification,
        });
    }
    Proof::new(steps).ok_or(DeductionError::Parse {
        line: 0,
        message: "empty proof".into(),
    })
}
