//! Terms, formulas and theories of the hedge-extended first-order language.
//!
//! Formulas keep their derived connectives (`~`, `&`, `+`, `/\`, `\/`, `<->`,
//! `exists`, powers and multiples) so that text round-trips, but everything
//! downstream works on [`Formula::expand`]ed forms built from truth constants,
//! predicates, `->`, `forall` and hedges only.

mod parser;
mod print;
mod theory;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::mv::TruthValue;

pub use parser::{parse_formula, parse_formula_with, parse_term, SymbolTable};
pub use print::{print_formula, print_formula_with, PrintOptions};
pub use theory::{parse_signature, parse_theory, parse_theory_with, Theory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown hedge `{name}` at offset {offset}")]
    UnknownHedge { offset: usize, name: String },
    #[error("symbol `{name}` used with arity {found} at offset {offset}, declared with arity {expected}")]
    Arity {
        offset: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("term `{term}` is not substitutable for `{var}`: it would be captured by the quantifier on `{binder}`")]
    NotSubstitutable {
        var: String,
        term: String,
        binder: String,
    },
    #[error("invalid hedge signature: {0}")]
    Signature(String),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

impl LangError {
    pub(crate) fn at_line(self, line: usize) -> LangError {
        match self {
            LangError::Line { .. } => self,
            other => LangError::Line {
                line,
                message: other.to_string(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HedgeMode {
    /// Many hedges, none paired with a dual.
    H,
    /// Many hedges, stresser `s_i` paired with depresser `d_i`.
    DH,
}

impl std::fmt::Display for HedgeMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HedgeMode::H => "h",
            HedgeMode::DH => "dh",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HedgeKind {
    Stresser,
    Depresser,
}

/// Hedge connectives in strength order. `s_0`/`d_0` are the implicit identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HedgeSignature {
    mode: HedgeMode,
    stressers: Vec<String>,
    depressers: Vec<String>,
}

const RESERVED: [&str; 2] = ["forall", "exists"];

pub(crate) fn is_lower_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Variables are lowercase identifiers starting with `w`, `x`, `y` or `z`.
pub fn is_variable_name(s: &str) -> bool {
    is_lower_ident(s) && matches!(s.as_bytes()[0], b'w'..=b'z') && !RESERVED.contains(&s)
}

impl HedgeSignature {
    pub fn new(
        mode: HedgeMode,
        stressers: Vec<String>,
        depressers: Vec<String>,
    ) -> Result<Self, LangError> {
        let mut seen = BTreeSet::new();
        for name in stressers.iter().chain(&depressers) {
            if !is_lower_ident(name) || RESERVED.contains(&name.as_str()) {
                return Err(LangError::Signature(format!(
                    "`{name}` is not a valid hedge name"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(LangError::Signature(format!("hedge `{name}` declared twice")));
            }
        }
        if mode == HedgeMode::DH && stressers.len() != depressers.len() {
            return Err(LangError::Signature(format!(
                "mode dh pairs hedges: {} stressers vs {} depressers",
                stressers.len(),
                depressers.len()
            )));
        }
        Ok(HedgeSignature {
            mode,
            stressers,
            depressers,
        })
    }

    /// Mode H with no hedges: the plain language.
    pub fn empty() -> Self {
        HedgeSignature {
            mode: HedgeMode::H,
            stressers: Vec::new(),
            depressers: Vec::new(),
        }
    }

    /// `s1..sp`, `d1..dq` with canonical names.
    pub fn canonical(mode: HedgeMode, p: usize, q: usize) -> Result<Self, LangError> {
        Self::new(
            mode,
            (1..=p).map(|i| format!("s{i}")).collect(),
            (1..=q).map(|j| format!("d{j}")).collect(),
        )
    }

    pub fn mode(&self) -> HedgeMode {
        self.mode
    }

    pub fn stressers(&self) -> &[String] {
        &self.stressers
    }

    pub fn depressers(&self) -> &[String] {
        &self.depressers
    }

    /// 1-based stresser `s_i`; `None` for 0 (identity) or out of range.
    pub fn stresser(&self, i: usize) -> Option<&str> {
        i.checked_sub(1)
            .and_then(|i| self.stressers.get(i))
            .map(String::as_str)
    }

    pub fn depresser(&self, j: usize) -> Option<&str> {
        j.checked_sub(1)
            .and_then(|j| self.depressers.get(j))
            .map(String::as_str)
    }

    /// Kind and 1-based strength index of a hedge name.
    pub fn lookup(&self, name: &str) -> Option<(HedgeKind, usize)> {
        if let Some(i) = self.stressers.iter().position(|s| s == name) {
            return Some((HedgeKind::Stresser, i + 1));
        }
        self.depressers
            .iter()
            .position(|d| d == name)
            .map(|j| (HedgeKind::Depresser, j + 1))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    pub fn hedge_names(&self) -> impl Iterator<Item = &str> {
        self.stressers
            .iter()
            .chain(&self.depressers)
            .map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.stressers.is_empty() && self.depressers.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    /// Object constant, written `'u` in concrete syntax.
    Const(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }

    fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y) => y == x,
            Term::Const(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    fn substitute(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(y) if y == x => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(x, t)).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Const(TruthValue),
    Pred(String, Vec<Term>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Hedge(String, Box<Formula>),
    // Derived connectives, kept for display.
    Not(Box<Formula>),
    /// Łukasiewicz conjunction `&`.
    LukAnd(Box<Formula>, Box<Formula>),
    /// Łukasiewicz disjunction `+`.
    LukOr(Box<Formula>, Box<Formula>),
    /// Lattice conjunction `/\`.
    Min(Box<Formula>, Box<Formula>),
    /// Lattice disjunction `\/`.
    Max(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    /// n-fold `&`, written `A^n`.
    Power(Box<Formula>, u32),
    /// n-fold `+`, written `n*A`.
    Multiple(Box<Formula>, u32),
}

/// A graded formula `a/A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvaluatedFormula {
    pub grade: TruthValue,
    pub formula: Formula,
}

impl EvaluatedFormula {
    pub fn new(grade: TruthValue, formula: Formula) -> Self {
        EvaluatedFormula { grade, formula }
    }
}

impl std::fmt::Display for EvaluatedFormula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} / {}", self.grade, self.formula)
    }
}

fn bx(f: Formula) -> Box<Formula> {
    Box::new(f)
}

impl Formula {
    pub fn constant(v: TruthValue) -> Formula {
        Formula::Const(v)
    }

    pub fn zero() -> Formula {
        Formula::Const(TruthValue::zero())
    }

    pub fn one() -> Formula {
        Formula::Const(TruthValue::one())
    }

    /// Nullary predicate, i.e. a propositional atom.
    pub fn atom(name: &str) -> Formula {
        Formula::Pred(name.to_string(), Vec::new())
    }

    pub fn pred(name: &str, args: Vec<Term>) -> Formula {
        Formula::Pred(name.to_string(), args)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(bx(a), bx(b))
    }

    pub fn forall(x: &str, a: Formula) -> Formula {
        Formula::Forall(x.to_string(), bx(a))
    }

    pub fn exists(x: &str, a: Formula) -> Formula {
        Formula::Exists(x.to_string(), bx(a))
    }

    pub fn hedge(h: &str, a: Formula) -> Formula {
        Formula::Hedge(h.to_string(), bx(a))
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(bx(a))
    }

    pub fn luk_and(a: Formula, b: Formula) -> Formula {
        Formula::LukAnd(bx(a), bx(b))
    }

    pub fn luk_or(a: Formula, b: Formula) -> Formula {
        Formula::LukOr(bx(a), bx(b))
    }

    pub fn min(a: Formula, b: Formula) -> Formula {
        Formula::Min(bx(a), bx(b))
    }

    pub fn max(a: Formula, b: Formula) -> Formula {
        Formula::Max(bx(a), bx(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(bx(a), bx(b))
    }

    pub fn power(a: Formula, n: u32) -> Formula {
        Formula::Power(bx(a), n)
    }

    pub fn multiple(a: Formula, n: u32) -> Formula {
        Formula::Multiple(bx(a), n)
    }

    /// `A -> #0` in primitive form.
    pub fn neg_expanded(a: Formula) -> Formula {
        Formula::imp(a, Formula::zero())
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// True iff the formula uses only primitive constructors.
    pub fn is_expanded(&self) -> bool {
        match self {
            Formula::Const(_) | Formula::Pred(..) => true,
            Formula::Imp(a, b) => a.is_expanded() && b.is_expanded(),
            Formula::Forall(_, a) | Formula::Hedge(_, a) => a.is_expanded(),
            _ => false,
        }
    }

    /// Rewrites every derived connective by its definition over `->`, `#0`
    /// and `forall`.
    pub fn expand(&self) -> Formula {
        use Formula::*;
        match self {
            Const(_) | Pred(..) => self.clone(),
            Imp(a, b) => Formula::imp(a.expand(), b.expand()),
            Forall(x, a) => Formula::forall(x, a.expand()),
            Hedge(h, a) => Formula::hedge(h, a.expand()),
            Not(a) => neg(a.expand()),
            LukAnd(a, b) => strong_and(a.expand(), b.expand()),
            LukOr(a, b) => strong_or(a.expand(), b.expand()),
            Max(a, b) => lattice_or(a.expand(), b.expand()),
            Min(a, b) => lattice_and(a.expand(), b.expand()),
            Iff(a, b) => equivalence(a.expand(), b.expand()),
            Exists(x, a) => neg(Formula::forall(x, neg(a.expand()))),
            Power(a, n) => {
                let a = a.expand();
                (1..*n).fold(a.clone(), |acc, _| strong_and(acc, a.clone()))
            }
            Multiple(a, n) => {
                let a = a.expand();
                (1..*n).fold(a.clone(), |acc, _| strong_or(acc, a.clone()))
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        use Formula::*;
        match self {
            Const(_) => {}
            Pred(_, args) => {
                let mut vs = BTreeSet::new();
                args.iter().for_each(|t| t.vars(&mut vs));
                out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
            }
            Forall(x, a) | Exists(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
            Hedge(_, a) | Not(a) | Power(a, _) | Multiple(a, _) => a.collect_free(bound, out),
            Imp(a, b) | LukAnd(a, b) | LukOr(a, b) | Min(a, b) | Max(a, b) | Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    fn has_free(&self, x: &str) -> bool {
        use Formula::*;
        match self {
            Const(_) => false,
            Pred(_, args) => args.iter().any(|t| t.contains_var(x)),
            Forall(y, a) | Exists(y, a) => y != x && a.has_free(x),
            Hedge(_, a) | Not(a) | Power(a, _) | Multiple(a, _) => a.has_free(x),
            Imp(a, b) | LukAnd(a, b) | LukOr(a, b) | Min(a, b) | Max(a, b) | Iff(a, b) => {
                a.has_free(x) || b.has_free(x)
            }
        }
    }

    /// `A_x[t]`: replaces the free occurrences of `x` by `t`, refusing when a
    /// variable of `t` would be captured.
    pub fn substitute(&self, x: &str, t: &Term) -> Result<Formula, LangError> {
        let mut tvars = BTreeSet::new();
        t.vars(&mut tvars);
        self.subst_inner(x, t, &tvars)
    }

    fn subst_inner(&self, x: &str, t: &Term, tvars: &BTreeSet<String>) -> Result<Formula, LangError> {
        use Formula::*;
        let rec = |a: &Formula| a.subst_inner(x, t, tvars).map(bx);
        Ok(match self {
            Const(_) => self.clone(),
            Pred(p, args) => Pred(p.clone(), args.iter().map(|a| a.substitute(x, t)).collect()),
            Forall(y, a) | Exists(y, a) => {
                if y == x || !a.has_free(x) {
                    return Ok(self.clone());
                }
                if tvars.contains(y) {
                    return Err(LangError::NotSubstitutable {
                        var: x.to_string(),
                        term: print::term_to_string(t),
                        binder: y.clone(),
                    });
                }
                match self {
                    Forall(..) => Forall(y.clone(), rec(a)?),
                    _ => Exists(y.clone(), rec(a)?),
                }
            }
            Hedge(h, a) => Hedge(h.clone(), rec(a)?),
            Not(a) => Not(rec(a)?),
            Power(a, n) => Power(rec(a)?, *n),
            Multiple(a, n) => Multiple(rec(a)?, *n),
            Imp(a, b) => Imp(rec(a)?, rec(b)?),
            LukAnd(a, b) => LukAnd(rec(a)?, rec(b)?),
            LukOr(a, b) => LukOr(rec(a)?, rec(b)?),
            Min(a, b) => Min(rec(a)?, rec(b)?),
            Max(a, b) => Max(rec(a)?, rec(b)?),
            Iff(a, b) => Iff(rec(a)?, rec(b)?),
        })
    }

    /// Whether `t` is substitutable for `x` here.
    pub fn is_substitutable(&self, x: &str, t: &Term) -> bool {
        self.substitute(x, t).is_ok()
    }

    /// Immediate subformulas of a primitive formula.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Const(_) | Pred(..) => vec![],
            Forall(_, a) | Exists(_, a) | Hedge(_, a) | Not(a) | Power(a, _) | Multiple(a, _) => {
                vec![a]
            }
            Imp(a, b) | LukAnd(a, b) | LukOr(a, b) | Min(a, b) | Max(a, b) | Iff(a, b) => {
                vec![a, b]
            }
        }
    }

    /// Truth constants occurring in the formula.
    pub fn constants(&self, out: &mut BTreeSet<TruthValue>) {
        if let Formula::Const(v) = self {
            out.insert(v.clone());
        }
        self.children().into_iter().for_each(|c| c.constants(out));
    }

    /// Records predicate and function symbols with their arities, and object
    /// constants, into `syms`.
    pub fn symbols(&self, syms: &mut SymbolTable) {
        fn term_syms(t: &Term, syms: &mut SymbolTable) {
            match t {
                Term::Var(_) => {}
                Term::Const(c) => {
                    syms.constants.insert(c.clone());
                }
                Term::App(f, args) => {
                    syms.funcs.entry(f.clone()).or_insert(args.len());
                    args.iter().for_each(|a| term_syms(a, syms));
                }
            }
        }
        if let Formula::Pred(p, args) = self {
            syms.preds.entry(p.clone()).or_insert(args.len());
            args.iter().for_each(|a| term_syms(a, syms));
        }
        self.children().into_iter().for_each(|c| c.symbols(syms));
    }

    pub fn hedges(&self, out: &mut BTreeSet<String>) {
        if let Formula::Hedge(h, _) = self {
            out.insert(h.clone());
        }
        self.children().into_iter().for_each(|c| c.hedges(out));
    }

    pub fn has_quantifier(&self) -> bool {
        matches!(self, Formula::Forall(..) | Formula::Exists(..))
            || self.children().into_iter().any(Formula::has_quantifier)
    }
}

fn neg(a: Formula) -> Formula {
    Formula::neg_expanded(a)
}

// ¬(A → ¬B)
fn strong_and(a: Formula, b: Formula) -> Formula {
    neg(Formula::imp(a, neg(b)))
}

// ¬(¬A & ¬B)
fn strong_or(a: Formula, b: Formula) -> Formula {
    neg(strong_and(neg(a), neg(b)))
}

// (B → A) → A
fn lattice_or(a: Formula, b: Formula) -> Formula {
    Formula::imp(Formula::imp(b, a.clone()), a)
}

// ¬((B → A) → ¬B)
fn lattice_and(a: Formula, b: Formula) -> Formula {
    neg(Formula::imp(Formula::imp(b.clone(), a), neg(b)))
}

// (A → B) ∧ (B → A)
fn equivalence(a: Formula, b: Formula) -> Formula {
    lattice_and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
}

/// Closure of the expanded seeds under subformulas, then `depth` rounds of
/// adding `#a -> A` for each `a` in `consts` and `(forall x)A` for each free
/// `x` of `A`, re-closing after each round.
pub fn subformula_universe<'a>(
    seed: impl IntoIterator<Item = &'a Formula>,
    consts: &BTreeSet<TruthValue>,
    depth: usize,
) -> BTreeSet<Formula> {
    fn close(f: Formula, out: &mut BTreeSet<Formula>) {
        if out.contains(&f) {
            return;
        }
        for c in f.children() {
            close(c.clone(), out);
        }
        out.insert(f);
    }
    let mut universe = BTreeSet::new();
    for f in seed {
        close(f.expand(), &mut universe);
    }
    for _ in 0..depth {
        let mut fresh = Vec::new();
        for a in &universe {
            for c in consts {
                fresh.push(Formula::imp(Formula::Const(c.clone()), a.clone()));
            }
            for x in a.free_vars() {
                fresh.push(Formula::forall(&x, a.clone()));
            }
        }
        for f in fresh {
            close(f, &mut universe);
        }
    }
    universe
}
