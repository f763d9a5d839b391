//! Graded deduction: the fuzzy set of logical axioms, the three inference
//! rules with their evaluation operations, proofs, and saturation.
//!
//! Everything here works on expanded formulas (`->`, `#a`, `forall`,
//! hedges). Inputs that still carry sugar are expanded on entry.

mod proof;
mod saturate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lang::{is_variable_name, EvaluatedFormula, Formula, HedgeKind, HedgeMode, HedgeSignature, Term};
use crate::mv::{luk_and, luk_imp, TruthValue};

pub use proof::{check_proof, parse_proof, Justification, Proof, ProofError, ProofErrorKind, ProofStep};
pub use saturate::{
    detect_contradiction, provability_lower_bound, saturate, Contradiction, ContradictionSearch, Order,
    Provability, Saturation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeductionError {
    #[error("premise shape: {0}")]
    PremiseShape(String),
    #[error("`{0}` is not a variable")]
    NotAVariable(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    R1,
    R2,
    R3,
    R4,
    B1,
    T1,
    T2,
    H6,
    H7,
    H8,
    H9,
    H10,
    DH11,
    DH12,
    DH13,
    DH14,
    DH15,
    Const,
}

impl Schema {
    pub const ALL: [Schema; 18] = [
        Schema::R1,
        Schema::R2,
        Schema::R3,
        Schema::R4,
        Schema::B1,
        Schema::T1,
        Schema::T2,
        Schema::H6,
        Schema::H7,
        Schema::H8,
        Schema::H9,
        Schema::H10,
        Schema::DH11,
        Schema::DH12,
        Schema::DH13,
        Schema::DH14,
        Schema::DH15,
        Schema::Const,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::R1 => "R1",
            Schema::R2 => "R2",
            Schema::R3 => "R3",
            Schema::R4 => "R4",
            Schema::B1 => "B1",
            Schema::T1 => "T1",
            Schema::T2 => "T2",
            Schema::H6 => "H6",
            Schema::H7 => "H7",
            Schema::H8 => "H8",
            Schema::H9 => "H9",
            Schema::H10 => "H10",
            Schema::DH11 => "DH11",
            Schema::DH12 => "DH12",
            Schema::DH13 => "DH13",
            Schema::DH14 => "DH14",
            Schema::DH15 => "DH15",
            Schema::Const => "CONST",
        }
    }

    /// Whether the schema belongs to LAx for signatures of this mode.
    pub fn enabled(self, mode: HedgeMode) -> bool {
        use Schema::*;
        match self {
            H6 | H7 | H8 | H9 | H10 => mode == HedgeMode::H,
            DH11 | DH12 | DH13 | DH14 | DH15 => mode == HedgeMode::DH,
            _ => true,
        }
    }

    fn pattern(self) -> Pat {
        use Pat::*;
        let (a, b, c) = (|| Meta("A"), || Meta("B"), || Meta("C"));
        match self {
            Schema::R1 => imp(a(), imp(b(), a())),
            Schema::R2 => imp(imp(a(), b()), imp(imp(b(), c()), imp(a(), c()))),
            Schema::R3 => imp(imp(neg(b()), neg(a())), imp(a(), b())),
            Schema::R4 => imp(imp(imp(a(), b()), b()), imp(imp(b(), a()), a())),
            Schema::B1 => iff(imp(Val("a"), Val("b")), Val("c")),
            Schema::T1 => imp(All("x", Box::new(a())), b()),
            Schema::T2 => imp(
                All("x", Box::new(imp(a(), b()))),
                imp(a(), All("x", Box::new(b()))),
            ),
            Schema::H6 | Schema::DH11 => imp(imp(a(), b()), imp(hedge("h", a()), hedge("h", b()))),
            Schema::H7 | Schema::DH12 => imp(hedge("h", a()), OptHedge("g", Box::new(a()))),
            Schema::H8 | Schema::DH13 => hedge("h", One),
            Schema::H9 | Schema::DH14 => imp(OptHedge("g", Box::new(a())), hedge("h", a())),
            Schema::H10 => neg(hedge("h", Zero)),
            Schema::DH15 => imp(hedge("h", a()), neg(hedge("g", neg(a())))),
            Schema::Const => Val("a"),
        }
    }

    /// Side conditions beyond the shape.
    fn admits(self, b: &Bindings, sig: &HedgeSignature) -> bool {
        let hedge = |m: &str| b.hedges.get(m).cloned().flatten();
        let index = |m: &str, kind: HedgeKind| match hedge(m).and_then(|h| sig.lookup(&h)) {
            Some((k, i)) if k == kind => Some(i),
            _ => None,
        };
        let weaker = |m: &str, kind: HedgeKind, i: usize| match (hedge(m), i) {
            (None, 1) => true,
            (Some(g), i) if i >= 2 => sig.lookup(&g) == Some((kind, i - 1)),
            _ => false,
        };
        let (p, q) = (sig.stressers().len(), sig.depressers().len());
        use HedgeKind::*;
        match self {
            Schema::B1 => b.values["c"] == luk_imp(&b.values["a"], &b.values["b"]),
            Schema::T1 => b
                .terms
                .get("t")
                .is_some_and(|t| b.formulas["A"].substitute(&b.vars["x"], t).ok().as_ref() == Some(&b.formulas["B"])),
            Schema::T2 => !b.formulas["A"].free_vars().contains(&b.vars["x"]),
            Schema::H6 | Schema::DH11 => hedge("h").is_some_and(|h| sig.contains(&h)),
            Schema::H7 | Schema::DH12 => index("h", Stresser).is_some_and(|i| weaker("g", Stresser, i)),
            Schema::H8 | Schema::DH13 => p >= 1 && index("h", Stresser) == Some(p),
            Schema::H9 | Schema::DH14 => index("h", Depresser).is_some_and(|j| weaker("g", Depresser, j)),
            Schema::H10 => q >= 1 && index("h", Depresser) == Some(q),
            Schema::DH15 => match (index("h", Depresser), index("g", Stresser)) {
                (Some(i), Some(j)) => i == j,
                _ => false,
            },
            _ => true,
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|sch| sch.name() == s)
            .ok_or_else(|| format!("unknown axiom schema `{s}`"))
    }
}

/// Schema pattern over expanded formulas.
#[derive(Debug, Clone)]
enum Pat {
    Meta(&'static str),
    Val(&'static str),
    Zero,
    One,
    Imp(Box<Pat>, Box<Pat>),
    All(&'static str, Box<Pat>),
    Hedge(&'static str, Box<Pat>),
    /// A hedge that may be absent (`s_0`, `d_0` are the identity).
    OptHedge(&'static str, Box<Pat>),
}

fn imp(a: Pat, b: Pat) -> Pat {
    Pat::Imp(Box::new(a), Box::new(b))
}

fn neg(a: Pat) -> Pat {
    imp(a, Pat::Zero)
}

fn hedge(h: &'static str, a: Pat) -> Pat {
    Pat::Hedge(h, Box::new(a))
}

// ¬((B → A) → ¬B), the expansion of A ∧ B
fn min(a: Pat, b: Pat) -> Pat {
    neg(imp(imp(b.clone(), a), neg(b)))
}

fn iff(a: Pat, b: Pat) -> Pat {
    min(imp(a.clone(), b.clone()), imp(b, a))
}

/// Values bound to schema metavariables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Bindings {
    pub formulas: BTreeMap<String, Formula>,
    pub values: BTreeMap<String, TruthValue>,
    pub vars: BTreeMap<String, String>,
    /// `None` stands for the identity hedge of index 0.
    pub hedges: BTreeMap<String, Option<String>>,
    pub terms: BTreeMap<String, Term>,
}

fn bind<V: PartialEq + Clone>(map: &mut BTreeMap<String, V>, key: &str, v: &V) -> bool {
    match map.get(key) {
        Some(old) => old == v,
        None => {
            map.insert(key.to_string(), v.clone());
            true
        }
    }
}

impl Pat {
    /// Every consistent way of matching `f`.
    fn matches(&self, f: &Formula, b: Bindings) -> Vec<Bindings> {
        let mut b = b;
        let ok = match (self, f) {
            (Pat::Meta(m), _) => bind(&mut b.formulas, m, f),
            (Pat::Val(m), Formula::Const(v)) => bind(&mut b.values, m, v),
            (Pat::Zero, Formula::Const(v)) => v.is_zero(),
            (Pat::One, Formula::Const(v)) => v.is_one(),
            (Pat::Imp(pa, pb), Formula::Imp(fa, fb)) => {
                return pa
                    .matches(fa, b)
                    .into_iter()
                    .flat_map(|b| pb.matches(fb, b))
                    .collect();
            }
            (Pat::All(x, pa), Formula::Forall(y, fa)) => {
                if !bind(&mut b.vars, x, y) {
                    return vec![];
                }
                return pa.matches(fa, b);
            }
            (Pat::Hedge(h, pa), Formula::Hedge(g, fa)) => {
                if !bind(&mut b.hedges, h, &Some(g.clone())) {
                    return vec![];
                }
                return pa.matches(fa, b);
            }
            (Pat::OptHedge(h, pa), _) => {
                let mut out = Vec::new();
                if let Formula::Hedge(g, fa) = f {
                    let mut with = b.clone();
                    if bind(&mut with.hedges, h, &Some(g.clone())) {
                        out.extend(pa.matches(fa, with));
                    }
                }
                if bind(&mut b.hedges, h, &None) {
                    out.extend(pa.matches(f, b));
                }
                return out;
            }
            _ => false,
        };
        if ok {
            vec![b]
        } else {
            vec![]
        }
    }

    fn build(&self, b: &Bindings) -> Option<Formula> {
        Some(match self {
            Pat::Meta(m) => b.formulas.get(*m)?.clone(),
            Pat::Val(m) => Formula::Const(b.values.get(*m)?.clone()),
            Pat::Zero => Formula::zero(),
            Pat::One => Formula::one(),
            Pat::Imp(pa, pb) => Formula::imp(pa.build(b)?, pb.build(b)?),
            Pat::All(x, pa) => Formula::forall(b.vars.get(*x)?, pa.build(b)?),
            Pat::Hedge(h, pa) => Formula::hedge(b.hedges.get(*h)?.as_ref()?, pa.build(b)?),
            Pat::OptHedge(h, pa) => match b.hedges.get(*h)? {
                Some(g) => Formula::hedge(g, pa.build(b)?),
                None => pa.build(b)?,
            },
        })
    }
}

/// A formula recognized as an instance of a logical-axiom schema.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxiomMatch {
    pub schema: Schema,
    pub bindings: Bindings,
}

impl AxiomMatch {
    /// Rebuilds the instance from the bindings.
    pub fn instantiate(&self) -> Option<Formula> {
        self.schema.pattern().build(&self.bindings)
    }

    /// Degree of the instance in LAx.
    pub fn grade(&self) -> TruthValue {
        match self.schema {
            Schema::Const => self.bindings.values["a"].clone(),
            _ => TruthValue::one(),
        }
    }
}

/// Finds the term `t` with `A_x[t] = B` by walking both formulas in parallel
/// to the first free occurrence of `x` in `A`.
fn find_instance(a: &Formula, b: &Formula, x: &str) -> Option<Term> {
    fn in_terms(ta: &[Term], tb: &[Term], x: &str) -> Option<Term> {
        ta.iter().zip(tb).find_map(|(s, t)| match (s, t) {
            (Term::Var(v), _) if v == x => Some(t.clone()),
            (Term::App(f, sa), Term::App(g, sb)) if f == g && sa.len() == sb.len() => in_terms(sa, sb, x),
            _ => None,
        })
    }
    match (a, b) {
        (Formula::Pred(p, ta), Formula::Pred(q, tb)) if p == q && ta.len() == tb.len() => in_terms(ta, tb, x),
        (Formula::Imp(a1, a2), Formula::Imp(b1, b2)) => find_instance(a1, b1, x).or_else(|| find_instance(a2, b2, x)),
        (Formula::Forall(y, a1), Formula::Forall(z, b1)) if y == z && y != x => find_instance(a1, b1, x),
        (Formula::Hedge(g, a1), Formula::Hedge(h, b1)) if g == h => find_instance(a1, b1, x),
        _ => None,
    }
}

/// Matches `f` (expanded on entry) against one schema, enforcing its side
/// conditions and the signature's hedge order. Disabled schemas never match.
pub fn match_schema(f: &Formula, schema: Schema, sig: &HedgeSignature) -> Option<AxiomMatch> {
    if !schema.enabled(sig.mode()) {
        return None;
    }
    let e = f.expand();
    schema
        .pattern()
        .matches(&e, Bindings::default())
        .into_iter()
        .map(|mut b| {
            if schema == Schema::T1 {
                let x = &b.vars["x"];
                let a = &b.formulas["A"];
                let t = if a.free_vars().contains(x) {
                    find_instance(a, &b.formulas["B"], x)
                } else {
                    Some(Term::var(x))
                };
                if let Some(t) = t {
                    b.terms.insert("t".into(), t);
                }
            }
            b
        })
        .find(|b| schema.admits(b, sig))
        .map(|bindings| AxiomMatch { schema, bindings })
}

/// `LAx(f)`: 1 for instances of an enabled schema, `a` for the constant
/// `#a`, 0 otherwise.
pub fn lax_grade(f: &Formula, sig: &HedgeSignature) -> (TruthValue, Option<AxiomMatch>) {
    let order = std::iter::once(Schema::Const).chain(Schema::ALL.into_iter().filter(|s| *s != Schema::Const));
    for schema in order {
        if let Some(m) = match_schema(f, schema, sig) {
            return (m.grade(), Some(m));
        }
    }
    (TruthValue::zero(), None)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Modus ponens: `a/A, b/(A → B)` gives `(a⊗b)/B`.
    Mp,
    /// Generalization over the variable.
    Gen(String),
    /// Lifting by a truth constant: `b/A` gives `(a⇒b)/(#a → A)`.
    Lc(TruthValue),
}

pub fn apply_mp(a: &EvaluatedFormula, ab: &EvaluatedFormula) -> Result<EvaluatedFormula, DeductionError> {
    let (lhs, rhs) = ab
        .formula
        .as_imp()
        .ok_or_else(|| DeductionError::PremiseShape("second premise of mp is not an implication".into()))?;
    if *lhs != a.formula {
        return Err(DeductionError::PremiseShape(
            "antecedent of the implication differs from the first premise".into(),
        ));
    }
    Ok(EvaluatedFormula::new(luk_and(&a.grade, &ab.grade), rhs.clone()))
}

pub fn apply_gen(a: &EvaluatedFormula, x: &str) -> Result<EvaluatedFormula, DeductionError> {
    if !is_variable_name(x) {
        return Err(DeductionError::NotAVariable(x.to_string()));
    }
    Ok(EvaluatedFormula::new(a.grade.clone(), Formula::forall(x, a.formula.clone())))
}

pub fn apply_lc(b: &EvaluatedFormula, a: &TruthValue) -> EvaluatedFormula {
    EvaluatedFormula::new(
        luk_imp(a, &b.grade),
        Formula::imp(Formula::Const(a.clone()), b.formula.clone()),
    )
}

/// Applies a rule to premises given in rule order (for MP: `A` first, then
/// `A → B`). Premise formulas are expanded first.
pub fn apply_rule(rule: &Rule, premises: &[EvaluatedFormula]) -> Result<EvaluatedFormula, DeductionError> {
    let expanded: Vec<EvaluatedFormula> = premises
        .iter()
        .map(|p| EvaluatedFormula::new(p.grade.clone(), p.formula.expand()))
        .collect();
    let arity = if *rule == Rule::Mp { 2 } else { 1 };
    if expanded.len() != arity {
        return Err(DeductionError::PremiseShape(format!(
            "expected {arity} premise(s), got {}",
            expanded.len()
        )));
    }
    match rule {
        Rule::Mp => apply_mp(&expanded[0], &expanded[1]),
        Rule::Gen(x) => apply_gen(&expanded[0], x),
        Rule::Lc(a) => Ok(apply_lc(&expanded[0], a)),
    }
}
