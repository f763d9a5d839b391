//! Finite structures and truth valuations.
//!
//! Structure files:
//!
//! ```text
//! domain d1 d2
//! pred P/1 { d1: 2/5, d2: 9/10 }
//! pred R/2 { (d1, d1): 1, (d1, d2): 0, (d2, d1): 1/2, (d2, d2): 1 }
//! pred Q/0 { 1/2 }
//! fun f/1 { d1: d2, d2: d2 }
//! const 'u1 = d1
//! hedges very.hdg
//! ```
//!
//! Semantic degrees are computed by enumerating every structure over a
//! finite chain with domains of bounded size, so they bound the `[0,1]`
//! degree from above.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use thiserror::Error;

use crate::hedge::{HedgeModel, ValidationReport};
use crate::lang::{Formula, HedgeSignature, SymbolTable, Term, Theory};
use crate::mv::{self, MvChain, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("symbol `{0}` is not interpreted by the structure")]
    Undeclared(String),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("formula is not closed: {0}")]
    Open(String),
    #[error("search space of {needed} structures exceeds the limit of {limit}")]
    SpaceGuard { needed: u128, limit: u128 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A total table over `Dⁿ`, indexed in mixed radix with the first argument
/// most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<V> {
    arity: usize,
    values: Vec<V>,
}

impl<V> Table<V> {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    fn get(&self, args: &[usize], size: usize) -> &V {
        &self.values[tuple_index(args, size)]
    }
}

fn tuple_index(args: &[usize], size: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

fn tuple_of(mut index: usize, arity: usize, size: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
    out
}

/// Assignment of domain elements to free variables.
pub type Valuation = BTreeMap<String, usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    domain: Vec<String>,
    preds: BTreeMap<String, Table<TruthValue>>,
    funcs: BTreeMap<String, Table<usize>>,
    consts: BTreeMap<String, usize>,
    hedges: HedgeModel,
}

impl Structure {
    /// A structure over `domain` with no symbols and identity hedges.
    pub fn new(domain: Vec<String>) -> Self {
        assert!(!domain.is_empty(), "domain must be nonempty");
        Structure {
            domain,
            preds: BTreeMap::new(),
            funcs: BTreeMap::new(),
            consts: BTreeMap::new(),
            hedges: HedgeModel::identity(&HedgeSignature::empty()),
        }
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn hedges(&self) -> &HedgeModel {
        &self.hedges
    }

    pub fn set_hedges(&mut self, hedges: HedgeModel) {
        self.hedges = hedges;
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.domain.iter().position(|d| d == name)
    }

    /// Panics unless `values.len() == |D|^arity`.
    pub fn set_pred(&mut self, name: &str, arity: usize, values: Vec<TruthValue>) {
        assert_eq!(values.len(), self.size().pow(arity as u32), "table for {name} is not total");
        self.preds.insert(name.to_string(), Table { arity, values });
    }

    /// Panics unless `values.len() == |D|^arity` and all are elements.
    pub fn set_func(&mut self, name: &str, arity: usize, values: Vec<usize>) {
        assert_eq!(values.len(), self.size().pow(arity as u32), "table for {name} is not total");
        assert!(values.iter().all(|&v| v < self.size()));
        self.funcs.insert(name.to_string(), Table { arity, values });
    }

    pub fn set_const(&mut self, name: &str, element: usize) {
        assert!(element < self.size());
        self.consts.insert(name.to_string(), element);
    }

    pub fn pred(&self, name: &str) -> Option<&Table<TruthValue>> {
        self.preds.get(name)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "domain {}", self.domain.join(" ")).unwrap();
        let n = self.size();
        let key = |i: usize, arity: usize| {
            let t: Vec<&str> = tuple_of(i, arity, n).into_iter().map(|e| self.domain[e].as_str()).collect();
            if arity == 1 {
                t[0].to_string()
            } else {
                format!("({})", t.join(", "))
            }
        };
        for (p, t) in &self.preds {
            if t.arity == 0 {
                writeln!(s, "pred {p}/0 {{ {} }}", t.values[0]).unwrap();
                continue;
            }
            let entries: Vec<String> = t.values.iter().enumerate().map(|(i, v)| format!("{}: {v}", key(i, t.arity))).collect();
            writeln!(s, "pred {p}/{} {{ {} }}", t.arity, entries.join(", ")).unwrap();
        }
        for (f, t) in &self.funcs {
            if t.arity == 0 {
                writeln!(s, "fun {f}/0 {{ {} }}", self.domain[t.values[0]]).unwrap();
                continue;
            }
            let entries: Vec<String> = t
                .values
                .iter()
                .enumerate()
                .map(|(i, &v)| format!("{}: {}", key(i, t.arity), self.domain[v]))
                .collect();
            writeln!(s, "fun {f}/{} {{ {} }}", t.arity, entries.join(", ")).unwrap();
        }
        for (c, &e) in &self.consts {
            writeln!(s, "const '{c} = {}", self.domain[e]).unwrap();
        }
        s
    }
}

pub fn eval_term(s: &Structure, t: &Term, env: &Valuation) -> Result<usize, SemanticsError> {
    match t {
        Term::Var(x) => env.get(x).copied().ok_or_else(|| SemanticsError::UnboundVariable(x.clone())),
        Term::Const(c) => s.consts.get(c).copied().ok_or_else(|| SemanticsError::Undeclared(format!("'{c}"))),
        Term::App(f, args) => {
            let table = s.funcs.get(f).ok_or_else(|| SemanticsError::Undeclared(f.clone()))?;
            if table.arity != args.len() {
                return Err(SemanticsError::Arity {
                    name: f.clone(),
                    expected: table.arity,
                    found: args.len(),
                });
            }
            let vals = args.iter().map(|a| eval_term(s, a, env)).collect::<Result<Vec<_>, _>>()?;
            Ok(*table.get(&vals, s.size()))
        }
    }
}

/// Truth value of `a` under `env`. Derived connectives use their truth
/// functions directly; this coincides with evaluating the expansion.
pub fn eval_formula(s: &Structure, a: &Formula, env: &Valuation) -> Result<TruthValue, SemanticsError> {
    use Formula::*;
    let ev = |f: &Formula| eval_formula(s, f, env);
    Ok(match a {
        Const(v) => v.clone(),
        Pred(p, args) => {
            let table = s.preds.get(p).ok_or_else(|| SemanticsError::Undeclared(p.clone()))?;
            if table.arity != args.len() {
                return Err(SemanticsError::Arity {
                    name: p.clone(),
                    expected: table.arity,
                    found: args.len(),
                });
            }
            let vals = args.iter().map(|t| eval_term(s, t, env)).collect::<Result<Vec<_>, _>>()?;
            table.get(&vals, s.size()).clone()
        }
        Imp(x, y) => mv::luk_imp(&ev(x)?, &ev(y)?),
        Forall(x, b) | Exists(x, b) => {
            let mut inner = env.clone();
            let mut acc: Option<TruthValue> = None;
            for d in 0..s.size() {
                inner.insert(x.clone(), d);
                let v = eval_formula(s, b, &inner)?;
                acc = Some(match acc {
                    None => v,
                    Some(w) if matches!(a, Forall(..)) => mv::meet(&w, &v),
                    Some(w) => mv::join(&w, &v),
                });
            }
            acc.expect("nonempty domain")
        }
        Hedge(h, b) => {
            let v = ev(b)?;
            s.hedges.eval(h, &v).ok_or_else(|| SemanticsError::Undeclared(h.clone()))?
        }
        Not(x) => mv::luk_neg(&ev(x)?),
        LukAnd(x, y) => mv::luk_and(&ev(x)?, &ev(y)?),
        LukOr(x, y) => mv::luk_or(&ev(x)?, &ev(y)?),
        Min(x, y) => mv::meet(&ev(x)?, &ev(y)?),
        Max(x, y) => mv::join(&ev(x)?, &ev(y)?),
        Iff(x, y) => mv::biresiduum(&ev(x)?, &ev(y)?),
        Power(x, n) => mv::power(&ev(x)?, *n),
        Multiple(x, n) => mv::multiple(&ev(x)?, *n),
    })
}

/// Value of a closed formula.
pub fn eval_closed(s: &Structure, a: &Formula) -> Result<TruthValue, SemanticsError> {
    eval_formula(s, a, &Valuation::new())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelCheck {
    Model,
    /// First special axiom (in theory order) whose grade exceeds its value.
    Violates(Formula),
    /// The hedge model fails its axioms on the evaluation chain.
    HedgeAxioms(ValidationReport),
}

fn closed(f: &Formula) -> Result<(), SemanticsError> {
    if f.is_closed() {
        Ok(())
    } else {
        Err(SemanticsError::Open(f.to_string()))
    }
}

/// Whether `SAx(A) ≤ D(A)` for all special axioms and the structure's
/// hedge model satisfies the hedge axioms on `chain`.
pub fn is_model(s: &Structure, theory: &Theory, chain: MvChain) -> Result<ModelCheck, SemanticsError> {
    for f in theory.support() {
        closed(f)?;
    }
    let report = s.hedges.validate_axioms(chain);
    if !report.passed() {
        return Ok(ModelCheck::HedgeAxioms(report));
    }
    satisfies(s, theory)
}

fn satisfies(s: &Structure, theory: &Theory) -> Result<ModelCheck, SemanticsError> {
    for (f, g) in theory.special_axioms() {
        if eval_closed(s, f)? < *g {
            return Ok(ModelCheck::Violates(f.clone()));
        }
    }
    Ok(ModelCheck::Model)
}

/// Bounds for structure enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    pub chain: MvChain,
    pub max_domain: usize,
    /// Upper limit on the number of structures enumerated.
    pub limit: u128,
}

impl SearchSpace {
    pub const DEFAULT_LIMIT: u128 = 20_000_000;

    pub fn new(chain: MvChain, max_domain: usize) -> Self {
        SearchSpace {
            chain,
            max_domain,
            limit: Self::DEFAULT_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemDegree {
    pub degree: TruthValue,
    /// First enumerated model attaining the degree; `None` when there are
    /// no models (the degree is then 1).
    pub witness: Option<Structure>,
    pub structures: u128,
    pub models: u128,
}

/// One enumeration slot: which table entry it drives and its radix.
#[derive(Debug, Clone, Copy)]
enum Slot {
    Pred(usize, usize),
    Func(usize, usize),
    Const(usize),
}

/// Odometer over all structures of one domain size, tables in lexicographic
/// order (first symbol, first tuple most significant).
struct Enumerator {
    structure: Structure,
    pred_names: Vec<String>,
    func_names: Vec<String>,
    const_names: Vec<String>,
    slots: Vec<Slot>,
    digits: Vec<usize>,
    values: Vec<TruthValue>,
    started: bool,
}

impl Enumerator {
    fn new(size: usize, syms: &SymbolTable, hedges: &HedgeModel, values: Vec<TruthValue>) -> Self {
        let domain: Vec<String> = (1..=size).map(|i| format!("e{i}")).collect();
        let mut structure = Structure::new(domain);
        structure.set_hedges(hedges.clone());
        let mut slots = Vec::new();
        let pred_names: Vec<String> = syms.preds.keys().cloned().collect();
        for (pi, p) in pred_names.iter().enumerate() {
            let arity = syms.preds[p];
            let entries = size.pow(arity as u32);
            structure.set_pred(p, arity, vec![values[0].clone(); entries]);
            slots.extend((0..entries).map(|e| Slot::Pred(pi, e)));
        }
        let func_names: Vec<String> = syms.funcs.keys().cloned().collect();
        for (fi, f) in func_names.iter().enumerate() {
            let arity = syms.funcs[f];
            let entries = size.pow(arity as u32);
            structure.set_func(f, arity, vec![0; entries]);
            slots.extend((0..entries).map(|e| Slot::Func(fi, e)));
        }
        let const_names: Vec<String> = syms.constants.iter().cloned().collect();
        for (ci, c) in const_names.iter().enumerate() {
            structure.set_const(c, 0);
            slots.push(Slot::Const(ci));
        }
        let digits = vec![0; slots.len()];
        Enumerator {
            structure,
            pred_names,
            func_names,
            const_names,
            slots,
            digits,
            values,
            started: false,
        }
    }

    fn radix(&self, slot: Slot) -> usize {
        match slot {
            Slot::Pred(..) => self.values.len(),
            Slot::Func(..) | Slot::Const(_) => self.structure.size(),
        }
    }

    fn write(&mut self, k: usize) {
        let d = self.digits[k];
        match self.slots[k] {
            Slot::Pred(p, e) => {
                let v = self.values[d].clone();
                self.structure.preds.get_mut(&self.pred_names[p]).unwrap().values[e] = v;
            }
            Slot::Func(f, e) => {
                self.structure.funcs.get_mut(&self.func_names[f]).unwrap().values[e] = d;
            }
            Slot::Const(c) => {
                *self.structure.consts.get_mut(&self.const_names[c]).unwrap() = d;
            }
        }
    }

    /// Advances to the next structure; `false` once exhausted.
    fn advance(&mut self) -> bool {
        if !self.started {
            self.started = true;
            return true;
        }
        for k in (0..self.slots.len()).rev() {
            self.digits[k] += 1;
            if self.digits[k] < self.radix(self.slots[k]) {
                self.write(k);
                return true;
            }
            self.digits[k] = 0;
            self.write(k);
        }
        false
    }
}

fn count_structures(size: usize, syms: &SymbolTable, chain_len: usize) -> u128 {
    let n = size as u128;
    let mut total: u128 = 1;
    let mut mul = |base: u128, exp: u128| {
        for _ in 0..exp {
            total = total.saturating_mul(base);
        }
    };
    for &arity in syms.preds.values() {
        mul(chain_len as u128, n.saturating_pow(arity as u32));
    }
    for &arity in syms.funcs.values() {
        mul(n, n.saturating_pow(arity as u32));
    }
    mul(n, syms.constants.len() as u128);
    total
}

/// Domain sizes worth enumerating: size 1 suffices when only nullary
/// predicates occur, since then no formula can tell domains apart.
fn domain_sizes(syms: &SymbolTable, max_domain: usize) -> std::ops::RangeInclusive<usize> {
    let propositional = syms.funcs.is_empty() && syms.preds.values().all(|&a| a == 0);
    1..=if propositional { 1 } else { max_domain.max(1) }
}

/// `⋀{D(goal) | D ⊨ theory}` over the structures of `space`, with the hedge
/// interpretation fixed to `hedges`.
pub fn sem_degree(theory: &Theory, goal: &Formula, hedges: &HedgeModel, space: SearchSpace) -> Result<SemDegree, SemanticsError> {
    closed(goal)?;
    for f in theory.support() {
        closed(f)?;
    }
    let mut syms = theory.symbols().clone();
    let mut goal_syms = SymbolTable::new();
    goal.symbols(&mut goal_syms);
    syms.merge(&goal_syms).map_err(|e| SemanticsError::Parse {
        line: 0,
        message: e.to_string(),
    })?;

    let sizes = domain_sizes(&syms, space.max_domain);
    let values = space.chain.values();
    let needed = sizes
        .clone()
        .map(|n| count_structures(n, &syms, values.len()))
        .fold(0u128, u128::saturating_add);
    if needed > space.limit {
        return Err(SemanticsError::SpaceGuard {
            needed,
            limit: space.limit,
        });
    }

    let mut result = SemDegree {
        degree: TruthValue::one(),
        witness: None,
        structures: 0,
        models: 0,
    };
    if !hedges.validate_axioms(space.chain).passed() {
        return Ok(result);
    }
    'sizes: for n in sizes {
        let mut en = Enumerator::new(n, &syms, hedges, values.clone());
        while en.advance() {
            result.structures += 1;
            if satisfies(&en.structure, theory)? != ModelCheck::Model {
                continue;
            }
            result.models += 1;
            let v = eval_closed(&en.structure, goal)?;
            if result.witness.is_none() || v < result.degree {
                result.degree = v;
                result.witness = Some(en.structure.clone());
                if result.degree.is_zero() {
                    break 'sizes;
                }
            }
        }
    }
    Ok(result)
}

/// Degree to which `a` is a tautology: the semantic degree from the empty
/// theory.
pub fn tautology_degree(a: &Formula, hedges: &HedgeModel, space: SearchSpace) -> Result<SemDegree, SemanticsError> {
    sem_degree(&Theory::new(hedges.signature().clone()), a, hedges, space)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    /// `tautology_degree(a → b) = 1`
    pub implication_valid: bool,
    /// First structure with `D(a) > D(b)`, if any.
    pub counterexample: Option<Structure>,
}

impl LemmaCheck {
    /// Both computation paths agree.
    pub fn consistent(&self) -> bool {
        self.implication_valid == self.counterexample.is_none()
    }
}

/// Cross-checks `⊨ a → b` against pointwise `D(a) ≤ D(b)` over every
/// enumerated structure.
pub fn check_equivalence_lemma(a: &Formula, b: &Formula, hedges: &HedgeModel, space: SearchSpace) -> Result<LemmaCheck, SemanticsError> {
    let imp = Formula::imp(a.clone(), b.clone());
    let implication_valid = tautology_degree(&imp, hedges, space)?.degree.is_one();

    let mut syms = SymbolTable::new();
    imp.symbols(&mut syms);
    let mut counterexample = None;
    'sizes: for n in domain_sizes(&syms, space.max_domain) {
        let mut en = Enumerator::new(n, &syms, hedges, space.chain.values());
        while en.advance() {
            if eval_closed(&en.structure, a)? > eval_closed(&en.structure, b)? {
                counterexample = Some(en.structure.clone());
                break 'sizes;
            }
        }
    }
    Ok(LemmaCheck {
        implication_valid,
        counterexample,
    })
}

/// A parsed structure file; `hedges` names the hedge-model file to attach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedStructure {
    pub structure: Structure,
    pub hedges: Option<String>,
}

fn split_symbol(decl: &str) -> Result<(String, usize), String> {
    let (name, arity) = decl.split_once('/').ok_or_else(|| format!("expected `name/arity`, got `{decl}`"))?;
    let arity = arity.trim().parse().map_err(|_| format!("bad arity in `{decl}`"))?;
    Ok((name.trim().to_string(), arity))
}

/// Splits `k: v, k: v` at top-level commas (tuple keys contain commas).
fn entries(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0, 0);
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(body[start..].trim());
    out.into_iter().filter(|e| !e.is_empty()).collect()
}

fn parse_table<V: Clone>(
    s: &Structure,
    name: &str,
    arity: usize,
    body: &str,
    value: impl Fn(&str) -> Result<V, String>,
) -> Result<Vec<V>, String> {
    let n = s.size();
    let mut slots: Vec<Option<V>> = vec![None; n.pow(arity as u32)];
    if arity == 0 {
        let es = entries(body);
        if es.len() != 1 {
            return Err(format!("`{name}/0` takes a single value"));
        }
        slots[0] = Some(value(es[0])?);
    } else {
        for e in entries(body) {
            let (key, v) = e.rsplit_once(':').ok_or_else(|| format!("expected `key: value` in `{e}`"))?;
            let key = key.trim();
            let key = key.strip_prefix('(').and_then(|k| k.strip_suffix(')')).unwrap_or(key);
            let tuple = key
                .split(',')
                .map(|k| s.element(k.trim()).ok_or_else(|| format!("unknown element `{}`", k.trim())))
                .collect::<Result<Vec<_>, _>>()?;
            if tuple.len() != arity {
                return Err(format!("`{name}` expects {arity}-tuples"));
            }
            let slot = &mut slots[tuple_index(&tuple, n)];
            if slot.is_some() {
                return Err(format!("duplicate entry `{key}` for `{name}`"));
            }
            *slot = Some(value(v.trim())?);
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                let t: Vec<&str> = tuple_of(i, arity, n).into_iter().map(|e| s.domain[e].as_str()).collect();
                format!("`{name}` has no entry for ({})", t.join(", "))
            })
        })
        .collect()
}

pub fn parse_structure(text: &str) -> Result<ParsedStructure, SemanticsError> {
    let mut structure: Option<Structure> = None;
    let mut hedges = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('%').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |message: String| SemanticsError::Parse { line: i + 1, message };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if key == "domain" {
            if structure.is_some() {
                return Err(perr("domain declared twice".into()));
            }
            let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
            let unique: BTreeSet<&String> = names.iter().collect();
            if names.is_empty() || unique.len() != names.len() {
                return Err(perr("domain needs distinct element names".into()));
            }
            structure = Some(Structure::new(names));
            continue;
        }
        if key == "hedges" {
            hedges = Some(rest.to_string());
            continue;
        }
        let s = structure.as_mut().ok_or_else(|| perr("`domain` must come first".into()))?;
        match key {
            "pred" | "fun" => {
                let (decl, body) = rest.split_once('{').ok_or_else(|| perr("expected `{ ... }`".into()))?;
                let body = body.trim_end().strip_suffix('}').ok_or_else(|| perr("missing `}`".into()))?;
                let (name, arity) = split_symbol(decl).map_err(perr)?;
                if key == "pred" {
                    let vals = parse_table(s, &name, arity, body, |v| v.parse::<TruthValue>().map_err(|e| e.to_string()))
                        .map_err(perr)?;
                    s.set_pred(&name, arity, vals);
                } else {
                    let vals = parse_table(s, &name, arity, body, |v| {
                        s.element(v).ok_or_else(|| format!("unknown element `{v}`"))
                    })
                    .map_err(perr)?;
                    s.set_func(&name, arity, vals);
                }
            }
            "const" => {
                let (c, d) = rest.split_once('=').ok_or_else(|| perr("expected `const 'c = element`".into()))?;
                let c = c.trim();
                let c = c.strip_prefix('\'').unwrap_or(c);
                let e = s.element(d.trim()).ok_or_else(|| perr(format!("unknown element `{}`", d.trim())))?;
                s.set_const(c, e);
            }
            _ => return Err(perr(format!("unknown declaration `{key}`"))),
        }
    }
    let structure = structure.ok_or(SemanticsError::Parse {
        line: 0,
        message: "missing `domain` line".into(),
    })?;
    Ok(ParsedStructure { structure, hedges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hedge::HedgeFunction;
    use crate::lang::{parse_formula, parse_theory, HedgeMode};

    fn tv(n: i64, d: i64) -> TruthValue {
        TruthValue::frac(n, d)
    }

    fn f(text: &str) -> Formula {
        parse_formula(text, &HedgeSignature::canonical(HedgeMode::H, 1, 0).unwrap()).unwrap()
    }

    fn example() -> Structure {
        let mut s = parse_structure(
            "domain d1 d2\npred P/1 { d1: 2/5, d2: 9/10 }\nfun f/1 { d1: d2, d2: d2 }\nconst 'u = d1\n",
        )
        .unwrap()
        .structure;
        let sig = HedgeSignature::canonical(HedgeMode::H, 1, 0).unwrap();
        s.set_hedges(HedgeModel::identity(&sig));
        s
    }

    fn space(k: u32, m: usize) -> SearchSpace {
        SearchSpace::new(MvChain::new(k).unwrap(), m)
    }

    #[test]
    fn terms() {
        let s = example();
        let env: Valuation = [("x".to_string(), 1)].into();
        assert_eq!(eval_term(&s, &Term::constant("u"), &env), Ok(0));
        assert_eq!(eval_term(&s, &Term::App("f".into(), vec![Term::constant("u")]), &env), Ok(1));
        assert_eq!(eval_term(&s, &Term::var("x"), &env), Ok(1));
        assert!(matches!(eval_term(&s, &Term::var("y"), &env), Err(SemanticsError::UnboundVariable(_))));
        assert!(matches!(eval_term(&s, &Term::constant("w"), &env), Err(SemanticsError::Undeclared(_))));
    }

    #[test]
    fn formulas() {
        let s = example();
        assert_eq!(eval_closed(&s, &f("forall x. P(x)")), Ok(tv(2, 5)));
        assert_eq!(eval_closed(&s, &f("exists x. P(x)")), Ok(tv(9, 10)));
        assert_eq!(eval_closed(&s, &f("~P(u)")), Ok(tv(3, 5)));
        assert_eq!(eval_closed(&s, &f("s1 P(u)")), Ok(tv(2, 5)));
        assert_eq!(eval_closed(&s, &f("P(f(u))")), Ok(tv(9, 10)));
        for text in ["P(u) & P(f(u))", "exists x. ~P(x) \\/ P(u)^2", "3*P(u) <-> s1 P(u) /\\ P(u)"] {
            let g = f(text);
            assert_eq!(eval_closed(&s, &g), eval_closed(&s, &g.expand()), "{text}");
        }
    }

    #[test]
    fn model_checking() {
        let sig = HedgeSignature::canonical(HedgeMode::H, 1, 0).unwrap();
        let t = parse_theory("4/5 : P(u)", &sig).unwrap();
        let mut s = example();
        let chain = MvChain::new(10).unwrap();
        assert_eq!(is_model(&s, &t, chain), Ok(ModelCheck::Violates(f("P(u)"))));
        s.set_pred("P", 1, vec![tv(4, 5), tv(0, 1)]);
        assert_eq!(is_model(&s, &t, chain), Ok(ModelCheck::Model));
        assert_eq!(is_model(&s, &Theory::new(sig.clone()), chain), Ok(ModelCheck::Model));
        s.set_hedges(HedgeModel::new(sig.clone(), [("s1".to_string(), HedgeFunction::pl_square())].into()).unwrap());
        assert!(matches!(is_model(&s, &t, chain), Ok(ModelCheck::HedgeAxioms(_))));
        let open = parse_theory("1/2 : P(x)", &sig).unwrap();
        assert!(matches!(is_model(&s, &open, chain), Err(SemanticsError::Open(_))));
    }

    #[test]
    fn semantic_degrees() {
        let empty = HedgeModel::identity(&HedgeSignature::empty());
        let t = parse_theory("4/5 : P(u)", &HedgeSignature::empty()).unwrap();
        let r = sem_degree(&t, &f("P(u)"), &empty, space(10, 1)).unwrap();
        assert_eq!(r.degree, tv(4, 5));

        let t = parse_theory("4/5 : P\n9/10 : P -> Q", &HedgeSignature::empty()).unwrap();
        let r = sem_degree(&t, &f("Q"), &empty, space(10, 2)).unwrap();
        assert_eq!(r.degree, tv(7, 10));
        assert_eq!(r.structures, 121);
        let w = r.witness.unwrap();
        assert_eq!(eval_closed(&w, &f("P")), Ok(tv(4, 5)));
        assert_eq!(eval_closed(&w, &f("P -> Q")), Ok(tv(9, 10)));

        assert_eq!(tautology_degree(&f("P -> (Q -> P)"), &empty, space(10, 2)).unwrap().degree, TruthValue::one());
        assert_eq!(tautology_degree(&f("(forall x. P(x)) -> P(u)"), &empty, space(10, 2)).unwrap().degree, TruthValue::one());
        assert_eq!(tautology_degree(&f("P"), &empty, space(10, 2)).unwrap().degree, TruthValue::zero());
        assert_eq!(tautology_degree(&f("#(1/2)"), &empty, space(10, 2)).unwrap().degree, tv(1, 2));
    }

    #[test]
    fn space_guard() {
        let empty = HedgeModel::identity(&HedgeSignature::empty());
        let mut sp = space(10, 3);
        sp.limit = 1000;
        let r = tautology_degree(&f("forall x. forall y. R(x, y) -> R(y, x)"), &empty, sp);
        assert!(matches!(r, Err(SemanticsError::SpaceGuard { .. })));
    }

    #[test]
    fn lemma() {
        let empty = HedgeModel::identity(&HedgeSignature::empty());
        let l = check_equivalence_lemma(&f("A & B"), &f("A"), &empty, space(10, 1)).unwrap();
        assert!(l.implication_valid && l.counterexample.is_none());
        let l = check_equivalence_lemma(&f("A"), &f("A & A"), &empty, space(10, 1)).unwrap();
        assert!(!l.implication_valid && l.consistent());
        let w = l.counterexample.unwrap();
        assert!(eval_closed(&w, &f("A")).unwrap() > eval_closed(&w, &f("A & A")).unwrap());
    }

    #[test]
    fn structure_files() {
        let text = "domain a b\npred Q/0 { 1/2 }\npred R/2 { (a, a): 1, (a, b): 0, (b, a): 1/2, (b, b): 1 }\nfun g/0 { b }\nconst 'c = a\n";
        let parsed = parse_structure(text).unwrap();
        assert_eq!(parsed.structure.to_text(), text);
        assert_eq!(parse_structure(&parsed.structure.to_text()).unwrap(), parsed);
        assert_eq!(
            parse_structure("domain a\nhedges h.hdg\n").unwrap().hedges.as_deref(),
            Some("h.hdg")
        );
        for bad in [
            "pred P/1 { a: 1 }",
            "domain a b\npred P/1 { a: 1 }",
            "domain a\npred P/1 { a: 2 }",
            "domain a\npred P/1 { z: 1 }",
            "domain a a",
            "domain a\nwidget x",
        ] {
            assert!(parse_structure(bad).is_err(), "{bad}");
        }
    }
}
