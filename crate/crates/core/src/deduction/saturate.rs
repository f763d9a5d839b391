//! Forward-chaining saturation over a finite formula universe.
//!
//! Grades start at `max(SAx, LAx)` and are raised by MP, G and LC whenever a
//! rule instance with premises and conclusion in the universe yields more.
//! Every raise is appended to a derivation log whose entries cite earlier
//! entries only, so witness proofs can be read back without cycles.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{lax_grade, Justification, Proof, ProofStep, Schema};
use crate::lang::{subformula_universe, EvaluatedFormula, Formula, Theory};
use crate::mv::{luk_and, luk_imp, TruthValue};

/// Worklist discipline; the fixpoint does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Origin {
    Sax,
    Lax(Schema),
    Mp(usize, usize),
    Gen(usize, String),
    Lc(usize, TruthValue),
}

#[derive(Debug, Clone)]
struct Entry {
    formula: usize,
    grade: TruthValue,
    origin: Origin,
}

#[derive(Debug, Clone)]
enum Instance {
    Mp { a: usize, imp: usize, concl: usize },
    Gen { prem: usize, concl: usize, var: String },
    Lc { prem: usize, concl: usize, a: TruthValue },
}

/// Result of saturating a universe: best-known grades with derivations.
#[derive(Debug, Clone)]
pub struct Saturation {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
    grades: Vec<TruthValue>,
    best: Vec<usize>,
    log: Vec<Entry>,
    fixpoint: bool,
    improvements: usize,
}

impl Saturation {
    /// Current lower bound for `f`, `None` outside the universe.
    pub fn grade(&self, f: &Formula) -> Option<&TruthValue> {
        let i = self.position(f)?;
        Some(&self.grades[i])
    }

    fn position(&self, f: &Formula) -> Option<usize> {
        if f.is_expanded() {
            self.index.get(f).copied()
        } else {
            self.index.get(&f.expand()).copied()
        }
    }

    pub fn is_fixpoint(&self) -> bool {
        self.fixpoint
    }

    /// Number of grade raises performed by rules.
    pub fn improvements(&self) -> usize {
        self.improvements
    }

    pub fn universe(&self) -> &[Formula] {
        &self.formulas
    }

    /// The graded map in universe order.
    pub fn grades(&self) -> impl Iterator<Item = (&Formula, &TruthValue)> {
        self.formulas.iter().zip(&self.grades)
    }

    /// A proof whose value is the current grade of `f`.
    pub fn proof_of(&self, f: &Formula) -> Option<Proof> {
        let i = self.position(f)?;
        let mut steps = Vec::new();
        let mut emitted = HashMap::new();
        self.emit(self.best[i], &mut steps, &mut emitted);
        Proof::new(steps)
    }

    fn emit(&self, entry: usize, steps: &mut Vec<ProofStep>, emitted: &mut HashMap<usize, usize>) -> usize {
        if let Some(&n) = emitted.get(&entry) {
            return n;
        }
        let e = &self.log[entry];
        let justification = match &e.origin {
            Origin::Sax => Justification::Sax,
            Origin::Lax(s) => Justification::Lax(*s),
            Origin::Mp(i, j) => {
                let a = self.emit(*i, steps, emitted);
                let b = self.emit(*j, steps, emitted);
                Justification::Mp(a, b)
            }
            Origin::Gen(i, x) => Justification::Gen(self.emit(*i, steps, emitted), x.clone()),
            Origin::Lc(i, a) => Justification::Lc(self.emit(*i, steps, emitted), a.clone()),
        };
        steps.push(ProofStep {
            conclusion: EvaluatedFormula::new(e.grade.clone(), self.formulas[e.formula].clone()),
            justification,
        });
        emitted.insert(entry, steps.len());
        steps.len()
    }
}

/// Saturates `universe` (expanded on entry) under the theory. `budget` caps
/// the number of grade raises; when it runs out the map is returned with
/// the fixpoint flag cleared.
pub fn saturate(theory: &Theory, universe: &BTreeSet<Formula>, budget: usize, order: Order) -> Saturation {
    let sig = theory.signature();
    let formulas: Vec<Formula> = universe
        .iter()
        .map(Formula::expand)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<Formula, usize> = formulas.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();

    let mut log = Vec::with_capacity(formulas.len());
    let mut grades = Vec::with_capacity(formulas.len());
    for (i, f) in formulas.iter().enumerate() {
        let sax = theory.sax(f);
        let (lax, m) = lax_grade(f, sig);
        let (grade, origin) = match m {
            Some(m) if lax >= sax && !lax.is_zero() => (lax, Origin::Lax(m.schema)),
            _ => (sax, Origin::Sax),
        };
        grades.push(grade.clone());
        log.push(Entry {
            formula: i,
            grade,
            origin,
        });
    }
    let best: Vec<usize> = (0..formulas.len()).collect();

    let mut instances = Vec::new();
    let mut dependents: Vec<Vec<usize>> = vec![Vec::new(); formulas.len()];
    for (i, f) in formulas.iter().enumerate() {
        match f {
            Formula::Imp(a, b) => {
                if let (Some(&ai), Some(&bi)) = (index.get(&**a), index.get(&**b)) {
                    dependents[ai].push(instances.len());
                    dependents[i].push(instances.len());
                    instances.push(Instance::Mp { a: ai, imp: i, concl: bi });
                }
                if let (Formula::Const(c), Some(&bi)) = (&**a, index.get(&**b)) {
                    dependents[bi].push(instances.len());
                    instances.push(Instance::Lc {
                        prem: bi,
                        concl: i,
                        a: c.clone(),
                    });
                }
            }
            Formula::Forall(x, a) => {
                if let Some(&ai) = index.get(&**a) {
                    dependents[ai].push(instances.len());
                    instances.push(Instance::Gen {
                        prem: ai,
                        concl: i,
                        var: x.clone(),
                    });
                }
            }
            _ => {}
        }
    }

    let mut sat = Saturation {
        formulas,
        index,
        grades,
        best,
        log,
        fixpoint: true,
        improvements: 0,
    };
    let n = sat.formulas.len();
    let mut queued = vec![true; n];
    let mut queue: VecDeque<usize> = match order {
        Order::Fifo => (0..n).collect(),
        Order::Lifo => (0..n).rev().collect(),
    };
    let pop = |q: &mut VecDeque<usize>| match order {
        Order::Fifo => q.pop_front(),
        Order::Lifo => q.pop_back(),
    };
    while let Some(id) = pop(&mut queue) {
        queued[id] = false;
        for &k in &dependents[id] {
            let (concl, grade, origin) = match &instances[k] {
                Instance::Mp { a, imp, concl } => (
                    *concl,
                    luk_and(&sat.grades[*a], &sat.grades[*imp]),
                    Origin::Mp(sat.best[*a], sat.best[*imp]),
                ),
                Instance::Gen { prem, concl, var } => {
                    (*concl, sat.grades[*prem].clone(), Origin::Gen(sat.best[*prem], var.clone()))
                }
                Instance::Lc { prem, concl, a } => (
                    *concl,
                    luk_imp(a, &sat.grades[*prem]),
                    Origin::Lc(sat.best[*prem], a.clone()),
                ),
            };
            if grade <= sat.grades[concl] {
                continue;
            }
            if sat.improvements == budget {
                sat.fixpoint = false;
                return sat;
            }
            sat.improvements += 1;
            sat.grades[concl] = grade.clone();
            sat.best[concl] = sat.log.len();
            sat.log.push(Entry {
                formula: concl,
                grade,
                origin,
            });
            if !queued[concl] {
                queued[concl] = true;
                queue.push_back(concl);
            }
        }
    }
    sat
}

fn theory_constants(theory: &Theory, extra: &[&Formula]) -> BTreeSet<TruthValue> {
    let mut consts = theory.constants();
    for f in extra {
        f.constants(&mut consts);
    }
    consts
}

#[derive(Debug, Clone)]
pub struct Provability {
    pub bound: TruthValue,
    /// Checks (against the same theory) to exactly `bound`.
    pub proof: Proof,
    pub fixpoint: bool,
    pub universe_size: usize,
}

/// Lower bound on the provability degree of `goal`, with a witness proof.
///
/// The universe is the subformula closure of the goal and the special
/// axioms, widened `depth` times by constant lifts and generalizations.
pub fn provability_lower_bound(theory: &Theory, goal: &Formula, depth: usize, budget: usize) -> Provability {
    let goal = goal.expand();
    let consts = theory_constants(theory, &[&goal]);
    let universe = subformula_universe(std::iter::once(&goal).chain(theory.support()), &consts, depth);
    let sat = saturate(theory, &universe, budget, Order::Fifo);
    let bound = sat.grade(&goal).expect("goal is in its own universe").clone();
    let proof = sat.proof_of(&goal).expect("goal is in its own universe");
    Provability {
        bound,
        proof,
        fixpoint: sat.is_fixpoint(),
        universe_size: sat.universe().len(),
    }
}

#[derive(Debug, Clone)]
pub struct Contradiction {
    pub formula: Formula,
    /// `bound(A) ⊗ bound(¬A)`
    pub degree: TruthValue,
    pub proof: Proof,
    pub refutation: Proof,
}

#[derive(Debug, Clone)]
pub struct ContradictionSearch {
    pub witness: Option<Contradiction>,
    pub fixpoint: bool,
}

/// Looks for `A` with `bound(A) ⊗ bound(¬A) > 0` in the universe of the
/// special axioms closed under one negation. Finding none certifies
/// consistency only relative to that universe. Candidates are scanned in
/// universe order, truth constants last.
pub fn detect_contradiction(theory: &Theory, depth: usize, budget: usize) -> ContradictionSearch {
    let consts = theory_constants(theory, &[]);
    let base = subformula_universe(theory.support(), &consts, depth);
    let negations: Vec<Formula> = base.iter().map(|a| Formula::neg_expanded(a.clone())).collect();
    let universe = subformula_universe(base.iter().chain(&negations), &BTreeSet::new(), 0);
    let sat = saturate(theory, &universe, budget, Order::Fifo);
    // Truth constants last: `#0` picks up a grade only from some other
    // contradictory pair, which is the more informative report.
    let (consts_first, rest): (Vec<&Formula>, Vec<&Formula>) =
        base.iter().partition(|a| matches!(a, Formula::Const(_)));
    let witness = rest.into_iter().chain(consts_first).find_map(|a| {
        let na = Formula::neg_expanded(a.clone());
        let degree = luk_and(sat.grade(a)?, sat.grade(&na)?);
        if degree.is_zero() {
            return None;
        }
        Some(Contradiction {
            formula: a.clone(),
            degree,
            proof: sat.proof_of(a)?,
            refutation: sat.proof_of(&na)?,
        })
    });
    ContradictionSearch {
        witness,
        fixpoint: sat.is_fixpoint(),
    }
}
