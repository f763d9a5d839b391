//! Seeded generators for formulas, theories and hedge functions.

use fln::hedge::HedgeFunction;
use fln::lang::{Formula, HedgeSignature, Term, Theory};
use fln::mv::TruthValue;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub struct Gen {
    pub rng: StdRng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: StdRng::seed_from_u64(seed),
        }
    }

    pub fn chain_value(&mut self, k: i64) -> TruthValue {
        TruthValue::frac(self.rng.gen_range(0..=k), k)
    }

    /// Any rational in `[0,1]` with denominator at most 12.
    pub fn rational(&mut self) -> TruthValue {
        let d = self.rng.gen_range(1..=12);
        TruthValue::frac(self.rng.gen_range(0..=d), d)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }

    /// Propositional formula over the given atoms with sugar and constants
    /// from Ł_10.
    pub fn prop(&mut self, depth: u32, atoms: &[&str]) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.15) {
                Formula::Const(self.chain_value(10))
            } else {
                Formula::atom(self.pick(atoms))
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..7) {
            0 | 1 => Formula::imp(self.prop(d, atoms), self.prop(d, atoms)),
            2 => Formula::not(self.prop(d, atoms)),
            3 => Formula::luk_and(self.prop(d, atoms), self.prop(d, atoms)),
            4 => Formula::luk_or(self.prop(d, atoms), self.prop(d, atoms)),
            5 => Formula::min(self.prop(d, atoms), self.prop(d, atoms)),
            _ => Formula::max(self.prop(d, atoms), self.prop(d, atoms)),
        }
    }

    /// Formula over `P/1` and `Q/0` whose free variables lie in `free`.
    pub fn first_order(&mut self, depth: u32, free: &[&str]) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.25) {
            let mut terms: Vec<Term> = free.iter().map(|x| Term::var(x)).collect();
            terms.push(Term::constant("u"));
            return match self.rng.gen_range(0..3) {
                0 => Formula::atom("Q"),
                _ => Formula::pred("P", vec![self.pick(&terms).clone()]),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..5) {
            0 | 1 => Formula::imp(self.first_order(d, free), self.first_order(d, free)),
            2 => Formula::not(self.first_order(d, free)),
            3 => {
                let x = *self.pick(&["x", "y"]);
                let mut inner: Vec<&str> = free.to_vec();
                if !inner.contains(&x) {
                    inner.push(x);
                }
                Formula::forall(x, self.first_order(d, &inner))
            }
            _ => Formula::luk_and(self.first_order(d, free), self.first_order(d, free)),
        }
    }

    pub fn prop_theory(&mut self, atoms: &[&str], max_axioms: usize) -> Theory {
        let mut t = Theory::new(HedgeSignature::empty());
        for _ in 0..self.rng.gen_range(1..=max_axioms) {
            let f = self.prop(2, atoms);
            let g = self.chain_value(10);
            t.add_axiom(&f, g);
        }
        t
    }

    /// Random piecewise-linear function on breakpoints drawn from `Ł_20`.
    /// `pinned` fixes `f(0) = 0`, `f(1) = 1`; `monotone` sorts the values.
    pub fn pl_function(&mut self, pinned: bool, monotone: bool) -> HedgeFunction {
        let mut xs: Vec<i64> = (1..20).filter(|_| self.rng.gen_bool(0.2)).collect();
        xs.insert(0, 0);
        xs.push(20);
        let mut ys: Vec<i64> = xs.iter().map(|_| self.rng.gen_range(0..=20)).collect();
        if monotone {
            ys.sort_unstable();
        }
        if pinned {
            ys[0] = 0;
            let last = ys.len() - 1;
            ys[last] = 20;
        }
        let points = xs
            .into_iter()
            .zip(ys)
            .map(|(x, y)| (TruthValue::frac(x, 20), TruthValue::frac(y, 20)))
            .collect();
        HedgeFunction::new(points).expect("valid breakpoints")
    }

    /// Identity on `Ł_k`, with a dip or bump strictly between two adjacent
    /// chain points.
    pub fn chain_identity(&mut self, k: i64) -> HedgeFunction {
        let i = self.rng.gen_range(0..k);
        let mid = TruthValue::frac(2 * i + 1, 2 * k);
        let y = TruthValue::frac(4 * i + 2 + self.rng.gen_range(-1..=1), 4 * k);
        let mut points = vec![(TruthValue::zero(), TruthValue::zero())];
        if i > 0 {
            points.push((TruthValue::frac(i, k), TruthValue::frac(i, k)));
        }
        points.push((mid, y));
        if i + 1 < k {
            points.push((TruthValue::frac(i + 1, k), TruthValue::frac(i + 1, k)));
        }
        points.push((TruthValue::one(), TruthValue::one()));
        HedgeFunction::new(points).expect("valid breakpoints")
    }

    /// A random AST over a fixed vocabulary, touching every constructor.
    pub fn ast(&mut self, depth: u32, sig: &HedgeSignature, bound: &[String]) -> Formula {
        let hedges: Vec<String> = sig.hedge_names().map(String::from).collect();
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.ast_atom(bound);
        }
        let d = depth - 1;
        let sub = |g: &mut Gen| g.ast(d, sig, bound);
        match self.rng.gen_range(0..14) {
            0 => Formula::imp(sub(self), sub(self)),
            1 => Formula::iff(sub(self), sub(self)),
            2 => Formula::luk_and(sub(self), sub(self)),
            3 => Formula::luk_or(sub(self), sub(self)),
            4 => Formula::min(sub(self), sub(self)),
            5 => Formula::max(sub(self), sub(self)),
            6 => Formula::not(sub(self)),
            7 => {
                let n = self.rng.gen_range(1..=4);
                Formula::power(sub(self), n)
            }
            8 => {
                let n = self.rng.gen_range(1..=4);
                Formula::multiple(sub(self), n)
            }
            9 | 10 if !hedges.is_empty() => {
                let h = self.pick(&hedges).clone();
                Formula::hedge(&h, sub(self))
            }
            11 | 9 | 10 => {
                let x = self.pick(&["x", "y", "z", "w1"]).to_string();
                let mut inner = bound.to_vec();
                inner.push(x.clone());
                Formula::forall(&x, self.ast(d, sig, &inner))
            }
            _ => {
                let x = self.pick(&["x", "y", "z", "w1"]).to_string();
                let mut inner = bound.to_vec();
                inner.push(x.clone());
                Formula::exists(&x, self.ast(d, sig, &inner))
            }
        }
    }

    fn term(&mut self, depth: u32, bound: &[String]) -> Term {
        let roll = self.rng.gen_range(0..5);
        if depth > 0 && roll == 0 {
            return Term::App("f".into(), vec![self.term(depth - 1, bound)]);
        }
        if depth > 0 && roll == 1 {
            return Term::App("g".into(), vec![self.term(depth - 1, bound), self.term(depth - 1, bound)]);
        }
        if !bound.is_empty() && self.rng.gen_bool(0.6) {
            return Term::var(self.pick(bound));
        }
        match self.rng.gen_range(0..3) {
            0 => Term::constant("a"),
            1 => Term::constant("b1"),
            _ => Term::var("w2"),
        }
    }

    fn ast_atom(&mut self, bound: &[String]) -> Formula {
        match self.rng.gen_range(0..5) {
            0 => Formula::Const(self.rational()),
            1 => Formula::atom("P"),
            2 => Formula::pred("Q", vec![self.term(2, bound)]),
            _ => Formula::pred("R", vec![self.term(1, bound), self.term(1, bound)]),
        }
    }
}
