//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

mod gen;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fln::deduction::{check_proof, detect_contradiction, match_schema, provability_lower_bound, Schema};
use fln::hedge::{implication_axiom_violations, HedgeFunction, HedgeModel};
use fln::lang::{parse_formula, print_formula, Formula, HedgeKind, HedgeMode, HedgeSignature, Term, Theory};
use fln::mv::{biresiduum, chain_values, join, luk_and, luk_imp, luk_neg, meet, MvChain, TruthValue};
use fln::semantics::{eval_closed, is_model, sem_degree, tautology_degree, ModelCheck, SearchSpace, Structure};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use gen::Gen;

type Check = Result<String, String>;

fn v(n: i64, d: i64) -> TruthValue {
    TruthValue::frac(n, d)
}

fn chain(k: u32) -> MvChain {
    MvChain::new(k).unwrap()
}

fn plain() -> HedgeModel {
    HedgeModel::identity(&HedgeSignature::empty())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {:.2}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

/// Linear interpolation through sorted breakpoints, written against the raw
/// point list rather than `HedgeFunction::eval`.
fn lerp(points: &[(TruthValue, TruthValue)], x: &TruthValue) -> TruthValue {
    let x = x.as_ratio();
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        let (x0, y0, x1, y1) = (x0.as_ratio(), y0.as_ratio(), x1.as_ratio(), y1.as_ratio());
        if x0 <= x && x <= x1 {
            let y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            return TruthValue::new(y).unwrap();
        }
    }
    panic!("x outside breakpoints")
}

// Algebra

fn residuation() -> Check {
    let start = Instant::now();
    let vals = chain_values(20);
    let mut n = 0;
    for a in &vals {
        for b in &vals {
            let ab = luk_and(a, b);
            for c in &vals {
                let left = ab <= *c;
                let right = *a <= luk_imp(b, c);
                ensure(left == right, || format!("fails at ({a}, {b}, {c})"))?;
                n += 1;
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{n} triples"))
}

fn fitting_operations() -> Check {
    let start = Instant::now();
    let vals = chain_values(10);
    let ops: [(&str, fn(&TruthValue, &TruthValue) -> TruthValue); 4] =
        [("join", join), ("meet", meet), ("product", luk_and), ("implication", luk_imp)];
    let mut n = 0;
    for a in &vals {
        for a2 in &vals {
            let ea = biresiduum(a, a2);
            for b in &vals {
                for b2 in &vals {
                    let premise = luk_and(&ea, &biresiduum(b, b2));
                    for (name, op) in &ops {
                        let out = biresiduum(&op(a, b), &op(a2, b2));
                        ensure(premise <= out, || format!("{name} fails at ({a}, {a2}, {b}, {b2})"))?;
                    }
                    n += 1;
                }
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{n} quadruples x 4 operations"))
}

// Tautologies

fn schema_instances(g: &mut Gen) -> Vec<(Schema, Formula)> {
    let atoms = ["P", "Q", "R"];
    let mut out = Vec::new();
    for _ in 0..30 {
        let (a, b, c) = (g.prop(2, &atoms), g.prop(2, &atoms), g.prop(2, &atoms));
        out.push((Schema::R1, Formula::imp(a.clone(), Formula::imp(b.clone(), a.clone()))));
        out.push((
            Schema::R2,
            Formula::imp(
                Formula::imp(a.clone(), b.clone()),
                Formula::imp(Formula::imp(b.clone(), c.clone()), Formula::imp(a.clone(), c)),
            ),
        ));
        out.push((
            Schema::R3,
            Formula::imp(
                Formula::imp(Formula::not(b.clone()), Formula::not(a.clone())),
                Formula::imp(a.clone(), b.clone()),
            ),
        ));
        out.push((
            Schema::R4,
            Formula::imp(
                Formula::imp(Formula::imp(a.clone(), b.clone()), b.clone()),
                Formula::imp(Formula::imp(b, a.clone()), a),
            ),
        ));
        let (x, y) = (g.rational(), g.rational());
        out.push((
            Schema::B1,
            Formula::iff(
                Formula::imp(Formula::Const(x.clone()), Formula::Const(y.clone())),
                Formula::Const(luk_imp(&x, &y)),
            ),
        ));
    }
    for _ in 0..30 {
        let a = g.first_order(3, &["x"]);
        let t = if g.rng.gen_bool(0.5) {
            Term::constant("u")
        } else {
            Term::App("f".into(), vec![Term::constant("u")])
        };
        let inst = a.substitute("x", &t).expect("closed terms are substitutable");
        out.push((Schema::T1, Formula::imp(Formula::forall("x", a), inst)));

        let a = g.first_order(2, &[]);
        let b = g.first_order(2, &["x"]);
        out.push((
            Schema::T2,
            Formula::imp(
                Formula::forall("x", Formula::imp(a.clone(), b.clone())),
                Formula::imp(a, Formula::forall("x", b)),
            ),
        ));
    }
    out
}

fn tautologies() -> Check {
    let mut g = Gen::new(3);
    let sig = HedgeSignature::empty();
    let instances = schema_instances(&mut g);
    let mut per: BTreeMap<Schema, usize> = BTreeMap::new();
    for (schema, f) in &instances {
        ensure(match_schema(&f.expand(), *schema, &sig).is_some(), || {
            format!("generated {schema} instance not recognised: {}", print_formula(f))
        })?;
        let d = tautology_degree(f, &plain(), SearchSpace::new(chain(10), 2)).map_err(|e| e.to_string())?;
        ensure(d.degree.is_one(), || format!("{schema} instance has degree {}: {}", d.degree, print_formula(f)))?;
        *per.entry(*schema).or_default() += 1;
    }
    let counts: Vec<String> = per.iter().map(|(s, n)| format!("{s} {n}")).collect();
    Ok(format!("{} instances: {}", instances.len(), counts.join(", ")))
}

// Soundness and completeness

fn soundness() -> Check {
    let mut g = Gen::new(4);
    let atoms = ["P", "Q", "R"];
    let (mut runs, mut tight) = (0, 0);
    for _ in 0..120 {
        let theory = g.prop_theory(&atoms, 3);
        let goal = match theory.support().next() {
            Some(a) if g.rng.gen_bool(0.3) => a.clone(),
            _ => g.prop(2, &atoms),
        };
        let p = provability_lower_bound(&theory, &goal, 1, 100_000);
        ensure(p.fixpoint, || "saturation did not reach a fixpoint".into())?;
        let checked = check_proof(&p.proof, &theory).map_err(|e| format!("witness proof rejected: {e}"))?;
        ensure(checked == p.bound, || format!("proof value {checked} differs from bound {}", p.bound))?;
        let s = sem_degree(&theory, &goal, &plain(), SearchSpace::new(chain(10), 2)).map_err(|e| e.to_string())?;
        ensure(p.bound <= s.degree, || {
            format!(
                "bound {} above degree {} for {} from\n{}",
                p.bound,
                s.degree,
                print_formula(&goal),
                theory.to_text()
            )
        })?;
        runs += 1;
        if p.bound == s.degree {
            tight += 1;
        }
    }
    Ok(format!("{runs} theories, {tight} with equal degrees"))
}

fn both_degrees(theory: &Theory, goal: &Formula) -> Result<(TruthValue, TruthValue), String> {
    let p = provability_lower_bound(theory, goal, 1, 100_000);
    let s = sem_degree(theory, goal, &plain(), SearchSpace::new(chain(10), 2)).map_err(|e| e.to_string())?;
    Ok((p.bound, s.degree))
}

fn completeness_spot_checks() -> Check {
    let sig = HedgeSignature::empty();
    let p = parse_formula("P", &sig).unwrap();
    let q = parse_formula("Q", &sig).unwrap();
    let pq = parse_formula("P -> Q", &sig).unwrap();

    // bound: MP gives 4/5 ⊗ 9/10; degree: the least Q with 9/10 ≤ P ⇒ Q
    // over P ≥ 4/5 on the chain.
    let mut oracle = TruthValue::one();
    for a in chain_values(10).iter().filter(|a| **a >= v(4, 5)) {
        for b in chain_values(10) {
            if luk_imp(a, &b) >= v(9, 10) && b < oracle {
                oracle = b;
            }
        }
    }
    ensure(oracle == luk_and(&v(4, 5), &v(9, 10)), || "oracles disagree".into())?;
    let mut t = Theory::new(sig.clone());
    t.add_axiom(&p, v(4, 5));
    t.add_axiom(&pq, v(9, 10));
    let (b, s) = both_degrees(&t, &q)?;
    ensure(b == oracle && s == oracle, || format!("(a) bound {b}, degree {s}, expected {oracle}"))?;

    for a in chain_values(10) {
        let mut t = Theory::new(sig.clone());
        t.add_axiom(&p, a.clone());
        let (b, s) = both_degrees(&t, &p)?;
        ensure(b == a && s == a, || format!("(b) a = {a}: bound {b}, degree {s}"))?;

        let c = Formula::Const(a.clone());
        let (b, s) = both_degrees(&Theory::new(sig.clone()), &c)?;
        ensure(b == a && s == a, || format!("(c) a = {a}: bound {b}, degree {s}"))?;
    }
    Ok("(a) 7/10, (b) and (c) for all 11 grades".into())
}

// Hedges

fn shape_oracle(points: &[(TruthValue, TruthValue)], kind: HedgeKind) -> BTreeSet<String> {
    let grid: Vec<TruthValue> = chain_values(40);
    let ys: Vec<TruthValue> = grid.iter().map(|x| lerp(points, x)).collect();
    let mut props = BTreeSet::new();
    if ys.windows(2).any(|w| w[1] < w[0]) {
        props.insert("MONOTONE".to_string());
    }
    if !ys[0].is_zero() {
        props.insert("PRESERVES-0".to_string());
    }
    if !ys[ys.len() - 1].is_one() {
        props.insert("PRESERVES-1".to_string());
    }
    let above = grid.iter().zip(&ys).any(|(x, y)| y > x);
    let below = grid.iter().zip(&ys).any(|(x, y)| y < x);
    match kind {
        HedgeKind::Stresser if above => props.insert("SUBDIAGONAL".to_string()),
        HedgeKind::Depresser if below => props.insert("SUPERDIAGONAL".to_string()),
        _ => false,
    };
    props
}

fn reported(f: &HedgeFunction, kind: HedgeKind) -> BTreeSet<String> {
    f.validate_shape(kind).violations.into_iter().map(|v| v.property).collect()
}

fn pl(points: &[(i64, i64, i64)]) -> HedgeFunction {
    HedgeFunction::new(points.iter().map(|&(x, y, d)| (v(x, d), v(y, d))).collect()).unwrap()
}

fn dual_model(s: HedgeFunction, d: HedgeFunction) -> HedgeModel {
    let sig = HedgeSignature::canonical(HedgeMode::DH, 1, 1).unwrap();
    HedgeModel::new(sig, BTreeMap::from([("s1".to_string(), s), ("d1".to_string(), d)])).unwrap()
}

fn passes_dh(m: &HedgeModel, c: MvChain) -> bool {
    let mut r = m.validate_shapes();
    r.extend(m.validate_axioms(c));
    r.extend(m.boundaries(c).unwrap().report);
    r.passed()
}

fn hedge_shapes() -> Check {
    use HedgeKind::*;
    let set = |names: &[&str]| names.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    let violators = [
        (pl(&[(0, 0, 5), (1, 2, 2), (1, 1, 1)]), set(&["SUBDIAGONAL"]), set(&[])),
        (pl(&[(0, 1, 10), (1, 1, 1)]), set(&["PRESERVES-0", "SUBDIAGONAL"]), set(&["PRESERVES-0"])),
        (
            pl(&[(0, 0, 20), (10, 5, 20), (15, 4, 20), (20, 20, 20)]),
            set(&["MONOTONE"]),
            set(&["MONOTONE", "SUPERDIAGONAL"]),
        ),
        (pl(&[(0, 0, 10), (10, 9, 10)]), set(&["PRESERVES-1"]), set(&["PRESERVES-1", "SUPERDIAGONAL"])),
        (HedgeFunction::identity(), set(&[]), set(&[])),
    ];
    for (f, as_s, as_d) in &violators {
        ensure(reported(f, Stresser) == *as_s, || format!("stresser {f}: {:?}", reported(f, Stresser)))?;
        ensure(reported(f, Depresser) == *as_d, || format!("depresser {f}: {:?}", reported(f, Depresser)))?;
    }

    let mut g = Gen::new(6);
    for i in 0..200 {
        let f = g.pl_function(i % 3 == 0, i % 2 == 0);
        for kind in [Stresser, Depresser] {
            let expected = shape_oracle(f.breakpoints(), kind);
            ensure(reported(&f, kind) == expected, || {
                format!("{f} as {kind:?}: reported {:?}, oracle {:?}", reported(&f, kind), expected)
            })?;
        }
    }

    // Steepest chord between breakpoints, rounded up.
    let fitting = |f: &HedgeFunction| {
        let pts = f.breakpoints();
        let mut best = BigRational::zero();
        for (i, (x0, y0)) in pts.iter().enumerate() {
            for (x1, y1) in &pts[i + 1..] {
                let slope = ((y1.as_ratio() - y0.as_ratio()) / (x1.as_ratio() - x0.as_ratio())).abs();
                best = best.max(slope);
            }
        }
        best.ceil().to_integer().try_into().unwrap_or(u64::MAX).max(1)
    };
    let (id, sq) = (HedgeFunction::identity(), HedgeFunction::pl_square());
    ensure(id.fitting_constant() == 1 && fitting(&id) == 1, || "identity fitting constant".into())?;
    ensure(sq.fitting_constant() == 2 && fitting(&sq) == 2, || format!("pl-square fitting constant {}", sq.fitting_constant()))?;
    for _ in 0..100 {
        let f = g.pl_function(false, false);
        ensure(f.fitting_constant() == fitting(&f), || format!("fitting constant of {f}"))?;
    }

    let c50 = chain(50);
    let sig = HedgeSignature::canonical(HedgeMode::DH, 1, 1).unwrap();
    let dual = parse_formula("s1 P -> ~d1 ~P", &sig).unwrap();
    let mut candidates = vec![dual_model(HedgeFunction::identity(), HedgeFunction::identity())];
    for _ in 0..60 {
        candidates.push(dual_model(g.chain_identity(50), g.chain_identity(50)));
        candidates.push(dual_model(g.pl_function(true, true), g.pl_function(true, true)));
    }
    candidates.push(dual_model(HedgeFunction::pl_square(), HedgeFunction::pl_sqrt()));
    let mut passing = 0;
    for m in candidates.iter().filter(|m| passes_dh(m, c50)) {
        let d = tautology_degree(&dual, m, SearchSpace::new(c50, 1)).map_err(|e| e.to_string())?;
        ensure(d.degree.is_one(), || format!("dual tautology has degree {} under\n{}", d.degree, m.to_text()))?;
        passing += 1;
    }
    ensure(passing >= 10, || format!("only {passing} generated models pass validation"))?;
    Ok(format!(
        "{} constructed violators, 400 oracle comparisons, dual tautology on {passing} of {} models",
        violators.len(),
        candidates.len()
    ))
}

fn axiom_collapse() -> Check {
    let mut g = Gen::new(7);
    let mut summary = Vec::new();
    for k in [10u32, 50] {
        let c = chain(k);
        let mut family = vec![HedgeFunction::identity(), HedgeFunction::pl_square(), HedgeFunction::pl_sqrt()];
        while family.len() < 100 {
            let f = if family.len() % 3 == 0 { g.chain_identity(k as i64) } else { g.pl_function(true, family.len() % 2 == 0) };
            family.push(f);
        }
        let mut passed = 0;
        for f in &family {
            let ok = implication_axiom_violations("H6", f, c).is_empty();
            let identity_on_chain = chain_values(k).iter().all(|x| lerp(f.breakpoints(), x) == *x);
            ensure(ok == identity_on_chain, || format!("k = {k}: {f} passes H6 = {ok}, identity on chain = {identity_on_chain}"))?;
            passed += ok as usize;
        }
        ensure(passed > 1 && passed < family.len(), || format!("k = {k}: degenerate family ({passed} pass)"))?;
        summary.push(format!("k={k}: {passed}/100 pass"));
    }

    // (a⇒b) ⇒ (f(a)⇒f(b)) at (1, 9/10) with f(9/10) from the breakpoints.
    let sq = HedgeFunction::pl_square();
    let expected = luk_imp(&luk_imp(&v(1, 1), &v(9, 10)), &luk_imp(&v(1, 1), &lerp(sq.breakpoints(), &v(9, 10))));
    ensure(expected == v(37, 40), || format!("oracle gives {expected}"))?;
    let hit = implication_axiom_violations("H6", &sq, chain(10))
        .into_iter()
        .any(|w| w.inputs == [v(1, 1), v(9, 10)] && w.value == expected);
    ensure(hit, || "pl-square witness (1, 9/10) missing".into())?;
    summary.push("pl-square witness (1, 9/10) -> 37/40".into());
    Ok(summary.join(", "))
}

fn boundaries() -> Check {
    let c = chain(10);
    let mut g = Gen::new(8);
    let sig = HedgeSignature::canonical(HedgeMode::DH, 2, 2).unwrap();
    let mut breaches = 0;
    for round in 0..50 {
        let d1 = if round == 0 { HedgeFunction::identity() } else { g.pl_function(true, true) };
        let d2 = g.pl_function(true, true);
        let fs = BTreeMap::from([
            ("s1".to_string(), HedgeFunction::identity()),
            ("s2".to_string(), HedgeFunction::identity()),
            ("d1".to_string(), d1.clone()),
            ("d2".to_string(), d2.clone()),
        ]);
        let m = HedgeModel::new(sig.clone(), fs).unwrap();
        let b = m.boundaries(c).unwrap();
        for env in b.envelopes.iter().filter(|e| e.hedge.starts_with('d')) {
            for (x, lo, hi, _) in &env.rows {
                ensure(hi == x, || format!("{} upper bound at {x} is {hi}", env.hedge))?;
                if env.hedge == "d1" {
                    ensure(lo == x, || format!("d1 lower bound at {x} is {lo}"))?;
                }
            }
        }
        // Every reported breach re-checks against interpolated bounds.
        for w in &b.report.violations {
            let h = w.hedge.as_deref().unwrap();
            let f = m.function(h).unwrap();
            let x = &w.inputs[0];
            ensure(lerp(f.breakpoints(), x) == w.value, || format!("{h} witness value at {x}"))?;
            let (lo, hi) = match h {
                "d1" => (x.clone(), x.clone()),
                "d2" => (lerp(d1.breakpoints(), x), x.clone()),
                _ => (TruthValue::zero(), x.clone()),
            };
            let breach = match w.property.as_str() {
                "ENVELOPE-LOWER" => w.value < lo,
                "ENVELOPE-UPPER" => w.value > hi,
                _ => false,
            };
            ensure(breach, || format!("{} for {h} at {x} is not a breach", w.property))?;
            breaches += 1;
        }
        // Only the identity fits the collapsed d1 envelope.
        let d1_flagged = b.report.violations.iter().any(|w| w.hedge.as_deref() == Some("d1"));
        ensure(d1_flagged != d1.is_identity(), || format!("d1 = {d1} flagged = {d1_flagged}"))?;
    }

    let sq = HedgeFunction::pl_square();
    let m = dual_model(sq.clone(), HedgeFunction::identity());
    let b = m.boundaries(c).unwrap();
    let oracle = luk_neg(&lerp(sq.breakpoints(), &luk_neg(&v(2, 5))));
    ensure(oracle == v(5, 8), || format!("interpolation gives {oracle}"))?;
    let row = b.envelopes.iter().find(|e| e.hedge == "d1").unwrap().rows.iter().find(|r| r.0 == v(2, 5)).unwrap();
    ensure(row.2 == oracle, || format!("d1 upper bound at 2/5 is {}", row.2))?;

    let breach = dual_model(sq, pl(&[(0, 0, 10), (4, 7, 10), (10, 1, 10)]));
    let report = breach.boundaries(c).unwrap().report;
    let hit = report
        .violations
        .iter()
        .any(|w| w.property == "ENVELOPE-UPPER" && w.inputs == [v(2, 5)] && w.value == v(7, 10));
    ensure(hit, || "breach at 2/5 not flagged".into())?;
    Ok(format!("50 models, {breaches} breach witnesses re-checked, d1 upper bound 5/8 at 2/5"))
}

// Contradictions

fn contradictions() -> Check {
    let sig = HedgeSignature::empty();
    let p = parse_formula("P", &sig).unwrap();
    let np = parse_formula("~P", &sig).unwrap();
    let theory = |a: TruthValue| {
        let mut t = Theory::new(sig.clone());
        t.add_axiom(&p, a.clone());
        t.add_axiom(&np, a);
        t
    };
    let r = detect_contradiction(&theory(v(4, 5)), 1, 100_000);
    let w = r.witness.ok_or("4/5 theory reported consistent")?;
    ensure(w.degree == v(3, 5), || format!("degree {}", w.degree))?;
    let r = detect_contradiction(&theory(v(1, 2)), 1, 100_000);
    ensure(r.witness.is_none() && r.fixpoint, || "1/2 theory reported contradictory".into())?;

    let mut g = Gen::new(9);
    let atoms = ["P", "Q", "R"];
    for i in 0..120 {
        let mut s = Structure::new(vec!["e1".into()]);
        for a in atoms {
            s.set_pred(a, 0, vec![g.chain_value(10)]);
        }
        s.set_hedges(plain());
        let mut t = Theory::new(sig.clone());
        for _ in 0..g.rng.gen_range(1..=4) {
            let f = g.prop(2, &atoms);
            let top = eval_closed(&s, &f).map_err(|e| e.to_string())?;
            let grade = loop {
                let c = g.chain_value(10);
                if c <= top {
                    break c;
                }
            };
            t.add_axiom(&f, grade);
        }
        ensure(matches!(is_model(&s, &t, chain(10)), Ok(ModelCheck::Model)), || "constructed structure is not a model".into())?;
        let r = detect_contradiction(&t, 1, 100_000);
        if let Some(c) = r.witness {
            return Err(format!(
                "theory {i} with a model reported contradictory at {} deg {}\n{}",
                print_formula(&c.formula),
                c.degree,
                t.to_text()
            ));
        }
    }
    Ok("3/5 witness, 1/2 consistent, 120 theories with models never contradictory".into())
}

// Syntax

fn round_trip() -> Check {
    let mut g = Gen::new(10);
    let sigs = [
        HedgeSignature::canonical(HedgeMode::H, 2, 1).unwrap(),
        HedgeSignature::new(
            HedgeMode::DH,
            vec!["very".into(), "extremely".into()],
            vec!["slightly".into(), "more".into()],
        )
        .unwrap(),
        HedgeSignature::empty(),
    ];
    let mut n = 0;
    for i in 0..600 {
        let sig = &sigs[i % sigs.len()];
        let f = g.ast(5, sig, &[]);
        let text = print_formula(&f);
        let back = parse_formula(&text, sig).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == f, || format!("round trip changed {text} into {}", print_formula(&back)))?;
        ensure(print_formula(&back) == text, || format!("printing is not stable for {text}"))?;
        n += 1;
    }
    Ok(format!("{n} ASTs over 3 signatures"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("residuation on L20^3", residuation),
        ("fitting of join, meet, product, implication on L10^4", fitting_operations),
        ("schema tautologies", tautologies),
        ("soundness against semantic degree", soundness),
        ("completeness spot checks", completeness_spot_checks),
        ("hedge shapes, fitting constants, dual tautology", hedge_shapes),
        ("axiom collapse", axiom_collapse),
        ("envelope boundaries", boundaries),
        ("contradiction detection", contradictions),
        ("parser round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
