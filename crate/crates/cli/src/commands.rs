use std::fmt::Write;

use fln::deduction::{check_proof, detect_contradiction, parse_proof, provability_lower_bound, Proof};
use fln::hedge::{HedgeError, HedgeModel, ValidationReport};
use fln::lang::{print_formula, print_formula_with, Formula, PrintOptions};
use fln::mv::{MvChain, TruthValue};
use fln::semantics::{eval_closed, sem_degree, tautology_degree, SearchSpace, SemDegree, SemanticsError};

use crate::inputs::{self, Inputs};
use crate::{Cli, Command, Failure, Format, Opts};

pub fn run(cli: &Cli, out: &mut String) -> Result<u8, Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Parse { formula } => parse(opts, formula.as_deref(), out),
        Command::Prove => prove(opts, out),
        Command::CheckProof { proof } => check(opts, proof, out),
        Command::Eval => eval(opts, out),
        Command::SemDegree => degree(opts, true, out),
        Command::Tautology => degree(opts, false, out),
        Command::ValidateHedges => validate(opts, out),
        Command::Consistency => consistency(opts, out),
        Command::Boundaries => boundaries(opts, out),
    }
}

fn show(f: &Formula, opts: &Opts) -> String {
    if opts.no_sugar {
        print_formula(&f.expand())
    } else {
        print_formula_with(
            f,
            PrintOptions {
                recover_negation: true,
            },
        )
    }
}

fn chain(opts: &Opts) -> MvChain {
    MvChain::new(opts.chain).expect("clap enforces k >= 1")
}

fn space(opts: &Opts) -> SearchSpace {
    SearchSpace::new(chain(opts), opts.max_domain as usize)
}

fn semantic_failure(e: SemanticsError) -> Failure {
    match e {
        SemanticsError::SpaceGuard { .. } => Failure {
            code: 4,
            message: e.to_string(),
        },
        _ => Failure::input(e.to_string()),
    }
}

fn proof_listing(p: &Proof, opts: &Opts) -> String {
    if !opts.no_sugar {
        return p.to_text();
    }
    let mut s = String::new();
    for (i, step) in p.steps().iter().enumerate() {
        writeln!(
            s,
            "{}. {} / {} ; {}",
            i + 1,
            step.conclusion.grade,
            print_formula(&step.conclusion.formula),
            step.justification
        )
        .unwrap();
    }
    s
}

fn parse(opts: &Opts, formula: Option<&str>, out: &mut String) -> Result<u8, Failure> {
    let mut inputs = Inputs::load(opts)?;
    let text = formula
        .or(opts.goal.as_deref())
        .ok_or_else(|| Failure::input("no formula given"))?;
    let f = inputs.parse(text)?;
    match opts.format {
        Format::Human => writeln!(out, "{}", show(&f, opts)),
        Format::Tsv => writeln!(out, "formula\t{}", show(&f, opts)),
    }
    .unwrap();
    Ok(0)
}

fn prove(opts: &Opts, out: &mut String) -> Result<u8, Failure> {
    let mut inputs = Inputs::load(opts)?;
    let goal = inputs.goal(opts)?;
    if !goal.is_closed() {
        return Err(Failure::input("goal must be closed"));
    }
    let r = provability_lower_bound(&inputs.theory, &goal, opts.depth, opts.budget as usize);
    let fixpoint = if r.fixpoint { "yes" } else { "no" };
    match opts.format {
        Format::Human => {
            writeln!(out, "BOUND {}", r.bound).unwrap();
            writeln!(out, "FIXPOINT {fixpoint}").unwrap();
            out.push_str(&proof_listing(&r.proof, opts));
        }
        Format::Tsv => writeln!(out, "bound\t{}\t{}\t{fixpoint}", show(&goal, opts), r.bound).unwrap(),
    }
    if !r.fixpoint && r.bound.is_zero() {
        return Err(Failure {
            code: 3,
            message: "budget exhausted before any derivation of the goal".into(),
        });
    }
    Ok(0)
}

fn check(opts: &Opts, path: &std::path::Path, out: &mut String) -> Result<u8, Failure> {
    let inputs = Inputs::load(opts)?;
    let proof = parse_proof(&inputs::read(path)?, &inputs.signature)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    match check_proof(&proof, &inputs.theory) {
        Ok(v) => {
            match opts.format {
                Format::Human => writeln!(out, "VAL {v}"),
                Format::Tsv => writeln!(out, "val\t{v}"),
            }
            .unwrap();
            Ok(0)
        }
        Err(e) => {
            match opts.format {
                Format::Human => writeln!(out, "INVALID step {}: {}", e.step, e.kind),
                Format::Tsv => writeln!(out, "invalid\t{}\t{}", e.step, e.kind),
            }
            .unwrap();
            Ok(1)
        }
    }
}

fn write_degree(opts: &Opts, v: &TruthValue, out: &mut String) {
    match opts.format {
        Format::Human => writeln!(out, "DEGREE {v}"),
        Format::Tsv => writeln!(out, "degree\t{v}"),
    }
    .unwrap();
}

fn eval(opts: &Opts, out: &mut String) -> Result<u8, Failure> {
    let mut inputs = Inputs::load(opts)?;
    let goal = inputs.goal(opts)?;
    let s = inputs.structure(opts)?;
    let v = eval_closed(&s, &goal).map_err(semantic_failure)?;
    write_degree(opts, &v, out);
    Ok(0)
}

fn degree(opts: &Opts, with_theory: bool, out: &mut String) -> Result<u8, Failure> {
    let mut inputs = Inputs::load(opts)?;
    let goal = inputs.goal(opts)?;
    let hedges = inputs.hedge_model()?;
    let r: SemDegree = if with_theory {
        sem_degree(&inputs.theory, &goal, &hedges, space(opts))
    } else {
        tautology_degree(&goal, &hedges, space(opts))
    }
    .map_err(semantic_failure)?;
    write_degree(opts, &r.degree, out);
    if with_theory && opts.format == Format::Human {
        writeln!(out, "MODELS {} of {} structures", r.models, r.structures).unwrap();
        match &r.witness {
            Some(w) => {
                out.push_str("WITNESS\n");
                out.push_str(&w.to_text());
            }
            None => out.push_str("NO MODELS\n"),
        }
    }
    Ok(0)
}

fn model(opts: &Opts) -> Result<HedgeModel, Failure> {
    let path = opts.hedges.as_deref().ok_or_else(|| Failure::input("missing --hedges"))?;
    inputs::hedge_model(path)
}

fn write_report(opts: &Opts, report: &ValidationReport, out: &mut String) {
    for v in &report.violations {
        match opts.format {
            Format::Human => {
                writeln!(out, "{}", v.machine_line()).unwrap();
                writeln!(out, "  {v}").unwrap();
            }
            Format::Tsv => {
                let inputs: Vec<String> = v.inputs.iter().map(ToString::to_string).collect();
                writeln!(
                    out,
                    "violation\t{}\t{}\t{}\t{}",
                    v.property,
                    v.hedge.as_deref().unwrap_or("-"),
                    inputs.join(","),
                    v.value
                )
                .unwrap();
            }
        }
    }
}

fn validate(opts: &Opts, out: &mut String) -> Result<u8, Failure> {
    let m = model(opts)?;
    let chain = chain(opts);
    let mut report = m.validate_shapes();
    report.extend(m.validate_axioms(chain));
    match m.boundaries(chain) {
        Ok(b) => report.extend(b.report),
        Err(HedgeError::NotDual) => {}
        Err(e) => return Err(Failure::input(e.to_string())),
    }
    if opts.format == Format::Human {
        for (name, f) in m.functions() {
            writeln!(out, "HEDGE {name} = {f}").unwrap();
            writeln!(out, "  fitting constant {}", f.fitting_constant()).unwrap();
        }
    }
    write_report(opts, &report, out);
    let n = report.violations.len();
    match (opts.format, n) {
        (Format::Human, 0) => writeln!(out, "PASS"),
        (Format::Human, _) => writeln!(out, "FAIL {n} violation(s)"),
        (Format::Tsv, 0) => writeln!(out, "pass"),
        (Format::Tsv, _) => Ok(()),
    }
    .unwrap();
    Ok(if n == 0 { 0 } else { 1 })
}

fn consistency(opts: &Opts, out: &mut String) -> Result<u8, Failure> {
    let inputs = Inputs::load(opts)?;
    let r = detect_contradiction(&inputs.theory, opts.depth, opts.budget as usize);
    match (&r.witness, opts.format) {
        (Some(c), Format::Human) => {
            writeln!(out, "CONTRADICTORY {} deg {}", show(&c.formula, opts), c.degree).unwrap();
            out.push_str("PROOF\n");
            out.push_str(&proof_listing(&c.proof, opts));
            out.push_str("REFUTATION\n");
            out.push_str(&proof_listing(&c.refutation, opts));
        }
        (Some(c), Format::Tsv) => {
            writeln!(out, "contradictory\t{}\t{}", show(&c.formula, opts), c.degree).unwrap();
        }
        (None, Format::Human) => {
            writeln!(out, "CONSISTENT (universe-relative)").unwrap();
            if !r.fixpoint {
                writeln!(out, "FIXPOINT no").unwrap();
            }
        }
        (None, Format::Tsv) => {
            let fixpoint = if r.fixpoint { "yes" } else { "no" };
            writeln!(out, "consistent\t{fixpoint}").unwrap();
        }
    }
    if r.witness.is_some() {
        Ok(1)
    } else if !r.fixpoint {
        Err(Failure {
            code: 3,
            message: "budget exhausted; consistency not certified".into(),
        })
    } else {
        Ok(0)
    }
}

fn boundaries(opts: &Opts, out: &mut String) -> Result<u8, Failure> {
    let m = model(opts)?;
    let b = m.boundaries(chain(opts)).map_err(|e| Failure::input(e.to_string()))?;
    for env in &b.envelopes {
        if opts.format == Format::Human {
            writeln!(out, "ENVELOPE {}", env.hedge).unwrap();
            writeln!(out, "  x\tlower\tupper\tvalue").unwrap();
        }
        for (x, lo, hi, v) in &env.rows {
            match opts.format {
                Format::Human => writeln!(out, "  {x}\t{lo}\t{hi}\t{v}"),
                Format::Tsv => writeln!(out, "envelope\t{}\t{x}\t{lo}\t{hi}\t{v}", env.hedge),
            }
            .unwrap();
        }
    }
    write_report(opts, &b.report, out);
    Ok(if b.report.passed() { 0 } else { 1 })
}
