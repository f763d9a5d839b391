//! Reading and resolving input files.
//!
//! The signature comes from the theory header if it has one, else from
//! `--sig`, else from the hedge-model file, else it is empty.

use std::fs;
use std::path::Path;

use fln::hedge::{parse_hedge_model, HedgeModel};
use fln::lang::{parse_formula_with, parse_signature, parse_theory_with, Formula, HedgeSignature, SymbolTable, Theory};
use fln::semantics::{parse_structure, Structure};

use crate::{Failure, Opts};

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn hedge_model(path: &Path) -> Result<HedgeModel, Failure> {
    parse_hedge_model(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub struct Inputs {
    pub signature: HedgeSignature,
    pub theory: Theory,
    pub hedges: Option<HedgeModel>,
    pub symbols: SymbolTable,
}

impl Inputs {
    pub fn load(opts: &Opts) -> Result<Self, Failure> {
        let hedges = opts.hedges.as_deref().map(hedge_model).transpose()?;
        let base = match &opts.sig {
            Some(p) => parse_signature(&read(p)?).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
            None => hedges.as_ref().map(|m| m.signature().clone()).unwrap_or_else(HedgeSignature::empty),
        };
        let mut symbols = SymbolTable::new();
        let theory = match &opts.theory {
            Some(p) => parse_theory_with(&read(p)?, &base, &mut symbols)
                .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
            None => Theory::new(base),
        };
        Ok(Inputs {
            signature: theory.signature().clone(),
            theory,
            hedges,
            symbols,
        })
    }

    pub fn parse(&mut self, text: &str) -> Result<Formula, Failure> {
        parse_formula_with(text, &self.signature, &mut self.symbols).map_err(|e| Failure::input(format!("{e}\n  {text}")))
    }

    pub fn goal(&mut self, opts: &Opts) -> Result<Formula, Failure> {
        let text = opts.goal.as_deref().ok_or_else(|| Failure::input("missing --goal"))?;
        self.parse(text)
    }

    /// Hedge interpretation for semantic commands: the configured model,
    /// which must cover the signature, or identities.
    pub fn hedge_model(&self) -> Result<HedgeModel, Failure> {
        match &self.hedges {
            Some(m) if m.signature() == &self.signature => Ok(m.clone()),
            Some(m) if self.signature.is_empty() && !m.signature().is_empty() => Ok(m.clone()),
            Some(_) => Err(Failure::input("hedge-model signature differs from the theory signature")),
            None => Ok(HedgeModel::identity(&self.signature)),
        }
    }

    /// Loads `--structure`, attaching its `hedges` file (relative to the
    /// structure file), else `--hedges`, else identity hedges.
    pub fn structure(&self, opts: &Opts) -> Result<Structure, Failure> {
        let path = opts.structure.as_deref().ok_or_else(|| Failure::input("missing --structure"))?;
        let parsed = parse_structure(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let mut s = parsed.structure;
        let model = match parsed.hedges {
            Some(rel) => hedge_model(&path.parent().unwrap_or(Path::new(".")).join(rel))?,
            None => self.hedge_model()?,
        };
        s.set_hedges(model);
        Ok(s)
    }
}
