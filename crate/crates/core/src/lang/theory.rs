//! Fuzzy theories: a signature plus a finite fuzzy set of special axioms.
//!
//! Text format, one item per line, `%` starts a comment:
//!
//! ```text
//! mode dh
//! stressers very
//! depressers slightly
//! 4/5 : Young('tom)
//! 9/10 : forall x. (very Young(x) -> Young(x))
//! ```
//!
//! The optional header (`mode`, `stressers`, `depressers`) must precede the
//! graded lines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use super::{parse_formula_with, print_formula_with, Formula, HedgeMode, HedgeSignature, LangError, PrintOptions, SymbolTable};
use crate::mv::TruthValue;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    signature: HedgeSignature,
    special_axioms: BTreeMap<Formula, TruthValue>,
    symbols: SymbolTable,
}

impl Theory {
    pub fn new(signature: HedgeSignature) -> Self {
        Theory {
            signature,
            special_axioms: BTreeMap::new(),
            symbols: SymbolTable::new(),
        }
    }

    pub fn signature(&self) -> &HedgeSignature {
        &self.signature
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// Adds `grade/f`; the formula is stored expanded and duplicates keep the
    /// larger grade. Zero grades are the same as absence and are dropped.
    pub fn add_axiom(&mut self, f: &Formula, grade: TruthValue) {
        let mut syms = SymbolTable::new();
        f.symbols(&mut syms);
        // Arity clashes are caught by the parser; programmatic callers get
        // first-use-wins here.
        let _ = self.symbols.merge(&syms);
        if grade.is_zero() {
            return;
        }
        let e = f.expand();
        match self.special_axioms.get_mut(&e) {
            Some(g) if *g >= grade => {}
            Some(g) => *g = grade,
            None => {
                self.special_axioms.insert(e, grade);
            }
        }
    }

    pub fn with_axioms<'a>(
        signature: HedgeSignature,
        axioms: impl IntoIterator<Item = (&'a Formula, TruthValue)>,
    ) -> Self {
        let mut t = Theory::new(signature);
        for (f, g) in axioms {
            t.add_axiom(f, g);
        }
        t
    }

    /// `SAx(f)`, zero when absent.
    pub fn sax(&self, f: &Formula) -> TruthValue {
        let e;
        let key = if f.is_expanded() {
            f
        } else {
            e = f.expand();
            &e
        };
        self.special_axioms
            .get(key)
            .cloned()
            .unwrap_or_else(TruthValue::zero)
    }

    pub fn special_axioms(&self) -> &BTreeMap<Formula, TruthValue> {
        &self.special_axioms
    }

    pub fn support(&self) -> impl Iterator<Item = &Formula> {
        self.special_axioms.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.special_axioms.is_empty()
    }

    /// Truth constants occurring in the axioms, together with their grades.
    pub fn constants(&self) -> BTreeSet<TruthValue> {
        let mut out = BTreeSet::new();
        for (f, g) in &self.special_axioms {
            f.constants(&mut out);
            out.insert(g.clone());
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let sig = &self.signature;
        if !sig.is_empty() || sig.mode() == HedgeMode::DH {
            writeln!(s, "mode {}", sig.mode()).unwrap();
            if !sig.stressers().is_empty() {
                writeln!(s, "stressers {}", sig.stressers().join(" ")).unwrap();
            }
            if !sig.depressers().is_empty() {
                writeln!(s, "depressers {}", sig.depressers().join(" ")).unwrap();
            }
        }
        let opts = PrintOptions {
            recover_negation: true,
        };
        for (f, g) in &self.special_axioms {
            writeln!(s, "{g} : {}", print_formula_with(f, opts)).unwrap();
        }
        s
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('%').next().unwrap_or("").trim()
}

#[derive(Default)]
struct Header {
    mode: Option<HedgeMode>,
    stressers: Option<Vec<String>>,
    depressers: Option<Vec<String>>,
}

impl Header {
    fn is_set(&self) -> bool {
        self.mode.is_some() || self.stressers.is_some() || self.depressers.is_some()
    }

    /// Consumes a header line; `Ok(false)` when the line is not a header line.
    fn accept(&mut self, line: &str) -> Result<bool, LangError> {
        let mut words = line.split_whitespace();
        let key = words.next().unwrap_or("");
        let dup = |what: &str| LangError::Signature(format!("`{what}` declared twice"));
        match key {
            "mode" => {
                let m = match (words.next(), words.next()) {
                    (Some("h"), None) => HedgeMode::H,
                    (Some("dh"), None) => HedgeMode::DH,
                    _ => return Err(LangError::Signature("expected `mode h` or `mode dh`".into())),
                };
                if self.mode.replace(m).is_some() {
                    return Err(dup("mode"));
                }
            }
            "stressers" => {
                if self.stressers.replace(words.map(String::from).collect()).is_some() {
                    return Err(dup("stressers"));
                }
            }
            "depressers" => {
                if self.depressers.replace(words.map(String::from).collect()).is_some() {
                    return Err(dup("depressers"));
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(self) -> Result<HedgeSignature, LangError> {
        HedgeSignature::new(
            self.mode.unwrap_or(HedgeMode::H),
            self.stressers.unwrap_or_default(),
            self.depressers.unwrap_or_default(),
        )
    }
}

/// Parses a signature block: `mode h|dh`, `stressers ...`, `depressers ...`,
/// names listed from weakest to strongest.
pub fn parse_signature(text: &str) -> Result<HedgeSignature, LangError> {
    let mut header = Header::default();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        match header.accept(line) {
            Ok(true) => {}
            Ok(false) => {
                return Err(LangError::Line {
                    line: i + 1,
                    message: format!("not a signature line: `{line}`"),
                })
            }
            Err(e) => return Err(e.at_line(i + 1)),
        }
    }
    header.build()
}

/// Parses a theory. A header inside the text overrides `sig`.
pub fn parse_theory(text: &str, sig: &HedgeSignature) -> Result<Theory, LangError> {
    parse_theory_with(text, sig, &mut SymbolTable::new())
}

pub fn parse_theory_with(
    text: &str,
    sig: &HedgeSignature,
    syms: &mut SymbolTable,
) -> Result<Theory, LangError> {
    let mut header = Header::default();
    let mut graded: Vec<(usize, &str, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if graded.is_empty() && header.accept(line).map_err(|e| e.at_line(i + 1))? {
            continue;
        }
        let Some((grade, formula)) = line.split_once(':') else {
            return Err(LangError::Line {
                line: i + 1,
                message: "expected `grade : formula`".into(),
            });
        };
        graded.push((i + 1, grade.trim(), formula));
    }
    let signature = if header.is_set() { header.build()? } else { sig.clone() };
    let mut theory = Theory::new(signature);
    for (line, grade, formula) in graded {
        let grade: TruthValue = grade.parse().map_err(|e: crate::mv::ValueError| LangError::Line {
            line,
            message: format!("bad grade: {e}"),
        })?;
        let f = parse_formula_with(formula, &theory.signature, syms).map_err(|e| e.at_line(line))?;
        theory.add_axiom(&f, grade);
    }
    theory.symbols = syms.clone();
    Ok(theory)
}
