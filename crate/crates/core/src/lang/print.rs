use std::fmt::{self, Write};

use super::{Formula, Term};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PrintOptions {
    /// Print `A -> #0` as `~A`.
    pub recover_negation: bool,
}

pub fn print_formula(f: &Formula) -> String {
    print_formula_with(f, PrintOptions::default())
}

pub fn print_formula_with(f: &Formula, opts: PrintOptions) -> String {
    let mut out = String::new();
    Printer { opts, out: &mut out }.formula(f, 0).expect("writing to a String");
    out
}

pub(crate) fn term_to_string(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t).expect("writing to a String");
    s
}

fn write_term(out: &mut impl Write, t: &Term) -> fmt::Result {
    match t {
        Term::Var(x) => out.write_str(x),
        Term::Const(c) => write!(out, "'{c}"),
        Term::App(f, args) => {
            write!(out, "{f}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write_term(out, a)?;
            }
            out.write_str(")")
        }
    }
}

const PREFIX: u8 = 7;
const POSTFIX: u8 = 8;
const ATOM: u8 = 9;

struct Printer<'a> {
    opts: PrintOptions,
    out: &'a mut String,
}

impl Printer<'_> {
    fn is_negation<'f>(&self, f: &'f Formula) -> Option<&'f Formula> {
        match f {
            Formula::Imp(a, b) if self.opts.recover_negation && matches!(**b, Formula::Const(ref v) if v.is_zero()) => {
                Some(a)
            }
            _ => None,
        }
    }

    fn precedence(&self, f: &Formula) -> u8 {
        use Formula::*;
        if self.is_negation(f).is_some() {
            return PREFIX;
        }
        match f {
            Forall(..) | Exists(..) => 0,
            Imp(..) => 1,
            Iff(..) => 2,
            Max(..) => 3,
            Min(..) => 4,
            LukOr(..) => 5,
            LukAnd(..) => 6,
            Not(_) | Hedge(..) | Multiple(..) => PREFIX,
            Power(..) => POSTFIX,
            Const(_) | Pred(..) => ATOM,
        }
    }

    /// Prints `f`, parenthesized when it binds looser than `min`.
    fn formula(&mut self, f: &Formula, min: u8) -> fmt::Result {
        if self.precedence(f) < min {
            self.out.push('(');
            self.bare(f)?;
            self.out.push(')');
            Ok(())
        } else {
            self.bare(f)
        }
    }

    fn binary(&mut self, a: &Formula, op: &str, b: &Formula, lmin: u8, rmin: u8) -> fmt::Result {
        self.formula(a, lmin)?;
        write!(self.out, " {op} ")?;
        self.formula(b, rmin)
    }

    fn bare(&mut self, f: &Formula) -> fmt::Result {
        use Formula::*;
        if let Some(a) = self.is_negation(f) {
            self.out.push('~');
            return self.formula(a, PREFIX);
        }
        match f {
            Const(v) if v.is_zero() => self.out.write_str("#0"),
            Const(v) if v.is_one() => self.out.write_str("#1"),
            Const(v) => write!(self.out, "#({v})"),
            Pred(p, args) => {
                self.out.write_str(p)?;
                if !args.is_empty() {
                    self.out.push('(');
                    for (i, t) in args.iter().enumerate() {
                        if i > 0 {
                            self.out.write_str(", ")?;
                        }
                        write_term(self.out, t)?;
                    }
                    self.out.push(')');
                }
                Ok(())
            }
            Forall(x, a) | Exists(x, a) => {
                let q = if matches!(f, Forall(..)) { "forall" } else { "exists" };
                write!(self.out, "{q} {x}. ")?;
                self.formula(a, 0)
            }
            Imp(a, b) => self.binary(a, "->", b, 2, 0),
            Iff(a, b) => self.binary(a, "<->", b, 3, 3),
            Max(a, b) => self.binary(a, "\\/", b, 3, 4),
            Min(a, b) => self.binary(a, "/\\", b, 4, 5),
            LukOr(a, b) => self.binary(a, "+", b, 5, 6),
            LukAnd(a, b) => self.binary(a, "&", b, 6, PREFIX),
            Not(a) => {
                self.out.push('~');
                self.formula(a, PREFIX)
            }
            Hedge(h, a) => {
                write!(self.out, "{h} ")?;
                self.formula(a, PREFIX)
            }
            Multiple(a, n) => {
                write!(self.out, "{n}*")?;
                self.formula(a, PREFIX)
            }
            Power(a, n) => {
                self.formula(a, ATOM)?;
                write!(self.out, "^{n}")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{parse_formula, HedgeMode, HedgeSignature};
    use crate::mv::TruthValue;

    #[test]
    fn constants_and_negation() {
        assert_eq!(print_formula(&Formula::Const(TruthValue::frac(3, 4))), "#(3/4)");
        let neg = Formula::imp(Formula::atom("P"), Formula::zero());
        assert_eq!(print_formula(&neg), "P -> #0");
        let opts = PrintOptions {
            recover_negation: true,
        };
        assert_eq!(print_formula_with(&neg, opts), "~P");
    }

    #[test]
    fn canonical_forms() {
        let sig = HedgeSignature::canonical(HedgeMode::DH, 1, 1).unwrap();
        for (text, canon) in [
            ("P(u) -> d1 P(u)", "P('u) -> d1 P('u)"),
            ("(P -> Q) -> R", "(P -> Q) -> R"),
            ("P & (Q & R)", "P & (Q & R)"),
            ("(P & Q) & R", "P & Q & R"),
            ("~(forall x. P(x)) & Q", "~(forall x. P(x)) & Q"),
            ("Q -> forall x. P(x)", "Q -> forall x. P(x)"),
            ("(~P)^2 + 3*s1 Q", "(~P)^2 + 3*s1 Q"),
            ("(P <-> Q) <-> R", "(P <-> Q) <-> R"),
            ("P \\/ Q /\\ R", "P \\/ Q /\\ R"),
        ] {
            let f = parse_formula(text, &sig).unwrap();
            let printed = print_formula(&f);
            assert_eq!(printed, canon, "from {text}");
            assert_eq!(parse_formula(&printed, &sig).unwrap(), f);
        }
    }
}
