//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, loosest first: `->` (right associative), `<->` (non
//! associative), `\/`, `/\`, `+`, `&` (left associative), then prefix `~`,
//! hedges, `n*` and quantifiers, then postfix `^n`. A quantifier body
//! extends as far right as possible.

use std::collections::{BTreeMap, BTreeSet};

use super::{is_lower_ident, is_variable_name, Formula, HedgeSignature, LangError, Term};
use crate::mv::TruthValue;

/// Arities fixed by first use, shared across the lines of a theory.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    pub preds: BTreeMap<String, usize>,
    pub funcs: BTreeMap<String, usize>,
    pub constants: BTreeSet<String>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Merges symbols from `other`, failing on an arity clash.
    pub fn merge(&mut self, other: &SymbolTable) -> Result<(), LangError> {
        for (map, theirs) in [(&mut self.preds, &other.preds), (&mut self.funcs, &other.funcs)] {
            for (name, &n) in theirs {
                match map.get(name) {
                    Some(&m) if m != n => {
                        return Err(LangError::Arity {
                            offset: 0,
                            name: name.clone(),
                            expected: m,
                            found: n,
                        })
                    }
                    _ => {
                        map.insert(name.clone(), n);
                    }
                }
            }
        }
        self.constants.extend(other.constants.iter().cloned());
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Quoted(String),
    Int(String),
    Arrow,
    DArrow,
    Amp,
    Plus,
    Wedge,
    Vee,
    Tilde,
    Hash,
    LParen,
    RParen,
    Comma,
    Dot,
    Caret,
    Star,
    Slash,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Quoted(s) => format!("`'{s}`"),
        Tok::Int(s) => format!("`{s}`"),
        other => format!(
            "`{}`",
            match other {
                Tok::Arrow => "->",
                Tok::DArrow => "<->",
                Tok::Amp => "&",
                Tok::Plus => "+",
                Tok::Wedge => "/\\",
                Tok::Vee => "\\/",
                Tok::Tilde => "~",
                Tok::Hash => "#",
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::Comma => ",",
                Tok::Dot => ".",
                Tok::Caret => "^",
                Tok::Star => "*",
                Tok::Slash => "/",
                _ => unreachable!(),
            }
        ),
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> LangError {
    LangError::Syntax {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, LangError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let word = |start: usize| {
        let mut j = start;
        while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Tok::DArrow
            }
            b'/' if bytes.get(i + 1) == Some(&b'\\') => {
                i += 2;
                Tok::Wedge
            }
            b'\\' if bytes.get(i + 1) == Some(&b'/') => {
                i += 2;
                Tok::Vee
            }
            b'&' => {
                i += 1;
                Tok::Amp
            }
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'~' => {
                i += 1;
                Tok::Tilde
            }
            b'#' => {
                i += 1;
                Tok::Hash
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'.' => {
                i += 1;
                Tok::Dot
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'\'' => {
                let end = word(i + 1);
                if end == i + 1 {
                    return Err(syntax(i, "expected a constant name after `'`"));
                }
                let name = text[i + 1..end].to_string();
                i = end;
                Tok::Quoted(name)
            }
            b'0'..=b'9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let s = text[i..j].to_string();
                i = j;
                Tok::Int(s)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let end = word(i);
                let s = text[i..end].to_string();
                i = end;
                Tok::Ident(s)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a HedgeSignature,
    syms: &'a mut SymbolTable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, what: &str) -> LangError {
        match self.peek() {
            Some(t) => syntax(self.offset(), format!("expected {what}, found {}", describe(t))),
            None => syntax(self.offset(), format!("expected {what}, found end of input")),
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), LangError> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == "forall" || s == "exists")
    }

    fn formula(&mut self) -> Result<Formula, LangError> {
        if self.is_quantifier() {
            return self.quantifier();
        }
        let lhs = self.iff()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn quantifier(&mut self) -> Result<Formula, LangError> {
        let universal = matches!(self.bump(), Some(Tok::Ident(s)) if s == "forall");
        let at = self.offset();
        let var = match self.bump() {
            Some(Tok::Ident(v)) if is_variable_name(&v) => v,
            _ => return Err(syntax(at, "expected a variable (w, x, y, z...) after quantifier")),
        };
        self.expect(Tok::Dot, "`.` after quantified variable")?;
        let body = self.formula()?;
        Ok(if universal {
            Formula::forall(&var, body)
        } else {
            Formula::exists(&var, body)
        })
    }

    fn iff(&mut self) -> Result<Formula, LangError> {
        let lhs = self.binary(0)?;
        if self.eat(&Tok::DArrow) {
            let rhs = self.binary(0)?;
            if self.peek() == Some(&Tok::DArrow) {
                return Err(syntax(self.offset(), "`<->` is not associative; add parentheses"));
            }
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    // Left-associative levels: \/ , /\ , + , &
    fn binary(&mut self, level: usize) -> Result<Formula, LangError> {
        const LEVELS: [Tok; 4] = [Tok::Vee, Tok::Wedge, Tok::Plus, Tok::Amp];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut acc = self.binary(level + 1)?;
        while self.eat(&LEVELS[level]) {
            let rhs = self.binary(level + 1)?;
            acc = match level {
                0 => Formula::max(acc, rhs),
                1 => Formula::min(acc, rhs),
                2 => Formula::luk_or(acc, rhs),
                _ => Formula::luk_and(acc, rhs),
            };
        }
        Ok(acc)
    }

    fn count(&mut self) -> Result<u32, LangError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(s)) => match s.parse::<u32>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(syntax(at, "repetition count must be a positive integer")),
            },
            _ => Err(syntax(at, "expected a positive integer")),
        }
    }

    fn unary(&mut self) -> Result<Formula, LangError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Int(_)) => {
                let n = self.count()?;
                self.expect(Tok::Star, "`*` after repetition count")?;
                Ok(Formula::multiple(self.unary()?, n))
            }
            Some(Tok::Ident(_)) if self.is_quantifier() => self.quantifier(),
            Some(Tok::Ident(s)) if s.starts_with(|c: char| c.is_ascii_lowercase()) => {
                let name = s.clone();
                if !self.sig.contains(&name) {
                    return Err(LangError::UnknownHedge { offset: at, name });
                }
                self.pos += 1;
                Ok(Formula::hedge(&name, self.unary()?))
            }
            _ => self.postfix(),
        }
    }

    fn postfix(&mut self) -> Result<Formula, LangError> {
        let mut f = self.primary()?;
        while self.eat(&Tok::Caret) {
            let n = self.count()?;
            f = Formula::power(f, n);
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula, LangError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Hash) => {
                self.pos += 1;
                self.truth_constant().map(Formula::Const)
            }
            Some(Tok::Ident(name)) if name.starts_with(|c: char| c.is_ascii_uppercase()) => {
                self.pos += 1;
                let args = if self.eat(&Tok::LParen) {
                    self.term_list()?
                } else {
                    Vec::new()
                };
                check_arity(&mut self.syms.preds, &name, args.len(), at)?;
                Ok(Formula::Pred(name, args))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn truth_constant(&mut self) -> Result<TruthValue, LangError> {
        let at = self.offset();
        let text = match self.bump() {
            Some(Tok::Int(s)) if s == "0" || s == "1" => s,
            Some(Tok::LParen) => {
                let num = match self.bump() {
                    Some(Tok::Int(s)) => s,
                    _ => return Err(syntax(at, "expected a rational inside `#(...)`")),
                };
                let text = if self.eat(&Tok::Slash) {
                    match self.bump() {
                        Some(Tok::Int(d)) => format!("{num}/{d}"),
                        _ => return Err(syntax(at, "expected a denominator")),
                    }
                } else {
                    num
                };
                self.expect(Tok::RParen, "`)` closing the truth constant")?;
                text
            }
            _ => return Err(syntax(at, "expected `#0`, `#1` or `#(p/q)`")),
        };
        text.parse::<TruthValue>()
            .map_err(|e| syntax(at, e.to_string()))
    }

    fn term_list(&mut self) -> Result<Vec<Term>, LangError> {
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, LangError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Quoted(c)) => {
                self.pos += 1;
                self.syms.constants.insert(c.clone());
                Ok(Term::Const(c))
            }
            Some(Tok::Ident(name)) if is_lower_ident(&name) => {
                self.pos += 1;
                if self.eat(&Tok::LParen) {
                    let args = self.term_list()?;
                    check_arity(&mut self.syms.funcs, &name, args.len(), at)?;
                    Ok(Term::App(name, args))
                } else if is_variable_name(&name) {
                    Ok(Term::Var(name))
                } else {
                    self.syms.constants.insert(name.clone());
                    Ok(Term::Const(name))
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

fn check_arity(
    table: &mut BTreeMap<String, usize>,
    name: &str,
    found: usize,
    offset: usize,
) -> Result<(), LangError> {
    match table.get(name) {
        Some(&expected) if expected != found => Err(LangError::Arity {
            offset,
            name: name.to_string(),
            expected,
            found,
        }),
        Some(_) => Ok(()),
        None => {
            table.insert(name.to_string(), found);
            Ok(())
        }
    }
}

/// Parses one formula with a fresh symbol table.
pub fn parse_formula(text: &str, sig: &HedgeSignature) -> Result<Formula, LangError> {
    parse_formula_with(text, sig, &mut SymbolTable::new())
}

/// Parses one formula, checking and extending `syms`.
pub fn parse_formula_with(
    text: &str,
    sig: &HedgeSignature,
    syms: &mut SymbolTable,
) -> Result<Formula, LangError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        sig,
        syms,
    };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, LangError> {
    let toks = lex(text)?;
    let sig = HedgeSignature::empty();
    let mut syms = SymbolTable::new();
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        sig: &sig,
        syms: &mut syms,
    };
    let t = p.term()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected("end of input"));
    }
    Ok(t)
}
