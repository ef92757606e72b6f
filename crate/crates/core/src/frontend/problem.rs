use std::collections::HashSet;
use std::fmt::Write;

use super::lexer::{tokenize, Tok};
use super::parse::{Parser, VarMode};
use super::{Feature, ParseError};
use crate::term::{Clause, Render, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tptp,
    Native,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputClause {
    pub name: Option<String>,
    pub clause: Clause,
}

/// A parsed clause set with the signature inferred from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub signature: Signature,
    pub clauses: Vec<InputClause>,
    pub format: Format,
}

impl ProblemFile {
    pub fn clause_list(&self) -> Vec<Clause> {
        self.clauses.iter().map(|c| c.clause.clone()).collect()
    }
}

fn end_of(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    (line, column)
}

/// `cnf(name, role, (L1 | … | Ln)).` clauses. Roles are not interpreted.
pub fn parse_tptp(text: &str) -> Result<ProblemFile, ParseError> {
    let toks = tokenize(text, 1, true)?;
    let mut sig = Signature::new();
    let none = HashSet::new();
    let mut p = Parser::new(&toks, &mut sig, true, VarMode::Local(&none), end_of(text));
    let mut clauses = Vec::new();
    while !p.at_end() {
        if p.at_keyword("fof") || p.at_keyword("tff") || p.at_keyword("thf") {
            return Err(p.unsupported(Feature::Fof));
        }
        if p.at_keyword("include") {
            return Err(p.unsupported(Feature::Include));
        }
        if !p.at_keyword("cnf") {
            return Err(p.error("expected `cnf(`"));
        }
        p.ident()?;
        p.expect(Tok::LParen)?;
        let name = p.ident()?;
        p.expect(Tok::Comma)?;
        p.ident()?;
        p.expect(Tok::Comma)?;
        p.reset_vars();
        let clause = if p.eat(&Tok::LParen) {
            let c = p.clause()?;
            p.expect(Tok::RParen)?;
            c
        } else {
            p.clause()?
        };
        p.expect(Tok::RParen)?;
        p.expect(Tok::Dot)?;
        clauses.push(InputClause {
            name: Some(name),
            clause,
        });
    }
    Ok(ProblemFile {
        signature: sig,
        clauses,
        format: Format::Tptp,
    })
}

/// One clause per line, literals separated by `|`, `#` comments. A line
/// `vars: x, y` declares lowercase names as variables for the lines below.
pub fn parse_native(text: &str) -> Result<ProblemFile, ParseError> {
    let mut sig = Signature::new();
    let mut declared: HashSet<String> = HashSet::new();
    let mut clauses = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        if let Some(rest) = line.trim_start().strip_prefix("vars:") {
            let rest = rest.split('#').next().unwrap_or("");
            declared.extend(
                rest.split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(str::to_string),
            );
            continue;
        }
        let toks = tokenize(line, n, false)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser::new(
            &toks,
            &mut sig,
            true,
            VarMode::Local(&declared),
            (n, line.chars().count() + 1),
        );
        let clause = p.clause()?;
        p.eat(&Tok::Dot);
        if !p.at_end() {
            return Err(p.error("expected `|` or end of line"));
        }
        clauses.push(InputClause { name: None, clause });
    }
    Ok(ProblemFile {
        signature: sig,
        clauses,
        format: Format::Native,
    })
}

pub fn parse_problem(text: &str, format: Format) -> Result<ProblemFile, ParseError> {
    match format {
        Format::Tptp => parse_tptp(text),
        Format::Native => parse_native(text),
    }
}

pub fn print_tptp(p: &ProblemFile) -> String {
    let mut out = String::new();
    for (i, c) in p.clauses.iter().enumerate() {
        let name = c.name.clone().unwrap_or_else(|| format!("c{}", i + 1));
        let body = c.clause.show(&p.signature);
        if c.clause.is_empty() {
            let _ = writeln!(out, "cnf({name}, axiom, {body}).");
        } else {
            let _ = writeln!(out, "cnf({name}, axiom, ({body})).");
        }
    }
    out
}

pub fn print_native(p: &ProblemFile) -> String {
    let mut out = String::new();
    for c in &p.clauses {
        let _ = writeln!(out, "{}", c.clause.show(&p.signature));
    }
    out
}
