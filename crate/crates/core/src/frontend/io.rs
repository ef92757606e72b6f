use std::fmt::Write;

use super::lexer::{tokenize, Tok, Token};
use super::parse::{Parser, VarMode};
use super::ParseError;
use crate::ordering::OrderingKind;
use crate::proof::{Derivation, LearnedEntry, Proof, Step};
use crate::strategy::Model;
use crate::term::{Clause, Closure, Literal, Render, Signature};

fn line_parser<'t, 's>(
    toks: &'t [Token],
    sig: &'s mut Signature,
    declare: bool,
    n: usize,
    line: &str,
) -> Parser<'t, 's, 'static> {
    Parser::new(toks, sig, declare, VarMode::Fixed, (n, line.chars().count() + 1))
}

fn finish(p: &Parser) -> Result<(), ParseError> {
    if p.at_end() {
        Ok(())
    } else {
        Err(p.error("unexpected trailing input"))
    }
}

/// A single literal such as a bound `R(b)`. Unknown symbols are declared.
pub fn parse_literal(text: &str, sig: &mut Signature) -> Result<Literal, ParseError> {
    let toks = tokenize(text, 1, false)?;
    let mut p = line_parser(&toks, sig, true, 1, text);
    let lit = p.literal()?;
    finish(&p)?;
    Ok(lit)
}

fn one_based(p: &mut Parser) -> Result<usize, ParseError> {
    let at = p.here();
    match p.number()? {
        0 => Err(ParseError::syntax(at.0, at.1, "clause ids start at 1")),
        n => Ok(n - 1),
    }
}

enum Pending {
    None,
    Conflict(usize, crate::term::Subst),
    Resolve(usize, usize, usize, crate::term::Subst, Closure),
    Factorize(usize, usize),
}

/// Reads the proof format written by [`Proof::render`]. Symbols must
/// already be declared in `sig`.
pub fn parse_proof(text: &str, sig: &Signature) -> Result<Proof, ParseError> {
    let mut sig = sig.clone();
    let mut learned: Vec<LearnedEntry> = Vec::new();
    let mut pending = Pending::None;
    let mut refutation = None;
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let toks = tokenize(line, n, false)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = line_parser(&toks, &mut sig, false, n, line);
        if refutation.is_some() {
            return Err(p.error("input after the refutation line"));
        }
        let keyword = p.ident()?;
        let expect_clause = !matches!(pending, Pending::None);
        if expect_clause != (keyword == "clause") {
            return Err(ParseError::syntax(
                n,
                1,
                if expect_clause {
                    "expected a `clause` line".to_string()
                } else {
                    format!("unexpected `{keyword}`")
                },
            ));
        }
        match keyword.as_str() {
            "learned" => {
                let id = one_based(&mut p)?;
                p.expect(Tok::Colon)?;
                finish(&p)?;
                learned.push(LearnedEntry {
                    id,
                    derivation: Derivation::new(0, Clause::empty(), Default::default()),
                });
            }
            "conflict" => {
                let id = one_based(&mut p)?;
                let s = p.subst()?;
                finish(&p)?;
                if learned.is_empty() {
                    return Err(ParseError::syntax(n, 1, "`conflict` outside a learned section"));
                }
                pending = Pending::Conflict(id, s);
            }
            "resolve" => {
                let literal = p.number()?;
                let source = one_based(&mut p)?;
                let pivot = p.number()?;
                let delta = p.subst()?;
                let clause = p.clause()?;
                p.expect(Tok::Dot)?;
                let subst = p.subst()?;
                finish(&p)?;
                pending = Pending::Resolve(literal, source, pivot, delta, Closure::new(clause, subst));
            }
            "factorize" => {
                let keep = p.number()?;
                let drop = p.number()?;
                finish(&p)?;
                pending = Pending::Factorize(keep, drop);
            }
            "clause" => {
                let clause = p.clause()?;
                finish(&p)?;
                let d = &mut learned.last_mut().expect("pending implies a section").derivation;
                match std::mem::replace(&mut pending, Pending::None) {
                    Pending::Conflict(id, s) => {
                        *d = Derivation::new(id, clause, s);
                    }
                    Pending::Resolve(literal, source, pivot, delta, annotation) => d.steps.push(Step::Resolve {
                        literal,
                        source,
                        pivot,
                        delta,
                        annotation,
                        result: clause,
                    }),
                    Pending::Factorize(keep, drop) => d.steps.push(Step::Factorize {
                        keep,
                        drop,
                        result: clause,
                    }),
                    Pending::None => unreachable!("checked above"),
                }
            }
            "refutation" => {
                p.expect(Tok::Colon)?;
                let kw = p.ident()?;
                if kw != "clause" {
                    return Err(p.error("expected `clause`"));
                }
                let id = one_based(&mut p)?;
                p.expect(Tok::Eq)?;
                let f = p.ident()?;
                if f != "$false" {
                    return Err(p.error("expected `$false`"));
                }
                finish(&p)?;
                refutation = Some(id);
            }
            other => return Err(ParseError::syntax(n, 1, format!("unknown proof line `{other}`"))),
        }
    }
    if !matches!(pending, Pending::None) {
        return Err(ParseError::syntax(text.lines().count(), 1, "missing `clause` line"));
    }
    let refutation =
        refutation.ok_or_else(|| ParseError::syntax(text.lines().count().max(1), 1, "missing refutation line"))?;
    Ok(Proof { learned, refutation })
}

/// Header lines `# beta: L` and `# ordering: kbo|lpo`, then one literal
/// per line.
pub fn render_model(model: &Model, sig: &Signature) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# beta: {}", model.beta.show(sig));
    let _ = writeln!(out, "# ordering: {}", model.ordering);
    for l in &model.literals {
        let _ = writeln!(out, "{}", l.show(sig));
    }
    out
}

pub fn parse_model(text: &str, sig: &Signature) -> Result<Model, ParseError> {
    let mut sig = sig.clone();
    let mut beta = None;
    let mut ordering = None;
    let mut literals = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("# beta:") {
            let toks = tokenize(rest, n, false)?;
            let mut p = line_parser(&toks, &mut sig, true, n, line);
            beta = Some(p.literal()?);
            finish(&p)?;
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("# ordering:") {
            ordering = Some(match rest.trim() {
                "kbo" => OrderingKind::Kbo,
                "lpo" => OrderingKind::Lpo,
                other => return Err(ParseError::syntax(n, 1, format!("unknown ordering `{other}`"))),
            });
            continue;
        }
        let toks = tokenize(line, n, false)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = line_parser(&toks, &mut sig, false, n, line);
        let lit = p.literal()?;
        finish(&p)?;
        if !lit.is_ground() {
            return Err(ParseError::syntax(n, 1, "model literals must be ground"));
        }
        literals.push(lit);
    }
    let beta = beta.ok_or_else(|| ParseError::syntax(1, 1, "missing `# beta:` header"))?;
    let ordering = ordering.ok_or_else(|| ParseError::syntax(1, 1, "missing `# ordering:` header"))?;
    Ok(Model {
        literals,
        beta,
        ordering,
    })
}

/// A substitution in printed form, `{X->a, Y->f(b)}`.
pub fn parse_subst(text: &str, sig: &Signature) -> Result<crate::term::Subst, ParseError> {
    let mut sig = sig.clone();
    let toks = tokenize(text, 1, false)?;
    let mut p = line_parser(&toks, &mut sig, false, 1, text);
    let s = p.subst()?;
    finish(&p)?;
    Ok(s)
}

/// A clause in printed form with printed variable names. Symbols must be
/// declared in `sig`.
pub fn parse_clause(text: &str, sig: &Signature) -> Result<Clause, ParseError> {
    let mut sig = sig.clone();
    let toks = tokenize(text, 1, false)?;
    let mut p = line_parser(&toks, &mut sig, false, 1, text);
    let c = p.clause()?;
    finish(&p)?;
    Ok(c)
}
