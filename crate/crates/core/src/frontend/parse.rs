use std::collections::{HashMap, HashSet};

use super::lexer::{Tok, Token};
use super::{Feature, ParseError};
use crate::term::{Atom, Clause, Literal, Signature, Subst, SymbolKind, Term, Var};

/// How identifiers in term position become variables.
pub(crate) enum VarMode<'a> {
    /// Uppercase-initial or `_`-initial names, plus the declared names, are
    /// variables numbered by first occurrence within each clause.
    Local(&'a HashSet<String>),
    /// Printed variable names (`X`, `Y`, …, `X6`, …) with fixed indices.
    Fixed,
}

/// Inverse of [`crate::term::var_name`].
pub(crate) fn fixed_var(name: &str) -> Option<u32> {
    const NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
    if let Some(i) = NAMES.iter().position(|n| *n == name) {
        return Some(i as u32);
    }
    let n: u32 = name.strip_prefix('X')?.parse().ok()?;
    (n >= 6 && name == format!("X{n}")).then_some(n)
}

pub(crate) struct Parser<'t, 's, 'm> {
    toks: &'t [Token],
    pos: usize,
    sig: &'s mut Signature,
    /// Whether unknown symbols may be declared.
    declare: bool,
    mode: VarMode<'m>,
    vars: HashMap<String, Var>,
    end: (usize, usize),
}

impl<'t, 's, 'm> Parser<'t, 's, 'm> {
    pub(crate) fn new(
        toks: &'t [Token],
        sig: &'s mut Signature,
        declare: bool,
        mode: VarMode<'m>,
        end: (usize, usize),
    ) -> Self {
        Parser {
            toks,
            pos: 0,
            sig,
            declare,
            mode,
            vars: HashMap::new(),
            end,
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, n: usize) -> Option<&Tok> {
        self.toks.get(self.pos + n).map(|t| &t.tok)
    }

    pub(crate) fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.column))
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::syntax(line, column, message)
    }

    pub(crate) fn unsupported(&self, feature: Feature) -> ParseError {
        let (line, column) = self.here();
        ParseError::Unsupported { line, column, feature }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize, ParseError> {
        let at = self.here();
        let s = self.ident()?;
        s.parse()
            .map_err(|_| ParseError::syntax(at.0, at.1, format!("expected a number, found `{s}`")))
    }

    /// Starts a new clause scope for [`VarMode::Local`] variables.
    pub(crate) fn reset_vars(&mut self) {
        self.vars.clear();
    }

    fn symbol(
        &mut self,
        name: &str,
        arity: usize,
        kind: SymbolKind,
        at: (usize, usize),
    ) -> Result<crate::term::Sym, ParseError> {
        if !self.declare {
            match self.sig.lookup(name) {
                Some(s) if self.sig.kind(s) == kind && self.sig.arity(s) == arity => return Ok(s),
                Some(_) => {}
                None => return Err(ParseError::syntax(at.0, at.1, format!("unknown symbol `{name}`"))),
            }
        }
        self.sig
            .intern(name, arity, kind)
            .map_err(|e| ParseError::syntax(at.0, at.1, e.to_string()))
    }

    fn is_var_name(&self, name: &str) -> bool {
        match &self.mode {
            VarMode::Local(declared) => {
                name.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') || declared.contains(name)
            }
            VarMode::Fixed => name.starts_with(|c: char| c.is_ascii_uppercase()),
        }
    }

    fn var(&mut self, name: &str, at: (usize, usize)) -> Result<Var, ParseError> {
        match self.mode {
            VarMode::Fixed => fixed_var(name)
                .map(Var)
                .ok_or_else(|| ParseError::syntax(at.0, at.1, format!("`{name}` is not a printed variable name"))),
            VarMode::Local(_) => {
                let next = Var(self.vars.len() as u32);
                Ok(*self.vars.entry(name.to_string()).or_insert(next))
            }
        }
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            loop {
                args.push(self.term()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
        }
        Ok(args)
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        let name = self.ident()?;
        if self.peek() != Some(&Tok::LParen) && self.is_var_name(&name) {
            return Ok(Term::Var(self.var(&name, at)?));
        }
        let args = self.args()?;
        let f = self.symbol(&name, args.len(), SymbolKind::Function, at)?;
        Ok(Term::App(f, args))
    }

    pub(crate) fn atom(&mut self) -> Result<Atom, ParseError> {
        let at = self.here();
        let name = self.ident()?;
        if name.starts_with('$') && (name == "$false" || name == "$true") {
            return Err(ParseError::syntax(
                at.0,
                at.1,
                format!("`{name}` cannot occur inside a clause"),
            ));
        }
        let args = self.args()?;
        if matches!(self.peek(), Some(Tok::Eq | Tok::Neq)) {
            return Err(self.unsupported(Feature::Equality));
        }
        let p = self.symbol(&name, args.len(), SymbolKind::Predicate, at)?;
        Ok(Atom::new(p, args))
    }

    pub(crate) fn literal(&mut self) -> Result<Literal, ParseError> {
        let mut positive = true;
        while self.eat(&Tok::Tilde) {
            positive = !positive;
        }
        let atom = self.atom()?;
        Ok(Literal::new(positive, atom))
    }

    /// `$false` or literals separated by `|`.
    pub(crate) fn clause(&mut self) -> Result<Clause, ParseError> {
        if self.peek() == Some(&Tok::Ident("$false".into())) {
            self.pos += 1;
            return Ok(Clause::empty());
        }
        let mut lits = vec![self.literal()?];
        while self.eat(&Tok::Pipe) {
            lits.push(self.literal()?);
        }
        Ok(Clause::new(lits))
    }

    /// `{X->t, …}` with printed variable names.
    pub(crate) fn subst(&mut self) -> Result<Subst, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut s = Subst::new();
        if self.eat(&Tok::RBrace) {
            return Ok(s);
        }
        loop {
            let at = self.here();
            let name = self.ident()?;
            let v = fixed_var(&name)
                .ok_or_else(|| ParseError::syntax(at.0, at.1, format!("`{name}` is not a printed variable name")))?;
            self.expect(Tok::Arrow)?;
            let t = self.term()?;
            s.bind(Var(v), t);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(s)
    }

    /// True if the next tokens are `name(` for the given keyword.
    pub(crate) fn at_keyword(&self, name: &str) -> bool {
        self.peek() == Some(&Tok::Ident(name.into())) && self.peek_at(1) == Some(&Tok::LParen)
    }
}
