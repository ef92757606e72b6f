use std::collections::HashMap;

use thiserror::Error;

/// Interned symbol. Predicate and function symbols share one index space but
/// never one name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(pub(crate) u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Function,
    Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolInfo {
    pub name: String,
    pub arity: usize,
    pub kind: SymbolKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{name}` used with arity {found}, previously declared with arity {expected}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("symbol `{name}` used both as a predicate and as a function symbol")]
    KindMismatch { name: String },
}

/// A finite first-order signature without equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: Vec<SymbolInfo>,
    by_name: HashMap<String, Sym>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the symbol named `name`, declaring it on first use.
    pub fn intern(&mut self, name: &str, arity: usize, kind: SymbolKind) -> Result<Sym, SignatureError> {
        if let Some(&sym) = self.by_name.get(name) {
            let info = &self.symbols[sym.index()];
            if info.kind != kind {
                return Err(SignatureError::KindMismatch { name: name.to_string() });
            }
            if info.arity != arity {
                return Err(SignatureError::ArityMismatch {
                    name: name.to_string(),
                    expected: info.arity,
                    found: arity,
                });
            }
            return Ok(sym);
        }
        let sym = Sym(self.symbols.len() as u32);
        self.symbols.push(SymbolInfo {
            name: name.to_string(),
            arity,
            kind,
        });
        self.by_name.insert(name.to_string(), sym);
        Ok(sym)
    }

    pub fn function(&mut self, name: &str, arity: usize) -> Result<Sym, SignatureError> {
        self.intern(name, arity, SymbolKind::Function)
    }

    pub fn predicate(&mut self, name: &str, arity: usize) -> Result<Sym, SignatureError> {
        self.intern(name, arity, SymbolKind::Predicate)
    }

    pub fn lookup(&self, name: &str) -> Option<Sym> {
        self.by_name.get(name).copied()
    }

    pub fn info(&self, sym: Sym) -> &SymbolInfo {
        &self.symbols[sym.index()]
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.symbols[sym.index()].name
    }

    pub fn arity(&self, sym: Sym) -> usize {
        self.symbols[sym.index()].arity
    }

    pub fn kind(&self, sym: Sym) -> SymbolKind {
        self.symbols[sym.index()].kind
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// All symbols in declaration order.
    pub fn symbols(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.symbols.len() as u32).map(Sym)
    }

    pub fn functions(&self) -> impl Iterator<Item = Sym> + '_ {
        self.symbols().filter(|&s| self.kind(s) == SymbolKind::Function)
    }

    pub fn predicates(&self) -> impl Iterator<Item = Sym> + '_ {
        self.symbols().filter(|&s| self.kind(s) == SymbolKind::Predicate)
    }

    pub fn constants(&self) -> impl Iterator<Item = Sym> + '_ {
        self.functions().filter(|&s| self.arity(s) == 0)
    }

    /// A name starting with `base` that is not yet declared.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.by_name.contains_key(base) {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.by_name.contains_key(n))
            .expect("unbounded name supply")
    }

    /// Declares a fresh constant if the signature has none, so that the
    /// Herbrand universe is non-empty. Returns the added constant, if any.
    pub fn ensure_constant(&mut self) -> Option<Sym> {
        if self.constants().next().is_some() {
            return None;
        }
        let name = self.fresh_name("a");
        Some(self.function(&name, 0).expect("fresh name cannot clash"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arity_and_kind_are_enforced() {
        let mut sig = Signature::new();
        let p = sig.predicate("P", 1).unwrap();
        assert_eq!(sig.predicate("P", 1).unwrap(), p);
        assert!(matches!(
            sig.predicate("P", 2),
            Err(SignatureError::ArityMismatch { .. })
        ));
        assert!(matches!(sig.function("P", 1), Err(SignatureError::KindMismatch { .. })));
    }

    #[test]
    fn fresh_constant_only_when_missing() {
        let mut sig = Signature::new();
        sig.predicate("a", 0).unwrap();
        let c = sig.ensure_constant().unwrap();
        assert_eq!(sig.name(c), "a0");
        assert_eq!(sig.ensure_constant(), None);
    }
}
