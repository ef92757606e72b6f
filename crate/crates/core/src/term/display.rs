use std::fmt::{self, Write};

use super::signature::Signature;
use super::subst::{Closure, Subst};
use super::syntax::{Atom, Clause, Literal, Term, Var};

/// Text rendering against a signature, in the TPTP-like surface syntax used
/// by the parsers: uppercase variables, `~` for negation, `|` between
/// literals and `$false` for the empty clause.
pub trait Render {
    fn render(&self, sig: &Signature, out: &mut String);

    fn show(&self, sig: &Signature) -> String {
        let mut s = String::new();
        self.render(sig, &mut s);
        s
    }
}

/// Canonical printed name of a clause-local variable.
pub fn var_name(v: Var) -> String {
    const NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];
    match NAMES.get(v.0 as usize) {
        Some(n) => n.to_string(),
        None => format!("X{}", v.0),
    }
}

impl Render for Var {
    fn render(&self, _sig: &Signature, out: &mut String) {
        out.push_str(&var_name(*self));
    }
}

impl Render for Term {
    fn render(&self, sig: &Signature, out: &mut String) {
        match self {
            Term::Var(v) => v.render(sig, out),
            Term::App(f, args) => {
                out.push_str(sig.name(*f));
                render_args(args, sig, out);
            }
        }
    }
}

fn render_args(args: &[Term], sig: &Signature, out: &mut String) {
    if args.is_empty() {
        return;
    }
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        a.render(sig, out);
    }
    out.push(')');
}

impl Render for Atom {
    fn render(&self, sig: &Signature, out: &mut String) {
        out.push_str(sig.name(self.pred));
        render_args(&self.args, sig, out);
    }
}

impl Render for Literal {
    fn render(&self, sig: &Signature, out: &mut String) {
        if !self.positive {
            out.push('~');
        }
        self.atom.render(sig, out);
    }
}

impl Render for Clause {
    fn render(&self, sig: &Signature, out: &mut String) {
        if self.is_empty() {
            out.push_str("$false");
            return;
        }
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            l.render(sig, out);
        }
    }
}

impl Render for Subst {
    fn render(&self, sig: &Signature, out: &mut String) {
        out.push('{');
        for (i, (v, t)) in self.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            v.render(sig, out);
            out.push_str("->");
            t.render(sig, out);
        }
        out.push('}');
    }
}

impl Render for Closure {
    fn render(&self, sig: &Signature, out: &mut String) {
        self.clause.render(sig, out);
        out.push_str(" . ");
        self.subst.render(sig, out);
    }
}

/// Adapter implementing `Display` for anything renderable.
pub struct Shown<'a, T: ?Sized>(pub &'a T, pub &'a Signature);

impl<T: Render + ?Sized> fmt::Display for Shown<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.0.render(self.1, &mut s);
        f.write_str(&s)
    }
}

impl<T: Render> Render for [T] {
    fn render(&self, sig: &Signature, out: &mut String) {
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                let _ = write!(out, ", ");
            }
            x.render(sig, out);
        }
    }
}
