//! Pretty printer producing text the parser reads back to an α-equal term.
//!
//! Bound names are chosen deterministically: the generated suffix is
//! stripped and, if that would capture a free name of the body, a numeric
//! suffix is appended.

use std::collections::BTreeSet;

use crate::syntax::{base_name, Term, Type};

const RESERVED: [&str; 5] = ["p1", "p2", "star", "forall", "Top"];

#[derive(Default)]
struct Names {
    terms: Vec<(String, String)>,
    types: Vec<(String, String)>,
}

fn lookup<'a>(env: &'a [(String, String)], name: &'a str) -> &'a str {
    env.iter().rev().find(|(n, _)| n == name).map(|(_, p)| p.as_str()).unwrap_or(name)
}

fn choose(name: &str, avoid: &BTreeSet<String>) -> String {
    let base = base_name(name);
    let ok = |c: &str| !avoid.contains(c) && !RESERVED.contains(&c);
    if ok(base) {
        return base.to_string();
    }
    (1..).map(|n| format!("{base}{n}")).find(|c| ok(c)).expect("unbounded counter")
}

impl Names {
    fn type_binder(&self, x: &str, free_in_body: BTreeSet<String>) -> String {
        let avoid = free_in_body
            .iter()
            .filter(|n| *n != x)
            .map(|n| lookup(&self.types, n).to_string())
            .collect();
        choose(x, &avoid)
    }

    fn term_binder(&self, x: &str, body: &Term) -> String {
        let avoid = body
            .free_var_names()
            .iter()
            .filter(|n| *n != x)
            .map(|n| lookup(&self.terms, n).to_string())
            .collect();
        choose(x, &avoid)
    }

    fn ty(&mut self, ty: &Type, prec: u8, out: &mut String) {
        match ty {
            Type::Top => out.push_str("Top"),
            Type::Var(x) => out.push_str(lookup(&self.types, x)),
            Type::Forall(x, body) => {
                let name = self.type_binder(x, body.free_type_vars());
                paren(out, prec > 0, |out| {
                    out.push_str("forall ");
                    out.push_str(&name);
                    out.push_str(". ");
                    self.types.push((x.clone(), name));
                    self.ty(body, 0, out);
                    self.types.pop();
                });
            }
            Type::Arrow(a, b) => paren(out, prec > 0, |out| {
                self.ty(a, 1, out);
                out.push_str(" -> ");
                self.ty(b, 0, out);
            }),
            Type::Prod(a, b) => paren(out, prec > 1, |out| {
                self.ty(a, 2, out);
                out.push_str(" * ");
                self.ty(b, 1, out);
            }),
        }
    }

    fn term(&mut self, t: &Term, prec: u8, out: &mut String) {
        match t {
            Term::Var(x, _) => out.push_str(lookup(&self.terms, x)),
            Term::Star => out.push('*'),
            Term::Abs(x, ty, body) => {
                let name = self.term_binder(x, body);
                paren(out, prec > 0, |out| {
                    out.push('\\');
                    out.push_str(&name);
                    out.push(':');
                    let annot_prec = if matches!(ty, Type::Forall(..)) { 1 } else { 0 };
                    self.ty(ty, annot_prec, out);
                    out.push_str(". ");
                    self.terms.push((x.clone(), name));
                    self.term(body, 0, out);
                    self.terms.pop();
                });
            }
            Term::TyAbs(x, body) => {
                let name = self.type_binder(x, body.free_type_vars());
                paren(out, prec > 0, |out| {
                    out.push_str("/\\");
                    out.push_str(&name);
                    out.push_str(". ");
                    self.types.push((x.clone(), name));
                    self.term(body, 0, out);
                    self.types.pop();
                });
            }
            Term::App(f, a) => paren(out, prec > 1, |out| {
                self.term(f, 1, out);
                out.push(' ');
                self.term(a, 2, out);
            }),
            Term::TyApp(f, ty) => paren(out, prec > 1, |out| {
                self.term(f, 1, out);
                out.push_str(" [");
                self.ty(ty, 0, out);
                out.push(']');
            }),
            Term::Proj1(s) | Term::Proj2(s) => paren(out, prec > 1, |out| {
                out.push_str(if matches!(t, Term::Proj1(_)) { "p1 " } else { "p2 " });
                self.term(s, 2, out);
            }),
            Term::Pair(a, b) => {
                out.push('<');
                self.term(a, 0, out);
                out.push_str(", ");
                self.term(b, 0, out);
                out.push('>');
            }
        }
    }
}

fn paren(out: &mut String, wrap: bool, inner: impl FnOnce(&mut String)) {
    if wrap {
        out.push('(');
    }
    inner(out);
    if wrap {
        out.push(')');
    }
}

pub fn print_type(ty: &Type) -> String {
    let mut out = String::new();
    Names::default().ty(ty, 0, &mut out);
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    Names::default().term(t, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse::{parse_context, parse_term_in, parse_type};
    use crate::canon::SystemId;

    #[test]
    fn types() {
        for src in ["A * B -> C -> D", "(A -> B) -> C", "A * (B * C)", "(A * B) * C", "forall X. X -> X", "(forall X. X) -> Top"] {
            assert_eq!(print_type(&parse_type(src).unwrap()), src.replace("A * (B * C)", "A * B * C"));
        }
    }

    #[test]
    fn terms_round_trip() {
        let ctx = parse_context("f: A -> A -> B, a: A, p: A * Top, w: forall Y. Y -> Y").unwrap();
        for src in [
            "\\x:A. f x x",
            "f a ((\\x:A. x) a)",
            "<p1 p, *>",
            "p1 (p2 <p, p>)",
            "/\\X. \\x:X. w [X] x",
            "(/\\X. \\x:X. x) [A] a",
            "\\g:(forall X. X -> X). g [A]",
        ] {
            let t = parse_term_in(src, &ctx, SystemId::Cd2).unwrap();
            assert_eq!(print_term(&t), src);
        }
    }

    #[test]
    fn generated_names_are_cleaned_without_capture() {
        let y = Term::var("y", Type::Top);
        let t = Term::abs("y#1", Type::Top, Term::pair(Term::var("y#1", Type::Top), y));
        assert_eq!(print_term(&t), "\\y1:Top. <y1, y>");
        let t = Term::abs("x#3", Type::Top, Term::var("x#3", Type::Top));
        assert_eq!(print_term(&t), "\\x:Top. x");
    }

    #[test]
    fn type_binders_are_cleaned_without_capture() {
        let t = Type::forall("X#2", Type::arrow(Type::var("X#2"), Type::var("X")));
        assert_eq!(print_type(&t), "forall X1. X1 -> X");
    }
}
