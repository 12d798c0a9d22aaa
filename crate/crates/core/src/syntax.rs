//! Types and Church-style terms, α-equivalence, and capture-avoiding
//! substitution for term and type variables.
//!
//! Equality (`==`), ordering, and hashing on [`Type`] and [`Term`] are all
//! α-equivalence: they compare the nameless forms produced by
//! [`Type::key`] and [`Term::key`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

/// Separator for generated names. The lexer rejects it, so a generated
/// name can never clash with a user-written one.
pub const FRESH_MARK: char = '#';

#[derive(Clone, Debug)]
pub enum Type {
    Top,
    Var(String),
    Prod(Box<Type>, Box<Type>),
    Arrow(Box<Type>, Box<Type>),
    Forall(String, Box<Type>),
}

#[derive(Clone, Debug)]
pub enum Term {
    /// A term variable together with its type annotation.
    Var(String, Type),
    /// The constant `*` of type `Top`.
    Star,
    Abs(String, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Proj1(Box<Term>),
    Proj2(Box<Term>),
    TyAbs(String, Box<Term>),
    TyApp(Box<Term>, Type),
}

/// Nameless form of a type: bound type variables are de Bruijn indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKey {
    Top,
    Bound(usize),
    Free(String),
    Prod(Box<TypeKey>, Box<TypeKey>),
    Arrow(Box<TypeKey>, Box<TypeKey>),
    Forall(Box<TypeKey>),
}

/// Nameless form of a term. Both binder kinds use de Bruijn indices in
/// separate namespaces; free variables keep their name and annotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermKey {
    Bound(usize, TypeKey),
    Free(String, TypeKey),
    Star,
    Abs(TypeKey, Box<TermKey>),
    App(Box<TermKey>, Box<TermKey>),
    Pair(Box<TermKey>, Box<TermKey>),
    Proj1(Box<TermKey>),
    Proj2(Box<TermKey>),
    TyAbs(Box<TermKey>),
    TyApp(Box<TermKey>, TypeKey),
}

fn index_of(scope: &[&str], name: &str) -> Option<usize> {
    scope.iter().rev().position(|n| *n == name)
}

impl Type {
    pub fn var(name: &str) -> Type {
        Type::Var(name.to_string())
    }

    pub fn prod(a: Type, b: Type) -> Type {
        Type::Prod(Box::new(a), Box::new(b))
    }

    pub fn arrow(a: Type, b: Type) -> Type {
        Type::Arrow(Box::new(a), Box::new(b))
    }

    pub fn forall(x: &str, body: Type) -> Type {
        Type::Forall(x.to_string(), Box::new(body))
    }

    pub fn key(&self) -> TypeKey {
        self.key_in(&mut Vec::new())
    }

    fn key_in<'a>(&'a self, scope: &mut Vec<&'a str>) -> TypeKey {
        match self {
            Type::Top => TypeKey::Top,
            Type::Var(x) => match index_of(scope, x) {
                Some(i) => TypeKey::Bound(i),
                None => TypeKey::Free(x.clone()),
            },
            Type::Prod(a, b) => TypeKey::Prod(Box::new(a.key_in(scope)), Box::new(b.key_in(scope))),
            Type::Arrow(a, b) => {
                TypeKey::Arrow(Box::new(a.key_in(scope)), Box::new(b.key_in(scope)))
            }
            Type::Forall(x, body) => {
                scope.push(x);
                let k = body.key_in(scope);
                scope.pop();
                TypeKey::Forall(Box::new(k))
            }
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Type::Top | Type::Var(_) => 1,
            Type::Prod(a, b) | Type::Arrow(a, b) => 1 + a.size() + b.size(),
            Type::Forall(_, b) => 1 + b.size(),
        }
    }

    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_ftv(&mut Vec::new(), &mut out);
        out
    }

    fn collect_ftv<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Type::Top => {}
            Type::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            Type::Prod(a, b) | Type::Arrow(a, b) => {
                a.collect_ftv(bound, out);
                b.collect_ftv(bound, out);
            }
            Type::Forall(x, b) => {
                bound.push(x);
                b.collect_ftv(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_type_var(&self, x: &str) -> bool {
        match self {
            Type::Top => false,
            Type::Var(y) => y == x,
            Type::Prod(a, b) | Type::Arrow(a, b) => a.has_free_type_var(x) || b.has_free_type_var(x),
            Type::Forall(y, b) => y != x && b.has_free_type_var(x),
        }
    }

    /// Every type-variable name in the type, bound or free.
    pub(crate) fn collect_all_names(&self, out: &mut HashSet<String>) {
        match self {
            Type::Top => {}
            Type::Var(x) => {
                out.insert(x.clone());
            }
            Type::Prod(a, b) | Type::Arrow(a, b) => {
                a.collect_all_names(out);
                b.collect_all_names(out);
            }
            Type::Forall(x, b) => {
                out.insert(x.clone());
                b.collect_all_names(out);
            }
        }
    }

    pub fn contains_forall(&self) -> bool {
        match self {
            Type::Top | Type::Var(_) => false,
            Type::Prod(a, b) | Type::Arrow(a, b) => a.contains_forall() || b.contains_forall(),
            Type::Forall(..) => true,
        }
    }

    /// Capture-avoiding `self[x := replacement]`.
    pub fn subst(&self, x: &str, replacement: &Type) -> Type {
        let ftv = replacement.free_type_vars();
        self.subst_with(x, replacement, &ftv)
    }

    fn subst_with(&self, x: &str, rep: &Type, rep_ftv: &BTreeSet<String>) -> Type {
        match self {
            Type::Top => Type::Top,
            Type::Var(y) if y == x => rep.clone(),
            Type::Var(_) => self.clone(),
            Type::Prod(a, b) => {
                Type::prod(a.subst_with(x, rep, rep_ftv), b.subst_with(x, rep, rep_ftv))
            }
            Type::Arrow(a, b) => {
                Type::arrow(a.subst_with(x, rep, rep_ftv), b.subst_with(x, rep, rep_ftv))
            }
            Type::Forall(y, body) => {
                if y == x || !body.has_free_type_var(x) {
                    return self.clone();
                }
                if rep_ftv.contains(y) {
                    let mut avoid = body.free_type_vars();
                    avoid.extend(rep_ftv.iter().cloned());
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(y, |n| avoid.contains(n));
                    let renamed = body.subst(y, &Type::Var(fresh.clone()));
                    Type::Forall(fresh, Box::new(renamed.subst_with(x, rep, rep_ftv)))
                } else {
                    Type::Forall(y.clone(), Box::new(body.subst_with(x, rep, rep_ftv)))
                }
            }
        }
    }
}

impl PartialEq for Type {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Type {}

impl Hash for Type {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for Type {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Type {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

/// Strips a generated suffix, giving the name a user originally wrote.
pub fn base_name(name: &str) -> &str {
    match name.find(FRESH_MARK) {
        Some(i) => &name[..i],
        None => name,
    }
}

/// The first `base#n` (n = 1, 2, ...) for which `taken` is false.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let base = base_name(base);
    (1..)
        .map(|n| format!("{base}{FRESH_MARK}{n}"))
        .find(|c| !taken(c))
        .expect("unbounded counter")
}

/// Path of child indices from the root to a subterm occurrence.
///
/// Children are numbered: `Abs`/`TyAbs`/`Proj1`/`Proj2`/`TyApp` have one
/// child (0); `App` and `Pair` have two (0 and 1). The derived ordering
/// is pre-order, i.e. leftmost-outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn child(&self, i: usize) -> Position {
        let mut p = self.0.clone();
        p.push(i);
        Position(p)
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// True if `other` lies strictly below `self`.
    pub fn is_proper_prefix_of(&self, other: &Position) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("type mismatch: `{var}` is annotated {expected} but the substituted term has type {found}")]
    TypeMismatch { var: String, expected: Type, found: Type },
    #[error("substituted term is ill-typed")]
    IllTyped,
}

impl Term {
    pub fn var(name: &str, ty: Type) -> Term {
        Term::Var(name.to_string(), ty)
    }

    pub fn abs(x: &str, ty: Type, body: Term) -> Term {
        Term::Abs(x.to_string(), ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn proj1(t: Term) -> Term {
        Term::Proj1(Box::new(t))
    }

    pub fn proj2(t: Term) -> Term {
        Term::Proj2(Box::new(t))
    }

    pub fn ty_abs(x: &str, body: Term) -> Term {
        Term::TyAbs(x.to_string(), Box::new(body))
    }

    pub fn ty_app(t: Term, ty: Type) -> Term {
        Term::TyApp(Box::new(t), ty)
    }

    /// Nameless canonical form; two terms are α-equivalent iff their keys
    /// are equal.
    pub fn key(&self) -> TermKey {
        self.key_in(&mut Vec::new(), &mut Vec::new())
    }

    fn key_in<'a>(&'a self, vars: &mut Vec<&'a str>, tvars: &mut Vec<&'a str>) -> TermKey {
        match self {
            Term::Var(x, ty) => {
                let tk = ty.key_in(tvars);
                match index_of(vars, x) {
                    Some(i) => TermKey::Bound(i, tk),
                    None => TermKey::Free(x.clone(), tk),
                }
            }
            Term::Star => TermKey::Star,
            Term::Abs(x, ty, body) => {
                let tk = ty.key_in(tvars);
                vars.push(x);
                let bk = body.key_in(vars, tvars);
                vars.pop();
                TermKey::Abs(tk, Box::new(bk))
            }
            Term::App(f, a) => {
                TermKey::App(Box::new(f.key_in(vars, tvars)), Box::new(a.key_in(vars, tvars)))
            }
            Term::Pair(a, b) => {
                TermKey::Pair(Box::new(a.key_in(vars, tvars)), Box::new(b.key_in(vars, tvars)))
            }
            Term::Proj1(t) => TermKey::Proj1(Box::new(t.key_in(vars, tvars))),
            Term::Proj2(t) => TermKey::Proj2(Box::new(t.key_in(vars, tvars))),
            Term::TyAbs(x, body) => {
                tvars.push(x);
                let bk = body.key_in(vars, tvars);
                tvars.pop();
                TermKey::TyAbs(Box::new(bk))
            }
            Term::TyApp(t, ty) => {
                TermKey::TyApp(Box::new(t.key_in(vars, tvars)), ty.key_in(tvars))
            }
        }
    }

    /// Node count, ignoring type annotations.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(..) | Term::Star => 1,
            Term::Abs(_, _, b) | Term::TyAbs(_, b) => 1 + b.size(),
            Term::App(a, b) | Term::Pair(a, b) => 1 + a.size() + b.size(),
            Term::Proj1(t) | Term::Proj2(t) | Term::TyApp(t, _) => 1 + t.size(),
        }
    }

    /// Number of variable occurrences, free or bound.
    pub fn var_occurrences(&self) -> usize {
        match self {
            Term::Var(..) => 1,
            Term::Star => 0,
            Term::Abs(_, _, b) | Term::TyAbs(_, b) => b.var_occurrences(),
            Term::App(a, b) | Term::Pair(a, b) => a.var_occurrences() + b.var_occurrences(),
            Term::Proj1(t) | Term::Proj2(t) | Term::TyApp(t, _) => t.var_occurrences(),
        }
    }

    /// Free term variables with their annotations.
    pub fn free_vars(&self) -> BTreeSet<(String, Type)> {
        let mut out = BTreeSet::new();
        self.collect_fv(&mut Vec::new(), &mut out);
        out
    }

    fn collect_fv<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<(String, Type)>) {
        match self {
            Term::Var(x, ty) => {
                if !bound.contains(&x.as_str()) {
                    out.insert((x.clone(), ty.clone()));
                }
            }
            Term::Star => {}
            Term::Abs(x, _, b) => {
                bound.push(x);
                b.collect_fv(bound, out);
                bound.pop();
            }
            Term::App(a, b) | Term::Pair(a, b) => {
                a.collect_fv(bound, out);
                b.collect_fv(bound, out);
            }
            Term::Proj1(t) | Term::Proj2(t) | Term::TyApp(t, _) | Term::TyAbs(_, t) => {
                t.collect_fv(bound, out)
            }
        }
    }

    pub fn free_var_names(&self) -> BTreeSet<String> {
        self.free_vars().into_iter().map(|(n, _)| n).collect()
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        match self {
            Term::Var(y, _) => y == x,
            Term::Star => false,
            Term::Abs(y, _, b) => y != x && b.has_free_var(x),
            Term::App(a, b) | Term::Pair(a, b) => a.has_free_var(x) || b.has_free_var(x),
            Term::Proj1(t) | Term::Proj2(t) | Term::TyApp(t, _) | Term::TyAbs(_, t) => {
                t.has_free_var(x)
            }
        }
    }

    /// Type variables free in any annotation or type argument.
    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_ftv(&mut Vec::new(), &mut out);
        out
    }

    fn collect_ftv<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(_, ty) => ty.collect_ftv(bound, out),
            Term::Star => {}
            Term::Abs(_, ty, b) => {
                ty.collect_ftv(bound, out);
                b.collect_ftv(bound, out);
            }
            Term::App(a, b) | Term::Pair(a, b) => {
                a.collect_ftv(bound, out);
                b.collect_ftv(bound, out);
            }
            Term::Proj1(t) | Term::Proj2(t) => t.collect_ftv(bound, out),
            Term::TyAbs(x, b) => {
                bound.push(x);
                b.collect_ftv(bound, out);
                bound.pop();
            }
            Term::TyApp(t, ty) => {
                t.collect_ftv(bound, out);
                ty.collect_ftv(bound, out);
            }
        }
    }

    pub fn has_free_type_var(&self, x: &str) -> bool {
        match self {
            Term::Var(_, ty) => ty.has_free_type_var(x),
            Term::Star => false,
            Term::Abs(_, ty, b) => ty.has_free_type_var(x) || b.has_free_type_var(x),
            Term::App(a, b) | Term::Pair(a, b) => a.has_free_type_var(x) || b.has_free_type_var(x),
            Term::Proj1(t) | Term::Proj2(t) => t.has_free_type_var(x),
            Term::TyAbs(y, b) => y != x && b.has_free_type_var(x),
            Term::TyApp(t, ty) => t.has_free_type_var(x) || ty.has_free_type_var(x),
        }
    }

    /// Every term-variable name in the term, bound or free.
    pub fn all_var_names(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.visit(&mut |t| {
            if let Term::Var(x, _) | Term::Abs(x, _, _) = t {
                out.insert(x.clone());
            }
        });
        out
    }

    /// Every type-variable name in the term, bound or free.
    pub fn all_type_var_names(&self) -> HashSet<String> {
        let mut out = HashSet::new();
        self.visit(&mut |t| match t {
            Term::Var(_, ty) | Term::Abs(_, ty, _) | Term::TyApp(_, ty) => {
                ty.collect_all_names(&mut out)
            }
            Term::TyAbs(x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal of all subterm occurrences.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(..) | Term::Star => vec![],
            Term::Abs(_, _, b) | Term::TyAbs(_, b) => vec![b],
            Term::App(a, b) | Term::Pair(a, b) => vec![a, b],
            Term::Proj1(t) | Term::Proj2(t) | Term::TyApp(t, _) => vec![t],
        }
    }

    /// All subterm occurrences with their positions, in pre-order.
    pub fn positions(&self) -> Vec<(Position, &Term)> {
        let mut out = Vec::new();
        self.collect_positions(Position::root(), &mut out);
        out
    }

    fn collect_positions<'a>(&'a self, here: Position, out: &mut Vec<(Position, &'a Term)>) {
        let kids = self.children();
        out.push((here.clone(), self));
        for (i, c) in kids.into_iter().enumerate() {
            c.collect_positions(here.child(i), out);
        }
    }

    pub fn subterm(&self, p: &Position) -> Option<&Term> {
        let mut cur = self;
        for &i in &p.0 {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Replaces the subterm at `p`. `None` if `p` is not a valid position.
    pub fn replace_at(&self, p: &Position, new: Term) -> Option<Term> {
        self.replace_rec(&p.0, new)
    }

    fn replace_rec(&self, path: &[usize], new: Term) -> Option<Term> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(new);
        };
        Some(match (self, i) {
            (Term::Abs(x, ty, b), 0) => Term::Abs(x.clone(), ty.clone(), Box::new(b.replace_rec(rest, new)?)),
            (Term::TyAbs(x, b), 0) => Term::TyAbs(x.clone(), Box::new(b.replace_rec(rest, new)?)),
            (Term::App(a, b), 0) => Term::App(Box::new(a.replace_rec(rest, new)?), b.clone()),
            (Term::App(a, b), 1) => Term::App(a.clone(), Box::new(b.replace_rec(rest, new)?)),
            (Term::Pair(a, b), 0) => Term::Pair(Box::new(a.replace_rec(rest, new)?), b.clone()),
            (Term::Pair(a, b), 1) => Term::Pair(a.clone(), Box::new(b.replace_rec(rest, new)?)),
            (Term::Proj1(t), 0) => Term::Proj1(Box::new(t.replace_rec(rest, new)?)),
            (Term::Proj2(t), 0) => Term::Proj2(Box::new(t.replace_rec(rest, new)?)),
            (Term::TyApp(t, ty), 0) => Term::TyApp(Box::new(t.replace_rec(rest, new)?), ty.clone()),
            _ => return None,
        })
    }

    /// Replaces every `*` by `with`.
    pub fn replace_stars(&self, with: &Term) -> Term {
        self.map_children(&mut |t| match t {
            Term::Star => Some(with.clone()),
            _ => None,
        })
    }

    /// Rebuilds the term bottom-up, letting `f` override any node. Binders are
    /// kept as they are, so `f` must not introduce capturable variables.
    fn map_children(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        if let Some(t) = f(self) {
            return t;
        }
        match self {
            Term::Var(..) | Term::Star => self.clone(),
            Term::Abs(x, ty, b) => Term::Abs(x.clone(), ty.clone(), Box::new(b.map_children(f))),
            Term::TyAbs(x, b) => Term::TyAbs(x.clone(), Box::new(b.map_children(f))),
            Term::App(a, b) => Term::app(a.map_children(f), b.map_children(f)),
            Term::Pair(a, b) => Term::pair(a.map_children(f), b.map_children(f)),
            Term::Proj1(t) => Term::proj1(t.map_children(f)),
            Term::Proj2(t) => Term::proj2(t.map_children(f)),
            Term::TyApp(t, ty) => Term::ty_app(t.map_children(f), ty.clone()),
        }
    }

    /// Capture-avoiding `self[x := u]`. Every free occurrence of `x` must
    /// carry an annotation α-equal to the type of `u`.
    pub fn subst(&self, x: &str, u: &Term) -> Result<Term, SubstError> {
        let u_ty = crate::typing::synth(u).ok_or(SubstError::IllTyped)?;
        for (name, ty) in self.free_vars() {
            if name == x && ty != u_ty {
                return Err(SubstError::TypeMismatch { var: name, expected: ty, found: u_ty });
            }
        }
        Ok(self.subst_unchecked(x, u))
    }

    /// `self[x := u]` without the annotation check.
    pub fn subst_unchecked(&self, x: &str, u: &Term) -> Term {
        let fv = u.free_var_names();
        let ftv = u.free_type_vars();
        self.subst_rec(x, u, &fv, &ftv)
    }

    fn subst_rec(
        &self,
        x: &str,
        u: &Term,
        fv: &BTreeSet<String>,
        ftv: &BTreeSet<String>,
    ) -> Term {
        match self {
            Term::Var(y, _) if y == x => u.clone(),
            Term::Var(..) | Term::Star => self.clone(),
            Term::Abs(y, ty, body) => {
                if y == x || !body.has_free_var(x) {
                    return self.clone();
                }
                if fv.contains(y) {
                    let mut avoid = body.free_var_names();
                    avoid.extend(fv.iter().cloned());
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(y, |n| avoid.contains(n));
                    let renamed = body.rename_var(y, &fresh);
                    Term::Abs(fresh, ty.clone(), Box::new(renamed.subst_rec(x, u, fv, ftv)))
                } else {
                    Term::Abs(y.clone(), ty.clone(), Box::new(body.subst_rec(x, u, fv, ftv)))
                }
            }
            Term::TyAbs(a, body) => {
                if !body.has_free_var(x) {
                    return self.clone();
                }
                if ftv.contains(a) {
                    let mut avoid = body.free_type_vars();
                    avoid.extend(ftv.iter().cloned());
                    let fresh = fresh_name(a, |n| avoid.contains(n));
                    let renamed = body.subst_type(a, &Type::Var(fresh.clone()));
                    Term::TyAbs(fresh, Box::new(renamed.subst_rec(x, u, fv, ftv)))
                } else {
                    Term::TyAbs(a.clone(), Box::new(body.subst_rec(x, u, fv, ftv)))
                }
            }
            Term::App(a, b) => Term::app(a.subst_rec(x, u, fv, ftv), b.subst_rec(x, u, fv, ftv)),
            Term::Pair(a, b) => Term::pair(a.subst_rec(x, u, fv, ftv), b.subst_rec(x, u, fv, ftv)),
            Term::Proj1(t) => Term::proj1(t.subst_rec(x, u, fv, ftv)),
            Term::Proj2(t) => Term::proj2(t.subst_rec(x, u, fv, ftv)),
            Term::TyApp(t, ty) => Term::ty_app(t.subst_rec(x, u, fv, ftv), ty.clone()),
        }
    }

    /// Renames free occurrences of `from` to `to`; `to` must not occur free.
    fn rename_var(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(y, ty) if y == from => Term::Var(to.to_string(), ty.clone()),
            Term::Var(..) | Term::Star => self.clone(),
            Term::Abs(y, _, _) if y == from => self.clone(),
            Term::Abs(y, ty, b) => Term::Abs(y.clone(), ty.clone(), Box::new(b.rename_var(from, to))),
            Term::TyAbs(a, b) => Term::TyAbs(a.clone(), Box::new(b.rename_var(from, to))),
            Term::App(a, b) => Term::app(a.rename_var(from, to), b.rename_var(from, to)),
            Term::Pair(a, b) => Term::pair(a.rename_var(from, to), b.rename_var(from, to)),
            Term::Proj1(t) => Term::proj1(t.rename_var(from, to)),
            Term::Proj2(t) => Term::proj2(t.rename_var(from, to)),
            Term::TyApp(t, ty) => Term::ty_app(t.rename_var(from, to), ty.clone()),
        }
    }

    /// Capture-avoiding `self[X := phi]` over annotations, type arguments and
    /// type abstractions.
    pub fn subst_type(&self, x: &str, phi: &Type) -> Term {
        let ftv = phi.free_type_vars();
        self.subst_type_rec(x, phi, &ftv)
    }

    fn subst_type_rec(&self, x: &str, phi: &Type, ftv: &BTreeSet<String>) -> Term {
        match self {
            Term::Var(y, ty) => Term::Var(y.clone(), ty.subst_with(x, phi, ftv)),
            Term::Star => Term::Star,
            Term::Abs(y, ty, b) => Term::Abs(
                y.clone(),
                ty.subst_with(x, phi, ftv),
                Box::new(b.subst_type_rec(x, phi, ftv)),
            ),
            Term::TyAbs(a, body) => {
                if a == x || !body.has_free_type_var(x) {
                    return self.clone();
                }
                if ftv.contains(a) {
                    let mut avoid = body.free_type_vars();
                    avoid.extend(ftv.iter().cloned());
                    avoid.insert(x.to_string());
                    let fresh = fresh_name(a, |n| avoid.contains(n));
                    let renamed = body.subst_type(a, &Type::Var(fresh.clone()));
                    Term::TyAbs(fresh, Box::new(renamed.subst_type_rec(x, phi, ftv)))
                } else {
                    Term::TyAbs(a.clone(), Box::new(body.subst_type_rec(x, phi, ftv)))
                }
            }
            Term::App(a, b) => Term::app(a.subst_type_rec(x, phi, ftv), b.subst_type_rec(x, phi, ftv)),
            Term::Pair(a, b) => {
                Term::pair(a.subst_type_rec(x, phi, ftv), b.subst_type_rec(x, phi, ftv))
            }
            Term::Proj1(t) => Term::proj1(t.subst_type_rec(x, phi, ftv)),
            Term::Proj2(t) => Term::proj2(t.subst_type_rec(x, phi, ftv)),
            Term::TyApp(t, ty) => {
                Term::ty_app(t.subst_type_rec(x, phi, ftv), ty.subst_with(x, phi, ftv))
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_type(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::frontend::print_term(self))
    }
}
