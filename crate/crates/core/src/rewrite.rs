//! Rule schemata, redex enumeration and one-step contraction.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::canon::{is_canonical_at, is_iso_top, star, SystemId};
use crate::syntax::{fresh_name, Position, Term, TermKey, Type};
use crate::typing::{synth, type_of};

/// Rule schemata. The declaration order is the tie-break priority used when
/// several rules apply at the same position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Beta,
    Pi1,
    Pi2,
    SP,
    SPTop1,
    SPTop2,
    Eta,
    EtaTop,
    Beta2,
    Eta2,
    G,
    GAux,
    T,
}

impl RuleId {
    pub const ALL: [RuleId; 13] = [
        RuleId::Beta,
        RuleId::Pi1,
        RuleId::Pi2,
        RuleId::SP,
        RuleId::SPTop1,
        RuleId::SPTop2,
        RuleId::Eta,
        RuleId::EtaTop,
        RuleId::Beta2,
        RuleId::Eta2,
        RuleId::G,
        RuleId::GAux,
        RuleId::T,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Beta => "beta",
            RuleId::Pi1 => "pi1",
            RuleId::Pi2 => "pi2",
            RuleId::SP => "sp",
            RuleId::SPTop1 => "sp_top1",
            RuleId::SPTop2 => "sp_top2",
            RuleId::Eta => "eta",
            RuleId::EtaTop => "eta_top",
            RuleId::Beta2 => "beta2",
            RuleId::Eta2 => "eta2",
            RuleId::G => "g",
            RuleId::GAux => "g_aux",
            RuleId::T => "t",
        }
    }

    fn bit(self) -> u16 {
        1 << (self as u16)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RuleSet(u16);

impl RuleSet {
    pub fn empty() -> RuleSet {
        RuleSet(0)
    }

    pub fn of(rules: &[RuleId]) -> RuleSet {
        RuleSet(rules.iter().fold(0, |acc, r| acc | r.bit()))
    }

    /// The rules a system activates.
    pub fn for_system(system: SystemId) -> RuleSet {
        use RuleId::*;
        let base = [Beta, Pi1, Pi2, Eta, SP];
        let completion = [G, EtaTop, SPTop1, SPTop2];
        match system {
            SystemId::Naive => RuleSet::of(&base).with(T),
            SystemId::Cd => RuleSet::of(&base).union(RuleSet::of(&completion)),
            SystemId::Cd2 => RuleSet::for_system(SystemId::Cd).with(Beta2).with(Eta2),
            SystemId::Cd2Param => RuleSet::for_system(SystemId::Cd2).with(GAux),
        }
    }

    pub fn contains(self, rule: RuleId) -> bool {
        self.0 & rule.bit() != 0
    }

    pub fn with(self, rule: RuleId) -> RuleSet {
        RuleSet(self.0 | rule.bit())
    }

    pub fn without(self, rule: RuleId) -> RuleSet {
        RuleSet(self.0 & !rule.bit())
    }

    pub fn union(self, other: RuleSet) -> RuleSet {
        RuleSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = RuleId> {
        RuleId::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

/// A system (which fixes Iso(Top) and the stars) together with the active
/// rules. Usually the system's own rule set; the metatheory harness also
/// runs variants with individual rules switched off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RewriteSystem {
    pub id: SystemId,
    pub rules: RuleSet,
}

impl RewriteSystem {
    pub fn new(id: SystemId) -> Self {
        RewriteSystem { id, rules: RuleSet::for_system(id) }
    }

    pub fn without(self, rule: RuleId) -> Self {
        RewriteSystem { rules: self.rules.without(rule), ..self }
    }

    pub fn with_rules(self, rules: RuleSet) -> Self {
        RewriteSystem { rules, ..self }
    }

    pub fn enables(&self, rule: RuleId) -> bool {
        self.rules.contains(rule)
    }
}

impl From<SystemId> for RewriteSystem {
    fn from(id: SystemId) -> Self {
        RewriteSystem::new(id)
    }
}

/// Matching data for a `GAux` step: `term` has type `X -> X` and
/// `term[X := instance]` is the redex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generalization {
    pub type_var: String,
    pub instance: Type,
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub position: Position,
    pub rule: RuleId,
    /// The subterm that replaces the one at `position`.
    pub contractum: Term,
    pub witness: Option<Generalization>,
}

impl Redex {
    /// Contracts this redex in `t` without re-checking that it matches.
    pub fn contract(&self, t: &Term) -> Option<Term> {
        t.replace_at(&self.position, self.contractum.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("stale redex: rule {rule} does not apply at {position}")]
    StaleRedex { rule: RuleId, position: Position },
}

/// Every redex of every active rule, in pre-order of position and then by
/// rule priority. Overlapping redexes are all reported.
pub fn redexes(t: &Term, system: &RewriteSystem) -> Vec<Redex> {
    let mut out = Vec::new();
    for (pos, sub) in t.positions() {
        for (rule, contractum, witness) in local_redexes(sub, system) {
            out.push(Redex { position: pos.clone(), rule, contractum, witness });
        }
    }
    out
}

/// Replaces the subterm at `r.position` after checking that `r` still
/// matches there.
pub fn apply_redex(t: &Term, r: &Redex, system: &RewriteSystem) -> Result<Term, RewriteError> {
    let stale = || RewriteError::StaleRedex { rule: r.rule, position: r.position.clone() };
    let sub = t.subterm(&r.position).ok_or_else(stale)?;
    let matches = local_redexes(sub, system)
        .into_iter()
        .any(|(rule, c, _)| rule == r.rule && c == r.contractum);
    if !matches {
        return Err(stale());
    }
    r.contract(t).ok_or_else(stale)
}

/// One-step reducts, deduplicated on (rule, α-class of the result).
pub fn successors(t: &Term, system: &RewriteSystem) -> Vec<(Redex, Term)> {
    let mut seen: HashSet<(RuleId, TermKey)> = HashSet::new();
    let mut out = Vec::new();
    for r in redexes(t, system) {
        let result = r.contract(t).expect("redex positions come from the term");
        if seen.insert((r.rule, result.key())) {
            out.push((r, result));
        }
    }
    out
}

fn identity_on(phi: &Type) -> Term {
    Term::abs("x", phi.clone(), Term::var("x", phi.clone()))
}

/// Rules that match at the root of `u`, in priority order.
fn local_redexes(u: &Term, sys: &RewriteSystem) -> Vec<(RuleId, Term, Option<Generalization>)> {
    let on = |r| sys.enables(r);
    let iso = |ty: &Type| is_iso_top(ty, sys.id);
    let mut out = Vec::new();

    match u {
        Term::App(f, arg) => {
            if let (true, Term::Abs(x, _, body)) = (on(RuleId::Beta), &**f) {
                out.push((RuleId::Beta, body.subst_unchecked(x, arg), None));
            }
        }
        Term::Proj1(p) => {
            if let (true, Term::Pair(a, _)) = (on(RuleId::Pi1), &**p) {
                out.push((RuleId::Pi1, (**a).clone(), None));
            }
        }
        Term::Proj2(p) => {
            if let (true, Term::Pair(_, b)) = (on(RuleId::Pi2), &**p) {
                out.push((RuleId::Pi2, (**b).clone(), None));
            }
        }
        Term::Pair(l, r) => {
            if let (Term::Proj1(a), Term::Proj2(b)) = (&**l, &**r) {
                if on(RuleId::SP) && a == b {
                    out.push((RuleId::SP, (**a).clone(), None));
                }
            }
            if let (true, Term::Proj1(inner)) = (on(RuleId::SPTop1), &**l) {
                if let Some(Type::Prod(_, tau)) = synth(inner) {
                    if iso(&tau) && is_canonical_at(r, &tau, sys.id) {
                        out.push((RuleId::SPTop1, (**inner).clone(), None));
                    }
                }
            }
            if let (true, Term::Proj2(inner)) = (on(RuleId::SPTop2), &**r) {
                if let Some(Type::Prod(tau, _)) = synth(inner) {
                    if iso(&tau) && is_canonical_at(l, &tau, sys.id) {
                        out.push((RuleId::SPTop2, (**inner).clone(), None));
                    }
                }
            }
        }
        Term::Abs(x, tau, body) => {
            if let Term::App(f, arg) = &**body {
                if !f.has_free_var(x) {
                    if on(RuleId::Eta) && matches!(&**arg, Term::Var(y, _) if y == x) {
                        out.push((RuleId::Eta, (**f).clone(), None));
                    }
                    if on(RuleId::EtaTop) && iso(tau) && is_canonical_at(arg, tau, sys.id) {
                        out.push((RuleId::EtaTop, (**f).clone(), None));
                    }
                }
            }
        }
        Term::TyApp(f, phi) => {
            if let (true, Term::TyAbs(x, body)) = (on(RuleId::Beta2), &**f) {
                out.push((RuleId::Beta2, body.subst_type(x, phi), None));
            }
        }
        Term::TyAbs(x, body) => {
            if let (true, Term::TyApp(s, Type::Var(y))) = (on(RuleId::Eta2), &**body) {
                if y == x && !s.has_free_type_var(x) {
                    out.push((RuleId::Eta2, (**s).clone(), None));
                }
            }
        }
        Term::Var(..) | Term::Star => {}
    }

    if on(RuleId::G) || on(RuleId::GAux) || on(RuleId::T) {
        if let Some(ty) = synth(u) {
            if on(RuleId::G) && iso(&ty) && !is_canonical_at(u, &ty, sys.id) {
                let s = star(&ty, sys.id).expect("type checked to be terminal");
                out.push((RuleId::G, s, None));
            }
            if on(RuleId::GAux) {
                if let Some(g) = generalize_to_identity(u, &ty, sys) {
                    out.push((RuleId::GAux, identity_on(&g.instance), Some(g)));
                }
            }
            if on(RuleId::T) && ty == Type::Top && !matches!(u, Term::Star) {
                out.push((RuleId::T, Term::Star, None));
            }
        }
    }
    out
}

/// Occurrence counts above this only try the all-occurrences candidate.
pub const MAX_GAUX_OCCURRENCES: usize = 12;

/// Decides the side condition of `GAux` for `u : ty`: `ty` is `phi -> phi`
/// with `phi` not terminal, `u` is not the identity, and `u` is
/// `s[X := phi]` for some `s : X -> X` whose free variables' types do not
/// mention `X`.
///
/// Candidates for `s` abstract a subset of the occurrences of `phi` in the
/// binder annotations and type arguments of `u`; annotations of free
/// variables stay fixed. The all-occurrences candidate is tried first, then
/// every other non-empty subset, which is exponential in the number of
/// occurrences.
fn generalize_to_identity(u: &Term, ty: &Type, sys: &RewriteSystem) -> Option<Generalization> {
    let Type::Arrow(dom, cod) = ty else { return None };
    if dom != cod || is_iso_top(dom, sys.id) || *u == identity_on(dom) {
        return None;
    }
    let phi: &Type = dom;
    let mut names = u.all_type_var_names();
    let mut phi_names = HashSet::new();
    phi.collect_all_names(&mut phi_names);
    names.extend(phi_names);
    let x = fresh_name("X", |n| names.contains(n));

    let ctx = GenCtx { phi, phi_ftv: phi.free_type_vars().into_iter().collect(), var: &x };
    let count = ctx.count(u);
    if count == 0 {
        return None;
    }
    let all = if count >= 64 { u64::MAX } else { (1u64 << count) - 1 };
    let candidates: Box<dyn Iterator<Item = u64>> = if count > MAX_GAUX_OCCURRENCES {
        Box::new(std::iter::once(all))
    } else {
        Box::new((1..=all).rev())
    };
    let target = Type::arrow(Type::Var(x.clone()), Type::Var(x.clone()));
    for mask in candidates {
        let s = ctx.build(u, mask);
        if type_of(&s, sys.id).ok().as_ref() == Some(&target) && s.subst_type(&x, phi) == *u {
            return Some(Generalization { type_var: x, instance: phi.clone(), term: s });
        }
    }
    None
}

struct GenCtx<'a> {
    phi: &'a Type,
    phi_ftv: Vec<String>,
    var: &'a str,
}

impl GenCtx<'_> {
    fn count(&self, u: &Term) -> usize {
        let mut n = 0;
        self.walk(u, 0, &mut n, &mut Vec::new(), &mut HashMap::new());
        n
    }

    fn build(&self, u: &Term, mask: u64) -> Term {
        self.walk(u, mask, &mut 0, &mut Vec::new(), &mut HashMap::new())
    }

    /// Rebuilds `t`, numbering occurrences of `phi` in traversal order and
    /// abstracting those selected by `mask`. Bound variables take the
    /// (possibly rewritten) annotation of their binder.
    fn walk(
        &self,
        t: &Term,
        mask: u64,
        counter: &mut usize,
        tbound: &mut Vec<String>,
        binders: &mut HashMap<String, Vec<Type>>,
    ) -> Term {
        match t {
            Term::Var(x, _) => match binders.get(x).and_then(|v| v.last()) {
                Some(bty) => Term::Var(x.clone(), bty.clone()),
                None => t.clone(),
            },
            Term::Star => Term::Star,
            Term::Abs(x, ty, body) => {
                let nty = self.walk_type(ty, mask, counter, tbound);
                binders.entry(x.clone()).or_default().push(nty.clone());
                let nb = self.walk(body, mask, counter, tbound, binders);
                binders.get_mut(x).map(|v| v.pop());
                Term::Abs(x.clone(), nty, Box::new(nb))
            }
            Term::App(a, b) => {
                let na = self.walk(a, mask, counter, tbound, binders);
                Term::app(na, self.walk(b, mask, counter, tbound, binders))
            }
            Term::Pair(a, b) => {
                let na = self.walk(a, mask, counter, tbound, binders);
                Term::pair(na, self.walk(b, mask, counter, tbound, binders))
            }
            Term::Proj1(p) => Term::proj1(self.walk(p, mask, counter, tbound, binders)),
            Term::Proj2(p) => Term::proj2(self.walk(p, mask, counter, tbound, binders)),
            Term::TyAbs(a, body) => {
                tbound.push(a.clone());
                let nb = self.walk(body, mask, counter, tbound, binders);
                tbound.pop();
                Term::TyAbs(a.clone(), Box::new(nb))
            }
            Term::TyApp(f, ty) => {
                let nf = self.walk(f, mask, counter, tbound, binders);
                Term::ty_app(nf, self.walk_type(ty, mask, counter, tbound))
            }
        }
    }

    fn walk_type(&self, ty: &Type, mask: u64, counter: &mut usize, tbound: &mut Vec<String>) -> Type {
        let captured = self.phi_ftv.iter().any(|v| tbound.contains(v));
        if !captured && ty == self.phi {
            let i = *counter;
            *counter += 1;
            return if i < 64 && mask & (1 << i) != 0 { Type::var(self.var) } else { ty.clone() };
        }
        match ty {
            Type::Top | Type::Var(_) => ty.clone(),
            Type::Prod(a, b) => {
                let na = self.walk_type(a, mask, counter, tbound);
                Type::prod(na, self.walk_type(b, mask, counter, tbound))
            }
            Type::Arrow(a, b) => {
                let na = self.walk_type(a, mask, counter, tbound);
                Type::arrow(na, self.walk_type(b, mask, counter, tbound))
            }
            Type::Forall(y, b) => {
                tbound.push(y.clone());
                let nb = self.walk_type(b, mask, counter, tbound);
                tbound.pop();
                Type::Forall(y.clone(), Box::new(nb))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Type {
        Type::var("A")
    }

    fn sys(id: SystemId) -> RewriteSystem {
        RewriteSystem::new(id)
    }

    fn rules_at_root(t: &Term, s: &RewriteSystem) -> Vec<RuleId> {
        redexes(t, s).into_iter().filter(|r| r.position.is_root()).map(|r| r.rule).collect()
    }

    #[test]
    fn rule_sets() {
        use RuleId::*;
        let naive: Vec<_> = RuleSet::for_system(SystemId::Naive).iter().collect();
        assert_eq!(naive, vec![Beta, Pi1, Pi2, SP, Eta, T]);
        let cd: Vec<_> = RuleSet::for_system(SystemId::Cd).iter().collect();
        assert_eq!(cd, vec![Beta, Pi1, Pi2, SP, SPTop1, SPTop2, Eta, EtaTop, G]);
        assert!(RuleSet::for_system(SystemId::Cd2).contains(Beta2));
        assert!(!RuleSet::for_system(SystemId::Cd2).contains(GAux));
        assert!(RuleSet::for_system(SystemId::Cd2Param).contains(GAux));
    }

    #[test]
    fn eta_and_g_overlap() {
        let y = Term::var("y", Type::arrow(a(), Type::Top));
        let t = Term::abs("x", a(), Term::app(y, Term::var("x", a())));
        let rs = redexes(&t, &sys(SystemId::Cd));
        let summary: Vec<_> = rs.iter().map(|r| (r.position.clone(), r.rule)).collect();
        assert_eq!(
            summary,
            vec![
                (Position::root(), RuleId::Eta),
                (Position::root(), RuleId::G),
                (Position(vec![0]), RuleId::G),
                (Position(vec![0, 0]), RuleId::G),
            ]
        );
    }

    #[test]
    fn sp_is_non_left_linear() {
        let ab = Type::prod(a(), Type::var("B"));
        let t = Term::pair(Term::proj1(Term::var("x", ab.clone())), Term::proj2(Term::var("y", ab)));
        assert!(redexes(&t, &sys(SystemId::Cd)).is_empty());
    }

    #[test]
    fn canonical_terms_are_normal() {
        let t = Term::abs("x", a(), Term::Star);
        assert!(redexes(&t, &sys(SystemId::Cd)).is_empty());
    }

    #[test]
    fn sp_top1() {
        let u = Term::var("u", Type::prod(a(), Type::Top));
        let t = Term::pair(Term::proj1(u.clone()), Term::Star);
        let r = redexes(&t, &sys(SystemId::Cd))
            .into_iter()
            .find(|r| r.position.is_root() && r.rule == RuleId::SPTop1)
            .unwrap();
        assert_eq!(r.contractum, u);
    }

    #[test]
    fn sp_top2() {
        let u = Term::var("u", Type::prod(Type::arrow(a(), Type::Top), a()));
        let t = Term::pair(Term::abs("z", a(), Term::Star), Term::proj2(u.clone()));
        assert!(rules_at_root(&t, &sys(SystemId::Cd)).contains(&RuleId::SPTop2));
        // star component must be canonical for the component type
        let t = Term::pair(Term::abs("z", a(), Term::var("k", Type::Top)), Term::proj2(u));
        assert!(!rules_at_root(&t, &sys(SystemId::Cd)).contains(&RuleId::SPTop2));
    }

    #[test]
    fn gaux_on_instantiated_parametric_variable() {
        let z = Type::var("Z");
        let w = Term::var("w", crate::canon::parametric_identity_type());
        let t = Term::ty_app(w.clone(), z.clone());
        let r = redexes(&t, &sys(SystemId::Cd2Param))
            .into_iter()
            .find(|r| r.position.is_root() && r.rule == RuleId::GAux)
            .expect("gaux at root");
        assert_eq!(r.contractum, identity_on(&z));
        let g = r.witness.unwrap();
        assert_eq!(g.term.subst_type(&g.type_var, &g.instance), t);
        let xv = Type::var(&g.type_var);
        assert_eq!(type_of(&g.term, SystemId::Cd2Param).unwrap(), Type::arrow(xv.clone(), xv));
    }

    #[test]
    fn gaux_rejects_monomorphic_variables_and_identity() {
        let s = sys(SystemId::Cd2Param);
        let f = Term::var("f", Type::arrow(a(), a()));
        assert!(!rules_at_root(&f, &s).contains(&RuleId::GAux));
        assert!(!rules_at_root(&identity_on(&a()), &s).contains(&RuleId::GAux));
        // terminal instance: Top -> Top is handled by G instead
        let w = Term::var("w", crate::canon::parametric_identity_type());
        let t = Term::ty_app(w, Type::Top);
        let rules = rules_at_root(&t, &s);
        assert!(rules.contains(&RuleId::G));
        assert!(!rules.contains(&RuleId::GAux));
    }

    #[test]
    fn gaux_generalizes_a_subset_of_occurrences() {
        // \x:A. p1 <x, k> with k : A -> A free; only the binder annotation
        // generalizes, since k's annotation is fixed.
        let k = Term::var("k", Type::arrow(a(), a()));
        let t = Term::abs("x", a(), Term::proj1(Term::pair(Term::var("x", a()), k)));
        let r = redexes(&t, &sys(SystemId::Cd2Param))
            .into_iter()
            .find(|r| r.position.is_root() && r.rule == RuleId::GAux)
            .expect("gaux at root");
        assert_eq!(r.contractum, identity_on(&a()));
    }

    #[test]
    fn beta2_and_eta2() {
        let x = Type::var("X");
        let id = Term::ty_abs("X", Term::abs("x", x.clone(), Term::var("x", x.clone())));
        let t = Term::ty_app(id, a());
        assert_eq!(rules_at_root(&t, &sys(SystemId::Cd2)), vec![RuleId::Beta2]);

        let w = Term::var("w", Type::forall("Y", Type::arrow(Type::var("Y"), a())));
        let t = Term::ty_abs("X", Term::ty_app(w.clone(), x.clone()));
        let rs = redexes(&t, &sys(SystemId::Cd2));
        assert_eq!(rs[0].rule, RuleId::Eta2);
        assert_eq!(rs[0].contractum, w);
    }

    #[test]
    fn apply_and_stale() {
        let s = sys(SystemId::Cd);
        let y = Term::var("y", a());
        let t = Term::app(Term::abs("x", a(), Term::var("x", a())), y.clone());
        let r = redexes(&t, &s).remove(0);
        assert_eq!(apply_redex(&t, &r, &s).unwrap(), y);
        assert!(matches!(apply_redex(&y, &r, &s), Err(RewriteError::StaleRedex { .. })));
    }

    #[test]
    fn g_then_eta_top() {
        let s = sys(SystemId::Cd);
        let y = Term::var("y", Type::arrow(Type::Top, Type::var("B")));
        let t = Term::abs("x", Type::Top, Term::app(y.clone(), Term::var("x", Type::Top)));
        let g = redexes(&t, &s).into_iter().find(|r| r.rule == RuleId::G).unwrap();
        assert_eq!(g.position, Position(vec![0, 1]));
        let t1 = apply_redex(&t, &g, &s).unwrap();
        assert_eq!(t1, Term::abs("x", Type::Top, Term::app(y.clone(), Term::Star)));
        let e = redexes(&t1, &s).into_iter().find(|r| r.rule == RuleId::EtaTop).unwrap();
        assert!(e.position.is_root());
        assert_eq!(apply_redex(&t1, &e, &s).unwrap(), y);
    }

    #[test]
    fn successors_dedup() {
        let s = sys(SystemId::Cd);
        let x = Term::var("x", Type::prod(Type::Top, Type::Top));
        let succ = successors(&x, &s);
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0.rule, RuleId::G);
        assert_eq!(succ[0].1, Term::pair(Term::Star, Term::Star));
        assert!(successors(&Term::Star, &s).is_empty());
    }

    #[test]
    fn no_g_at_non_terminal_type_application() {
        let x = Type::var("X");
        let xy = Type::arrow(x.clone(), Type::var("Y"));
        let body = Term::abs(
            "x",
            x.clone(),
            Term::abs("y", xy.clone(), Term::app(Term::var("y", xy), Term::var("x", x))),
        );
        let t = Term::ty_app(Term::ty_abs("X", body), Type::Top);
        let succ = successors(&t, &sys(SystemId::Cd2));
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0.rule, RuleId::Beta2);
    }
}
