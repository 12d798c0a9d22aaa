//! Types isomorphic to `Top`, their canonical inhabitants, and the
//! canonicity and star-freeness tests.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::syntax::{Term, Type};
use crate::typing::synth;

/// Which rewriting system is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemId {
    /// Simply typed, with the naive `s : Top -> *` rule.
    Naive,
    /// The completed simply typed system.
    Cd,
    /// Polymorphic extension of `Cd`.
    Cd2,
    /// `Cd2` with `forall X. X -> X` treated as terminal and the auxiliary
    /// identity rule enabled. Strong normalization is open for this system.
    Cd2Param,
}

impl SystemId {
    pub const ALL: [SystemId; 4] = [SystemId::Naive, SystemId::Cd, SystemId::Cd2, SystemId::Cd2Param];

    pub fn is_polymorphic(self) -> bool {
        matches!(self, SystemId::Cd2 | SystemId::Cd2Param)
    }

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Naive => "naive",
            SystemId::Cd => "cd",
            SystemId::Cd2 => "cd2",
            SystemId::Cd2Param => "cd2param",
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown system `{0}` (expected naive, cd, cd2 or cd2param)")]
pub struct UnknownSystem(pub String);

impl FromStr for SystemId {
    type Err = UnknownSystem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownSystem(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("type {0} is not isomorphic to Top in this system")]
pub struct NotIsoTop(pub Type);

/// `forall X. X -> X`
pub fn parametric_identity_type() -> Type {
    let x = Type::var("X");
    Type::forall("X", Type::arrow(x.clone(), x))
}

fn is_parametric_identity(tau: &Type) -> bool {
    matches!(tau, Type::Forall(..)) && *tau == parametric_identity_type()
}

pub fn is_iso_top(tau: &Type, system: SystemId) -> bool {
    match (tau, system) {
        (Type::Top, _) => true,
        (_, SystemId::Naive) => false,
        (Type::Arrow(_, cod), _) => is_iso_top(cod, system),
        (Type::Prod(a, b), _) => is_iso_top(a, system) && is_iso_top(b, system),
        (Type::Forall(..), SystemId::Cd2Param) if is_parametric_identity(tau) => true,
        (Type::Forall(_, body), SystemId::Cd2 | SystemId::Cd2Param) => is_iso_top(body, system),
        _ => false,
    }
}

/// The canonical inhabitant of `tau`, built structurally.
pub fn star(tau: &Type, system: SystemId) -> Result<Term, NotIsoTop> {
    if !is_iso_top(tau, system) {
        return Err(NotIsoTop(tau.clone()));
    }
    Ok(build_star(tau, system))
}

fn build_star(tau: &Type, system: SystemId) -> Term {
    match tau {
        Type::Top => Term::Star,
        Type::Arrow(dom, cod) => Term::abs("x", (**dom).clone(), build_star(cod, system)),
        Type::Prod(a, b) => Term::pair(build_star(a, system), build_star(b, system)),
        Type::Forall(x, _) if system == SystemId::Cd2Param && is_parametric_identity(tau) => {
            let tv = Type::Var(x.clone());
            Term::TyAbs(x.clone(), Box::new(Term::abs("x", tv.clone(), Term::var("x", tv))))
        }
        Type::Forall(x, body) => Term::TyAbs(x.clone(), Box::new(build_star(body, system))),
        Type::Var(_) => unreachable!("type variables are never isomorphic to Top"),
    }
}

/// True iff `t`'s type is in Iso(Top) and `t` is α-equal to its star.
pub fn is_canonical(t: &Term, system: SystemId) -> bool {
    match synth(t) {
        Some(ty) => is_canonical_at(t, &ty, system),
        None => false,
    }
}

/// As [`is_canonical`], with the type already known.
pub(crate) fn is_canonical_at(t: &Term, ty: &Type, system: SystemId) -> bool {
    // Cheap shape filter before building the star.
    let shape_ok = match (t, ty) {
        (Term::Star, Type::Top) => return true,
        (_, Type::Top) => false,
        (Term::Abs(..), Type::Arrow(..)) => true,
        (Term::Pair(..), Type::Prod(..)) => true,
        (Term::TyAbs(..), Type::Forall(..)) => true,
        _ => false,
    };
    shape_ok && is_iso_top(ty, system) && *t == build_star(ty, system)
}

/// In the simply typed systems: no `*` occurs. In the polymorphic systems:
/// no subterm is α-equal to the star of its (terminal) type.
pub fn is_star_free(t: &Term, system: SystemId) -> bool {
    let mut free = true;
    t.visit(&mut |s| {
        if !free {
            return;
        }
        if matches!(s, Term::Star) {
            free = false;
        } else if system.is_polymorphic() && is_canonical(s, system) {
            free = false;
        }
    });
    free
}
