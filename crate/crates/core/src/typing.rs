//! Type synthesis and well-formedness checking.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::canon::SystemId;
use crate::syntax::{Position, Term, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypingErrorKind {
    AnnotationMismatch,
    NonFunctionApplication,
    NonProductProjection,
    /// Type application to a term whose type is not a `forall`.
    NonPolymorphicInstantiation,
    EigenvariableViolation,
    PolymorphismInSimplyTypedSystem,
    InvalidPosition,
}

impl fmt::Display for TypingErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypingErrorKind::AnnotationMismatch => "annotation-mismatch",
            TypingErrorKind::NonFunctionApplication => "non-function-application",
            TypingErrorKind::NonProductProjection => "non-product-projection",
            TypingErrorKind::NonPolymorphicInstantiation => "non-polymorphic-instantiation",
            TypingErrorKind::EigenvariableViolation => "eigenvariable-violation",
            TypingErrorKind::PolymorphismInSimplyTypedSystem => {
                "polymorphism-in-simply-typed-system"
            }
            TypingErrorKind::InvalidPosition => "invalid-position",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {position}: {detail}")]
pub struct TypingError {
    pub kind: TypingErrorKind,
    pub position: Position,
    pub detail: String,
}

impl TypingError {
    fn new(kind: TypingErrorKind, position: &Position, detail: impl Into<String>) -> Self {
        TypingError { kind, position: position.clone(), detail: detail.into() }
    }
}

/// Synthesizes the type of `t` in `system`, checking every typing rule.
pub fn type_of(t: &Term, system: SystemId) -> Result<Type, TypingError> {
    Checker::new(system).check(t, &Position::root())
}

/// The type of the subterm at `p`, with the binders above it in scope.
/// The whole term is checked first.
pub fn type_at(t: &Term, p: &Position, system: SystemId) -> Result<Type, TypingError> {
    type_of(t, system)?;
    let sub = t.subterm(p).ok_or_else(|| {
        TypingError::new(TypingErrorKind::InvalidPosition, p, "position leaves the term")
    })?;
    synth(sub).ok_or_else(|| {
        TypingError::new(TypingErrorKind::AnnotationMismatch, p, "subterm has no type")
    })
}

/// Reads the type of a term off its annotations without checking
/// consistency. Every variable carries its type, so no context is needed.
/// Returns `None` only where an eliminator meets the wrong type.
pub fn synth(t: &Term) -> Option<Type> {
    Some(match t {
        Term::Var(_, ty) => ty.clone(),
        Term::Star => Type::Top,
        Term::Abs(_, ty, b) => Type::arrow(ty.clone(), synth(b)?),
        Term::App(f, _) => match synth(f)? {
            Type::Arrow(_, cod) => *cod,
            _ => return None,
        },
        Term::Pair(a, b) => Type::prod(synth(a)?, synth(b)?),
        Term::Proj1(p) => match synth(p)? {
            Type::Prod(a, _) => *a,
            _ => return None,
        },
        Term::Proj2(p) => match synth(p)? {
            Type::Prod(_, b) => *b,
            _ => return None,
        },
        Term::TyAbs(x, b) => Type::forall(x, synth(b)?),
        Term::TyApp(f, arg) => match synth(f)? {
            Type::Forall(x, body) => body.subst(&x, arg),
            _ => return None,
        },
    })
}

struct Checker {
    system: SystemId,
    /// Innermost binder last.
    bound: Vec<(String, Type)>,
    free: BTreeMap<String, Type>,
}

impl Checker {
    fn new(system: SystemId) -> Self {
        Checker { system, bound: Vec::new(), free: BTreeMap::new() }
    }

    fn check_annotation(&self, ty: &Type, at: &Position) -> Result<(), TypingError> {
        if !self.system.is_polymorphic() && ty.contains_forall() {
            return Err(TypingError::new(
                TypingErrorKind::PolymorphismInSimplyTypedSystem,
                at,
                format!("type {ty} uses forall in system {}", self.system),
            ));
        }
        Ok(())
    }

    fn forbid_polymorphic_term(&self, at: &Position) -> Result<(), TypingError> {
        if self.system.is_polymorphic() {
            Ok(())
        } else {
            Err(TypingError::new(
                TypingErrorKind::PolymorphismInSimplyTypedSystem,
                at,
                format!("type abstraction/application in system {}", self.system),
            ))
        }
    }

    fn check(&mut self, t: &Term, at: &Position) -> Result<Type, TypingError> {
        match t {
            Term::Var(x, ty) => {
                self.check_annotation(ty, at)?;
                if let Some((_, bty)) = self.bound.iter().rev().find(|(n, _)| n == x) {
                    if bty != ty {
                        return Err(TypingError::new(
                            TypingErrorKind::AnnotationMismatch,
                            at,
                            format!("`{x}` is bound at {bty} but annotated {ty}"),
                        ));
                    }
                } else if let Some(prev) = self.free.get(x) {
                    if prev != ty {
                        return Err(TypingError::new(
                            TypingErrorKind::AnnotationMismatch,
                            at,
                            format!("free `{x}` annotated both {prev} and {ty}"),
                        ));
                    }
                } else {
                    self.free.insert(x.clone(), ty.clone());
                }
                Ok(ty.clone())
            }
            Term::Star => Ok(Type::Top),
            Term::Abs(x, ty, body) => {
                self.check_annotation(ty, at)?;
                self.bound.push((x.clone(), ty.clone()));
                let body_ty = self.check(body, &at.child(0));
                self.bound.pop();
                Ok(Type::arrow(ty.clone(), body_ty?))
            }
            Term::App(f, a) => {
                let fty = self.check(f, &at.child(0))?;
                let aty = self.check(a, &at.child(1))?;
                match fty {
                    Type::Arrow(dom, cod) => {
                        if *dom != aty {
                            return Err(TypingError::new(
                                TypingErrorKind::AnnotationMismatch,
                                at,
                                format!("function expects {dom} but argument has type {aty}"),
                            ));
                        }
                        Ok(*cod)
                    }
                    other => Err(TypingError::new(
                        TypingErrorKind::NonFunctionApplication,
                        at,
                        format!("applied term has type {other}"),
                    )),
                }
            }
            Term::Pair(a, b) => {
                let aty = self.check(a, &at.child(0))?;
                let bty = self.check(b, &at.child(1))?;
                Ok(Type::prod(aty, bty))
            }
            Term::Proj1(p) | Term::Proj2(p) => match self.check(p, &at.child(0))? {
                Type::Prod(l, r) => Ok(if matches!(t, Term::Proj1(_)) { *l } else { *r }),
                other => Err(TypingError::new(
                    TypingErrorKind::NonProductProjection,
                    at,
                    format!("projection from type {other}"),
                )),
            },
            Term::TyAbs(x, body) => {
                self.forbid_polymorphic_term(at)?;
                for (name, ty) in body.free_vars() {
                    if ty.has_free_type_var(x) {
                        return Err(TypingError::new(
                            TypingErrorKind::EigenvariableViolation,
                            at,
                            format!("`{x}` is free in the type {ty} of free variable `{name}`"),
                        ));
                    }
                }
                let body_ty = self.check(body, &at.child(0))?;
                Ok(Type::forall(x, body_ty))
            }
            Term::TyApp(f, arg) => {
                self.forbid_polymorphic_term(at)?;
                self.check_annotation(arg, at)?;
                match self.check(f, &at.child(0))? {
                    Type::Forall(x, body) => Ok(body.subst(&x, arg)),
                    other => Err(TypingError::new(
                        TypingErrorKind::NonPolymorphicInstantiation,
                        at,
                        format!("type application to a term of type {other}"),
                    )),
                }
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

    #[test]
    fn star_has_top() {
        assert_eq!(type_of(&Term::Star, SystemId::Cd).unwrap(), Type::Top);
    }

    #[test]
    fn surjective_pair_keeps_type() {
        let ab = Type::prod(a(), Type::var("B"));
        let x = Term::var("x", ab.clone());
        let t = Term::pair(Term::proj1(x.clone()), Term::proj2(x));
        assert_eq!(type_of(&t, SystemId::Cd).unwrap(), ab);
    }

    #[test]
    fn eigenvariable_condition() {
        let x = Type::var("X");
        let y = Term::var("y", Type::arrow(x.clone(), Type::Top));
        let t = Term::ty_abs("X", Term::abs("x", x.clone(), Term::app(y, Term::var("x", x))));
        let err = type_of(&t, SystemId::Cd2).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::EigenvariableViolation);
        assert!(err.position.is_root());
    }

    #[test]
    fn eigenvariable_sees_outer_binders() {
        // \x:X. /\X. x  -- x is free in the body of the type abstraction
        let x = Type::var("X");
        let t = Term::abs("x", x.clone(), Term::ty_abs("X", Term::var("x", x)));
        assert_eq!(type_of(&t, SystemId::Cd2).unwrap_err().kind, TypingErrorKind::EigenvariableViolation);
    }

    #[test]
    fn argument_mismatch() {
        let t = Term::app(Term::abs("x", a(), Term::var("x", a())), Term::Star);
        let err = type_of(&t, SystemId::Cd).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::AnnotationMismatch);
    }

    #[test]
    fn bound_annotation_must_match_binder() {
        let t = Term::abs("x", a(), Term::var("x", Type::Top));
        assert_eq!(type_of(&t, SystemId::Cd).unwrap_err().kind, TypingErrorKind::AnnotationMismatch);
    }

    #[test]
    fn inconsistent_free_annotations() {
        let t = Term::pair(Term::var("x", a()), Term::var("x", Type::Top));
        let err = type_of(&t, SystemId::Cd).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::AnnotationMismatch);
        assert_eq!(err.position, Position(vec![1]));
    }

    #[test]
    fn shadowing() {
        let t = Term::abs("x", a(), Term::abs("x", Type::Top, Term::var("x", Type::Top)));
        assert_eq!(
            type_of(&t, SystemId::Cd).unwrap(),
            Type::arrow(a(), Type::arrow(Type::Top, Type::Top))
        );
    }

    #[test]
    fn eliminator_errors() {
        let err = type_of(&Term::app(Term::Star, Term::Star), SystemId::Cd).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::NonFunctionApplication);
        let err = type_of(&Term::proj1(Term::Star), SystemId::Cd).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::NonProductProjection);
        let err = type_of(&Term::ty_app(Term::Star, a()), SystemId::Cd2).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::NonPolymorphicInstantiation);
    }

    #[test]
    fn simply_typed_systems_reject_polymorphism() {
        let x = Type::var("X");
        let id = Term::ty_abs("X", Term::abs("x", x.clone(), Term::var("x", x.clone())));
        for sys in [SystemId::Naive, SystemId::Cd] {
            let err = type_of(&id, sys).unwrap_err();
            assert_eq!(err.kind, TypingErrorKind::PolymorphismInSimplyTypedSystem);
            let w = Term::var("w", Type::forall("X", Type::arrow(x.clone(), x.clone())));
            assert_eq!(type_of(&w, sys).unwrap_err().kind, TypingErrorKind::PolymorphismInSimplyTypedSystem);
        }
        assert!(type_of(&id, SystemId::Cd2).is_ok());
    }

    #[test]
    fn type_at_examples() {
        let y = Term::var("y", Type::arrow(a(), Type::Top));
        let t = Term::abs("x", a(), Term::app(y, Term::var("x", a())));
        assert_eq!(type_at(&t, &Position(vec![0]), SystemId::Cd).unwrap(), Type::Top);
        let p = Term::pair(Term::Star, Term::Star);
        assert_eq!(type_at(&p, &Position(vec![1]), SystemId::Cd).unwrap(), Type::Top);
        let x = Term::var("x", Type::prod(a(), Type::Top));
        assert_eq!(type_at(&x, &Position::root(), SystemId::Cd).unwrap(), Type::prod(a(), Type::Top));
        let err = type_at(&x, &Position(vec![0]), SystemId::Cd).unwrap_err();
        assert_eq!(err.kind, TypingErrorKind::InvalidPosition);
    }

    #[test]
    fn type_application_instantiates() {
        let x = Type::var("X");
        let id = Term::ty_abs("X", Term::abs("x", x.clone(), Term::var("x", x)));
        let t = Term::ty_app(id, Type::Top);
        assert_eq!(type_of(&t, SystemId::Cd2).unwrap(), Type::arrow(Type::Top, Type::Top));
    }
}
