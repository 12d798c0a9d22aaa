//! Reference decision procedure for the simply typed fragment:
//! normalization by evaluation into η-long β-normal forms, with every
//! term of type `Top` read back as `*`. Shares nothing with the rewriting
//! engine except the term representation.

use std::rc::Rc;

use topcalc::{Term, Type};

/// Read-back code: given the current binder depth, produce text.
type Code = Rc<dyn Fn(usize) -> String>;

#[derive(Clone)]
enum Sem {
    Fun(Rc<dyn Fn(Sem) -> Sem>),
    Pair(Rc<Sem>, Rc<Sem>),
    Unit,
    Neutral(Code),
}

fn apply(f: Sem, v: Sem) -> Sem {
    match f {
        Sem::Fun(f) => f(v),
        _ => panic!("applying a non-function"),
    }
}

fn fst(p: Sem) -> Sem {
    match p {
        Sem::Pair(a, _) => (*a).clone(),
        _ => panic!("projecting a non-pair"),
    }
}

fn snd(p: Sem) -> Sem {
    match p {
        Sem::Pair(_, b) => (*b).clone(),
        _ => panic!("projecting a non-pair"),
    }
}

fn reflect(ty: &Type, code: Code) -> Sem {
    match ty {
        Type::Top => Sem::Unit,
        Type::Var(_) => Sem::Neutral(code),
        Type::Arrow(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            Sem::Fun(Rc::new(move |arg| {
                let head = code.clone();
                let arg = reify(&a, arg);
                reflect(&b, Rc::new(move |d| format!("({} {})", head(d), arg(d))))
            }))
        }
        Type::Prod(a, b) => {
            let (c1, c2) = (code.clone(), code);
            Sem::Pair(
                Rc::new(reflect(a, Rc::new(move |d| format!("(fst {})", c1(d))))),
                Rc::new(reflect(b, Rc::new(move |d| format!("(snd {})", c2(d))))),
            )
        }
        Type::Forall(..) => panic!("oracle covers the simply typed fragment only"),
    }
}

fn reify(ty: &Type, v: Sem) -> Code {
    match ty {
        Type::Top => Rc::new(|_| "*".to_string()),
        Type::Var(_) => match v {
            Sem::Neutral(c) => c,
            _ => panic!("value of base type is not neutral"),
        },
        Type::Arrow(a, b) => {
            let (a, b) = ((**a).clone(), (**b).clone());
            Rc::new(move |d| {
                let x = reflect(&a, Rc::new(move |_| format!("x{d}")));
                format!("(\\x{d}. {})", reify(&b, apply(v.clone(), x))(d + 1))
            })
        }
        Type::Prod(a, b) => {
            let l = reify(a, fst(v.clone()));
            let r = reify(b, snd(v));
            Rc::new(move |d| format!("<{}, {}>", l(d), r(d)))
        }
        Type::Forall(..) => panic!("oracle covers the simply typed fragment only"),
    }
}

fn eval(t: &Term, env: &[(String, Sem)]) -> Sem {
    match t {
        Term::Var(x, ty) => match env.iter().rev().find(|(n, _)| n == x) {
            Some((_, v)) => v.clone(),
            None => {
                let name = format!("free:{x}");
                reflect(ty, Rc::new(move |_| name.clone()))
            }
        },
        Term::Star => Sem::Unit,
        Term::Abs(x, _, body) => {
            let (x, body, env) = (x.clone(), (**body).clone(), env.to_vec());
            Sem::Fun(Rc::new(move |v| {
                let mut inner = env.clone();
                inner.push((x.clone(), v));
                eval(&body, &inner)
            }))
        }
        Term::App(f, a) => apply(eval(f, env), eval(a, env)),
        Term::Pair(a, b) => Sem::Pair(Rc::new(eval(a, env)), Rc::new(eval(b, env))),
        Term::Proj1(p) => fst(eval(p, env)),
        Term::Proj2(p) => snd(eval(p, env)),
        Term::TyAbs(..) | Term::TyApp(..) => panic!("oracle covers the simply typed fragment only"),
    }
}

/// Canonical text of `t` at type `ty`; two terms are equal in the theory
/// iff their texts coincide.
pub fn long_normal_form(t: &Term, ty: &Type) -> String {
    reify(ty, eval(t, &[]))(0)
}
