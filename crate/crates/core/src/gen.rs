//! Seeded random generation of well-typed terms.
//!
//! Generation is goal-directed: a target type is fixed first and terms are
//! built to inhabit it, mixing introduction forms, variable-headed
//! elimination spines and productions that plant redexes (β, projection of
//! a pair, type application of a type abstraction, surjective-pairing and
//! η shapes).

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canon::{is_iso_top, is_star_free, star, SystemId};
use crate::syntax::{Term, TermKey, Type};
use crate::typing::type_of;

const ATTEMPTS_PER_TERM: usize = 200;

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub seed: u64,
    pub max_term_size: usize,
    /// Type every generated term must have; random when `None`.
    pub target_type: Option<Type>,
    /// Forbid `*` and, in the polymorphic systems, canonical subterms.
    pub star_free: bool,
    pub system: SystemId,
    /// Depth of randomly chosen types.
    pub type_depth: usize,
    /// Free variables available to every term.
    pub free_vars: Vec<(String, Type)>,
    /// Atomic types besides `Top`.
    pub base_types: Vec<Type>,
    /// Probability of trying an introduction form before an elimination.
    pub intro_weight: f64,
}

impl GenConfig {
    pub fn new(system: SystemId, seed: u64) -> Self {
        GenConfig {
            seed,
            max_term_size: 12,
            target_type: None,
            star_free: false,
            system,
            type_depth: 3,
            free_vars: default_free_vars(system),
            base_types: vec![Type::var("A"), Type::var("B")],
            intro_weight: 0.6,
        }
    }
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig::new(SystemId::Cd, 0)
    }
}

/// A small pool of free variables over `A`, `B` and `Top`, plus a few
/// polymorphic ones for the second-order systems.
pub fn default_free_vars(system: SystemId) -> Vec<(String, Type)> {
    let a = Type::var("A");
    let b = Type::var("B");
    let mut pool = vec![
        ("a".to_string(), a.clone()),
        ("b".to_string(), b.clone()),
        ("u".to_string(), Type::Top),
        ("f".to_string(), Type::arrow(a.clone(), b.clone())),
        ("g".to_string(), Type::arrow(a.clone(), Type::Top)),
        ("h".to_string(), Type::arrow(Type::Top, a.clone())),
        ("p".to_string(), Type::prod(a.clone(), Type::Top)),
        ("q".to_string(), Type::prod(Type::Top, b.clone())),
        ("r".to_string(), Type::prod(a, b)),
    ];
    if system.is_polymorphic() {
        let y = Type::var("Y");
        pool.push(("w".to_string(), Type::forall("Y", Type::arrow(y.clone(), y.clone()))));
        pool.push(("c".to_string(), Type::forall("Y", Type::arrow(y, Type::Top))));
    }
    pool
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no well-typed term of size <= {max_size} found for {target} after {attempts} attempts")]
    NoTerm { target: String, max_size: usize, attempts: usize },
    #[error("only {found} distinct terms found, {wanted} requested")]
    CorpusTooSmall { found: usize, wanted: usize },
}

#[derive(Clone, Default)]
struct Scope {
    vars: Vec<(String, Type)>,
    tvars: Vec<String>,
}

pub struct Generator {
    config: GenConfig,
    rng: ChaCha8Rng,
    next_var: usize,
    next_tvar: usize,
}

impl Generator {
    pub fn new(config: GenConfig) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        Generator { config, rng, next_var: 0, next_tvar: 0 }
    }

    pub fn config(&self) -> &GenConfig {
        &self.config
    }

    fn fresh_var(&mut self) -> String {
        self.next_var += 1;
        format!("v{}", self.next_var)
    }

    fn fresh_tvar(&mut self) -> String {
        self.next_tvar += 1;
        format!("X{}", self.next_tvar)
    }

    /// A random type of at most the configured depth.
    pub fn gen_type(&mut self) -> Type {
        let depth = self.config.type_depth;
        self.ty(depth, &[])
    }

    fn ty(&mut self, depth: usize, tvars: &[String]) -> Type {
        if depth <= 1 || self.rng.gen_bool(0.3) {
            let n = self.config.base_types.len() + 1 + tvars.len();
            let k = self.rng.gen_range(0..n);
            return if k < self.config.base_types.len() {
                self.config.base_types[k].clone()
            } else if k == self.config.base_types.len() {
                Type::Top
            } else {
                Type::Var(tvars[k - self.config.base_types.len() - 1].clone())
            };
        }
        let forms = if self.config.system.is_polymorphic() { 4 } else { 3 };
        match self.rng.gen_range(0..forms) {
            0 => Type::prod(self.ty(depth - 1, tvars), self.ty(depth - 1, tvars)),
            1 | 2 => Type::arrow(self.ty(depth - 1, tvars), self.ty(depth - 1, tvars)),
            _ => {
                let x = self.fresh_tvar();
                let mut inner = tvars.to_vec();
                inner.push(x.clone());
                Type::Forall(x, Box::new(self.ty(depth - 1, &inner)))
            }
        }
    }

    /// One well-typed term satisfying the configuration.
    pub fn gen_term(&mut self) -> Result<Term, GenError> {
        let scope = Scope { vars: self.config.free_vars.clone(), tvars: Vec::new() };
        let mut last_target = Type::Top;
        for _ in 0..ATTEMPTS_PER_TERM {
            self.next_var = 0;
            let target = match &self.config.target_type {
                Some(t) => t.clone(),
                None => self.gen_type(),
            };
            let max = self.config.max_term_size;
            let budget = self.rng.gen_range(max.div_ceil(2).max(1)..=max.max(1));
            if let Some(t) = self.term(&target, &scope, budget) {
                if self.accept(&t) {
                    return Ok(t);
                }
            }
            last_target = target;
        }
        Err(GenError::NoTerm {
            target: self.config.target_type.as_ref().unwrap_or(&last_target).to_string(),
            max_size: self.config.max_term_size,
            attempts: ATTEMPTS_PER_TERM,
        })
    }

    fn accept(&self, t: &Term) -> bool {
        t.size() <= self.config.max_term_size
            && type_of(t, self.config.system).is_ok()
            && (!self.config.star_free || is_star_free(t, self.config.system))
    }

    fn term(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        if budget == 0 {
            return None;
        }
        if budget <= 2 || self.rng.gen_bool(0.15) {
            if let Some(t) = self.leaf(ty, scope) {
                return Some(t);
            }
        }
        if self.rng.gen_bool(self.config.intro_weight) {
            self.intro(ty, scope, budget).or_else(|| self.elim(ty, scope, budget))
        } else {
            self.elim(ty, scope, budget).or_else(|| self.intro(ty, scope, budget))
        }
    }

    fn leaf(&mut self, ty: &Type, scope: &Scope) -> Option<Term> {
        let mut options: Vec<Term> = scope
            .vars
            .iter()
            .filter(|(_, t)| t == ty)
            .map(|(x, t)| Term::Var(x.clone(), t.clone()))
            .collect();
        if *ty == Type::Top && !self.config.star_free {
            options.push(Term::Star);
        }
        options.choose(&mut self.rng).cloned()
    }

    fn can_star(&self, ty: &Type) -> bool {
        !self.config.star_free && is_iso_top(ty, self.config.system)
    }

    fn intro(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        match ty {
            Type::Top => (!self.config.star_free).then_some(Term::Star),
            Type::Var(_) => None,
            Type::Arrow(a, b) => {
                if budget >= 4 && self.rng.gen_bool(0.2) {
                    // η shape: \x:A. f x
                    let x = self.fresh_var();
                    let f = self.term(ty, scope, budget - 3)?;
                    return Some(Term::abs(&x, (**a).clone(), Term::app(f, Term::var(&x, (**a).clone()))));
                }
                let x = self.fresh_var();
                let mut inner = scope.clone();
                inner.vars.push((x.clone(), (**a).clone()));
                let body = self.term(b, &inner, budget.saturating_sub(1))?;
                Some(Term::Abs(x, (**a).clone(), Box::new(body)))
            }
            Type::Prod(a, b) => {
                let roll: f64 = self.rng.gen();
                if budget >= 5 && roll < 0.2 {
                    // <p1 u, p2 u>
                    let u = self.term(ty, scope, (budget - 3) / 2)?;
                    return Some(Term::pair(Term::proj1(u.clone()), Term::proj2(u)));
                }
                if budget >= 3 && roll < 0.3 && self.can_star(b) {
                    let u = self.term(ty, scope, budget - 2)?;
                    return Some(Term::pair(Term::proj1(u), star(b, self.config.system).ok()?));
                }
                if budget >= 3 && roll < 0.4 && self.can_star(a) {
                    let u = self.term(ty, scope, budget - 2)?;
                    return Some(Term::pair(star(a, self.config.system).ok()?, Term::proj2(u)));
                }
                if budget < 3 {
                    return None;
                }
                let left = self.rng.gen_range(1..budget - 1);
                let x = self.term(a, scope, left)?;
                let y = self.term(b, scope, budget - 1 - left)?;
                Some(Term::pair(x, y))
            }
            Type::Forall(x, b) => {
                let fresh = self.fresh_tvar();
                if budget >= 4 && self.rng.gen_bool(0.2) {
                    // η2 shape: /\X. u [X]
                    let u = self.term(ty, scope, budget - 2)?;
                    return Some(Term::TyAbs(fresh.clone(), Box::new(Term::ty_app(u, Type::Var(fresh)))));
                }
                let body_ty = b.subst(x, &Type::Var(fresh.clone()));
                let mut inner = scope.clone();
                inner.tvars.push(fresh.clone());
                let body = self.term(&body_ty, &inner, budget.saturating_sub(1))?;
                Some(Term::TyAbs(fresh, Box::new(body)))
            }
        }
    }

    fn elim(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        let mut productions = vec![0u8, 0, 1, 2];
        if self.config.system.is_polymorphic() {
            productions.push(3);
        }
        productions.shuffle(&mut self.rng);
        for p in productions {
            let result = match p {
                0 => self.spine(ty, scope, budget),
                1 => self.beta_redex(ty, scope, budget),
                2 => self.projection_redex(ty, scope, budget),
                _ => self.type_redex(ty, scope, budget),
            };
            if result.is_some() {
                return result;
            }
        }
        None
    }

    /// A variable applied, projected and instantiated until it has type `ty`.
    fn spine(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        let heads: Vec<(String, Type)> =
            scope.vars.iter().filter(|(_, s)| reaches(s, ty)).cloned().collect();
        let (x, s) = heads.choose(&mut self.rng)?.clone();
        self.extend(Term::Var(x, s.clone()), &s, ty, scope, budget.saturating_sub(1))
    }

    fn extend(&mut self, head: Term, s: &Type, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        if s == ty && (self.rng.gen_bool(0.8) || !can_continue(s, ty)) {
            return Some(head);
        }
        if budget == 0 {
            return (s == ty).then_some(head);
        }
        match s {
            Type::Arrow(a, b) if reaches(b, ty) => {
                let arg_budget = budget / 2;
                if arg_budget == 0 {
                    return (s == ty).then_some(head);
                }
                let arg = self.term(a, scope, arg_budget)?;
                self.extend(Term::app(head, arg), b, ty, scope, budget.saturating_sub(arg_budget + 1))
            }
            Type::Prod(a, b) => {
                let left = reaches(a, ty);
                let right = reaches(b, ty);
                let first = match (left, right) {
                    (true, true) => self.rng.gen_bool(0.5),
                    (l, r) if l || r => l,
                    _ => return (s == ty).then_some(head),
                };
                if first {
                    self.extend(Term::proj1(head), a, ty, scope, budget.saturating_sub(1))
                } else {
                    self.extend(Term::proj2(head), b, ty, scope, budget.saturating_sub(1))
                }
            }
            Type::Forall(x, b) => {
                let inst = b.subst(x, ty);
                if !reaches(&inst, ty) {
                    return (s == ty).then_some(head);
                }
                self.extend(Term::ty_app(head, ty.clone()), &inst, ty, scope, budget.saturating_sub(1))
            }
            _ => (s == ty).then_some(head),
        }
    }

    fn small_type(&mut self, scope: &Scope) -> Type {
        let tvars = scope.tvars.clone();
        self.ty(2, &tvars)
    }

    /// `(\x:A. t) s`
    fn beta_redex(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        if budget < 4 {
            return None;
        }
        let a = self.small_type(scope);
        let x = self.fresh_var();
        let mut inner = scope.clone();
        inner.vars.push((x.clone(), a.clone()));
        let body_budget = self.rng.gen_range(1..budget - 2);
        let body = self.term(ty, &inner, body_budget)?;
        let arg = self.term(&a, scope, budget - 2 - body_budget)?;
        Some(Term::app(Term::Abs(x, a, Box::new(body)), arg))
    }

    /// `p1 <t, s>` or `p2 <s, t>`
    fn projection_redex(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        if budget < 4 {
            return None;
        }
        let other = self.small_type(scope);
        let main_budget = self.rng.gen_range(1..budget - 2);
        let main = self.term(ty, scope, main_budget)?;
        let side = self.term(&other, scope, budget - 2 - main_budget)?;
        Some(if self.rng.gen_bool(0.5) {
            Term::proj1(Term::pair(main, side))
        } else {
            Term::proj2(Term::pair(side, main))
        })
    }

    /// `(/\X. t) [T]` where `t`'s type abstracts some occurrences of `T`.
    fn type_redex(&mut self, ty: &Type, scope: &Scope, budget: usize) -> Option<Term> {
        if budget < 3 {
            return None;
        }
        let mut subtrees = Vec::new();
        closed_subtypes(ty, &mut Vec::new(), &mut subtrees);
        let phi = match subtrees.choose(&mut self.rng) {
            Some(t) if self.rng.gen_bool(0.8) => t.clone(),
            _ => self.small_type(scope),
        };
        let x = self.fresh_tvar();
        let psi = self.abstract_occurrences(ty, &phi, &x);
        let mut inner = scope.clone();
        inner.tvars.push(x.clone());
        let body = self.term(&psi, &inner, budget - 2)?;
        Some(Term::ty_app(Term::TyAbs(x, Box::new(body)), phi))
    }

    fn abstract_occurrences(&mut self, ty: &Type, phi: &Type, x: &str) -> Type {
        if ty == phi && self.rng.gen_bool(0.7) {
            return Type::var(x);
        }
        match ty {
            Type::Top | Type::Var(_) => ty.clone(),
            Type::Arrow(a, b) => {
                Type::arrow(self.abstract_occurrences(a, phi, x), self.abstract_occurrences(b, phi, x))
            }
            Type::Prod(a, b) => {
                Type::prod(self.abstract_occurrences(a, phi, x), self.abstract_occurrences(b, phi, x))
            }
            Type::Forall(y, body) if !phi.has_free_type_var(y) => {
                Type::Forall(y.clone(), Box::new(self.abstract_occurrences(body, phi, x)))
            }
            Type::Forall(..) => ty.clone(),
        }
    }
}

/// Subtypes of `ty` whose free variables are not bound inside `ty`.
fn closed_subtypes(ty: &Type, bound: &mut Vec<String>, out: &mut Vec<Type>) {
    if ty.free_type_vars().iter().all(|v| !bound.contains(v)) {
        out.push(ty.clone());
    }
    match ty {
        Type::Top | Type::Var(_) => {}
        Type::Arrow(a, b) | Type::Prod(a, b) => {
            closed_subtypes(a, bound, out);
            closed_subtypes(b, bound, out);
        }
        Type::Forall(x, body) => {
            bound.push(x.clone());
            closed_subtypes(body, bound, out);
            bound.pop();
        }
    }
}

/// Whether eliminations can take a term of type `s` to one of type `ty`.
fn reaches(s: &Type, ty: &Type) -> bool {
    s == ty
        || match s {
            Type::Arrow(_, b) => reaches(b, ty),
            Type::Prod(a, b) => reaches(a, ty) || reaches(b, ty),
            Type::Forall(x, b) => b.has_free_type_var(x) && reaches(&b.subst(x, ty), ty),
            _ => false,
        }
}

fn can_continue(s: &Type, ty: &Type) -> bool {
    match s {
        Type::Arrow(_, b) => reaches(b, ty),
        Type::Prod(a, b) => reaches(a, ty) || reaches(b, ty),
        _ => false,
    }
}

/// `count` pairwise non-α-equal terms from one seeded stream.
pub fn corpus(config: &GenConfig, count: usize) -> Result<Vec<Term>, GenError> {
    let mut gen = Generator::new(config.clone());
    let mut seen: HashSet<TermKey> = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        match gen.gen_term() {
            Ok(t) if seen.insert(t.key()) => out.push(t),
            Ok(_) => misses += 1,
            Err(e) if out.is_empty() => return Err(e),
            Err(_) => misses += 1,
        }
        if misses > 50 * count.max(20) {
            return Err(GenError::CorpusTooSmall { found: out.len(), wanted: count });
        }
    }
    Ok(out)
}
