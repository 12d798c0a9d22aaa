//! Reduction strategies, fuel-bounded normalization, and the decision
//! procedure for the equational theories.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::canon::SystemId;
use crate::metatheory::{build_graph, GraphCaps};
use crate::rewrite::{redexes, Redex, RewriteSystem};
use crate::syntax::{Term, Type};
use crate::typing::{type_of, TypingError};

pub const DEFAULT_FUEL: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    LeftmostOutermost,
    LeftmostInnermost,
    Random(u64),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::LeftmostOutermost => f.write_str("lo"),
            Strategy::LeftmostInnermost => f.write_str("li"),
            Strategy::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown strategy `{0}` (expected lo, li or random)")]
pub struct UnknownStrategy(pub String);

impl FromStr for Strategy {
    type Err = UnknownStrategy;

    /// `lo`, `li`, `random` (seed 0) or `random:N`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lo" => Ok(Strategy::LeftmostOutermost),
            "li" => Ok(Strategy::LeftmostInnermost),
            "random" => Ok(Strategy::Random(0)),
            _ => s
                .strip_prefix("random:")
                .and_then(|n| n.parse().ok())
                .map(Strategy::Random)
                .ok_or_else(|| UnknownStrategy(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub before: Term,
    pub redex: Redex,
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub result: Term,
    pub fuel_used: usize,
}

impl Trace {
    /// Re-contracts every recorded redex from `start`.
    pub fn replay(&self, start: &Term) -> Option<Term> {
        let mut cur = start.clone();
        for step in &self.steps {
            if step.before != cur {
                return None;
            }
            cur = step.redex.contract(&cur)?;
        }
        Some(cur)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fuel exhausted after {steps} steps")]
pub struct FuelExhausted {
    pub last: Term,
    pub steps: usize,
}

/// Picks the redex a strategy contracts next. `candidates` must be in
/// the order produced by [`redexes`].
fn select(candidates: &[Redex], strategy: Strategy, rng: &mut Option<ChaCha8Rng>) -> usize {
    match strategy {
        Strategy::LeftmostOutermost => 0,
        Strategy::LeftmostInnermost => {
            let innermost = |r: &Redex| {
                !candidates.iter().any(|o| r.position.is_proper_prefix_of(&o.position))
            };
            candidates.iter().position(innermost).expect("some redex is innermost")
        }
        Strategy::Random(_) => rng.as_mut().expect("seeded").gen_range(0..candidates.len()),
    }
}

/// Rewrites until no redex remains or `fuel` steps have been taken.
pub fn normalize(
    t: &Term,
    system: &RewriteSystem,
    strategy: Strategy,
    fuel: usize,
) -> Result<Trace, FuelExhausted> {
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut steps = Vec::new();
    let mut cur = t.clone();
    loop {
        let mut candidates = redexes(&cur, system);
        if candidates.is_empty() {
            let fuel_used = steps.len();
            return Ok(Trace { steps, result: cur, fuel_used });
        }
        if steps.len() >= fuel {
            return Err(FuelExhausted { last: cur, steps: steps.len() });
        }
        let idx = select(&candidates, strategy, &mut rng);
        let chosen = candidates.swap_remove(idx);
        let next = chosen.contract(&cur).expect("redex position is valid");
        steps.push(Step { before: cur, redex: chosen });
        cur = next;
    }
}

/// Normal form under leftmost-outermost with the default fuel.
pub fn normal_form(t: &Term, system: &RewriteSystem) -> Result<Term, FuelExhausted> {
    normalize(t, system, Strategy::LeftmostOutermost, DEFAULT_FUEL).map(|tr| tr.result)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqError {
    #[error(transparent)]
    Typing(#[from] TypingError),
    #[error("terms have different types: {0} vs {1}")]
    TypeMismatch(Type, Type),
    #[error(transparent)]
    FuelExhausted(#[from] FuelExhausted),
    #[error("system {0} is not known to be confluent and terminating; use the forced comparison")]
    Refused(SystemId),
    #[error("reduction graph exceeded its caps")]
    Capped,
}

fn check_same_type(t: &Term, u: &Term, system: SystemId) -> Result<(), EqError> {
    let tt = type_of(t, system)?;
    let ut = type_of(u, system)?;
    if tt != ut {
        return Err(EqError::TypeMismatch(tt, ut));
    }
    Ok(())
}

/// Decides `t = u` by comparing normal forms. Only sound for the
/// confluent, terminating systems `cd` and `cd2`.
pub fn eq_decide(t: &Term, u: &Term, system: &RewriteSystem, fuel: usize) -> Result<bool, EqError> {
    if matches!(system.id, SystemId::Naive | SystemId::Cd2Param) {
        return Err(EqError::Refused(system.id));
    }
    check_same_type(t, u, system.id)?;
    let nt = normalize(t, system, Strategy::LeftmostOutermost, fuel)?.result;
    let nu = normalize(u, system, Strategy::LeftmostOutermost, fuel)?.result;
    Ok(nt == nu)
}

/// Outcome of a forced comparison: every normal form reachable from each
/// side.
#[derive(Clone, Debug)]
pub struct ForcedComparison {
    pub left: Vec<Term>,
    pub right: Vec<Term>,
}

impl ForcedComparison {
    pub fn shares_normal_form(&self) -> bool {
        self.left.iter().any(|l| self.right.contains(l))
    }
}

/// Graph-search comparison for systems where normal forms may not be
/// unique or may not exist.
pub fn eq_forced(
    t: &Term,
    u: &Term,
    system: &RewriteSystem,
    caps: GraphCaps,
) -> Result<ForcedComparison, EqError> {
    check_same_type(t, u, system.id)?;
    let gt = build_graph(t, system, caps);
    let gu = build_graph(u, system, caps);
    if gt.capped || gu.capped {
        return Err(EqError::Capped);
    }
    Ok(ForcedComparison { left: gt.normal_forms(), right: gu.normal_forms() })
}
