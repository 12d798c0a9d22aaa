//! Finite, executable versions of the metatheorems: reduction graphs,
//! strong normalization, unique normal forms, local confluence, the
//! refresh lemma (`t[* := z] ->* t`), and the termination measure for `g`.
//!
//! Every check works on an explicit reduction graph whose nodes are
//! α-classes. Graphs are capped; a check that hits a cap reports
//! [`Verdict::InconclusiveCapped`] rather than a pass or a fail.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;

use crate::canon::SystemId;
use crate::rewrite::{successors, RuleId, RuleSet, RewriteSystem};
use crate::syntax::{fresh_name, Term, TermKey, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphCaps {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for GraphCaps {
    fn default() -> Self {
        GraphCaps { max_nodes: 100_000, max_depth: 500 }
    }
}

/// Terms reachable from `root`, one node per α-class, with rule-labelled
/// edges.
#[derive(Clone, Debug)]
pub struct ReductionGraph {
    pub graph: DiGraph<Term, RuleId>,
    pub root: NodeIndex,
    /// True if some reachable term was left out or unexpanded.
    pub capped: bool,
    pub caps: GraphCaps,
    index: HashMap<TermKey, NodeIndex>,
    expanded: Vec<bool>,
}

impl ReductionGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn term(&self, n: NodeIndex) -> &Term {
        &self.graph[n]
    }

    pub fn root_term(&self) -> &Term {
        &self.graph[self.root]
    }

    pub fn node_of(&self, t: &Term) -> Option<NodeIndex> {
        self.index.get(&t.key()).copied()
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.node_of(t).is_some()
    }

    pub fn edges(&self) -> Vec<(&Term, RuleId, &Term)> {
        self.graph
            .edge_references()
            .map(|e| (&self.graph[e.source()], *e.weight(), &self.graph[e.target()]))
            .collect()
    }

    /// Expanded nodes without successors, in discovery order.
    pub fn normal_form_nodes(&self) -> Vec<NodeIndex> {
        self.graph
            .node_indices()
            .filter(|&n| {
                self.expanded[n.index()]
                    && self.graph.neighbors_directed(n, Direction::Outgoing).next().is_none()
            })
            .collect()
    }

    pub fn normal_forms(&self) -> Vec<Term> {
        self.normal_form_nodes().into_iter().map(|n| self.graph[n].clone()).collect()
    }

    /// Nodes reachable from `from`, including itself.
    pub fn reachable(&self, from: NodeIndex) -> HashSet<NodeIndex> {
        let mut seen = HashSet::from([from]);
        let mut stack = vec![from];
        while let Some(n) = stack.pop() {
            for m in self.graph.neighbors_directed(n, Direction::Outgoing) {
                if seen.insert(m) {
                    stack.push(m);
                }
            }
        }
        seen
    }

    /// Some node on a cycle, if the graph has one.
    pub fn find_cycle(&self) -> Option<Vec<NodeIndex>> {
        for scc in tarjan_scc(&self.graph) {
            if scc.len() > 1 {
                return Some(scc);
            }
            let n = scc[0];
            if self.graph.contains_edge(n, n) {
                return Some(scc);
            }
        }
        None
    }
}

/// Breadth-first exploration of `successors` from `t`, up to `caps`.
pub fn build_graph(t: &Term, system: &RewriteSystem, caps: GraphCaps) -> ReductionGraph {
    let mut graph = DiGraph::new();
    let mut index = HashMap::new();
    let root = graph.add_node(t.clone());
    index.insert(t.key(), root);
    let mut depth = vec![0usize];
    let mut expanded = vec![false];
    let mut capped = false;
    let mut queue = VecDeque::from([root]);

    while let Some(n) = queue.pop_front() {
        let succ = successors(&graph[n], system);
        if succ.is_empty() {
            expanded[n.index()] = true;
            continue;
        }
        if depth[n.index()] >= caps.max_depth {
            capped = true;
            continue;
        }
        expanded[n.index()] = true;
        let d = depth[n.index()] + 1;
        for (redex, result) in succ {
            let key = result.key();
            let m = match index.get(&key) {
                Some(&m) => m,
                None => {
                    if graph.node_count() >= caps.max_nodes {
                        capped = true;
                        continue;
                    }
                    let m = graph.add_node(result);
                    index.insert(key, m);
                    depth.push(d);
                    expanded.push(false);
                    queue.push_back(m);
                    m
                }
            };
            if !graph.edges_connecting(n, m).any(|e| *e.weight() == redex.rule) {
                graph.add_edge(n, m, redex.rule);
            }
        }
    }
    ReductionGraph { graph, root, capped, caps, index, expanded }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    InconclusiveCapped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::InconclusiveCapped => "CAPPED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Terms on a reduction cycle.
    Cycle(Vec<Term>),
    /// Two distinct normal forms of the same term.
    NormalForms(Term, Term),
    /// A one-step peak whose ends have no common reduct.
    Peak { source: Term, left: Term, right: Term },
    /// A rewrite step violating the `g` measure.
    Edge { from: Term, rule: RuleId, to: Term },
    Term(Term),
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::Cycle(ts) => {
                write!(f, "cycle through")?;
                for t in ts {
                    write!(f, " {{{t}}}")?;
                }
                Ok(())
            }
            Evidence::NormalForms(a, b) => write!(f, "normal forms {{{a}}} and {{{b}}}"),
            Evidence::Peak { source, left, right } => {
                write!(f, "peak {{{left}}} <- {{{source}}} -> {{{right}}}")
            }
            Evidence::Edge { from, rule, to } => write!(f, "{{{from}}} -{rule}-> {{{to}}}"),
            Evidence::Term(t) => write!(f, "{{{t}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub check: &'static str,
    pub verdict: Verdict,
    pub witness: Option<Evidence>,
}

impl CheckReport {
    fn pass(check: &'static str) -> Self {
        CheckReport { check, verdict: Verdict::Pass, witness: None }
    }

    fn fail(check: &'static str, witness: Evidence) -> Self {
        CheckReport { check, verdict: Verdict::Fail, witness: Some(witness) }
    }

    fn capped(check: &'static str) -> Self {
        CheckReport { check, verdict: Verdict::InconclusiveCapped, witness: None }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

pub fn check_sn(t: &Term, system: &RewriteSystem, caps: GraphCaps) -> CheckReport {
    sn_in(&build_graph(t, system, caps))
}

/// SN of the graph's root: the full graph is finite and acyclic.
pub fn sn_in(g: &ReductionGraph) -> CheckReport {
    const NAME: &str = "sn";
    if let Some(cycle) = g.find_cycle() {
        let terms = cycle.iter().map(|&n| g.term(n).clone()).collect();
        return CheckReport::fail(NAME, Evidence::Cycle(terms));
    }
    if g.capped {
        return CheckReport::capped(NAME);
    }
    CheckReport::pass(NAME)
}

pub fn check_unique_nf(t: &Term, system: &RewriteSystem, caps: GraphCaps) -> CheckReport {
    unique_nf_in(&build_graph(t, system, caps))
}

pub fn unique_nf_in(g: &ReductionGraph) -> CheckReport {
    const NAME: &str = "cr";
    if g.capped {
        return CheckReport::capped(NAME);
    }
    let nfs = g.normal_forms();
    match nfs.as_slice() {
        [_] => CheckReport::pass(NAME),
        [] => CheckReport::fail(NAME, Evidence::Term(g.root_term().clone())),
        [a, b, ..] => CheckReport::fail(NAME, Evidence::NormalForms(a.clone(), b.clone())),
    }
}

/// Every peak `t1 <- t -> t2` of one-step reducts of the root has a common
/// reduct.
pub fn check_local_confluence(t: &Term, system: &RewriteSystem, caps: GraphCaps) -> CheckReport {
    let g = build_graph(t, system, caps);
    local_confluence_at(&g, g.root)
}

/// Local confluence at one node of an already built graph.
pub fn local_confluence_at(g: &ReductionGraph, node: NodeIndex) -> CheckReport {
    const NAME: &str = "wcr";
    if g.capped {
        return CheckReport::capped(NAME);
    }
    let mut reducts: Vec<NodeIndex> = g.graph.neighbors_directed(node, Direction::Outgoing).collect();
    reducts.sort();
    reducts.dedup();
    let reach: Vec<HashSet<NodeIndex>> = reducts.iter().map(|&n| g.reachable(n)).collect();
    for i in 0..reducts.len() {
        for j in i + 1..reducts.len() {
            if reach[i].is_disjoint(&reach[j]) {
                return CheckReport::fail(
                    NAME,
                    Evidence::Peak {
                        source: g.term(node).clone(),
                        left: g.term(reducts[i]).clone(),
                        right: g.term(reducts[j]).clone(),
                    },
                );
            }
        }
    }
    CheckReport::pass(NAME)
}

/// Local confluence at every node of the graph.
pub fn wcr_in(g: &ReductionGraph) -> CheckReport {
    for n in g.graph.node_indices() {
        let report = local_confluence_at(g, n);
        if !report.passed() {
            return report;
        }
    }
    CheckReport::pass("wcr")
}

/// `t` with every `*` replaced by a fresh variable of type `Top`.
pub fn refresh(t: &Term) -> Term {
    let names = t.all_var_names();
    let z = if names.contains("z") { fresh_name("z", |n| names.contains(n)) } else { "z".to_string() };
    t.replace_stars(&Term::Var(z, Type::Top))
}

/// With `t~ = t[* := z]`: `t~ ->* t` and `t~` is strongly normalizing.
pub fn check_refresh_lemma(t: &Term, system: &RewriteSystem, caps: GraphCaps) -> CheckReport {
    const NAME: &str = "refresh";
    let refreshed = refresh(t);
    let g = build_graph(&refreshed, system, caps);
    if !g.contains(t) {
        if g.capped {
            return CheckReport::capped(NAME);
        }
        return CheckReport::fail(NAME, Evidence::Term(refreshed));
    }
    let sn = sn_in(&g);
    CheckReport { check: NAME, ..sn }
}

/// The lexicographic measure (variable occurrences, size).
pub fn g_measure(t: &Term) -> (usize, usize) {
    (t.var_occurrences(), t.size())
}

/// Every `g` step reachable from `t` through `g` steps alone strictly
/// decreases [`g_measure`]. In the naive system the `T` rule plays the
/// role of `g`.
pub fn check_g_measure(t: &Term, system: SystemId, caps: GraphCaps) -> CheckReport {
    const NAME: &str = "gmeasure";
    let rule = if system == SystemId::Naive { RuleId::T } else { RuleId::G };
    let g_only = RewriteSystem::new(system).with_rules(RuleSet::of(&[rule]));
    let g = build_graph(t, &g_only, caps);
    for (from, rule, to) in g.edges() {
        if g_measure(to) >= g_measure(from) {
            return CheckReport::fail(
                NAME,
                Evidence::Edge { from: from.clone(), rule, to: to.clone() },
            );
        }
    }
    if g.capped {
        return CheckReport::capped(NAME);
    }
    CheckReport::pass(NAME)
}

/// Not a pair or λ-abstraction; in the polymorphic systems also not a type
/// abstraction.
pub fn check_neutral(t: &Term, system: SystemId) -> bool {
    match t {
        Term::Pair(..) | Term::Abs(..) => false,
        Term::TyAbs(..) => !system.is_polymorphic(),
        _ => true,
    }
}
