use topcalc::frontend::cli::{DIVERGENT_PAIRS, GAUX_CTX, GAUX_SPLIT_CTX, GAUX_SPLIT_TERM, GAUX_TERM};
use topcalc::gen::{corpus, GenConfig};
use topcalc::metatheory::{check_local_confluence, check_unique_nf, local_confluence_at};
use topcalc::*;

fn parse(src: &str, ctx: &str, system: SystemId) -> Term {
    parse_term_in(src, &parse_context(ctx).unwrap(), system).unwrap()
}

fn caps() -> GraphCaps {
    GraphCaps::default()
}

#[test]
fn naive_divergences_have_two_normal_forms() {
    let expected = [
        ("y", "\\x:A. *"),
        ("x", "<*, *>"),
        ("y", "\\x:Top. y *"),
        ("x", "<p1 x, *>"),
        ("x", "<*, p2 x>"),
    ];
    for ((src, ctx), (l, r)) in DIVERGENT_PAIRS.iter().zip(expected) {
        let t = parse(src, ctx, SystemId::Naive);
        let g = build_graph(&t, &RewriteSystem::new(SystemId::Naive), caps());
        let mut nfs = g.normal_forms();
        nfs.sort();
        let mut want = vec![parse(l, ctx, SystemId::Naive), parse(r, ctx, SystemId::Naive)];
        want.sort();
        assert_eq!(nfs, want, "{src}");
        assert_eq!(check_unique_nf(&t, &RewriteSystem::new(SystemId::Cd), caps()).verdict, Verdict::Pass);
    }
}

#[test]
fn gaux_stated_witness_joins_either_way() {
    let t = parse(GAUX_TERM, GAUX_CTX, SystemId::Cd2Param);
    let id_z = parse("\\x:Z. x", "", SystemId::Cd2Param);
    let full = RewriteSystem::new(SystemId::Cd2Param);
    assert!(check_local_confluence(&t, &full, caps()).passed());
    let without = full.without(RuleId::GAux);
    let g = build_graph(&t, &without, caps());
    assert_eq!(g.normal_forms(), vec![id_z]);
    assert!(local_confluence_at(&g, g.root).passed());
}

#[test]
fn gaux_split_witness() {
    let t = parse(GAUX_SPLIT_TERM, GAUX_SPLIT_CTX, SystemId::Cd2Param);
    let id_z = parse("\\x:Z. x", "", SystemId::Cd2Param);
    let stuck = parse("p1 (h [Z])", GAUX_SPLIT_CTX, SystemId::Cd2Param);
    let full = RewriteSystem::new(SystemId::Cd2Param);
    let g = build_graph(&t, &full, caps());
    assert_eq!(g.normal_forms(), vec![id_z.clone()]);
    let g = build_graph(&t, &full.without(RuleId::GAux), caps());
    let mut nfs = g.normal_forms();
    nfs.sort();
    let mut want = vec![stuck, id_z];
    want.sort();
    assert_eq!(nfs, want);
    assert_eq!(local_confluence_at(&g, g.root).verdict, Verdict::Fail);
}

#[test]
fn poly_g_normal_form_not_closed() {
    let t = parse("(/\\X. \\x:X. \\y:X -> Y. y x) [Top]", "", SystemId::Cd2);
    let mid = parse("\\x:Top. \\y:Top -> Y. y x", "", SystemId::Cd2);
    let nf = parse("\\x:Top. \\y:Top -> Y. y *", "", SystemId::Cd2);
    let sys = RewriteSystem::new(SystemId::Cd2);
    for strategy in [Strategy::LeftmostOutermost, Strategy::LeftmostInnermost, Strategy::Random(3)] {
        let tr = normalize(&t, &sys, strategy, 100).unwrap();
        assert_eq!(tr.result, nf);
        assert!(tr.steps.iter().any(|s| s.before == mid));
    }
}

#[test]
fn every_cd_rule_fires_in_a_corpus() {
    let sys = RewriteSystem::new(SystemId::Cd);
    let mut seen = RuleSet::empty();
    for t in corpus(&GenConfig::new(SystemId::Cd, 42), 1000).unwrap() {
        for r in redexes(&t, &sys) {
            seen = seen.with(r.rule);
        }
        let g = build_graph(&t, &sys, caps());
        for (_, rule, _) in g.edges() {
            seen = seen.with(rule);
        }
    }
    assert_eq!(seen, RuleSet::for_system(SystemId::Cd));
}

#[test]
fn every_cd2_rule_fires_in_a_corpus() {
    let sys = RewriteSystem::new(SystemId::Cd2);
    let mut seen = RuleSet::empty();
    let cfg = GenConfig { max_term_size: 10, ..GenConfig::new(SystemId::Cd2, 42) };
    for t in corpus(&cfg, 500).unwrap() {
        for (_, rule, _) in build_graph(&t, &sys, caps()).edges() {
            seen = seen.with(rule);
        }
    }
    assert_eq!(seen, RuleSet::for_system(SystemId::Cd2));
}

#[test]
fn eq_decides_cd_examples() {
    let ctx = "x: A * Top, f: A -> Top, a: A, b: A";
    let sys = RewriteSystem::new(SystemId::Cd);
    let eq = |a: &str, b: &str| {
        eq_decide(&parse(a, ctx, SystemId::Cd), &parse(b, ctx, SystemId::Cd), &sys, 1000).unwrap()
    };
    assert!(eq("x", "<p1 x, star Top>"));
    assert!(eq("f", "\\y:A. *"));
    assert!(eq("p2 x", "*"));
    assert!(eq("p1 x", "p1 <p1 x, *>"));
    assert!(!eq("a", "b"));
    assert!(!eq("\\y:A. y", "\\y:A. a"));
}
