//! The `topcalc` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::canon::SystemId;
use crate::frontend::dot::{term_hash, to_dot};
use crate::frontend::parse::{parse_context, parse_term_in, Context};
use crate::gen::{corpus, GenConfig};
use crate::metatheory::{
    build_graph, check_g_measure, check_refresh_lemma, local_confluence_at, sn_in, unique_nf_in,
    wcr_in, CheckReport, GraphCaps, Verdict,
};
use crate::normalize::{eq_decide, eq_forced, normalize, EqError, Strategy, DEFAULT_FUEL};
use crate::rewrite::{RewriteSystem, RuleId};
use crate::syntax::Term;
use crate::typing::type_of;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "topcalc", version, about = "Rewriting and equality for the typed lambda calculus with surjective pairing and a terminal type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// Types of free variables, e.g. "x:A*Top, y:A->Top".
    #[arg(long, default_value = "")]
    ctx: String,
    #[arg(long, default_value = "cd")]
    system: SystemId,
}

#[derive(clap::Args, Debug, Clone, Copy)]
struct Caps {
    #[arg(long, default_value_t = GraphCaps::default().max_nodes)]
    max_nodes: usize,
    #[arg(long, default_value_t = GraphCaps::default().max_depth)]
    max_depth: usize,
}

impl From<Caps> for GraphCaps {
    fn from(c: Caps) -> Self {
        GraphCaps { max_nodes: c.max_nodes, max_depth: c.max_depth }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Lo,
    Li,
    Random,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DemoKind {
    Nonconfluence,
    Polygnf,
    Gaux,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the type of a term.
    Typecheck {
        term: String,
        #[command(flatten)]
        common: Common,
    },
    /// Rewrite a term to normal form.
    Normalize {
        term: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "lo")]
        strategy: StrategyArg,
        /// Seed for the random strategy.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two terms are equal.
    Eq {
        left: String,
        right: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Compare full normal-form sets by graph search (for naive and cd2param).
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Explore the reduction graph of a term.
    Graph {
        term: String,
        #[command(flatten)]
        common: Common,
        /// Write the graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check metatheoretic properties on random terms.
    Fuzz {
        #[arg(long, default_value = "cd")]
        system: SystemId,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Maximum term size.
        #[arg(long, default_value_t = 12)]
        size: usize,
        #[arg(long, default_value = "sn,cr,wcr")]
        checks: String,
        /// Generate terms without stars.
        #[arg(long)]
        star_free: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run a canned demonstration.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Check {
    Sn,
    Cr,
    Wcr,
    Refresh,
    GMeasure,
}

impl Check {
    fn parse_list(s: &str) -> Result<Vec<Check>, String> {
        s.split(',')
            .map(str::trim)
            .filter(|c| !c.is_empty())
            .map(|c| match c {
                "sn" => Ok(Check::Sn),
                "cr" => Ok(Check::Cr),
                "wcr" => Ok(Check::Wcr),
                "refresh" => Ok(Check::Refresh),
                "gmeasure" => Ok(Check::GMeasure),
                other => Err(format!("unknown check `{other}` (expected sn, cr, wcr, refresh or gmeasure)")),
            })
            .collect()
    }
}

/// Error carrying the exit code to report.
struct Failure(i32, String);

fn usage(msg: impl ToString) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

/// Runs the CLI on `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Typecheck { term, common } => {
            let t = load(&term, &common)?;
            let ty = type_of(&t, common.system).map_err(usage)?;
            emit(out, format_args!("{ty}"))?;
            Ok(EXIT_OK)
        }
        Command::Normalize { term, common, strategy, seed, fuel, trace } => {
            let t = load_typed(&term, &common)?;
            let strategy = match strategy {
                StrategyArg::Lo => Strategy::LeftmostOutermost,
                StrategyArg::Li => Strategy::LeftmostInnermost,
                StrategyArg::Random => Strategy::Random(seed),
            };
            let sys = RewriteSystem::new(common.system);
            match normalize(&t, &sys, strategy, fuel) {
                Ok(tr) => {
                    if trace {
                        emit(out, format_args!("{:>4}  {:<8} {:<10} {}", 0, "", "", t))?;
                        for (i, step) in tr.steps.iter().enumerate() {
                            let after = tr.steps.get(i + 1).map(|s| &s.before).unwrap_or(&tr.result);
                            let pos = step.redex.position.to_string();
                            emit(out, format_args!("{:>4}  {:<8} {:<10} {}", i + 1, step.redex.rule, pos, after))?;
                        }
                        emit(out, format_args!("normal form after {} steps:", tr.steps.len()))?;
                    }
                    emit(out, format_args!("{}", tr.result))?;
                    Ok(EXIT_OK)
                }
                Err(e) => Err(Failure(EXIT_EXHAUSTED, format!("{e}; last term: {}", e.last))),
            }
        }
        Command::Eq { left, right, common, fuel, force, caps } => {
            let t = load_typed(&left, &common)?;
            let u = load_typed(&right, &common)?;
            let sys = RewriteSystem::new(common.system);
            if force {
                let cmp = eq_forced(&t, &u, &sys, caps.into()).map_err(eq_failure)?;
                emit(out, format_args!("left normal forms:"))?;
                for n in &cmp.left {
                    emit(out, format_args!("  {n}"))?;
                }
                emit(out, format_args!("right normal forms:"))?;
                for n in &cmp.right {
                    emit(out, format_args!("  {n}"))?;
                }
                return if cmp.shares_normal_form() {
                    emit(out, format_args!("COMMON NORMAL FORM"))?;
                    Ok(EXIT_OK)
                } else {
                    emit(out, format_args!("NO COMMON NORMAL FORM"))?;
                    Ok(EXIT_PROPERTY)
                };
            }
            if eq_decide(&t, &u, &sys, fuel).map_err(eq_failure)? {
                emit(out, format_args!("EQUAL"))?;
                Ok(EXIT_OK)
            } else {
                emit(out, format_args!("NOT EQUAL"))?;
                Ok(EXIT_PROPERTY)
            }
        }
        Command::Graph { term, common, dot, caps } => {
            let t = load_typed(&term, &common)?;
            let g = build_graph(&t, &RewriteSystem::new(common.system), caps.into());
            if let Some(path) = dot {
                std::fs::write(&path, to_dot(&g))
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let nfs = g.normal_forms();
            emit(out, format_args!("nodes: {}", g.node_count()))?;
            emit(out, format_args!("edges: {}", g.edge_count()))?;
            emit(out, format_args!("capped: {}", g.capped))?;
            emit(out, format_args!("normal forms: {}", nfs.len()))?;
            for n in &nfs {
                emit(out, format_args!("  {n}"))?;
            }
            Ok(if g.capped {
                EXIT_EXHAUSTED
            } else if nfs.len() > 1 {
                EXIT_PROPERTY
            } else {
                EXIT_OK
            })
        }
        Command::Fuzz { system, seed, count, size, checks, star_free, caps } => {
            let checks = Check::parse_list(&checks).map_err(usage)?;
            let config = GenConfig { max_term_size: size, star_free, ..GenConfig::new(system, seed) };
            fuzz(&config, count, &checks, caps.into(), out)
        }
        Command::Demo { which } => match which {
            DemoKind::Nonconfluence => demo_nonconfluence(out),
            DemoKind::Polygnf => demo_polygnf(out),
            DemoKind::Gaux => demo_gaux(out),
        },
    }
}

fn emit(out: &mut dyn Write, args: std::fmt::Arguments<'_>) -> Result<(), Failure> {
    writeln!(out, "{args}").map_err(|e| Failure(EXIT_USAGE, format!("write failed: {e}")))
}

fn eq_failure(e: EqError) -> Failure {
    match e {
        EqError::FuelExhausted(_) | EqError::Capped => Failure(EXIT_EXHAUSTED, e.to_string()),
        _ => usage(e),
    }
}

fn load_ctx(common: &Common) -> Result<Context, Failure> {
    parse_context(&common.ctx).map_err(|e| usage(format!("in --ctx: {e}")))
}

fn load(src: &str, common: &Common) -> Result<Term, Failure> {
    let ctx = load_ctx(common)?;
    parse_term_in(src, &ctx, common.system).map_err(usage)
}

fn load_typed(src: &str, common: &Common) -> Result<Term, Failure> {
    let t = load(src, common)?;
    type_of(&t, common.system).map_err(usage)?;
    Ok(t)
}

fn run_checks(t: &Term, system: SystemId, checks: &[Check], caps: GraphCaps) -> Vec<CheckReport> {
    let sys = RewriteSystem::new(system);
    let needs_graph = checks.iter().any(|c| matches!(c, Check::Sn | Check::Cr | Check::Wcr));
    let g = needs_graph.then(|| build_graph(t, &sys, caps));
    checks
        .iter()
        .map(|c| match c {
            Check::Sn => sn_in(g.as_ref().expect("graph built")),
            Check::Cr => unique_nf_in(g.as_ref().expect("graph built")),
            Check::Wcr => wcr_in(g.as_ref().expect("graph built")),
            Check::Refresh => check_refresh_lemma(t, &sys, caps),
            Check::GMeasure => check_g_measure(t, system, caps),
        })
        .collect()
}

fn fuzz(
    config: &GenConfig,
    count: usize,
    checks: &[Check],
    caps: GraphCaps,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let terms = corpus(config, count).map_err(usage)?;
    let reports: Vec<Vec<CheckReport>> =
        terms.par_iter().map(|t| run_checks(t, config.system, checks, caps)).collect();
    let (mut pass, mut fail, mut capped) = (0, 0, 0);
    for (t, rs) in terms.iter().zip(&reports) {
        let hash = term_hash(t);
        for r in rs {
            emit(out, format_args!("{} {} {}", r.verdict, r.check, hash))?;
            match r.verdict {
                Verdict::Pass => pass += 1,
                Verdict::Fail => {
                    fail += 1;
                    emit(out, format_args!("  term: {t}"))?;
                    if let Some(w) = &r.witness {
                        emit(out, format_args!("  witness: {w}"))?;
                    }
                }
                Verdict::InconclusiveCapped => capped += 1,
            }
        }
    }
    emit(
        out,
        format_args!(
            "summary: system {} seed {} terms {} pass {} fail {} capped {}",
            config.system,
            config.seed,
            terms.len(),
            pass,
            fail,
            capped
        ),
    )?;
    Ok(if fail > 0 {
        EXIT_PROPERTY
    } else if capped > 0 {
        EXIT_EXHAUSTED
    } else {
        EXIT_OK
    })
}

fn parse_fixed(src: &str, ctx: &str, system: SystemId) -> Term {
    let ctx = parse_context(ctx).expect("demo context parses");
    parse_term_in(src, &ctx, system).expect("demo term parses")
}

/// The five divergent terms of the naive system, with their contexts.
pub const DIVERGENT_PAIRS: [(&str, &str); 5] = [
    ("\\x:A. y x", "y: A -> Top"),
    ("<p1 x, p2 x>", "x: Top * Top"),
    ("\\x:Top. y x", "y: Top -> B"),
    ("<p1 x, p2 x>", "x: A * Top"),
    ("<p1 x, p2 x>", "x: Top * A"),
];

fn demo_nonconfluence(out: &mut dyn Write) -> Result<i32, Failure> {
    let caps = GraphCaps::default();
    for (src, ctx) in DIVERGENT_PAIRS {
        let naive = parse_fixed(src, ctx, SystemId::Naive);
        emit(out, format_args!("term: {naive}    with {ctx}"))?;
        let g = build_graph(&naive, &RewriteSystem::new(SystemId::Naive), caps);
        let nfs: Vec<String> = g.normal_forms().iter().map(|n| format!("{{{n}}}")).collect();
        emit(out, format_args!("  naive normal forms: {}", nfs.join(" ")))?;
        let g = build_graph(&naive, &RewriteSystem::new(SystemId::Cd), caps);
        let nfs: Vec<String> = g.normal_forms().iter().map(|n| format!("{{{n}}}")).collect();
        emit(out, format_args!("  cd normal forms:    {}", nfs.join(" ")))?;
    }
    Ok(EXIT_OK)
}

/// `(/\X. \x:X. \y:X -> Y. y x) [Top]`: the `g`-normal forms are not
/// closed under reduction.
pub const POLY_GNF_TERM: &str = "(/\\X. \\x:X. \\y:X -> Y. y x) [Top]";

fn demo_polygnf(out: &mut dyn Write) -> Result<i32, Failure> {
    let t = parse_fixed(POLY_GNF_TERM, "", SystemId::Cd2);
    let sys = RewriteSystem::new(SystemId::Cd2);
    for strategy in [Strategy::LeftmostOutermost, Strategy::LeftmostInnermost] {
        let tr = normalize(&t, &sys, strategy, DEFAULT_FUEL)
            .map_err(|e| Failure(EXIT_EXHAUSTED, e.to_string()))?;
        emit(out, format_args!("strategy {strategy}:"))?;
        emit(out, format_args!("        {t}"))?;
        for (i, step) in tr.steps.iter().enumerate() {
            let after = tr.steps.get(i + 1).map(|s| &s.before).unwrap_or(&tr.result);
            emit(out, format_args!("  -{}-> {after}", step.redex.rule))?;
        }
    }
    Ok(EXIT_OK)
}

/// The auxiliary identity rule closes the peak of this term in cd2param.
pub const GAUX_TERM: &str = "(/\\X. \\x:X. w [X] x) [Z]";
pub const GAUX_CTX: &str = "w: forall Y. Y -> Y";
/// A term whose normal forms differ once the auxiliary rule is disabled.
pub const GAUX_SPLIT_TERM: &str = "(/\\X. p1 (h [X])) [Z]";
pub const GAUX_SPLIT_CTX: &str = "h: forall Y. (Y -> Y) * A";

fn demo_gaux(out: &mut dyn Write) -> Result<i32, Failure> {
    let caps = GraphCaps::default();
    let full = RewriteSystem::new(SystemId::Cd2Param);
    let without = full.without(RuleId::GAux);
    for (src, ctx) in [(GAUX_TERM, GAUX_CTX), (GAUX_SPLIT_TERM, GAUX_SPLIT_CTX)] {
        let t = parse_fixed(src, ctx, SystemId::Cd2Param);
        emit(out, format_args!("term: {t}    with {ctx}"))?;
        for (label, sys) in [("cd2param", &full), ("cd2param without g_aux", &without)] {
            let g = build_graph(&t, sys, caps);
            let wcr = local_confluence_at(&g, g.root);
            let nfs: Vec<String> = g.normal_forms().iter().map(|n| format!("{{{n}}}")).collect();
            emit(out, format_args!("  {label}: {} nodes, local confluence {}", g.node_count(), wcr.verdict))?;
            emit(out, format_args!("    normal forms: {}", nfs.join(" ")))?;
        }
    }
    Ok(EXIT_OK)
}
