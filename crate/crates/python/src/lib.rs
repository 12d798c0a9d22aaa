//! Python bindings: `import topcalc_py`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use topcalc::frontend::{parse_context, parse_term_in, parse_type as parse_ty, term_hash};
use topcalc::gen::{corpus as gen_corpus, GenConfig};
use topcalc::metatheory::{
    build_graph, check_g_measure, check_refresh_lemma, sn_in, unique_nf_in, wcr_in, CheckReport,
    GraphCaps,
};
use topcalc::normalize::{eq_decide, normalize as run_normalize, Strategy};
use topcalc::{canon, redexes as find_redexes, type_of as synth_type, RewriteSystem, SystemId, Term, Type};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn system(name: &str) -> PyResult<SystemId> {
    name.parse().map_err(value_error)
}

fn strategy(name: &str, seed: u64) -> PyResult<Strategy> {
    match name {
        "lo" => Ok(Strategy::LeftmostOutermost),
        "li" => Ok(Strategy::LeftmostInnermost),
        "random" => Ok(Strategy::Random(seed)),
        other => Err(value_error(format!("unknown strategy `{other}` (expected lo, li or random)"))),
    }
}

/// A type, compared up to renaming of bound type variables.
#[pyclass(name = "Type", frozen, eq, hash, skip_from_py_object, module = "topcalc_py")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyType {
    inner: Type,
}

#[pymethods]
impl PyType {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyType { inner: parse_ty(text).map_err(value_error)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Type({:?})", self.inner.to_string())
    }

    #[pyo3(signature = (system="cd"))]
    fn is_iso_top(&self, system: &str) -> PyResult<bool> {
        Ok(canon::is_iso_top(&self.inner, self::system(system)?))
    }
}

/// A term, compared up to α-equivalence.
#[pyclass(name = "Term", frozen, eq, hash, skip_from_py_object, module = "topcalc_py")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyTerm {
    inner: Term,
}

#[pymethods]
impl PyTerm {
    #[new]
    #[pyo3(signature = (text, ctx="", system="cd"))]
    fn new(text: &str, ctx: &str, system: &str) -> PyResult<Self> {
        parse_term(text, ctx, system)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.inner.to_string())
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn hash_hex(&self) -> String {
        term_hash(&self.inner)
    }

    fn free_vars(&self) -> Vec<(String, String)> {
        self.inner.free_vars().into_iter().map(|(x, ty)| (x, ty.to_string())).collect()
    }
}

#[pyfunction]
#[pyo3(signature = (text, ctx="", system="cd"))]
fn parse_term(text: &str, ctx: &str, system: &str) -> PyResult<PyTerm> {
    let ctx = parse_context(ctx).map_err(value_error)?;
    let inner = parse_term_in(text, &ctx, self::system(system)?).map_err(value_error)?;
    Ok(PyTerm { inner })
}

#[pyfunction]
fn parse_type(text: &str) -> PyResult<PyType> {
    PyType::new(text)
}

#[pyfunction]
#[pyo3(signature = (term, system="cd"))]
fn type_of(term: &PyTerm, system: &str) -> PyResult<PyType> {
    let inner = synth_type(&term.inner, self::system(system)?).map_err(value_error)?;
    Ok(PyType { inner })
}

/// Normal form of `term`; raises `RuntimeError` when fuel runs out.
#[pyfunction]
#[pyo3(signature = (term, system="cd", strategy="lo", seed=0, fuel=10_000))]
fn normalize(term: &PyTerm, system: &str, strategy: &str, seed: u64, fuel: usize) -> PyResult<PyTerm> {
    Ok(PyTerm { inner: trace_of(term, system, strategy, seed, fuel)?.result })
}

/// Every step as `(rule, position, term after the step)`.
#[pyfunction]
#[pyo3(signature = (term, system="cd", strategy="lo", seed=0, fuel=10_000))]
fn trace(
    term: &PyTerm,
    system: &str,
    strategy: &str,
    seed: u64,
    fuel: usize,
) -> PyResult<Vec<(String, Vec<usize>, PyTerm)>> {
    let tr = trace_of(term, system, strategy, seed, fuel)?;
    let mut out = Vec::with_capacity(tr.steps.len());
    for (i, step) in tr.steps.iter().enumerate() {
        let after = tr.steps.get(i + 1).map(|s| &s.before).unwrap_or(&tr.result).clone();
        out.push((step.redex.rule.to_string(), step.redex.position.0.clone(), PyTerm { inner: after }));
    }
    Ok(out)
}

fn trace_of(
    term: &PyTerm,
    system: &str,
    strategy: &str,
    seed: u64,
    fuel: usize,
) -> PyResult<topcalc::normalize::Trace> {
    let sys = RewriteSystem::new(self::system(system)?);
    run_normalize(&term.inner, &sys, self::strategy(strategy, seed)?, fuel)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// `(position, rule)` for every redex, outermost first.
#[pyfunction]
#[pyo3(signature = (term, system="cd"))]
fn redexes(term: &PyTerm, system: &str) -> PyResult<Vec<(Vec<usize>, String)>> {
    let sys = RewriteSystem::new(self::system(system)?);
    Ok(find_redexes(&term.inner, &sys).into_iter().map(|r| (r.position.0, r.rule.to_string())).collect())
}

/// Decides equality in `cd` or `cd2`.
#[pyfunction]
#[pyo3(signature = (left, right, system="cd", fuel=10_000))]
fn equal(left: &PyTerm, right: &PyTerm, system: &str, fuel: usize) -> PyResult<bool> {
    let sys = RewriteSystem::new(self::system(system)?);
    eq_decide(&left.inner, &right.inner, &sys, fuel).map_err(value_error)
}

/// All normal forms reachable from `term`, and whether the search was capped.
#[pyfunction]
#[pyo3(signature = (term, system="cd", max_nodes=100_000, max_depth=500))]
fn normal_forms(term: &PyTerm, system: &str, max_nodes: usize, max_depth: usize) -> PyResult<(Vec<PyTerm>, bool)> {
    let sys = RewriteSystem::new(self::system(system)?);
    let g = build_graph(&term.inner, &sys, GraphCaps { max_nodes, max_depth });
    Ok((g.normal_forms().into_iter().map(|inner| PyTerm { inner }).collect(), g.capped))
}

/// Runs one of `sn`, `cr`, `wcr`, `refresh`, `gmeasure`; returns
/// `(verdict, witness)` with verdict `PASS`, `FAIL` or `CAPPED`.
#[pyfunction]
#[pyo3(signature = (term, name, system="cd", max_nodes=100_000, max_depth=500))]
fn check(
    term: &PyTerm,
    name: &str,
    system: &str,
    max_nodes: usize,
    max_depth: usize,
) -> PyResult<(String, Option<String>)> {
    let id = self::system(system)?;
    let sys = RewriteSystem::new(id);
    let caps = GraphCaps { max_nodes, max_depth };
    let t = &term.inner;
    let report: CheckReport = match name {
        "sn" => sn_in(&build_graph(t, &sys, caps)),
        "cr" => unique_nf_in(&build_graph(t, &sys, caps)),
        "wcr" => wcr_in(&build_graph(t, &sys, caps)),
        "refresh" => check_refresh_lemma(t, &sys, caps),
        "gmeasure" => check_g_measure(t, id, caps),
        other => return Err(value_error(format!("unknown check `{other}`"))),
    };
    Ok((report.verdict.to_string(), report.witness.map(|w| w.to_string())))
}

/// The canonical term of a type isomorphic to `Top`.
#[pyfunction]
#[pyo3(signature = (ty, system="cd"))]
fn star(ty: &PyType, system: &str) -> PyResult<PyTerm> {
    let inner = canon::star(&ty.inner, self::system(system)?).map_err(value_error)?;
    Ok(PyTerm { inner })
}

#[pyfunction]
#[pyo3(signature = (ty, system="cd"))]
fn is_iso_top(ty: &PyType, system: &str) -> PyResult<bool> {
    ty.is_iso_top(system)
}

/// `count` distinct random well-typed terms.
#[pyfunction]
#[pyo3(signature = (system="cd", seed=0, count=100, size=12, star_free=false))]
fn corpus(system: &str, seed: u64, count: usize, size: usize, star_free: bool) -> PyResult<Vec<PyTerm>> {
    let cfg = GenConfig { max_term_size: size, star_free, ..GenConfig::new(self::system(system)?, seed) };
    let terms = gen_corpus(&cfg, count).map_err(value_error)?;
    Ok(terms.into_iter().map(|inner| PyTerm { inner }).collect())
}

#[pymodule]
fn topcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyTerm>()?;
    m.add_class::<PyType>()?;
    m.add_function(wrap_pyfunction!(parse_term, m)?)?;
    m.add_function(wrap_pyfunction!(parse_type, m)?)?;
    m.add_function(wrap_pyfunction!(type_of, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(redexes, m)?)?;
    m.add_function(wrap_pyfunction!(equal, m)?)?;
    m.add_function(wrap_pyfunction!(normal_forms, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(is_iso_top, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
