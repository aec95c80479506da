//! Python bindings: formulas, translations, models, derivations and the
//! bounded search.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bimodal::cli::assignment_from_str;
use bimodal::formula::{alpha_eq, alpha_normalize, parse_infer, parse_with, ParseOptions};
use bimodal::kripke::{
    eval_classical, eval_forcing, eval_intuitionistic, parse_model, render_model, validate_birelational, BimodalModel,
};
use bimodal::proofs::{check_derivation, parse_derivation, render_inventories, SystemName, SystemSpec, Verdict};
use bimodal::search::{
    find_birelational_countermodel, find_countermodel, run_property_suite, SearchBounds, SearchOutcome, Semantics,
    SuiteOptions,
};
use bimodal::translate::{translate as run_translate, Kind};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(module = "bimodal_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Formula(bimodal::formula::Formula);

#[pymethods]
impl Formula {
    /// Parse with predicates inferred from use; unbound lowercase names are constants.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_infer(text).map(|(f, _)| Formula(f)).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.to_string())
    }

    fn __eq__(&self, other: &Formula) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    /// One of "L", "L^D", "L^G", "L^BM".
    #[getter]
    fn language(&self) -> String {
        self.0.language().to_string()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.0.depth()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn free_vars(&self) -> Vec<String> {
        self.0.free_vars().iter().map(|v| v.name().to_string()).collect()
    }

    fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq(&self.0, &other.0)
    }

    fn normalize(&self) -> Formula {
        Formula(alpha_normalize(&self.0))
    }
}

/// Translate `formula` by `kind` (godel, pot, star, ext-godel, ext-pot, reverse).
#[pyfunction]
#[pyo3(signature = (kind, formula, anchor = "XX"))]
fn translate(kind: &str, formula: &Formula, anchor: &str) -> PyResult<Formula> {
    let kind: Kind = kind.parse().map_err(err)?;
    let anchor = bimodal::formula::Var::new(anchor);
    run_translate(kind, &formula.0, &anchor).map(Formula).map_err(err)
}

#[pyclass(module = "bimodal_py", frozen)]
struct Model(BimodalModel);

#[pymethods]
impl Model {
    /// Parse the text model format. Validation is separate.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_model(text).map(|mf| Model(mf.model)).map_err(err)
    }

    fn __str__(&self) -> String {
        render_model(&self.0)
    }

    #[getter]
    fn worlds(&self) -> Vec<String> {
        self.0.frame().worlds().to_vec()
    }

    /// Violations of the bimodal frame conditions, or of the birelational
    /// ones when `intuitionistic` is set. Empty means valid.
    #[pyo3(signature = (intuitionistic = false))]
    fn violations(&self, intuitionistic: bool) -> Vec<String> {
        if intuitionistic {
            validate_birelational(&self.0).violations.iter().map(|v| v.to_string()).collect()
        } else {
            bimodal::kripke::validate_model(&self.0).violations.iter().map(|v| v.to_string()).collect()
        }
    }

    /// Truth of `formula` at `world` under `assign` (e.g. "x=a XX={a b}").
    #[pyo3(signature = (formula, world = None, semantics = "classical", assign = ""))]
    fn check(&self, formula: &str, world: Option<&str>, semantics: &str, assign: &str) -> PyResult<bool> {
        let m = &self.0;
        let mut sig = m.signature();
        let opts = ParseOptions { infer_predicates: true, ..Default::default() };
        let f = parse_with(formula, &mut sig, &opts).map_err(err)?;
        let w = match world {
            None => 0,
            Some(n) => m.frame().world_index(n).ok_or_else(|| err(format!("unknown world '{n}'")))?,
        };
        let a = assignment_from_str(m, assign).map_err(err)?;
        match semantics {
            "classical" => eval_classical(m, w, &a, &f),
            "forcing" => eval_forcing(m, w, &a, &f),
            "intuitionistic" => eval_intuitionistic(m, w, &a, &f),
            other => return Err(err(format!("unknown semantics '{other}'"))),
        }
        .map_err(err)
    }
}

/// Check a derivation file's text. Returns None when accepted, else the
/// rejected step number and reason.
#[pyfunction]
#[pyo3(signature = (text, system = None, reverse_subsumption = false))]
fn prove(text: &str, system: Option<&str>, reverse_subsumption: bool) -> PyResult<Option<(usize, String)>> {
    let d = parse_derivation(text).map_err(err)?;
    let spec = match (system, &d.system) {
        (Some(n), _) => SystemSpec::named(n.parse::<SystemName>().map_err(err)?),
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(err("no system given and no '# system:' header")),
    };
    let spec = if reverse_subsumption { spec.with_reverse_subsumption(true) } else { spec };
    Ok(match check_derivation(&d, &spec) {
        Verdict::Accepted => None,
        Verdict::Rejected { line, reason } => Some((line, reason)),
    })
}

fn bounds(max_worlds: usize, max_domain: usize, depth: usize) -> SearchBounds {
    SearchBounds { max_worlds, max_domain, max_pool_depth: depth, ..Default::default() }
}

/// First countermodel within the bounds as (model, world name, assignment),
/// or None when the bounds are exhausted.
#[pyfunction]
#[pyo3(signature = (formula, semantics = "classical", max_worlds = 3, max_domain = 2, jobs = 1))]
fn countermodel(
    formula: &Formula,
    semantics: &str,
    max_worlds: usize,
    max_domain: usize,
    jobs: usize,
) -> PyResult<Option<(Model, String, String)>> {
    let b = bounds(max_worlds, max_domain, 2);
    let outcome = match semantics {
        "classical" => find_countermodel(&formula.0, Semantics::Classical, &b, Default::default(), jobs),
        "forcing" => find_countermodel(&formula.0, Semantics::Forcing, &b, Default::default(), jobs),
        "intuitionistic" => find_birelational_countermodel(&formula.0, &b),
        other => return Err(err(format!("unknown semantics '{other}'"))),
    }
    .map_err(err)?;
    Ok(match outcome {
        SearchOutcome::Found(c) => {
            let w = c.model.frame().world_name(c.world).to_string();
            let a = c.assignment.render(&c.model);
            Some((Model(c.model), w, a))
        }
        SearchOutcome::Exhausted { .. } => None,
    })
}

/// Run a property suite; returns (passed, summary line, text report).
#[pyfunction]
#[pyo3(signature = (name, max_worlds = 2, max_domain = 2, depth = 2, jobs = 1))]
fn run_suite(py: Python<'_>, name: &str, max_worlds: usize, max_domain: usize, depth: usize, jobs: usize) -> PyResult<(bool, String, String)> {
    let b = bounds(max_worlds, max_domain, depth);
    let o = SuiteOptions { jobs, ..Default::default() };
    let r = py.detach(|| run_property_suite(name, &b, &o)).map_err(err)?;
    Ok((r.passed, r.summary(), r.render_text()))
}

/// The axiom inventory of every named system.
#[pyfunction]
fn inventory() -> String {
    render_inventories()
}

#[pymodule]
fn bimodal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Formula>()?;
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(countermodel, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(inventory, m)?)?;
    Ok(())
}
