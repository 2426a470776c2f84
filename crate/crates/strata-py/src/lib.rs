//! Python bindings over the stratified reasoning engine: theories, model
//! schemata, the optimism order, presupposition reports, and discourse
//! sessions.
//!
//! Layer contents and presupposed literals cross the boundary as machine
//! strings (`E!^d(xi0)`); `str()` on a schema gives the display form with
//! `ξ` subscripts.

use pyo3::exceptions::{PyRuntimeError, PyTypeError, PyValueError};
use pyo3::prelude::*;

use strata::logic::{Polarity, Theory as CoreTheory};
use strata::parser::{parse_formula, parse_theory, ParseError};
use strata::presup::{
    analyze as core_analyze, open_session, AnalysisError, DiscourseSession, PresupStatus,
    PresuppositionReport,
};
use strata::render::{machine_atom, machine_literal, machine_report, machine_schema, to_json};
use strata::schemata::{
    cancelled_atoms, compare as core_compare, optimistic as core_optimistic, project_model,
    ModelSchema, SchemaOrder,
};
use strata::tableaux::ExpansionBudget;

fn parse_failure(errors: Vec<ParseError>) -> PyErr {
    let lines: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
    PyValueError::new_err(lines.join("\n"))
}

fn analysis_failure(e: AnalysisError) -> PyErr {
    match e {
        AnalysisError::OpenUtterance(v) => {
            PyValueError::new_err(format!("utterance has free variable `{v}`"))
        }
        AnalysisError::Theory(msg) => PyValueError::new_err(msg),
        AnalysisError::Expansion(e) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn budget(steps: Option<u64>, universe: Option<usize>) -> ExpansionBudget {
    let mut b = ExpansionBudget::default();
    if let Some(s) = steps {
        b.max_steps = s;
    }
    if let Some(u) = universe {
        b.max_universe = u;
    }
    b
}

fn status_name(s: PresupStatus) -> &'static str {
    match s {
        PresupStatus::Presupposed => "presupposed",
        PresupStatus::Cancelled => "cancelled",
        PresupStatus::Disputed => "disputed",
    }
}

/// A parsed theory: an ordered list of tagged axioms.
#[pyclass(frozen, skip_from_py_object, module = "strata_py")]
#[derive(Clone)]
struct Theory {
    inner: CoreTheory,
}

#[pymethods]
impl Theory {
    /// Parses `.slt` axiom text.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Theory> {
        parse_theory(text)
            .map(|inner| Theory { inner })
            .map_err(parse_failure)
    }

    #[getter]
    fn axiom_ids(&self) -> Vec<String> {
        self.inner.axioms.iter().map(|a| a.id.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.axioms.len()
    }

    fn __repr__(&self) -> String {
        format!("Theory({} axioms)", self.inner.axioms.len())
    }
}

fn theory_from_any(obj: &Bound<'_, PyAny>) -> PyResult<CoreTheory> {
    if let Ok(t) = obj.cast::<Theory>() {
        return Ok(t.get().inner.clone());
    }
    match obj.extract::<String>() {
        Ok(text) => parse_theory(&text).map_err(parse_failure),
        Err(_) => Err(PyTypeError::new_err("expected a Theory or `.slt` text")),
    }
}

/// One model schema: a universe plus the four layers R^u, R̄^u, R^d, R̄^d.
#[pyclass(frozen, eq, hash, from_py_object, module = "strata_py")]
#[derive(Clone, PartialEq, Hash)]
struct Schema {
    inner: ModelSchema,
}

#[pymethods]
impl Schema {
    #[getter]
    fn universe(&self) -> Vec<String> {
        machine_schema(&self.inner).universe
    }

    #[getter]
    fn ru(&self) -> Vec<String> {
        self.inner.ru.iter().map(machine_atom).collect()
    }

    #[getter]
    fn ru_bar(&self) -> Vec<String> {
        self.inner.ru_bar.iter().map(machine_atom).collect()
    }

    #[getter]
    fn rd(&self) -> Vec<String> {
        self.inner.rd.iter().map(machine_atom).collect()
    }

    #[getter]
    fn rd_bar(&self) -> Vec<String> {
        self.inner.rd_bar.iter().map(machine_atom).collect()
    }

    /// Atoms whose defeasible claim is overridden by the opposite hard
    /// claim, prefixed with `¬` when the cancelled claim is a denial.
    #[getter]
    fn cancelled(&self) -> Vec<String> {
        cancelled_atoms(&self.inner)
            .into_iter()
            .map(|(a, pol)| match pol {
                Polarity::Pos => machine_atom(&a),
                Polarity::Neg => format!("¬{}", machine_atom(&a)),
            })
            .collect()
    }

    /// The same schema with cancelled defeasible claims dropped.
    fn project(&self) -> Schema {
        Schema {
            inner: project_model(&self.inner),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Schema(\"{}\")", self.inner)
    }
}

/// Ranks two schemata by optimism: "greater" means the first is the more
/// optimistic reading, "incomparable" that neither dominates.
#[pyfunction]
fn compare(a: &Schema, b: &Schema) -> &'static str {
    match core_compare(&a.inner, &b.inner) {
        SchemaOrder::Less => "less",
        SchemaOrder::Equal => "equal",
        SchemaOrder::Greater => "greater",
        SchemaOrder::Incomparable => "incomparable",
    }
}

/// Keeps the maximally optimistic candidates, input order preserved.
#[pyfunction]
fn optimistic(candidates: Vec<Schema>) -> PyResult<Vec<Schema>> {
    let inner: Vec<ModelSchema> = candidates.into_iter().map(|s| s.inner).collect();
    core_optimistic(&inner)
        .map(|kept| kept.into_iter().map(|inner| Schema { inner }).collect())
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// One defeasible inference carried by the utterances, with its unanimity
/// status across the optimistic schemata.
#[pyclass(frozen, eq, skip_from_py_object, module = "strata_py")]
#[derive(Clone, PartialEq)]
struct Presupposition {
    #[pyo3(get)]
    literal: String,
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    sources: Vec<String>,
}

#[pymethods]
impl Presupposition {
    fn __repr__(&self) -> String {
        format!("Presupposition({} {})", self.literal, self.status)
    }
}

/// The outcome of analyzing a theory: every schema the tableaux produced,
/// the projected optimistic selection, and the presupposition statuses.
#[pyclass(frozen, module = "strata_py")]
struct Report {
    inner: PresuppositionReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn unsatisfiable(&self) -> bool {
        self.inner.unsatisfiable
    }

    #[getter]
    fn schemata(&self) -> Vec<Schema> {
        self.inner
            .all_schemata
            .iter()
            .map(|m| Schema { inner: m.clone() })
            .collect()
    }

    #[getter]
    fn optimistic(&self) -> Vec<Schema> {
        self.inner
            .optimistic_schemata
            .iter()
            .map(|m| Schema { inner: m.clone() })
            .collect()
    }

    #[getter]
    fn presuppositions(&self) -> Vec<Presupposition> {
        self.inner
            .presuppositions
            .iter()
            .map(|p| Presupposition {
                literal: machine_literal(&p.literal),
                status: status_name(p.status).to_string(),
                sources: p.sources.iter().cloned().collect(),
            })
            .collect()
    }

    /// The stable machine-format report as a JSON string.
    fn to_json(&self) -> String {
        to_json(&machine_report(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "Report(unsatisfiable={}, schemata={}, presuppositions={})",
            if self.inner.unsatisfiable {
                "True"
            } else {
                "False"
            },
            self.inner.all_schemata.len(),
            self.inner.presuppositions.len()
        )
    }
}

/// Analyzes a theory, given as a `Theory` or raw `.slt` text.
#[pyfunction]
#[pyo3(signature = (theory, budget_steps = None, budget_universe = None))]
fn analyze(
    theory: &Bound<'_, PyAny>,
    budget_steps: Option<u64>,
    budget_universe: Option<usize>,
) -> PyResult<Report> {
    let t = theory_from_any(theory)?;
    core_analyze(&t, &budget(budget_steps, budget_universe))
        .map(|inner| Report { inner })
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// A discourse in progress. Adding an utterance returns a new session;
/// the old one keeps its report, so states can be compared or rolled back.
#[pyclass(frozen, module = "strata_py")]
struct Session {
    inner: DiscourseSession,
    spoken: Vec<String>,
}

#[pymethods]
impl Session {
    #[staticmethod]
    #[pyo3(signature = (theory, budget_steps = None, budget_universe = None))]
    fn open(
        theory: &Bound<'_, PyAny>,
        budget_steps: Option<u64>,
        budget_universe: Option<usize>,
    ) -> PyResult<Session> {
        let t = theory_from_any(theory)?;
        open_session(t, &budget(budget_steps, budget_universe))
            .map(|inner| Session {
                inner,
                spoken: Vec::new(),
            })
            .map_err(analysis_failure)
    }

    /// Parses one closed formula and asserts it as the next utterance.
    fn add(&self, utterance: &str) -> PyResult<Session> {
        let formula = parse_formula(utterance).map_err(parse_failure)?;
        let inner = self
            .inner
            .add_utterance(formula)
            .map_err(analysis_failure)?;
        let mut spoken = self.spoken.clone();
        spoken.push(utterance.to_string());
        Ok(Session { inner, spoken })
    }

    #[getter]
    fn report(&self) -> Report {
        Report {
            inner: self.inner.current_report.clone(),
        }
    }

    #[getter]
    fn utterances(&self) -> Vec<String> {
        self.spoken.clone()
    }

    fn __repr__(&self) -> String {
        format!("Session({} utterances)", self.spoken.len())
    }
}

#[pymodule]
fn strata_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Theory>()?;
    m.add_class::<Schema>()?;
    m.add_class::<Presupposition>()?;
    m.add_class::<Report>()?;
    m.add_class::<Session>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(optimistic, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
