//! Python bindings: instances, feasibility, planning, verification and the oracle.

use pmr::config::{verify_plan, Move, Plan};
use pmr::feasibility::{self, Route, Verdict};
use pmr::io::{self, GenKind};
use pmr::oracle::{self, GeneratorMode, Limits, MoveSet};
use pmr::planner;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A pebble motion instance: graph, start and goal placements.
/// Pebbles are 0-based here; `start[i]` is the vertex of pebble `i`.
#[pyclass(frozen)]
struct Instance {
    inner: feasibility::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>, start: Vec<usize>, goal: Vec<usize>) -> PyResult<Self> {
        let inner = feasibility::Instance::from_parts(n, &edges, start, goal).map_err(value_err)?;
        Ok(Self { inner })
    }

    /// Parses the `pmr` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: io::parse_instance(text).map_err(value_err)?,
        })
    }

    /// Seeded generator; `kind` is one of cycle, cactus, grid, random.
    #[staticmethod]
    #[pyo3(signature = (kind, n, p, seed=0))]
    fn generate(kind: &str, n: usize, p: usize, seed: u64) -> PyResult<Self> {
        let kind: GenKind = kind.parse().map_err(value_err)?;
        Ok(Self {
            inner: io::gen_instance(kind, n, p, seed).map_err(value_err)?,
        })
    }

    fn to_text(&self) -> String {
        io::serialize_instance(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.p()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph.edges().to_vec()
    }

    #[getter]
    fn start(&self) -> Vec<usize> {
        self.inner.start.placement().to_vec()
    }

    #[getter]
    fn goal(&self) -> Vec<usize> {
        self.inner.goal.placement().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, p={}, edges={})",
            self.inner.n(),
            self.inner.p(),
            self.inner.graph.edge_count()
        )
    }
}

/// Outcome of `decide`.
#[pyclass(frozen, get_all)]
struct Decision {
    feasible: bool,
    /// Name of the failed condition, or None when feasible.
    reason: Option<String>,
    /// Which test settled the instance.
    route: String,
}

#[pymethods]
impl Decision {
    fn __repr__(&self) -> String {
        match &self.reason {
            None => format!("Decision(FEASIBLE, route={})", self.route),
            Some(r) => format!("Decision(INFEASIBLE {r}, route={})", self.route),
        }
    }
}

#[pyfunction]
fn decide(inst: &Instance) -> Decision {
    let d = feasibility::decide(&inst.inner);
    let route = match d.route {
        Route::Tree => "Tree",
        Route::Cycle => "Cycle",
        Route::Full => "Full",
        Route::OneEmpty => "OneEmpty",
        Route::FewPebbles => "FewPebbles",
        Route::Rearranged => "Rearranged",
    };
    Decision {
        feasible: d.verdict == Verdict::Feasible,
        reason: d.reason().map(|r| r.to_string()),
        route: route.to_string(),
    }
}

/// Moves as `("m", [from, to])` or `("r", cycle)` tuples.
fn moves_out(plan: &Plan) -> Vec<(&'static str, Vec<usize>)> {
    let mut out = Vec::new();
    for m in &plan.normalized().moves {
        match m {
            Move::Simple { from, to } => out.push(("m", vec![*from, *to])),
            Move::Rotation { cycle } => out.push(("r", cycle.clone())),
            Move::CompoundRotation { rotations } => out.extend(rotations.iter().map(|c| ("r", c.clone()))),
        }
    }
    out
}

fn moves_in(moves: Vec<(String, Vec<usize>)>) -> PyResult<Plan> {
    moves
        .into_iter()
        .map(|(tag, vs)| match (tag.as_str(), vs.as_slice()) {
            ("m", &[from, to]) => Ok(Move::simple(from, to)),
            ("r", _) if vs.len() >= 3 => Ok(Move::rotation(vs)),
            _ => Err(PyValueError::new_err(format!("bad move ({tag:?}, {vs:?})"))),
        })
        .collect::<PyResult<Vec<_>>>()
        .map(Plan::new)
}

/// Synthesizes a verified plan. Raises ValueError for infeasible instances.
#[pyfunction]
fn plan(inst: &Instance) -> PyResult<Vec<(&'static str, Vec<usize>)>> {
    match planner::plan(&inst.inner) {
        Ok(p) => Ok(moves_out(&p)),
        Err(e @ planner::PlanError::NotFeasible(_)) => Err(value_err(e)),
        Err(e) => Err(PyRuntimeError::new_err(e.to_string())),
    }
}

/// Plan in the `plan` text format.
#[pyfunction]
fn plan_text(inst: &Instance) -> PyResult<String> {
    let moves = plan(inst)?;
    Ok(io::serialize_plan(&moves_in(
        moves.into_iter().map(|(t, v)| (t.to_string(), v)).collect(),
    )?))
}

/// True iff every move is legal and the plan ends exactly at the goal.
#[pyfunction]
fn verify(inst: &Instance, moves: Vec<(String, Vec<usize>)>) -> PyResult<bool> {
    let p = moves_in(moves)?;
    Ok(verify_plan(&inst.inner.graph, &inst.inner.start, &inst.inner.goal, &p).is_verified())
}

/// Exhaustive search; raises RuntimeError past `max_states`.
#[pyfunction]
#[pyo3(signature = (inst, simple_only=false, max_states=5_000_000))]
fn oracle_decide(inst: &Instance, simple_only: bool, max_states: usize) -> PyResult<bool> {
    let moves = if simple_only {
        MoveSet::SimpleOnly
    } else {
        MoveSet::WithRotations
    };
    let limits = Limits {
        max_states,
        ..Limits::default()
    };
    oracle::oracle_decide_with(&inst.inner, moves, &limits).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// `(order, classification, diameter)` of the rotation group of the
/// instance's graph, counting compound rotations as one step.
#[pyfunction]
fn group_stats(inst: &Instance) -> PyResult<(usize, String, usize)> {
    let st = oracle::group_stats(&inst.inner.graph, GeneratorMode::Compound, &Limits::default())
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((st.order, st.classification.to_string(), st.diameter))
}

#[pymodule]
fn pmr_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Decision>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(plan_text, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_decide, m)?)?;
    m.add_function(wrap_pyfunction!(group_stats, m)?)?;
    Ok(())
}
