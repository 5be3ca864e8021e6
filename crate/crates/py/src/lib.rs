//! Python bindings: `import equlat`.

use std::fmt::Display;

use num_bigint::BigUint;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use equlat_core::automatic::text::parse_dfa;
use equlat_core::automatic::{self as auto, corpus};
use equlat_core::constructions::{self as cons, Predicate, SingularFamilySpec};
use equlat_core::decider::{self, bounded_join, Side};
use equlat_core::partition::text::{parse_partition, parse_small};
use equlat_core::tm::{self as tm, zoo};
use equlat_core::verify;

fn value_err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A partition of `{0..n-1}`.
#[pyclass(name = "Partition", module = "equlat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPartition(equlat_core::Partition);

#[pymethods]
impl PyPartition {
    #[new]
    fn new(classes: Vec<Vec<usize>>) -> PyResult<Self> {
        equlat_core::Partition::from_classes(classes).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn bottom(n: usize) -> PyResult<Self> {
        equlat_core::Partition::bottom(n).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn top(n: usize) -> PyResult<Self> {
        equlat_core::Partition::top(n).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn singular(n: usize, class_: Vec<usize>) -> PyResult<Self> {
        equlat_core::Partition::singular(n, &class_).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn from_labels(labels: Vec<i64>) -> PyResult<Self> {
        equlat_core::Partition::from_labels(&labels).map(Self).map_err(value_err)
    }

    /// Reads the `class: ...` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_partition(text).map(Self).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.0.universe_size()
    }

    fn classes(&self) -> Vec<Vec<usize>> {
        self.0.classes()
    }

    fn class_count(&self) -> usize {
        self.0.class_count()
    }

    fn related(&self, x: usize, y: usize) -> PyResult<bool> {
        let n = self.0.universe_size();
        if x >= n || y >= n {
            return Err(value_err(format!("elements must be below {n}")));
        }
        Ok(self.0.related(x, y))
    }

    fn meet(&self, other: &Self) -> PyResult<Self> {
        self.0.meet(&other.0).map(Self).map_err(value_err)
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        self.0.join(&other.0).map(Self).map_err(value_err)
    }

    fn leq(&self, other: &Self) -> PyResult<bool> {
        self.0.leq(&other.0).map_err(value_err)
    }

    fn is_bottom(&self) -> bool {
        self.0.is_bottom()
    }

    fn is_top(&self) -> bool {
        self.0.is_top()
    }

    fn is_singular(&self) -> bool {
        self.0.is_singular()
    }

    fn is_complement(&self, other: &Self) -> PyResult<bool> {
        self.0.is_complement(&other.0).map_err(value_err)
    }

    fn least_element_complement(&self) -> Self {
        Self(self.0.least_element_complement())
    }

    /// Atoms as pairs `(x, y)`; their join is this partition.
    fn atoms(&self) -> Vec<(usize, usize)> {
        self.0.atomistic_decomposition().iter().map(|a| a.pair()).collect()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.classes())
    }
}

/// Equivalence on all naturals whose classes are determined below a threshold.
#[pyclass(name = "SmallEq", module = "equlat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySmallEq(equlat_core::SmallEq);

#[pymethods]
impl PySmallEq {
    /// `head[x]` labels `x < threshold`; the upper set joins the class of
    /// `tail`, or stands alone when `tail == threshold`.
    #[new]
    fn new(threshold: usize, head: Vec<usize>, tail: usize) -> PyResult<Self> {
        equlat_core::SmallEq::new(threshold, &head, tail).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_small(text).map(Self).map_err(value_err)
    }

    #[getter]
    fn threshold(&self) -> usize {
        self.0.threshold()
    }

    fn related(&self, x: usize, y: usize) -> bool {
        self.0.related(x, y)
    }

    fn meet(&self, other: &Self) -> Self {
        Self(self.0.meet(&other.0))
    }

    fn restrict(&self, n: usize) -> PyResult<PyPartition> {
        self.0.restrict(n).map(PyPartition).map_err(value_err)
    }

    fn tail_head_members(&self) -> Vec<usize> {
        self.0.tail_head_members()
    }

    fn is_singular(&self) -> bool {
        self.0.is_singular()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Equivalence recognised by a pair automaton.
#[pyclass(name = "AutomaticEq", module = "equlat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAutomaticEq(auto::AutomaticEq);

#[pymethods]
impl PyAutomaticEq {
    /// Parses a DFA text and checks the equivalence axioms exactly.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let dfa = parse_dfa(text).map_err(value_err)?;
        auto::AutomaticEq::new(dfa).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        corpus::by_name(name)
            .map(Self)
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    /// `{i}` against everything else.
    #[staticmethod]
    fn singleton(i: u64) -> Self {
        Self(auto::singleton_family(i))
    }

    fn decide(&self, m: u64, n: u64) -> bool {
        self.0.decide(m, n)
    }

    fn class_count(&self) -> usize {
        self.0.class_count()
    }

    fn class_index(&self, m: u64) -> usize {
        self.0.class_index(m)
    }

    fn representatives(&self) -> Vec<u64> {
        self.0.representatives()
    }

    fn restrict(&self, n: usize) -> PyResult<PyPartition> {
        self.0.restrict(n).map(PyPartition).map_err(value_err)
    }

    fn meet(&self, other: &Self) -> Self {
        Self(self.0.meet(&other.0))
    }

    fn join(&self, other: &Self) -> PyResult<Self> {
        self.0.join(&other.0).map(Self).map_err(value_err)
    }

    fn coarsen(&self, groups: Vec<Vec<usize>>) -> PyResult<Self> {
        self.0.coarsen(&groups).map(Self).map_err(value_err)
    }

    fn leq(&self, other: &Self) -> bool {
        self.0.leq(&other.0)
    }

    fn same_relation(&self, other: &Self) -> bool {
        self.0.same_relation(&other.0)
    }

    fn state_count(&self) -> usize {
        self.0.dfa().state_count()
    }

    fn dfa_text(&self) -> String {
        self.0.dfa().to_string()
    }
}

#[pyfunction]
fn corpus_names() -> Vec<String> {
    corpus::all().into_iter().map(|(n, _)| n).collect()
}

/// Class counts of the meets of the first `k` singleton relations.
#[pyfunction]
fn automatic_meet_growth(k: u64) -> Vec<usize> {
    auto::family_meet_demo(k)
}

/// A decidable equivalence on the naturals.
#[pyclass(name = "Decider", module = "equlat", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDecider(decider::DeciderEq);

#[pymethods]
impl PyDecider {
    #[staticmethod]
    fn bottom() -> Self {
        Self(decider::bottom())
    }

    #[staticmethod]
    fn top() -> Self {
        Self(decider::top())
    }

    #[staticmethod]
    fn parity() -> Self {
        Self(decider::parity())
    }

    #[staticmethod]
    fn modulo(k: u64) -> PyResult<Self> {
        if k == 0 {
            return Err(value_err("modulus must be positive"));
        }
        Ok(Self(decider::modulo(k)))
    }

    /// Singular relation over `even`, `odd` or `prime`.
    #[staticmethod]
    fn singular(predicate: &str) -> PyResult<Self> {
        Ok(Self(match predicate {
            "even" => decider::singular_from_predicate(|x| x % 2 == 0, "last bit"),
            "odd" => decider::singular_from_predicate(|x| x % 2 == 1, "last bit"),
            "prime" => decider::singular_from_predicate(decider::is_prime, "trial division"),
            other => return Err(value_err(format!("unknown predicate `{other}`"))),
        }))
    }

    /// Extends a partition of `{0..n-1}` by singletons.
    #[staticmethod]
    fn from_partition(p: &PyPartition) -> Self {
        Self(decider::from_partition(&p.0))
    }

    /// Wraps `f(x, y) -> bool`, sampling the axioms on `{0..sample_bound-1}`.
    /// An exception raised later by `f` aborts the calling operation.
    #[staticmethod]
    #[pyo3(signature = (f, cost_note = "python callable", sample_bound = 32))]
    fn from_callable(f: Py<PyAny>, cost_note: &str, sample_bound: u64) -> PyResult<Self> {
        let call = move |x: u64, y: u64| {
            Python::attach(|py| {
                f.bind(py)
                    .call1((x, y))
                    .and_then(|r| r.is_truthy())
                    .unwrap_or_else(|e| panic!("decider callable failed: {e}"))
            })
        };
        decider::DeciderEq::with_sample_bound(call, cost_note, sample_bound)
            .map(Self)
            .map_err(value_err)
    }

    fn decide(&self, x: u64, y: u64) -> bool {
        self.0.decide(&x, &y)
    }

    #[getter]
    fn cost_note(&self) -> String {
        self.0.cost_note().to_string()
    }

    fn meet(&self, other: &Self) -> Self {
        Self(self.0.meet(&other.0))
    }

    fn least_element_complement(&self) -> Self {
        Self(decider::least_element_complement(&self.0))
    }

    fn restrict(&self, n: usize) -> PyResult<PyPartition> {
        self.0.restrict(n).map(PyPartition).map_err(value_err)
    }

    /// Chain `[(m, None), (a1, side), ..., (n, side)]` with sides 1 or 2,
    /// or None when no chain fits in the bounds.
    fn bounded_join(
        &self,
        other: &Self,
        m: u64,
        n: u64,
        universe: u64,
        chain: usize,
    ) -> Option<Vec<(u64, Option<u8>)>> {
        let found = bounded_join(&self.0, &other.0, m, n, universe, chain);
        let c = found.chain()?;
        let mut out = vec![(c.points[0], None)];
        for (p, s) in c.points[1..].iter().zip(&c.sides) {
            out.push((*p, Some(if *s == Side::First { 1 } else { 2 })));
        }
        Some(out)
    }
}

/// A left-bounded single-tape Turing machine.
#[pyclass(name = "TuringMachine", module = "equlat", frozen, from_py_object)]
#[derive(Clone)]
struct PyMachine(tm::TmSpec);

#[pymethods]
impl PyMachine {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        tm::TmSpec::parse(text).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn zoo(name: &str) -> PyResult<Self> {
        zoo::by_name(name)
            .map(Self)
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    #[staticmethod]
    fn zoo_names() -> Vec<&'static str> {
        zoo::names().collect()
    }

    /// Halting step within `bound`, else None.
    #[pyo3(signature = (input = "", bound = 1000))]
    fn run(&self, input: &str, bound: u64) -> PyResult<Option<u64>> {
        Ok(tm::run(&self.0, input, bound).map_err(value_err)?.halt_step())
    }

    /// Halting step found through the join of the two clocked relations,
    /// with the chain of packed points, or None.
    #[pyo3(signature = (input = "", bound = 1000))]
    fn probe(&self, input: &str, bound: u64) -> PyResult<Option<(u64, Vec<BigUint>)>> {
        Ok(match tm::halting_probe(&self.0, input, bound).map_err(value_err)? {
            tm::ProbeResult::HaltsInSteps { steps, chain } => Some((steps, chain.points)),
            tm::ProbeResult::NoHaltWithinBound => None,
        })
    }

    fn halts_within(&self, n: u64) -> bool {
        tm::halts_within(&self.0, n)
    }

    fn code(&self) -> BigUint {
        tm::machine_code(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// Meet of the first `k` non-halting relations restricted to the codes of
/// `machines`; class `i` corresponds to `machines[i]`.
#[pyfunction]
fn nonhalt_family_meet(k: u64, machines: Vec<PyMachine>) -> PyResult<PyPartition> {
    let specs: Vec<tm::TmSpec> = machines.into_iter().map(|m| m.0).collect();
    tm::nonhalt_family_meet(k, &specs).map(PyPartition).map_err(value_err)
}

fn predicate(spec: &Bound<'_, PyAny>) -> PyResult<Predicate> {
    if let Ok(name) = spec.extract::<String>() {
        return match name.as_str() {
            "even" => Ok(Predicate::Even),
            "prime" => Ok(Predicate::Prime),
            other => Err(value_err(format!("unknown predicate `{other}`"))),
        };
    }
    if let Ok(bits) = spec.extract::<Vec<bool>>() {
        return Ok(Predicate::Bitmask(bits));
    }
    Err(value_err("predicate must be `even`, `prime` or a list of booleans"))
}

fn family_spec(pred: &Bound<'_, PyAny>, cuts: Option<Vec<usize>>, k: usize) -> PyResult<SingularFamilySpec> {
    let p = predicate(pred)?;
    match cuts {
        Some(c) => SingularFamilySpec::new(p, c),
        None => SingularFamilySpec::with_default_cuts(p, k),
    }
    .map_err(value_err)
}

/// Meet of the members `0..=k` of the singular family over `predicate`.
#[pyfunction]
#[pyo3(signature = (predicate, k, cuts = None))]
fn family_meet(predicate: &Bound<'_, PyAny>, k: usize, cuts: Option<Vec<usize>>) -> PyResult<PySmallEq> {
    let spec = family_spec(predicate, cuts, k)?;
    cons::truncated_family_meet(&spec, k).map(PySmallEq).map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (predicate, i, cuts = None))]
fn family_member(predicate: &Bound<'_, PyAny>, i: usize, cuts: Option<Vec<usize>>) -> PyResult<PySmallEq> {
    let spec = family_spec(predicate, cuts, i)?;
    cons::family_member(&spec, i).map(PySmallEq).map_err(value_err)
}

/// Join of the star atoms over `class_`, as a partition of `{0..n-1}`.
#[pyfunction]
fn atoms_to_singular(class_: Vec<usize>, n: usize) -> PyResult<PyPartition> {
    cons::atoms_to_singular(&class_, n).map(PyPartition).map_err(value_err)
}

/// Runs a property suite; returns `(suite, name, passed, detail)` rows.
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn run_verify(suite: &str) -> PyResult<Vec<(String, String, bool, String)>> {
    let suite: verify::Suite = suite.parse().map_err(value_err)?;
    Ok(verify::run(suite)
        .checks
        .into_iter()
        .map(|c| (c.suite.to_string(), c.name, c.passed, c.detail))
        .collect())
}

#[pymodule]
fn equlat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPartition>()?;
    m.add_class::<PySmallEq>()?;
    m.add_class::<PyAutomaticEq>()?;
    m.add_class::<PyDecider>()?;
    m.add_class::<PyMachine>()?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(automatic_meet_growth, m)?)?;
    m.add_function(wrap_pyfunction!(nonhalt_family_meet, m)?)?;
    m.add_function(wrap_pyfunction!(family_meet, m)?)?;
    m.add_function(wrap_pyfunction!(family_member, m)?)?;
    m.add_function(wrap_pyfunction!(atoms_to_singular, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
