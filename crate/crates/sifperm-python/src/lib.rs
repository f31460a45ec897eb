//! Python bindings: the permutation type and the main enumeration, formula
//! and forest operations, driven in-process.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use num_bigint::BigInt;

use sifperm::enumerate::{self, ClassFilter, ClassSpec};
use sifperm::forest;
use sifperm::formula::{self, FpTwoSource};
use sifperm::verify;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn parse_filter(name: &str) -> PyResult<ClassFilter> {
    Ok(match name {
        "all" => ClassFilter::All,
        "sif" => ClassFilter::Sif,
        "indecomposable" => ClassFilter::Indecomposable,
        "derangement" => ClassFilter::Derangement,
        "sif-block-sums" => ClassFilter::SifBlockSums,
        other => return Err(value_err(format!("unknown class filter {other:?}"))),
    })
}

/// A permutation of 1..=n in one-line notation.
#[pyclass(name = "Permutation", frozen, from_py_object)]
#[derive(Clone)]
struct PyPermutation {
    inner: sifperm::Permutation,
}

impl From<sifperm::Permutation> for PyPermutation {
    fn from(inner: sifperm::Permutation) -> Self {
        PyPermutation { inner }
    }
}

fn patterns_from_any(objs: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<sifperm::Permutation>> {
    objs.into_iter()
        .map(|obj| {
            if let Ok(p) = obj.extract::<PyPermutation>() {
                return Ok(p.inner);
            }
            let text: String = obj.extract()?;
            text.parse().map_err(value_err)
        })
        .collect()
}

#[pymethods]
impl PyPermutation {
    /// Accepts "562314", "10,3,4,...", or a list of values.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(values) = value.extract::<Vec<usize>>() {
            return sifperm::Permutation::new(values)
                .map(Into::into)
                .map_err(value_err);
        }
        let text: String = value.extract()?;
        text.parse::<sifperm::Permutation>()
            .map(Into::into)
            .map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}')", self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    #[getter]
    fn values(&self) -> Vec<usize> {
        self.inner.values().to_vec()
    }

    fn is_sif(&self) -> bool {
        self.inner.is_sif()
    }

    fn is_indecomposable(&self) -> bool {
        self.inner.is_indecomposable()
    }

    fn is_derangement(&self) -> bool {
        self.inner.is_derangement()
    }

    fn fixed_points(&self) -> Vec<usize> {
        self.inner.fixed_points()
    }

    fn adjacent_transpositions(&self) -> usize {
        self.inner.adjacent_transposition_count()
    }

    fn inverse(&self) -> Self {
        self.inner.inverse().into()
    }

    fn reverse(&self) -> Self {
        self.inner.reverse().into()
    }

    fn complement(&self) -> Self {
        self.inner.complement().into()
    }

    fn reverse_complement(&self) -> Self {
        self.inner.reverse_complement().into()
    }

    fn contains(&self, pattern: &Bound<'_, PyAny>) -> PyResult<bool> {
        let pats = patterns_from_any(vec![pattern.clone()])?;
        Ok(self.inner.contains(&pats[0]))
    }

    fn avoids(&self, pattern: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(!self.contains(pattern)?)
    }

    /// Proper stabilized intervals as (lo, hi) pairs, 1-indexed inclusive.
    fn stabilized_intervals(&self) -> Vec<(usize, usize)> {
        self.inner
            .stabilized_intervals()
            .into_iter()
            .map(|iv| (iv.lo, iv.hi))
            .collect()
    }

    /// Minimal boxes as ((lo, hi), reduced content) pairs.
    fn sif_boxes(&self) -> Vec<((usize, usize), PyPermutation)> {
        self.inner
            .sif_boxes()
            .boxes
            .into_iter()
            .map(|(iv, content)| ((iv.lo, iv.hi), content.into()))
            .collect()
    }

    fn smallest_box_size(&self) -> Option<usize> {
        self.inner.sif_boxes().smallest_size
    }

    fn direct_sum(&self, other: &PyPermutation) -> Self {
        self.inner.direct_sum(&other.inner).into()
    }

    fn skew_sum(&self, other: &PyPermutation) -> Self {
        self.inner.skew_sum(&other.inner).into()
    }

    fn inflate_at(&self, position: usize, block: &PyPermutation) -> PyResult<Self> {
        self.inner
            .inflate_at(position, &block.inner)
            .map(Into::into)
            .map_err(value_err)
    }

    fn insert_fixed_point(&self, j: usize) -> PyResult<Self> {
        self.inner.insert_fixed_point(j).map(Into::into).map_err(value_err)
    }

    fn insertion_position(&self) -> PyResult<usize> {
        self.inner.insertion_position_132().map_err(value_err)
    }

    /// Canonical balanced-parentheses form of the ordered forest (requires
    /// the permutation to avoid 231).
    fn to_forest(&self) -> PyResult<String> {
        forest::to_forest(&self.inner)
            .map(|f| f.to_string())
            .map_err(value_err)
    }

    #[staticmethod]
    fn reduce(word: Vec<usize>) -> PyResult<Self> {
        sifperm::Permutation::reduce(&word)
            .map(Into::into)
            .map_err(value_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        sifperm::Permutation::identity(n).into()
    }
}

/// All avoiders of the given patterns, lexicographic.
#[pyfunction]
#[pyo3(signature = (n, patterns))]
fn avoiders(n: usize, patterns: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<PyPermutation>> {
    let pats = patterns_from_any(patterns)?;
    enumerate::generate_avoiders(n, &pats)
        .map(|v| v.into_iter().map(Into::into).collect())
        .map_err(value_err)
}

/// Exact class count by pruned backtracking.
#[pyfunction]
#[pyo3(signature = (n, patterns, class_filter = "sif", workers = 1))]
fn count_class(
    n: usize,
    patterns: Vec<Bound<'_, PyAny>>,
    class_filter: &str,
    workers: usize,
) -> PyResult<BigInt> {
    let pats = patterns_from_any(patterns)?;
    let spec = ClassSpec::new(pats, parse_filter(class_filter)?).map_err(value_err)?;
    enumerate::count_class(n, &spec, workers).map_err(value_err)
}

/// Statistic tallies over the class: dict with fixed_points, fp_distance,
/// smallest_box and fp_adt maps.
#[pyfunction]
#[pyo3(signature = (n, patterns, class_filter = "all", workers = 1))]
fn tally_stats<'py>(
    py: Python<'py>,
    n: usize,
    patterns: Vec<Bound<'py, PyAny>>,
    class_filter: &str,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let pats = patterns_from_any(patterns)?;
    let spec = ClassSpec::new(pats, parse_filter(class_filter)?).map_err(value_err)?;
    let tally = enumerate::tally_stats(n, &spec, workers).map_err(value_err)?;
    let out = PyDict::new(py);
    let fp = PyDict::new(py);
    for (k, v) in &tally.by_fixed_points {
        fp.set_item(k, v.clone())?;
    }
    let dist = PyDict::new(py);
    for (d, v) in &tally.by_fp_distance {
        dist.set_item(d, v.clone())?;
    }
    let boxes = PyDict::new(py);
    for (k, v) in &tally.by_smallest_box {
        boxes.set_item(k, v.clone())?;
    }
    let fp_adt = PyDict::new(py);
    for ((k, j), v) in &tally.by_fp_and_adt {
        fp_adt.set_item((k, j), v.clone())?;
    }
    out.set_item("fixed_points", fp)?;
    out.set_item("fp_distance", dist)?;
    out.set_item("smallest_box", boxes)?;
    out.set_item("fp_adt", fp_adt)?;
    Ok(out)
}

/// Count of 231-avoiders decomposing into SIF blocks of size >= 3, computed
/// by two routes and asserted equal.
#[pyfunction]
#[pyo3(signature = (n, workers = 1))]
fn count_sif_block_sums(n: usize, workers: usize) -> PyResult<BigInt> {
    enumerate::count_sif_block_sums_231(n, workers).map_err(runtime_err)
}

#[pyfunction]
fn catalan(n: usize) -> BigInt {
    sifperm::numbers::catalan(n)
}

/// SIF counts under a single size-3 pattern via the registered formula,
/// terms for sizes 1..=n. The 123 row is fed oracle two-fixed-point counts.
#[pyfunction]
#[pyo3(signature = (pattern, n, workers = 1))]
fn sif_formula_terms(
    pattern: &Bound<'_, PyAny>,
    n: usize,
    workers: usize,
) -> PyResult<Vec<BigInt>> {
    let pat = &patterns_from_any(vec![pattern.clone()])?[0];
    let needs_f2 = pat.values() == [1, 2, 3];
    let terms = if needs_f2 {
        if n > 14 {
            return Err(value_err("the 123 row is oracle-fed and capped at n = 14"));
        }
        let f2 = verify::oracle_f2_totals(n.max(3), workers).map_err(runtime_err)?;
        formula::sif_single_pattern(pat, n, FpTwoSource::Supplied(&f2)).map_err(value_err)?
    } else {
        formula::sif_single_pattern(pat, n, FpTwoSource::Conjectured).map_err(value_err)?
    };
    Ok(terms[1..].to_vec())
}

/// SIF count for a pair of distinct size-3 patterns via the closed forms.
#[pyfunction]
fn pair_count(p1: &Bound<'_, PyAny>, p2: &Bound<'_, PyAny>, n: usize) -> PyResult<BigInt> {
    let pats = patterns_from_any(vec![p1.clone(), p2.clone()])?;
    formula::pair_class_count(&pats[0], &pats[1], n).map_err(value_err)
}

/// The conjectured two-fixed-point count at a given distance.
#[pyfunction]
fn conjectured_f2(n: usize, d: usize) -> PyResult<BigInt> {
    if d == 0 || 2 * d > n {
        return Err(value_err(format!(
            "distance must satisfy 1 <= d <= n/2, got n={n}, d={d}"
        )));
    }
    formula::conjectured_f2_by_distance(n, d).map_err(runtime_err)
}

/// Block-transform terms for sizes 0..=n.
#[pyfunction]
fn block_sum_terms(n: usize) -> Vec<BigInt> {
    formula::t231_terms(n)
}

/// The unique 231-avoider with the given forest shape.
#[pyfunction]
fn shape_to_permutation(shape: &str) -> PyResult<PyPermutation> {
    let parsed: forest::ForestShape = shape.parse().map_err(value_err)?;
    Ok(forest::to_permutation(&parsed).into())
}

/// Runs one verification suite; returns a dict with pass/fail and details.
#[pyfunction]
#[pyo3(signature = (suite, n_max = 8, workers = 1))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    n_max: usize,
    workers: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let which = verify::Suite::ALL
        .iter()
        .find(|s| s.name() == suite)
        .copied()
        .ok_or_else(|| value_err(format!("unknown suite {suite:?}")))?;
    let report = verify::run_suite(which, n_max, workers).map_err(runtime_err)?;
    let out = PyDict::new(py);
    out.set_item("suite", report.suite)?;
    out.set_item("n_max", report.n_max)?;
    out.set_item("checks", report.checks)?;
    out.set_item("passed", report.passed())?;
    out.set_item("failures", report.failures.clone())?;
    out.set_item("conjecture_violations", report.conjecture_violations.clone())?;
    Ok(out)
}

#[pymodule]
fn sifperm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_function(wrap_pyfunction!(avoiders, m)?)?;
    m.add_function(wrap_pyfunction!(count_class, m)?)?;
    m.add_function(wrap_pyfunction!(tally_stats, m)?)?;
    m.add_function(wrap_pyfunction!(count_sif_block_sums, m)?)?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(sif_formula_terms, m)?)?;
    m.add_function(wrap_pyfunction!(pair_count, m)?)?;
    m.add_function(wrap_pyfunction!(conjectured_f2, m)?)?;
    m.add_function(wrap_pyfunction!(block_sum_terms, m)?)?;
    m.add_function(wrap_pyfunction!(shape_to_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
