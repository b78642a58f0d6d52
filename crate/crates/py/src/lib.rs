//! Python module `ebbi`. Results come back as plain dicts and lists.

use ebbi_core::classical::{analytic_correlation, sample_pair, AllergyScenario, DaySchedule, FactorizableModel, MuKind};
use ebbi_core::dataset::{self, DichotomicDataset, PairHypothesis};
use ebbi_core::leggett_garg::{lg_inequality_check, lg_pair_correlations, lg_triple_correlations, sample_triples, LGParams};
use ebbi_core::nonneg::{self, ExpansionCoeffs2, ExpansionCoeffs3, FuncTable2, FuncTable3};
use ebbi_core::pipeline::{self, Source, ThreeSettingConfig, TimingModel, Window};
use ebbi_core::quantum::{self, UnitVector3};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: ebbi_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serialize through JSON into native Python objects.
fn py_value<T: Serialize>(py: Python<'_>, t: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(t).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

fn hypothesis(h: &str) -> PyResult<PairHypothesis> {
    match h {
        "same" => Ok(PairHypothesis::SameOutcome),
        "anti" => Ok(PairHypothesis::Anticorrelated),
        _ => Err(PyValueError::new_err(format!("hypothesis {h:?}: expected 'same' or 'anti'"))),
    }
}

fn unit(v: [f64; 3]) -> PyResult<UnitVector3> {
    UnitVector3::new(v[0], v[1], v[2]).map_err(err)
}

/// A ±1 dataset with `n` columns.
#[pyclass(name = "Dataset")]
struct PyDataset(DichotomicDataset);

#[pymethods]
impl PyDataset {
    #[new]
    fn new(rows: Vec<Vec<i8>>) -> PyResult<Self> {
        let n = rows.first().map_or(0, Vec::len);
        DichotomicDataset::new(n, rows).map(PyDataset).map_err(err)
    }

    #[staticmethod]
    fn read_csv(path: &str) -> PyResult<Self> {
        let f = std::fs::File::open(path)?;
        DichotomicDataset::read_csv(f).map(PyDataset).map_err(err)
    }

    fn write_csv(&self, path: &str) -> PyResult<()> {
        let f = std::fs::File::create(path)?;
        self.0.write_csv(f).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn rows(&self) -> Vec<Vec<i8>> {
        self.0.rows().to_vec()
    }

    /// Correlation of columns `i` and `j` (1-based).
    fn correlation(&self, i: usize, j: usize) -> PyResult<f64> {
        self.0.correlation(i, j).map(|c| c.value).map_err(err)
    }

    fn mean(&self, i: usize) -> PyResult<f64> {
        self.0.mean(i).map_err(err)
    }

    /// Boole triple family (n = 3) or CHSH family (n = 4).
    fn check(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        match self.0.n() {
            3 => {
                let [a, b, c] = self.0.triple_correlations().map_err(err)?;
                py_value(py, &dataset::check_boole_triple(a, b, c).map_err(err)?)
            }
            4 => {
                let [a, b, c, d] = self.0.chsh_correlations().map_err(err)?;
                py_value(py, &dataset::check_chsh(a, b, c, d).map_err(err)?)
            }
            n => Err(PyValueError::new_err(format!("no inequality family for n = {n}"))),
        }
    }

    fn __len__(&self) -> usize {
        self.0.m()
    }

    fn __repr__(&self) -> String {
        format!("Dataset(n={}, m={})", self.0.n(), self.0.m())
    }
}

#[pyfunction]
#[pyo3(signature = (f12, f13, f23, hypothesis="same"))]
fn check_boole_triple(py: Python<'_>, f12: f64, f13: f64, f23: f64, hypothesis: &str) -> PyResult<Py<PyAny>> {
    let h = self::hypothesis(hypothesis)?;
    py_value(py, &dataset::check_boole_triple_under(f12, f13, f23, h).map_err(err)?)
}

#[pyfunction]
fn check_chsh(py: Python<'_>, f13: f64, f23: f64, f14: f64, f24: f64) -> PyResult<Py<PyAny>> {
    py_value(py, &dataset::check_chsh(f13, f23, f14, f24).map_err(err)?)
}

#[pyfunction]
fn check_pair_bound(py: Python<'_>, f: f64, fhat: f64, ftilde: f64) -> PyResult<Py<PyAny>> {
    py_value(py, &dataset::check_pair_bound(f, fhat, ftilde).map_err(err)?)
}

/// Coefficients `[e0, e1, e2, e12]` of a table in order `++, +-, -+, --`.
#[pyfunction]
fn expand2(values: [f64; 4]) -> PyResult<[f64; 4]> {
    let c = nonneg::expand2(&FuncTable2::new(values).map_err(err)?);
    Ok([c.e0, c.e1, c.e2, c.e12])
}

#[pyfunction]
fn synth2(c: [f64; 4]) -> [f64; 4] {
    nonneg::synth2(&ExpansionCoeffs2 { e0: c[0], e1: c[1], e2: c[2], e12: c[3] }).values
}

/// Coefficients `[e0, e1, e2, e3, e12, e13, e23, e123]`.
#[pyfunction]
fn expand3(values: [f64; 8]) -> PyResult<[f64; 8]> {
    let c = nonneg::expand3(&FuncTable3::new(values).map_err(err)?);
    Ok([c.e0, c.e1, c.e2, c.e3, c.e12, c.e13, c.e23, c.e123])
}

#[pyfunction]
fn synth3(c: [f64; 8]) -> [f64; 8] {
    nonneg::synth3(&ExpansionCoeffs3 {
        e0: c[0],
        e1: c[1],
        e2: c[2],
        e3: c[3],
        e12: c[4],
        e13: c[5],
        e23: c[6],
        e123: c[7],
    })
    .values
}

#[pyfunction]
fn ebbi_check(py: Python<'_>, e0: f64, e12: f64, e13: f64, e23: f64) -> PyResult<Py<PyAny>> {
    py_value(py, &nonneg::ebbi_check(e0, e12, e13, e23).map_err(err)?)
}

#[pyfunction]
fn construct_g3(a0: f64, a12: f64, a13: f64, a23: f64) -> PyResult<[f64; 8]> {
    Ok(nonneg::construct_g3(a0, a12, a13, a23).map_err(err)?.values)
}

fn tables(f: [f64; 4], fhat: [f64; 4], ftilde: [f64; 4]) -> PyResult<[FuncTable2; 3]> {
    Ok([
        FuncTable2::new(f).map_err(err)?,
        FuncTable2::new(fhat).map_err(err)?,
        FuncTable2::new(ftilde).map_err(err)?,
    ])
}

#[pyfunction]
fn marginals_compatible(py: Python<'_>, f: [f64; 4], fhat: [f64; 4], ftilde: [f64; 4]) -> PyResult<Py<PyAny>> {
    let [a, b, c] = tables(f, fhat, ftilde)?;
    py_value(py, &nonneg::marginals_compatible(&a, &b, &c))
}

/// Raises `ValueError` when no non-negative joint function exists.
#[pyfunction]
fn reconstruct_f3(py: Python<'_>, f: [f64; 4], fhat: [f64; 4], ftilde: [f64; 4]) -> PyResult<Py<PyAny>> {
    let [a, b, c] = tables(f, fhat, ftilde)?;
    py_value(py, &nonneg::reconstruct_f3(&a, &b, &c).map_err(err)?)
}

#[pyfunction]
fn singlet_correlation(a: [f64; 3], b: [f64; 3]) -> PyResult<f64> {
    Ok(quantum::singlet_correlation(&unit(a)?, &unit(b)?))
}

/// Singlet table `P(S1, S2)` in order `++, +-, -+, --`.
#[pyfunction]
fn eprb_pair_table(a: [f64; 3], b: [f64; 3]) -> PyResult<Vec<f64>> {
    Ok(quantum::eprb_pair_table(&unit(a)?, &unit(b)?).values().to_vec())
}

#[pyfunction]
fn extended_eprb3(py: Python<'_>, ta: f64, tb: f64, tc: f64) -> PyResult<Py<PyAny>> {
    py_value(py, &quantum::extended_eprb_prob3(ta, tb, tc).map_err(err)?)
}

#[pyfunction]
fn extended_eprb4(py: Python<'_>, ta: f64, tb: f64, tc: f64, td: f64) -> PyResult<Py<PyAny>> {
    let [a, b, c, d] = [ta, tb, tc, td].map(UnitVector3::coplanar);
    let q = quantum::extended_eprb_prob4(&a, &b, &c, &d);
    py_value(py, &serde_json::json!({ "table": q.table, "correlations": q.correlations, "chsh": q.correlations.chsh_report() }))
}

#[pyfunction]
fn schwartz_bound(py: Python<'_>, a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> PyResult<Py<PyAny>> {
    py_value(py, &quantum::schwartz_bound(&unit(a)?, &unit(b)?, &unit(c)?))
}

/// Triple and pair-run correlations with their inequality reports.
#[pyfunction]
fn leggett_garg(py: Python<'_>, omega: f64, dt: [f64; 3]) -> PyResult<Py<PyAny>> {
    let p = LGParams::new(omega, dt).map_err(err)?;
    let (t, q) = (lg_triple_correlations(&p), lg_pair_correlations(&p));
    py_value(
        py,
        &serde_json::json!({
            "triple": t,
            "pairs": q,
            "triple_report": lg_inequality_check(t.e12, t.e13, t.e23).map_err(err)?,
            "pair_report": lg_inequality_check(q.e12, q.e13, q.e23).map_err(err)?,
        }),
    )
}

#[pyfunction]
fn leggett_garg_sample(omega: f64, dt: [f64; 3], m: usize, seed: u64) -> PyResult<PyDataset> {
    let p = LGParams::new(omega, dt).map_err(err)?;
    sample_triples(&p, m, seed).map(PyDataset).map_err(err)
}

/// `(sampled, exact)` pair correlation of the threshold model.
#[pyfunction]
fn factorizable(mu: &str, a: f64, b: f64, samples: usize, seed: u64) -> PyResult<(f64, f64)> {
    let m = FactorizableModel::new(MuKind::parse(mu).map_err(err)?);
    let d = sample_pair(&m, a, b, seed, samples).map_err(err)?;
    Ok((d.correlation(1, 2).map_err(err)?.value, analytic_correlation(&m, a, b)))
}

/// `(gamma_triples, gamma_pairs)` over `days` examination days.
#[pyfunction]
fn allergy(days: usize) -> PyResult<(f64, f64)> {
    let s = AllergyScenario::table_one();
    Ok((
        s.gamma_triples(days, DaySchedule::Alternating).map_err(err)?,
        s.gamma_pairs(days, DaySchedule::Alternating).map_err(err)?,
    ))
}

/// Three-setting coincidence experiment. `source` is `triple`, `singlet` or
/// `pair:uniform|equal|opposite`; angles in radians; `window=None` keeps all.
#[pyfunction]
#[pyo3(signature = (source, angles, samples, seed, window=None, jitter=0.0, exponent=0.0, hypothesis=None, triple_table=None))]
#[allow(clippy::too_many_arguments)]
fn epr_pipeline(
    py: Python<'_>,
    source: &str,
    angles: [f64; 3],
    samples: usize,
    seed: u64,
    window: Option<f64>,
    jitter: f64,
    exponent: f64,
    hypothesis: Option<&str>,
    triple_table: Option<[f64; 8]>,
) -> PyResult<Py<PyAny>> {
    let source = match source {
        "triple" => Source::Triple(match triple_table {
            Some(v) => FuncTable3::new(v).map_err(err)?,
            None => FuncTable3::uniform(),
        }),
        "singlet" => Source::Singlet,
        s => match s.strip_prefix("pair:") {
            Some(mu) => Source::Pair(FactorizableModel::new(MuKind::parse(mu).map_err(err)?)),
            None => return Err(PyValueError::new_err(format!("unknown source {s:?}"))),
        },
    };
    let cfg = ThreeSettingConfig {
        angles,
        source,
        timing: TimingModel { jitter, exponent },
        m: samples,
        window: match window {
            Some(w) => Window::finite(w).map_err(err)?,
            None => Window::Infinite,
        },
        seed,
        hypothesis: hypothesis.map(self::hypothesis).transpose()?,
    };
    py_value(py, &pipeline::run_three_settings(&cfg).map_err(err)?)
}

#[pymodule]
fn ebbi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDataset>()?;
    m.add_function(wrap_pyfunction!(check_boole_triple, m)?)?;
    m.add_function(wrap_pyfunction!(check_chsh, m)?)?;
    m.add_function(wrap_pyfunction!(check_pair_bound, m)?)?;
    m.add_function(wrap_pyfunction!(expand2, m)?)?;
    m.add_function(wrap_pyfunction!(synth2, m)?)?;
    m.add_function(wrap_pyfunction!(expand3, m)?)?;
    m.add_function(wrap_pyfunction!(synth3, m)?)?;
    m.add_function(wrap_pyfunction!(ebbi_check, m)?)?;
    m.add_function(wrap_pyfunction!(construct_g3, m)?)?;
    m.add_function(wrap_pyfunction!(marginals_compatible, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct_f3, m)?)?;
    m.add_function(wrap_pyfunction!(singlet_correlation, m)?)?;
    m.add_function(wrap_pyfunction!(eprb_pair_table, m)?)?;
    m.add_function(wrap_pyfunction!(extended_eprb3, m)?)?;
    m.add_function(wrap_pyfunction!(extended_eprb4, m)?)?;
    m.add_function(wrap_pyfunction!(schwartz_bound, m)?)?;
    m.add_function(wrap_pyfunction!(leggett_garg, m)?)?;
    m.add_function(wrap_pyfunction!(leggett_garg_sample, m)?)?;
    m.add_function(wrap_pyfunction!(factorizable, m)?)?;
    m.add_function(wrap_pyfunction!(allergy, m)?)?;
    m.add_function(wrap_pyfunction!(epr_pipeline, m)?)?;
    Ok(())
}
