use std::path::PathBuf;

use gencohom::duality::{self, DualityReport, Scenario};
use gencohom::grading::{self, Block, GradingData, Multidegree};
use gencohom::instance::{self, Instance as RawInstance};
use gencohom::localcohomology::generalized_local_cohomology;
use gencohom::resolutions::{free_resolution, krull_dimension, PdStatus, PresentedModule};
use gencohom::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

create_exception!(gencohom, HypothesisViolation, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::HypothesisViolation(msg) => HypothesisViolation::new_err(msg),
        Error::Io(msg) => PyIOError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn block_of(name: &str) -> PyResult<Block> {
    match name {
        "p" => Ok(Block::P),
        "q" => Ok(Block::Q),
        other => Err(PyValueError::new_err(format!("block must be 'p' or 'q', not '{other}'"))),
    }
}

fn pd_text(p: &PdStatus) -> String {
    match p {
        PdStatus::Finite(v) => v.to_string(),
        PdStatus::ExceededBound { certified_infinite: true } => "infinite".into(),
        PdStatus::ExceededBound { certified_infinite: false } => "unknown".into(),
    }
}

/// Whether the grading `deg_x`, `deg_y` is sharp.
#[pyfunction]
fn is_sharp(deg_x: Vec<Vec<i64>>, deg_y: Vec<Vec<i64>>) -> PyResult<bool> {
    let g = GradingData::new(deg_x.into_iter().map(Multidegree).collect(), deg_y.into_iter().map(Multidegree).collect()).map_err(to_py)?;
    Ok(grading::is_sharp(&g))
}

/// Outcome of a duality check.
#[pyclass(frozen)]
struct DualityResult {
    report: DualityReport,
}

#[pymethods]
impl DualityResult {
    #[getter]
    fn passed(&self) -> bool {
        self.report.passed()
    }

    #[getter]
    fn summary(&self) -> String {
        self.report.summary()
    }

    /// `(i, degree, lhs, rhs)` for every cell.
    #[getter]
    fn cells(&self) -> Vec<(i64, Vec<i64>, usize, usize)> {
        self.report.cells.iter().map(|c| (c.i, c.gamma.0.clone(), c.lhs, c.rhs)).collect()
    }

    #[getter]
    fn branch(&self) -> Option<String> {
        self.report.hypotheses.branch.map(|b| b.to_string())
    }

    fn tsv(&self) -> String {
        self.report.to_tsv()
    }

    fn text(&self) -> String {
        self.report.to_text()
    }

    fn __repr__(&self) -> String {
        format!("DualityResult({})", self.report.summary())
    }
}

/// A ring, two modules and parameters read from an instance file.
#[pyclass(frozen)]
struct Instance {
    inner: RawInstance,
}

impl Instance {
    fn module(&self, which: &str) -> PyResult<&PresentedModule> {
        match which {
            "M" | "m" => Ok(&self.inner.m),
            "N" | "n" => Ok(&self.inner.n),
            other => Err(PyValueError::new_err(format!("module must be 'M' or 'N', not '{other}'"))),
        }
    }

    fn window(&self, radius: Option<i64>) -> Vec<Multidegree> {
        let r = self.inner.ring().grading().rank();
        Multidegree::window(r, radius.unwrap_or(self.inner.params.window))
    }
}

#[pymethods]
impl Instance {
    #[staticmethod]
    #[pyo3(signature = (text, characteristic=None))]
    fn parse(text: &str, characteristic: Option<u64>) -> PyResult<Self> {
        Ok(Instance {
            inner: instance::parse_instance(text, characteristic).map_err(to_py)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (path, characteristic=None))]
    fn load(path: PathBuf, characteristic: Option<u64>) -> PyResult<Self> {
        Ok(Instance {
            inner: instance::read_instance(&path, characteristic).map_err(to_py)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        krull_dimension(&self.inner.s)
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.ring().nvars()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.ring().field().char()
    }

    fn is_sharp(&self) -> bool {
        self.inner.ring().grading().is_sharp()
    }

    /// `(alpha, beta)` showing the grading is not sharp, or `None`.
    fn sharpness_witness(&self) -> Option<(Vec<u64>, Vec<u64>)> {
        self.inner.ring().grading().sharpness_witness()
    }

    /// Betti numbers of the minimal free resolution of `M` or `N`.
    #[pyo3(signature = (module="N", max_length=None))]
    fn betti(&self, module: &str, max_length: Option<usize>) -> PyResult<Vec<usize>> {
        let m = self.module(module)?;
        let res = free_resolution(&self.inner.s, m, max_length.unwrap_or(self.inner.params.max_resolution));
        Ok(res.betti_numbers())
    }

    /// The hypothesis report of the duality theorem as a dict.
    fn hypotheses<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let h = duality::check_hypotheses(&self.inner.s, &self.inner.m, &self.inner.n, self.inner.params.max_resolution);
        let d = PyDict::new(py);
        d.set_item("sharp", h.sharp)?;
        d.set_item("cohen_macaulay", h.cohen_macaulay)?;
        d.set_item("dim", h.dim)?;
        d.set_item("pd_m", pd_text(&h.pd_m))?;
        d.set_item("pd_n", pd_text(&h.pd_n))?;
        d.set_item("tor_vanishes", h.tor_vanishes)?;
        d.set_item("branch", h.branch.map(|b| b.to_string()))?;
        Ok(d)
    }

    /// `{(i, degree): dim H^i_block(M, N)_degree}` over the window.
    #[pyo3(signature = (block="p", window=None))]
    fn cohomology<'py>(&self, py: Python<'py>, block: &str, window: Option<i64>) -> PyResult<Bound<'py, PyDict>> {
        let b = block_of(block)?;
        let dim = self.dim() as i64;
        let degrees: Vec<i64> = (0..=dim).collect();
        let win = self.window(window);
        let opts = self.inner.params.truncation();
        let table = py
            .detach(|| generalized_local_cohomology(&self.inner.s, &self.inner.m, &self.inner.n, b, &degrees, &win, opts))
            .map_err(to_py)?;
        let d = PyDict::new(py);
        for ((i, g), v) in &table.entries {
            let key = (*i, PyTuple::new(py, &g.0)?);
            d.set_item(key, v)?;
        }
        Ok(d)
    }

    /// Compares both sides of the duality theorem over the window.
    #[pyo3(signature = (window=None))]
    fn verify_duality(&self, py: Python<'_>, window: Option<i64>) -> PyResult<DualityResult> {
        let win = self.window(window);
        let opts = self.inner.params.truncation();
        let report = py
            .detach(|| duality::verify_duality(&self.inner.s, &self.inner.m, &self.inner.n, &win, opts))
            .map_err(to_py)?;
        Ok(DualityResult { report })
    }

    /// Runs `local_duality`, `serre`, `suzuki` or `herzog_rahimi`.
    #[pyo3(signature = (name, window=None))]
    fn scenario(&self, py: Python<'_>, name: &str, window: Option<i64>) -> PyResult<DualityResult> {
        let sc: Scenario = name.parse().map_err(to_py)?;
        let win = self.window(window);
        let opts = self.inner.params.truncation();
        let report = py
            .detach(|| duality::scenario(sc, &self.inner.s, &self.inner.m, &self.inner.n, &win, opts))
            .map_err(to_py)?;
        Ok(DualityResult { report })
    }
}

#[pymodule]
#[pyo3(name = "gencohom")]
fn gencohom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(is_sharp, m)?)?;
    m.add_class::<Instance>()?;
    m.add_class::<DualityResult>()?;
    m.add("HypothesisViolation", m.py().get_type::<HypothesisViolation>())?;
    Ok(())
}
