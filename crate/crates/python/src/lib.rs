//! Python bindings: `Grammar`, `Extractor` and the container functions.

use gcis::index::use_narrow;
use gcis::{Error, Profile};
use pyo3::create_exception;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

create_exception!(
    pygcis,
    GcisError,
    PyValueError,
    "Raised for corrupt containers and grammars."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::RangeOutOfBounds => PyIndexError::new_err(e.to_string()),
        other => GcisError::new_err(other.to_string()),
    }
}

fn profile(name: &str) -> PyResult<Profile> {
    match name {
        "s8b" => Ok(Profile::S8b),
        "ef" => Ok(Profile::Ef),
        other => Err(PyValueError::new_err(format!(
            "unknown profile {other:?}, expected 's8b' or 'ef'"
        ))),
    }
}

/// A compressed text.
#[pyclass(frozen, module = "pygcis")]
struct Grammar {
    inner: gcis::Grammar,
}

#[pymethods]
impl Grammar {
    /// Compresses `data`.
    #[staticmethod]
    fn compress(py: Python<'_>, data: &[u8]) -> Self {
        let inner = py.detach(|| gcis::compress(data));
        Grammar { inner }
    }

    /// Loads a container of either profile.
    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        let c = gcis::deserialize(data).map_err(to_py)?;
        Ok(Grammar { inner: c.grammar })
    }

    /// Serializes with profile `"s8b"` or `"ef"`.
    #[pyo3(signature = (profile_name = "s8b"))]
    fn to_bytes<'py>(&self, py: Python<'py>, profile_name: &str) -> PyResult<Bound<'py, PyBytes>> {
        let bytes = gcis::serialize(&self.inner, profile(profile_name)?);
        Ok(PyBytes::new(py, &bytes))
    }

    fn decompress<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyBytes>> {
        let text = py.detach(|| gcis::decompress(&self.inner)).map_err(to_py)?;
        Ok(PyBytes::new(py, &text))
    }

    /// Suffix array of the text, zero-based, sentinel position first.
    fn suffix_array(&self, py: Python<'_>) -> PyResult<Vec<u64>> {
        Ok(py.detach(|| self.arrays(false)).map_err(to_py)?.0)
    }

    /// `(sa, lcp)` of the text.
    fn suffix_lcp(&self, py: Python<'_>) -> PyResult<(Vec<u64>, Vec<u64>)> {
        let (sa, lcp) = py.detach(|| self.arrays(true)).map_err(to_py)?;
        Ok((sa, lcp.unwrap_or_default()))
    }

    fn extractor(&self) -> PyResult<Extractor> {
        let inner = gcis::Extractor::new(&self.inner).map_err(to_py)?;
        Ok(Extractor { inner })
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn original_len(&self) -> u64 {
        self.inner.original_len()
    }

    /// Rule count of each level, shallowest first.
    #[getter]
    fn rule_counts(&self) -> Vec<usize> {
        self.inner.levels().iter().map(|l| l.rule_count()).collect()
    }

    fn __len__(&self) -> usize {
        self.inner.original_len() as usize
    }

    fn __repr__(&self) -> String {
        format!(
            "Grammar(len={}, depth={})",
            self.inner.original_len(),
            self.inner.depth()
        )
    }
}

impl Grammar {
    fn arrays(&self, lcp: bool) -> gcis::Result<(Vec<u64>, Option<Vec<u64>>)> {
        let g = &self.inner;
        let widen = |v: Vec<u32>| v.into_iter().map(u64::from).collect::<Vec<_>>();
        if use_narrow(g.original_len() as usize + 1) {
            let art = if lcp {
                gcis::decompress_with_sa_lcp::<u32>(g)?
            } else {
                gcis::decompress_with_sa::<u32>(g)?
            };
            Ok((widen(art.sa), art.lcp.map(widen)))
        } else {
            let art = if lcp {
                gcis::decompress_with_sa_lcp::<u64>(g)?
            } else {
                gcis::decompress_with_sa::<u64>(g)?
            };
            Ok((art.sa, art.lcp))
        }
    }
}

/// Random access to a compressed text.
#[pyclass(frozen, module = "pygcis")]
struct Extractor {
    inner: gcis::Extractor,
}

#[pymethods]
impl Extractor {
    /// Loads a random-access container.
    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        let c = gcis::deserialize(data).map_err(to_py)?;
        let inner = c.extractor.ok_or_else(|| to_py(Error::NoRandomAccess))?;
        Ok(Extractor { inner })
    }

    /// Bytes `[start, end)` of the text.
    fn extract<'py>(&self, py: Python<'py>, start: u64, end: u64) -> PyResult<Bound<'py, PyBytes>> {
        if start > end {
            return Err(PyIndexError::new_err("start exceeds end"));
        }
        let bytes = self.inner.extract(start..end).map_err(to_py)?;
        Ok(PyBytes::new(py, &bytes))
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &gcis::format::serialize_extractor(&self.inner))
    }

    #[getter]
    fn period(&self) -> usize {
        self.inner.period()
    }

    fn __len__(&self) -> usize {
        self.inner.original_len() as usize
    }
}

/// Compresses `data` straight into container bytes.
#[pyfunction]
#[pyo3(signature = (data, profile_name = "s8b"))]
fn compress<'py>(
    py: Python<'py>,
    data: &[u8],
    profile_name: &str,
) -> PyResult<Bound<'py, PyBytes>> {
    let p = profile(profile_name)?;
    let bytes = py.detach(|| gcis::serialize(&gcis::compress(data), p));
    Ok(PyBytes::new(py, &bytes))
}

#[pyfunction]
fn decompress<'py>(py: Python<'py>, container: &[u8]) -> PyResult<Bound<'py, PyBytes>> {
    let text = py
        .detach(|| gcis::deserialize(container).and_then(|c| gcis::decompress(&c.grammar)))
        .map_err(to_py)?;
    Ok(PyBytes::new(py, &text))
}

/// Layout summary of a container as a dict.
#[pyfunction]
fn info<'py>(py: Python<'py>, container: &[u8]) -> PyResult<Bound<'py, PyDict>> {
    let i = gcis::inspect(container).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("profile", i.profile.name())?;
    d.set_item("version", i.version)?;
    d.set_item("period", i.period)?;
    d.set_item("original_len", i.original_len)?;
    d.set_item("header_bytes", i.header_bytes)?;
    let levels = i
        .levels
        .iter()
        .map(|l| {
            let ld = PyDict::new(py);
            ld.set_item("sigma", l.sigma)?;
            ld.set_item("rules", l.rules)?;
            ld.set_item("total_bytes", l.total_bytes)?;
            Ok(ld)
        })
        .collect::<PyResult<Vec<_>>>()?;
    d.set_item("levels", levels)?;
    d.set_item("final_len", i.final_len)?;
    d.set_item("final_bytes", i.final_bytes)?;
    d.set_item("prefix_sum_bytes", i.prefix_sum_bytes)?;
    d.set_item("total_bytes", i.total_bytes)?;
    Ok(d)
}

/// `copies` copies of `seed` with each byte replaced at probability `rate`.
#[pyfunction]
#[pyo3(signature = (seed, copies, rate, rng_seed = 0))]
fn gen_repetitive<'py>(
    py: Python<'py>,
    seed: &[u8],
    copies: usize,
    rate: f64,
    rng_seed: u64,
) -> PyResult<Bound<'py, PyBytes>> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(PyValueError::new_err("rate must lie in [0, 1]"));
    }
    Ok(PyBytes::new(
        py,
        &gcis::corpus::gen_repetitive(seed, copies, rate, rng_seed),
    ))
}

#[pymodule]
fn pygcis(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Grammar>()?;
    m.add_class::<Extractor>()?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(decompress, m)?)?;
    m.add_function(wrap_pyfunction!(info, m)?)?;
    m.add_function(wrap_pyfunction!(gen_repetitive, m)?)?;
    m.add("GcisError", m.py().get_type::<GcisError>())?;
    Ok(())
}
