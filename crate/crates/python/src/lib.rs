//! Python bindings: trigonometric polynomials, fluxes, frequency groups, the
//! non-degeneracy check, the solver and Bochner-Fejer means. Structured
//! reports are returned as plain dictionaries.

use bohrlift::apcore::{besicovitch_norm, ess_sup};
use bohrlift::diagnostics::decay_trace;
use bohrlift::flux::nd_check_f64;
use bohrlift::schema;
use bohrlift::solver::DEFAULT_CFL;
use bohrlift::specgroup::group_generated_in;
use bohrlift::{
    bochner_fejer, fejer_weights, qlinear_basis, solve as run_solve, spectrum, FejerPlan, LiftSpec, RunConfig,
};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// An exact frequency: rational coordinates over a real base, one row per component.
#[pyclass(module = "bohrlift_py", frozen, from_py_object)]
#[derive(Clone)]
struct Frequency(bohrlift::Frequency);

#[pymethods]
impl Frequency {
    #[new]
    fn new(base: Vec<String>, coords: Vec<(i64, i64)>) -> PyResult<Self> {
        let base = schema::parse_base(&base).map_err(err)?;
        if coords.is_empty() || !coords.len().is_multiple_of(base.len()) {
            return Err(err("coordinate count must be a positive multiple of the base size"));
        }
        let dims = coords.len() / base.len();
        let pairs: Vec<[i64; 2]> = coords.iter().map(|&(n, d)| [n, d]).collect();
        let doc = schema::TrigPolyDoc {
            base: base.decimals().to_vec(),
            dims,
            terms: vec![schema::TermDoc {
                coords: pairs,
                re: 1.0,
                im: 0.0,
            }],
        };
        let p = schema::trigpoly_from_doc(&doc).map_err(err)?;
        let f = p.frequencies().next().cloned().ok_or_else(|| err("empty frequency"))?;
        Ok(Self(f))
    }

    #[getter]
    fn dims(&self) -> usize {
        self.0.dims()
    }

    fn to_real(&self) -> Vec<f64> {
        self.0.to_real()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __eq__(&self, other: &Frequency) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Frequency({})", self.0)
    }
}

/// A finite sum of `a_lambda exp(2 pi i lambda . x)`.
#[pyclass(module = "bohrlift_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct TrigPoly(bohrlift::TrigPoly);

#[pymethods]
impl TrigPoly {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        schema::trigpoly_from_json(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn constant(base: Vec<String>, dims: usize, value: f64) -> PyResult<Self> {
        let base = schema::parse_base(&base).map_err(err)?;
        Ok(Self(bohrlift::TrigPoly::constant(&base, dims, value)))
    }

    #[staticmethod]
    fn sine(freq: &Frequency, amplitude: f64) -> Self {
        Self(bohrlift::TrigPoly::sine(&freq.0, amplitude))
    }

    #[staticmethod]
    fn cosine(freq: &Frequency, amplitude: f64) -> Self {
        Self(bohrlift::TrigPoly::cosine(&freq.0, amplitude))
    }

    fn to_json(&self) -> PyResult<String> {
        schema::trigpoly_to_json(&self.0).map_err(err)
    }

    #[getter]
    fn dims(&self) -> usize {
        self.0.dims()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __add__(&self, other: &TrigPoly) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: &TrigPoly) -> PyResult<Self> {
        self.0.sub(&other.0).map(Self).map_err(err)
    }

    fn __mul__(&self, c: f64) -> Self {
        Self(self.0.scale(Complex64::new(c, 0.0)))
    }

    fn __call__(&self, x: Vec<f64>) -> PyResult<Complex64> {
        if x.len() != self.0.dims() {
            return Err(err(format!("expected {} coordinates", self.0.dims())));
        }
        Ok(self.0.eval(&x))
    }

    fn terms(&self) -> Vec<(Frequency, Complex64)> {
        self.0.terms().map(|(l, a)| (Frequency(l.clone()), *a)).collect()
    }

    fn spectrum(&self) -> Vec<Frequency> {
        spectrum(&self.0).into_iter().map(Frequency).collect()
    }

    fn mean_value(&self) -> Complex64 {
        self.0.mean_value()
    }

    fn is_real_valued(&self) -> bool {
        self.0.is_real_valued()
    }

    /// Mean of `|p|` over the torus lift of the spectrum.
    fn besicovitch_norm(&self) -> PyResult<f64> {
        let lift = LiftSpec::for_poly(&self.0).map_err(err)?;
        besicovitch_norm(&self.0, &lift).map(|i| i.value).map_err(err)
    }

    fn ess_sup(&self) -> PyResult<f64> {
        let lift = LiftSpec::for_poly(&self.0).map_err(err)?;
        ess_sup(&self.0, &lift).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("TrigPoly(dims={}, terms={})", self.0.dims(), self.0.len())
    }
}

/// A continuous piecewise-polynomial flux with exact rational coefficients.
#[pyclass(module = "bohrlift_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Flux(bohrlift::PiecewiseFlux);

#[pymethods]
impl Flux {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        schema::flux_from_json(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn burgers(lo: i64, hi: i64) -> PyResult<Self> {
        bohrlift::PiecewiseFlux::burgers(lo, hi).map(Self).map_err(err)
    }

    /// `breakpoints` and `pieces[i][c]` (ascending coefficients) as floats, rationalized.
    #[staticmethod]
    fn from_floats(dims: usize, breakpoints: Vec<f64>, pieces: Vec<Vec<Vec<f64>>>) -> PyResult<Self> {
        bohrlift::PiecewiseFlux::from_f64(dims, &breakpoints, &pieces)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn dims(&self) -> usize {
        self.0.dims()
    }

    #[getter]
    fn domain(&self) -> (f64, f64) {
        self.0.domain()
    }

    fn __call__(&self, u: f64) -> Vec<f64> {
        self.0.eval(u)
    }

    fn __repr__(&self) -> String {
        let (a, b) = self.0.domain();
        format!(
            "Flux(dims={}, domain=[{a}, {b}], pieces={})",
            self.0.dims(),
            self.0.pieces().len()
        )
    }
}

/// A finitely generated additive group of frequencies, kept in Hermite normal form.
#[pyclass(module = "bohrlift_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Group(bohrlift::FreqGroup);

#[pymethods]
impl Group {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: schema::GroupDoc = serde_json::from_str(text).map_err(err)?;
        schema::group_from_doc(&doc).map(Self).map_err(err)
    }

    #[staticmethod]
    fn generated_by(freqs: Vec<Frequency>) -> PyResult<Self> {
        let first = freqs.first().ok_or_else(|| err("at least one generator is needed"))?;
        let (base, dims) = (first.0.base().clone(), first.0.dims());
        group_generated_in(&base, dims, freqs.iter().map(|f| &f.0))
            .map(Self)
            .map_err(err)
    }

    /// The group generated by the spectrum of `p`.
    #[staticmethod]
    fn of_spectrum(p: &TrigPoly) -> PyResult<Self> {
        let spec = spectrum(&p.0);
        group_generated_in(p.0.base(), p.0.dims(), spec.iter())
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    fn generators(&self) -> Vec<Frequency> {
        self.0.generators().into_iter().map(Frequency).collect()
    }

    fn contains(&self, f: &Frequency) -> PyResult<bool> {
        self.0.member(&f.0).map(|m| m.is_some()).map_err(err)
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &schema::group_json(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("Group(rank={}, dims={})", self.0.rank(), self.0.dims())
    }
}

/// Decides the non-degeneracy condition on `[a, b]` (default: the flux domain).
#[pyfunction]
#[pyo3(signature = (flux, group, a=None, b=None))]
fn nd_check<'py>(
    py: Python<'py>,
    flux: &Flux,
    group: &Group,
    a: Option<f64>,
    b: Option<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    let (lo, hi) = flux.0.domain();
    let report = nd_check_f64(&flux.0, &group.0, a.unwrap_or(lo), b.unwrap_or(hi)).map_err(err)?;
    to_py(py, &schema::nd_report_json(&report))
}

/// Solves on the torus lift of the spectrum of `data`. Returns the per-step
/// trace and the final cell values (row-major).
#[pyfunction]
#[pyo3(signature = (data, flux, sizes, t_end, cfl=DEFAULT_CFL, entropy_points=32))]
fn solve<'py>(
    py: Python<'py>,
    data: &TrigPoly,
    flux: &Flux,
    sizes: Vec<usize>,
    t_end: f64,
    cfl: f64,
    entropy_points: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let lift = LiftSpec::for_poly(&data.0).map_err(err)?;
    let mut cfg = RunConfig::new(sizes, t_end);
    cfg.cfl = cfl;
    cfg.entropy_points = entropy_points;
    let run = py
        .detach(|| run_solve(&data.0, &lift, &flux.0, &cfg, &mut []))
        .map_err(err)?;
    let trace = decay_trace(&run);
    let out = PyDict::new(py);
    out.set_item("mean", trace.mean)?;
    out.set_item("t", trace.rows.iter().map(|r| r.t).collect::<Vec<_>>())?;
    out.set_item("distance", trace.rows.iter().map(|r| r.distance).collect::<Vec<_>>())?;
    out.set_item("mass", trace.rows.iter().map(|r| r.mass).collect::<Vec<_>>())?;
    out.set_item("entropy_max", trace.max_entropy_residual())?;
    out.set_item("sizes", run.final_field().sizes().to_vec())?;
    out.set_item("final", run.final_field().data().to_vec())?;
    Ok(out)
}

/// Bochner-Fejer mean of order `order` over a rational basis of the spectrum of `p`.
#[pyfunction]
fn fejer_mean(p: &TrigPoly, order: u32) -> PyResult<TrigPoly> {
    let spec = spectrum(&p.0);
    let basis = qlinear_basis(p.0.base(), p.0.dims(), spec.iter()).map_err(err)?;
    let plan = FejerPlan::new(basis, order).map_err(err)?;
    bochner_fejer(&p.0, &plan).map(TrigPoly).map_err(err)
}

/// Fejer weight of `freq` for the rational basis of the spectrum of `p`.
#[pyfunction]
fn fejer_weight(p: &TrigPoly, order: u32, freq: &Frequency) -> PyResult<f64> {
    let spec = spectrum(&p.0);
    let basis = qlinear_basis(p.0.base(), p.0.dims(), spec.iter()).map_err(err)?;
    let plan = FejerPlan::new(basis, order).map_err(err)?;
    fejer_weights(&plan).at(&freq.0).map(|w| w.weight_f64()).map_err(err)
}

#[pymodule]
fn bohrlift_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Frequency>()?;
    m.add_class::<TrigPoly>()?;
    m.add_class::<Flux>()?;
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(nd_check, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(fejer_mean, m)?)?;
    m.add_function(wrap_pyfunction!(fejer_weight, m)?)?;
    Ok(())
}
