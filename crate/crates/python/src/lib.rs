//! Python bindings: Weyl group elements, Kazhdan-Lusztig polynomials,
//! products in the canonical basis, the a-function, products in `J` and the
//! verification pipeline. One Kazhdan-Lusztig cache is shared by every call.

use std::sync::{Arc, Mutex, OnceLock};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use sp6cells_core::cells::{gamma as gamma_of, ACertifier, CertifierConfig, GammaTable};
use sp6cells_core::hecke::{c_product_by_generators, KLCache};
use sp6cells_core::jring::{j_mul_covering, parse_family_element, CellFamily, JElement};
use sp6cells_core::num::Int;
use sp6cells_core::verify::{Verifier, VerifyConfig};
use sp6cells_core::weyl::{evaluate, WeylElement as Element};
use sp6cells_core::Error;

struct State {
    cache: Arc<KLCache>,
    cert: ACertifier,
    table: GammaTable,
}

fn state() -> &'static Mutex<State> {
    static STATE: OnceLock<Mutex<State>> = OnceLock::new();
    STATE.get_or_init(|| {
        let cache = Arc::new(KLCache::new());
        let cert = ACertifier::with_config(
            cache.clone(),
            CertifierConfig {
                pinned_families: false,
                ..CertifierConfig::default()
            },
        );
        Mutex::new(State {
            cache,
            cert,
            table: GammaTable::new(),
        })
    })
}

fn with_state<T>(f: impl FnOnce(&mut State) -> Result<T, Error>) -> PyResult<T> {
    let mut s = state().lock().unwrap_or_else(|e| e.into_inner());
    f(&mut s).map_err(err)
}

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn small(c: &Int) -> PyResult<i64> {
    c.to_i64()
        .ok_or_else(|| PyValueError::new_err(format!("coefficient {c} does not fit in 64 bits")))
}

/// An element of the extended affine Weyl group, built from a word in
/// `0, 1, 2, 3` and `t` (for `τ`).
#[pyclass(name = "WeylElement", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyWeylElement(Element);

#[pymethods]
impl PyWeylElement {
    #[new]
    #[pyo3(signature = (word = ""))]
    fn new(word: &str) -> PyResult<Self> {
        Ok(PyWeylElement(evaluate(word).map_err(err)?))
    }

    /// A member of a family by name (`x2`, `u'1`) or a plain word.
    #[staticmethod]
    fn family(name: &str) -> PyResult<Self> {
        Ok(PyWeylElement(parse_family_element(name).map_err(err)?))
    }

    fn length(&self) -> u32 {
        self.0.length()
    }

    fn inverse(&self) -> Self {
        PyWeylElement(self.0.inverse())
    }

    fn is_involution(&self) -> bool {
        self.0.is_involution()
    }

    fn left_descents(&self) -> String {
        self.0.left_descents().labels()
    }

    fn right_descents(&self) -> String {
        self.0.right_descents().labels()
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyWeylElement(self.0.mul(&other.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("WeylElement('{}')", self.0.reduced_word())
    }
}

fn element(w: &Bound<'_, PyAny>) -> PyResult<Element> {
    if let Ok(e) = w.cast::<PyWeylElement>() {
        return Ok(e.get().0);
    }
    let s: String = w.extract()?;
    evaluate(&s).map_err(err)
}

/// `P_{y,w}` as a polynomial in `v`, printed.
#[pyfunction]
fn kl(y: &Bound<'_, PyAny>, w: &Bound<'_, PyAny>) -> PyResult<String> {
    let (y, w) = (element(y)?, element(w)?);
    with_state(|s| Ok(s.cache.kl_poly(&y, &w).to_string()))
}

/// `μ(y, w)`.
#[pyfunction]
fn mu(y: &Bound<'_, PyAny>, w: &Bound<'_, PyAny>) -> PyResult<i64> {
    let (y, w) = (element(y)?, element(w)?);
    small(&with_state(|s| Ok(s.cache.mu(&y, &w)))?)
}

/// `(exponent of v, coefficient)` pairs of a Laurent polynomial.
type Coeffs = Vec<(i32, i64)>;

/// `C_x C_y` as `[(z, [(exponent, coefficient)])]`.
#[pyfunction]
fn product(x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Vec<(String, Coeffs)>> {
    let (x, y) = (element(x)?, element(y)?);
    let h = with_state(|s| Ok(c_product_by_generators(&x, &y, &s.cache)))?;
    h.terms()
        .into_iter()
        .map(|(z, p)| {
            let coeffs = p.terms().map(|(e, c)| Ok((e, small(c)?))).collect::<PyResult<_>>()?;
            Ok((z.to_string(), coeffs))
        })
        .collect()
}

/// Certified `a(w)`; raises when the bracket does not close.
#[pyfunction]
#[pyo3(signature = (w, radius = 12))]
fn a_value(w: &Bound<'_, PyAny>, radius: u32) -> PyResult<u32> {
    let w = element(w)?;
    with_state(|s| s.cert.a_value(&w, radius).certified())
}

/// `γ_{x,y,z}`.
#[pyfunction]
#[pyo3(signature = (x, y, z, radius = 12))]
fn gamma(x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>, z: &Bound<'_, PyAny>, radius: u32) -> PyResult<i64> {
    let (x, y, z) = (element(x)?, element(y)?, element(z)?);
    small(&with_state(|s| gamma_of(&x, &y, &z, &s.cert, radius))?)
}

/// `t_x t_y` in `J` as `[(z, coefficient)]`.
#[pyfunction]
fn j_mul(x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Vec<(String, i64)>> {
    let (x, y) = (element(x)?, element(y)?);
    let p = with_state(|s| j_mul_covering(&JElement::t(x), &JElement::t(y), &mut s.table, &s.cert))?;
    p.terms()
        .into_iter()
        .map(|(z, c)| Ok((z.to_string(), small(&c)?)))
        .collect()
}

/// `t_{g_k} t_{g_l}` for a family (`"D12"` or `"D013"`), printed with family names.
#[pyfunction]
#[pyo3(signature = (family, k, l, primed_left = false, primed_right = false))]
fn family_mul(family: &str, k: usize, l: usize, primed_left: bool, primed_right: bool) -> PyResult<String> {
    let f = CellFamily::parse(family).map_err(err)?;
    let (a, b) = (f.element(k, primed_left), f.element(l, primed_right));
    let p = with_state(|s| j_mul_covering(&JElement::t(a), &JElement::t(b), &mut s.table, &s.cert))?;
    Ok(p.format_with(|w| f.name_of(w)))
}

/// Runs every verification suite; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (radius = 12, structured = false))]
fn verify(radius: u32, structured: bool) -> PyResult<(bool, String)> {
    let config = VerifyConfig {
        radius,
        ..VerifyConfig::default()
    };
    let cache = with_state(|s| Ok(s.cache.clone()))?;
    let report = Verifier::new(config, cache).map_err(err)?.run_all();
    let text = if structured { report.structured() } else { report.text() };
    Ok((report.passed(), text))
}

#[pymodule]
pub fn sp6cells(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeylElement>()?;
    m.add_function(wrap_pyfunction!(kl, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(a_value, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(j_mul, m)?)?;
    m.add_function(wrap_pyfunction!(family_mul, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
