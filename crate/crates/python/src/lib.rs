//! Python bindings for the frame/DFT library.
//!
//! Vectors and signals cross the boundary as (nested) lists of Python
//! complex numbers, group tables as lists of lists of ints. Errors raised by
//! the library surface as `ValueError`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use vvframe_core::ambiguity as amb;
use vvframe_core::error::Error as CoreError;
use vvframe_core::matrix::ComplexMatrix;
use vvframe_core::mult;
use vvframe_core::uncertainty as up;
use vvframe_core::vvdft;
use vvframe_core::{FiniteAbelianGroup, Tol, VVSignal};

fn pyerr(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tol_of(rel: f64) -> Tol {
    Tol::with_rel(rel)
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err("matrix rows must have equal length"));
    }
    ComplexMatrix::from_entries(nrows, ncols, rows.into_iter().flatten().collect()).map_err(pyerr)
}

fn signal_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<VVSignal> {
    VVSignal::from_rows(rows).map_err(pyerr)
}

fn signal_to_rows(u: &VVSignal) -> Vec<Vec<Complex64>> {
    (0..u.len()).map(|m| u.row(m).to_vec()).collect()
}

fn table_from_rows(rows: Vec<Vec<usize>>) -> PyResult<mult::OpTable> {
    mult::OpTable::from_rows(rows).map_err(pyerr)
}

fn table_to_rows(t: &mult::OpTable) -> Vec<Vec<usize>> {
    (0..t.size())
        .map(|i| (0..t.size()).map(|j| t.get(i, j)).collect())
        .collect()
}

fn group_of(cyclic_orders: Vec<usize>) -> PyResult<FiniteAbelianGroup> {
    FiniteAbelianGroup::new(cyclic_orders).map_err(pyerr)
}

/// An ordered sequence of vectors in C^d.
#[pyclass]
struct Frame {
    inner: vvframe_core::Frame,
}

/// Frame bounds and structural flags.
#[pyclass(get_all)]
struct FrameClass {
    spans: bool,
    lower: f64,
    upper: f64,
    tight: bool,
    parseval: bool,
    equal_norm: bool,
    funtf: bool,
}

#[pymethods]
impl FrameClass {
    fn __repr__(&self) -> String {
        format!(
            "FrameClass(spans={}, lower={}, upper={}, tight={}, parseval={}, equal_norm={}, funtf={})",
            self.spans, self.lower, self.upper, self.tight, self.parseval, self.equal_norm, self.funtf
        )
    }
}

#[pymethods]
impl Frame {
    #[new]
    fn new(vectors: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let d = vectors.first().map(|v| v.len()).unwrap_or(0);
        Ok(Frame {
            inner: vvframe_core::Frame::new(d, vectors).map_err(pyerr)?,
        })
    }

    #[staticmethod]
    fn standard_basis(d: usize) -> Frame {
        Frame {
            inner: vvframe_core::Frame::standard_basis(d),
        }
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn vectors(&self) -> Vec<Vec<Complex64>> {
        self.inner.vectors().to_vec()
    }

    fn analysis(&self, x: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.inner.analysis(&x).map_err(pyerr)
    }

    fn synthesis(&self, coefficients: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.inner.synthesis(&coefficients).map_err(pyerr)
    }

    fn frame_operator(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.inner.frame_operator())
    }

    fn gramian(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(&self.inner.gramian())
    }

    #[pyo3(signature = (tol = 1e-9))]
    fn classify(&self, tol: f64) -> FrameClass {
        let c = self.inner.classify(&tol_of(tol));
        FrameClass {
            spans: c.spans,
            lower: c.lower,
            upper: c.upper,
            tight: c.tight,
            parseval: c.parseval,
            equal_norm: c.equal_norm,
            funtf: c.funtf,
        }
    }

    /// Canonical dual and canonical tight frames.
    #[pyo3(signature = (tol = 1e-9))]
    fn canonical(&self, tol: f64) -> PyResult<(Frame, Frame)> {
        let (dual, tight) = self.inner.canonical(&tol_of(tol)).map_err(pyerr)?;
        Ok((Frame { inner: dual }, Frame { inner: tight }))
    }

    /// Max deviations of the Naimark projection identities
    /// (idempotency, hermitian, column reproduction).
    #[pyo3(signature = (tol = 1e-9))]
    fn naimark_check(&self, tol: f64) -> PyResult<(f64, f64, f64)> {
        let r = self.inner.naimark_check(&tol_of(tol)).map_err(pyerr)?;
        Ok((r.idempotency_dev, r.hermitian_dev, r.column_dev))
    }

    /// Certificate (c, U) with other_j = c U self_j, or None when the
    /// Gramians are not proportional.
    #[pyo3(signature = (other, tol = 1e-9))]
    fn unitary_equivalence(
        &self,
        other: &Frame,
        tol: f64,
    ) -> PyResult<Option<(f64, Vec<Vec<Complex64>>)>> {
        let cert = self
            .inner
            .unitary_equivalence(&other.inner, &tol_of(tol))
            .map_err(pyerr)?;
        Ok(cert.map(|c| (c.scale, matrix_to_rows(&c.unitary))))
    }

    fn __repr__(&self) -> String {
        format!("Frame(N={}, d={})", self.inner.len(), self.inner.dim())
    }
}

/// Injective map s : Z/dZ -> Z/NZ defining a DFT frame.
#[pyclass]
struct SelectionMap {
    inner: vvdft::SelectionMap,
}

#[pymethods]
impl SelectionMap {
    #[new]
    fn new(n: usize, s: Vec<usize>) -> PyResult<Self> {
        Ok(SelectionMap {
            inner: vvdft::SelectionMap::new(n, s).map_err(pyerr)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.modulus()
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn s(&self) -> Vec<usize> {
        self.inner.values().to_vec()
    }

    fn is_invertible(&self) -> bool {
        self.inner.non_invertible_component().is_none()
    }

    fn __repr__(&self) -> String {
        format!(
            "SelectionMap(N={}, s={:?})",
            self.inner.modulus(),
            self.inner.values()
        )
    }
}

/// DFT frame x_m(q) = e^{2 pi i m s(q) / N}.
#[pyfunction]
fn make_dft_frame(sel: &SelectionMap) -> Frame {
    Frame {
        inner: vvdft::make_dft_frame(&sel.inner),
    }
}

/// The N x N transform block with entries e^{-2 pi i m n l / N}.
#[pyfunction]
fn d_matrix(n: usize, l: usize) -> Vec<Vec<Complex64>> {
    matrix_to_rows(&vvdft::d_matrix(n, l))
}

/// Forward vector-valued DFT of an N x d signal (list of N rows).
#[pyfunction]
fn vv_dft(values: Vec<Vec<Complex64>>, sel: &SelectionMap) -> PyResult<Vec<Vec<Complex64>>> {
    let u = signal_from_rows(values)?;
    Ok(signal_to_rows(
        &vvdft::vv_dft(&u, &sel.inner).map_err(pyerr)?,
    ))
}

/// Inverse vector-valued DFT; every s(q) must be coprime to N.
#[pyfunction]
fn vv_idft(values: Vec<Vec<Complex64>>, sel: &SelectionMap) -> PyResult<Vec<Vec<Complex64>>> {
    let u = signal_from_rows(values)?;
    Ok(signal_to_rows(
        &vvdft::vv_idft(&u, &sel.inner).map_err(pyerr)?,
    ))
}

/// Cyclic translation u(m - j).
#[pyfunction]
fn translate(values: Vec<Vec<Complex64>>, j: i64) -> PyResult<Vec<Vec<Complex64>>> {
    let u = signal_from_rows(values)?;
    Ok(signal_to_rows(&vvdft::translate(&u, j)))
}

/// Modulation e^j(k) u(k) with e^j(k) = x_{jk}.
#[pyfunction]
fn modulate(
    values: Vec<Vec<Complex64>>,
    j: i64,
    sel: &SelectionMap,
) -> PyResult<Vec<Vec<Complex64>>> {
    let u = signal_from_rows(values)?;
    Ok(signal_to_rows(
        &vvdft::modulate(&u, j, &sel.inner).map_err(pyerr)?,
    ))
}

/// Vector-valued cyclic convolution with coordinatewise products.
#[pyfunction]
fn vv_convolve(a: Vec<Vec<Complex64>>, b: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
    let ua = signal_from_rows(a)?;
    let ub = signal_from_rows(b)?;
    Ok(signal_to_rows(
        &vvdft::vv_convolve(&ua, &ub).map_err(pyerr)?,
    ))
}

/// The (p, q) labels of the N*d multiplicative functionals.
#[pyfunction]
fn gelfand_spectrum(sel: &SelectionMap) -> PyResult<Vec<(usize, usize)>> {
    Ok(vvdft::gelfand_spectrum(&sel.inner)
        .map_err(pyerr)?
        .iter()
        .map(|g| (g.frequency(), g.component()))
        .collect())
}

/// Applies the functional labeled (p, q) to a signal.
#[pyfunction]
fn gelfand_apply(
    sel: &SelectionMap,
    p: usize,
    q: usize,
    values: Vec<Vec<Complex64>>,
) -> PyResult<Complex64> {
    let u = signal_from_rows(values)?;
    let spectrum = vvdft::gelfand_spectrum(&sel.inner).map_err(pyerr)?;
    let gamma = spectrum
        .iter()
        .find(|g| g.frequency() == p && g.component() == q)
        .ok_or_else(|| PyValueError::new_err(format!("no functional labeled ({}, {})", p, q)))?;
    gamma.apply(&u).map_err(pyerr)
}

/// Decides whether the table is a frame multiplication; returns
/// (accepted, violation) with violation = (index, side, residual) or None.
#[pyfunction]
#[pyo3(signature = (frame, table, tol = 1e-9))]
#[allow(clippy::type_complexity)]
fn is_frame_multiplication(
    frame: &Frame,
    table: Vec<Vec<usize>>,
    tol: f64,
) -> PyResult<(bool, Option<(usize, String, f64)>)> {
    let t = table_from_rows(table)?;
    let check = mult::is_frame_multiplication(&frame.inner, &t, &tol_of(tol)).map_err(pyerr)?;
    Ok((
        check.accepted,
        check.violation.map(|v| {
            (
                v.index,
                match v.side {
                    mult::Side::Left => "left".to_string(),
                    mult::Side::Right => "right".to_string(),
                },
                v.residual,
            )
        }),
    ))
}

/// Extends the frame product to arbitrary vectors.
#[pyfunction]
#[pyo3(signature = (frame, table, x, y, tol = 1e-9))]
fn extend_product(
    frame: &Frame,
    table: Vec<Vec<usize>>,
    x: Vec<Complex64>,
    y: Vec<Complex64>,
    tol: f64,
) -> PyResult<Vec<Complex64>> {
    let t = table_from_rows(table)?;
    mult::extend_product(&frame.inner, &t, &x, &y, &tol_of(tol)).map_err(pyerr)
}

/// All frame multiplications of a small frame, in lexicographic order.
#[pyfunction]
#[pyo3(signature = (frame, candidates = None, tol = 1e-9))]
fn enumerate_multiplications(
    frame: &Frame,
    candidates: Option<Vec<Vec<Vec<usize>>>>,
    tol: f64,
) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let cands = match candidates {
        None => None,
        Some(list) => Some(
            list.into_iter()
                .map(table_from_rows)
                .collect::<PyResult<Vec<_>>>()?,
        ),
    };
    let found = mult::enumerate_multiplications(&frame.inner, cands.as_deref(), &tol_of(tol))
        .map_err(pyerr)?;
    Ok(found.iter().map(table_to_rows).collect())
}

/// The 7-element cross-product frame for C^3 and its index table.
#[pyfunction]
fn cross_product_frame() -> (Frame, Vec<Vec<usize>>) {
    let (frame, table) = mult::cross_product_frame();
    (Frame { inner: frame }, table_to_rows(&table))
}

/// Harmonic frame from d distinct character indices of the Abelian group
/// with the given cyclic factor orders.
#[pyfunction]
#[pyo3(signature = (cyclic_orders, k, rotation = None))]
fn make_harmonic_frame(
    cyclic_orders: Vec<usize>,
    k: Vec<usize>,
    rotation: Option<Vec<Vec<Complex64>>>,
) -> PyResult<Frame> {
    let group = group_of(cyclic_orders)?;
    let rot = rotation.map(matrix_from_rows).transpose()?;
    Ok(Frame {
        inner: mult::make_harmonic_frame(&group, &k, rot.as_ref()).map_err(pyerr)?,
    })
}

/// Addition table of the Abelian group with the given cyclic factor orders.
#[pyfunction]
fn group_table(cyclic_orders: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
    Ok(table_to_rows(&group_of(cyclic_orders)?.op_table()))
}

/// Reads the G-matrix witness nu off a Gramian, or None.
#[pyfunction]
#[pyo3(signature = (gramian, cyclic_orders, tol = 1e-9))]
fn gmatrix_test(
    gramian: Vec<Vec<Complex64>>,
    cyclic_orders: Vec<usize>,
    tol: f64,
) -> PyResult<Option<Vec<Complex64>>> {
    let gm = matrix_from_rows(gramian)?;
    let group = group_of(cyclic_orders)?;
    Ok(mult::gmatrix_test(&gm, &group, &tol_of(tol))
        .map_err(pyerr)?
        .map(|w| w.nu))
}

/// The unitaries U_g with U_g x_h = x_{g.h} carried by a group frame.
#[pyfunction]
#[pyo3(signature = (frame, cyclic_orders, tol = 1e-9))]
fn group_frame_rep(
    frame: &Frame,
    cyclic_orders: Vec<usize>,
    tol: f64,
) -> PyResult<Vec<Vec<Vec<Complex64>>>> {
    let group = group_of(cyclic_orders)?;
    Ok(mult::group_frame_rep(&frame.inner, &group, &tol_of(tol))
        .map_err(pyerr)?
        .iter()
        .map(matrix_to_rows)
        .collect())
}

/// Certificate (c, U, characters) mapping a tight group frame onto a
/// harmonic frame with pointwise multiplication.
#[pyfunction]
#[pyo3(signature = (frame, cyclic_orders, tol = 1e-9))]
#[allow(clippy::type_complexity)]
fn harmonic_equivalence(
    frame: &Frame,
    cyclic_orders: Vec<usize>,
    tol: f64,
) -> PyResult<(f64, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>)> {
    let group = group_of(cyclic_orders)?;
    let cert = mult::harmonic_equivalence(&frame.inner, &group, &tol_of(tol)).map_err(pyerr)?;
    Ok((cert.scale, matrix_to_rows(&cert.unitary), cert.characters))
}

/// Classical delay-Doppler surface of an N-periodic scalar sequence.
#[pyfunction]
fn ambiguity_scalar(u: Vec<Complex64>) -> Vec<Vec<Complex64>> {
    let surface = amb::ambiguity_scalar(&u);
    (0..surface.size())
        .map(|m| (0..surface.size()).map(|n| surface.get(m, n)).collect())
        .collect()
}

/// Scalar-valued surface over a tight frame with an accepted table.
#[pyfunction]
#[pyo3(signature = (values, frame, table, tol = 1e-9))]
fn ambiguity_a1(
    values: Vec<Vec<Complex64>>,
    frame: &Frame,
    table: Vec<Vec<usize>>,
    tol: f64,
) -> PyResult<Vec<Vec<Complex64>>> {
    let u = signal_from_rows(values)?;
    let t = table_from_rows(table)?;
    let surface = amb::ambiguity_a1(&u, &frame.inner, &t, &tol_of(tol)).map_err(pyerr)?;
    Ok((0..surface.size())
        .map(|m| (0..surface.size()).map(|n| surface.get(m, n)).collect())
        .collect())
}

/// Vector-valued surface over a DFT frame; entry [m][n] is a C^d vector.
#[pyfunction]
fn ambiguity_apd(
    values: Vec<Vec<Complex64>>,
    sel: &SelectionMap,
) -> PyResult<Vec<Vec<Vec<Complex64>>>> {
    let u = signal_from_rows(values)?;
    let surface = amb::ambiguity_apd(&u, &sel.inner).map_err(pyerr)?;
    Ok((0..surface.size())
        .map(|m| {
            (0..surface.size())
                .map(|n| surface.get(m, n).to_vec())
                .collect()
        })
        .collect())
}

/// Max deviation of the STFT factorization from the direct surface.
#[pyfunction]
fn ambiguity_stft_identity(values: Vec<Vec<Complex64>>, sel: &SelectionMap) -> PyResult<f64> {
    let u = signal_from_rows(values)?;
    Ok(amb::ambiguity_stft_identity(&u, &sel.inner)
        .map_err(pyerr)?
        .max_deviation)
}

/// Momentum operator P(u)(m) = i(u(m+1) - u(m-1)).
#[pyfunction]
fn apply_p(values: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
    let u = signal_from_rows(values)?;
    Ok(signal_to_rows(&up::apply_p(&u)))
}

/// The classical weight q(m)(n) = -2 sin(2 pi m s(n) / N).
#[pyfunction]
fn classical_q(sel: &SelectionMap) -> Vec<Vec<Complex64>> {
    signal_to_rows(&up::classical_q(&sel.inner))
}

/// Uncertainty report for one signal/weight pair.
#[pyclass(get_all)]
struct UpReport {
    t_term: f64,
    s_term: f64,
    lhs: f64,
    rhs: f64,
    slack: f64,
    holds: bool,
}

#[pymethods]
impl UpReport {
    fn __repr__(&self) -> String {
        format!(
            "UpReport(lhs={}, rhs={}, slack={}, holds={})",
            self.lhs, self.rhs, self.slack, self.holds
        )
    }
}

/// Evaluates the general uncertainty inequality for a real weight q.
#[pyfunction]
#[pyo3(signature = (values, q, tol = 1e-9))]
fn verify_up(values: Vec<Vec<Complex64>>, q: Vec<Vec<Complex64>>, tol: f64) -> PyResult<UpReport> {
    let u = signal_from_rows(values)?;
    let w = signal_from_rows(q)?;
    let r = up::verify_up(&u, &w, &tol_of(tol)).map_err(pyerr)?;
    Ok(UpReport {
        t_term: r.t_term,
        s_term: r.s_term,
        lhs: r.lhs,
        rhs: r.rhs,
        slack: r.slack,
        holds: r.holds,
    })
}

/// Both Hilbert-space uncertainty inequalities for Hermitian a, b and a
/// state x; returns (variance_lhs, variance_rhs, moment_lhs, moment_rhs,
/// equality_case).
#[pyfunction]
#[pyo3(signature = (a, b, x, tol = 1e-9))]
fn hilbert_up(
    a: Vec<Vec<Complex64>>,
    b: Vec<Vec<Complex64>>,
    x: Vec<Complex64>,
    tol: f64,
) -> PyResult<(f64, f64, f64, f64, bool)> {
    let ma = matrix_from_rows(a)?;
    let mb = matrix_from_rows(b)?;
    let r = up::hilbert_up(&ma, &mb, &x, &tol_of(tol)).map_err(pyerr)?;
    Ok((
        r.variance_lhs,
        r.variance_rhs,
        r.moment_lhs,
        r.moment_rhs,
        r.equality_case,
    ))
}

#[pymodule]
fn vvframe_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Frame>()?;
    m.add_class::<FrameClass>()?;
    m.add_class::<SelectionMap>()?;
    m.add_class::<UpReport>()?;
    m.add_function(wrap_pyfunction!(make_dft_frame, m)?)?;
    m.add_function(wrap_pyfunction!(d_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(vv_dft, m)?)?;
    m.add_function(wrap_pyfunction!(vv_idft, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(modulate, m)?)?;
    m.add_function(wrap_pyfunction!(vv_convolve, m)?)?;
    m.add_function(wrap_pyfunction!(gelfand_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(gelfand_apply, m)?)?;
    m.add_function(wrap_pyfunction!(is_frame_multiplication, m)?)?;
    m.add_function(wrap_pyfunction!(extend_product, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_multiplications, m)?)?;
    m.add_function(wrap_pyfunction!(cross_product_frame, m)?)?;
    m.add_function(wrap_pyfunction!(make_harmonic_frame, m)?)?;
    m.add_function(wrap_pyfunction!(group_table, m)?)?;
    m.add_function(wrap_pyfunction!(gmatrix_test, m)?)?;
    m.add_function(wrap_pyfunction!(group_frame_rep, m)?)?;
    m.add_function(wrap_pyfunction!(harmonic_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(ambiguity_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(ambiguity_a1, m)?)?;
    m.add_function(wrap_pyfunction!(ambiguity_apd, m)?)?;
    m.add_function(wrap_pyfunction!(ambiguity_stft_identity, m)?)?;
    m.add_function(wrap_pyfunction!(apply_p, m)?)?;
    m.add_function(wrap_pyfunction!(classical_q, m)?)?;
    m.add_function(wrap_pyfunction!(verify_up, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_up, m)?)?;
    Ok(())
}
