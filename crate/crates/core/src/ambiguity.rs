//! Discrete periodic ambiguity functions: the classical scalar surface, the
//! scalar-valued generalization over a frame with multiplication, the
//! vector-valued surface for DFT frames, and its short-time Fourier
//! transform factorization.

use crate::error::Error;
use crate::frame::Frame;
use crate::matrix::inner;
use crate::mult::{FrameProduct, OpTable};
use crate::tol::Tol;
use crate::vvdft::{modulation_signal, translate, vv_dft, vv_idft, SelectionMap, VVSignal};
use crate::{Result, C64};

/// Scalar delay-Doppler surface, `N x N`, indexed `(delay m, Doppler n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbiguitySurface {
    n: usize,
    values: Vec<C64>,
}

impl AmbiguitySurface {
    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for m in 0..n {
            for nn in 0..n {
                values.push(f(m, nn));
            }
        }
        AmbiguitySurface { n, values }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, delay: usize, doppler: usize) -> C64 {
        self.values[delay * self.n + doppler]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &AmbiguitySurface) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Vector-valued delay-Doppler surface: an `N x N` array of vectors in `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct VVAmbiguitySurface {
    n: usize,
    d: usize,
    values: Vec<C64>,
}

impl VVAmbiguitySurface {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, delay: usize, doppler: usize) -> &[C64] {
        let base = (delay * self.n + doppler) * self.d;
        &self.values[base..base + self.d]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn max_abs_diff(&self, other: &VVAmbiguitySurface) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Classical discrete periodic ambiguity function
/// `A(m, n) = (1/N) sum_k u(m+k) conj(u(k)) e^{-2 pi i k n / N}`.
///
/// ```
/// use vvframe_core::ambiguity::ambiguity_scalar;
/// use vvframe_core::C64;
///
/// // a constant sequence concentrates on the zero-Doppler line
/// let u = vec![C64::new(1.0, 0.0); 8];
/// let surface = ambiguity_scalar(&u);
/// assert!((surface.get(3, 0) - C64::new(1.0, 0.0)).norm() < 1e-12);
/// assert!(surface.get(3, 1).norm() < 1e-12);
/// ```
pub fn ambiguity_scalar(u: &[C64]) -> AmbiguitySurface {
    let n = u.len();
    if n == 0 {
        return AmbiguitySurface {
            n: 0,
            values: Vec::new(),
        };
    }
    let roots: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let scale = 1.0 / n as f64;
    AmbiguitySurface::from_fn(n, |m, doppler| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            acc += u[(m + k) % n] * u[k].conj() * roots[(k * doppler) % n];
        }
        acc * scale
    })
}

/// Scalar-valued ambiguity function of a vector-valued signal over a tight
/// frame with multiplication:
/// `A(m, n) = (1/N) sum_k <u(m+k), u(k) * x_{kn}>` with `kn` reduced mod `N`.
///
/// The index product `kn` is plain modular integer multiplication; the table
/// only defines the vector product `*`.
pub fn ambiguity_a1(
    u: &VVSignal,
    frame: &Frame,
    table: &OpTable,
    tol: &Tol,
) -> Result<AmbiguitySurface> {
    let n = u.len();
    if frame.len() != n || frame.dim() != u.dim() {
        return Err(Error::DimensionMismatch(format!(
            "signal {}x{} against frame with {} vectors in C^{}",
            n,
            u.dim(),
            frame.len(),
            frame.dim()
        )));
    }
    let product = FrameProduct::new(frame, table, tol)?;
    // u(k) * x_j for all (k, j); the frame vector uses its exact
    // representation, which the accepted table makes legitimate.
    let mut products = Vec::with_capacity(n * n);
    for k in 0..n {
        for j in 0..n {
            products.push(product.multiply_by_frame_vector(u.row(k), j)?);
        }
    }
    let scale = 1.0 / n as f64;
    Ok(AmbiguitySurface::from_fn(n, |m, doppler| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            let j = (k * doppler) % n;
            acc += inner(u.row((m + k) % n), &products[k * n + j]);
        }
        acc * scale
    }))
}

/// Vector-valued ambiguity surface for a DFT frame:
/// `A(m, n) = (1/N) sum_k (tau_{-m} u)(k) conj(u(k) e^n(k))`, coordinatewise.
pub fn ambiguity_apd(u: &VVSignal, sel: &SelectionMap) -> Result<VVAmbiguitySurface> {
    if u.len() != sel.modulus() || u.dim() != sel.dim() {
        return Err(Error::DimensionMismatch(format!(
            "signal {}x{} against selection with N = {}, d = {}",
            u.len(),
            u.dim(),
            sel.modulus(),
            sel.dim()
        )));
    }
    let n = u.len();
    let d = u.dim();
    let scale = 1.0 / n as f64;
    let mut values = vec![C64::new(0.0, 0.0); n * n * d];
    for doppler in 0..n {
        let window = u
            .pointwise_mul(&modulation_signal(sel, doppler as i64))?
            .conj();
        for m in 0..n {
            let shifted = translate(u, -(m as i64));
            let base_row = (m * n + doppler) * d;
            for k in 0..n {
                for p in 0..d {
                    values[base_row + p] += shifted.get(k, p) * window.get(k, p) * scale;
                }
            }
        }
    }
    Ok(VVAmbiguitySurface { n, d, values })
}

/// Deviation report for the STFT factorization of the vector-valued surface.
#[derive(Debug, Clone, Copy)]
pub struct StftIdentityReport {
    pub max_deviation: f64,
}

/// Verifies that the vector-valued ambiguity surface factors through the
/// transform: `A(m, n) = (1/N) sum_k (tau_{-m} u)(k) conj(F^{-1}(tau_n u_hat)(k))`.
/// The right side is computed via [`vv_dft`], [`vv_idft`], and [`translate`]
/// and compared against [`ambiguity_apd`].
pub fn ambiguity_stft_identity(u: &VVSignal, sel: &SelectionMap) -> Result<StftIdentityReport> {
    let direct = ambiguity_apd(u, sel)?;
    let hat = vv_dft(u, sel)?;
    let n = u.len();
    let d = u.dim();
    let scale = 1.0 / n as f64;
    let mut max_deviation: f64 = 0.0;
    for doppler in 0..n {
        let demodulated = vv_idft(&translate(&hat, doppler as i64), sel)?.conj();
        for m in 0..n {
            let shifted = translate(u, -(m as i64));
            for p in 0..d {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += shifted.get(k, p) * demodulated.get(k, p);
                }
                let dev = (acc * scale - direct.get(m, doppler)[p]).norm();
                max_deviation = max_deviation.max(dev);
            }
        }
    }
    Ok(StftIdentityReport { max_deviation })
}
