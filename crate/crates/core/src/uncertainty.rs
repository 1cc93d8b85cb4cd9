//! Finite-dimensional uncertainty principles: the generic self-adjoint
//! operator inequalities and their specialization to the position and
//! momentum operators of the vector-valued DFT.

use crate::error::Error;
use crate::matrix::{inner, vec_norm, ComplexMatrix};
use crate::tol::Tol;
use crate::vvdft::{SelectionMap, VVSignal};
use crate::{Result, C64};

/// Momentum operator `P(u)(m) = i (u(m+1) - u(m-1))`, indices mod `N`.
///
/// For `N <= 2` the operator is identically zero (`m+1 = m-1 mod N`).
pub fn apply_p(u: &VVSignal) -> VVSignal {
    let i = C64::new(0.0, 1.0);
    VVSignal::from_fn(u.len(), u.dim(), |m, p| {
        i * (u.at(m as i64 + 1, p) - u.at(m as i64 - 1, p))
    })
}

/// Position operator `Q(u)(m) = q(m) u(m)` for a real-valued weight `q`.
pub fn apply_q(q: &VVSignal, u: &VVSignal) -> Result<VVSignal> {
    require_real(q)?;
    q.pointwise_mul(u)
}

fn require_real(q: &VVSignal) -> Result<()> {
    if q.values().iter().any(|z| z.im != 0.0) {
        return Err(Error::ComplexWeight);
    }
    Ok(())
}

/// The weight `q = i(e^1 - e^{-1})` that intertwines `P` and `Q` through the
/// unitary transform: `q(m)(n) = -2 sin(2 pi m s(n) / N)`, constructed with
/// exactly zero imaginary parts.
pub fn classical_q(sel: &SelectionMap) -> VVSignal {
    let n = sel.modulus();
    VVSignal::from_fn(n, sel.dim(), |m, p| {
        let angle = 2.0 * std::f64::consts::PI * ((m * sel.s(p)) % n) as f64 / n as f64;
        C64::new(-2.0 * angle.sin(), 0.0)
    })
}

/// Terms of the general uncertainty inequality for one signal/weight pair.
///
/// `t_term` and `s_term` are the anticommutator and commutator expectations
/// `<u, Tu>` and `<u, Su>`; the inequality itself compares
/// `lhs = (t_term/2)^2 + (s_term/2)^2` against `rhs = |qu|^2 |Pu|^2`.
#[derive(Debug, Clone, Copy)]
pub struct UPReport {
    pub t_term: f64,
    pub s_term: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
}

/// Evaluates the general uncertainty inequality; it holds for every
/// real-valued `q` and every signal.
pub fn verify_up(u: &VVSignal, q: &VVSignal, tol: &Tol) -> Result<UPReport> {
    require_real(q)?;
    if u.len() != q.len() || u.dim() != q.dim() {
        return Err(Error::DimensionMismatch(format!(
            "signal {}x{} against weight {}x{}",
            u.len(),
            u.dim(),
            q.len(),
            q.dim()
        )));
    }
    let n = u.len() as i64;
    let d = u.dim();
    // <u, Tu> = 2 sum_m Im <u(m), (q(m) + q(m+1)) u(m+1)>
    // <u, Su> = 2 sum_m Re <u(m), (q(m) - q(m+1)) u(m+1)>
    let mut t_sum = 0.0;
    let mut s_sum = 0.0;
    for m in 0..n {
        let mut ip_plus = C64::new(0.0, 0.0);
        let mut ip_minus = C64::new(0.0, 0.0);
        for p in 0..d {
            let qm = q.at(m, p).re;
            let qm1 = q.at(m + 1, p).re;
            let term = u.at(m, p) * u.at(m + 1, p).conj();
            ip_plus += term * (qm + qm1);
            ip_minus += term * (qm - qm1);
        }
        t_sum += ip_plus.im;
        s_sum += ip_minus.re;
    }
    let t_term = 2.0 * t_sum;
    let s_term = 2.0 * s_sum;
    let lhs = t_sum * t_sum + s_sum * s_sum;
    let qu = apply_q(q, u)?;
    let pu = apply_p(u);
    let rhs = qu.norm().powi(2) * pu.norm().powi(2);
    let slack = rhs - lhs;
    Ok(UPReport {
        t_term,
        s_term,
        lhs,
        rhs,
        holds: lhs <= rhs + tol.margin(rhs),
        slack,
    })
}

/// Both Hilbert-space uncertainty inequalities for a pair of self-adjoint
/// operators in a given state.
#[derive(Debug, Clone, Copy)]
pub struct HilbertUpReport {
    /// `<x, (AB + BA) x>`
    pub anticommutator_expectation: f64,
    /// `<x, -i[A, B] x>`
    pub commutator_expectation: f64,
    /// `(E_x(i[A,B]))^2` against `4 var(A) var(B)`.
    pub variance_lhs: f64,
    pub variance_rhs: f64,
    pub variance_holds: bool,
    /// `<x,Tx>^2 + <x,Sx>^2` against `4 <A^2> <B^2>`.
    pub moment_lhs: f64,
    pub moment_rhs: f64,
    pub moment_holds: bool,
    /// `Ax` and `Bx` linearly dependent, the equality case of the moment form.
    pub equality_case: bool,
}

/// Evaluates both inequalities for Hermitian `a`, `b` and a state with
/// `|x| <= 1` (required by the variance form).
pub fn hilbert_up(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &[C64],
    tol: &Tol,
) -> Result<HilbertUpReport> {
    for m in [a, b] {
        if !m.is_square() || m.rows() != x.len() {
            return Err(Error::DimensionMismatch(format!(
                "operator {}x{} against state of length {}",
                m.rows(),
                m.cols(),
                x.len()
            )));
        }
        let dev = m.sub(&m.adjoint()).max_abs();
        if dev > tol.margin(m.max_abs()) {
            return Err(Error::NotHermitian(dev));
        }
    }
    let norm_x = vec_norm(x);
    if norm_x > 1.0 + tol.margin(1.0) {
        return Err(Error::InvalidArgument(format!(
            "the variance inequality requires |x| <= 1, got {}",
            norm_x
        )));
    }
    let ax = a.mul_vec(x);
    let bx = b.mul_vec(x);
    let z = inner(&ax, &bx);
    // <x,Tx> = 2 Re z and <x,Sx> = -2 Im z for z = <Ax, Bx>
    let t_exp = 2.0 * z.re;
    let s_exp = -2.0 * z.im;
    let exp_a = inner(&ax, x).re;
    let exp_b = inner(&bx, x).re;
    let var_a = (vec_norm(&ax).powi(2) - exp_a * exp_a).max(0.0);
    let var_b = (vec_norm(&bx).powi(2) - exp_b * exp_b).max(0.0);
    let variance_lhs = (2.0 * z.im).powi(2);
    let variance_rhs = 4.0 * var_a * var_b;
    let moment_lhs = t_exp * t_exp + s_exp * s_exp;
    let moment_rhs = 4.0 * vec_norm(&ax).powi(2) * vec_norm(&bx).powi(2);
    // Equality case: smallest singular value of the two-column matrix [Ax Bx].
    let cols = ComplexMatrix::from_fn(x.len(), 2, |i, j| if j == 0 { ax[i] } else { bx[i] });
    let sv = cols.singular_values();
    let sigma_min = sv.last().copied().unwrap_or(0.0);
    let col_scale = vec_norm(&ax).max(vec_norm(&bx));
    Ok(HilbertUpReport {
        anticommutator_expectation: t_exp,
        commutator_expectation: s_exp,
        variance_lhs,
        variance_rhs,
        variance_holds: variance_lhs <= variance_rhs + tol.margin(variance_rhs),
        moment_lhs,
        moment_rhs,
        moment_holds: moment_lhs <= moment_rhs + tol.margin(moment_rhs),
        equality_case: sigma_min <= 1e-8 * col_scale,
    })
}

/// The momentum operator as an `Nd x Nd` Hermitian matrix on signals
/// flattened as `(m, p) -> m d + p`.
pub fn p_matrix(n: usize, d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n * d, n * d);
    let i = C64::new(0.0, 1.0);
    for time in 0..n {
        let up = (time + 1) % n;
        let down = (time + n - 1) % n;
        for p in 0..d {
            let row = time * d + p;
            let a = m.get(row, up * d + p) + i;
            m.set(row, up * d + p, a);
            let b = m.get(row, down * d + p) - i;
            m.set(row, down * d + p, b);
        }
    }
    m
}

/// The position operator for weight `q` as a diagonal `Nd x Nd` matrix.
pub fn q_matrix(q: &VVSignal) -> Result<ComplexMatrix> {
    require_real(q)?;
    let n = q.len();
    let d = q.dim();
    let mut m = ComplexMatrix::zeros(n * d, n * d);
    for time in 0..n {
        for p in 0..d {
            m.set(time * d + p, time * d + p, C64::new(q.get(time, p).re, 0.0));
        }
    }
    Ok(m)
}
