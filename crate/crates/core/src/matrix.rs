//! Dense complex matrices and the decompositions the rest of the crate
//! builds on.
//!
//! Storage is row-major `Vec<Complex64>`. Eigen- and singular-value
//! decompositions are delegated to `nalgebra`; everything exposed here keeps
//! deterministic ordering (eigenvalues ascending, singular values
//! descending).

use crate::error::Error;
use crate::tol::Tol;
use crate::{Result, C64};
use nalgebra::DMatrix;

/// Numerical-rank threshold: singular values at or below
/// `sigma_max * dim * eps * 64` are treated as zero.
pub fn rank_threshold(sigma_max: f64, dim: usize) -> f64 {
    sigma_max * dim as f64 * f64::EPSILON * 64.0
}

/// Inner product `sum_k a_k * conj(b_k)`, conjugate-linear in the second slot.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_entries(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: C64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch ({}x{} * {}x{})",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum::<C64>())
            .collect()
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_hermitian_within(&self, tol: &Tol) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.max_abs();
        for i in 0..self.rows {
            for j in i..self.cols {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                if dev > tol.margin(scale) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitary_within(&self, tol: &Tol) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = self.mul(&self.adjoint());
        prod.sub(&Self::identity(self.rows)).max_abs() <= tol.margin(1.0)
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }

    fn from_nalgebra(m: &DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    /// Eigendecomposition of a Hermitian matrix: `A = V diag(l) V*` with
    /// eigenvalues ascending and `V` unitary (columns are eigenvectors).
    pub fn hermitian_eigen(&self) -> HermitianEigen {
        assert!(self.is_square(), "hermitian_eigen requires a square matrix");
        let se = self.to_nalgebra().symmetric_eigen();
        let n = self.rows;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| se.eigenvalues[a].total_cmp(&se.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| se.eigenvectors[(i, order[j])]);
        HermitianEigen {
            eigenvalues,
            vectors,
        }
    }

    /// Thin singular value decomposition `A = U diag(s) V*` with singular
    /// values descending.
    pub fn svd(&self) -> Svd {
        let svd = self.to_nalgebra().svd(true, true);
        let u = Self::from_nalgebra(svd.u.as_ref().expect("u requested"));
        let v_t = Self::from_nalgebra(svd.v_t.as_ref().expect("v_t requested"));
        Svd {
            u,
            singular_values: svd.singular_values.as_slice().to_vec(),
            v_adjoint: v_t,
        }
    }

    pub fn singular_values(&self) -> Vec<f64> {
        self.to_nalgebra().singular_values().as_slice().to_vec()
    }

    /// Numerical rank under the [`rank_threshold`] rule.
    pub fn rank(&self) -> usize {
        let sv = self.singular_values();
        let max = sv.first().copied().unwrap_or(0.0);
        let thresh = rank_threshold(max, self.rows.max(self.cols));
        sv.iter().filter(|&&s| s > thresh).count()
    }

    pub fn try_inverse(&self) -> Result<Self> {
        self.to_nalgebra()
            .try_inverse()
            .map(|m| Self::from_nalgebra(&m))
            .ok_or_else(|| Error::Numerical("matrix is singular".into()))
    }

    /// Nearest unitary in the polar sense: for `A = U S V*`, returns `U V*`.
    pub fn polar_unitary(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "polar projection requires a square matrix".into(),
            ));
        }
        let svd = self.svd();
        Ok(svd.u.mul(&svd.v_adjoint))
    }
}

pub struct HermitianEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the corresponding eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Reassembles `V f(diag) V*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let diag = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::new(f(self.eigenvalues[i]), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        self.vectors.mul(&diag).mul(&self.vectors.adjoint())
    }
}

pub struct Svd {
    pub u: ComplexMatrix,
    /// Descending.
    pub singular_values: Vec<f64>,
    pub v_adjoint: ComplexMatrix,
}
