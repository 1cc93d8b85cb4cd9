//! Frames for `C^d` and their operator calculus: analysis and synthesis,
//! frame operator, Gramian, frame bounds and classification, canonical dual
//! and tight frames, Gramian-based unitary equivalence, and the Naimark
//! projection check.

use crate::error::Error;
use crate::matrix::{inner, rank_threshold, vec_norm, ComplexMatrix, HermitianEigen};
use crate::tol::Tol;
use crate::{Result, C64};

/// An ordered sequence of `N` vectors in `C^d`, indexed by `0..N-1`.
///
/// Repeated and zero vectors are allowed; whether the sequence actually
/// spans (and hence is a frame) is reported by [`Frame::classify`], not
/// enforced here.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    dim: usize,
    vectors: Vec<Vec<C64>>,
}

impl Frame {
    pub fn new(dim: usize, vectors: Vec<Vec<C64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "ambient dimension must be positive".into(),
            ));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidArgument(
                "a frame needs at least one vector".into(),
            ));
        }
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector {} has length {}, expected {}",
                    j,
                    v.len(),
                    dim
                )));
            }
            if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "vector {} has non-finite entries",
                    j
                )));
            }
        }
        Ok(Frame { dim, vectors })
    }

    /// Standard orthonormal basis of `C^d`.
    pub fn standard_basis(dim: usize) -> Self {
        assert!(dim > 0, "ambient dimension must be positive");
        let vectors = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|p| C64::new(if p == j { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        Frame { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of frame vectors `N`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty() // never true: N >= 1 by construction
    }

    pub fn vector(&self, j: usize) -> &[C64] {
        &self.vectors[j]
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<C64>> {
        self.vectors.iter()
    }

    /// The `d x N` synthesis matrix whose columns are the frame vectors.
    pub fn synthesis_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, self.len(), |p, j| self.vectors[j][p])
    }

    /// Analysis coefficients `(Lx)_j = <x, x_j>`.
    pub fn analysis(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "analysis input has length {}, frame dimension is {}",
                x.len(),
                self.dim
            )));
        }
        Ok(self.vectors.iter().map(|xj| inner(x, xj)).collect())
    }

    /// Synthesis `L* a = sum_j a_j x_j`.
    pub fn synthesis(&self, a: &[C64]) -> Result<Vec<C64>> {
        if a.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient vector has length {}, frame has {} vectors",
                a.len(),
                self.len()
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (aj, xj) in a.iter().zip(&self.vectors) {
            for (o, &x) in out.iter_mut().zip(xj) {
                *o += aj * x;
            }
        }
        Ok(out)
    }

    /// Frame operator `S = L* L` as a `d x d` matrix.
    pub fn frame_operator(&self) -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(self.dim, self.dim);
        for xj in &self.vectors {
            for p in 0..self.dim {
                for q in 0..self.dim {
                    let v = s.get(p, q) + xj[p] * xj[q].conj();
                    s.set(p, q, v);
                }
            }
        }
        s
    }

    /// Gramian `G[j][k] = <x_k, x_j>`, Hermitian by construction: the lower
    /// triangle is computed and the upper triangle mirrored exactly.
    pub fn gramian(&self) -> ComplexMatrix {
        let n = self.len();
        let mut g = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..=j {
                let v = inner(&self.vectors[k], &self.vectors[j]);
                if j == k {
                    g.set(j, j, C64::new(v.re, 0.0));
                } else {
                    g.set(j, k, v);
                    g.set(k, j, v.conj());
                }
            }
        }
        g
    }

    /// Optimal frame bounds and structural flags per the tolerance policy.
    ///
    /// Spanning is a numerical-rank decision on the frame operator. Its
    /// eigenvalues are squared singular values of the synthesis matrix, so
    /// the rank rule is applied on the eigenvalue scale; comparing square
    /// roots would inflate the roundoff floor of near-zero eigenvalues.
    pub fn classify(&self, tol: &Tol) -> FrameClass {
        let eig = self.frame_operator().hermitian_eigen();
        let lower = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
        let upper = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let spans = lower > rank_threshold(upper, self.len().max(self.dim));
        let tight = spans && (upper - lower) <= tol.margin(upper);
        let parseval = tight && (upper - 1.0).abs() <= tol.margin(1.0);
        let norms: Vec<f64> = self.vectors.iter().map(|v| vec_norm(v)).collect();
        let max_norm = norms.iter().copied().fold(0.0, f64::max);
        let min_norm = norms.iter().copied().fold(f64::INFINITY, f64::min);
        let equal_norm = (max_norm - min_norm) <= tol.margin(max_norm);
        let unit_norm = norms.iter().all(|&n| (n - 1.0).abs() <= tol.margin(1.0));
        FrameClass {
            spans,
            lower,
            upper,
            tight,
            parseval,
            equal_norm,
            funtf: tight && equal_norm && unit_norm,
        }
    }

    fn spectral(&self, tol: &Tol) -> Result<HermitianEigen> {
        let eig = self.frame_operator().hermitian_eigen();
        let lambda_max = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
        let thresh = rank_threshold(lambda_max, self.len().max(self.dim));
        if eig.eigenvalues.iter().any(|&l| l <= thresh) {
            return Err(Error::NonSpanning);
        }
        let _ = tol;
        Ok(eig)
    }

    /// Canonical dual `S^{-1} X` and canonical tight `S^{-1/2} X`.
    pub fn canonical(&self, tol: &Tol) -> Result<(Frame, Frame)> {
        let eig = self.spectral(tol)?;
        let s_inv = eig.map_spectrum(|l| 1.0 / l);
        let s_inv_sqrt = eig.map_spectrum(|l| 1.0 / l.sqrt());
        let dual = Frame {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| s_inv.mul_vec(v)).collect(),
        };
        let tight = Frame {
            dim: self.dim,
            vectors: self.vectors.iter().map(|v| s_inv_sqrt.mul_vec(v)).collect(),
        };
        Ok((dual, tight))
    }

    /// Checks the Naimark projection identities for a Parseval frame: the
    /// Gramian must be a self-adjoint idempotent whose columns reproduce the
    /// analysis coefficients of the frame vectors.
    pub fn naimark_check(&self, tol: &Tol) -> Result<NaimarkReport> {
        let class = self.classify(tol);
        if !class.parseval {
            return Err(Error::NotParseval {
                lower: class.lower,
                upper: class.upper,
            });
        }
        let g = self.gramian();
        let idempotency_dev = g.mul(&g).sub(&g).max_abs();
        let hermitian_dev = g.sub(&g.adjoint()).max_abs();
        let mut column_dev: f64 = 0.0;
        for j in 0..self.len() {
            let coeffs = self.analysis(&self.vectors[j])?;
            for (k, c) in coeffs.iter().enumerate() {
                column_dev = column_dev.max((g.get(k, j) - c).norm());
            }
        }
        Ok(NaimarkReport {
            idempotency_dev,
            hermitian_dev,
            column_dev,
        })
    }

    /// Unitary equivalence test for tight frames.
    ///
    /// Returns a certificate `(c, U)` with `y_j = c U x_j` for all `j`
    /// (mapping `self` onto `other`), or `None` when the Gramians are not
    /// proportional. The scale is the square root of the Gramian trace
    /// ratio; `U` comes from aligning the synthesis matrices and projecting
    /// onto the unitary group. Indexing is fixed: frames that agree only up
    /// to a permutation of their vectors are not equivalent here.
    pub fn unitary_equivalence(
        &self,
        other: &Frame,
        tol: &Tol,
    ) -> Result<Option<EquivalenceCertificate>> {
        if self.dim != other.dim || self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "frames of shape ({}, {}) and ({}, {}) cannot be compared",
                self.len(),
                self.dim,
                other.len(),
                other.dim
            )));
        }
        let cx = self.classify(tol);
        let cy = other.classify(tol);
        if !cx.tight || !cy.tight {
            return Err(Error::NotTight(
                "unitary equivalence is only decided for tight frames".into(),
            ));
        }
        let gx = self.gramian();
        let gy = other.gramian();
        let tx = gx.trace().re;
        let ty = gy.trace().re;
        if tx <= tol.abs || ty <= tol.abs {
            return Err(Error::NotTight("frame of zero energy".into()));
        }
        let c2 = ty / tx;
        let dev = gy.sub(&gx.scale(C64::new(c2, 0.0))).frobenius_norm();
        if dev > tol.margin(gy.frobenius_norm()) {
            return Ok(None);
        }
        let c = c2.sqrt();
        // Align synthesis matrices: U (c X) ~ Y, so U = (1/c) Y X* S_X^{-1},
        // then project to the nearest unitary to absorb roundoff.
        let x_syn = self.synthesis_matrix();
        let y_syn = other.synthesis_matrix();
        let eig = self.spectral(tol)?;
        let s_inv = eig.map_spectrum(|l| 1.0 / l);
        let m = y_syn
            .mul(&x_syn.adjoint())
            .mul(&s_inv)
            .scale(C64::new(1.0 / c, 0.0));
        let u = m.polar_unitary()?;
        // Certificate must actually map the frames onto each other.
        let mut worst: f64 = 0.0;
        for j in 0..self.len() {
            let mapped: Vec<C64> = u.mul_vec(&self.vectors[j]).iter().map(|z| z * c).collect();
            let diff: f64 = mapped
                .iter()
                .zip(&other.vectors[j])
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(diff);
        }
        let scale = other
            .vectors
            .iter()
            .map(|v| vec_norm(v))
            .fold(0.0, f64::max);
        if worst > 1e-8_f64.max(tol.margin(scale)) {
            return Err(Error::Numerical(format!(
                "proportional Gramians but alignment residual {:.3e}",
                worst
            )));
        }
        Ok(Some(EquivalenceCertificate {
            scale: c,
            unitary: u,
        }))
    }
}

/// Outcome of [`Frame::classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameClass {
    pub spans: bool,
    /// Optimal lower frame bound (smallest eigenvalue of `S`).
    pub lower: f64,
    /// Optimal upper frame bound (largest eigenvalue of `S`).
    pub upper: f64,
    pub tight: bool,
    pub parseval: bool,
    pub equal_norm: bool,
    pub funtf: bool,
}

/// Witness that two tight frames are unitarily equivalent: `y_j = scale * unitary * x_j`.
#[derive(Debug, Clone)]
pub struct EquivalenceCertificate {
    pub scale: f64,
    pub unitary: ComplexMatrix,
}

/// Maximum deviations found by [`Frame::naimark_check`].
#[derive(Debug, Clone, Copy)]
pub struct NaimarkReport {
    /// `max |(G^2 - G)_{jk}|`
    pub idempotency_dev: f64,
    /// `max |(G - G*)_{jk}|`
    pub hermitian_dev: f64,
    /// `max_j max_k |G e_j - L x_j|_k`
    pub column_dev: f64,
}

impl NaimarkReport {
    pub fn max_deviation(&self) -> f64 {
        self.idempotency_dev
            .max(self.hermitian_dev)
            .max(self.column_dev)
    }
}
