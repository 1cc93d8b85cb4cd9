//! Frame multiplication: deciding when a binary operation on frame indices
//! extends to a bilinear product on the whole space, extending that product
//! to arbitrary vectors, enumerating all multiplications of a small frame,
//! G-matrix detection, the unitary representation carried by a group frame,
//! and the constructive equivalence of Abelian group frames with harmonic
//! frames.

#![allow(clippy::needless_range_loop)]

use crate::error::Error;
use crate::frame::Frame;
use crate::matrix::{inner, rank_threshold, ComplexMatrix};
use crate::tol::Tol;
use crate::{Result, C64};

/// A binary operation on `{0..n-1}` given by its full table. Only closure is
/// assumed; associativity, identity, and inverses are not required.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OpTable {
    n: usize,
    table: Vec<usize>, // row-major: table[i * n + j] = i . j
}

impl OpTable {
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("table size must be positive".into()));
        }
        if table.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} table needs {} entries, got {}",
                n,
                n,
                n * n,
                table.len()
            )));
        }
        if table.iter().any(|&v| v >= n) {
            return Err(Error::InvalidArgument(format!(
                "table entries must lie in 0..{}",
                n
            )));
        }
        Ok(OpTable { n, table })
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<usize> = rows.into_iter().flatten().collect();
        Self::new(n, flat)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    pub fn entries(&self) -> &[usize] {
        &self.table
    }

    /// Addition table of `Z/nZ`.
    pub fn cyclic_addition(n: usize) -> Self {
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push((i + j) % n);
            }
        }
        OpTable { n, table }
    }

    /// Two-sided identity element, if the table has one.
    pub fn two_sided_identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|j| self.get(e, j) == j && self.get(j, e) == j))
    }
}

/// Which side of the kernel-invariance test failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `sum_i a_i x_{i . j} != 0`
    Right,
    /// `sum_i a_i x_{j . i} != 0`
    Left,
}

/// Outcome of [`is_frame_multiplication`], with the first violation when
/// the table is rejected.
#[derive(Debug, Clone, Copy)]
pub struct MultCheck {
    pub accepted: bool,
    pub violation: Option<MultViolation>,
}

#[derive(Debug, Clone, Copy)]
pub struct MultViolation {
    pub index: usize,
    pub side: Side,
    pub residual: f64,
}

/// Orthonormal basis of the kernel of the synthesis operator (an `N x k`
/// matrix of coefficient vectors `a` with `sum a_j x_j = 0`).
///
/// Computed from the singular value decomposition of the `d x N` synthesis
/// matrix (zero-padded to square so that all `N` right singular vectors are
/// available), thresholding with the standard rank rule.
pub fn kernel_basis(frame: &Frame) -> ComplexMatrix {
    let n = frame.len();
    let d = frame.dim();
    let synth = frame.synthesis_matrix();
    let rows = n.max(d);
    let padded = ComplexMatrix::from_fn(rows, n, |i, j| {
        if i < d {
            synth.get(i, j)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let svd = padded.svd();
    let v = svd.v_adjoint.adjoint();
    let sigma_max = svd.singular_values.first().copied().unwrap_or(0.0);
    let thresh = rank_threshold(sigma_max, rows);
    let kernel_cols: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&j| svd.singular_values[j] <= thresh)
        .collect();
    ComplexMatrix::from_fn(n, kernel_cols.len(), |i, j| v.get(i, kernel_cols[j]))
}

fn synthesis_frobenius(frame: &Frame) -> f64 {
    frame
        .iter()
        .flat_map(|v| v.iter())
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Core acceptance test with a precomputed kernel basis; `kernel` must come
/// from [`kernel_basis`] of the same frame.
fn check_with_kernel(
    frame: &Frame,
    kernel: &ComplexMatrix,
    table: &OpTable,
    scale: f64,
    tol: &Tol,
) -> MultCheck {
    let n = frame.len();
    let d = frame.dim();
    let k = kernel.cols();
    if k == 0 {
        return MultCheck {
            accepted: true,
            violation: None,
        };
    }
    let limit = tol.margin(scale);
    for j in 0..n {
        for side in [Side::Right, Side::Left] {
            // residual matrix M_j K where M_j has columns x_{i.j} (or x_{j.i})
            let mut sq = 0.0;
            for col in 0..k {
                for p in 0..d {
                    let mut acc = C64::new(0.0, 0.0);
                    for i in 0..n {
                        let target = match side {
                            Side::Right => table.get(i, j),
                            Side::Left => table.get(j, i),
                        };
                        acc += kernel.get(i, col) * frame.vector(target)[p];
                    }
                    sq += acc.norm_sqr();
                }
            }
            let residual = sq.sqrt();
            if residual > limit {
                return MultCheck {
                    accepted: false,
                    violation: Some(MultViolation {
                        index: j,
                        side,
                        residual,
                    }),
                };
            }
        }
    }
    MultCheck {
        accepted: true,
        violation: None,
    }
}

/// Decides whether `table` is a frame multiplication for `frame`: every
/// linear dependency among the frame vectors must survive index translation
/// on both sides.
pub fn is_frame_multiplication(frame: &Frame, table: &OpTable, tol: &Tol) -> Result<MultCheck> {
    if table.size() != frame.len() {
        return Err(Error::DimensionMismatch(format!(
            "table of size {} against frame with {} vectors",
            table.size(),
            frame.len()
        )));
    }
    let kernel = kernel_basis(frame);
    let scale = synthesis_frobenius(frame);
    Ok(check_with_kernel(frame, &kernel, table, scale, tol))
}

/// The bilinear product carried by an accepted table on a tight frame.
///
/// Construction verifies the preconditions once; [`FrameProduct::multiply`]
/// can then be called without re-checking.
pub struct FrameProduct<'a> {
    frame: &'a Frame,
    table: &'a OpTable,
    /// `1 / A` for the tight frame bound `A`, the canonical coefficient scale.
    inv_bound: f64,
}

impl<'a> FrameProduct<'a> {
    pub fn new(frame: &'a Frame, table: &'a OpTable, tol: &Tol) -> Result<Self> {
        let check = is_frame_multiplication(frame, table, tol)?;
        if !check.accepted {
            let v = check.violation.expect("rejected check carries violation");
            return Err(Error::NoFrameMultiplication(format!(
                "kernel moves under index {} ({:?} side, residual {:.3e})",
                v.index, v.side, v.residual
            )));
        }
        let class = frame.classify(tol);
        if !class.tight {
            return Err(Error::NotTight(
                "extension uses canonical tight-frame coefficients".into(),
            ));
        }
        Ok(FrameProduct {
            frame,
            table,
            inv_bound: 1.0 / class.upper,
        })
    }

    /// Canonical coefficients `a_i = <x, x_i> / A` of the tight-frame
    /// reconstruction.
    fn coefficients(&self, x: &[C64]) -> Result<Vec<C64>> {
        Ok(self
            .frame
            .analysis(x)?
            .into_iter()
            .map(|c| c * self.inv_bound)
            .collect())
    }

    /// `x * y = sum_{i,j} a_i b_j x_{i . j}`.
    pub fn multiply(&self, x: &[C64], y: &[C64]) -> Result<Vec<C64>> {
        let a = self.coefficients(x)?;
        let b = self.coefficients(y)?;
        let n = self.frame.len();
        let d = self.frame.dim();
        let mut out = vec![C64::new(0.0, 0.0); d];
        for i in 0..n {
            if a[i].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let coeff = a[i] * b[j];
                let target = self.frame.vector(self.table.get(i, j));
                for p in 0..d {
                    out[p] += coeff * target[p];
                }
            }
        }
        Ok(out)
    }

    /// `x * x_j` using the exact representation of the frame vector; equal to
    /// [`FrameProduct::multiply`] with `y = x_j` since the product does not
    /// depend on the representation chosen.
    pub fn multiply_by_frame_vector(&self, x: &[C64], j: usize) -> Result<Vec<C64>> {
        let a = self.coefficients(x)?;
        let d = self.frame.dim();
        let mut out = vec![C64::new(0.0, 0.0); d];
        for (i, ai) in a.iter().enumerate() {
            let target = self.frame.vector(self.table.get(i, j));
            for p in 0..d {
                out[p] += ai * target[p];
            }
        }
        Ok(out)
    }
}

/// One-shot product extension; see [`FrameProduct`] for repeated products.
pub fn extend_product(
    frame: &Frame,
    table: &OpTable,
    x: &[C64],
    y: &[C64],
    tol: &Tol,
) -> Result<Vec<C64>> {
    FrameProduct::new(frame, table, tol)?.multiply(x, y)
}

/// Default cap on exhaustive table enumeration.
pub const ENUMERATION_CAP: usize = 4;

/// All frame multiplications of `frame`, in lexicographic table order.
///
/// Without candidates the search is exhaustive over all `n^(n^2)` tables for
/// `n <= 3`; for `n = 4` it is restricted to tables with a two-sided
/// identity. Larger frames must supply candidate tables.
pub fn enumerate_multiplications(
    frame: &Frame,
    candidates: Option<&[OpTable]>,
    tol: &Tol,
) -> Result<Vec<OpTable>> {
    let n = frame.len();
    let kernel = kernel_basis(frame);
    let scale = synthesis_frobenius(frame);
    let mut accepted = Vec::new();

    let mut consider = |table: &OpTable| {
        if check_with_kernel(frame, &kernel, table, scale, tol).accepted {
            accepted.push(table.clone());
        }
    };

    match candidates {
        Some(list) => {
            for t in list {
                if t.size() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "candidate table of size {} against frame with {} vectors",
                        t.size(),
                        n
                    )));
                }
                consider(t);
            }
        }
        None => {
            if n > ENUMERATION_CAP {
                return Err(Error::EnumerationCapExceeded {
                    n,
                    cap: ENUMERATION_CAP,
                });
            }
            if n <= 3 {
                let cells = n * n;
                let mut entries = vec![0usize; cells];
                loop {
                    consider(&OpTable {
                        n,
                        table: entries.clone(),
                    });
                    // odometer increment in lexicographic order
                    let mut pos = cells;
                    while pos > 0 {
                        pos -= 1;
                        entries[pos] += 1;
                        if entries[pos] < n {
                            break;
                        }
                        entries[pos] = 0;
                        if pos == 0 {
                            return finish(accepted);
                        }
                    }
                }
            } else {
                // n = 4: search tables with a two-sided identity e; the
                // remaining 9 cells are free.
                for e in 0..n {
                    let free: Vec<(usize, usize)> = (0..n)
                        .flat_map(|i| (0..n).map(move |j| (i, j)))
                        .filter(|&(i, j)| i != e && j != e)
                        .collect();
                    let mut entries = vec![0usize; n * n];
                    for j in 0..n {
                        entries[e * n + j] = j;
                        entries[j * n + e] = j;
                    }
                    let mut digits = vec![0usize; free.len()];
                    'outer: loop {
                        for (slot, &(i, j)) in digits.iter().zip(&free) {
                            entries[i * n + j] = *slot;
                        }
                        consider(&OpTable {
                            n,
                            table: entries.clone(),
                        });
                        let mut pos = digits.len();
                        while pos > 0 {
                            pos -= 1;
                            digits[pos] += 1;
                            if digits[pos] < n {
                                continue 'outer;
                            }
                            digits[pos] = 0;
                        }
                        break;
                    }
                }
            }
        }
    }
    finish(accepted)
}

fn finish(mut accepted: Vec<OpTable>) -> Result<Vec<OpTable>> {
    accepted.sort();
    accepted.dedup();
    Ok(accepted)
}

/// A finite Abelian group presented as a product of cyclic factors.
/// Elements are mixed-radix indices `0..order` with the last factor fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
    order: usize,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(Error::InvalidArgument(
                "cyclic factor orders must be positive".into(),
            ));
        }
        let order = orders.iter().product();
        Ok(FiniteAbelianGroup { orders, order })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cyclic_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.orders.len()];
        for (i, &n) in self.orders.iter().enumerate().rev() {
            out[i] = index % n;
            index /= n;
        }
        out
    }

    pub fn encode(&self, components: &[usize]) -> usize {
        let mut index = 0;
        for (&c, &n) in components.iter().zip(&self.orders) {
            index = index * n + (c % n);
        }
        index
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        let ca = self.decode(a);
        let cb = self.decode(b);
        let sum: Vec<usize> = ca
            .iter()
            .zip(&cb)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        self.encode(&sum)
    }

    pub fn inverse(&self, a: usize) -> usize {
        let ca = self.decode(a);
        let neg: Vec<usize> = ca
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.encode(&neg)
    }

    pub fn op_table(&self) -> OpTable {
        let n = self.order;
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(self.op(a, b));
            }
        }
        OpTable { n, table }
    }

    /// Character `gamma_k(g) = prod_i e^{2 pi i k_i g_i / n_i}`, with the
    /// character index decoded the same way as group elements.
    pub fn character(&self, k: usize, g: usize) -> C64 {
        let ck = self.decode(k);
        let cg = self.decode(g);
        let mut acc = C64::new(1.0, 0.0);
        for ((&ki, &gi), &ni) in ck.iter().zip(&cg).zip(&self.orders) {
            let r = (ki * gi) % ni;
            acc *= C64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / ni as f64);
        }
        acc
    }

    /// Generators of the cyclic factors (one per factor of order > 1).
    pub fn generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &n) in self.orders.iter().enumerate() {
            if n > 1 {
                let mut components = vec![0usize; self.orders.len()];
                components[i] = 1;
                out.push(self.encode(&components));
            }
        }
        out
    }
}

/// The vector `nu` certifying that a matrix is a G-matrix:
/// `a[g][h] = nu(h^{-1} . g)`.
#[derive(Debug, Clone)]
pub struct GMatrixWitness {
    pub nu: Vec<C64>,
}

/// Tests whether `gm` is a G-matrix for `group`, reading `nu` off the
/// identity column and verifying every entry.
pub fn gmatrix_test(
    gm: &ComplexMatrix,
    group: &FiniteAbelianGroup,
    tol: &Tol,
) -> Result<Option<GMatrixWitness>> {
    let n = group.order();
    if gm.rows() != n || gm.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix against group of order {}",
            gm.rows(),
            gm.cols(),
            n
        )));
    }
    let e = group.identity();
    let nu: Vec<C64> = (0..n).map(|g| gm.get(g, e)).collect();
    let limit = tol.margin(gm.max_abs());
    for g in 0..n {
        for h in 0..n {
            let expect = nu[group.op(group.inverse(h), g)];
            if (gm.get(g, h) - expect).norm() > limit {
                return Ok(None);
            }
        }
    }
    Ok(Some(GMatrixWitness { nu }))
}

/// The unitaries `U_g x = sum_h <x, dual_h> x_{g . h}` carried by a group
/// frame; `U_g x_h = x_{g . h}` and `g -> U_g` is a homomorphism.
pub fn group_frame_rep(
    frame: &Frame,
    group: &FiniteAbelianGroup,
    tol: &Tol,
) -> Result<Vec<ComplexMatrix>> {
    let n = group.order();
    if frame.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "frame with {} vectors against group of order {}",
            frame.len(),
            n
        )));
    }
    if gmatrix_test(&frame.gramian(), group, tol)?.is_none() {
        return Err(Error::NotGMatrix);
    }
    let (dual, _) = frame.canonical(tol)?;
    let d = frame.dim();
    let mut out = Vec::with_capacity(n);
    for g in 0..n {
        let mut u = ComplexMatrix::zeros(d, d);
        for h in 0..n {
            let target = frame.vector(group.op(g, h));
            let dual_h = dual.vector(h);
            for p in 0..d {
                for q in 0..d {
                    let v = u.get(p, q) + target[p] * dual_h[q].conj();
                    u.set(p, q, v);
                }
            }
        }
        if !u.is_unitary_within(&Tol::new(tol.rel.max(1e-9) * 100.0, tol.abs)) {
            return Err(Error::Numerical(format!(
                "representation operator U_{} failed the unitarity check",
                g
            )));
        }
        out.push(u);
    }
    Ok(out)
}

/// Certificate that a tight group frame is unitarily equivalent to a
/// harmonic frame: `scale * unitary * x_g` is the character vector
/// `(gamma_0(g), ..., gamma_{d-1}(g))` for every `g`, which turns the frame
/// product into pointwise multiplication.
#[derive(Debug, Clone)]
pub struct HarmonicCertificate {
    pub scale: f64,
    pub unitary: ComplexMatrix,
    /// `d` rows of length `N`: row `j` is the character `gamma_j` evaluated
    /// on the group, in ascending eigenvalue-tuple order.
    pub characters: Vec<Vec<C64>>,
}

/// Constructively maps a tight frame with a group multiplication onto a
/// harmonic frame by simultaneous diagonalization of the representation.
pub fn harmonic_equivalence(
    frame: &Frame,
    group: &FiniteAbelianGroup,
    tol: &Tol,
) -> Result<HarmonicCertificate> {
    let class = frame.classify(tol);
    if !class.tight {
        return Err(Error::NotTight(
            "harmonic equivalence applies to tight frames".into(),
        ));
    }
    let table = group.op_table();
    let check = is_frame_multiplication(frame, &table, tol)?;
    if !check.accepted {
        return Err(Error::NoFrameMultiplication(
            "the group operation is not a frame multiplication for this frame".into(),
        ));
    }
    let reps = group_frame_rep(frame, group, tol)?;
    let d = frame.dim();
    let n = group.order();

    // Sequentially refine eigenspaces over the Hermitian and skew-Hermitian
    // parts of each generator's unitary. All of these commute, so the final
    // blocks are joint eigenspaces.
    let mut blocks: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(d)];
    for &g in &group.generators() {
        let u = &reps[g];
        let herm = u.add(&u.adjoint()).scale(C64::new(0.5, 0.0));
        let skew = u.sub(&u.adjoint()).scale(C64::new(0.0, -0.5));
        for part in [herm, skew] {
            let mut next = Vec::new();
            for q in &blocks {
                if q.cols() == 1 {
                    next.push(q.clone());
                    continue;
                }
                let restricted = q.adjoint().mul(&part).mul(q);
                let eig = restricted.hermitian_eigen();
                let basis = q.mul(&eig.vectors);
                // split into clusters of close eigenvalues
                let mut start = 0;
                for idx in 1..=eig.eigenvalues.len() {
                    let boundary = idx == eig.eigenvalues.len()
                        || eig.eigenvalues[idx] - eig.eigenvalues[idx - 1] > 1e-8;
                    if boundary {
                        next.push(ComplexMatrix::from_fn(d, idx - start, |i, j| {
                            basis.get(i, start + j)
                        }));
                        start = idx;
                    }
                }
            }
            blocks = next;
        }
    }
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(d);
    for q in &blocks {
        for j in 0..q.cols() {
            columns.push(q.col(j));
        }
    }
    if columns.len() != d {
        return Err(Error::DiagonalizationFailure(format!(
            "eigenspace refinement produced {} vectors for dimension {}",
            columns.len(),
            d
        )));
    }

    // Joint eigenvalues lambda_j(g) = v_j* U_g v_j; verify diagonality.
    let mut lambdas = vec![vec![C64::new(0.0, 0.0); n]; d];
    for g in 0..n {
        let u = &reps[g];
        for (j, v) in columns.iter().enumerate() {
            let uv = u.mul_vec(v);
            lambdas[j][g] = inner(&uv, v);
            let residual: f64 = uv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - lambdas[j][g] * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if residual > 1e-8 {
                return Err(Error::DiagonalizationFailure(format!(
                    "column {} is not an eigenvector of U_{} (residual {:.3e})",
                    j, g, residual
                )));
            }
        }
    }

    // Canonical character order: ascending lexicographic order of the
    // integer phase tuple over the generators.
    let generators = group.generators();
    let phase_tuple = |j: usize| -> Vec<usize> {
        generators
            .iter()
            .map(|&g| {
                let ord = {
                    // order of the cyclic factor this generator belongs to
                    let comps = group.decode(g);
                    let i = comps.iter().position(|&c| c == 1).expect("generator");
                    group.cyclic_orders()[i]
                };
                let theta = lambdas[j][g].arg();
                let k = (theta * ord as f64 / (2.0 * std::f64::consts::PI)).round() as i64;
                k.rem_euclid(ord as i64) as usize
            })
            .collect()
    };
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&j| phase_tuple(j));
    let columns: Vec<Vec<C64>> = order.iter().map(|&j| columns[j].clone()).collect();
    let lambdas: Vec<Vec<C64>> = order.iter().map(|&j| lambdas[j].clone()).collect();

    // y = V x_e must have entries of equal modulus; the scale is 1/|y_j|.
    let x_e = frame.vector(group.identity());
    let y: Vec<C64> = columns.iter().map(|v| inner(x_e, v)).collect();
    let radius = y.iter().map(|z| z.norm()).sum::<f64>() / d as f64;
    for z in &y {
        if (z.norm() - radius).abs() > 1e-8 * radius.max(1.0) {
            return Err(Error::DiagonalizationFailure(
                "diagonalized identity vector does not have equal-modulus entries".into(),
            ));
        }
    }
    if radius <= tol.abs {
        return Err(Error::NotTight("frame of zero energy".into()));
    }
    let scale = 1.0 / radius;

    // U = scale * diag(conj y) * V* with V* rows the joint eigenvectors.
    let unitary = ComplexMatrix::from_fn(d, d, |i, j| y[i].conj() * columns[i][j].conj() * scale);

    // The certificate must satisfy scale*U x_g = (gamma_j(g))_j and the
    // pointwise multiplication law.
    let mapped: Vec<Vec<C64>> = (0..n)
        .map(|g| {
            unitary
                .mul_vec(frame.vector(g))
                .iter()
                .map(|z| z * scale)
                .collect()
        })
        .collect();
    for g in 0..n {
        for j in 0..d {
            if (mapped[g][j] - lambdas[j][g]).norm() > 1e-8 {
                return Err(Error::DiagonalizationFailure(format!(
                    "mapped frame does not match characters at (g, j) = ({}, {})",
                    g, j
                )));
            }
        }
        for h in 0..n {
            let gh = group.op(g, h);
            for j in 0..d {
                let dev = (mapped[gh][j] - mapped[g][j] * mapped[h][j]).norm();
                if dev > 1e-8 {
                    return Err(Error::DiagonalizationFailure(format!(
                        "multiplication law fails at ({}, {}) with deviation {:.3e}",
                        g, h, dev
                    )));
                }
            }
        }
    }

    Ok(HarmonicCertificate {
        scale,
        unitary,
        characters: lambdas,
    })
}

/// Harmonic frame from `d` distinct character indices of a finite Abelian
/// group, optionally rotated by a unitary. With no rotation and a cyclic
/// group this is a DFT frame.
pub fn make_harmonic_frame(
    group: &FiniteAbelianGroup,
    character_indices: &[usize],
    rotation: Option<&ComplexMatrix>,
) -> Result<Frame> {
    let d = character_indices.len();
    if d == 0 {
        return Err(Error::InvalidArgument(
            "at least one character index is required".into(),
        ));
    }
    let n = group.order();
    let mut seen = vec![false; n];
    for &k in character_indices {
        if k >= n {
            return Err(Error::InvalidArgument(format!(
                "character index {} out of range for group of order {}",
                k, n
            )));
        }
        if seen[k] {
            return Err(Error::InvalidArgument(format!(
                "duplicate character index {}",
                k
            )));
        }
        seen[k] = true;
    }
    if let Some(u) = rotation {
        if u.rows() != d || u.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "rotation is {}x{}, expected {}x{}",
                u.rows(),
                u.cols(),
                d,
                d
            )));
        }
    }
    let vectors = (0..n)
        .map(|g| {
            let v: Vec<C64> = character_indices
                .iter()
                .map(|&k| group.character(k, g))
                .collect();
            match rotation {
                Some(u) => u.mul_vec(&v),
                None => v,
            }
        })
        .collect();
    Frame::new(d, vectors)
}

fn cross(u: &[C64], v: &[C64]) -> Vec<C64> {
    vec![
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// The 7-element tight frame `{0, i, j, k, -i, -j, -k}` for `C^3` (frame
/// bound 2) together with the non-Abelian index operation induced by the
/// cross product.
pub fn cross_product_frame() -> (Frame, OpTable) {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let vectors: Vec<Vec<C64>> = vec![
        vec![z, z, z],
        vec![one, z, z],
        vec![z, one, z],
        vec![z, z, one],
        vec![-one, z, z],
        vec![z, -one, z],
        vec![z, z, -one],
    ];
    let locate = |w: &[C64]| -> usize {
        vectors
            .iter()
            .position(|v| v.iter().zip(w).all(|(a, b)| a == b))
            .expect("cross product of signed basis vectors stays in the set")
    };
    let mut table = Vec::with_capacity(49);
    for i in 0..7 {
        for j in 0..7 {
            table.push(locate(&cross(&vectors[i], &vectors[j])));
        }
    }
    let frame = Frame::new(3, vectors).expect("cross-product frame is valid");
    (frame, OpTable { n: 7, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::rng::Rng;
    use crate::vvdft::{make_dft_frame, SelectionMap};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> Tol {
        Tol::default()
    }

    /// The spanning, non-tight 3-vector frame `{e1, e2, (a, b)}` with
    /// `a = 1/2`, `b = 1/4`; it has no frame multiplications.
    pub(crate) fn no_mult_frame() -> Frame {
        Frame::new(
            2,
            vec![
                vec![c(1.0, 0.0), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c(1.0, 0.0)],
                vec![c(0.5, 0.0), c(0.25, 0.0)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn basis_accepts_every_table() {
        let onb = Frame::standard_basis(2);
        let mut rng = Rng::new(21);
        for _ in 0..20 {
            let entries: Vec<usize> = (0..4)
                .map(|_| (rng.uniform().abs() * 2.0) as usize % 2)
                .collect();
            let t = OpTable::new(2, entries).unwrap();
            assert!(is_frame_multiplication(&onb, &t, &tol()).unwrap().accepted);
        }
    }

    #[test]
    fn dft_frame_accepts_cyclic_addition() {
        let sel = SelectionMap::new(4, vec![1, 3]).unwrap();
        let frame = make_dft_frame(&sel);
        let t = OpTable::cyclic_addition(4);
        assert!(
            is_frame_multiplication(&frame, &t, &tol())
                .unwrap()
                .accepted
        );
    }

    #[test]
    fn no_mult_frame_rejects_sample_tables() {
        let frame = no_mult_frame();
        for t in [
            OpTable::cyclic_addition(3),
            OpTable::new(3, vec![0; 9]).unwrap(),
            OpTable::new(3, vec![0, 1, 2, 1, 2, 0, 2, 0, 1]).unwrap(),
        ] {
            let check = is_frame_multiplication(&frame, &t, &tol()).unwrap();
            assert!(!check.accepted);
            assert!(check.violation.is_some());
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let onb = Frame::standard_basis(2);
        let t = OpTable::cyclic_addition(3);
        assert!(is_frame_multiplication(&onb, &t, &tol()).is_err());
    }

    #[test]
    fn extend_product_on_frame_vectors_follows_table() {
        let sel = SelectionMap::new(4, vec![1, 3]).unwrap();
        let frame = make_dft_frame(&sel);
        let t = OpTable::cyclic_addition(4);
        let prod = FrameProduct::new(&frame, &t, &tol()).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                let got = prod.multiply(frame.vector(j), frame.vector(k)).unwrap();
                let expect = frame.vector(t.get(j, k));
                for p in 0..2 {
                    assert!((got[p] - expect[p]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn extend_product_matches_cross_product() {
        let (frame, table) = cross_product_frame();
        let prod = FrameProduct::new(&frame, &table, &tol()).unwrap();
        let mut rng = Rng::new(33);
        for _ in 0..50 {
            let u = rng.complex_vec(3);
            let v = rng.complex_vec(3);
            let got = prod.multiply(&u, &v).unwrap();
            let expect = cross(&u, &v);
            for p in 0..3 {
                assert!((got[p] - expect[p]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn extend_product_on_unit_norm_dft_frame_is_scaled_pointwise() {
        // with FUNTF normalization (vectors scaled by 1/sqrt(d)) the induced
        // product is pointwise multiplication times sqrt(d)
        let sel = SelectionMap::new(4, vec![1, 3]).unwrap();
        let base = make_dft_frame(&sel);
        let scale = 1.0 / (2.0f64).sqrt();
        let funtf = Frame::new(
            2,
            base.iter()
                .map(|v| v.iter().map(|z| z * scale).collect())
                .collect(),
        )
        .unwrap();
        assert!(funtf.classify(&tol()).funtf);
        let t = OpTable::cyclic_addition(4);
        let prod = FrameProduct::new(&funtf, &t, &tol()).unwrap();
        // frame vectors still multiply along the table
        for j in 0..4 {
            for k in 0..4 {
                let got = prod.multiply(funtf.vector(j), funtf.vector(k)).unwrap();
                for p in 0..2 {
                    assert!((got[p] - funtf.vector(t.get(j, k))[p]).norm() < 1e-12);
                }
            }
        }
        // and on arbitrary vectors the product is sqrt(d) * pointwise
        let mut rng = Rng::new(36);
        let x = rng.complex_vec(2);
        let y = rng.complex_vec(2);
        let got = prod.multiply(&x, &y).unwrap();
        let root_d = (2.0f64).sqrt();
        for p in 0..2 {
            assert!((got[p] - root_d * x[p] * y[p]).norm() < 1e-12);
        }
    }

    #[test]
    fn extend_product_is_bilinear() {
        let sel = SelectionMap::new(5, vec![1, 2]).unwrap();
        let frame = make_dft_frame(&sel);
        let t = OpTable::cyclic_addition(5);
        let prod = FrameProduct::new(&frame, &t, &tol()).unwrap();
        let mut rng = Rng::new(34);
        let x = rng.complex_vec(2);
        let xp = rng.complex_vec(2);
        let y = rng.complex_vec(2);
        let alpha = rng.complex();
        let beta = rng.complex();
        let combo: Vec<C64> = x
            .iter()
            .zip(&xp)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        let lhs = prod.multiply(&combo, &y).unwrap();
        let rx = prod.multiply(&x, &y).unwrap();
        let rxp = prod.multiply(&xp, &y).unwrap();
        for p in 0..2 {
            let rhs = alpha * rx[p] + beta * rxp[p];
            assert!((lhs[p] - rhs).norm() < 1e-11);
        }
    }

    #[test]
    fn extend_product_requires_accepted_table() {
        let frame = no_mult_frame();
        let t = OpTable::cyclic_addition(3);
        let x = vec![c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            extend_product(&frame, &t, &x, &x, &tol()),
            Err(Error::NoFrameMultiplication(_))
        ));
    }

    #[test]
    fn extend_product_requires_tight_frame() {
        // a stretched basis accepts every table (trivial kernel) but is not
        // tight, so the canonical coefficient scale is undefined
        let frame = Frame::new(
            2,
            vec![
                vec![c(1.0, 0.0), c(0.0, 0.0)],
                vec![c(0.0, 0.0), c(2.0, 0.0)],
            ],
        )
        .unwrap();
        let t = OpTable::cyclic_addition(2);
        assert!(
            is_frame_multiplication(&frame, &t, &tol())
                .unwrap()
                .accepted
        );
        let x = vec![c(1.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(
            extend_product(&frame, &t, &x, &x, &tol()),
            Err(Error::NotTight(_))
        ));
    }

    #[test]
    fn multiply_by_frame_vector_agrees_with_full_product() {
        let (frame, table) = cross_product_frame();
        let prod = FrameProduct::new(&frame, &table, &tol()).unwrap();
        let mut rng = Rng::new(35);
        let x = rng.complex_vec(3);
        for j in 0..7 {
            let fast = prod.multiply_by_frame_vector(&x, j).unwrap();
            let slow = prod.multiply(&x, frame.vector(j)).unwrap();
            for p in 0..3 {
                assert!((fast[p] - slow[p]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn basis_enumeration_returns_all_tables() {
        let onb = Frame::standard_basis(2);
        let all = enumerate_multiplications(&onb, None, &tol()).unwrap();
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn dft_frame_enumeration_contains_group_table() {
        let sel = SelectionMap::new(4, vec![1, 3]).unwrap();
        let frame = make_dft_frame(&sel);
        let found = enumerate_multiplications(&frame, None, &tol()).unwrap();
        assert!(found.contains(&OpTable::cyclic_addition(4)));
    }

    #[test]
    fn enumeration_cap_requires_candidates() {
        let sel = SelectionMap::new(5, vec![1, 2]).unwrap();
        let frame = make_dft_frame(&sel);
        assert!(matches!(
            enumerate_multiplications(&frame, None, &tol()),
            Err(Error::EnumerationCapExceeded { .. })
        ));
        let candidates = [OpTable::cyclic_addition(5)];
        let found = enumerate_multiplications(&frame, Some(&candidates), &tol()).unwrap();
        assert_eq!(found.len(), 1);
    }

    #[test]
    fn group_encoding_round_trip() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        for idx in 0..6 {
            assert_eq!(g.encode(&g.decode(idx)), idx);
        }
        // (1, 2) + (1, 2) = (0, 1)
        let a = g.encode(&[1, 2]);
        assert_eq!(g.op(a, a), g.encode(&[0, 1]));
        assert_eq!(g.op(a, g.inverse(a)), 0);
    }

    #[test]
    fn characters_are_multiplicative() {
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        for k in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    let lhs = g.character(k, g.op(a, b));
                    let rhs = g.character(k, a) * g.character(k, b);
                    assert!((lhs - rhs).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gmatrix_test_on_z4_gramian() {
        let frame = crate::frame::tests::z4_frame();
        let group = FiniteAbelianGroup::cyclic(4).unwrap();
        let witness = gmatrix_test(&frame.gramian(), &group, &tol())
            .unwrap()
            .expect("Gramian is a G-matrix");
        let expect = [c(4.0, 0.0), c(2.0, -2.0), c(0.0, 0.0), c(2.0, 2.0)];
        for (got, want) in witness.nu.iter().zip(&expect) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn gmatrix_test_on_identity_matrix() {
        let group = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let witness = gmatrix_test(&ComplexMatrix::identity(4), &group, &tol())
            .unwrap()
            .expect("identity is a G-matrix");
        assert!((witness.nu[0] - c(1.0, 0.0)).norm() < 1e-15);
        for g in 1..4 {
            assert!(witness.nu[g].norm() < 1e-15);
        }
    }

    #[test]
    fn gmatrix_for_cyclic_group_is_circulant() {
        let group = FiniteAbelianGroup::cyclic(4).unwrap();
        let nu = [c(1.0, 0.0), c(2.0, 1.0), c(3.0, 0.0), c(2.0, -1.0)];
        // a[g][h] = nu(g - h mod 4): each row is the previous one rotated right
        let m = ComplexMatrix::from_fn(4, 4, |g, h| nu[(g + 4 - h) % 4]);
        for g in 0..4 {
            for h in 0..4 {
                assert_eq!(m.get(g, h), m.get((g + 1) % 4, (h + 1) % 4));
            }
        }
        let witness = gmatrix_test(&m, &group, &tol())
            .unwrap()
            .expect("circulant");
        for (got, want) in witness.nu.iter().zip(&nu) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn gmatrix_rejects_generic_matrix() {
        let group = FiniteAbelianGroup::cyclic(3).unwrap();
        let mut rng = Rng::new(40);
        let m = ComplexMatrix::from_fn(3, 3, |_, _| rng.complex());
        assert!(gmatrix_test(&m, &group, &tol()).unwrap().is_none());
    }

    #[test]
    fn left_regular_representation_is_permutations() {
        let group = FiniteAbelianGroup::cyclic(3).unwrap();
        let onb = Frame::standard_basis(3);
        let reps = group_frame_rep(&onb, &group, &tol()).unwrap();
        for (g, u) in reps.iter().enumerate() {
            for h in 0..3 {
                for p in 0..3 {
                    let expect = if p == (g + h) % 3 { 1.0 } else { 0.0 };
                    assert!((u.get(p, h) - c(expect, 0.0)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn z4_representation_cycles_the_frame() {
        let frame = crate::frame::tests::z4_frame();
        let group = FiniteAbelianGroup::cyclic(4).unwrap();
        let reps = group_frame_rep(&frame, &group, &tol()).unwrap();
        assert_eq!(reps.len(), 4);
        let u1 = &reps[1];
        for h in 0..4 {
            let got = u1.mul_vec(frame.vector(h));
            let expect = frame.vector((1 + h) % 4);
            for p in 0..2 {
                assert!((got[p] - expect[p]).norm() < 1e-10);
            }
        }
        // homomorphism: U_{g+h} = U_g U_h
        for g in 0..4 {
            for h in 0..4 {
                let prod = reps[g].mul(&reps[h]);
                let dev = prod.sub(&reps[(g + h) % 4]).max_abs();
                assert!(dev < 1e-10);
            }
        }
    }

    #[test]
    fn klein_group_representation_commutes() {
        let group = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let frame = make_harmonic_frame(&group, &[1, 2], None).unwrap();
        let reps = group_frame_rep(&frame, &group, &tol()).unwrap();
        for a in &reps {
            for b in &reps {
                let comm = a.mul(b).sub(&b.mul(a));
                assert!(comm.max_abs() < 1e-10);
            }
        }
    }

    #[test]
    fn harmonic_equivalence_of_z4_frame() {
        let frame = crate::frame::tests::z4_frame();
        let group = FiniteAbelianGroup::cyclic(4).unwrap();
        let cert = harmonic_equivalence(&frame, &group, &tol()).unwrap();
        assert!((cert.scale - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        // mapped frame is the harmonic frame {(1,1),(1,i),(1,-1),(1,-i)}
        let expect = [
            [c(1.0, 0.0), c(1.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 1.0)],
            [c(1.0, 0.0), c(-1.0, 0.0)],
            [c(1.0, 0.0), c(0.0, -1.0)],
        ];
        for g in 0..4 {
            let mapped: Vec<C64> = cert
                .unitary
                .mul_vec(frame.vector(g))
                .iter()
                .map(|z| z * cert.scale)
                .collect();
            for p in 0..2 {
                assert!(
                    (mapped[p] - expect[g][p]).norm() < 1e-9,
                    "mapped[{}][{}] = {}",
                    g,
                    p,
                    mapped[p]
                );
            }
        }
    }

    #[test]
    fn harmonic_equivalence_of_already_harmonic_frame() {
        let group = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let frame = make_harmonic_frame(&group, &[0, 3], None).unwrap();
        let cert = harmonic_equivalence(&frame, &group, &tol()).unwrap();
        let table = group.op_table();
        for g in 0..4 {
            for h in 0..4 {
                let gh = table.get(g, h);
                for j in 0..2 {
                    let dev = (cert.characters[j][gh]
                        - cert.characters[j][g] * cert.characters[j][h])
                        .norm();
                    assert!(dev < 1e-11);
                }
            }
        }
    }

    #[test]
    fn harmonic_equivalence_of_rotated_dft_frame() {
        let sel = SelectionMap::new(5, vec![1, 3]).unwrap();
        let base = make_dft_frame(&sel);
        // rotate by an arbitrary unitary
        let m = ComplexMatrix::from_entries(
            2,
            2,
            vec![c(1.0, 0.4), c(-0.3, 0.2), c(0.5, -0.1), c(0.2, 0.9)],
        )
        .unwrap();
        let v = m.polar_unitary().unwrap();
        let rotated = Frame::new(2, base.iter().map(|x| v.mul_vec(x)).collect()).unwrap();
        let group = FiniteAbelianGroup::cyclic(5).unwrap();
        let cert = harmonic_equivalence(&rotated, &group, &tol()).unwrap();
        // pointwise multiplication law
        for g in 0..5 {
            for h in 0..5 {
                let mapped = |g: usize| -> Vec<C64> {
                    cert.unitary
                        .mul_vec(rotated.vector(g))
                        .iter()
                        .map(|z| z * cert.scale)
                        .collect()
                };
                let lhs = mapped((g + h) % 5);
                let (a, b) = (mapped(g), mapped(h));
                for p in 0..2 {
                    assert!((lhs[p] - a[p] * b[p]).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn harmonic_equivalence_rejects_non_group_frame() {
        let frame = no_mult_frame();
        let group = FiniteAbelianGroup::cyclic(3).unwrap();
        assert!(harmonic_equivalence(&frame, &group, &tol()).is_err());
    }

    #[test]
    fn make_harmonic_frame_on_z4() {
        let group = FiniteAbelianGroup::cyclic(4).unwrap();
        let frame = make_harmonic_frame(&group, &[0, 1], None).unwrap();
        let expect = [
            [c(1.0, 0.0), c(1.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 1.0)],
            [c(1.0, 0.0), c(-1.0, 0.0)],
            [c(1.0, 0.0), c(0.0, -1.0)],
        ];
        for g in 0..4 {
            for p in 0..2 {
                assert!((frame.vector(g)[p] - expect[g][p]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn full_character_set_gives_orthogonal_basis() {
        let group = FiniteAbelianGroup::cyclic(3).unwrap();
        let frame = make_harmonic_frame(&group, &[0, 1, 2], None).unwrap();
        let g = frame.gramian();
        for j in 0..3 {
            for k in 0..3 {
                if j != k {
                    assert!(g.get(j, k).norm() < 1e-12);
                } else {
                    assert!((g.get(j, j) - c(3.0, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn klein_harmonic_frame_is_real_and_tight() {
        let group = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let frame = make_harmonic_frame(&group, &[1, 2], None).unwrap();
        for v in frame.iter() {
            for z in v {
                assert!(z.im.abs() < 1e-15 && (z.re.abs() - 1.0).abs() < 1e-15);
            }
        }
        let cls = frame.classify(&tol());
        assert!(cls.tight);
        assert!((cls.lower - 4.0).abs() < 1e-9);
    }

    #[test]
    fn make_harmonic_frame_rejects_duplicates() {
        let group = FiniteAbelianGroup::cyclic(4).unwrap();
        assert!(make_harmonic_frame(&group, &[1, 1], None).is_err());
    }

    #[test]
    fn cross_product_table_matches_published_entries() {
        let (_, t) = cross_product_frame();
        let listed = [
            (1, 2, 3),
            (1, 3, 5),
            (1, 4, 0),
            (1, 5, 6),
            (1, 6, 2),
            (2, 1, 6),
            (2, 3, 1),
            (2, 4, 3),
            (2, 5, 0),
            (2, 6, 4),
            (3, 1, 2),
            (3, 2, 4),
            (3, 4, 5),
            (3, 5, 1),
            (3, 6, 0),
        ];
        for (i, j, k) in listed {
            assert_eq!(t.get(i, j), k, "{} . {}", i, j);
        }
        for n in 0..7 {
            assert_eq!(t.get(n, n), 0);
            assert_eq!(t.get(n, 0), 0);
            assert_eq!(t.get(0, n), 0);
        }
        // non-Abelian
        assert_eq!(t.get(1, 2), 3);
        assert_eq!(t.get(2, 1), 6);
    }

    #[test]
    fn cross_product_frame_accepts_its_table() {
        let (frame, t) = cross_product_frame();
        assert!(
            is_frame_multiplication(&frame, &t, &tol())
                .unwrap()
                .accepted
        );
        // i * j = k through the extension
        let prod = FrameProduct::new(&frame, &t, &tol()).unwrap();
        let got = prod.multiply(frame.vector(1), frame.vector(2)).unwrap();
        for p in 0..3 {
            assert!((got[p] - frame.vector(3)[p]).norm() < 1e-12);
        }
    }
}
