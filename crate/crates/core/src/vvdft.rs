//! DFT frames and the vector-valued discrete Fourier transform.
//!
//! A [`SelectionMap`] `s : Z/dZ -> Z/NZ` picks `d` rows of the character
//! table of `Z/NZ`; the resulting DFT frame drives a per-column transform of
//! `N x d` signals. The transform is invertible exactly when every `s(q)` is
//! coprime to `N`. The module also carries the translation/modulation
//! operators, the convolution algebra with unit `e`, and the enumeration of
//! the algebra's multiplicative functionals.

use crate::error::Error;
use crate::frame::Frame;
use crate::matrix::ComplexMatrix;
use crate::{Result, C64};

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// The `N` complex roots `e^{2 pi i k / N}`, `k = 0..N-1`.
///
/// All twiddle factors in this module are looked up from this table after
/// reducing exponents mod `N`, so equal exponents give bitwise-equal values.
fn unit_roots(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect()
}

fn root_at(roots: &[C64], exponent: i64) -> C64 {
    let n = roots.len() as i64;
    roots[exponent.rem_euclid(n) as usize]
}

/// Injective map `s : Z/dZ -> Z/NZ` defining a DFT frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionMap {
    modulus: usize,
    s: Vec<usize>,
}

impl SelectionMap {
    pub fn new(modulus: usize, s: Vec<usize>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        if s.is_empty() || s.len() > modulus {
            return Err(Error::InvalidArgument(format!(
                "selection needs 1..={} components, got {}",
                modulus,
                s.len()
            )));
        }
        if s.iter().any(|&v| v >= modulus) {
            return Err(Error::InvalidArgument(format!(
                "selection values must lie in 0..{}",
                modulus
            )));
        }
        let mut seen = vec![false; modulus];
        for &v in &s {
            if seen[v] {
                return Err(Error::NonInjectiveSelection);
            }
            seen[v] = true;
        }
        Ok(SelectionMap { modulus, s })
    }

    /// Time length `N`.
    pub fn modulus(&self) -> usize {
        self.modulus
    }

    /// Vector dimension `d`.
    pub fn dim(&self) -> usize {
        self.s.len()
    }

    pub fn s(&self, q: usize) -> usize {
        self.s[q]
    }

    pub fn values(&self) -> &[usize] {
        &self.s
    }

    /// First component whose selection value shares a factor with `N`, if any.
    pub fn non_invertible_component(&self) -> Option<usize> {
        (0..self.dim()).find(|&q| gcd(self.s[q], self.modulus) != 1)
    }

    fn require_invertible(&self) -> Result<()> {
        match self.non_invertible_component() {
            None => Ok(()),
            Some(q) => Err(Error::NotInvertible {
                component: q,
                value: self.s[q],
                modulus: self.modulus,
            }),
        }
    }
}

/// A function `u : Z/NZ -> C^d` stored as an `N x d` row-major array.
///
/// The time index is cyclic: accessors taking `i64` reduce mod `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct VVSignal {
    n: usize,
    d: usize,
    values: Vec<C64>,
}

impl VVSignal {
    pub fn zeros(n: usize, d: usize) -> Self {
        assert!(n > 0 && d > 0, "signals need N >= 1 and d >= 1");
        VVSignal {
            n,
            d,
            values: vec![C64::new(0.0, 0.0); n * d],
        }
    }

    pub fn from_rows(rows: Vec<Vec<C64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument("signal must have N >= 1".into()));
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::InvalidArgument("signal must have d >= 1".into()));
        }
        let mut values = Vec::with_capacity(rows.len() * d);
        for (m, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    m,
                    row.len(),
                    d
                )));
            }
            if row.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "row {} has non-finite entries",
                    m
                )));
            }
            values.extend_from_slice(row);
        }
        Ok(VVSignal {
            n: rows.len(),
            d,
            values,
        })
    }

    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut values = Vec::with_capacity(n * d);
        for m in 0..n {
            for p in 0..d {
                values.push(f(m, p));
            }
        }
        VVSignal { n, d, values }
    }

    /// The convolution unit `e`: the all-ones vector at `m = 0`, zero elsewhere.
    pub fn algebra_unit(n: usize, d: usize) -> Self {
        Self::from_fn(n, d, |m, _| C64::new(if m == 0 { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, m: usize, p: usize) -> C64 {
        self.values[m * self.d + p]
    }

    pub fn set(&mut self, m: usize, p: usize, v: C64) {
        self.values[m * self.d + p] = v;
    }

    /// Entry with cyclic time index.
    pub fn at(&self, m: i64, p: usize) -> C64 {
        let m = m.rem_euclid(self.n as i64) as usize;
        self.get(m, p)
    }

    pub fn row(&self, m: usize) -> &[C64] {
        &self.values[m * self.d..(m + 1) * self.d]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Frobenius norm over the `N x d` array.
    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(VVSignal {
            n: self.n,
            d: self.d,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Coordinatewise product of equally shaped signals.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(VVSignal {
            n: self.n,
            d: self.d,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn conj(&self) -> Self {
        VVSignal {
            n: self.n,
            d: self.d,
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        VVSignal {
            n: self.n,
            d: self.d,
            values: self.values.iter().map(|z| z * c).collect(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "signals of shape {}x{} and {}x{}",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    fn check_selection(&self, sel: &SelectionMap) -> Result<()> {
        if self.n != sel.modulus() || self.d != sel.dim() {
            return Err(Error::DimensionMismatch(format!(
                "signal of shape {}x{} against selection with N = {}, d = {}",
                self.n,
                self.d,
                sel.modulus(),
                sel.dim()
            )));
        }
        Ok(())
    }
}

/// DFT frame `x_m(q) = e^{2 pi i m s(q) / N}`, an equal-norm tight frame
/// with frame bound `N`.
///
/// ```
/// use vvframe_core::vvdft::{make_dft_frame, SelectionMap};
/// use vvframe_core::Tol;
///
/// let sel = SelectionMap::new(4, vec![1, 3]).unwrap();
/// let frame = make_dft_frame(&sel);
/// let class = frame.classify(&Tol::default());
/// assert!(class.tight && class.equal_norm);
/// assert!((class.lower - 4.0).abs() < 1e-9);
/// ```
pub fn make_dft_frame(sel: &SelectionMap) -> Frame {
    let n = sel.modulus();
    let roots = unit_roots(n);
    let vectors = (0..n)
        .map(|m| (0..sel.dim()).map(|q| roots[(m * sel.s(q)) % n]).collect())
        .collect();
    Frame::new(sel.dim(), vectors).expect("DFT frame construction is total")
}

/// The `N x N` matrix with entries `e^{-2 pi i m n l / N}`; invertible
/// exactly when `gcd(l, N) = 1`.
pub fn d_matrix(modulus: usize, l: usize) -> ComplexMatrix {
    let roots = unit_roots(modulus);
    ComplexMatrix::from_fn(modulus, modulus, |m, n| {
        root_at(&roots, -((m * n * l) as i64))
    })
}

/// Forward vector-valued DFT: `u_hat(n) = sum_m u(m) x_{-mn}` (coordinatewise
/// products). Column `q` of the output is `D_{s(q)}` applied to column `q`
/// of the input.
pub fn vv_dft(u: &VVSignal, sel: &SelectionMap) -> Result<VVSignal> {
    u.check_selection(sel)?;
    let n = sel.modulus();
    let roots = unit_roots(n);
    let mut out = VVSignal::zeros(n, sel.dim());
    for q in 0..sel.dim() {
        let s = sel.s(q) as i64;
        for freq in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for m in 0..n {
                acc += u.get(m, q) * root_at(&roots, -((m * freq) as i64) * s);
            }
            out.set(freq, q, acc);
        }
    }
    Ok(out)
}

/// Inverse vector-valued DFT `u(m) = (1/N) sum_p u_hat(p) x_{mp}`.
///
/// Errors with the offending component when some `gcd(s(q), N) != 1`.
pub fn vv_idft(u_hat: &VVSignal, sel: &SelectionMap) -> Result<VVSignal> {
    u_hat.check_selection(sel)?;
    sel.require_invertible()?;
    let n = sel.modulus();
    let roots = unit_roots(n);
    let scale = 1.0 / n as f64;
    let mut out = VVSignal::zeros(n, sel.dim());
    for q in 0..sel.dim() {
        let s = sel.s(q) as i64;
        for m in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..n {
                acc += u_hat.get(p, q) * root_at(&roots, (m * p) as i64 * s);
            }
            out.set(m, q, acc * scale);
        }
    }
    Ok(out)
}

/// Translation `tau_j u(m) = u(m - j)`.
pub fn translate(u: &VVSignal, j: i64) -> VVSignal {
    VVSignal::from_fn(u.len(), u.dim(), |m, p| u.at(m as i64 - j, p))
}

/// The modulation function `e^j(k) = x_{jk}` as an `N x d` signal.
pub fn modulation_signal(sel: &SelectionMap, j: i64) -> VVSignal {
    let roots = unit_roots(sel.modulus());
    VVSignal::from_fn(sel.modulus(), sel.dim(), |k, q| {
        root_at(&roots, j * k as i64 * sel.s(q) as i64)
    })
}

/// Modulation `(e^j u)(k) = x_{jk} u(k)`.
pub fn modulate(u: &VVSignal, j: i64, sel: &SelectionMap) -> Result<VVSignal> {
    u.check_selection(sel)?;
    modulation_signal(sel, j).pointwise_mul(u)
}

/// Vector-valued cyclic convolution `(u * v)(m) = sum_k u(k) v(m - k)` with
/// coordinatewise vector products. Commutative, associative, unit
/// [`VVSignal::algebra_unit`].
pub fn vv_convolve(u: &VVSignal, v: &VVSignal) -> Result<VVSignal> {
    u.check_shape(v)?;
    let n = u.len();
    let mut out = VVSignal::zeros(n, u.dim());
    for m in 0..n {
        for k in 0..n {
            let vm = (m + n - k) % n; // m - k mod n
            for p in 0..u.dim() {
                let val = out.get(m, p) + u.get(k, p) * v.get(vm, p);
                out.set(m, p, val);
            }
        }
    }
    Ok(out)
}

/// The full transform as an `Nd x Nd` operator on signals flattened as
/// `(m, p) -> m*d + p`. Block-diagonal per column: block `q` is `D_{s(q)}`.
pub fn dft_operator_matrix(sel: &SelectionMap) -> ComplexMatrix {
    let n = sel.modulus();
    let d = sel.dim();
    let roots = unit_roots(n);
    ComplexMatrix::from_fn(n * d, n * d, |row, col| {
        let (freq, q) = (row / d, row % d);
        let (m, p) = (col / d, col % d);
        if p != q {
            C64::new(0.0, 0.0)
        } else {
            root_at(&roots, -((m * freq * sel.s(q)) as i64))
        }
    })
}

/// A multiplicative functional of the convolution algebra, supported on one
/// column. `entry(m, q) = omega^{-p m s(q)}` with `omega = e^{-2 pi i / N}`;
/// everything off column `q` is zero.
#[derive(Debug, Clone)]
pub struct GelfandFunctional {
    p: usize,
    q: usize,
    n: usize,
    d: usize,
    column: Vec<C64>,
}

impl GelfandFunctional {
    pub fn frequency(&self) -> usize {
        self.p
    }

    pub fn component(&self) -> usize {
        self.q
    }

    /// Matrix entry `(m, n)` of the functional viewed as an `N x d` array.
    pub fn entry(&self, m: usize, n: usize) -> C64 {
        if n == self.q {
            self.column[m]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// Applies the functional: `sum_m x(m)(q) conj(entry(m, q))`, which equals
    /// the vector-valued DFT of `x` evaluated at `(p, q)`.
    pub fn apply(&self, x: &VVSignal) -> Result<C64> {
        if x.len() != self.n || x.dim() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "signal of shape {}x{} against functional on {}x{}",
                x.len(),
                x.dim(),
                self.n,
                self.d
            )));
        }
        Ok((0..self.n)
            .map(|m| x.get(m, self.q) * self.column[m].conj())
            .sum())
    }
}

/// All `N * d` multiplicative functionals, ordered by `(p, q)`.
///
/// The reordering that indexes them by frequency requires the transform to
/// be invertible, hence the same precondition as [`vv_idft`].
pub fn gelfand_spectrum(sel: &SelectionMap) -> Result<Vec<GelfandFunctional>> {
    sel.require_invertible()?;
    let n = sel.modulus();
    let d = sel.dim();
    let roots = unit_roots(n);
    let mut out = Vec::with_capacity(n * d);
    for p in 0..n {
        for q in 0..d {
            let column = (0..n)
                .map(|m| root_at(&roots, (p * m * sel.s(q)) as i64))
                .collect();
            out.push(GelfandFunctional { p, q, n, d, column });
        }
    }
    Ok(out)
}
