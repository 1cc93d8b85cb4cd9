/// Tolerance policy for flag decisions and structural checks.
///
/// `rel` drives comparisons that scale with the data (tightness, Parseval,
/// unitarity, acceptance of a multiplication table); `abs` is the floor for
/// checks against exact zero. Rank decisions never use these: they follow
/// the machine-epsilon rule in [`crate::matrix::rank_threshold`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

impl Tol {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tol { rel, abs }
    }

    /// Tolerance with a custom relative part and the default absolute floor.
    pub fn with_rel(rel: f64) -> Self {
        Tol {
            rel,
            ..Tol::default()
        }
    }

    /// Admissible deviation for a quantity of magnitude `scale`.
    pub fn margin(&self, scale: f64) -> f64 {
        self.rel * scale.abs() + self.abs
    }

    /// `true` when `a` and `b` agree within the policy, relative to their size.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.margin(a.abs().max(b.abs()))
    }
}
