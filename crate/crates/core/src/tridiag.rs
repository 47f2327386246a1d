//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and the squares of
/// its off-diagonal.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off_sq: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: &[f64]) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::Parameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(off).any(|v| !v.is_finite()) {
            return Err(Error::Parameter("non-finite matrix entry".into()));
        }
        Ok(Self {
            off_sq: off.iter().map(|e| e * e).collect(),
            diag,
        })
    }

    /// Constant off-diagonal, as produced by a uniform finite-difference stencil.
    pub fn with_constant_off(diag: Vec<f64>, off: f64) -> Result<Self> {
        let m = diag.len().saturating_sub(1);
        Self::new(diag, &vec![off; m])
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let prev = if q == 0.0 {
                f64::EPSILON * (self.diag[i - 1].abs() + 1.0)
            } else {
                q
            };
            q = self.diag[i] - x - self.off_sq[i - 1] / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off_sq[i - 1].sqrt();
            }
            if i + 1 < n {
                r += self.off_sq[i].sqrt();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based), bisected to full precision.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        let (lo, hi) = self.bounds();
        self.bisect(index, lo, hi)
    }

    fn bisect(&self, index: usize, mut lo: f64, mut hi: f64) -> f64 {
        // Invariant: count_below(lo) <= index < count_below(hi).
        let pad = 1e-12 * (lo.abs().max(hi.abs()) + 1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..2100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `k` smallest eigenvalues in increasing order.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        let k = k.min(self.dim());
        let (lo, hi) = self.bounds();
        let mut out: Vec<f64> = Vec::with_capacity(k);
        for j in 0..k {
            // Eigenvalues are sorted, so the previous one is a valid lower bracket.
            let start = out.last().copied().unwrap_or(lo).max(lo);
            out.push(self.bisect(j, start, hi));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 50;
        let m = SymTridiag::with_constant_off(vec![2.0; n], -1.0).unwrap();
        let ev = m.lowest(n);
        for (j, e) in ev.iter().enumerate() {
            let theta = (j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64;
            let exact = 2.0 - 2.0 * theta.cos();
            assert!((e - exact).abs() < 1e-13, "{j}: {e} vs {exact}");
        }
        assert!(ev.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn counts_and_bounds() {
        let m = SymTridiag::new(vec![1.0, 5.0, 9.0], &[0.0, 0.0]).unwrap();
        assert_eq!(m.count_below(0.0), 0);
        assert_eq!(m.count_below(6.0), 2);
        assert_eq!(m.lowest(5), vec![1.0, 5.0, 9.0]);
        let (lo, hi) = m.bounds();
        assert!(lo <= 1.0 && hi >= 9.0);
    }

    #[test]
    fn shape_checked() {
        assert!(SymTridiag::new(vec![1.0, 2.0], &[]).is_err());
        assert!(SymTridiag::new(vec![f64::NAN], &[]).is_err());
    }
}
