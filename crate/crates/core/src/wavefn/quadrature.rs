//! Two unrelated quadrature rules: adaptive Gauss-Kronrod (7/15) on a finite
//! interval, and Gauss-Jacobi on [0, 1] built by Golub-Welsch.

use crate::error::{Error, Result};
use crate::tridiag::SymTridiag;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for Adaptive {
    fn default() -> Self {
        Self {
            rel_tol: 1e-13,
            abs_tol: 0.0,
            max_intervals: 20_000,
        }
    }
}

impl Adaptive {
    /// Integrates `f` over `[a, b]`, bisecting the worst interval until the
    /// summed error estimate meets the tolerance.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Quadrature(format!("bad interval [{a}, {b}]")));
        }
        // seed with a few panels so narrow peaks are not missed
        let seeds = 16;
        let mut parts: Vec<(f64, f64, f64, f64)> = (0..seeds)
            .map(|i| {
                let lo = a + (b - a) * i as f64 / seeds as f64;
                let hi = a + (b - a) * (i + 1) as f64 / seeds as f64;
                let (v, e) = gk15(&f, lo, hi);
                (lo, hi, v, e)
            })
            .collect();
        loop {
            let total: f64 = parts.iter().map(|p| p.2).sum();
            let err: f64 = parts.iter().map(|p| p.3).sum();
            if !total.is_finite() {
                return Err(Error::Quadrature("non-finite integrand".into()));
            }
            if err <= self.abs_tol.max(self.rel_tol * total.abs()) {
                return Ok(total);
            }
            if parts.len() >= self.max_intervals {
                return Err(Error::Quadrature(format!(
                    "no convergence after {} intervals (estimate {total}, error {err})",
                    parts.len()
                )));
            }
            let worst = parts
                .iter()
                .enumerate()
                .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let (lo, hi, _, _) = parts.swap_remove(worst);
            let mid = 0.5 * (lo + hi);
            let (v1, e1) = gk15(&f, lo, mid);
            let (v2, e2) = gk15(&f, mid, hi);
            parts.push((lo, mid, v1, e1));
            parts.push((mid, hi, v2, e2));
        }
    }
}

/// Gauss rule for `∫₀¹ y^b (1-y)^a g(y) dy`.
#[derive(Debug, Clone)]
pub struct GaussJacobi {
    pub nodes: Vec<f64>,
    /// Weights divided by the total mass `B(b+1, a+1)`.
    pub weights: Vec<f64>,
    /// `ln B(b+1, a+1)`.
    pub log_mass: f64,
}

impl GaussJacobi {
    pub fn new(order: usize, a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0 && b > -1.0) {
            return Err(Error::Quadrature(format!(
                "Gauss-Jacobi exponents must exceed -1 (a = {a}, b = {b})"
            )));
        }
        if order == 0 {
            return Err(Error::Quadrature(
                "Gauss-Jacobi order must be positive".into(),
            ));
        }
        let s = a + b;
        // Monic recurrence of the Jacobi family mapped from [-1, 1] to [0, 1].
        let diag: Vec<f64> = (0..order)
            .map(|k| {
                if k == 0 {
                    (b + 1.0) / (s + 2.0)
                } else {
                    let k = k as f64;
                    (2.0 * k * (k + 1.0) + s * (2.0 * k + b + 1.0))
                        / ((2.0 * k + s) * (2.0 * k + s + 2.0))
                }
            })
            .collect();
        let beta: Vec<f64> = (1..order)
            .map(|k| {
                if k == 1 {
                    (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
                } else {
                    let k = k as f64;
                    let c = 2.0 * k + s;
                    k * (k + a) * (k + b) * (k + s) / (c * c * (c + 1.0) * (c - 1.0))
                }
            })
            .collect();
        let off: Vec<f64> = beta.iter().map(|v| v.sqrt()).collect();
        let nodes = SymTridiag::new(diag.clone(), &off)?.lowest(order);
        let weights = nodes
            .iter()
            .map(|&y| {
                // Christoffel numbers from the orthonormal recurrence.
                let mut q_prev = 0.0;
                let mut q = 1.0;
                let mut sum = 1.0;
                for k in 0..order - 1 {
                    let prev_off = if k == 0 { 0.0 } else { off[k - 1] };
                    let next = ((y - diag[k]) * q - prev_off * q_prev) / off[k];
                    q_prev = q;
                    q = next;
                    sum += q * q;
                }
                1.0 / sum
            })
            .collect();
        let log_mass = libm::lgamma(a + 1.0) + libm::lgamma(b + 1.0) - libm::lgamma(a + b + 2.0);
        Ok(Self {
            nodes,
            weights,
            log_mass,
        })
    }

    /// `Σ w_j g(y_j)` with the normalized weights.
    pub fn mean<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&y, &w)| w * g(y))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_polynomial_exactness() {
        let (v, _) = gk15(&|x: f64| x.powi(20), -1.0, 1.0);
        assert!((v - 2.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_narrow_peak() {
        let w = 1e-3;
        let f = |x: f64| (-((x - 0.3) / w).powi(2)).exp();
        let v = Adaptive::default().integrate(f, 0.0, 10.0).unwrap();
        let exact = w * std::f64::consts::PI.sqrt();
        assert!((v - exact).abs() < 1e-12 * exact);
    }

    #[test]
    fn gauss_jacobi_moments() {
        // ∫ y^b (1-y)^a y^m dy / B(b+1,a+1) = Π_{j<m} (b+1+j)/(a+b+2+j)
        let (a, b) = (3.5, 0.25);
        let gj = GaussJacobi::new(12, a, b).unwrap();
        assert!((gj.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        for m in 0..24 {
            let exact: f64 = (0..m)
                .map(|j| (b + 1.0 + j as f64) / (a + b + 2.0 + j as f64))
                .product();
            let got = gj.mean(|y| y.powi(m));
            assert!((got - exact).abs() < 1e-13 * exact.max(1e-300), "m = {m}");
        }
        let exact_mass = libm::lgamma(4.5) + libm::lgamma(1.25) - libm::lgamma(5.75);
        assert!((gj.log_mass - exact_mass).abs() < 1e-15);
    }

    #[test]
    fn gauss_jacobi_large_exponent() {
        let (a, b) = (4.0e5, 400.0);
        let gj = GaussJacobi::new(16, a, b).unwrap();
        assert!(gj.nodes.iter().all(|&y| y > 0.0 && y < 1.0));
        let mean = gj.mean(|y| y);
        assert!((mean - (b + 1.0) / (a + b + 2.0)).abs() < 1e-15);
    }
}
