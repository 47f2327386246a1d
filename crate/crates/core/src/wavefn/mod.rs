//! Bound-state eigenfunctions
//!
//! ```text
//! ψ_n(t) = B_n · s^ε1 · (1-s)^(1/Q) · P_n^{(2ε1, 2/Q-1)}(1-2s),   s = e^{-αt}
//! ```
//!
//! Everything is evaluated in the log domain; `B_n` itself routinely
//! underflows for heavy molecules and is stored as `ln B_n`.

pub mod jacobi;
pub mod quadrature;

use serde::{Deserialize, Serialize};

pub use jacobi::{binom, jacobi, jacobi_sup_bound};
use quadrature::{Adaptive, GaussJacobi};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::potential::{ga_unchecked, PotentialParams};
use crate::spectrum::SpectrumResult;

/// Identifies the potential a wavefunction was built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub params: PotentialParams,
    /// 2μc²/(ħc)².
    pub inertia: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSpec {
    pub n: u32,
    pub eps1: f64,
    pub inv_q: f64,
    pub alpha: f64,
    /// Natural log of the normalization constant.
    pub log_bn: f64,
    pub source: Provenance,
}

/// Natural-log nats kept on each side of the peak when locating support.
pub const SUPPORT_NATS: f64 = 40.0;

/// Absolute accuracy of overlaps, relative to `‖ψ_m‖‖ψ_n‖`.
pub const OVERLAP_ABS_TOL: f64 = 1e-13;

impl WavefunctionSpec {
    /// Unnormalized (`B_n = 1`) eigenfunction for a closed-form level.
    pub fn from_level(
        res: &SpectrumResult,
        p: &PotentialParams,
        consts: &PhysicalConstants,
        mu: f64,
    ) -> Result<Self> {
        if !(res.normalizable && res.eps1 > 0.0) {
            return Err(Error::NonNormalizable {
                n: res.n,
                eps1: res.eps1,
            });
        }
        Self::new(
            res.n,
            res.eps1,
            res.inv_q,
            p.alpha,
            Provenance {
                params: *p,
                inertia: consts.inertia(mu),
            },
        )
    }

    pub fn new(n: u32, eps1: f64, inv_q: f64, alpha: f64, source: Provenance) -> Result<Self> {
        if !(eps1 > 0.0 && eps1.is_finite()) {
            return Err(Error::NonNormalizable { n, eps1 });
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Parameter(format!(
                "wavefunction needs alpha > 0, got {alpha}"
            )));
        }
        if !(inv_q > 0.0) {
            return Err(Error::JacobiIndex {
                name: "b",
                value: 2.0 * inv_q - 1.0,
            });
        }
        Ok(Self {
            n,
            eps1,
            inv_q,
            alpha,
            log_bn: 0.0,
            source,
        })
    }

    pub fn jacobi_a(&self) -> f64 {
        2.0 * self.eps1
    }

    pub fn jacobi_b(&self) -> f64 {
        2.0 * self.inv_q - 1.0
    }

    pub fn bn(&self) -> f64 {
        self.log_bn.exp()
    }

    fn log_envelope(&self, t: f64) -> f64 {
        let x = self.alpha * t;
        -self.eps1 * x + self.inv_q * (-(-x).exp_m1()).ln()
    }

    fn poly(&self, t: f64) -> f64 {
        let s = (-self.alpha * t).exp();
        jacobi::jacobi_unchecked(self.n, self.jacobi_a(), self.jacobi_b(), 1.0 - 2.0 * s)
    }

    /// Where `s^ε1 (1-s)^(1/Q)` peaks.
    pub fn envelope_peak(&self) -> f64 {
        (1.0 + self.inv_q / self.eps1).ln() / self.alpha
    }
}

/// `ln|ψ(t)|`; `-inf` at t = 0 and at nodes.
pub fn log_abs_psi(t: f64, spec: &WavefunctionSpec) -> f64 {
    if t <= 0.0 {
        return f64::NEG_INFINITY;
    }
    spec.log_bn + spec.log_envelope(t) + spec.poly(t).abs().ln()
}

pub fn psi(t: f64, spec: &WavefunctionSpec) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let p = spec.poly(t);
    if p == 0.0 {
        return 0.0;
    }
    let mag = (spec.log_bn + spec.log_envelope(t) + p.abs().ln()).exp();
    mag.copysign(p)
}

/// Interval outside of which `|ψ|` is below `e^{-nats}` times its maximum.
pub fn support(spec: &WavefunctionSpec, nats: f64) -> (f64, f64) {
    let (lo, hi, _) = scan(spec, nats);
    (lo, hi)
}

/// Support bounds plus the largest sampled `ln|ψ|`.
fn scan(spec: &WavefunctionSpec, nats: f64) -> (f64, f64, f64) {
    let peak = spec.envelope_peak();
    let top = spec.log_envelope(peak);
    let slack = nats
        + jacobi_sup_bound(spec.n, spec.jacobi_a(), spec.jacobi_b())
            .ln()
            .max(0.0)
        + 1.0;
    // The envelope is unimodal; bracket each side where it drops by `slack`.
    let cross = |mut inner: f64, mut outer: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (inner + outer);
            if spec.log_envelope(mid) > top - slack {
                inner = mid;
            } else {
                outer = mid;
            }
        }
        outer
    };
    let mut far = 2.0 * peak;
    while spec.log_envelope(far) > top - slack {
        far *= 2.0;
    }
    let lo = cross(peak, 0.0);
    let hi = cross(peak, far);

    let samples = 8192;
    let step = (hi - lo) / samples as f64;
    let logs: Vec<f64> = (0..=samples)
        .map(|i| log_abs_psi(lo + step * i as f64, spec))
        .collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let first = logs.iter().position(|&l| l >= max - nats).unwrap_or(0);
    let last = logs
        .iter()
        .rposition(|&l| l >= max - nats)
        .unwrap_or(samples);
    let t_lo = (lo + step * (first as f64 - 1.0)).max(lo);
    let t_hi = (lo + step * (last as f64 + 1.0)).min(hi);
    (t_lo.max(f64::MIN_POSITIVE), t_hi, max)
}

/// ln ∫ ψ_m ψ_n dt with the `B`'s removed, via Gauss-Jacobi in `y = 1 - s`.
/// Returns `(ln|I|, sign)`.
fn gauss_jacobi_log_integral(m: &WavefunctionSpec, n: &WavefunctionSpec) -> Result<(f64, f64)> {
    let a = m.eps1 + n.eps1 - 1.0;
    let b = m.inv_q + n.inv_q;
    let order = ((m.n + n.n) as usize / 2 + 8).max(16);
    let gj = GaussJacobi::new(order, a, b)?;
    let val = gj.mean(|y| {
        let x = 2.0 * y - 1.0;
        jacobi::jacobi_unchecked(m.n, m.jacobi_a(), m.jacobi_b(), x)
            * jacobi::jacobi_unchecked(n.n, n.jacobi_a(), n.jacobi_b(), x)
    });
    Ok((gj.log_mass - m.alpha.ln() + val.abs().ln(), val.signum()))
}

fn adaptive_log_integral(m: &WavefunctionSpec, n: &WavefunctionSpec) -> Result<(f64, f64)> {
    let bare_m = WavefunctionSpec { log_bn: 0.0, ..*m };
    let bare_n = WavefunctionSpec { log_bn: 0.0, ..*n };
    let (a1, b1, top_m) = scan(&bare_m, SUPPORT_NATS);
    let (a2, b2, top_n) = scan(&bare_n, SUPPORT_NATS);
    let (lo, hi) = (a1.min(a2), b1.max(b2));
    let shift = top_m + top_n;
    let f = |t: f64| {
        let pm = bare_m.poly(t);
        let pn = bare_n.poly(t);
        let l = bare_m.log_envelope(t) + bare_n.log_envelope(t) + (pm * pn).abs().ln() - shift;
        (pm * pn).signum() * l.exp()
    };
    // A vanishing overlap has no relative scale; bound it absolutely via
    // Cauchy-Schwarz from the two self-integrals.
    let same = bare_m == bare_n;
    let schwarz = if same {
        0.0
    } else {
        let (lm, _) = adaptive_log_integral(&bare_m, &bare_m)?;
        let (ln, _) = adaptive_log_integral(&bare_n, &bare_n)?;
        (0.5 * (lm + ln) - shift).exp()
    };
    let quad = Adaptive {
        abs_tol: (1e-15 * (hi - lo)).max(OVERLAP_ABS_TOL * schwarz),
        ..Adaptive::default()
    };
    let val = quad.integrate(f, lo, hi)?;
    Ok((shift + val.abs().ln(), val.signum()))
}

fn check_normalizable(spec: &WavefunctionSpec) -> Result<()> {
    if spec.eps1 > 0.0 {
        Ok(())
    } else {
        Err(Error::NonNormalizable {
            n: spec.n,
            eps1: spec.eps1,
        })
    }
}

/// Sets `B_n` for unit L² norm on (0, ∞), using adaptive quadrature in t.
pub fn normalize(spec: &WavefunctionSpec) -> Result<WavefunctionSpec> {
    check_normalizable(spec)?;
    let (log_norm, _) = adaptive_log_integral(spec, spec)?;
    Ok(WavefunctionSpec {
        log_bn: -0.5 * log_norm,
        ..*spec
    })
}

/// Same as [`normalize`] via the Gauss-Jacobi rule.
pub fn normalize_gauss_jacobi(spec: &WavefunctionSpec) -> Result<WavefunctionSpec> {
    check_normalizable(spec)?;
    let (log_norm, _) = gauss_jacobi_log_integral(spec, spec)?;
    Ok(WavefunctionSpec {
        log_bn: -0.5 * log_norm,
        ..*spec
    })
}

fn check_provenance(m: &WavefunctionSpec, n: &WavefunctionSpec) -> Result<()> {
    if m.source == n.source {
        Ok(())
    } else {
        Err(Error::ProvenanceMismatch)
    }
}

/// `∫ ψ_m ψ_n dt` by adaptive quadrature.
pub fn overlap(m: &WavefunctionSpec, n: &WavefunctionSpec) -> Result<f64> {
    check_provenance(m, n)?;
    let (l, sign) = adaptive_log_integral(m, n)?;
    Ok(sign * (l + m.log_bn + n.log_bn).exp())
}

/// `∫ ψ_m ψ_n dt` by Gauss-Jacobi quadrature.
pub fn overlap_gauss_jacobi(m: &WavefunctionSpec, n: &WavefunctionSpec) -> Result<f64> {
    check_provenance(m, n)?;
    let (l, sign) = gauss_jacobi_log_integral(m, n)?;
    Ok(sign * (l + m.log_bn + n.log_bn).exp())
}

/// Interior sign changes of ψ, counted on a uniform scan that is refined
/// until the count is stable.
pub fn count_nodes(spec: &WavefunctionSpec) -> usize {
    let (lo, hi) = support(spec, SUPPORT_NATS);
    let count = |samples: usize| {
        let step = (hi - lo) / samples as f64;
        let mut prev = 0.0_f64;
        let mut changes = 0;
        for i in 1..samples {
            let v = spec.poly(lo + step * i as f64);
            if v != 0.0 {
                if prev != 0.0 && v.signum() != prev.signum() {
                    changes += 1;
                }
                prev = v;
            }
        }
        changes
    };
    let mut samples = 2048;
    let mut last = count(samples);
    loop {
        samples *= 2;
        let next = count(samples);
        if next == last || samples > 1 << 20 {
            return next;
        }
        last = next;
    }
}

/// `‖Hψ - Eψ‖₂ / ‖ψ‖₂` in energy units, with `H = -κ d²/dt² + V_GA`.
///
/// ψ'' uses central differences at steps `h` and `2h` combined to fourth
/// order, with `h` a fixed fraction of the support width.
pub fn hamiltonian_residual(spec: &WavefunctionSpec, energy: f64) -> Result<f64> {
    let p = spec.source.params;
    if !(p.alpha > 0.0) {
        return Err(Error::Parameter(
            "residual needs the Greene-Aldrich form (alpha > 0)".into(),
        ));
    }
    let kinetic = 1.0 / spec.source.inertia;
    let bare = WavefunctionSpec {
        log_bn: 0.0,
        ..*spec
    };
    let (lo, hi, shift) = scan(&bare, SUPPORT_NATS);
    let samples = 4000;
    let dt = (hi - lo) / samples as f64;
    let h = (hi - lo) * 2e-4;
    let f = |t: f64| {
        if t <= 0.0 {
            0.0
        } else {
            let pv = bare.poly(t);
            pv.signum() * (bare.log_envelope(t) + pv.abs().ln() - shift).exp()
        }
    };
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 1..samples {
        let t = lo + dt * i as f64;
        let y = f(t);
        let d1 = (f(t + h) - 2.0 * y + f(t - h)) / (h * h);
        let d2 = (f(t + 2.0 * h) - 2.0 * y + f(t - 2.0 * h)) / (4.0 * h * h);
        let second = (4.0 * d1 - d2) / 3.0;
        let r = -kinetic * second + (ga_unchecked(t, &p) - energy) * y;
        num += r * r;
        den += y * y;
    }
    if den == 0.0 {
        return Err(Error::Quadrature(
            "wavefunction vanished on its support".into(),
        ));
    }
    Ok((num / den).sqrt())
}
