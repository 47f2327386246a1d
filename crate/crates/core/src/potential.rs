//! The combined Kratzer plus screened Coulomb potential and its
//! Greene-Aldrich surrogate.
//!
//! ```text
//! V(t)    = D - B/t + qC/t² + A e^{-αt}/t
//! V_GA(t) = D - Bα/(1-s) + qCα²/(1-s)² + Aαs/(1-s),   s = e^{-αt}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::molecule::Molecule;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    /// Screened Coulomb strength (eV·unit).
    pub a: f64,
    /// Inverse-time coefficient (eV·unit).
    pub b: f64,
    /// Inverse-time-squared coefficient (eV·unit²).
    pub c: f64,
    /// Constant offset (eV).
    pub d: f64,
    pub q: f64,
    /// Screening parameter (1/unit).
    pub alpha: f64,
}

impl PotentialParams {
    pub fn new(a: f64, b: f64, c: f64, d: f64, q: f64, alpha: f64) -> Result<Self> {
        let p = Self {
            a,
            b,
            c,
            d,
            q,
            alpha,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("A", self.a),
            ("B", self.b),
            ("C", self.c),
            ("D", self.d),
            ("q", self.q),
            ("alpha", self.alpha),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Parameter(format!("{name} must be finite, got {v}")));
        }
        if self.alpha < 0.0 {
            return Err(Error::Parameter(format!(
                "alpha must be non-negative, got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    /// Modified Kratzer well of a molecule: B = 2t_eD_e, C = t_e²D_e, q = 1.
    pub fn kratzer(m: &Molecule, alpha: f64) -> Self {
        Self {
            a: 0.0,
            b: 2.0 * m.te * m.de,
            c: m.te * m.te * m.de,
            d: 0.0,
            q: 1.0,
            alpha,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }

    /// q·C, the product that fixes 1/Q.
    pub fn qc(&self) -> f64 {
        self.q * self.c
    }

    /// q ≤ 0 is accepted but reported in output metadata.
    pub fn q_flagged(&self) -> bool {
        self.q <= 0.0
    }

    /// Large-t limit of the Greene-Aldrich potential, D - Bα + qCα².
    pub fn ga_threshold(&self) -> f64 {
        self.d - self.b * self.alpha + self.qc() * self.alpha * self.alpha
    }
}

pub fn combined_potential(t: f64, p: &PotentialParams) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "potential is singular at t <= 0 (t = {t})"
        )));
    }
    let inv = 1.0 / t;
    let screened = if p.a == 0.0 {
        0.0
    } else {
        p.a * (-p.alpha * t).exp() * inv
    };
    Ok(p.d - p.b * inv + p.qc() * inv * inv + screened)
}

pub fn greene_aldrich_potential(t: f64, p: &PotentialParams) -> Result<f64> {
    if !(p.alpha > 0.0) {
        return Err(Error::Parameter(format!(
            "Greene-Aldrich substitution needs alpha > 0, got {}",
            p.alpha
        )));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "Greene-Aldrich potential is singular at t <= 0 (t = {t})"
        )));
    }
    Ok(ga_unchecked(t, p))
}

/// Greene-Aldrich potential without argument checks, for hot loops where
/// `t > 0` and `alpha > 0` already hold.
pub(crate) fn ga_unchecked(t: f64, p: &PotentialParams) -> f64 {
    let one_minus_s = -(-p.alpha * t).exp_m1();
    let g = p.alpha / one_minus_s;
    let s = 1.0 - one_minus_s;
    p.d - p.b * g + p.qc() * g * g + p.a * g * s
}
