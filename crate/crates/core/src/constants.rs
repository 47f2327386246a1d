//! Physical constants and unit conventions.
//!
//! Lengths and times share one "time unit" (Å-equivalent). Energies are in eV
//! and momenta are reported in eV/c, so `cP` and `P` coincide numerically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// ħc in eV·unit.
    pub hbar_c: f64,
    /// Rest energy of one a.m.u. in eV.
    pub amu_energy: f64,
    /// Squared elementary charge in eV·unit.
    pub e2: f64,
    /// Charge number.
    pub z: f64,
}

impl PhysicalConstants {
    pub const SPATIAL: Self = Self {
        hbar_c: 1973.269804,
        amu_energy: 931.494e6,
        e2: 14.3996,
        z: 1.0,
    };

    /// ħ = c = 1 with the reduced mass entering as a bare a.m.u. number.
    pub const NATURAL: Self = Self {
        hbar_c: 1.0,
        amu_energy: 1.0,
        e2: 1.0,
        z: 1.0,
    };

    pub fn new(hbar_c: f64, amu_energy: f64, e2: f64, z: f64) -> Result<Self> {
        let c = Self {
            hbar_c,
            amu_energy,
            e2,
            z,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar_c", self.hbar_c),
            ("amu_energy", self.amu_energy),
            ("e2", self.e2),
            ("z", self.z),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter(format!(
                    "constant {name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// 2μc²/(ħc)², the coefficient that turns energies into ε-parameters.
    pub fn inertia(&self, mu: f64) -> f64 {
        2.0 * mu * self.amu_energy / (self.hbar_c * self.hbar_c)
    }

    /// (ħc)²/(2μc²), the kinetic prefactor of the FH operator.
    pub fn kinetic(&self, mu: f64) -> f64 {
        1.0 / self.inertia(mu)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::SPATIAL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inertia_and_kinetic_are_reciprocal() {
        let c = PhysicalConstants::SPATIAL;
        let mu = 6.860586;
        assert!((c.inertia(mu) * c.kinetic(mu) - 1.0).abs() < 1e-15);
        // ħ²/2μ for CO is about 3.05e-4 eV·Å².
        assert!((c.kinetic(mu) - 3.0467e-4).abs() < 1e-7);
    }

    #[test]
    fn natural_convention_gives_two_mu() {
        assert_eq!(PhysicalConstants::NATURAL.inertia(7.5), 15.0);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(PhysicalConstants::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(PhysicalConstants::new(f64::NAN, 1.0, 1.0, 1.0).is_err());
    }
}
