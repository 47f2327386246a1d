//! Closed-form quantized momenta and the NU intermediate quantities.
//!
//! Notation used throughout: `k2 = 2μc²/(ħc)²`, `β = k2/α²` and the
//! Greene-Aldrich threshold `L = D - Bα + qCα²`. Then
//!
//! ```text
//! ε1² = β(L - E)
//! ε2  = β(Aα - D + E)
//! ε3  = β(Bα + Aα - 2D + 2E)
//! 1/Q = 1/2 + √(1/4 + k2·qC)
//! ```
//!
//! The eigenvalue condition `λ = λ_n` is linear in ε1, with root
//!
//! ```text
//! ε1 = -[(k2/α)(A - B + 2qCα) + n(n + 2/Q) + 1/Q] / (2(n + 1/Q))
//! ```
//!
//! and `E = cP_n = L - (α²/k2)·ε1²`. A level is bound only when that root is
//! positive.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::molecule::Molecule;
use crate::potential::PotentialParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub n: u32,
    /// Momentum eigenvalue cP_n in eV (equivalently P_n in eV/c).
    pub pn: f64,
    /// Signed: positive for normalizable states. NaN when undefined (α = 0 cases).
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub inv_q: f64,
    pub lambda_n: f64,
    /// Relative disagreement of the two λ expressions.
    pub lambda_residual: f64,
    pub normalizable: bool,
    pub alpha: f64,
}

/// Levels `0..` up to the first non-normalizable one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ladder {
    pub levels: Vec<SpectrumResult>,
    /// Set when the ladder stopped before `n_max` because `eps1 <= 0`.
    pub cutoff: Option<String>,
}

pub fn inv_q(p: &PotentialParams, consts: &PhysicalConstants, mu: f64) -> Result<f64> {
    inv_q_from(consts.inertia(mu) * p.qc(), p.qc())
}

fn inv_q_from(scaled_qc: f64, qc: f64) -> Result<f64> {
    let radicand = 0.25 + scaled_qc;
    if !(radicand >= 0.0) {
        return Err(Error::UnsupportedQc { qc });
    }
    Ok(0.5 + radicand.sqrt())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "closed-form spectrum needs alpha > 0, got {alpha}"
        )))
    }
}

/// Signed root of the eigenvalue condition.
fn eps1_root(n: u32, p: &PotentialParams, k2: f64, iq: f64) -> f64 {
    let nf = n as f64;
    let bracket = (k2 / p.alpha) * (p.a - p.b + 2.0 * p.qc() * p.alpha) + nf * (nf + 2.0 * iq) + iq;
    -bracket / (2.0 * (nf + iq))
}

/// ε-parameters implied by an energy, with ε1 carrying `sign`.
fn eps_from_energy(pn: f64, sign: f64, p: &PotentialParams, k2: f64) -> (f64, f64, f64) {
    let beta = k2 / (p.alpha * p.alpha);
    let eps1 = sign * (beta * (p.ga_threshold() - pn)).max(0.0).sqrt();
    let eps2 = beta * (p.a * p.alpha - p.d + pn);
    let eps3 = beta * (p.b * p.alpha + p.a * p.alpha - 2.0 * p.d + 2.0 * pn);
    (eps1, eps2, eps3)
}

fn lambda_from_eps1(n: u32, eps1: f64, iq: f64) -> f64 {
    let nf = n as f64;
    nf * (nf + 2.0 * iq) + 2.0 * nf * eps1
}

fn assemble(n: u32, pn: f64, root: f64, iq: f64, p: &PotentialParams, k2: f64) -> SpectrumResult {
    let sign = if root < 0.0 { -1.0 } else { 1.0 };
    let (eps1, eps2, eps3) = eps_from_energy(pn, sign, p, k2);
    let mut res = SpectrumResult {
        n,
        pn,
        eps1,
        eps2,
        eps3,
        inv_q: iq,
        lambda_n: lambda_from_eps1(n, eps1, iq),
        lambda_residual: f64::NAN,
        normalizable: eps1 > 0.0,
        alpha: p.alpha,
    };
    res.lambda_residual = residual_with(&res, p, k2, iq);
    res
}

pub fn momentum_eigenvalue(
    n: u32,
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
) -> Result<SpectrumResult> {
    p.validate()?;
    check_alpha(p.alpha)?;
    let k2 = consts.inertia(mu);
    let iq = inv_q(p, consts, mu)?;
    let root = eps1_root(n, p, k2, iq);
    let pn = p.ga_threshold() - (p.alpha * p.alpha / k2) * root * root;
    Ok(assemble(n, pn, root, iq, p, k2))
}

/// Levels `0..=n_max`, stopping at the first state with `eps1 <= 0`.
pub fn ladder(
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
    n_max: u32,
) -> Result<Ladder> {
    let mut levels = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let res = momentum_eigenvalue(n, p, consts, mu)?;
        if !res.normalizable {
            return Ok(Ladder {
                levels,
                cutoff: Some(format!(
                    "level n = {n} is not normalizable (eps1 = {:.6e}); ladder ends at n = {}",
                    res.eps1,
                    n as i64 - 1
                )),
            });
        }
        levels.push(res);
    }
    Ok(Ladder {
        levels,
        cutoff: None,
    })
}

/// Modified Kratzer limit: `cP_n = -k2·(2t_eD_e / (2(n + 1/Q)))²`.
///
/// The potential itself has no α here, so the ε fields are NaN.
pub fn kratzer_momentum(
    n: u32,
    m: &Molecule,
    consts: &PhysicalConstants,
) -> Result<SpectrumResult> {
    m.validate()?;
    let k2 = consts.inertia(m.mu);
    let c = m.te * m.te * m.de;
    let iq = inv_q_from(k2 * c, c)?;
    let b = 2.0 * m.te * m.de;
    let half = b / (2.0 * (n as f64 + iq));
    Ok(SpectrumResult {
        n,
        pn: -k2 * half * half,
        eps1: f64::NAN,
        eps2: f64::NAN,
        eps3: f64::NAN,
        inv_q: iq,
        lambda_n: f64::NAN,
        lambda_residual: f64::NAN,
        normalizable: true,
        alpha: 0.0,
    })
}

/// Screened Coulomb `A = -z·e²` with B = C = D = 0, so 1/Q = 1.
///
/// At `z = 0` this is bit-for-bit the free case of [`momentum_eigenvalue`].
pub fn screened_coulomb_momentum(
    n: u32,
    z: f64,
    alpha: f64,
    consts: &PhysicalConstants,
    mu: f64,
) -> Result<SpectrumResult> {
    check_alpha(alpha)?;
    if !(z >= 0.0 && z.is_finite()) {
        return Err(Error::Parameter(format!("charge z must be >= 0, got {z}")));
    }
    let k2 = consts.inertia(mu);
    let p = PotentialParams::new(-z * consts.e2, 0.0, 0.0, 0.0, 1.0, alpha)?;
    let nf = n as f64;
    let root = -((k2 / alpha) * (-z * consts.e2) + nf * (nf + 2.0) + 1.0) / (2.0 * (nf + 1.0));
    let pn = 0.0 - (alpha * alpha / k2) * root * root;
    Ok(assemble(n, pn, root, 1.0, &p, k2))
}

/// Unscreened Coulomb limit: `P_n = -k2·(z·e²)² / (4(n+1)²)`.
pub fn coulomb_momentum(n: u32, z: f64, consts: &PhysicalConstants, mu: f64) -> f64 {
    let ze2 = z * consts.e2;
    let m = n as f64 + 1.0;
    -consts.inertia(mu) * ze2 * ze2 / (4.0 * m * m)
}

/// `|λ - λ_n| / (1 + max(|λ_n|, Σ|terms of λ|))` where `λ = k₋ + π₋'` is
/// rebuilt from `res.pn`.
pub fn lambda_consistency(
    res: &SpectrumResult,
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
) -> Result<f64> {
    check_alpha(p.alpha)?;
    let k2 = consts.inertia(mu);
    let iq = inv_q(p, consts, mu)?;
    Ok(residual_with(res, p, k2, iq))
}

fn residual_with(res: &SpectrumResult, p: &PotentialParams, k2: f64, iq: f64) -> f64 {
    let sign = if res.eps1 < 0.0 { -1.0 } else { 1.0 };
    let (eps1, _, eps3) = eps_from_energy(res.pn, sign, p, k2);
    let k_minus = -eps3 - 2.0 * eps1 * eps1 - 2.0 * eps1 * (iq - 0.5);
    let pi_slope = -(eps1 + iq);
    let lambda = k_minus + pi_slope;
    let lambda_n = lambda_from_eps1(res.n, eps1, iq);
    // Scale by the summands: λ is a large cancelling sum whenever ε3 is big.
    let scale = eps3.abs() + 2.0 * eps1 * eps1 + (2.0 * eps1 * (iq - 0.5)).abs() + pi_slope.abs();
    (lambda - lambda_n).abs() / (1.0 + lambda_n.abs().max(scale))
}
