//! Finite-difference eigensolver for `-κψ'' + V(t)ψ = Eψ` with Dirichlet ends.
//!
//! Used to certify the closed-form spectrum and to measure how far the
//! Greene-Aldrich surrogate moves the levels of the exact potential.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::potential::{combined_potential, ga_unchecked, PotentialParams};
use crate::spectrum::ladder;
use crate::tridiag::SymTridiag;
use crate::wavefn::{support, WavefunctionSpec, SUPPORT_NATS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    /// Node count including both Dirichlet endpoints.
    pub points: usize,
    pub scheme: Scheme,
}

impl GridSpec {
    pub const MIN_POINTS: usize = 64;

    pub fn uniform(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite() && t_min >= 0.0 && t_min < t_max) {
            return Err(Error::Parameter(format!(
                "grid needs 0 <= t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        if points < Self::MIN_POINTS {
            return Err(Error::Parameter(format!(
                "grid needs at least {} points, got {points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self {
            t_min,
            t_max,
            points,
            scheme: Scheme::Uniform,
        })
    }

    pub fn intervals(&self) -> usize {
        self.points - 1
    }

    pub fn step(&self) -> f64 {
        (self.t_max - self.t_min) / self.intervals() as f64
    }

    /// Same domain with twice the intervals.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.intervals() + 1,
            ..*self
        }
    }

    fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.step();
        (1..self.intervals()).map(move |i| self.t_min + h * i as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub eigenvalues: Vec<f64>,
    pub grid: GridSpec,
    pub extrapolated: bool,
    /// Per-state relative error estimate: bisection width for a raw solve,
    /// disagreement of successive extrapolations otherwise.
    pub residuals: Vec<f64>,
}

/// Lowest `k` eigenvalues of the second-order finite-difference operator.
pub fn solve_bvp<V: Fn(f64) -> f64>(
    potential: V,
    consts: &PhysicalConstants,
    mu: f64,
    grid: &GridSpec,
    k: usize,
) -> Result<OracleResult> {
    let kinetic = consts.kinetic(mu);
    let h = grid.step();
    let off = -kinetic / (h * h);
    let diag: Vec<f64> = grid
        .interior()
        .map(|t| {
            let v = potential(t);
            2.0 * kinetic / (h * h) + v
        })
        .collect();
    if let Some(bad) = diag.iter().position(|d| !d.is_finite()) {
        return Err(Error::Domain(format!(
            "potential is not finite at t = {}",
            grid.t_min + h * (bad + 1) as f64
        )));
    }
    let matrix = SymTridiag::with_constant_off(diag, off)?;
    let eigenvalues = matrix.lowest(k);
    let residuals = eigenvalues
        .iter()
        .map(|e| f64::EPSILON * 4.0 * (1.0 + (2.0 * off).abs() / e.abs().max(f64::MIN_POSITIVE)))
        .collect();
    Ok(OracleResult {
        eigenvalues,
        grid: *grid,
        extrapolated: false,
        residuals,
    })
}

pub fn richardson_extrapolate(coarse: &OracleResult, fine: &OracleResult) -> Result<OracleResult> {
    let (c, f) = (&coarse.grid, &fine.grid);
    if c.t_min != f.t_min || c.t_max != f.t_max || f.intervals() != 2 * c.intervals() {
        return Err(Error::IncompatibleGrids(format!(
            "coarse [{}, {}] x {} intervals vs fine [{}, {}] x {} intervals",
            c.t_min,
            c.t_max,
            c.intervals(),
            f.t_min,
            f.t_max,
            f.intervals()
        )));
    }
    let k = coarse.eigenvalues.len().min(fine.eigenvalues.len());
    let eigenvalues: Vec<f64> = (0..k)
        .map(|i| (4.0 * fine.eigenvalues[i] - coarse.eigenvalues[i]) / 3.0)
        .collect();
    let residuals = (0..k)
        .map(|i| ((fine.eigenvalues[i] - eigenvalues[i]) / eigenvalues[i]).abs())
        .collect();
    Ok(OracleResult {
        eigenvalues,
        grid: *f,
        extrapolated: true,
        residuals,
    })
}

/// Extrapolates over three nested grids and checks that the two
/// extrapolated estimates agree to `rel_tol`.
pub fn solve_extrapolated<V: Fn(f64) -> f64>(
    potential: V,
    consts: &PhysicalConstants,
    mu: f64,
    grid: &GridSpec,
    k: usize,
    rel_tol: f64,
) -> Result<OracleResult> {
    let g1 = *grid;
    let g2 = g1.refined();
    let g4 = g2.refined();
    let r1 = solve_bvp(&potential, consts, mu, &g1, k)?;
    let r2 = solve_bvp(&potential, consts, mu, &g2, k)?;
    let r4 = solve_bvp(&potential, consts, mu, &g4, k)?;
    let first = richardson_extrapolate(&r1, &r2)?;
    let mut best = richardson_extrapolate(&r2, &r4)?;
    for (i, res) in best.residuals.iter_mut().enumerate() {
        *res = ((best.eigenvalues[i] - first.eigenvalues[i]) / best.eigenvalues[i]).abs();
    }
    check_refinement(&best, rel_tol)?;
    Ok(best)
}

/// Refinement-failure diagnostic for any state whose error estimate exceeds `rel_tol`.
pub fn check_refinement(res: &OracleResult, rel_tol: f64) -> Result<()> {
    let bad: Vec<String> = res
        .residuals
        .iter()
        .enumerate()
        .filter(|(_, r)| !(**r <= rel_tol))
        .map(|(i, r)| format!("state {i}: shift {r:.3e}"))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Refinement(format!(
            "{} points on [{}, {}], tolerance {rel_tol:.1e}: {}",
            res.grid.points,
            res.grid.t_min,
            res.grid.t_max,
            bad.join("; ")
        )))
    }
}

/// Unextrapolated shift between a grid and its refinement, as a failure check.
pub fn solve_unextrapolated<V: Fn(f64) -> f64>(
    potential: V,
    consts: &PhysicalConstants,
    mu: f64,
    grid: &GridSpec,
    k: usize,
    rel_tol: f64,
) -> Result<OracleResult> {
    let coarse = solve_bvp(&potential, consts, mu, grid, k)?;
    let mut fine = solve_bvp(&potential, consts, mu, &grid.refined(), k)?;
    for (i, r) in fine.residuals.iter_mut().enumerate() {
        *r = ((fine.eigenvalues[i] - coarse.eigenvalues[i]) / fine.eigenvalues[i]).abs();
    }
    check_refinement(&fine, rel_tol)?;
    Ok(fine)
}

/// Domain covering the closed-form eigenfunctions of levels `0..=n_max`,
/// each cut where `|ψ|` has dropped by [`SUPPORT_NATS`].
///
/// Returns the domain and the number of bound levels found.
pub fn closed_form_domain(
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
    n_max: u32,
) -> Result<(f64, f64, usize)> {
    let lad = ladder(p, consts, mu, n_max)?;
    if lad.levels.is_empty() {
        return Err(Error::Domain(
            lad.cutoff.unwrap_or_else(|| "no bound levels".into()),
        ));
    }
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for res in &lad.levels {
        let spec = WavefunctionSpec::from_level(res, p, consts, mu)?;
        let (a, b) = support(&spec, SUPPORT_NATS);
        lo = lo.min(a);
        hi = hi.max(b);
    }
    Ok((lo, hi, lad.levels.len()))
}

/// Grid used to certify the closed-form ladder of `p`.
pub fn certification_grid(
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
    n_max: u32,
    points: usize,
) -> Result<(GridSpec, usize)> {
    let (lo, hi, levels) = closed_form_domain(p, consts, mu, n_max)?;
    Ok((GridSpec::uniform(lo, hi, points)?, levels))
}

/// Oracle eigenvalues of the Greene-Aldrich Hamiltonian for `p`.
pub fn ga_levels(
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
    n_max: u32,
    points: usize,
    rel_tol: f64,
) -> Result<OracleResult> {
    if !(p.alpha > 0.0) {
        return Err(Error::Parameter(
            "Greene-Aldrich oracle needs alpha > 0".into(),
        ));
    }
    let (grid, levels) = certification_grid(p, consts, mu, n_max, points)?;
    solve_extrapolated(|t| ga_unchecked(t, p), consts, mu, &grid, levels, rel_tol)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationReport {
    /// `|P_exact - P_GA| / |P_GA|` per level.
    pub relative_error: Vec<f64>,
    /// Relative change of the exact-potential levels when `t_min` shrinks 10x.
    pub t_min_sensitivity: Vec<f64>,
    /// Set when any sensitivity exceeds 1e-7.
    pub t_min_flagged: bool,
}

pub const T_MIN_SENSITIVITY_TOL: f64 = 1e-7;

/// Level shifts caused by the Greene-Aldrich substitution, from two oracle
/// runs on the same grid.
pub fn approximation_error(
    p: &PotentialParams,
    consts: &PhysicalConstants,
    mu: f64,
    n_max: u32,
) -> Result<ApproximationReport> {
    let points = 4001;
    let rel_tol = 1e-6;
    let (lo, hi, levels) = closed_form_domain(p, consts, mu, n_max)?;
    // Both potentials share the domain; the exact one needs t_min > 0.
    let t_min = lo.max(1e-6 * hi);
    let grid = GridSpec::uniform(t_min, hi, points)?;
    let exact = |t: f64| combined_potential(t, p).unwrap_or(f64::INFINITY);
    let ga = solve_extrapolated(|t| ga_unchecked(t, p), consts, mu, &grid, levels, rel_tol)?;
    let ex = solve_extrapolated(exact, consts, mu, &grid, levels, rel_tol)?;
    // Same domain extended toward the origin by 10x in t_min.
    let h = grid.step();
    let extra = ((t_min - t_min / 10.0) / h).ceil() as usize;
    let wide = GridSpec::uniform(t_min - h * extra as f64, hi, points + extra)?;
    let ex_wide = solve_extrapolated(exact, consts, mu, &wide, levels, rel_tol)?;
    let relative_error: Vec<f64> = ga
        .eigenvalues
        .iter()
        .zip(&ex.eigenvalues)
        .map(|(g, e)| ((e - g) / g).abs())
        .collect();
    let t_min_sensitivity: Vec<f64> = ex
        .eigenvalues
        .iter()
        .zip(&ex_wide.eigenvalues)
        .map(|(a, b)| ((a - b) / a).abs())
        .collect();
    let t_min_flagged = t_min_sensitivity.iter().any(|s| *s > T_MIN_SENSITIVITY_TOL);
    Ok(ApproximationReport {
        relative_error,
        t_min_sensitivity,
        t_min_flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const NATURAL: PhysicalConstants = PhysicalConstants::NATURAL;

    fn box_exact(k: usize, len: f64, mu: f64) -> f64 {
        let kk = k as f64 * std::f64::consts::PI / len;
        NATURAL.kinetic(mu) * kk * kk
    }

    #[test]
    fn particle_in_box() {
        let grid = GridSpec::uniform(0.0, 2.0, 201).unwrap();
        let res = solve_extrapolated(|_| 0.0, &NATURAL, 0.5, &grid, 5, 1e-6).unwrap();
        assert!(res.extrapolated);
        for (i, e) in res.eigenvalues.iter().enumerate() {
            let exact = box_exact(i + 1, 2.0, 0.5);
            assert!((e - exact).abs() / exact < 1e-6, "{i}: {e} vs {exact}");
        }
    }

    #[test]
    fn richardson_gains_order() {
        let g = GridSpec::uniform(0.0, 1.0, 101).unwrap();
        let c = solve_bvp(|_| 0.0, &NATURAL, 1.0, &g, 3).unwrap();
        let f = solve_bvp(|_| 0.0, &NATURAL, 1.0, &g.refined(), 3).unwrap();
        let r = richardson_extrapolate(&c, &f).unwrap();
        for i in 0..3 {
            let exact = box_exact(i + 1, 1.0, 1.0);
            let gain = (c.eigenvalues[i] - exact).abs() / (r.eigenvalues[i] - exact).abs();
            assert!(gain > 16.0, "gain {gain}");
        }
        let same = richardson_extrapolate(
            &c,
            &OracleResult {
                grid: g.refined(),
                ..c.clone()
            },
        )
        .unwrap();
        assert_eq!(same.eigenvalues, c.eigenvalues);
    }

    #[test]
    fn incompatible_grids() {
        let g = GridSpec::uniform(0.0, 1.0, 101).unwrap();
        let c = solve_bvp(|_| 0.0, &NATURAL, 1.0, &g, 2).unwrap();
        let other = GridSpec::uniform(0.0, 1.5, 201).unwrap();
        let f = solve_bvp(|_| 0.0, &NATURAL, 1.0, &other, 2).unwrap();
        assert!(matches!(
            richardson_extrapolate(&c, &f),
            Err(Error::IncompatibleGrids(_))
        ));
    }

    #[test]
    fn harmonic_ladder_is_uniform() {
        let mu = 1.0;
        let k = 40.0;
        let omega = (2.0 * NATURAL.kinetic(mu) * k).sqrt();
        let grid = GridSpec::uniform(0.0, 10.0, 2001).unwrap();
        let res = solve_extrapolated(
            |t| 0.5 * k * (t - 5.0).powi(2),
            &NATURAL,
            mu,
            &grid,
            6,
            1e-6,
        )
        .unwrap();
        for w in res.eigenvalues.windows(2) {
            assert!(((w[1] - w[0]) / omega - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn coarse_grid_fails_refinement() {
        let grid = GridSpec::uniform(0.0, 1.0, 64).unwrap();
        let err = solve_unextrapolated(|_| 0.0, &NATURAL, 1.0, &grid, 10, 1e-6);
        assert!(matches!(err, Err(Error::Refinement(_))));
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::uniform(1.0, 1.0, 100).is_err());
        assert!(GridSpec::uniform(0.0, 1.0, 10).is_err());
        assert_eq!(
            GridSpec::uniform(0.0, 1.0, 101).unwrap().refined().points,
            201
        );
    }

    #[test]
    fn certifies_closed_form_ladder() {
        use crate::mapping::TableMapping;
        use crate::spectrum::momentum_eigenvalue;
        for name in ["CO", "I2"] {
            let m = crate::molecule::builtin_molecule(name).unwrap();
            for alpha in [0.001, 0.1] {
                let p = TableMapping::default().params(&m, alpha, &NATURAL).unwrap();
                let res = ga_levels(&p, &NATURAL, m.mu, 9, 2001, 1e-6).unwrap();
                assert_eq!(res.eigenvalues.len(), 10);
                for (n, e) in res.eigenvalues.iter().enumerate() {
                    let cf = momentum_eigenvalue(n as u32, &p, &NATURAL, m.mu)
                        .unwrap()
                        .pn;
                    assert!(
                        ((e - cf) / cf).abs() < 1e-6,
                        "{name} {alpha} {n}: {e} vs {cf}"
                    );
                }
            }
        }
    }
}
