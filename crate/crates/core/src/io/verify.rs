//! Closed form vs oracle, plus the eigenfunction checks, over a config's grid.

use serde::Serialize;

use super::config::RunConfig;
use crate::error::Result;
use crate::molecule::Molecule;
use crate::oracle::{certification_grid, ga_levels, solve_unextrapolated};
use crate::potential::ga_unchecked;
use crate::spectrum::{momentum_eigenvalue, SpectrumResult};
use crate::wavefn::{
    count_nodes, hamiltonian_residual, normalize, normalize_gauss_jacobi, overlap,
    overlap_gauss_jacobi, WavefunctionSpec,
};

pub const NORM_TOL: f64 = 1e-8;
pub const OVERLAP_TOL: f64 = 1e-8;
pub const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyEntry {
    pub molecule: String,
    pub alpha: f64,
    pub n: u32,
    pub closed_form: f64,
    /// `None` when the closed form has no bound state at this `n`.
    pub oracle: Option<f64>,
    pub rel_err: Option<f64>,
    pub grid_points: usize,
    pub extrapolated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WavefunctionCheck {
    pub molecule: String,
    pub alpha: f64,
    pub n: u32,
    pub log_bn: f64,
    /// `|<ψ|ψ> - 1|` under each quadrature.
    pub norm_error_adaptive: f64,
    pub norm_error_gauss_jacobi: f64,
    /// Largest `|<ψ_m|ψ_n>|` over `m < n`, both quadratures.
    pub max_overlap: f64,
    pub nodes: usize,
    /// `‖Hψ - Eψ‖ / ‖ψ‖` in eV.
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub header: Vec<String>,
    pub rel_tol: f64,
    pub entries: Vec<VerifyEntry>,
    pub wavefunctions: Vec<WavefunctionCheck>,
    pub breaches: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.breaches.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

struct Cell<'a> {
    molecule: &'a Molecule,
    alpha: f64,
}

fn oracle_cell(
    cfg: &RunConfig,
    cell: &Cell,
    levels: &[SpectrumResult],
) -> Result<(Vec<f64>, usize, bool)> {
    let m = cell.molecule;
    let p = cfg.mapping.params(m, cell.alpha, &cfg.constants)?;
    let bound = levels.iter().filter(|r| r.normalizable).count();
    if bound == 0 {
        return Ok((Vec::new(), cfg.grid_points, cfg.oracle_extrapolate));
    }
    let top = bound as u32 - 1;
    let res = if cfg.oracle_extrapolate {
        ga_levels(
            &p,
            &cfg.constants,
            m.mu,
            top,
            cfg.grid_points,
            cfg.oracle_rel_tol,
        )?
    } else {
        let (grid, k) = certification_grid(&p, &cfg.constants, m.mu, top, cfg.grid_points)?;
        solve_unextrapolated(
            |t| ga_unchecked(t, &p),
            &cfg.constants,
            m.mu,
            &grid,
            k,
            cfg.oracle_rel_tol,
        )?
    };
    Ok((res.eigenvalues, res.grid.points, res.extrapolated))
}

fn wavefunction_cell(
    cfg: &RunConfig,
    cell: &Cell,
    levels: &[SpectrumResult],
    breaches: &mut Vec<String>,
) -> Result<Vec<WavefunctionCheck>> {
    let m = cell.molecule;
    let p = cfg.mapping.params(m, cell.alpha, &cfg.constants)?;
    let mut specs: Vec<WavefunctionSpec> = Vec::new();
    let mut out = Vec::new();
    for res in levels.iter().filter(|r| r.normalizable) {
        let raw = WavefunctionSpec::from_level(res, &p, &cfg.constants, m.mu)?;
        let spec = normalize(&raw)?;
        let alt = normalize_gauss_jacobi(&raw)?;
        let norm_a = (overlap(&spec, &spec)? - 1.0).abs();
        // Norm of the adaptive-normalized state under Gauss-Jacobi.
        let norm_g = (overlap_gauss_jacobi(&spec, &spec)? - 1.0)
            .abs()
            .max((2.0 * (spec.log_bn - alt.log_bn)).exp_m1().abs());
        let mut max_overlap: f64 = 0.0;
        for other in &specs {
            max_overlap = max_overlap
                .max(overlap(other, &spec)?.abs())
                .max(overlap_gauss_jacobi(other, &spec)?.abs());
        }
        let nodes = count_nodes(&spec);
        let residual = hamiltonian_residual(&spec, res.pn)?;
        let tag = format!("{} alpha={} n={}", m.name, cell.alpha, res.n);
        if !(norm_a <= NORM_TOL && norm_g <= NORM_TOL) {
            breaches.push(format!("{tag}: norm error {norm_a:.3e} / {norm_g:.3e}"));
        }
        if !(max_overlap <= OVERLAP_TOL) {
            breaches.push(format!("{tag}: overlap {max_overlap:.3e}"));
        }
        if nodes != res.n as usize {
            breaches.push(format!("{tag}: {nodes} nodes"));
        }
        if !(residual <= RESIDUAL_TOL) {
            breaches.push(format!("{tag}: Hamiltonian residual {residual:.3e} eV"));
        }
        out.push(WavefunctionCheck {
            molecule: m.name.clone(),
            alpha: cell.alpha,
            n: res.n,
            log_bn: spec.log_bn,
            norm_error_adaptive: norm_a,
            norm_error_gauss_jacobi: norm_g,
            max_overlap,
            nodes,
            residual,
        });
        specs.push(spec);
    }
    Ok(out)
}

/// Solver failures propagate as errors; contract breaches are collected in
/// the report.
pub fn cmd_verify(
    cfg: &RunConfig,
    molecules: &[Molecule],
    wavefunctions: bool,
) -> Result<VerifyReport> {
    let mut report = VerifyReport {
        header: cfg.header_lines(),
        rel_tol: cfg.oracle_rel_tol,
        entries: Vec::new(),
        wavefunctions: Vec::new(),
        breaches: Vec::new(),
    };
    for m in molecules {
        for &alpha in &cfg.alphas {
            let cell = Cell { molecule: m, alpha };
            let p = cfg.mapping.params(m, alpha, &cfg.constants)?;
            let levels = (0..=cfg.n_max)
                .map(|n| momentum_eigenvalue(n, &p, &cfg.constants, m.mu))
                .collect::<Result<Vec<_>>>()?;
            let (oracle, grid_points, extrapolated) = oracle_cell(cfg, &cell, &levels)?;
            let mut bound = oracle.iter();
            for res in &levels {
                let found = if res.normalizable {
                    bound.next().copied()
                } else {
                    None
                };
                let rel_err = found.map(|o| ((o - res.pn) / res.pn).abs());
                if let Some(e) = rel_err {
                    if !(e <= cfg.oracle_rel_tol) {
                        report.breaches.push(format!(
                            "{} alpha={alpha} n={}: oracle rel_err {e:.3e}",
                            m.name, res.n
                        ));
                    }
                }
                report.entries.push(VerifyEntry {
                    molecule: m.name.clone(),
                    alpha,
                    n: res.n,
                    closed_form: res.pn,
                    oracle: found,
                    rel_err,
                    grid_points,
                    extrapolated,
                });
            }
            if wavefunctions {
                let checks = wavefunction_cell(cfg, &cell, &levels, &mut report.breaches)?;
                report.wavefunctions.extend(checks);
            }
        }
    }
    Ok(report)
}
