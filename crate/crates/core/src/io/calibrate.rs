//! Search for the table mapping and constants convention that reproduce a
//! target momentum column.

use serde::Serialize;

use super::config::{MappingStatus, RunConfig};
use crate::constants::PhysicalConstants;
use crate::mapping::{Basis, TableMapping, Term};
use crate::molecule::Molecule;
use crate::spectrum::momentum_eigenvalue;

/// Per-entry tolerance for locking a mapping, in eV/c.
pub const LOCK_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    pub label: String,
    pub mapping: TableMapping,
    pub convention: String,
    pub constants: PhysicalConstants,
}

#[derive(Debug, Clone, Serialize)]
pub struct CalibrationTarget {
    pub molecule: Molecule,
    pub alpha: f64,
    /// Momenta for n = 0, 1, ... in eV/c.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum CalibrationStatus {
    Locked,
    NotReproduced,
}

#[derive(Debug, Clone, Serialize)]
pub struct Residual {
    pub n: usize,
    pub target: f64,
    pub model: f64,
    pub residual: f64,
    pub normalizable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Scored {
    pub candidate: Candidate,
    /// Largest `|model - target|`; infinite when the candidate is invalid.
    pub max_abs_residual: f64,
    pub residuals: Vec<Residual>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CalibrationReport {
    pub status: CalibrationStatus,
    pub tolerance: f64,
    pub target: CalibrationTarget,
    pub candidates_evaluated: usize,
    pub best: Option<Scored>,
    /// `(label, max_abs_residual)`, best first.
    pub ranking: Vec<(String, f64)>,
}

impl CalibrationReport {
    /// `base` with the winning mapping and constants, marked locked or best-fit.
    pub fn calibrated_config(&self, base: &RunConfig) -> Option<RunConfig> {
        let best = self.best.as_ref()?;
        Some(RunConfig {
            constants: best.candidate.constants,
            mapping: best.candidate.mapping,
            mapping_status: match self.status {
                CalibrationStatus::Locked => MappingStatus::Locked,
                CalibrationStatus::NotReproduced => MappingStatus::BestFit,
            },
            ..base.clone()
        })
    }
}

/// The documented grid: A ∈ {±2teDe, ±teDe, 0, ±ze2}, D ∈ {0, De, 2De},
/// B = 2teDe, C = te²De, q = 1, under each named constants convention.
pub fn candidate_grid(conventions: &[(&str, PhysicalConstants)]) -> Vec<Candidate> {
    let a_terms = [
        Term::new(2.0, Basis::TeDe),
        Term::new(-2.0, Basis::TeDe),
        Term::new(1.0, Basis::TeDe),
        Term::new(-1.0, Basis::TeDe),
        Term::ZERO,
        Term::new(1.0, Basis::ZE2),
        Term::new(-1.0, Basis::ZE2),
    ];
    let d_terms = [
        Term::ZERO,
        Term::new(1.0, Basis::De),
        Term::new(2.0, Basis::De),
    ];
    let mut out = Vec::new();
    for (name, consts) in conventions {
        for a in a_terms {
            for d in d_terms {
                let mapping = TableMapping::kratzer_with(a, d);
                out.push(Candidate {
                    label: format!("{name}: {mapping}"),
                    mapping,
                    convention: name.to_string(),
                    constants: *consts,
                });
            }
        }
    }
    out
}

/// Spatial and natural conventions, plus the configured constants when they
/// differ from both.
pub fn default_conventions(
    configured: &PhysicalConstants,
) -> Vec<(&'static str, PhysicalConstants)> {
    let mut v = vec![
        ("spatial", PhysicalConstants::SPATIAL),
        ("natural", PhysicalConstants::NATURAL),
    ];
    if v.iter().all(|(_, c)| c != configured) {
        v.push(("configured", *configured));
    }
    v
}

pub fn score(candidate: &Candidate, target: &CalibrationTarget) -> Scored {
    let m = &target.molecule;
    let mut residuals = Vec::with_capacity(target.values.len());
    let mut worst: f64 = 0.0;
    let params = candidate
        .mapping
        .params(m, target.alpha, &candidate.constants);
    for (n, &want) in target.values.iter().enumerate() {
        let level = params
            .as_ref()
            .ok()
            .and_then(|p| momentum_eigenvalue(n as u32, p, &candidate.constants, m.mu).ok());
        let (model, normalizable) = level.map_or((f64::NAN, false), |r| (r.pn, r.normalizable));
        let residual = model - want;
        worst = if residual.is_finite() {
            worst.max(residual.abs())
        } else {
            f64::INFINITY
        };
        residuals.push(Residual {
            n,
            target: want,
            model,
            residual,
            normalizable,
        });
    }
    Scored {
        candidate: candidate.clone(),
        max_abs_residual: worst,
        residuals,
    }
}

/// Exhaustive search. The first candidate with the smallest worst-case
/// residual wins; it is locked when that residual is within [`LOCK_TOL`].
pub fn cmd_calibrate(candidates: &[Candidate], target: CalibrationTarget) -> CalibrationReport {
    let mut scored: Vec<Scored> = candidates.iter().map(|c| score(c, &target)).collect();
    // Stable sort keeps grid order among ties.
    scored.sort_by(|a, b| a.max_abs_residual.total_cmp(&b.max_abs_residual));
    let ranking = scored
        .iter()
        .map(|s| (s.candidate.label.clone(), s.max_abs_residual))
        .collect();
    let best = scored.into_iter().next();
    let status = match &best {
        Some(s) if s.max_abs_residual <= LOCK_TOL => CalibrationStatus::Locked,
        _ => CalibrationStatus::NotReproduced,
    };
    CalibrationReport {
        status,
        tolerance: LOCK_TOL,
        target,
        candidates_evaluated: candidates.len(),
        best,
        ranking,
    }
}
