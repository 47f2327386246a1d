//! Plot data for the potential and momentum figures. No rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::molecule::Molecule;
use crate::potential::{combined_potential, greene_aldrich_potential};
use crate::spectrum::{
    coulomb_momentum, kratzer_momentum, momentum_eigenvalue, screened_coulomb_momentum,
    SpectrumResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    PotentialVsT,
    PotentialVsTAlpha,
    PnVsAlpha,
    PnVsDe,
    KratzerPnVsDe,
    CoulombPnVsAlpha,
}

impl FigureKind {
    pub const ALL: [FigureKind; 6] = [
        Self::PotentialVsT,
        Self::PotentialVsTAlpha,
        Self::PnVsAlpha,
        Self::PnVsDe,
        Self::KratzerPnVsDe,
        Self::CoulombPnVsAlpha,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PotentialVsT => "potential_vs_t",
            Self::PotentialVsTAlpha => "potential_vs_t_alpha",
            Self::PnVsAlpha => "pn_vs_alpha",
            Self::PnVsDe => "pn_vs_de",
            Self::KratzerPnVsDe => "kratzer_pn_vs_de",
            Self::CoulombPnVsAlpha => "coulomb_pn_vs_alpha",
        }
    }
}

impl FromStr for FigureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
                Error::Usage(format!(
                    "unknown figure `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// One CSV file of figure data. Missing values (unbound levels) are NaN.
#[derive(Debug, Clone)]
pub struct FigureData {
    pub file_stem: String,
    pub notes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureData {
    pub fn to_csv(&self, cfg: &RunConfig) -> String {
        let mut s = String::new();
        for line in cfg.header_lines().iter().chain(&self.notes) {
            let _ = writeln!(s, "# {line}");
        }
        let _ = writeln!(s, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|v| {
                    if v.is_finite() {
                        format!("{v:.9e}")
                    } else {
                        String::new()
                    }
                })
                .collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .collect(),
    }
}

/// Log-spaced, so small α (where the interesting crossings sit) is dense.
fn logspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), points)
        .into_iter()
        .map(f64::exp)
        .collect()
}

fn level_columns(prefix: &str, n_max: u32) -> Vec<String> {
    (0..=n_max)
        .map(|n| format!("{prefix}{n}_eV_per_c"))
        .collect()
}

fn bound_value(r: &SpectrumResult) -> f64 {
    if r.normalizable {
        r.pn
    } else {
        f64::NAN
    }
}

/// α where level `n` leaves the bound spectrum, by bisection between the
/// grid samples that bracket the change.
fn crossings<F>(grid: &[f64], n_max: u32, bound: F) -> Vec<String>
where
    F: Fn(u32, f64) -> Result<bool>,
{
    let mut notes = Vec::new();
    for n in 0..=n_max {
        let flags: Vec<Option<bool>> = grid.iter().map(|a| bound(n, *a).ok()).collect();
        for (i, w) in flags.windows(2).enumerate() {
            let (Some(left), Some(right)) = (w[0], w[1]) else {
                continue;
            };
            if left == right {
                continue;
            }
            let (mut lo, mut hi) = (grid[i], grid[i + 1]);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if bound(n, mid).ok() == Some(left) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let direction = if left { "unbound" } else { "bound" };
            notes.push(format!(
                "crossing: n = {n} becomes {direction} at alpha = {:.9e}",
                0.5 * (lo + hi)
            ));
        }
    }
    notes
}

fn potential_vs_t(cfg: &RunConfig, m: &Molecule) -> Result<FigureData> {
    let alpha = cfg.alphas[0];
    let p = cfg.mapping.params(m, alpha, &cfg.constants)?;
    let f = &cfg.figures;
    let rows = linspace(f.t_min, f.t_max, f.t_points)
        .into_iter()
        .map(|t| {
            Ok(vec![
                t,
                combined_potential(t, &p)?,
                greene_aldrich_potential(t, &p)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FigureData {
        file_stem: String::new(),
        notes: vec![format!("alpha_inverse_timeunit = {alpha}")],
        columns: vec![
            "t".into(),
            "V_exact_eV".into(),
            "V_greene_aldrich_eV".into(),
        ],
        rows,
    })
}

fn potential_vs_t_alpha(cfg: &RunConfig, m: &Molecule) -> Result<FigureData> {
    let f = &cfg.figures;
    let params = f
        .potential_alphas
        .iter()
        .map(|a| cfg.mapping.params(m, *a, &cfg.constants))
        .collect::<Result<Vec<_>>>()?;
    let rows = linspace(f.t_min, f.t_max, f.t_points)
        .into_iter()
        .map(|t| {
            let mut row = vec![t];
            for p in &params {
                row.push(combined_potential(t, p)?);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut columns = vec!["t".to_string()];
    columns.extend(f.potential_alphas.iter().map(|a| format!("V_alpha_{a}_eV")));
    Ok(FigureData {
        file_stem: String::new(),
        notes: Vec::new(),
        columns,
        rows,
    })
}

fn pn_vs_alpha(cfg: &RunConfig, m: &Molecule) -> Result<FigureData> {
    let f = &cfg.figures;
    let grid = logspace(f.alpha_min, f.alpha_max, f.alpha_points);
    let level = |n: u32, a: f64| {
        let p = cfg.mapping.params(m, a, &cfg.constants)?;
        momentum_eigenvalue(n, &p, &cfg.constants, m.mu)
    };
    let mut rows = Vec::with_capacity(grid.len());
    for &a in &grid {
        let p = cfg.mapping.params(m, a, &cfg.constants)?;
        let mut row = vec![a, p.ga_threshold()];
        for n in 0..=cfg.n_max {
            row.push(bound_value(&level(n, a)?));
        }
        rows.push(row);
    }
    let mut columns = vec!["alpha".to_string(), "threshold_eV".to_string()];
    columns.extend(level_columns("P", cfg.n_max));
    Ok(FigureData {
        file_stem: String::new(),
        notes: crossings(&grid, cfg.n_max, |n, a| Ok(level(n, a)?.normalizable)),
        columns,
        rows,
    })
}

fn pn_vs_de(cfg: &RunConfig, m: &Molecule) -> Result<FigureData> {
    let f = &cfg.figures;
    let mut rows = Vec::new();
    for de in linspace(f.de_min, f.de_max, f.de_points) {
        let scaled = Molecule { de, ..m.clone() };
        let p = cfg.mapping.params(&scaled, f.de_alpha, &cfg.constants)?;
        let mut row = vec![de];
        for n in 0..=cfg.n_max {
            row.push(bound_value(&momentum_eigenvalue(
                n,
                &p,
                &cfg.constants,
                m.mu,
            )?));
        }
        rows.push(row);
    }
    let mut columns = vec!["De_eV".to_string()];
    columns.extend(level_columns("P", cfg.n_max));
    Ok(FigureData {
        file_stem: String::new(),
        notes: vec![format!("alpha_inverse_timeunit = {}", f.de_alpha)],
        columns,
        rows,
    })
}

fn kratzer_pn_vs_de(cfg: &RunConfig, m: &Molecule) -> Result<FigureData> {
    let f = &cfg.figures;
    let mut rows = Vec::new();
    for de in linspace(f.de_min, f.de_max, f.de_points) {
        let scaled = Molecule { de, ..m.clone() };
        let mut row = vec![de];
        for n in 0..=cfg.n_max {
            row.push(kratzer_momentum(n, &scaled, &cfg.constants)?.pn);
        }
        rows.push(row);
    }
    let mut columns = vec!["De_eV".to_string()];
    columns.extend(level_columns("P", cfg.n_max));
    Ok(FigureData {
        file_stem: String::new(),
        notes: Vec::new(),
        columns,
        rows,
    })
}

fn coulomb_pn_vs_alpha(cfg: &RunConfig, m: &Molecule) -> Result<FigureData> {
    let f = &cfg.figures;
    let z = cfg.constants.z;
    let grid = logspace(f.alpha_min, f.alpha_max, f.alpha_points);
    let level = |n: u32, a: f64| screened_coulomb_momentum(n, z, a, &cfg.constants, m.mu);
    let mut rows = Vec::with_capacity(grid.len());
    for &a in &grid {
        let mut row = vec![a];
        for n in 0..=cfg.n_max {
            row.push(bound_value(&level(n, a)?));
        }
        for n in 0..=cfg.n_max {
            row.push(coulomb_momentum(n, z, &cfg.constants, m.mu));
        }
        rows.push(row);
    }
    let mut columns = vec!["alpha".to_string()];
    columns.extend(level_columns("P", cfg.n_max));
    columns.extend(level_columns("P_coulomb", cfg.n_max));
    Ok(FigureData {
        file_stem: String::new(),
        notes: crossings(&grid, cfg.n_max, |n, a| Ok(level(n, a)?.normalizable)),
        columns,
        rows,
    })
}

/// One [`FigureData`] per molecule, named `<figure>_<molecule>`.
pub fn cmd_figure_data(
    kind: FigureKind,
    cfg: &RunConfig,
    molecules: &[Molecule],
) -> Result<Vec<FigureData>> {
    molecules
        .iter()
        .map(|m| {
            let mut data = match kind {
                FigureKind::PotentialVsT => potential_vs_t(cfg, m),
                FigureKind::PotentialVsTAlpha => potential_vs_t_alpha(cfg, m),
                FigureKind::PnVsAlpha => pn_vs_alpha(cfg, m),
                FigureKind::PnVsDe => pn_vs_de(cfg, m),
                FigureKind::KratzerPnVsDe => kratzer_pn_vs_de(cfg, m),
                FigureKind::CoulombPnVsAlpha => coulomb_pn_vs_alpha(cfg, m),
            }?;
            data.file_stem = format!("{}_{}", kind.name(), m.name);
            data.notes
                .insert(0, format!("figure: {} molecule: {}", kind.name(), m.name));
            Ok(data)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::PhysicalConstants;
    use crate::molecule::builtin;

    #[test]
    fn names_round_trip() {
        for k in FigureKind::ALL {
            assert_eq!(k.name().parse::<FigureKind>().unwrap(), k);
        }
        assert!(matches!("fig7".parse::<FigureKind>(), Err(Error::Usage(_))));
    }

    #[test]
    fn two_point_potential_grid() {
        let mut cfg = RunConfig::default();
        cfg.figures.t_points = 2;
        let out = cmd_figure_data(FigureKind::PotentialVsT, &cfg, &builtin()).unwrap();
        assert_eq!(out.len(), 4);
        assert_eq!(out[0].rows.len(), 2);
        assert_eq!(out[0].file_stem, "potential_vs_t_CO");
        let csv = out[0].to_csv(&cfg);
        assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 3);
    }

    #[test]
    fn pn_increases_with_de() {
        let mut cfg = RunConfig {
            constants: PhysicalConstants::NATURAL,
            n_max: 2,
            ..RunConfig::default()
        };
        cfg.figures.de_points = 40;
        for fig in cmd_figure_data(FigureKind::PnVsDe, &cfg, &builtin()).unwrap() {
            for w in fig.rows.windows(2) {
                for (col, (lo, hi)) in w[0].iter().zip(&w[1]).enumerate().skip(1) {
                    if lo.is_finite() && hi.is_finite() {
                        assert!(hi > lo, "{} column {col}", fig.file_stem);
                    }
                }
            }
        }
    }

    #[test]
    fn screened_coulomb_levels_cross_into_continuum() {
        let mut cfg = RunConfig {
            constants: PhysicalConstants::NATURAL,
            n_max: 3,
            ..RunConfig::default()
        };
        cfg.figures.alpha_points = 200;
        let figs = cmd_figure_data(FigureKind::CoulombPnVsAlpha, &cfg, &builtin()).unwrap();
        assert!(figs[0].notes.iter().any(|n| n.contains("crossing")));
    }
}
