//! Momentum tables: one per α, rows n, columns molecules.

use std::fmt::Write as _;

use serde::Serialize;

use super::config::{MappingStatus, RunConfig};
use super::reference::ReferenceTable;
use crate::error::{Error, Result};
use crate::molecule::Molecule;
use crate::spectrum::{momentum_eigenvalue, SpectrumResult};

#[derive(Debug, Clone, Serialize)]
pub struct MomentumTable {
    pub alpha: f64,
    pub molecules: Vec<String>,
    /// `rows[n][column]`.
    pub rows: Vec<Vec<SpectrumResult>>,
}

impl MomentumTable {
    pub fn value(&self, n: usize, molecule: &str) -> Option<f64> {
        let j = self
            .molecules
            .iter()
            .position(|m| m.eq_ignore_ascii_case(molecule))?;
        self.rows.get(n).map(|row| row[j].pn)
    }

    pub fn column(&self, molecule: &str) -> Option<Vec<f64>> {
        (0..self.rows.len())
            .map(|n| self.value(n, molecule))
            .collect()
    }

    fn unbound(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (name, res) in self.molecules.iter().zip(row) {
                if !res.normalizable {
                    out.push(format!("{name} n={} (eps1 = {:.6e})", res.n, res.eps1));
                }
            }
        }
        out
    }

    pub fn to_csv(&self, cfg: &RunConfig) -> String {
        let mut s = String::new();
        for line in cfg.header_lines() {
            let _ = writeln!(s, "# {line}");
        }
        let _ = writeln!(s, "# alpha_inverse_timeunit = {}", self.alpha);
        let _ = writeln!(s, "# units: eV/c");
        let unbound = self.unbound();
        if !unbound.is_empty() {
            let _ = writeln!(s, "# not normalizable: {}", unbound.join("; "));
        }
        let _ = writeln!(s, "n,{}", self.molecules.join(","));
        for (n, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|r| format!("{:.9}", r.pn)).collect();
            let _ = writeln!(s, "{n},{}", cells.join(","));
        }
        s
    }

    pub fn to_json(&self, cfg: &RunConfig) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            header: Vec<String>,
            units: &'static str,
            table: &'a MomentumTable,
        }
        let doc = Doc {
            header: cfg.header_lines(),
            units: "eV/c",
            table: self,
        };
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }
}

/// Fails unless the configuration carries a usable mapping.
pub fn require_mapping(cfg: &RunConfig) -> Result<()> {
    if cfg.mapping_status == MappingStatus::Unset {
        return Err(Error::Usage(
            "no table mapping is set; run `calibrate` first and pass its calibrated.conf via --config, \
             or set mapping_status = manual"
                .into(),
        ));
    }
    Ok(())
}

pub fn build(cfg: &RunConfig, molecules: &[Molecule], alpha: f64) -> Result<MomentumTable> {
    let rows = (0..=cfg.n_max)
        .map(|n| {
            molecules
                .iter()
                .map(|m| {
                    let p = cfg.mapping.params(m, alpha, &cfg.constants)?;
                    momentum_eigenvalue(n, &p, &cfg.constants, m.mu)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MomentumTable {
        alpha,
        molecules: molecules.iter().map(|m| m.name.clone()).collect(),
        rows,
    })
}

/// Every table in the configuration, after the mapping check.
pub fn cmd_table(cfg: &RunConfig, molecules: &[Molecule]) -> Result<Vec<MomentumTable>> {
    require_mapping(cfg)?;
    cfg.alphas
        .iter()
        .map(|a| build(cfg, molecules, *a))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryResidual {
    pub alpha: f64,
    pub molecule: String,
    pub n: usize,
    pub emitted: f64,
    pub reference: f64,
    pub residual: f64,
}

/// Entry-wise `emitted - reference` over the shared rows and columns.
pub fn compare(table: &MomentumTable, reference: &ReferenceTable) -> Vec<EntryResidual> {
    let mut out = Vec::new();
    for name in &table.molecules {
        let Some(refcol) = reference.column(name) else {
            continue;
        };
        for (n, expected) in refcol.iter().enumerate().take(table.rows.len()) {
            let emitted = table.value(n, name).unwrap_or(f64::NAN);
            out.push(EntryResidual {
                alpha: table.alpha,
                molecule: name.clone(),
                n,
                emitted,
                reference: *expected,
                residual: emitted - expected,
            });
        }
    }
    out
}
