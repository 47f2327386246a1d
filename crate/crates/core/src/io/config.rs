//! Flat `key = value` run configuration. Every key names its unit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::mapping::{TableMapping, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::Usage(format!(
                "unknown output format `{s}` (csv|json)"
            ))),
        }
    }
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingStatus {
    /// No mapping chosen; table generation refuses to run.
    Unset,
    /// Reproduces the reference column within tolerance.
    Locked,
    /// Best available candidate, reference not reproduced.
    BestFit,
    /// Set by hand.
    Manual,
}

impl MappingStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unset => "unset",
            Self::Locked => "locked",
            Self::BestFit => "best-fit",
            Self::Manual => "manual",
        }
    }
}

impl FromStr for MappingStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unset" => Ok(Self::Unset),
            "locked" => Ok(Self::Locked),
            "best-fit" => Ok(Self::BestFit),
            "manual" => Ok(Self::Manual),
            _ => Err(Error::Config(format!("unknown mapping_status `{s}`"))),
        }
    }
}

/// Sampling ranges for figure data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureRanges {
    pub t_min: f64,
    pub t_max: f64,
    pub t_points: usize,
    pub potential_alphas: Vec<f64>,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_points: usize,
    pub de_min: f64,
    pub de_max: f64,
    pub de_points: usize,
    pub de_alpha: f64,
}

impl Default for FigureRanges {
    fn default() -> Self {
        Self {
            t_min: 0.5,
            t_max: 6.0,
            t_points: 501,
            potential_alphas: vec![0.001, 0.05, 0.1, 0.5],
            alpha_min: 0.001,
            alpha_max: 5.0,
            alpha_points: 2000,
            de_min: 0.5,
            de_max: 12.0,
            de_points: 231,
            de_alpha: 0.005,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub constants: PhysicalConstants,
    pub mapping: TableMapping,
    pub mapping_status: MappingStatus,
    pub alphas: Vec<f64>,
    pub n_max: u32,
    pub output_format: OutputFormat,
    pub output_dir: PathBuf,
    pub molecules_csv: Option<PathBuf>,
    /// Coarsest oracle grid, nodes including endpoints.
    pub grid_points: usize,
    pub oracle_rel_tol: f64,
    pub oracle_extrapolate: bool,
    pub figures: FigureRanges,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::default(),
            mapping: TableMapping::default(),
            mapping_status: MappingStatus::Unset,
            alphas: vec![0.001, 0.05, 0.1],
            n_max: 9,
            output_format: OutputFormat::Csv,
            output_dir: PathBuf::from("out"),
            molecules_csv: None,
            grid_points: 2001,
            oracle_rel_tol: 1e-6,
            oracle_extrapolate: true,
            figures: FigureRanges::default(),
        }
    }
}

fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| format!("{x}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|x| parse_num(key, x.trim())).collect()
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("bad value `{v}` for {key}")))
}

impl RunConfig {
    /// Canonical text form; parsing it back gives the same config.
    pub fn to_text(&self) -> String {
        let c = &self.constants;
        let m = &self.mapping;
        let f = &self.figures;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(s, "{k} = {v}");
        };
        kv("hbar_c_ev_timeunit", format!("{}", c.hbar_c));
        kv("amu_energy_ev", format!("{}", c.amu_energy));
        kv("e2_ev_timeunit", format!("{}", c.e2));
        kv("z_charge", format!("{}", c.z));
        kv("mapping_a_ev_timeunit", m.a.to_string());
        kv("mapping_b_ev_timeunit", m.b.to_string());
        kv("mapping_c_ev_timeunit2", m.c.to_string());
        kv("mapping_d_ev", m.d.to_string());
        kv("mapping_q", format!("{}", m.q));
        kv("mapping_status", self.mapping_status.as_str().into());
        kv("alpha_inverse_timeunit", join(&self.alphas));
        kv("n_max", self.n_max.to_string());
        kv("output_format", self.output_format.as_str().into());
        kv("output_dir", self.output_dir.display().to_string());
        if let Some(p) = &self.molecules_csv {
            kv("molecules_csv", p.display().to_string());
        }
        kv("grid_points", self.grid_points.to_string());
        kv("oracle_rel_tol", format!("{:e}", self.oracle_rel_tol));
        kv("oracle_extrapolate", self.oracle_extrapolate.to_string());
        kv("figure_t_min_timeunit", format!("{}", f.t_min));
        kv("figure_t_max_timeunit", format!("{}", f.t_max));
        kv("figure_t_points", f.t_points.to_string());
        kv(
            "figure_potential_alphas_inverse_timeunit",
            join(&f.potential_alphas),
        );
        kv(
            "figure_alpha_min_inverse_timeunit",
            format!("{}", f.alpha_min),
        );
        kv(
            "figure_alpha_max_inverse_timeunit",
            format!("{}", f.alpha_max),
        );
        kv("figure_alpha_points", f.alpha_points.to_string());
        kv("figure_de_min_ev", format!("{}", f.de_min));
        kv("figure_de_max_ev", format!("{}", f.de_max));
        kv("figure_de_points", f.de_points.to_string());
        kv(
            "figure_de_alpha_inverse_timeunit",
            format!("{}", f.de_alpha),
        );
        s
    }

    /// First 16 hex digits of the SHA-256 of [`RunConfig::to_text`], with
    /// `output_dir` left out so the destination does not change the fingerprint.
    pub fn hash(&self) -> String {
        let text: String = self
            .to_text()
            .lines()
            .filter(|l| !l.starts_with("output_dir "))
            .flat_map(|l| [l, "\n"])
            .collect();
        let digest = Sha256::digest(text.as_bytes());
        hex::encode(&digest[..8])
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        let f = &mut self.figures;
        match key {
            "hbar_c_ev_timeunit" => self.constants.hbar_c = parse_num(key, v)?,
            "amu_energy_ev" => self.constants.amu_energy = parse_num(key, v)?,
            "e2_ev_timeunit" => self.constants.e2 = parse_num(key, v)?,
            "z_charge" => self.constants.z = parse_num(key, v)?,
            "mapping_a_ev_timeunit" => self.mapping.a = v.parse::<Term>()?,
            "mapping_b_ev_timeunit" => self.mapping.b = v.parse::<Term>()?,
            "mapping_c_ev_timeunit2" => self.mapping.c = v.parse::<Term>()?,
            "mapping_d_ev" => self.mapping.d = v.parse::<Term>()?,
            "mapping_q" => self.mapping.q = parse_num(key, v)?,
            "mapping_status" => self.mapping_status = v.parse()?,
            "alpha_inverse_timeunit" => self.alphas = parse_list(key, v)?,
            "n_max" => self.n_max = parse_num(key, v)?,
            "output_format" => self.output_format = v.parse()?,
            "output_dir" => self.output_dir = PathBuf::from(v),
            "molecules_csv" => self.molecules_csv = Some(PathBuf::from(v)),
            "grid_points" => self.grid_points = parse_num(key, v)?,
            "oracle_rel_tol" => self.oracle_rel_tol = parse_num(key, v)?,
            "oracle_extrapolate" => self.oracle_extrapolate = parse_num(key, v)?,
            "figure_t_min_timeunit" => f.t_min = parse_num(key, v)?,
            "figure_t_max_timeunit" => f.t_max = parse_num(key, v)?,
            "figure_t_points" => f.t_points = parse_num(key, v)?,
            "figure_potential_alphas_inverse_timeunit" => f.potential_alphas = parse_list(key, v)?,
            "figure_alpha_min_inverse_timeunit" => f.alpha_min = parse_num(key, v)?,
            "figure_alpha_max_inverse_timeunit" => f.alpha_max = parse_num(key, v)?,
            "figure_alpha_points" => f.alpha_points = parse_num(key, v)?,
            "figure_de_min_ev" => f.de_min = parse_num(key, v)?,
            "figure_de_max_ev" => f.de_max = parse_num(key, v)?,
            "figure_de_points" => f.de_points = parse_num(key, v)?,
            "figure_de_alpha_inverse_timeunit" => f.de_alpha = parse_num(key, v)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.constants.validate()?;
        if self.alphas.is_empty() {
            return Err(Error::Config(
                "alpha_inverse_timeunit must list at least one value".into(),
            ));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(**a > 0.0 && a.is_finite())) {
            return Err(Error::Config(format!(
                "alpha values must be positive, got {a}"
            )));
        }
        if !(self.oracle_rel_tol > 0.0) {
            return Err(Error::Config("oracle_rel_tol must be positive".into()));
        }
        Ok(())
    }

    /// Header lines shared by every artifact.
    pub fn header_lines(&self) -> Vec<String> {
        let c = &self.constants;
        vec![
            format!("config_sha256_16 = {}", self.hash()),
            format!(
                "constants: hbar_c = {} eV*unit, amu_energy = {} eV, e2 = {} eV*unit, z = {}",
                c.hbar_c, c.amu_energy, c.e2, c.z
            ),
            format!(
                "mapping: {} ({})",
                self.mapping,
                self.mapping_status.as_str()
            ),
        ]
    }
}
