//! Diatomic molecule records and CSV ingestion.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Molecule {
    pub name: String,
    /// Dissociation energy (eV).
    #[serde(rename = "De_eV")]
    pub de: f64,
    /// Equilibrium point (time unit).
    pub te: f64,
    /// Reduced mass (a.m.u.).
    #[serde(rename = "mu_amu")]
    pub mu: f64,
}

impl Molecule {
    pub fn new(name: impl Into<String>, de: f64, te: f64, mu: f64) -> Result<Self> {
        let m = Self {
            name: name.into(),
            de,
            te,
            mu,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("De", self.de), ("te", self.te), ("mu", self.mu)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter(format!(
                    "molecule {}: {field} must be positive, got {v}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

const BUILTIN: [(&str, f64, f64, f64); 4] = [
    ("CO", 10.84514471, 1.1282, 6.860586000),
    ("NO", 8.043782568, 1.1508, 7.468441000),
    ("O2", 5.156658828, 1.2080, 7.997457504),
    ("I2", 1.581791863, 2.6620, 63.45223502),
];

/// CO, NO, O2 and I2, in table order.
pub fn builtin() -> Vec<Molecule> {
    BUILTIN
        .iter()
        .map(|&(name, de, te, mu)| Molecule {
            name: name.to_string(),
            de,
            te,
            mu,
        })
        .collect()
}

pub fn builtin_molecule(name: &str) -> Option<Molecule> {
    find(&builtin(), name).cloned()
}

pub fn find<'a>(list: &'a [Molecule], name: &str) -> Option<&'a Molecule> {
    list.iter().find(|m| m.name.eq_ignore_ascii_case(name))
}

/// Reads records with header `name,De_eV,te,mu_amu`.
pub fn read_csv<R: Read>(reader: R) -> Result<Vec<Molecule>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let expected = ["name", "De_eV", "te", "mu_amu"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Config(format!(
            "molecule CSV header must be `{}`, got `{}`",
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for rec in rdr.deserialize() {
        let m: Molecule = rec?;
        m.validate()?;
        out.push(m);
    }
    Ok(out)
}

pub fn load_csv(path: &Path) -> Result<Vec<Molecule>> {
    read_csv(std::fs::File::open(path)?)
}
