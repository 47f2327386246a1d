//! Mapping from spectroscopic molecule records to potential parameters.
//!
//! Each potential coefficient is a multiple of one molecule-derived basis
//! quantity, e.g. `B = 2*teDe`. The textual form round-trips through
//! `Display`/`FromStr` so mappings can live in config files.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::molecule::Molecule;
use crate::potential::PotentialParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    One,
    De,
    TeDe,
    Te2De,
    /// z·e², the Coulomb strength from the constants.
    ZE2,
}

impl Basis {
    fn value(self, m: &Molecule, consts: &PhysicalConstants) -> f64 {
        match self {
            Basis::One => 1.0,
            Basis::De => m.de,
            Basis::TeDe => m.te * m.de,
            Basis::Te2De => m.te * m.te * m.de,
            Basis::ZE2 => consts.z * consts.e2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Basis::One => "1",
            Basis::De => "De",
            Basis::TeDe => "teDe",
            Basis::Te2De => "te2De",
            Basis::ZE2 => "ze2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub basis: Basis,
}

impl Term {
    pub const ZERO: Term = Term {
        coef: 0.0,
        basis: Basis::One,
    };

    pub const fn new(coef: f64, basis: Basis) -> Self {
        Self { coef, basis }
    }

    pub fn eval(&self, m: &Molecule, consts: &PhysicalConstants) -> f64 {
        if self.coef == 0.0 {
            0.0
        } else {
            self.coef * self.basis.value(m, consts)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis {
            Basis::One => write!(f, "{}", self.coef),
            b => write!(f, "{}*{}", self.coef, b.label()),
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse mapping term `{s}`"));
        if let Ok(v) = s.parse::<f64>() {
            return Ok(Term::new(v, Basis::One));
        }
        let (coef, basis) = match s.split_once('*') {
            Some((c, b)) => (c.trim().parse::<f64>().map_err(|_| bad())?, b.trim()),
            None => match s.strip_prefix('-') {
                Some(b) => (-1.0, b),
                None => (1.0, s),
            },
        };
        let basis = match basis {
            "1" => Basis::One,
            "De" => Basis::De,
            "teDe" => Basis::TeDe,
            "te2De" => Basis::Te2De,
            "ze2" => Basis::ZE2,
            _ => return Err(bad()),
        };
        Ok(Term::new(coef, basis))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TableMapping {
    pub a: Term,
    pub b: Term,
    pub c: Term,
    pub d: Term,
    pub q: f64,
}

impl TableMapping {
    /// D = De, B = 2teDe, C = te²De, q = 1, with A supplied.
    pub const fn kratzer_with(a: Term, d: Term) -> Self {
        Self {
            a,
            b: Term::new(2.0, Basis::TeDe),
            c: Term::new(1.0, Basis::Te2De),
            d,
            q: 1.0,
        }
    }

    pub fn params(
        &self,
        m: &Molecule,
        alpha: f64,
        consts: &PhysicalConstants,
    ) -> Result<PotentialParams> {
        PotentialParams::new(
            self.a.eval(m, consts),
            self.b.eval(m, consts),
            self.c.eval(m, consts),
            self.d.eval(m, consts),
            self.q,
            alpha,
        )
    }
}

impl Default for TableMapping {
    fn default() -> Self {
        Self::kratzer_with(Term::ZERO, Term::new(1.0, Basis::De))
    }
}

impl fmt::Display for TableMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "A={} B={} C={} D={} q={}",
            self.a, self.b, self.c, self.d, self.q
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_text_round_trip() {
        for t in [
            Term::new(2.0, Basis::TeDe),
            Term::new(-1.0, Basis::ZE2),
            Term::new(0.0, Basis::One),
            Term::new(-2.5, Basis::One),
            Term::new(1.0, Basis::Te2De),
        ] {
            assert_eq!(t.to_string().parse::<Term>().unwrap(), t);
        }
        assert_eq!("De".parse::<Term>().unwrap(), Term::new(1.0, Basis::De));
        assert_eq!(
            "-teDe".parse::<Term>().unwrap(),
            Term::new(-1.0, Basis::TeDe)
        );
        assert!("3*foo".parse::<Term>().is_err());
    }

    #[test]
    fn default_mapping_values() {
        let co = crate::molecule::builtin_molecule("CO").unwrap();
        let p = TableMapping::default()
            .params(&co, 0.05, &PhysicalConstants::SPATIAL)
            .unwrap();
        assert_eq!(p.a, 0.0);
        assert_eq!(p.d, co.de);
        assert_eq!(p.b, 2.0 * co.te * co.de);
        assert_eq!(p.c, co.te * co.te * co.de);
        assert_eq!(p.alpha, 0.05);
    }

    #[test]
    fn coulomb_basis_uses_constants() {
        let co = crate::molecule::builtin_molecule("CO").unwrap();
        let c = PhysicalConstants::new(1.0, 1.0, 3.0, 2.0).unwrap();
        assert_eq!(Term::new(-1.0, Basis::ZE2).eval(&co, &c), -6.0);
    }
}
