//! Published momentum tables shipped as golden files.

use crate::error::{Error, Result};

pub const COLUMNS: [&str; 4] = ["CO", "NO", "O2", "I2"];
pub const ROWS: usize = 10;

const GOLDEN: [(f64, &str); 3] = [
    (0.001, include_str!("../../golden/table_alpha_0.001.csv")),
    (0.05, include_str!("../../golden/table_alpha_0.05.csv")),
    (0.1, include_str!("../../golden/table_alpha_0.1.csv")),
];

/// One reference table: `values[n][column]` in eV/c.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub alpha: f64,
    pub values: Vec<[f64; 4]>,
}

impl ReferenceTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = COLUMNS.iter().position(|c| c.eq_ignore_ascii_case(name))?;
        Some(self.values.iter().map(|row| row[j]).collect())
    }
}

fn parse(alpha: f64, text: &str) -> Result<ReferenceTable> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header != "n,CO,NO,O2,I2" {
        return Err(Error::Config(format!("golden header mismatch: `{header}`")));
    }
    let values = lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 || fields[0].parse::<usize>().ok() != Some(i) {
                return Err(Error::Config(format!("golden row {i} malformed")));
            }
            let mut row = [0.0; 4];
            for (slot, f) in row.iter_mut().zip(&fields[1..]) {
                *slot = f
                    .parse()
                    .map_err(|_| Error::Config(format!("golden value `{f}`")))?;
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReferenceTable { alpha, values })
}

/// All three reference tables, in ascending α.
pub fn tables() -> Vec<ReferenceTable> {
    GOLDEN
        .iter()
        .map(|(a, text)| parse(*a, text).expect("shipped golden files parse"))
        .collect()
}

pub fn table(alpha: f64) -> Option<ReferenceTable> {
    tables().into_iter().find(|t| t.alpha == alpha)
}

/// Calibration target: the CO column at the smallest α.
pub fn calibration_target() -> (f64, Vec<f64>) {
    let t = &tables()[0];
    (t.alpha, t.column("CO").expect("CO column"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_shape_and_anchors() {
        let all = tables();
        assert_eq!(all.len(), 3);
        for t in &all {
            assert_eq!(t.values.len(), ROWS);
        }
        assert_eq!(all[0].values[0][0], 1.540356974);
        assert_eq!(all[2].values[9][3], 1.0266);
        let (alpha, co) = calibration_target();
        assert_eq!(alpha, 0.001);
        let spacing: Vec<f64> = COLUMNS
            .iter()
            .map(|c| {
                let col = all[0].column(c).unwrap();
                col[1] - col[0]
            })
            .collect();
        let expected = [1.160097118, 0.9094, 0.6133, 0.0604];
        for (s, e) in spacing.iter().zip(expected) {
            assert!((s - e).abs() < 1e-9);
        }
        assert_eq!(co.len(), 10);
        assert!(table(0.05).is_some());
        assert!(table(0.2).is_none());
    }
}
