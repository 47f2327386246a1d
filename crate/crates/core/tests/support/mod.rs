#![allow(dead_code)]

use fh_spectra::io::calibrate::{
    candidate_grid, cmd_calibrate, default_conventions, CalibrationReport, CalibrationTarget,
};
use fh_spectra::io::reference::calibration_target;
use fh_spectra::io::RunConfig;
use fh_spectra::molecule::builtin_molecule;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Calibration against the reference CO column, with the default grid.
pub fn calibration() -> CalibrationReport {
    let (alpha, values) = calibration_target();
    let base = RunConfig::default();
    cmd_calibrate(
        &candidate_grid(&default_conventions(&base.constants)),
        CalibrationTarget {
            molecule: builtin_molecule("CO").unwrap(),
            alpha,
            values,
        },
    )
}

/// Default run config carrying the calibrated (locked or best-fit) mapping.
pub fn calibrated_config() -> RunConfig {
    calibration()
        .calibrated_config(&RunConfig::default())
        .expect("non-empty candidate grid")
}

/// `P_n^{(a,b)}(x)` from the terminating hypergeometric series
/// `(a+1)_n/n! · 2F1(-n, n+a+b+1; a+1; (1-x)/2)`, summed exactly over the
/// rationals that the f64 inputs represent.
pub fn jacobi_series_exact(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let q = |v: f64| BigRational::from_float(v).expect("finite");
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let (a, b, x) = (q(a), q(b), q(x));
    let z = (int(1) - x) / int(2);
    let c = a.clone() + int(1);
    let top = a.clone() + b + int(n as i64 + 1);
    // prefactor (a+1)_n / n!
    let mut pre = BigRational::one();
    for k in 0..n as i64 {
        pre = pre * (c.clone() + int(k)) / int(k + 1);
    }
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for k in 0..=n as i64 {
        sum += term.clone();
        if k == n as i64 {
            break;
        }
        term = term * (int(k) - int(n as i64)) * (top.clone() + int(k))
            / ((c.clone() + int(k)) * int(k + 1))
            * z.clone();
    }
    (pre * sum).to_f64().unwrap_or(f64::NAN)
}
