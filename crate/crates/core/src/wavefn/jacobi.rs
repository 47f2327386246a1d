use crate::error::{Error, Result};

fn check_indices(a: f64, b: f64) -> Result<()> {
    if !(a > -1.0) {
        return Err(Error::JacobiIndex {
            name: "a",
            value: a,
        });
    }
    if !(b > -1.0) {
        return Err(Error::JacobiIndex {
            name: "b",
            value: b,
        });
    }
    Ok(())
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence.
pub fn jacobi(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    check_indices(a, b)?;
    Ok(jacobi_unchecked(n, a, b, x))
}

pub(crate) fn jacobi_unchecked(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ab = a + b;
    let mut p_prev = 1.0;
    let mut p = 0.5 * (2.0 * (a + 1.0) + (ab + 2.0) * (x - 1.0));
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let a1 = 2.0 * k * (k + ab) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + (a - b) * ab);
        let a3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let next = (a2 * p - a3 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    p
}

/// `max(|P(1)|, |P(-1)|)`, which bounds `|P_n^{(a,b)}|` on [-1, 1] when
/// `a, b >= -1/2`.
pub fn jacobi_sup_bound(n: u32, a: f64, b: f64) -> f64 {
    binom(n as f64 + a, n)
        .abs()
        .max(binom(n as f64 + b, n).abs())
}

/// Generalized binomial `C(x, n)` for non-integer `x`.
pub fn binom(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, j| acc * (x - j as f64) / (j as f64 + 1.0))
}
