use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use super::scalar::Scalar;

/// Dense polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<T>(pub Vec<T>);

impl<T: Scalar> Poly<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: T) -> Self {
        Poly(vec![c])
    }

    pub fn coeff(&self, i: usize) -> T {
        self.0.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree ignoring trailing exact zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        self.0
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_int(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly(self.0.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly(self.0.iter().map(Scalar::to_f64).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| f(self.coeff(i), other.coeff(i))).collect())
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly(out)
    }
}

impl<T: Scalar> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<f64> = self.0.iter().map(Scalar::to_f64).collect();
        v.serialize(s)
    }
}
