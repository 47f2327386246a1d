use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumOps, One, Signed, ToPrimitive, Zero};

/// Field arithmetic the reduction needs, plus a square root that may refuse
/// when the result would leave the field.
pub trait Scalar: Clone + Debug + PartialOrd + Zero + One + NumOps + Neg<Output = Self> {
    fn from_f64(v: f64) -> Option<Self>;
    fn from_int(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Square root of a non-negative value, if representable exactly.
    fn sqrt_exact(&self) -> Option<Self>;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_exact(&self) -> Option<Self> {
        // Round-off can push a zero discriminant slightly negative.
        if *self >= 0.0 {
            Some(self.sqrt())
        } else {
            None
        }
    }
}

fn int_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

impl Scalar for BigRational {
    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_exact(&self) -> Option<Self> {
        let n = int_sqrt(self.numer())?;
        let d = int_sqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }
}

/// Exact rational `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
