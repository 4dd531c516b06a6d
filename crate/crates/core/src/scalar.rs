//! Scalar field abstraction.
//!
//! Every algorithm in the crate is written against [`Scalar`], which is
//! implemented for arbitrary-precision rationals (exact mode) and for `f32` /
//! `f64` (float mode). Exact mode never rounds; float mode compares with a
//! fixed relative tolerance.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A field element usable by the linear algebra and tensor code.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact (comparisons are equality tests).
    const EXACT: bool;

    /// Relative tolerance for float comparisons (unused in exact mode).
    const REL_TOL: f64;

    /// Absolute tolerance applied when the reference value is zero.
    const ABS_TOL: f64;

    /// Builds `num / den`. Panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Builds a scalar from arbitrary-size integers. Panics if `den == 0`.
    fn from_big_ratio(num: BigInt, den: BigInt) -> Self;

    fn to_f64(&self) -> f64;

    /// Zero test relative to a magnitude `scale` (exact mode ignores `scale`).
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Equality in exact mode, tolerance comparison in float mode.
    fn approx_eq(&self, other: &Self) -> bool;

    /// Canonical text form: `"p/q"` or `"p"` for rationals, shortest
    /// round-trip representation for floats.
    fn to_report_string(&self) -> String;

    /// Sign with the zero test of [`Scalar::is_negligible`].
    fn sign_relative(&self, scale: &Self) -> i8 {
        if self.is_negligible(scale) {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn approx_zero(&self) -> bool {
        self.approx_eq(&Self::zero())
    }

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

/// Exact rational scalar.
pub type Rational = BigRational;

impl Scalar for BigRational {
    const EXACT: bool = true;
    const REL_TOL: f64 = 0.0;
    const ABS_TOL: f64 = 0.0;

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_big_ratio(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        BigRational::new(num, den)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn to_report_string(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $rel:expr, $abs:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;
            const REL_TOL: f64 = $rel;
            const ABS_TOL: f64 = $abs;

            fn from_ratio(num: i64, den: i64) -> Self {
                assert!(den != 0, "zero denominator");
                (num as f64 / den as f64) as $t
            }

            fn from_big_ratio(num: BigInt, den: BigInt) -> Self {
                assert!(!den.is_zero(), "zero denominator");
                let q = BigRational::new(num, den);
                ToPrimitive::to_f64(&q).unwrap_or(f64::NAN) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn is_negligible(&self, scale: &Self) -> bool {
                (self.abs() as f64) <= $abs + $rel * (scale.abs() as f64)
            }

            fn approx_eq(&self, other: &Self) -> bool {
                let diff = (self - other).abs() as f64;
                let mag = self.abs().max(other.abs()) as f64;
                if mag == 0.0 {
                    return true;
                }
                diff <= $abs || diff <= $rel * mag
            }

            fn to_report_string(&self) -> String {
                format!("{:?}", self)
            }
        }
    };
}

impl_float_scalar!(f64, 1e-9, 1e-12);
impl_float_scalar!(f32, 1e-5, 1e-6);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_report_strings() {
        assert_eq!(Rational::from_ratio(6, 4).to_report_string(), "3/2");
        assert_eq!(Rational::from_ratio(-4, 2).to_report_string(), "-2");
        assert_eq!(Rational::zero().to_report_string(), "0");
    }

    #[test]
    fn float_tolerance() {
        assert!(1.0f64.approx_eq(&(1.0 + 1e-12)));
        assert!(!1.0f64.approx_eq(&1.001));
        assert!(0.0f64.approx_eq(&1e-13));
        assert!(!0.0f64.approx_eq(&1e-6));
        assert!(1e-14f64.is_negligible(&1.0));
        assert_eq!((-3.0f64).sign_relative(&1.0), -1);
    }

    #[test]
    fn exact_comparison_is_equality() {
        let a = Rational::from_ratio(1, 3);
        let b = Rational::from_ratio(1, 3) + Rational::from_ratio(1, 1_000_000_000_000);
        assert!(!a.approx_eq(&b));
        assert!(a.approx_eq(&Rational::from_ratio(2, 6)));
    }
}
