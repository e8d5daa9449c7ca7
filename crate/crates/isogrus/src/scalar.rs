//! Coefficient rings containing a square root of −1.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{FromPrimitive, Num, One, Zero};

/// A commutative ring with a chosen `i`, `i² = −1`.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn imag() -> Self;

    fn from_int(v: i64) -> Self;

    /// Real and imaginary parts as integers, when both are integral.
    fn to_gauss(&self) -> Option<(i64, i64)>;
}

impl<T> Scalar for Complex<T>
where
    T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive + ToGauss,
{
    fn imag() -> Self {
        Complex::new(T::zero(), T::one())
    }

    fn from_int(v: i64) -> Self {
        Complex::new(T::from_i64(v).expect("integer fits the scalar type"), T::zero())
    }

    fn to_gauss(&self) -> Option<(i64, i64)> {
        Some((self.re.to_int()?, self.im.to_int()?))
    }
}

/// Exact integer view of a real scalar component.
pub trait ToGauss {
    fn to_int(&self) -> Option<i64>;
}

impl ToGauss for i64 {
    fn to_int(&self) -> Option<i64> {
        Some(*self)
    }
}

impl ToGauss for num_bigint::BigInt {
    fn to_int(&self) -> Option<i64> {
        num_traits::ToPrimitive::to_i64(self)
    }
}

impl ToGauss for f64 {
    fn to_int(&self) -> Option<i64> {
        if self.fract() == 0.0 && self.abs() < 9.0e15 {
            Some(*self as i64)
        } else {
            None
        }
    }
}

/// `(−1)^k`.
pub fn sign<R: Scalar>(k: isize) -> R {
    if k.rem_euclid(2) == 0 {
        R::one()
    } else {
        -R::one()
    }
}
