//! Scalars that characters can carry.
//!
//! Characters are manipulated generically so that the same formulas run in
//! exact arithmetic (rationals, number-field elements) and in `f64` for
//! graphs where only numeric roots are available. Constants are built "like"
//! an existing value because a number-field constant needs its modulus.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::algebra::{rational, NumberFieldElem, Rational};
use crate::error::{Error, Result};

pub trait Scalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// An integer constant in the same ring as `self`.
    fn int_like(&self, n: i64) -> Self;

    fn try_inv(&self) -> Result<Self>;

    /// Exact types ignore `tol` and test for exact zero.
    fn is_zero_within(&self, tol: f64) -> bool;

    /// Comparison with 1 when the ring is ordered.
    fn cmp_one(&self) -> Option<Ordering>;

    /// Magnitude for reporting: exact types give 0 for zero and `None`
    /// when no real embedding is attached.
    fn magnitude(&self) -> Option<f64>;

    fn zero_like(&self) -> Self {
        self.int_like(0)
    }

    fn one_like(&self) -> Self {
        self.int_like(1)
    }

    fn is_one_exactly(&self) -> bool {
        (self.clone() - self.one_like()).is_zero_within(0.0)
    }

    fn try_div(&self, denom: &Self) -> Result<Self> {
        Ok(self.clone() * denom.try_inv()?)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// `1 + t + ... + t^k`, zero for `k < 0`.
pub fn geometric_sum<S: Scalar>(t: &S, k: i64) -> S {
    let mut acc = t.zero_like();
    if k < 0 {
        return acc;
    }
    let mut term = t.one_like();
    for _ in 0..=k {
        acc = acc + term.clone();
        term = term * t.clone();
    }
    acc
}

impl Scalar for Rational {
    fn int_like(&self, n: i64) -> Self {
        rational::int(n)
    }

    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible { common_factor: None });
        }
        Ok(self.recip())
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn cmp_one(&self) -> Option<Ordering> {
        Some(self.cmp(&Rational::one()))
    }

    fn magnitude(&self) -> Option<f64> {
        Some(rational::to_f64(&self.abs()))
    }
}

impl Scalar for NumberFieldElem {
    fn int_like(&self, n: i64) -> Self {
        self.field().from_rational(rational::int(n))
    }

    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }

    fn is_zero_within(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn cmp_one(&self) -> Option<Ordering> {
        self.as_rational().map(|r| r.cmp(&Rational::one()))
    }

    fn magnitude(&self) -> Option<f64> {
        if self.is_zero() {
            return Some(0.0);
        }
        self.as_rational().map(|r| rational::to_f64(&r.abs()))
    }
}

impl Scalar for f64 {
    fn int_like(&self, n: i64) -> Self {
        n as f64
    }

    fn try_inv(&self) -> Result<Self> {
        if *self == 0.0 || !self.is_finite() {
            return Err(Error::NotInvertible { common_factor: None });
        }
        Ok(1.0 / self)
    }

    fn is_zero_within(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn cmp_one(&self) -> Option<Ordering> {
        self.partial_cmp(&1.0)
    }

    fn magnitude(&self) -> Option<f64> {
        Some(self.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, NumberField, RatPoly};

    #[test]
    fn geometric_sums() {
        assert_eq!(geometric_sum(&int(2), 3), int(15));
        assert_eq!(geometric_sum(&int(2), 0), int(1));
        assert_eq!(geometric_sum(&int(2), -1), int(0));
        assert_eq!(geometric_sum(&0.5f64, 2), 1.75);
    }

    #[test]
    fn field_constants_share_modulus() {
        let k = NumberField::new(&RatPoly::from_ints(&[1, -3, 1])).unwrap();
        let t = k.generator();
        let three = t.int_like(3);
        assert_eq!(three.modulus(), t.modulus());
        assert!((t.clone() * (three - t.clone())).is_one_exactly());
        assert_eq!(t.cmp_one(), None);
        assert_eq!(k.one().cmp_one(), Some(Ordering::Equal));
    }

    #[test]
    fn float_inverse_of_zero_fails() {
        assert!(0.0f64.try_inv().is_err());
        assert!(int(0).try_inv().is_err());
    }
}
