use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field-like number type with the elementary functions the closed forms need.
///
/// Implemented for `f64`, for [`Jet2`](super::Jet2) and for the high-precision
/// float used by the finite-difference oracle.
pub trait Real:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    /// Leading value as `f64` (the constant term for jets).
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_f64(n as f64) / Self::from_f64(d as f64)
    }
    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        n as f64 / d as f64
    }
}
