use num_complex::Complex64;
use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

/// Numeric targets for evaluating exact expressions.
pub trait Scalar:
    Clone
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    /// `None` when the coefficient cannot be represented (a non-real value into `f64`).
    fn from_gaussian(c: &GaussianRational) -> Option<Self>;
    /// `None` for zero.
    fn checked_inv(&self) -> Option<Self>;
    fn magnitude(&self) -> f64;

    fn powu(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_gaussian(c: &GaussianRational) -> Option<Self> {
        c.is_real().then(|| c.to_f64_pair().0)
    }
    fn checked_inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn powu(&self, k: u32) -> Self {
        self.powi(k as i32)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_gaussian(c: &GaussianRational) -> Option<Self> {
        let (re, im) = c.to_f64_pair();
        Some(Complex64::new(re, im))
    }
    fn checked_inv(&self) -> Option<Self> {
        (self.norm_sqr() != 0.0).then(|| self.inv())
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        <GaussianRational as Zero>::zero()
    }
    fn one() -> Self {
        <GaussianRational as One>::one()
    }
    fn from_gaussian(c: &GaussianRational) -> Option<Self> {
        Some(c.clone())
    }
    fn checked_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn magnitude(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        re.hypot(im)
    }
}
