use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    // numer/denom may individually overflow f64 even when the quotient does not
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Element of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(rat_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Square root inside `Q(i)` when one exists. Of the two roots, returns the one
    /// with positive real part (or positive imaginary part when the real part is zero).
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(GaussianRational::zero());
        }
        // (x + iy)^2 = a + ib  =>  x^2 = (a + |z|)/2, y^2 = (|z| - a)/2
        let modulus = rational_sqrt(&self.norm_sqr())?;
        let two = rat_int(2);
        let x2 = (&self.re + &modulus) / &two;
        let y2 = (&modulus - &self.re) / &two;
        let x = rational_sqrt(&x2)?;
        let mut y = rational_sqrt(&y2)?;
        if self.im.is_negative() {
            y = -y;
        }
        let root = GaussianRational { re: x, im: y };
        debug_assert_eq!(&root * &root, *self);
        if root.re.is_zero() && root.im.is_negative() {
            Some(-root)
        } else {
            Some(root)
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Is this exactly `±1` or `±i`?
    pub fn is_unit(&self) -> bool {
        self.norm_sqr().is_one()
    }

    /// Sign of the leading real component, used for canonical term rendering.
    pub fn is_negative_real(&self) -> bool {
        self.is_real() && self.re.is_negative()
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational::real(q)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for GaussianRational {
    /// `3/2`, `-i`, `1/2+3*i`, `-2-i/3` style. Real values print as plain rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&format_rational(&self.re));
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&format_rational(&self.re));
            out.push(if self.im.is_negative() { '-' } else { '+' });
        } else if self.im.is_negative() {
            out.push('-');
        }
        let mag = self.im.abs();
        if mag.is_one() {
            out.push('i');
        } else {
            out.push_str(&format_rational(&mag));
            out.push_str("*i");
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_of_minus_one_is_i() {
        let m1 = GaussianRational::from_int(-1);
        assert_eq!(m1.sqrt_exact(), Some(GaussianRational::i()));
    }

    #[test]
    fn sqrt_of_2i() {
        // (1 + i)^2 = 2i
        let z = GaussianRational::new(rat_int(0), rat_int(2));
        let root = z.sqrt_exact().unwrap();
        assert_eq!(root, GaussianRational::new(rat_int(1), rat_int(1)));
    }

    #[test]
    fn sqrt_of_non_square_is_none() {
        assert!(GaussianRational::from_int(2).sqrt_exact().is_none());
        assert!(GaussianRational::from_frac(9, 4).sqrt_exact().is_some());
    }

    #[test]
    fn conj_is_involution_and_inverse_works() {
        let z = GaussianRational::new(rat(3, 7), rat(-5, 2));
        assert_eq!(z.conj().conj(), z);
        let w = &z * &z.inv().unwrap();
        assert_eq!(w, GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::from_frac(-3, 2).to_string(), "-3/2");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        assert_eq!(GaussianRational::new(rat(1, 2), rat(3, 1)).to_string(), "1/2+3*i");
        assert_eq!(GaussianRational::new(rat(0, 1), rat(-1, 3)).to_string(), "-1/3*i");
    }

    #[test]
    fn rational_to_f64_handles_huge_parts() {
        let big = Rational::new(BigInt::from(10).pow(400) + 7, BigInt::from(10).pow(400) * 2);
        assert!((rational_to_f64(&big) - 0.5).abs() < 1e-15);
    }
}
