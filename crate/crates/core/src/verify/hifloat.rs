use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};

use crate::catalog::Real;

/// Working precision of [`HiFloat`] in bits.
pub const HI_PRECISION: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

/// Multi-precision float for the finite-difference oracle, where `f64` rounding
/// swamps fifth-order difference quotients.
#[derive(Clone)]
pub struct HiFloat(BigFloat);

impl HiFloat {
    fn with_consts<F: FnOnce(&BigFloat, &mut Consts) -> BigFloat>(&self, f: F) -> HiFloat {
        CONSTS.with(|c| HiFloat(f(&self.0, &mut c.borrow_mut())))
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }
}

impl Add for HiFloat {
    type Output = HiFloat;
    fn add(self, o: HiFloat) -> HiFloat {
        HiFloat(self.0.add(&o.0, HI_PRECISION, RM))
    }
}

impl Sub for HiFloat {
    type Output = HiFloat;
    fn sub(self, o: HiFloat) -> HiFloat {
        HiFloat(self.0.sub(&o.0, HI_PRECISION, RM))
    }
}

impl Mul for HiFloat {
    type Output = HiFloat;
    fn mul(self, o: HiFloat) -> HiFloat {
        HiFloat(self.0.mul(&o.0, HI_PRECISION, RM))
    }
}

impl Div for HiFloat {
    type Output = HiFloat;
    fn div(self, o: HiFloat) -> HiFloat {
        HiFloat(self.0.div(&o.0, HI_PRECISION, RM))
    }
}

impl Neg for HiFloat {
    type Output = HiFloat;
    fn neg(self) -> HiFloat {
        HiFloat(self.0.neg())
    }
}

impl Real for HiFloat {
    fn from_f64(v: f64) -> Self {
        HiFloat(BigFloat::from_f64(v, HI_PRECISION))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_inf_neg() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        // Normalised mantissa 0.1xxx…, most significant word last.
        let n = words.len();
        let hi = words[n - 1] as f64;
        let lo = if n > 1 { words[n - 2] as f64 } else { 0.0 };
        let mag = (hi + lo * 2f64.powi(-64)) * 2f64.powi(exp - 64);
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    fn sqrt(&self) -> Self {
        HiFloat(self.0.sqrt(HI_PRECISION, RM))
    }
    fn sin(&self) -> Self {
        self.with_consts(|x, c| x.sin(HI_PRECISION, RM, c))
    }
    fn cos(&self) -> Self {
        self.with_consts(|x, c| x.cos(HI_PRECISION, RM, c))
    }
    fn sinh(&self) -> Self {
        self.with_consts(|x, c| x.sinh(HI_PRECISION, RM, c))
    }
    fn cosh(&self) -> Self {
        self.with_consts(|x, c| x.cosh(HI_PRECISION, RM, c))
    }
}

impl fmt::Debug for HiFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HiFloat({:e})", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_f64() {
        for v in [1.0, -2.5, 3.0e-7, 1.2345678901234567e12, -0.1, 7.0 / 3.0] {
            assert_eq!(HiFloat::from_f64(v).to_f64(), v);
        }
        assert_eq!(HiFloat::from_f64(0.0).to_f64(), 0.0);
    }

    #[test]
    fn elementary_functions() {
        let x = HiFloat::from_f64(0.7);
        assert!((x.sin().to_f64() - 0.7f64.sin()).abs() < 1e-16);
        assert!((x.cosh().to_f64() - 0.7f64.cosh()).abs() < 1e-15);
        let third = HiFloat::from_ratio(1, 3);
        let back = (third.clone() * HiFloat::from_f64(3.0) - HiFloat::from_f64(1.0)).to_f64();
        assert!(back.abs() < 1e-90);
        let s = HiFloat::from_f64(2.0).sqrt();
        assert!(((s.clone() * s).to_f64() - 2.0).abs() < 1e-300);
    }
}
