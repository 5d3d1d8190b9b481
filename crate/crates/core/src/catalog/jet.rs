use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::real::Real;

/// Highest x-order carried by [`Jet2`].
pub const JET_X_ORDER: usize = 5;
const NX: usize = JET_X_ORDER + 1;
/// Truncated total degree: `dx⁵·dt`.
const MAX_POWER: usize = JET_X_ORDER + 1;

/// Truncated bivariate Taylor polynomial `Σ c[i][j] dxⁱ dtʲ`, `i ≤ 5`, `j ≤ 1`.
///
/// Products drop every monomial outside that box, so the coefficients are the
/// exact (to rounding) Taylor coefficients of any composition of the supported
/// operations.
#[derive(Clone, Copy, PartialEq)]
pub struct Jet2 {
    c: [[f64; 2]; NX],
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        let mut c = [[0.0; 2]; NX];
        c[0][0] = v;
        Jet2 { c }
    }

    /// The independent variable `x` at `x0`.
    pub fn var_x(x0: f64) -> Self {
        let mut j = Self::constant(x0);
        j.c[1][0] = 1.0;
        j
    }

    /// The independent variable `t` at `t0`.
    pub fn var_t(t0: f64) -> Self {
        let mut j = Self::constant(t0);
        j.c[0][1] = 1.0;
        j
    }

    pub fn value(&self) -> f64 {
        self.c[0][0]
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.c[i][j]
    }

    /// `∂xⁱ ∂tʲ` of the represented function at the expansion point.
    pub fn derivative(&self, i: usize, j: usize) -> f64 {
        self.c[i][j] * factorial(i) * factorial(j)
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().flatten().all(|v| v.is_finite())
    }

    fn scale(mut self, s: f64) -> Self {
        for row in self.c.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        self
    }

    /// `φ(self)` from the Taylor coefficients `taylor[k] = φ⁽ᵏ⁾(c₀)/k!`.
    pub fn compose(&self, taylor: &[f64; MAX_POWER + 1]) -> Self {
        let mut delta = *self;
        delta.c[0][0] = 0.0;
        let mut acc = Jet2::constant(taylor[MAX_POWER]);
        for k in (0..MAX_POWER).rev() {
            acc = acc * delta;
            acc.c[0][0] += taylor[k];
        }
        acc
    }

    pub fn recip(&self) -> Self {
        let y = self.value();
        let mut t = [0.0; MAX_POWER + 1];
        let inv = 1.0 / y;
        let mut p = inv;
        for (k, slot) in t.iter_mut().enumerate() {
            *slot = if k % 2 == 0 { p } else { -p };
            p *= inv;
        }
        self.compose(&t)
    }

    /// `self^a` for real `a`; requires a positive value unless `a` is a natural number.
    pub fn powf(&self, a: f64) -> Self {
        let y = self.value();
        let mut t = [0.0; MAX_POWER + 1];
        let mut binom = 1.0;
        for (k, slot) in t.iter_mut().enumerate() {
            *slot = binom * y.powf(a - k as f64);
            binom *= (a - k as f64) / (k as f64 + 1.0);
        }
        self.compose(&t)
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn cyclic(values: [f64; 4]) -> [f64; MAX_POWER + 1] {
    let mut t = [0.0; MAX_POWER + 1];
    for (k, slot) in t.iter_mut().enumerate() {
        *slot = values[k % 4] / factorial(k);
    }
    t
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, o: Jet2) -> Jet2 {
        for i in 0..NX {
            for j in 0..2 {
                self.c[i][j] += o.c[i][j];
            }
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let mut c = [[0.0; 2]; NX];
        for i in 0..NX {
            for p in 0..=i {
                let (a, b) = (self.c[p], o.c[i - p]);
                c[i][0] += a[0] * b[0];
                c[i][1] += a[0] * b[1] + a[1] * b[0];
            }
        }
        Jet2 { c }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}

impl Real for Jet2 {
    fn from_f64(v: f64) -> Self {
        Jet2::constant(v)
    }
    fn to_f64(&self) -> f64 {
        self.value()
    }
    fn sqrt(&self) -> Self {
        self.powf(0.5)
    }
    fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose(&cyclic([s, c, -s, -c]))
    }
    fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose(&cyclic([c, -s, -c, s]))
    }
    fn sinh(&self) -> Self {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose(&cyclic([s, c, s, c]))
    }
    fn cosh(&self) -> Self {
        let (s, c) = (self.value().sinh(), self.value().cosh());
        self.compose(&cyclic([c, s, c, s]))
    }
}

impl fmt::Debug for Jet2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet2").field("c", &self.c).finish()
    }
}
