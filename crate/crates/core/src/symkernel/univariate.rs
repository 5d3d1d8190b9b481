use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::param_poly::{Monomial, ParamPoly};
use super::symbol::Symbol;

/// Dense univariate polynomial over `Q(i)`, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<GaussianRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `Some` when `p` involves no symbol other than `s`.
    pub fn from_param_poly(p: &ParamPoly, s: Symbol) -> Option<Self> {
        let cs = p.coefficients_in(s);
        let coeffs: Option<Vec<_>> = cs.iter().map(|c| c.as_constant()).collect();
        coeffs.map(UniPoly::new)
    }

    pub fn to_param_poly(&self, s: Symbol) -> ParamPoly {
        ParamPoly::from_terms(
            self.coeffs.iter().enumerate().map(|(k, c)| (Monomial::one().with_exp(s, k as u16), c.clone())),
        )
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        let dn = d.degree().expect("division by zero polynomial");
        let inv = d.coeffs[dn].inv().unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dn && !r.is_empty() {
            let k = r.len() - 1;
            let f = &r[k] * &inv;
            if !f.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let idx = k - dn + i;
                    r[idx] = &r[idx] - &(&f * dc);
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// All roots with multiplicity ignored, when every root lies in `Q(i)` and can be found
    /// by factoring out `x` and solving the remaining linear or quadratic factor.
    pub fn exact_roots(&self) -> Option<Vec<GaussianRational>> {
        let zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let rest = UniPoly::new(self.coeffs[zeros..].to_vec());
        let mut roots = Vec::new();
        if zeros > 0 {
            roots.push(GaussianRational::zero());
        }
        match rest.degree()? {
            0 => {}
            1 => roots.push(-(&rest.coeffs[0] / &rest.coeffs[1])),
            2 => {
                let (c, b, a) = (&rest.coeffs[0], &rest.coeffs[1], &rest.coeffs[2]);
                let disc = &(b * b) - &(&GaussianRational::from_int(4) * &(a * c));
                let sq = disc.sqrt_exact()?;
                let two_a = &GaussianRational::from_int(2) * a;
                let r1 = &(&-b + &sq) / &two_a;
                let r2 = &(&-b - &sq) / &two_a;
                roots.push(r1.clone());
                if r2 != r1 {
                    roots.push(r2);
                }
            }
            _ => return None,
        }
        Some(roots)
    }
}

impl One for UniPoly {
    fn one() -> Self {
        UniPoly::new(vec![GaussianRational::one()])
    }
}

impl std::ops::Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::new(vec![]);
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::param_poly::poly;

    fn up(s: &str) -> UniPoly {
        UniPoly::from_param_poly(&poly(s), Symbol::A1).unwrap()
    }

    #[test]
    fn gcd_of_shared_factor() {
        let g = up("90*a1^3 + 135*a1^2 + 45*a1").gcd(&up("2*a1^2 + 3*a1 + 1"));
        assert_eq!(g, up("a1^2 + 3/2*a1 + 1/2"));
        assert_eq!(up("30*a1^2 + 20*a1 + 1").gcd(&up("2*a1^2 + 3*a1 + 1")).degree(), Some(0));
    }

    #[test]
    fn roots_over_gaussian_rationals() {
        let mut r = up("a1^3 + a1").exact_roots().unwrap();
        r.sort_by_key(|z| z.to_string());
        assert_eq!(r.iter().map(|z| z.to_string()).collect::<Vec<_>>(), vec!["-i", "0", "i"]);
        assert!(up("a1^2 - 2").exact_roots().is_none());
        assert!(UniPoly::from_param_poly(&poly("a1 + r"), Symbol::A1).is_none());
    }
}
