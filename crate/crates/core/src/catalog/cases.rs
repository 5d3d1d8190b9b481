use serde::Serialize;

use super::real::Real;
use super::CatalogError;

/// Denominator magnitude below which a point counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-6;

/// Closed-form solution families of the projective Riccati system.
///
/// Case II has two branches: `Sec` (σ₁, τ₁) and `Csc` (σ₂, τ₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    I,
    IISec,
    IICsc,
    III,
    IV,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::I, CaseId::IISec, CaseId::IICsc, CaseId::III, CaseId::IV];

    /// `(e, ρ)` required by the case; Case I accepts any signs.
    pub fn signs(self) -> Option<(i8, i8)> {
        match self {
            CaseId::I => None,
            CaseId::IISec | CaseId::IICsc => Some((1, -1)),
            CaseId::III => Some((-1, -1)),
            CaseId::IV => Some((-1, 1)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::IISec => "II (sec)",
            CaseId::IICsc => "II (csc)",
            CaseId::III => "III",
            CaseId::IV => "IV",
        }
    }
}

/// Parameters of the Riccati system `σ' = eστ`, `τ' = eτ² − μσ + r` in a closed-form role.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiParams {
    pub e: i8,
    pub rho: i8,
    pub mu: f64,
    pub r: f64,
}

impl RiccatiParams {
    pub fn new(e: i8, rho: i8, mu: f64, r: f64) -> Self {
        RiccatiParams { e, rho, mu, r }
    }

    /// Parameters in the shape the case demands (`r = μ = 0` for Case I).
    pub fn for_case(case: CaseId, mu: f64, r: f64) -> Self {
        match case.signs() {
            Some((e, rho)) => RiccatiParams { e, rho, mu, r },
            None => RiccatiParams { e: 1, rho: 1, mu: 0.0, r: 0.0 },
        }
    }

    pub fn check(&self, case: CaseId) -> Result<(), CatalogError> {
        let fail = |msg: String| Err(CatalogError::Precondition(msg));
        if self.e.abs() != 1 || self.rho.abs() != 1 {
            return fail(format!("e = {} and rho = {} must be ±1", self.e, self.rho));
        }
        match case.signs() {
            None => {
                if self.r != 0.0 || self.mu != 0.0 {
                    return fail("Case I requires r = mu = 0".into());
                }
            }
            Some((e, rho)) => {
                if (self.e, self.rho) != (e, rho) {
                    return fail(format!("Case {} requires e = {e}, rho = {rho}", case.label()));
                }
                if self.r <= 0.0 || !self.r.is_finite() {
                    return fail(format!("Case {} requires r > 0", case.label()));
                }
            }
        }
        Ok(())
    }

    /// `τ² + e[r − 2μσ + (μ²+ρ)σ²/r]`; zero along every trajectory with `r ≠ 0`.
    pub fn first_integral<R: Real>(&self, sigma: &R, tau: &R) -> R {
        let e = R::from_f64(self.e as f64);
        let r = R::from_f64(self.r);
        let mu = R::from_f64(self.mu);
        let k = R::from_f64((self.mu * self.mu + self.rho as f64) / self.r);
        tau.square() + e * (r - R::from_f64(2.0) * mu * sigma.clone() + k * sigma.square())
    }
}

/// The constant `C` of Case I, `σ = C/ξ`, `τ = −1/(eξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseIForm {
    pub c: f64,
}

fn guard<R: Real>(den: &R, xi: f64) -> Result<(), CatalogError> {
    let d = den.to_f64();
    if !(d.abs() > POLE_THRESHOLD) {
        return Err(CatalogError::Pole { xi, denominator: d });
    }
    Ok(())
}

/// `(σ, τ)` of the chosen closed form at `ξ`. `case_i` is only read for Case I.
pub fn eval_sigma_tau<R: Real>(
    case: CaseId,
    p: &RiccatiParams,
    case_i: CaseIForm,
    xi: R,
) -> Result<(R, R), CatalogError> {
    p.check(case)?;
    let x0 = xi.to_f64();
    if case == CaseId::I {
        guard(&xi, x0)?;
        let sigma = R::from_f64(case_i.c) / xi.clone();
        let tau = -(R::from_f64(1.0) / (R::from_f64(p.e as f64) * xi));
        return Ok((sigma, tau));
    }
    let sr = R::from_f64(p.r).sqrt();
    let z = sr.clone() * xi;
    let mu = R::from_f64(p.mu);
    let r = R::from_f64(p.r);
    // σ = r/(g + μ), τ = √r·h/(g + μ) with (g, h) per case.
    let (g, h) = match case {
        CaseId::IISec => (z.cos(), z.sin()),
        CaseId::IICsc => (z.sin(), -z.cos()),
        CaseId::III => (z.cosh(), z.sinh()),
        CaseId::IV => (z.sinh(), z.cosh()),
        CaseId::I => unreachable!(),
    };
    let den = g + mu;
    guard(&den, x0)?;
    let sigma = r / den.clone();
    let tau = sr * h / den;
    Ok((sigma, tau))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_iii_at_origin() {
        let p = RiccatiParams::for_case(CaseId::III, 0.0, 4.0);
        let (s, t) = eval_sigma_tau(CaseId::III, &p, CaseIForm { c: 0.0 }, 0.0f64).unwrap();
        assert_eq!((s, t), (4.0, 0.0));
    }

    #[test]
    fn case_i_values() {
        let p = RiccatiParams::for_case(CaseId::I, 0.0, 0.0);
        let (s, t) = eval_sigma_tau(CaseId::I, &p, CaseIForm { c: 3.0 }, 2.0f64).unwrap();
        assert_eq!((s, t), (1.5, -0.5));
        assert!(eval_sigma_tau(CaseId::I, &p, CaseIForm { c: 3.0 }, 0.0f64).is_err());
    }

    #[test]
    fn case_ii_sec_elementary() {
        let p = RiccatiParams::for_case(CaseId::IISec, 0.0, 1.0);
        let xi = std::f64::consts::FRAC_PI_4;
        let (s, t) = eval_sigma_tau(CaseId::IISec, &p, CaseIForm { c: 0.0 }, xi).unwrap();
        assert!((s - 2f64.sqrt()).abs() < 1e-15);
        assert!((t - 1.0).abs() < 1e-15);
    }

    #[test]
    fn preconditions() {
        let p = RiccatiParams::new(1, 1, 0.0, 1.0);
        assert!(eval_sigma_tau(CaseId::III, &p, CaseIForm { c: 0.0 }, 0.1f64).is_err());
        let p = RiccatiParams::new(-1, -1, 0.0, -1.0);
        assert!(eval_sigma_tau(CaseId::III, &p, CaseIForm { c: 0.0 }, 0.1f64).is_err());
    }
}
