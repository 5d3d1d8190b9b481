use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{eval_sigma_tau, CaseIForm, CaseId, CatalogError, Jet2, RiccatiParams};
use crate::symkernel::{EvalError, Point, Symbol};
use crate::sysgen::AlgebraicSystem;

/// Maximum deviations of a closed form from the Riccati system and its first integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiccatiDeviations {
    /// `max |σ' − eστ|`
    pub sigma_ode: f64,
    /// `max |τ' − (eτ² − μσ + r)|`
    pub tau_ode: f64,
    /// `max |τ² + e[r − 2μσ + (μ²+ρ)σ²/r]|`; `None` for Case I, where `r = 0`.
    pub first_integral: Option<f64>,
    pub points: usize,
}

impl RiccatiDeviations {
    pub fn max(&self) -> f64 {
        self.sigma_ode.max(self.tau_ode).max(self.first_integral.unwrap_or(0.0))
    }
}

/// Checks a closed form on a grid of `ξ` values; derivatives come from jets in `ξ`.
pub fn check_riccati_and_integral(
    case: CaseId,
    p: &RiccatiParams,
    case_i: CaseIForm,
    grid: &[f64],
) -> Result<RiccatiDeviations, CatalogError> {
    let mut dev = RiccatiDeviations {
        sigma_ode: 0.0,
        tau_ode: 0.0,
        first_integral: (case != CaseId::I).then_some(0.0),
        points: grid.len(),
    };
    let e = p.e as f64;
    for &xi in grid {
        let (s, t) = eval_sigma_tau(case, p, case_i, Jet2::var_x(xi))?;
        let (sv, tv) = (s.value(), t.value());
        let ds = s.derivative(1, 0);
        let dt = t.derivative(1, 0);
        dev.sigma_ode = dev.sigma_ode.max((ds - e * sv * tv).abs());
        dev.tau_ode = dev.tau_ode.max((dt - (e * tv * tv - p.mu * sv + p.r)).abs());
        if let Some(fi) = dev.first_integral.as_mut() {
            *fi = fi.max(p.first_integral(&sv, &tv).abs());
        }
    }
    Ok(dev)
}

/// `n` points of `[a, b]` avoiding the form's poles by at least `margin`.
pub fn regular_xi_grid(case: CaseId, p: &RiccatiParams, case_i: CaseIForm, a: f64, b: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut m = n;
    while out.len() < n && m < 64 * n {
        out.clear();
        for i in 0..m {
            let xi = a + (b - a) * (i as f64 + 0.5) / m as f64;
            let clear = [-1e-2, 0.0, 1e-2].iter().all(|d| {
                eval_sigma_tau(case, p, case_i, xi + d)
                    .map(|(s, _)| s.abs() < 1e6)
                    .unwrap_or(false)
            });
            if clear && out.len() < n {
                out.push(xi);
            }
        }
        m *= 2;
    }
    out
}

/// Value of one equation at a numeric point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquationResidual {
    pub sigma_power: u32,
    pub tau_power: u32,
    pub abs: f64,
    /// `abs` over the sum of absolute term values.
    pub rel: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnnihilationReport {
    pub equations: Vec<EquationResidual>,
    pub max_abs: f64,
    pub max_rel: f64,
}

impl AnnihilationReport {
    pub fn annihilates(&self, tol: f64) -> bool {
        self.max_rel < tol
    }
}

/// Evaluates every equation of `system` at `point`.
pub fn annihilation_check(system: &AlgebraicSystem, point: &Point<Complex64>) -> Result<AnnihilationReport, EvalError> {
    let mut equations = Vec::with_capacity(system.len());
    for eq in &system.equations {
        let (v, scale) = eq.poly.eval_with_scale(point)?;
        let abs = v.norm();
        let rel = if scale == 0.0 { 0.0 } else { abs / scale };
        equations.push(EquationResidual { sigma_power: eq.sigma_power, tau_power: eq.tau_power, abs, rel });
    }
    let max_abs = equations.iter().map(|e| e.abs).fold(0.0, f64::max);
    let max_rel = equations.iter().map(|e| e.rel).fold(0.0, f64::max);
    Ok(AnnihilationReport { equations, max_abs, max_rel })
}

/// Point for the `m = 1` unknowns; higher ansatz coefficients are set to zero.
pub fn m1_point(e: f64, rho: f64, mu: Complex64, r: f64, lambda: f64, a0: f64, a1: Complex64, b1: Complex64) -> Point<Complex64> {
    let re = |v: f64| Complex64::new(v, 0.0);
    let mut pt = Point::new()
        .with(Symbol::E, re(e))
        .with(Symbol::Rho, re(rho))
        .with(Symbol::Mu, mu)
        .with(Symbol::R, re(r))
        .with(Symbol::Lambda, re(lambda))
        .with(Symbol::A0, re(a0))
        .with(Symbol::A1, a1)
        .with(Symbol::B1, b1);
    for s in [Symbol::A2, Symbol::B2, Symbol::A3, Symbol::B3, Symbol::A4, Symbol::B4] {
        pt.set(s, re(0.0));
    }
    pt
}
