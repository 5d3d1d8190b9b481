use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::hifloat::HiFloat;
use crate::catalog::{taylor_eval, Real, Solution};
use crate::reduction::KdV5Params;

/// Default relative tolerance for a PASS.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 2.5e-4;
/// Required clearance from poles, in units of the FD step.
pub const FD_MARGIN_STEPS: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("every grid point is singular for {0}")]
    AllSingular(String),
    #[error("empty grid")]
    EmptyGrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Jet,
    Fd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Pass,
    Fail,
    SingularSkipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::SingularSkipped => "SINGULAR-SKIPPED",
        }
    }
}

/// Residual of one oracle at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointResidual {
    pub x: f64,
    pub t: f64,
    /// Signed residual.
    pub residual: f64,
    pub abs: f64,
    /// Largest individual PDE term magnitude.
    pub scale: f64,
    /// `abs` over the largest individual PDE term.
    pub rel: f64,
    pub verdict: Verdict,
}

/// One oracle over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub oracle: Oracle,
    pub points: Vec<PointResidual>,
    pub max_abs: f64,
    pub max_rel: f64,
    pub skipped: usize,
    pub tolerance: f64,
}

impl OracleReport {
    fn from_points(oracle: Oracle, points: Vec<PointResidual>, tolerance: f64) -> Result<Self, VerifyError> {
        let live: Vec<_> = points.iter().filter(|p| p.verdict != Verdict::SingularSkipped).collect();
        if live.is_empty() {
            return Err(VerifyError::AllSingular(format!("{oracle:?}")));
        }
        let max_abs = live.iter().map(|p| p.abs).fold(0.0, f64::max);
        let max_rel = live.iter().map(|p| p.rel).fold(0.0, f64::max);
        let skipped = points.len() - live.len();
        Ok(OracleReport { oracle, points, max_abs, max_rel, skipped, tolerance })
    }

    pub fn passes(&self) -> bool {
        self.max_rel < self.tolerance && self.points.iter().all(|p| p.verdict != Verdict::Fail)
    }

    pub fn worst(&self) -> Option<&PointResidual> {
        self.points
            .iter()
            .filter(|p| p.verdict != Verdict::SingularSkipped)
            .max_by(|a, b| a.rel.total_cmp(&b.rel))
    }
}

/// Both oracles on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub family_id: String,
    pub lambda: f64,
    pub r: f64,
    pub grid: Vec<(f64, f64)>,
    pub tolerance: f64,
    pub jet: OracleReport,
    pub fd: OracleReport,
    pub verdict: Verdict,
    /// Largest relative disagreement between the two oracles' residuals, scaled like `rel`.
    pub oracle_disagreement: f64,
}

impl ResidualReport {
    pub fn worst_point(&self) -> Option<PointResidual> {
        [self.jet.worst(), self.fd.worst()].into_iter().flatten().max_by(|a, b| a.rel.total_cmp(&b.rel)).copied()
    }
}

/// `(residual, terms)` where the terms are `[u_t, ω u₅, α u u₃, β u₁ u₂, γ u² u₁]`.
pub fn pde_terms(p: &KdV5Params, u: f64, ux: [f64; 5], ut: f64) -> (f64, [f64; 5]) {
    let [w, a, b, g] = p.as_f64();
    let terms = [ut, w * ux[4], a * u * ux[2], b * ux[0] * ux[1], g * u * u * ux[0]];
    (terms.iter().sum(), terms)
}

fn point(x: f64, t: f64, res: f64, terms: &[f64; 5], tol: f64) -> PointResidual {
    let scale = terms.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let rel = if scale == 0.0 {
        if res == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        res.abs() / scale
    };
    let verdict = if rel.is_finite() && rel < tol { Verdict::Pass } else { Verdict::Fail };
    PointResidual { x, t, residual: res, abs: res.abs(), scale, rel, verdict }
}

fn skipped(x: f64, t: f64) -> PointResidual {
    PointResidual {
        x,
        t,
        residual: f64::NAN,
        abs: f64::NAN,
        scale: f64::NAN,
        rel: f64::NAN,
        verdict: Verdict::SingularSkipped,
    }
}

/// PDE residual by Taylor-jet derivatives.
pub fn pde_residual(
    u: &Solution,
    p: &KdV5Params,
    grid: &[(f64, f64)],
    tolerance: f64,
) -> Result<OracleReport, VerifyError> {
    if grid.is_empty() {
        return Err(VerifyError::EmptyGrid);
    }
    let points = grid
        .iter()
        .map(|&(x, t)| match taylor_eval(u, x, t) {
            Ok(j) => {
                let (res, terms) = pde_terms(p, j.value, j.dx, j.dt);
                point(x, t, res, &terms, tolerance)
            }
            Err(_) => skipped(x, t),
        })
        .collect();
    OracleReport::from_points(Oracle::Jet, points, tolerance)
}

/// Richardson-extrapolated second-order central differences, `(4 D(h/2) − D(h))/3`.
fn richardson<F: Fn(f64) -> f64>(d: F, h: f64) -> f64 {
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// `(u, [∂x u .. ∂x⁵ u], ∂t u)` by finite differences of the high-precision evaluation.
pub fn fd_derivatives(u: &Solution, x: f64, t: f64, h: f64) -> (f64, [f64; 5], f64) {
    let c = u.coeffs_in::<HiFloat>();
    let hx = |dx: f64| c.eval(HiFloat::from_f64(x) + HiFloat::from_f64(dx), HiFloat::from_f64(t));
    let ht = |dt: f64| c.eval(HiFloat::from_f64(x), HiFloat::from_f64(t) + HiFloat::from_f64(dt));
    let n = |k: i64| HiFloat::from_f64(k as f64);
    let d1 = |h: f64| {
        let v = (hx(h) - hx(-h)) / (n(2) * HiFloat::from_f64(h));
        v.to_f64()
    };
    let d2 = |h: f64| {
        let v = (hx(h) - n(2) * hx(0.0) + hx(-h)) / HiFloat::from_f64(h).square();
        v.to_f64()
    };
    let d3 = |h: f64| {
        let hh = HiFloat::from_f64(h);
        let v = (hx(2.0 * h) - n(2) * hx(h) + n(2) * hx(-h) - hx(-2.0 * h)) / (n(2) * hh.clone() * hh.square());
        v.to_f64()
    };
    let d4 = |h: f64| {
        let hh = HiFloat::from_f64(h).square();
        let v = (hx(2.0 * h) - n(4) * hx(h) + n(6) * hx(0.0) - n(4) * hx(-h) + hx(-2.0 * h)) / hh.square();
        v.to_f64()
    };
    let d5 = |h: f64| {
        let hh = HiFloat::from_f64(h);
        let h5 = hh.square().square() * hh;
        let v = (hx(3.0 * h) - n(4) * hx(2.0 * h) + n(5) * hx(h) - n(5) * hx(-h) + n(4) * hx(-2.0 * h)
            - hx(-3.0 * h))
            / (n(2) * h5);
        v.to_f64()
    };
    let dt = |h: f64| {
        let v = (ht(h) - ht(-h)) / (n(2) * HiFloat::from_f64(h));
        v.to_f64()
    };
    let ux = [richardson(d1, h), richardson(d2, h), richardson(d3, h), richardson(d4, h), richardson(d5, h)];
    (hx(0.0).to_f64(), ux, richardson(dt, h))
}

/// PDE residual by finite differences; points closer than `8h` to a pole are skipped.
pub fn fd_residual(
    u: &Solution,
    p: &KdV5Params,
    grid: &[(f64, f64)],
    h: f64,
    tolerance: f64,
) -> Result<OracleReport, VerifyError> {
    if grid.is_empty() {
        return Err(VerifyError::EmptyGrid);
    }
    let margin = FD_MARGIN_STEPS * h * (1.0 + u.speed().abs());
    let points = grid
        .iter()
        .map(|&(x, t)| {
            if !u.is_regular(x + u.speed() * t, margin) {
                return skipped(x, t);
            }
            let (v, ux, ut) = fd_derivatives(u, x, t, h);
            let (res, terms) = pde_terms(p, v, ux, ut);
            point(x, t, res, &terms, tolerance)
        })
        .collect();
    OracleReport::from_points(Oracle::Fd, points, tolerance)
}

/// Pole clearance used when building grids.
pub fn grid_margin(u: &Solution) -> f64 {
    // A tenth of the kernel's natural length scale, but never below the FD requirement.
    let k = u.coeffs.k.abs().max(1e-12);
    (0.1 / k).max(FD_MARGIN_STEPS * DEFAULT_FD_STEP * (1.0 + u.speed().abs()) * 2.0)
}

/// `n` regular points in `[x0, x1] × [t0, t1]`: a tensor grid, with irregular nodes
/// replaced by seeded random regular points.
pub fn regular_grid(u: &Solution, n: usize, xr: (f64, f64), tr: (f64, f64), seed: u64) -> Vec<(f64, f64)> {
    let nt = 5.min(n).max(1);
    let nx = n.div_ceil(nt);
    let margin = grid_margin(u);
    let ok = |x: f64, t: f64| u.is_regular(x + u.speed() * t, margin);
    let lerp = |r: (f64, f64), i: usize, m: usize| if m <= 1 { r.0 } else { r.0 + (r.1 - r.0) * i as f64 / (m - 1) as f64 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(n);
    'outer: for it in 0..nt {
        for ix in 0..nx {
            if pts.len() == n {
                break 'outer;
            }
            let (x, t) = (lerp(xr, ix, nx), lerp(tr, it, nt));
            if ok(x, t) {
                pts.push((x, t));
                continue;
            }
            for _ in 0..10_000 {
                let (x, t) = (rng.gen_range(xr.0..=xr.1), rng.gen_range(tr.0..=tr.1));
                if ok(x, t) {
                    pts.push((x, t));
                    break;
                }
            }
        }
    }
    pts
}

/// Jet and FD residuals on the same grid.
pub fn residual_report(
    u: &Solution,
    p: &KdV5Params,
    grid: &[(f64, f64)],
    tolerance: f64,
) -> Result<ResidualReport, VerifyError> {
    let jet = pde_residual(u, p, grid, tolerance)?;
    let fd = fd_residual(u, p, grid, DEFAULT_FD_STEP, tolerance)?;
    let mut disagreement: f64 = 0.0;
    for (a, b) in jet.points.iter().zip(fd.points.iter()) {
        if a.verdict != Verdict::SingularSkipped && b.verdict != Verdict::SingularSkipped {
            let scale = a.scale.max(b.scale);
            if scale > 0.0 {
                disagreement = disagreement.max((a.residual - b.residual).abs() / scale);
            }
        }
    }
    let verdict = if jet.passes() && fd.passes() { Verdict::Pass } else { Verdict::Fail };
    Ok(ResidualReport {
        family_id: u.family.id.clone(),
        lambda: u.lambda,
        r: u.r,
        grid: grid.to_vec(),
        tolerance,
        jet,
        fd,
        verdict,
        oracle_disagreement: disagreement,
    })
}
