use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::checks::{annihilation_check, m1_point, AnnihilationReport};
use super::residual::{regular_grid, residual_report, PointResidual, ResidualReport, Verdict};
use crate::catalog::{build_solution, list_families, Admissibility, CatalogError, Solution, SolutionFamily};
use crate::reduction::{reduce_to_ode, KdV5Params};
use crate::sysgen::{generate_system, AlgebraicSystem};

/// Tolerance on the relative annihilation residual of the algebraic system.
pub const ANNIHILATION_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 20_090_311;
pub const GRID_POINTS: usize = 40;
pub const X_RANGE: (f64, f64) = (-10.0, 10.0);
pub const T_RANGE: (f64, f64) = (0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyVerdict {
    Pass,
    Fail,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Annihilation {
    pub max_rel: f64,
    pub annihilates: bool,
    /// `(σ-power, τ-power)` of the worst equation.
    pub worst_group: Option<(u32, u32)>,
}

impl From<&AnnihilationReport> for Annihilation {
    fn from(a: &AnnihilationReport) -> Self {
        let worst = a.equations.iter().max_by(|x, y| x.rel.total_cmp(&y.rel));
        Annihilation {
            max_rel: a.max_rel,
            annihilates: a.annihilates(ANNIHILATION_TOLERANCE),
            worst_group: worst.filter(|w| w.rel > 0.0).map(|w| (w.sigma_power, w.tau_power)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub r: f64,
    pub lambda: f64,
    pub a0: f64,
    pub residuals: Option<ResidualReport>,
    pub error: Option<String>,
    /// System annihilation with the header `(e, ρ)` and the printed `μ, a1, a0`.
    pub printed_annihilation: Option<Annihilation>,
    /// System annihilation with the effective Riccati parameters.
    pub effective_annihilation: Option<Annihilation>,
}

impl SampleReport {
    fn verdict(&self) -> FamilyVerdict {
        match &self.residuals {
            Some(r) if r.verdict == Verdict::Pass => FamilyVerdict::Pass,
            Some(_) => FamilyVerdict::Fail,
            None => FamilyVerdict::Unresolved,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family_id: String,
    pub samples: Vec<SampleReport>,
    pub verdict: FamilyVerdict,
    pub worst_point: Option<PointResidual>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogReport {
    pub seed: u64,
    pub tolerance: f64,
    pub families: Vec<FamilyReport>,
    pub summary: BTreeMap<String, usize>,
}

impl CatalogReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(|f| f.verdict == FamilyVerdict::Pass)
    }
}

/// Two admissible `(r, λ)` samples for a family, reproducible from `seed`.
pub fn sample_parameters(f: &SolutionFamily, seed: u64) -> [(f64, f64); 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((f.table as u64) << 8 | f.row as u64));
    let mut draw = || match f.admissibility {
        Admissibility::PositiveRSurd | Admissibility::NegativeRSurd => {
            let mag: f64 = rng.gen_range(0.5..2.0);
            let r = if f.admissibility == Admissibility::PositiveRSurd { mag } else { -mag };
            let lambda = rng.gen_range(-1.0..0.9 * r * r / 4.0);
            (round6(r), round6(lambda))
        }
        Admissibility::PositiveLambda => {
            let lambda = round6(rng.gen_range(0.1..1.0));
            (round6(2.0 * f64::sqrt(lambda)), lambda)
        }
    };
    [draw(), draw()]
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

/// System annihilation under the header signs and printed `μ, a1, a0`.
pub fn printed_annihilation(system: &AlgebraicSystem, u: &Solution) -> Option<AnnihilationReport> {
    let f = &u.family;
    let c = |g: &crate::symkernel::GaussianRational| {
        let (re, im) = g.to_f64_pair();
        Complex64::new(re, im)
    };
    let r = f.printed_r(u.r, u.lambda);
    let pt = m1_point(f.e as f64, f.rho as f64, c(&f.mu), r, u.lambda, u.a0, c(&f.a1), c(&f.b1));
    annihilation_check(system, &pt).ok()
}

/// System annihilation under the effective Riccati parameters and the form's background level.
pub fn effective_annihilation(system: &AlgebraicSystem, u: &Solution) -> Option<AnnihilationReport> {
    let eff = &u.family.effective;
    let re = |v: f64| Complex64::new(v, 0.0);
    let r = eff.r.eval(u.r, u.lambda);
    let pt = m1_point(eff.e as f64, eff.rho as f64, re(eff.mu), r, u.lambda, u.background(), re(eff.a1), re(0.0));
    annihilation_check(system, &pt).ok()
}

/// Residuals of one family at `(r, λ)` on the standard grid.
pub fn verify_sample(
    f: &SolutionFamily,
    system: &AlgebraicSystem,
    r: f64,
    lambda: f64,
    tolerance: f64,
    seed: u64,
) -> SampleReport {
    let p = KdV5Params::cdg();
    let mut out = SampleReport {
        r,
        lambda,
        a0: f.a0_value(r, lambda),
        residuals: None,
        error: None,
        printed_annihilation: None,
        effective_annihilation: None,
    };
    let u = match build_solution(f, lambda, r) {
        Ok(u) => u,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.printed_annihilation = printed_annihilation(system, &u).as_ref().map(Annihilation::from);
    out.effective_annihilation = effective_annihilation(system, &u).as_ref().map(Annihilation::from);
    let grid = regular_grid(&u, GRID_POINTS, X_RANGE, T_RANGE, seed);
    match residual_report(&u, &p, &grid, tolerance) {
        Ok(rep) => out.residuals = Some(rep),
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

pub fn verify_family(f: &SolutionFamily, system: &AlgebraicSystem, tolerance: f64, seed: u64) -> FamilyReport {
    let samples: Vec<SampleReport> = sample_parameters(f, seed)
        .iter()
        .map(|&(r, lambda)| verify_sample(f, system, r, lambda, tolerance, seed))
        .collect();
    let verdicts: Vec<_> = samples.iter().map(SampleReport::verdict).collect();
    let verdict = if verdicts.iter().all(|v| *v == FamilyVerdict::Pass) {
        FamilyVerdict::Pass
    } else if verdicts.contains(&FamilyVerdict::Fail) {
        FamilyVerdict::Fail
    } else {
        FamilyVerdict::Unresolved
    };
    let worst_point = samples
        .iter()
        .filter_map(|s| s.residuals.as_ref().and_then(ResidualReport::worst_point))
        .max_by(|a, b| a.rel.total_cmp(&b.rel));
    FamilyReport { family_id: f.id.clone(), samples, verdict, worst_point }
}

/// The CDG `m = 1` system used for annihilation checks.
pub fn cdg_system() -> AlgebraicSystem {
    generate_system(&reduce_to_ode(&KdV5Params::cdg()), 1).expect("m = 1 is supported")
}

/// Verifies the selected families (all when `ids` is empty); reports are ordered by family id.
pub fn verify_all(ids: &[String], tolerance: f64, seed: u64) -> Result<CatalogReport, CatalogError> {
    let system = cdg_system();
    let all = list_families();
    let selected: Vec<&SolutionFamily> = if ids.is_empty() {
        all.iter().collect()
    } else {
        ids.iter()
            .map(|id| {
                all.iter()
                    .find(|f| f.id.eq_ignore_ascii_case(id))
                    .ok_or_else(|| CatalogError::UnknownFamily(id.clone()))
            })
            .collect::<Result<_, _>>()?
    };
    let families: Vec<FamilyReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|f| {
                let system = &system;
                scope.spawn(move || verify_family(f, system, tolerance, seed))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread")).collect()
    });
    let mut summary = BTreeMap::new();
    for key in ["PASS", "FAIL", "UNRESOLVED"] {
        summary.insert(key.to_string(), 0);
    }
    for f in &families {
        let key = match f.verdict {
            FamilyVerdict::Pass => "PASS",
            FamilyVerdict::Fail => "FAIL",
            FamilyVerdict::Unresolved => "UNRESOLVED",
        };
        *summary.get_mut(key).unwrap() += 1;
    }
    Ok(CatalogReport { seed, tolerance, families, summary })
}
