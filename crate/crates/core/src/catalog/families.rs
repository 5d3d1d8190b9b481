use serde::Serialize;

use super::cases::{eval_sigma_tau, CaseIForm, CaseId, RiccatiParams, POLE_THRESHOLD};
use super::jet::Jet2;
use super::real::Real;
use super::CatalogError;
use crate::symkernel::GaussianRational;

/// `num/den` pair kept exact until instantiation.
type Ratio = (i64, i64);

const ZERO: Ratio = (0, 1);

/// `c_a0·a0 + c_r·r + c_s·√λ + c_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lin {
    pub a0: Ratio,
    pub r: Ratio,
    pub sqrt_lambda: Ratio,
    pub one: Ratio,
}

impl Lin {
    const fn zero() -> Lin {
        Lin { a0: ZERO, r: ZERO, sqrt_lambda: ZERO, one: ZERO }
    }
    const fn a0() -> Lin {
        Lin { a0: (1, 1), ..Lin::zero() }
    }
    const fn int(n: i64) -> Lin {
        Lin { one: (n, 1), ..Lin::zero() }
    }
    const fn r(n: i64, d: i64) -> Lin {
        Lin { r: (n, d), ..Lin::zero() }
    }
    const fn sl(n: i64, d: i64) -> Lin {
        Lin { sqrt_lambda: (n, d), ..Lin::zero() }
    }
    const fn plus_r(self, n: i64, d: i64) -> Lin {
        Lin { r: (n, d), ..self }
    }

    pub fn eval<R: Real>(&self, a0: &R, r: &R, sqrt_lambda: &R) -> R {
        let term = |c: Ratio, v: &R| -> Option<R> { (c.0 != 0).then(|| R::from_ratio(c.0, c.1) * v.clone()) };
        let one = R::from_f64(1.0);
        [term(self.a0, a0), term(self.r, r), term(self.sqrt_lambda, sqrt_lambda), term(self.one, &one)]
            .into_iter()
            .flatten()
            .reduce(|a, b| a + b)
            .unwrap_or_else(|| R::from_f64(0.0))
    }
}

/// Periodic or hyperbolic kernel `g` of the rational form `A + (P + Q·g)/(R·g + S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Sin,
    Cos,
    Cosh,
    /// `sinh²`
    Sinh2,
}

impl Kernel {
    pub fn apply<R: Real>(self, z: R) -> R {
        match self {
            Kernel::Sin => z.sin(),
            Kernel::Cos => z.cos(),
            Kernel::Cosh => z.cosh(),
            Kernel::Sinh2 => z.sinh().square(),
        }
    }

    pub fn is_periodic(self) -> bool {
        matches!(self, Kernel::Sin | Kernel::Cos)
    }
}

/// Wave number `k` in `g(kξ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Wave {
    SqrtR,
    SqrtNegR,
    /// `⁴√(4λ)`
    QuarticFourLambda,
    /// `⁴√(λ/4)`
    QuarticQuarterLambda,
}

impl Wave {
    pub fn eval<R: Real>(self, r: &R, lambda: &R) -> R {
        match self {
            Wave::SqrtR => r.sqrt(),
            Wave::SqrtNegR => (-r.clone()).sqrt(),
            Wave::QuarticFourLambda => (R::from_f64(4.0) * lambda.clone()).sqrt().sqrt(),
            Wave::QuarticQuarterLambda => (lambda.clone() / R::from_f64(4.0)).sqrt().sqrt(),
        }
    }
}

/// The printed `a0` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A0Rule {
    /// `(s·5r + t·√5·√(r² − 4λ))/60`
    Surd { r_sign: i64, surd_sign: i64 },
    /// `c·√λ`
    SqrtLambda(Ratio),
}

impl A0Rule {
    pub fn eval<R: Real>(&self, r: &R, lambda: &R) -> R {
        match *self {
            A0Rule::Surd { r_sign, surd_sign } => {
                let disc = r.square() - R::from_f64(4.0) * lambda.clone();
                let surd = (R::from_f64(5.0) * disc).sqrt();
                (R::from_f64((5 * r_sign) as f64) * r.clone() + R::from_f64(surd_sign as f64) * surd)
                    / R::from_f64(60.0)
            }
            A0Rule::SqrtLambda((n, d)) => R::from_ratio(n, d) * lambda.sqrt(),
        }
    }
}

/// Which `(r, λ)` a family can be instantiated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    /// `r > 0` and `r² − 4λ ≥ 0`
    PositiveRSurd,
    /// `r < 0` and `r² − 4λ ≥ 0`
    NegativeRSurd,
    /// `λ > 0`; `r` is not a free parameter
    PositiveLambda,
}

impl Admissibility {
    pub fn check(self, r: f64, lambda: f64) -> Result<(), CatalogError> {
        let bad = |why: &str| Err(CatalogError::Inadmissible(format!("(r, lambda) = ({r}, {lambda}): {why}")));
        if !r.is_finite() || !lambda.is_finite() {
            return bad("non-finite parameters");
        }
        match self {
            Admissibility::PositiveRSurd | Admissibility::NegativeRSurd => {
                let sign_ok = if self == Admissibility::PositiveRSurd { r > 0.0 } else { r < 0.0 };
                if !sign_ok {
                    return bad(if self == Admissibility::PositiveRSurd { "requires r > 0" } else { "requires r < 0" });
                }
                if r * r - 4.0 * lambda < 0.0 {
                    return bad("requires r^2 - 4 lambda >= 0");
                }
            }
            Admissibility::PositiveLambda => {
                if lambda <= 0.0 {
                    return bad("requires lambda > 0");
                }
            }
        }
        Ok(())
    }

    pub fn describe(self) -> &'static str {
        match self {
            Admissibility::PositiveRSurd => "r > 0, r^2 - 4 lambda >= 0",
            Admissibility::NegativeRSurd => "r < 0, r^2 - 4 lambda >= 0",
            Admissibility::PositiveLambda => "lambda > 0",
        }
    }
}

/// Printed `u(x, t)` as `A + (P + Q·g(kξ))/(R·g(kξ) + S)`, `ξ = x + λt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Template {
    pub kernel: Kernel,
    pub wave: Wave,
    pub a: Lin,
    pub p: Lin,
    pub q: Lin,
    pub rr: Lin,
    pub s: Lin,
}

/// How `r` enters the underlying Riccati solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectiveR {
    R,
    NegR,
    TwoSqrtLambda,
}

impl EffectiveR {
    pub fn eval(self, r: f64, lambda: f64) -> f64 {
        match self {
            EffectiveR::R => r,
            EffectiveR::NegR => -r,
            EffectiveR::TwoSqrtLambda => 2.0 * lambda.sqrt(),
        }
    }
}

/// Riccati solution under which a row's printed form actually arises: `u = a0 + a1·σ_case`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Effective {
    pub case: CaseId,
    pub e: i8,
    pub rho: i8,
    pub mu: f64,
    pub a1: f64,
    pub r: EffectiveR,
}

/// One tabulated solution family.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionFamily {
    pub id: String,
    pub table: u8,
    pub row: u8,
    /// Header signs as printed.
    pub e: i8,
    pub rho: i8,
    pub mu: GaussianRational,
    pub a1: GaussianRational,
    pub b1: GaussianRational,
    pub a0_rule: A0Rule,
    pub a0_formula: &'static str,
    pub u_template: &'static str,
    pub template: Template,
    pub admissibility: Admissibility,
    pub effective: Effective,
    pub notes: Vec<&'static str>,
}

#[derive(Serialize)]
struct FamilyJson<'a> {
    family_id: &'a str,
    table: u8,
    row: u8,
    e: i8,
    rho: i8,
    mu: &'a GaussianRational,
    a1: &'a GaussianRational,
    b1: &'a GaussianRational,
    a0_formula: &'a str,
    u_template: &'a str,
    admissibility: &'a str,
    effective: &'a Effective,
    notes: &'a [&'static str],
}

impl Serialize for SolutionFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FamilyJson {
            family_id: &self.id,
            table: self.table,
            row: self.row,
            e: self.e,
            rho: self.rho,
            mu: &self.mu,
            a1: &self.a1,
            b1: &self.b1,
            a0_formula: self.a0_formula,
            u_template: self.u_template,
            admissibility: self.admissibility.describe(),
            effective: &self.effective,
            notes: &self.notes,
        }
        .serialize(s)
    }
}

impl SolutionFamily {
    /// Does `(r, λ)` admit a real instantiation?
    pub fn check_admissible(&self, r: f64, lambda: f64) -> Result<(), CatalogError> {
        self.admissibility.check(r, lambda)
    }

    /// `r` implied by the printed form: the free `r` for surd rows, `k²` otherwise.
    pub fn printed_r(&self, r: f64, lambda: f64) -> f64 {
        match self.admissibility {
            Admissibility::PositiveLambda => self.template.wave.eval(&r, &lambda).powi(2),
            _ => r,
        }
    }

    pub fn a0_value(&self, r: f64, lambda: f64) -> f64 {
        self.a0_rule.eval(&r, &lambda)
    }

    pub fn to_latex_row(&self) -> String {
        let cplx = |g: &GaussianRational| g.to_string().replace("*", "");
        format!(
            "{} & {} & {} & {} \\\\",
            self.a0_formula.replace('√', "\\sqrt").replace('λ', "\\lambda"),
            cplx(&self.a1),
            cplx(&self.mu),
            self.u_template.replace('√', "\\sqrt").replace('λ', "\\lambda").replace('ξ', "\\xi")
        )
    }
}

/// Instantiated constants of a [`Template`] in the number type `R`.
#[derive(Debug, Clone)]
pub struct FormCoeffs<R> {
    pub kernel: Kernel,
    pub a: R,
    pub p: R,
    pub q: R,
    pub rr: R,
    pub s: R,
    pub k: R,
    /// `ξ = x + speed·t`.
    pub speed: R,
    /// Background level the `a1` perturbation pivots about.
    pub background: R,
    /// Multiplier on `u − background`; 1 for the unperturbed family.
    pub a1_scale: R,
}

impl<R: Real> FormCoeffs<R> {
    pub fn denominator(&self, xi: R) -> R {
        let g = self.kernel.apply(self.k.clone() * xi);
        self.rr.clone() * g + self.s.clone()
    }

    /// `u` as a function of `ξ`.
    pub fn profile(&self, xi: R) -> R {
        let g = self.kernel.apply(self.k.clone() * xi);
        let num = self.p.clone() + self.q.clone() * g.clone();
        let den = self.rr.clone() * g + self.s.clone();
        let u = self.a.clone() + num / den;
        self.background.clone() + self.a1_scale.clone() * (u - self.background.clone())
    }

    pub fn eval(&self, x: R, t: R) -> R {
        self.profile(x + self.speed.clone() * t)
    }
}

/// An instantiated family `u(x, t)`.
#[derive(Debug, Clone)]
pub struct Solution {
    pub family: SolutionFamily,
    pub r: f64,
    pub lambda: f64,
    pub a0: f64,
    speed: f64,
    a1_scale: f64,
    pub coeffs: FormCoeffs<f64>,
}

impl Solution {
    pub fn coeffs_in<R: Real>(&self) -> FormCoeffs<R> {
        let t = &self.family.template;
        let r = R::from_f64(self.r);
        let lambda = R::from_f64(self.lambda);
        let sl = if self.family.admissibility == Admissibility::PositiveLambda {
            lambda.sqrt()
        } else {
            R::from_f64(self.lambda.max(0.0).sqrt())
        };
        let a0 = self.family.a0_rule.eval(&r, &lambda);
        let a = t.a.eval(&a0, &r, &sl);
        let q = t.q.eval(&a0, &r, &sl);
        let rr = t.rr.eval(&a0, &r, &sl);
        // u − a1·σ is constant in g and σ = r_eff/(g + μ) vanishes as g → ∞, so the
        // effective a0 is the formal limit A + Q/R.
        let background = a.clone() + q.clone() / rr.clone();
        FormCoeffs {
            kernel: t.kernel,
            a,
            p: t.p.eval(&a0, &r, &sl),
            q,
            rr,
            s: t.s.eval(&a0, &r, &sl),
            k: t.wave.eval(&r, &lambda),
            speed: R::from_f64(self.speed),
            background,
            a1_scale: R::from_f64(self.a1_scale),
        }
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    /// Same profile travelling at another speed.
    pub fn with_speed(mut self, speed: f64) -> Self {
        self.speed = speed;
        self.coeffs.speed = speed;
        self
    }

    /// `u → background + factor·(u − background)`, i.e. `a1 → factor·a1`.
    pub fn with_a1_scale(mut self, factor: f64) -> Self {
        self.a1_scale = factor;
        self.coeffs.a1_scale = factor;
        self
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        self.coeffs.eval(x, t)
    }

    pub fn profile(&self, xi: f64) -> f64 {
        self.coeffs.profile(xi)
    }

    pub fn denominator(&self, xi: f64) -> f64 {
        self.coeffs.denominator(xi)
    }

    /// Constant level `u − a1·σ` of the effective Riccati representation.
    pub fn background(&self) -> f64 {
        self.coeffs.background
    }

    /// Is `ξ` at least `margin` away from every zero of the denominator?
    ///
    /// Checked by sampling the denominator on `[ξ − margin, ξ + margin]`; double zeros
    /// (tangencies) are caught by the magnitude floor rather than a sign change.
    pub fn is_regular(&self, xi: f64, margin: f64) -> bool {
        // at least 16 samples per side and 8 per unit of k·ξ, so wide margins still see poles
        let samples = ((8.0 * self.coeffs.k.abs() * margin).ceil() as i32).clamp(16, 1 << 14);
        let scale = self.coeffs.rr.abs() + self.coeffs.s.abs();
        let floor = POLE_THRESHOLD.max(1e-3 * scale * (self.coeffs.k * margin).min(1.0).powi(2));
        let d0 = self.denominator(xi);
        if !(d0.abs() > POLE_THRESHOLD) {
            return false;
        }
        (-samples..=samples).all(|j| {
            let d = self.denominator(xi + margin * j as f64 / samples as f64);
            d.abs() > floor && d.signum() == d0.signum()
        })
    }

    /// `u = a0 + a1·σ` rebuilt from the effective Riccati parameters.
    pub fn effective_eval(&self, xi: f64) -> Result<f64, CatalogError> {
        let eff = &self.family.effective;
        let r_eff = eff.r.eval(self.r, self.lambda);
        let p = RiccatiParams::new(eff.e, eff.rho, eff.mu, r_eff);
        let (sigma, _) = eval_sigma_tau(eff.case, &p, CaseIForm { c: 0.0 }, xi)?;
        Ok(self.background() + self.a1_scale * eff.a1 * sigma)
    }
}

/// `u` with its partial derivatives through `∂x⁵` and `∂t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Jet {
    pub value: f64,
    /// `∂xᵏu`, `k = 1..5`
    pub dx: [f64; 5],
    pub dt: f64,
}

impl From<Jet2> for Jet {
    fn from(j: Jet2) -> Jet {
        let mut dx = [0.0; 5];
        for (k, slot) in dx.iter_mut().enumerate() {
            *slot = j.derivative(k + 1, 0);
        }
        Jet { value: j.value(), dx, dt: j.derivative(0, 1) }
    }
}

/// Derivatives of `u` at `(x, t)` by truncated Taylor arithmetic.
pub fn taylor_eval(u: &Solution, x: f64, t: f64) -> Result<Jet, CatalogError> {
    let xi = x + u.speed * t;
    let den = u.denominator(xi);
    if !(den.abs() > POLE_THRESHOLD) {
        return Err(CatalogError::Pole { xi, denominator: den });
    }
    let jet = u.coeffs_in::<Jet2>().eval(Jet2::var_x(x), Jet2::var_t(t));
    if !jet.is_finite() {
        return Err(CatalogError::Pole { xi, denominator: den });
    }
    Ok(jet.into())
}

/// Instantiate a family at `(λ, r)`; `r` is ignored by the `√λ` rows.
pub fn build_solution(f: &SolutionFamily, lambda: f64, r: f64) -> Result<Solution, CatalogError> {
    f.check_admissible(r, lambda)?;
    let mut sol = Solution {
        family: f.clone(),
        r,
        lambda,
        a0: f.a0_value(r, lambda),
        speed: lambda,
        a1_scale: 1.0,
        coeffs: FormCoeffs {
            kernel: f.template.kernel,
            a: 0.0,
            p: 0.0,
            q: 0.0,
            rr: 0.0,
            s: 0.0,
            k: 0.0,
            speed: 0.0,
            background: 0.0,
            a1_scale: 1.0,
        },
    };
    sol.coeffs = sol.coeffs_in::<f64>();
    Ok(sol)
}

fn gq(re: Ratio, im: Ratio) -> GaussianRational {
    let re = GaussianRational::from_frac(re.0, re.1);
    let im = GaussianRational::from_frac(im.0, im.1);
    &re + &(&im * &GaussianRational::i())
}

fn real(n: i64, d: i64) -> GaussianRational {
    GaussianRational::from_frac(n, d)
}

struct Row {
    a0: A0Rule,
    a0_text: &'static str,
    a1: GaussianRational,
    mu: GaussianRational,
    u_text: &'static str,
    template: Template,
    effective: Effective,
    notes: Vec<&'static str>,
}

const SURD_MM: A0Rule = A0Rule::Surd { r_sign: 1, surd_sign: -1 };
const SURD_MP: A0Rule = A0Rule::Surd { r_sign: 1, surd_sign: 1 };
const SURD_NM: A0Rule = A0Rule::Surd { r_sign: -1, surd_sign: -1 };
const SURD_NP: A0Rule = A0Rule::Surd { r_sign: -1, surd_sign: 1 };

const A0_MM: &str = "(5r - √5·√(r² - 4λ))/60";
const A0_MP: &str = "(5r + √5·√(r² - 4λ))/60";
const A0_NM: &str = "(-5r - √5·√(r² - 4λ))/60";
const A0_NP: &str = "(-5r + √5·√(r² - 4λ))/60";

fn tpl(kernel: Kernel, wave: Wave, a: Lin, p: Lin, q: Lin, rr: i64, s: i64) -> Template {
    Template { kernel, wave, a, p, q, rr: Lin::int(rr), s: Lin::int(s) }
}

fn eff(case: CaseId, mu: f64, a1: f64, r: EffectiveR) -> Effective {
    let (e, rho) = case.signs().unwrap_or((1, 1));
    Effective { case, e, rho, mu, a1, r }
}

fn half(sign: i64) -> GaussianRational {
    real(sign, 2)
}

fn table1() -> Vec<Row> {
    use Kernel::Sin;
    use Wave::*;
    let z = Lin::zero();
    let flag = "header signs (e, rho) = (1, 1) conflict with the csc form, which arises for (1, -1)";
    let csc_m = tpl(Sin, SqrtR, Lin::a0(), Lin::r(1, 2), z, 1, -1);
    let csc_p = tpl(Sin, SqrtR, Lin::a0(), Lin::r(-1, 2), z, 1, 1);
    vec![
        Row {
            a0: SURD_MM,
            a0_text: A0_MM,
            a1: half(1),
            mu: real(-1, 1),
            u_text: "a0 + r·csc(√r ξ)/(2(1 - csc(√r ξ)))",
            template: csc_m,
            effective: eff(CaseId::IICsc, -1.0, 0.5, EffectiveR::R),
            notes: vec![flag],
        },
        Row {
            a0: SURD_MP,
            a0_text: A0_MP,
            a1: half(1),
            mu: real(-1, 1),
            u_text: "a0 + r·csc(√r ξ)/(2(1 - csc(√r ξ)))",
            template: csc_m,
            effective: eff(CaseId::IICsc, -1.0, 0.5, EffectiveR::R),
            notes: vec![flag],
        },
        Row {
            a0: SURD_MP,
            a0_text: A0_MP,
            a1: half(-1),
            mu: real(1, 1),
            u_text: "a0 - r·csc(√r ξ)/(2(1 + csc(√r ξ)))",
            template: csc_p,
            effective: eff(CaseId::IICsc, 1.0, -0.5, EffectiveR::R),
            notes: vec![flag],
        },
        Row {
            a0: A0Rule::SqrtLambda((1, 6)),
            a0_text: "√λ/6",
            a1: half(-1),
            mu: real(1, 1),
            u_text: "√λ/6 - √λ·csc(⁴√(4λ) ξ)/(1 + csc(⁴√(4λ) ξ))",
            template: tpl(Sin, QuarticFourLambda, Lin::sl(1, 6), Lin::sl(-1, 1), z, 1, 1),
            effective: eff(CaseId::IICsc, 1.0, -0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![flag],
        },
    ]
}

fn table2() -> Vec<Row> {
    use Kernel::Sin;
    use Wave::*;
    let z = Lin::zero();
    let flag = "complex mu and a1 as printed; the printed u is real and equals a Case II (csc) solution with r_eff = -r";
    let shifted = Lin::a0().plus_r(1, 2);
    vec![
        Row {
            a0: SURD_NM,
            a0_text: A0_NM,
            a1: gq(ZERO, (-1, 2)),
            mu: gq(ZERO, (-1, 1)),
            u_text: "a0 + (r/2)·(1 + 1/(csc(√(-r) ξ) - 1))",
            template: tpl(Sin, SqrtNegR, shifted, z, Lin::r(1, 2), -1, 1),
            effective: eff(CaseId::IICsc, -1.0, 0.5, EffectiveR::NegR),
            notes: vec![flag],
        },
        Row {
            a0: SURD_NP,
            a0_text: A0_NP,
            a1: gq(ZERO, (-1, 2)),
            mu: gq(ZERO, (-1, 1)),
            u_text: "a0 + (r/2)·(1 + 1/(csc(√(-r) ξ) - 1))",
            template: tpl(Sin, SqrtNegR, shifted, z, Lin::r(1, 2), -1, 1),
            effective: eff(CaseId::IICsc, -1.0, 0.5, EffectiveR::NegR),
            notes: vec![flag],
        },
        Row {
            a0: SURD_NP,
            a0_text: A0_NP,
            a1: gq(ZERO, (1, 2)),
            mu: gq(ZERO, (1, 1)),
            u_text: "a0 + (r/2)·(1 - 1/(csc(√(-r) ξ) + 1))",
            template: tpl(Sin, SqrtNegR, shifted, z, Lin::r(-1, 2), 1, 1),
            effective: eff(CaseId::IICsc, 1.0, -0.5, EffectiveR::NegR),
            notes: vec![flag],
        },
        Row {
            a0: A0Rule::SqrtLambda((-2, 3)),
            a0_text: "-5√λ/6 + √λ/6",
            a1: gq(ZERO, (1, 2)),
            mu: gq(ZERO, (1, 1)),
            u_text: "√λ/(csc(⁴√(4λ) ξ) + 1)",
            template: tpl(Sin, QuarticFourLambda, z, z, Lin::sl(1, 1), 1, 1),
            effective: eff(CaseId::IICsc, 1.0, -0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![
                flag,
                "printed u has background √λ, which differs from both the printed a0 and the value √λ/6 the algebraic system requires",
            ],
        },
    ]
}

fn table3() -> Vec<Row> {
    use Kernel::*;
    use Wave::*;
    let z = Lin::zero();
    let sec_m = tpl(Cos, SqrtR, Lin::a0(), Lin::r(1, 2), z, 1, -1);
    let sec_p = tpl(Cos, SqrtR, Lin::a0(), Lin::r(-1, 2), z, 1, 1);
    let flip = "hyperbolic form arises from Case III (e = -1) although the header gives e = 1";
    vec![
        Row {
            a0: SURD_MM,
            a0_text: A0_MM,
            a1: half(1),
            mu: real(-1, 1),
            u_text: "a0 + r·sec(√r ξ)/(2(1 - sec(√r ξ)))",
            template: sec_m,
            effective: eff(CaseId::IISec, -1.0, 0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: SURD_MP,
            a0_text: A0_MP,
            a1: half(1),
            mu: real(-1, 1),
            u_text: "a0 + r·sec(√r ξ)/(2(1 - sec(√r ξ)))",
            template: sec_m,
            effective: eff(CaseId::IISec, -1.0, 0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: SURD_MM,
            a0_text: A0_MM,
            a1: half(-1),
            mu: real(1, 1),
            u_text: "a0 - r·sec(√r ξ)/(2(sec(√r ξ) + 1))",
            template: sec_p,
            effective: eff(CaseId::IISec, 1.0, -0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: SURD_MP,
            a0_text: A0_MP,
            a1: half(-1),
            mu: real(1, 1),
            u_text: "a0 - r·sec(√r ξ)/(2(sec(√r ξ) + 1))",
            template: sec_p,
            effective: eff(CaseId::IISec, 1.0, -0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: A0Rule::SqrtLambda((-1, 6)),
            a0_text: "-√λ/6",
            a1: half(1),
            mu: real(-1, 1),
            u_text: "-√λ/6 - (1/2)·√λ·csch²(⁴√(λ/4) ξ)",
            template: tpl(Sinh2, QuarticQuarterLambda, Lin::sl(-1, 6), Lin::sl(-1, 2), z, 1, 0),
            effective: eff(CaseId::III, -1.0, -0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![
                flip,
                "csch² form: equals Case III with mu = -1, a1 = -1/2, r = 2√λ via cosh(z) - 1 = 2 sinh²(z/2)",
            ],
        },
        Row {
            a0: A0Rule::SqrtLambda((-1, 6)),
            a0_text: "-√λ/6",
            a1: half(-1),
            mu: real(1, 1),
            u_text: "-√λ/6 + √λ/(cosh(⁴√(4λ) ξ) + 1)",
            template: tpl(Cosh, QuarticFourLambda, Lin::sl(-1, 6), Lin::sl(1, 1), z, 1, 1),
            effective: eff(CaseId::III, 1.0, 0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![flip],
        },
        Row {
            a0: A0Rule::SqrtLambda((1, 6)),
            a0_text: "√λ/6",
            a1: half(1),
            mu: real(-1, 1),
            u_text: "√λ/6 + √λ·sec(⁴√(4λ) ξ)/(1 - sec(⁴√(4λ) ξ))",
            template: tpl(Cos, QuarticFourLambda, Lin::sl(1, 6), Lin::sl(1, 1), z, 1, -1),
            effective: eff(CaseId::IISec, -1.0, 0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![],
        },
    ]
}

fn table4() -> Vec<Row> {
    use Kernel::Cosh;
    use Wave::*;
    let z = Lin::zero();
    let sech_m = tpl(Cosh, SqrtR, Lin::a0(), Lin::r(-1, 2), z, 1, -1);
    let sech_p = tpl(Cosh, SqrtR, Lin::a0(), Lin::r(1, 2), z, 1, 1);
    vec![
        Row {
            a0: SURD_NM,
            a0_text: A0_NM,
            a1: half(-1),
            mu: real(-1, 1),
            u_text: "a0 - r·sech(√r ξ)/(2(1 - sech(√r ξ)))",
            template: sech_m,
            effective: eff(CaseId::III, -1.0, -0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: SURD_NP,
            a0_text: A0_NP,
            a1: half(-1),
            mu: real(-1, 1),
            u_text: "a0 - r·sech(√r ξ)/(2(1 - sech(√r ξ)))",
            template: sech_m,
            effective: eff(CaseId::III, -1.0, -0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: SURD_NM,
            a0_text: A0_NM,
            a1: half(1),
            mu: real(1, 1),
            u_text: "a0 + r·sech(√r ξ)/(2(sech(√r ξ) + 1))",
            template: sech_p,
            effective: eff(CaseId::III, 1.0, 0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: SURD_NP,
            a0_text: A0_NP,
            a1: half(1),
            mu: real(1, 1),
            u_text: "a0 + r·sech(√r ξ)/(2(sech(√r ξ) + 1))",
            template: sech_p,
            effective: eff(CaseId::III, 1.0, 0.5, EffectiveR::R),
            notes: vec![],
        },
        Row {
            a0: A0Rule::SqrtLambda((-1, 6)),
            a0_text: "-√λ/6",
            a1: half(-1),
            mu: real(-1, 1),
            u_text: "-√λ/6 - √λ·sech(⁴√(4λ) ξ)/(1 - sech(⁴√(4λ) ξ))",
            template: tpl(Cosh, QuarticFourLambda, Lin::sl(-1, 6), Lin::sl(-1, 1), z, 1, -1),
            effective: eff(CaseId::III, -1.0, -0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![],
        },
        Row {
            a0: A0Rule::SqrtLambda((-1, 6)),
            a0_text: "-√λ/6",
            a1: half(1),
            mu: real(1, 1),
            u_text: "-√λ/6 + √λ·sech(⁴√(4λ) ξ)/(sech(⁴√(4λ) ξ) + 1)",
            template: tpl(Cosh, QuarticFourLambda, Lin::sl(-1, 6), Lin::sl(1, 1), z, 1, 1),
            effective: eff(CaseId::III, 1.0, 0.5, EffectiveR::TwoSqrtLambda),
            notes: vec![],
        },
    ]
}

/// Headers: `(e, ρ, admissibility of the surd rows)`.
const HEADERS: [(i8, i8, Admissibility); 4] = [
    (1, 1, Admissibility::PositiveRSurd),
    (-1, 1, Admissibility::NegativeRSurd),
    (1, -1, Admissibility::PositiveRSurd),
    (-1, -1, Admissibility::PositiveRSurd),
];

/// All 21 tabulated families, ordered by table then row.
pub fn list_families() -> Vec<SolutionFamily> {
    let tables = [table1(), table2(), table3(), table4()];
    let mut out = Vec::new();
    for (ti, rows) in tables.into_iter().enumerate() {
        let (e, rho, surd_adm) = HEADERS[ti];
        for (ri, row) in rows.into_iter().enumerate() {
            let admissibility = match row.a0 {
                A0Rule::Surd { .. } => surd_adm,
                A0Rule::SqrtLambda(_) => Admissibility::PositiveLambda,
            };
            out.push(SolutionFamily {
                id: format!("T{}R{}", ti + 1, ri + 1),
                table: ti as u8 + 1,
                row: ri as u8 + 1,
                e,
                rho,
                mu: row.mu,
                a1: row.a1,
                b1: real(0, 1),
                a0_rule: row.a0,
                a0_formula: row.a0_text,
                u_template: row.u_text,
                template: row.template,
                admissibility,
                effective: row.effective,
                notes: row.notes,
            });
        }
    }
    out
}

pub fn family(id: &str) -> Option<SolutionFamily> {
    list_families().into_iter().find(|f| f.id.eq_ignore_ascii_case(id))
}
