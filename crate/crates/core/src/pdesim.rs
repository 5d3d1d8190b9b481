//! Integrating-factor RK4 pseudospectral solver for
//! `u_t + u_xxxxx + 30 u u_xxx + 30 u_x u_xx + 180 u² u_x = 0` on `[−L, L)`.

use std::f64::consts::PI;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{build_solution, family, CatalogError, Kernel, Solution};

/// Upper bound on `dt·k_max⁵`; beyond it the explicit nonlinear stages lose stability
/// long before the (exact) linear phase matters.
pub const IF_STABILITY_BUDGET: f64 = 1e3;
/// Maximum allowed `|u(±L) − background|` for the periodic embedding.
pub const BOUNDARY_DECAY: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("non-finite state at t = {}", last_good.t)]
    BlowUp { last_good: SimState },
}

fn default_dealias() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n_modes: usize,
    /// Domain is `[−L, L)`.
    pub half_length: f64,
    pub dt: f64,
    pub t_end: f64,
    pub lambda: f64,
    pub family_id: String,
    /// Free `r` for families that have one.
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default = "default_dealias")]
    pub dealias: bool,
    /// Record a snapshot every this many steps (0: only initial and final).
    #[serde(default)]
    pub snapshot_every: usize,
}

impl SimConfig {
    /// The travelling-wave benchmark: the cosh-profile family at `λ = 1/4` on `[−20π, 20π)`.
    pub fn soliton() -> Self {
        SimConfig {
            n_modes: 512,
            half_length: 20.0 * PI,
            dt: 1e-4,
            t_end: 1.0,
            lambda: 0.25,
            family_id: "T3R6".into(),
            r: None,
            dealias: true,
            snapshot_every: 0,
        }
    }

    pub fn k_max(&self) -> f64 {
        PI * self.n_modes as f64 / (2.0 * self.half_length)
    }

    /// Parses JSON or `key = value` lines (`#` comments allowed).
    pub fn parse(text: &str) -> Result<Self, SimError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            return serde_json::from_str(trimmed).map_err(|e| SimError::Config(e.to_string()));
        }
        let mut map = serde_json::Map::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| SimError::Config(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            let value = if k == "family_id" {
                serde_json::Value::String(v.to_string())
            } else if let Ok(b) = bool::from_str(v) {
                serde_json::Value::Bool(b)
            } else if let Some(x) = parse_number(v) {
                serde_json::json!(x)
            } else {
                return Err(SimError::Config(format!("line {}: cannot parse value `{v}`", n + 1)));
            };
            map.insert(k.to_string(), value);
        }
        if let Some(serde_json::Value::Number(n)) = map.get("n_modes") {
            if let Some(f) = n.as_f64() {
                map.insert("n_modes".into(), serde_json::json!(f as u64));
            }
        }
        if let Some(serde_json::Value::Number(n)) = map.get("snapshot_every") {
            if let Some(f) = n.as_f64() {
                map.insert("snapshot_every".into(), serde_json::json!(f as u64));
            }
        }
        serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| SimError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::Config(m));
        if self.n_modes < 64 || !self.n_modes.is_power_of_two() {
            return bad(format!("n_modes = {} must be a power of two >= 64", self.n_modes));
        }
        if !(self.half_length > 0.0) || !(self.dt > 0.0) || !(self.t_end >= 0.0) {
            return bad("half_length and dt must be positive, t_end non-negative".into());
        }
        let budget = self.dt * self.k_max().powi(5);
        if budget > IF_STABILITY_BUDGET {
            return bad(format!("dt * k_max^5 = {budget:.3e} exceeds the budget {IF_STABILITY_BUDGET:e}"));
        }
        Ok(())
    }
}

/// `π`, `pi`, `20pi`, `20*pi` and plain floats.
fn parse_number(v: &str) -> Option<f64> {
    if let Ok(x) = v.parse::<f64>() {
        return Some(x);
    }
    let lower = v.to_ascii_lowercase().replace('π', "pi");
    let stripped = lower.strip_suffix("pi")?.trim().trim_end_matches('*').trim();
    if stripped.is_empty() {
        Some(PI)
    } else {
        stripped.parse::<f64>().ok().map(|c| c * PI)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimState {
    pub t: f64,
    pub u: Vec<f64>,
}

impl SimState {
    pub fn mean(&self) -> f64 {
        self.u.iter().sum::<f64>() / self.u.len() as f64
    }
}

/// Exact profile used for initial data and error measurement; must be bounded on the line.
fn bounded_solution(cfg: &SimConfig) -> Result<Solution, SimError> {
    let f = family(&cfg.family_id).ok_or_else(|| CatalogError::UnknownFamily(cfg.family_id.clone()))?;
    let t = &f.template;
    let bounded = t.kernel == Kernel::Cosh && {
        let sol = build_solution(&f, cfg.lambda, cfg.r.unwrap_or(1.0))?;
        sol.coeffs.rr * sol.coeffs.s > 0.0
    };
    if !bounded {
        return Err(SimError::Config(format!("family {} has poles on the real line", f.id)));
    }
    let r = match cfg.r {
        Some(r) => r,
        None if f.admissibility == crate::catalog::Admissibility::PositiveLambda => 2.0 * cfg.lambda.max(0.0).sqrt(),
        None => return Err(SimError::Config(format!("family {} needs r", f.id))),
    };
    Ok(build_solution(&f, cfg.lambda, r)?)
}

pub struct Simulator {
    cfg: SimConfig,
    exact: Solution,
    x: Vec<f64>,
    k: Vec<f64>,
    mask: Vec<f64>,
    /// Linear dispersion `u_t = −u_xxxxx` gives `û_t = −i k⁵ û`; this holds `k⁵`.
    k5: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Simulator {
    pub fn new(cfg: SimConfig) -> Result<Self, SimError> {
        cfg.validate()?;
        let exact = bounded_solution(&cfg)?;
        let n = cfg.n_modes;
        let l = cfg.half_length;
        let bg = exact.background();
        let edge = (exact.eval(-l, 0.0) - bg).abs().max((exact.eval(l, cfg.t_end) - bg).abs());
        if edge > BOUNDARY_DECAY {
            return Err(SimError::Config(format!(
                "profile has not decayed at the boundary: |u - background| = {edge:.3e}"
            )));
        }
        let x: Vec<f64> = (0..n).map(|j| -l + 2.0 * l * j as f64 / n as f64).collect();
        let k: Vec<f64> = (0..n)
            .map(|j| {
                let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
                if j == n / 2 {
                    0.0
                } else {
                    m * PI / l
                }
            })
            .collect();
        let kmax = cfg.k_max();
        // The Nyquist mode has no well-defined odd derivative; it is always filtered.
        let mask = k
            .iter()
            .enumerate()
            .map(|(j, &kk)| if j == n / 2 || (cfg.dealias && kk.abs() > 2.0 / 3.0 * kmax) { 0.0 } else { 1.0 })
            .collect();
        let k5 = k.iter().map(|&kk| kk.powi(5)).collect();
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Simulator { cfg, exact, x, k, mask, k5, fwd, inv })
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn grid(&self) -> &[f64] {
        &self.x
    }

    pub fn exact(&self) -> &Solution {
        &self.exact
    }

    pub fn exact_state(&self, t: f64) -> SimState {
        SimState { t, u: self.x.iter().map(|&x| self.exact.eval(x, t)).collect() }
    }

    fn to_spectral(&self, u: &[f64]) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = u.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        self.fwd.process(&mut v);
        v
    }

    fn to_physical(&self, mut v: Vec<Complex64>) -> Vec<f64> {
        self.inv.process(&mut v);
        let s = 1.0 / self.cfg.n_modes as f64;
        v.into_iter().map(|c| c.re * s).collect()
    }

    /// `∂xᵖ` of a spectral field, returned in physical space.
    fn derivative(&self, vh: &[Complex64], order: u32) -> Vec<f64> {
        let d: Vec<Complex64> = vh
            .iter()
            .zip(&self.k)
            .map(|(c, &kk)| c * Complex64::new(0.0, kk).powu(order))
            .collect();
        self.to_physical(d)
    }

    /// Spectral derivative of physical data.
    pub fn differentiate(&self, u: &[f64], order: u32) -> Vec<f64> {
        let vh = self.to_spectral(u);
        self.derivative(&vh, order)
    }

    /// `−(30 u u_xxx + 30 u_x u_xx + 180 u² u_x)` in spectral space.
    fn nonlinear(&self, vh: &[Complex64]) -> Vec<Complex64> {
        let vh: Vec<Complex64> = vh.iter().zip(&self.mask).map(|(c, m)| c * m).collect();
        let u = self.derivative(&vh, 0);
        let u1 = self.derivative(&vh, 1);
        let u2 = self.derivative(&vh, 2);
        let u3 = self.derivative(&vh, 3);
        let n: Vec<f64> = (0..u.len())
            .map(|j| -(30.0 * u[j] * u3[j] + 30.0 * u1[j] * u2[j] + 180.0 * u[j] * u[j] * u1[j]))
            .collect();
        let mut nh = self.to_spectral(&n);
        for (c, m) in nh.iter_mut().zip(&self.mask) {
            *c *= m;
        }
        nh
    }

    /// `u_t` of a state as the solver sees it.
    pub fn rhs(&self, s: &SimState) -> Vec<f64> {
        let vh = self.to_spectral(&s.u);
        let nh = self.nonlinear(&vh);
        let lin = self.derivative(&vh, 5);
        let n = self.to_physical(nh);
        lin.iter().zip(n).map(|(l, n)| -l + n).collect()
    }

    /// `exp(∓i k⁵ t)`, evaluated from the absolute time so phase errors never accumulate.
    fn phase(&self, t: f64, sign: f64) -> Vec<Complex64> {
        self.k5.iter().map(|&w| Complex64::from_polar(1.0, -sign * w * t)).collect()
    }

    /// Interaction-picture field `ŵ = exp(i k⁵ t)·û`.
    pub fn to_interaction(&self, s: &SimState) -> Vec<Complex64> {
        let vh = self.to_spectral(&s.u);
        vh.iter().zip(self.phase(s.t, -1.0)).map(|(a, p)| a * p).collect()
    }

    pub fn from_interaction(&self, w: &[Complex64], t: f64) -> SimState {
        let vh: Vec<Complex64> = w.iter().zip(self.phase(t, 1.0)).map(|(a, p)| a * p).collect();
        SimState { t, u: self.to_physical(vh) }
    }

    /// `ŵ_t = exp(i k⁵ t)·N(exp(−i k⁵ t)·ŵ)`.
    fn interaction_rhs(&self, t: f64, w: &[Complex64]) -> Vec<Complex64> {
        let fwd = self.phase(t, 1.0);
        let vh: Vec<Complex64> = w.iter().zip(&fwd).map(|(a, p)| a * p).collect();
        self.nonlinear(&vh).iter().zip(&fwd).map(|(n, p)| n * p.conj()).collect()
    }

    /// Classical RK4 on the interaction-picture field: the Lawson integrating-factor
    /// scheme, with the linear phase applied exactly.
    pub fn advance(&self, w: &[Complex64], t: f64) -> Vec<Complex64> {
        let dt = self.cfg.dt;
        let axpy = |c: f64, b: &[Complex64]| -> Vec<Complex64> { w.iter().zip(b).map(|(x, y)| x + y * c).collect() };
        let k1 = self.interaction_rhs(t, w);
        let k2 = self.interaction_rhs(t + dt / 2.0, &axpy(dt / 2.0, &k1));
        let k3 = self.interaction_rhs(t + dt / 2.0, &axpy(dt / 2.0, &k2));
        let k4 = self.interaction_rhs(t + dt, &axpy(dt, &k3));
        (0..w.len()).map(|j| w[j] + (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]) * (dt / 6.0)).collect()
    }

    /// One integrating-factor RK4 step in physical variables.
    pub fn step(&self, s: &SimState) -> Result<SimState, SimError> {
        let w = self.advance(&self.to_interaction(s), s.t);
        let next = self.from_interaction(&w, s.t + self.cfg.dt);
        if next.u.iter().any(|v| !v.is_finite()) {
            return Err(SimError::BlowUp { last_good: s.clone() });
        }
        Ok(next)
    }

    /// Location of the profile maximum: grid argmax refined by Newton on the spectral
    /// interpolant.
    pub fn peak_location(&self, s: &SimState) -> f64 {
        let (j, _) = s.u.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        let vh = self.to_spectral(&s.u);
        let n = self.cfg.n_modes as f64;
        let eval = |x: f64, order: u32| -> f64 {
            let mut acc = 0.0;
            for (c, &kk) in vh.iter().zip(&self.k) {
                let phase = Complex64::new(0.0, kk * (x + self.cfg.half_length)).exp();
                acc += (c * Complex64::new(0.0, kk).powu(order) * phase).re;
            }
            acc / n
        };
        let mut x = self.x[j];
        let h = 2.0 * self.cfg.half_length / n;
        for _ in 0..20 {
            let (d1, d2) = (eval(x, 1), eval(x, 2));
            if d2 == 0.0 {
                break;
            }
            let step = (d1 / d2).clamp(-h, h);
            x -= step;
            if step.abs() < 1e-14 {
                break;
            }
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: f64,
    /// Rows `(x, u_numeric, u_exact, error)`.
    pub rows: Vec<[f64; 4]>,
}

impl Snapshot {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# t = {}\n# x\tu_numeric\tu_exact\terror\n", self.t);
        for r in &self.rows {
            out.push_str(&format!("{:.17e}\t{:.17e}\t{:.17e}\t{:.17e}\n", r[0], r[1], r[2], r[3]));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimMetrics {
    pub family_id: String,
    pub steps: usize,
    pub t_end: f64,
    pub linf_error: f64,
    pub l2_error: f64,
    pub measured_speed: f64,
    pub expected_speed: f64,
    pub speed_rel_error: f64,
    pub max_mean_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimRun {
    pub metrics: SimMetrics,
    #[serde(skip)]
    pub final_state: SimState,
    #[serde(skip)]
    pub snapshots: Vec<Snapshot>,
}

fn errors(sim: &Simulator, s: &SimState) -> (f64, f64, Snapshot) {
    let exact = sim.exact_state(s.t);
    let mut linf: f64 = 0.0;
    let mut l2 = 0.0;
    let mut rows = Vec::with_capacity(s.u.len());
    for ((x, a), b) in sim.x.iter().zip(&s.u).zip(&exact.u) {
        let e = a - b;
        linf = linf.max(e.abs());
        l2 += e * e;
        rows.push([*x, *a, *b, e]);
    }
    let dx = 2.0 * sim.cfg.half_length / sim.cfg.n_modes as f64;
    (linf, (l2 * dx).sqrt(), Snapshot { t: s.t, rows })
}

/// Integrates to `t_end` and compares against the translated closed form.
pub fn run(cfg: &SimConfig) -> Result<SimRun, SimError> {
    let sim = Simulator::new(cfg.clone())?;
    let steps = (cfg.t_end / cfg.dt).round() as usize;
    let mut state = sim.exact_state(0.0);
    let mean0 = state.mean();
    let x0 = sim.peak_location(&state);
    let mut drift: f64 = 0.0;
    let mut snapshots = vec![errors(&sim, &state).2];
    let n = cfg.n_modes as f64;
    let mut w = sim.to_interaction(&state);
    for step in 1..=steps {
        let t = state.t;
        let next = sim.advance(&w, t);
        // The zero mode carries the mean and has no linear phase.
        if next.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(SimError::BlowUp { last_good: sim.from_interaction(&w, t) });
        }
        w = next;
        state.t = cfg.dt * step as f64;
        drift = drift.max((w[0].re / n - mean0).abs());
        if cfg.snapshot_every > 0 && step % cfg.snapshot_every == 0 && step != steps {
            snapshots.push(errors(&sim, &sim.from_interaction(&w, state.t)).2);
        }
    }
    state = sim.from_interaction(&w, state.t);
    let (linf, l2, last) = errors(&sim, &state);
    snapshots.push(last);
    let x1 = sim.peak_location(&state);
    let expected = -sim.exact.speed();
    let measured = if state.t > 0.0 { (x1 - x0) / state.t } else { 0.0 };
    let speed_rel_error = if expected != 0.0 { ((measured - expected) / expected).abs() } else { measured.abs() };
    Ok(SimRun {
        metrics: SimMetrics {
            family_id: sim.exact.family.id.clone(),
            steps,
            t_end: state.t,
            linf_error: linf,
            l2_error: l2,
            measured_speed: measured,
            expected_speed: expected,
            speed_rel_error,
            max_mean_drift: drift,
        },
        final_state: state,
        snapshots,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport {
    pub dts: [f64; 2],
    pub reference_dt: f64,
    /// `L∞` differences from the reference run.
    pub errors: [f64; 2],
    pub ratio: f64,
    pub observed_order: f64,
}

/// Temporal convergence: runs at `dt` and `dt/2` against a reference at `dt/10`.
///
/// The reference run isolates the time-stepping error from the spatial floor, which
/// sits below the RK4 error only for a narrow band of `dt`.
pub fn temporal_order(cfg: &SimConfig) -> Result<OrderReport, SimError> {
    let final_u = |dt: f64| -> Result<Vec<f64>, SimError> {
        let c = SimConfig { dt, snapshot_every: 0, ..cfg.clone() };
        Ok(run(&c)?.final_state.u)
    };
    let reference_dt = cfg.dt / 10.0;
    let reference = final_u(reference_dt)?;
    let dts = [cfg.dt, cfg.dt / 2.0];
    let mut errs = [0.0; 2];
    for (slot, dt) in errs.iter_mut().zip(dts) {
        let u = final_u(dt)?;
        *slot = u.iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    }
    let ratio = errs[0] / errs[1];
    Ok(OrderReport { dts, reference_dt, errors: errs, ratio, observed_order: ratio.log2() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_value_config() {
        let cfg = SimConfig::parse(
            "# benchmark\nn_modes = 512\nhalf_length = 20pi\ndt = 1e-4\nt_end = 1\nlambda = 0.25\nfamily_id = T3R6\n",
        )
        .unwrap();
        assert_eq!(cfg.n_modes, 512);
        assert!((cfg.half_length - 20.0 * PI).abs() < 1e-12);
        assert!(cfg.dealias);
        assert_eq!(cfg.family_id, "T3R6");
    }

    #[test]
    fn parses_json_config() {
        let json = serde_json::to_string(&SimConfig::soliton()).unwrap();
        assert_eq!(SimConfig::parse(&json).unwrap(), SimConfig::soliton());
        assert!(SimConfig::parse("{\"n_modes\": 64, \"bogus\": 1}").is_err());
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = SimConfig::soliton();
        c.n_modes = 500;
        assert!(Simulator::new(c).is_err());
        let mut c = SimConfig::soliton();
        c.lambda = 0.0;
        assert!(matches!(Simulator::new(c), Err(SimError::Catalog(_))));
        let mut c = SimConfig::soliton();
        c.family_id = "T3R1".into();
        c.r = Some(1.0);
        assert!(matches!(Simulator::new(c), Err(SimError::Config(_))));
        let mut c = SimConfig::soliton();
        c.dt = 1.0;
        assert!(Simulator::new(c).is_err());
    }
}
