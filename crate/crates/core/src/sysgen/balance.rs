use serde::Serialize;

use crate::reduction::DiffPoly;

/// Degree `slope·m + intercept` of one ODE term after substituting an order-`m` ansatz,
/// kept in half units so the degenerate regime stays integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingDegree {
    pub expression: String,
    #[serde(skip)]
    slope2: i64,
    #[serde(skip)]
    intercept2: i64,
    pub sources: Vec<String>,
}

impl LeadingDegree {
    fn at(&self, m: i64) -> i64 {
        self.slope2 * m + self.intercept2
    }
}

/// How `τ` counts towards the `σ`-degree after eliminating `τ²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeRegime {
    /// `μ² + ρ ≠ 0`: `τ² ~ σ²`, so `τ` has weight 1 and each derivative adds 1.
    Generic,
    /// `μ² + ρ = 0`: `τ² ~ σ`, so `τ` has weight 1/2 and each derivative adds 1/2.
    Degenerate,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegimeBalance {
    pub regime: DegreeRegime,
    pub leading_degrees: Vec<LeadingDegree>,
    pub admissible_m: Vec<u32>,
}

/// A textual coincidence condition `lhs = rhs` between degree expressions in `m`.
#[derive(Debug, Clone, Serialize)]
pub struct Coincidence {
    pub condition: String,
    pub solution_m: Option<u32>,
    /// Expressions in the condition that no ODE term produces in the generic regime.
    pub unmatched_degrees: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BalanceReport {
    /// Generic-regime degrees (the usual bookkeeping).
    pub leading_degrees: Vec<LeadingDegree>,
    pub regimes: Vec<RegimeBalance>,
    pub admissible_m: Vec<u32>,
    pub quoted_coincidences: Vec<Coincidence>,
}

pub const MAX_BALANCE_M: u32 = 10;

fn render_linear(slope2: i64, intercept2: i64) -> String {
    let half = |v: i64| if v % 2 == 0 { format!("{}", v / 2) } else { format!("{}/2", v) };
    let slope = match slope2 {
        2 => "m".to_string(),
        s => format!("{}m", half(s)),
    };
    match intercept2 {
        0 => slope,
        i if i > 0 => format!("{slope}+{}", half(i)),
        i => format!("{slope}-{}", half(-i)),
    }
}

fn term_label(orders: &[u8], coeff: &crate::symkernel::ParamPoly) -> String {
    let mut d = DiffPoly::new();
    d.push(orders.to_vec(), crate::symkernel::ParamPoly::one());
    let base = d.to_string();
    if coeff.contains(crate::symkernel::Symbol::Lambda) {
        format!("λ{base}")
    } else {
        base
    }
}

fn regime_degrees(ode: &DiffPoly, regime: DegreeRegime) -> Vec<LeadingDegree> {
    // in half units: V^(k) has degree 2m + 2k (generic) or 2m + k (degenerate)
    let step = match regime {
        DegreeRegime::Generic => 2,
        DegreeRegime::Degenerate => 1,
    };
    let mut out: Vec<LeadingDegree> = Vec::new();
    for t in ode.terms() {
        let slope2 = 2 * t.orders.len() as i64;
        let intercept2: i64 = t.orders.iter().map(|&k| step * k as i64).sum();
        let label = term_label(&t.orders, &t.coeff);
        match out.iter_mut().find(|d| d.slope2 == slope2 && d.intercept2 == intercept2) {
            Some(d) => d.sources.push(label),
            None => out.push(LeadingDegree {
                expression: render_linear(slope2, intercept2),
                slope2,
                intercept2,
                sources: vec![label],
            }),
        }
    }
    out
}

fn admissible(degrees: &[LeadingDegree]) -> Vec<u32> {
    (1..=MAX_BALANCE_M)
        .filter(|&m| {
            let vals: Vec<i64> = degrees.iter().map(|d| d.at(m as i64)).collect();
            let top = vals.iter().copied().max().unwrap_or(0);
            vals.iter().filter(|&&v| v == top).count() >= 2
        })
        .collect()
}

fn parse_linear(s: &str) -> Option<(i64, i64)> {
    let (a, b) = s.split_once('m')?;
    let slope = if a.is_empty() { 1 } else { a.parse().ok()? };
    let intercept = if b.is_empty() { 0 } else { b.trim_start_matches('+').parse().ok()? };
    Some((slope, intercept))
}

/// Conditions stated for this family in the literature, re-solved by enumeration.
const QUOTED_CONDITIONS: [(&str, &str); 3] = [("3m+2", "2m+3"), ("3m+1", "m+5"), ("2m+3", "m+5")];

/// Admissible ansatz orders: those `m ≤ MAX_BALANCE_M` where at least two distinct leading
/// degree expressions share the maximum, in either degree regime.
pub fn balance_degrees(ode: &DiffPoly) -> BalanceReport {
    let regimes: Vec<RegimeBalance> = [DegreeRegime::Generic, DegreeRegime::Degenerate]
        .into_iter()
        .map(|regime| {
            let leading_degrees = regime_degrees(ode, regime);
            let admissible_m = admissible(&leading_degrees);
            RegimeBalance { regime, leading_degrees, admissible_m }
        })
        .collect();
    let mut admissible_m: Vec<u32> = regimes.iter().flat_map(|r| r.admissible_m.iter().copied()).collect();
    admissible_m.sort_unstable();
    admissible_m.dedup();
    let generic = regimes[0].leading_degrees.clone();
    let quoted_coincidences = QUOTED_CONDITIONS
        .iter()
        .map(|(l, r)| {
            let (ls, li) = parse_linear(l).unwrap();
            let (rs, ri) = parse_linear(r).unwrap();
            let solution_m = (1..=MAX_BALANCE_M).find(|&m| ls * m as i64 + li == rs * m as i64 + ri);
            let unmatched_degrees = [l, r]
                .iter()
                .filter(|e| !generic.iter().any(|d| d.expression == ***e))
                .map(|e| e.to_string())
                .collect();
            Coincidence { condition: format!("{l}={r}"), solution_m, unmatched_degrees }
        })
        .collect();
    BalanceReport { leading_degrees: generic, regimes, admissible_m, quoted_coincidences }
}
