use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::reduction::{substitute_ansatz_with, Ansatz, DiffPoly, ReductionError, ReductionStrategy};
use crate::symkernel::{GaussianRational, ParamPoly, Point, Symbol};

/// One coefficient equation `poly = 0` and the `σ^i τ^j` group it was collected from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub sigma_power: u32,
    pub tau_power: u32,
    pub poly: ParamPoly,
}

/// Equations in descending `(sigma_power, tau_power)` order, none of them zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraicSystem {
    pub m: usize,
    pub equations: Vec<Equation>,
}

impl AlgebraicSystem {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &ParamPoly> {
        self.equations.iter().map(|e| &e.poly)
    }

    pub fn map<F: Fn(&ParamPoly) -> ParamPoly>(&self, f: F) -> AlgebraicSystem {
        AlgebraicSystem {
            m: self.m,
            equations: self
                .equations
                .iter()
                .map(|e| Equation { poly: f(&e.poly), ..e.clone() })
                .filter(|e| !e.poly.is_zero())
                .collect(),
        }
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{align*}\n");
        for (n, e) in self.equations.iter().enumerate() {
            out.push_str(&format!(
                "&\\text{{{}. }}\\; {} = 0 && [\\sigma^{{{}}}\\tau^{{{}}}]\\\\\n",
                n + 1,
                e.poly.to_latex(),
                e.sigma_power,
                e.tau_power
            ));
        }
        out.push_str("\\end{align*}\n");
        out
    }
}

/// Coefficient system of the ODE under an order-`m` ansatz.
///
/// Each group coefficient of the cleared numerator `(P + Qτ)` over `r^k` is divided by
/// `r^min(k, v)`, `v` being its own `r`-adic valuation: factors of `r` that only came
/// from clearing the common denominator are removed, factors that belong to the group
/// itself are kept.
pub fn generate_system(ode: &DiffPoly, m: usize) -> Result<AlgebraicSystem, ReductionError> {
    generate_system_with(ode, m, ReductionStrategy::Deferred)
}

pub fn generate_system_with(
    ode: &DiffPoly,
    m: usize,
    strategy: ReductionStrategy,
) -> Result<AlgebraicSystem, ReductionError> {
    let ansatz = Ansatz::new(m)?;
    let expr = substitute_ansatz_with(ode, &ansatz, strategy);
    let k = expr.denominator_power() as u16;
    let mut equations: Vec<Equation> = expr
        .collect()
        .into_iter()
        .map(|((i, j), c)| {
            let v = c.valuation_in(Symbol::R);
            Equation { sigma_power: i, tau_power: j, poly: c.div_var_pow(Symbol::R, v.min(k)) }
        })
        .collect();
    equations.sort_by(|a, b| (b.sigma_power, b.tau_power).cmp(&(a.sigma_power, a.tau_power)));
    Ok(AlgebraicSystem { m, equations })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceEquation {
    pub index: usize,
    pub label: String,
    pub poly: ParamPoly,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReferenceSystem {
    pub equations: Vec<ReferenceEquation>,
}

#[derive(Debug, Error)]
pub enum ReferenceError {
    #[error("reference data line {line}: {msg}")]
    Format { line: usize, msg: String },
}

const CDG_M1_REFERENCE: &str = include_str!("../../data/cdg_m1_reference.txt");

impl ReferenceSystem {
    /// The shipped transcription for CDG with `m = 1`.
    pub fn cdg_m1() -> ReferenceSystem {
        Self::parse(CDG_M1_REFERENCE).expect("shipped reference data is well formed")
    }

    /// Format: `#` comments, a `format-version: 1` line, then blocks of a header
    /// `[n] label` followed by one polynomial line.
    pub fn parse(text: &str) -> Result<ReferenceSystem, ReferenceError> {
        let mut equations = Vec::new();
        let mut header: Option<(usize, String)> = None;
        let mut version_seen = false;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |msg: String| ReferenceError::Format { line: ln + 1, msg };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("format-version:") {
                if v.trim() != "1" {
                    return Err(err(format!("unsupported version {}", v.trim())));
                }
                version_seen = true;
                continue;
            }
            if !version_seen {
                return Err(err("missing format-version".into()));
            }
            if let Some(rest) = line.strip_prefix('[') {
                let (n, label) = rest.split_once(']').ok_or_else(|| err("unterminated header".into()))?;
                let index = n.trim().parse().map_err(|_| err(format!("bad index {n:?}")))?;
                header = Some((index, label.trim().to_string()));
                continue;
            }
            let (index, label) = header.take().ok_or_else(|| err("polynomial without header".into()))?;
            let poly: ParamPoly = line.parse().map_err(|e| err(format!("{e}")))?;
            equations.push(ReferenceEquation { index, label, poly });
        }
        Ok(ReferenceSystem { equations })
    }
}

/// How a reference equation relates to a generated one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchKind {
    /// `generated = constant · reference`.
    Exact { constant: GaussianRational },
    /// `generated = constant · r^r_power · e^e_power · reference`; `r ≠ 0` and `e = ±1`
    /// make the extra monomial a unit.
    UpToUnit { constant: GaussianRational, r_power: i32, e_power: i32 },
    Unmatched,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquationMatch {
    pub reference_index: usize,
    pub generated_position: Option<usize>,
    pub group: Option<(u32, u32)>,
    #[serde(flatten)]
    pub kind: MatchKind,
    /// Set when the random-point verdict was confirmed by exact polynomial identity.
    pub symbolically_confirmed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub generated_count: usize,
    pub reference_count: usize,
    pub sample_points: usize,
    pub seed: u64,
    pub matches: Vec<EquationMatch>,
    pub all_matched: bool,
    pub exact_count: usize,
}

pub const MIN_MATCH_POINTS: usize = 20;

const MATCH_SYMBOLS: [Symbol; 8] =
    [Symbol::A0, Symbol::A1, Symbol::B1, Symbol::Mu, Symbol::R, Symbol::Lambda, Symbol::E, Symbol::Rho];

fn random_point(rng: &mut ChaCha8Rng) -> Point<GaussianRational> {
    let mut pt = Point::new();
    for s in MATCH_SYMBOLS {
        let mut n: i64 = 0;
        while n == 0 {
            n = rng.gen_range(-60..=60);
        }
        pt.set(s, GaussianRational::from_frac(n, rng.gen_range(1..=23)));
    }
    pt
}

/// Constant `c` with `a(p) = c·b(p)` at every sample, requiring both to vanish together.
fn constant_ratio(a: &[GaussianRational], b: &[GaussianRational]) -> Option<GaussianRational> {
    let mut ratio: Option<GaussianRational> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return None,
        }
        let q = x / y;
        match &ratio {
            None => ratio = Some(q),
            Some(c) if *c == q => {}
            Some(_) => return None,
        }
    }
    ratio
}

/// Strips the common `r^a e^b` factor.
fn strip_units(p: &ParamPoly) -> (ParamPoly, i32, i32) {
    let content = p.monomial_content();
    let (a, b) = (content.exp(Symbol::R), content.exp(Symbol::E));
    let unit = crate::symkernel::Monomial::one().with_exp(Symbol::R, a).with_exp(Symbol::E, b);
    (p.div_monomial(&unit), a as i32, b as i32)
}

fn evals(p: &ParamPoly, pts: &[Point<GaussianRational>]) -> Vec<GaussianRational> {
    pts.iter().map(|pt| p.eval(pt).expect("all symbols assigned")).collect()
}

/// For each reference equation, finds a generated equation proportional to it at
/// `n_points` seeded random rational points (at least [`MIN_MATCH_POINTS`]). When no exact
/// proportionality exists, retries after removing `r`- and `e`-monomial content.
pub fn check_structural_match(
    generated: &AlgebraicSystem,
    reference: &ReferenceSystem,
    n_points: usize,
    seed: u64,
) -> MatchReport {
    let n_points = n_points.max(MIN_MATCH_POINTS);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<_> = (0..n_points).map(|_| random_point(&mut rng)).collect();
    let gen_vals: Vec<_> = generated.polys().map(|p| evals(p, &pts)).collect();
    let gen_stripped: Vec<_> = generated.polys().map(strip_units).collect();
    let gen_stripped_vals: Vec<_> = gen_stripped.iter().map(|(p, _, _)| evals(p, &pts)).collect();
    let mut matches = Vec::new();
    for re in &reference.equations {
        let ref_vals = evals(&re.poly, &pts);
        let exact = gen_vals.iter().enumerate().find_map(|(i, gv)| constant_ratio(gv, &ref_vals).map(|c| (i, c)));
        let m = if let Some((i, c)) = exact {
            let confirmed = generated.equations[i].poly == re.poly.scale(&c);
            EquationMatch {
                reference_index: re.index,
                generated_position: Some(i),
                group: Some((generated.equations[i].sigma_power, generated.equations[i].tau_power)),
                kind: MatchKind::Exact { constant: c },
                symbolically_confirmed: confirmed,
            }
        } else {
            let (rs, ra, rb) = strip_units(&re.poly);
            let rs_vals = evals(&rs, &pts);
            let found = gen_stripped_vals
                .iter()
                .enumerate()
                .find_map(|(i, gv)| constant_ratio(gv, &rs_vals).map(|c| (i, c)));
            match found {
                Some((i, c)) => {
                    let (gs, ga, gb) = &gen_stripped[i];
                    EquationMatch {
                        reference_index: re.index,
                        generated_position: Some(i),
                        group: Some((generated.equations[i].sigma_power, generated.equations[i].tau_power)),
                        kind: MatchKind::UpToUnit { constant: c.clone(), r_power: ga - ra, e_power: gb - rb },
                        symbolically_confirmed: *gs == rs.scale(&c),
                    }
                }
                None => EquationMatch {
                    reference_index: re.index,
                    generated_position: None,
                    group: None,
                    kind: MatchKind::Unmatched,
                    symbolically_confirmed: false,
                },
            }
        };
        matches.push(m);
    }
    let all_matched = matches.iter().all(|m| m.kind != MatchKind::Unmatched);
    let exact_count = matches.iter().filter(|m| matches!(m.kind, MatchKind::Exact { .. })).count();
    MatchReport {
        generated_count: generated.len(),
        reference_count: reference.equations.len(),
        sample_points: n_points,
        seed,
        matches,
        all_matched,
        exact_count,
    }
}

/// Groups by `(sigma_power, tau_power)` for lookups.
pub fn by_group(sys: &AlgebraicSystem) -> BTreeMap<(u32, u32), &ParamPoly> {
    sys.equations.iter().map(|e| ((e.sigma_power, e.tau_power), &e.poly)).collect()
}
