use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use super::system::AlgebraicSystem;
use crate::symkernel::{GaussianRational, ParamPoly, Point, Symbol, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("solving is implemented for m = 1 only; the m = {0} system is out of scope")]
    OutOfScope(usize),
    #[error("{0} must be +1 or -1, got {1}")]
    NotASign(&'static str, i64),
    #[error("branch {branch}: {msg}")]
    Instantiate { branch: String, msg: String },
}

/// What a branch says about one unknown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "poly", rename_all = "snake_case")]
pub enum Assignment {
    /// `symbol = poly` (in the remaining free parameters).
    Value(ParamPoly),
    /// `symbol` is a root of `poly`, a polynomial in it.
    Constraint(ParamPoly),
    Free,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionBranch {
    pub id: String,
    pub e: i64,
    pub rho: i64,
    /// Case splits taken, in order.
    pub assumptions: Vec<String>,
    pub assignments: BTreeMap<Symbol, Assignment>,
    /// `a1 = b1 = 0`: `u` is constant.
    pub constant_family: bool,
    /// Each system equation reduces to this remainder (all `"0"`) under the branch.
    pub certificate: Vec<String>,
}

/// A branch that was closed without a solution.
#[derive(Debug, Clone, Serialize)]
pub struct Refutation {
    pub assumptions: Vec<String>,
    pub reason: String,
    /// The polynomial that would have to vanish.
    pub witness: ParamPoly,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub e: i64,
    pub rho: i64,
    pub branches: Vec<SolutionBranch>,
    pub refutations: Vec<Refutation>,
}

#[derive(Clone)]
struct State {
    eqs: Vec<ParamPoly>,
    values: Vec<(Symbol, ParamPoly)>,
    constraints: Vec<(Symbol, ParamPoly)>,
    nonzero: Vec<Symbol>,
    nonzero_factors: Vec<(Symbol, ParamPoly)>,
    unknowns: Vec<Symbol>,
    path: Vec<String>,
}

/// Unknowns that may stay free in an emitted branch (the wave speed).
const PARAMETER_LIKE: [Symbol; 1] = [Symbol::Lambda];

struct Solver<'a> {
    base: &'a [ParamPoly],
    e: i64,
    rho: i64,
    branches: Vec<SolutionBranch>,
    refutations: Vec<Refutation>,
    skip_constant: bool,
}

fn sign_poly(v: i64) -> ParamPoly {
    ParamPoly::int(v)
}

impl State {
    fn apply(&self, p: &ParamPoly) -> ParamPoly {
        let mut q = p.clone();
        for (s, v) in &self.values {
            q = q.substitute(*s, v);
        }
        q = q.reduce_involutions();
        for (s, c) in &self.constraints {
            q = q.rem_monic_in(*s, c);
        }
        q
    }

    fn normalize(&self, p: &ParamPoly) -> ParamPoly {
        let mut q = self.apply(p);
        if q.is_zero() {
            return q;
        }
        // r ≠ 0 and nonzero unknowns: drop their monomial content
        let content = q.monomial_content();
        let mut strip = crate::symkernel::Monomial::one().with_exp(Symbol::R, content.exp(Symbol::R));
        for s in &self.nonzero {
            strip = strip.with_exp(*s, content.exp(*s));
        }
        q = q.div_monomial(&strip);
        for (s, f) in &self.nonzero_factors {
            loop {
                if q.degree_in(*s) < f.degree_in(*s) {
                    break;
                }
                let (quot, rem) = q.divrem_in(*s, f);
                if !rem.is_zero() {
                    break;
                }
                q = quot;
            }
        }
        // make the leading coefficient 1 so equal equations deduplicate
        q.monic()
    }

    fn has_unknown(&self, p: &ParamPoly, except: Option<Symbol>) -> bool {
        self.unknowns.iter().any(|u| Some(*u) != except && p.contains(*u))
    }
}

impl Solver<'_> {
    fn refute(&mut self, st: &State, reason: String, witness: ParamPoly) {
        self.refutations.push(Refutation { assumptions: st.path.clone(), reason, witness });
    }

    fn assign(&mut self, mut st: State, s: Symbol, v: ParamPoly, label: String) {
        if st.nonzero.contains(&s) && v.is_zero() {
            self.refute(&st, format!("{s} was assumed nonzero"), ParamPoly::var(s));
            return;
        }
        st.values.push((s, v));
        st.unknowns.retain(|u| *u != s);
        st.path.push(label);
        self.run(st);
    }

    fn run(&mut self, mut st: State) {
        let mut eqs: Vec<ParamPoly> = Vec::new();
        for p in &st.eqs {
            let q = st.normalize(p);
            if q.is_zero() || eqs.contains(&q) {
                continue;
            }
            if q.as_constant().is_some() {
                // report the remainder before monic scaling and content stripping
                self.refute(&st, "equation reduces to a product of r and unknowns assumed nonzero".into(), st.apply(p));
                return;
            }
            if !st.has_unknown(&q, None) {
                self.refute(&st, "equation in the parameters alone cannot vanish identically".into(), st.apply(p));
                return;
            }
            eqs.push(q);
        }
        st.eqs = eqs;
        if st.eqs.is_empty() {
            self.emit(st);
            return;
        }

        // monomial factor in an unknown: x = 0 or drop it
        for x in st.unknowns.clone() {
            if st.nonzero.contains(&x) {
                continue;
            }
            if st.eqs.iter().any(|q| q.monomial_content().exp(x) > 0) {
                self.assign(st.clone(), x, ParamPoly::zero(), format!("{x} = 0"));
                let mut other = st.clone();
                other.nonzero.push(x);
                other.path.push(format!("{x} != 0"));
                self.run(other);
                return;
            }
        }

        // univariate equations with constant coefficients
        for x in st.unknowns.clone() {
            let uni: Vec<UniPoly> = st
                .eqs
                .iter()
                .filter(|q| q.contains(x))
                .filter_map(|q| UniPoly::from_param_poly(q, x))
                .collect();
            if uni.is_empty() {
                continue;
            }
            let g = uni.iter().skip(1).fold(uni[0].clone(), |g, u| g.gcd(u));
            if g.degree() == Some(0) {
                // the shortest prefix whose gcd is already 1
                let mut acc = uni[0].clone();
                let mut used = vec![uni[0].to_param_poly(x)];
                for u in &uni[1..] {
                    acc = acc.gcd(u);
                    used.push(u.to_param_poly(x));
                    if acc.degree() == Some(0) {
                        break;
                    }
                }
                let list: Vec<String> = used.iter().map(|p| p.to_string()).collect();
                let witness = used.swap_remove(0);
                self.refute(&st, format!("no common root in {x} of: {}", list.join("; ")), witness);
                return;
            }
            match g.exact_roots() {
                Some(roots) => {
                    for z in roots {
                        let label = format!("{x} = {z}");
                        self.assign(st.clone(), x, ParamPoly::constant(z), label);
                    }
                }
                None => self.constrain(st, x, g.to_param_poly(x)),
            }
            return;
        }

        // linear with constant coefficient and a parameter-only remainder, then any linear
        for strict in [true, false] {
            for x in st.unknowns.clone() {
                for q in &st.eqs {
                    if q.degree_in(x) != 1 {
                        continue;
                    }
                    let cs = q.coefficients_in(x);
                    let Some(c1) = cs[1].as_constant() else { continue };
                    if strict && st.has_unknown(&cs[0], Some(x)) {
                        continue;
                    }
                    let v = cs[0].scale(&-c1.inv().unwrap());
                    let label = format!("{x} = {v}");
                    self.assign(st.clone(), x, v, label);
                    return;
                }
            }
            if strict {
                // quadratic with constant leading coefficient in x, others in parameters
                for x in st.unknowns.clone() {
                    if PARAMETER_LIKE.contains(&x) {
                        continue;
                    }
                    let found = st.eqs.iter().find(|q| {
                        let cs = q.coefficients_in(x);
                        cs.len() == 3
                            && cs[2].as_constant().is_some()
                            && cs[..2].iter().all(|c| {
                                st.unknowns.iter().all(|u| PARAMETER_LIKE.contains(u) || *u == x || !c.contains(*u))
                            })
                    });
                    if let Some(q) = found {
                        let q = q.clone();
                        self.constrain(st, x, q);
                        return;
                    }
                }
            }
        }
        let witness = st.eqs[0].clone();
        self.refute(&st, "unresolved: no triangular step applies".into(), witness);
    }

    fn constrain(&mut self, mut st: State, x: Symbol, c: ParamPoly) {
        st.path.push(format!("{x}: root of {c}"));
        st.constraints.push((x, c.monic()));
        st.unknowns.retain(|u| *u != x);
        self.run(st);
    }

    fn emit(&mut self, st: State) {
        // resolve values that refer to later assignments
        let mut values: Vec<(Symbol, ParamPoly)> = st.values.clone();
        for i in (0..values.len()).rev() {
            let mut v = values[i].1.clone();
            for (s, w) in &values[i + 1..] {
                v = v.substitute(*s, w);
            }
            values[i].1 = v;
        }
        let mut resolved = st.clone();
        resolved.values = values.clone();
        let mut certificate = Vec::new();
        for (k, p) in self.base.iter().enumerate() {
            let rem = resolved.apply(p);
            if !rem.is_zero() {
                self.refute(&st, format!("certificate failed at equation {}", k + 1), rem);
                return;
            }
            certificate.push("0".to_string());
        }
        let mut assignments = BTreeMap::new();
        for s in [Symbol::Mu, Symbol::A0, Symbol::A1, Symbol::B1, Symbol::Lambda] {
            assignments.insert(s, Assignment::Free);
        }
        for (s, v) in &values {
            assignments.insert(*s, Assignment::Value(v.clone()));
        }
        for (s, c) in &st.constraints {
            assignments.insert(*s, Assignment::Constraint(c.clone()));
        }
        let is_zero = |s: Symbol| matches!(assignments.get(&s), Some(Assignment::Value(v)) if v.is_zero());
        let constant_family = is_zero(Symbol::A1) && is_zero(Symbol::B1);
        if constant_family && self.skip_constant {
            return;
        }
        let id = format!("e{}_rho{}_{}", self.e, self.rho, self.branches.len() + 1);
        let mut assumptions = st.path.clone();
        for (_, f) in &st.nonzero_factors {
            assumptions.insert(0, format!("{f} != 0"));
        }
        self.branches.push(SolutionBranch {
            id,
            e: self.e,
            rho: self.rho,
            assumptions,
            assignments,
            constant_family,
            certificate,
        });
    }
}

fn check_sign(name: &'static str, v: i64) -> Result<(), SolveError> {
    if v == 1 || v == -1 {
        Ok(())
    } else {
        Err(SolveError::NotASign(name, v))
    }
}

/// Branch enumeration for the `m = 1` system with fixed signs `e`, `ρ`.
///
/// The first split is `μ² + ρ ≠ 0` (only the constant family survives) against
/// `μ² + ρ = 0`; after that the solver factors out unknowns (`x = 0` or `x ≠ 0`), solves
/// univariate equations exactly over `Q(i)`, back-substitutes linear ones and keeps
/// quadratics with parameter coefficients as residual constraints. A branch is emitted only
/// when every equation reduces to zero under it.
pub fn solve_m1(system: &AlgebraicSystem, e_val: i64, rho_val: i64) -> Result<SolveReport, SolveError> {
    if system.m != 1 {
        return Err(SolveError::OutOfScope(system.m));
    }
    check_sign("e", e_val)?;
    check_sign("rho", rho_val)?;
    let base: Vec<ParamPoly> = system
        .polys()
        .map(|p| p.substitute(Symbol::E, &sign_poly(e_val)).substitute(Symbol::Rho, &sign_poly(rho_val)))
        .collect();
    let mu_rho = &ParamPoly::var(Symbol::Mu).pow(2) + &sign_poly(rho_val);
    let mut solver = Solver { base: &base, e: e_val, rho: rho_val, branches: vec![], refutations: vec![], skip_constant: false };

    let generic = State {
        eqs: base.clone(),
        values: vec![],
        constraints: vec![],
        nonzero: vec![],
        nonzero_factors: vec![(Symbol::Mu, mu_rho.clone())],
        unknowns: vec![Symbol::A1, Symbol::B1, Symbol::A0, Symbol::Lambda],
        path: vec![],
    };
    solver.run(generic);

    // the degenerate split; constant solutions here are already covered above
    solver.skip_constant = true;
    let mut eqs = base.clone();
    eqs.push(mu_rho.clone());
    let degenerate = State {
        eqs,
        values: vec![],
        constraints: vec![],
        nonzero: vec![],
        nonzero_factors: vec![],
        unknowns: vec![Symbol::Mu, Symbol::A1, Symbol::B1, Symbol::A0, Symbol::Lambda],
        path: vec![format!("{mu_rho} = 0")],
    };
    solver.run(degenerate);

    Ok(SolveReport { e: e_val, rho: rho_val, branches: solver.branches, refutations: solver.refutations })
}

impl SolutionBranch {
    pub fn value(&self, s: Symbol) -> Option<&ParamPoly> {
        match self.assignments.get(&s) {
            Some(Assignment::Value(v)) => Some(v),
            _ => None,
        }
    }

    pub fn constraint(&self, s: Symbol) -> Option<&ParamPoly> {
        match self.assignments.get(&s) {
            Some(Assignment::Constraint(c)) => Some(c),
            _ => None,
        }
    }

    /// Number of numeric instantiations for given `(r, λ)` (roots of the constraints).
    pub fn root_count(&self) -> usize {
        self.assignments
            .iter()
            .filter_map(|(s, a)| match a {
                Assignment::Constraint(c) => Some(c.degree_in(*s) as usize),
                _ => None,
            })
            .product()
    }

    /// Numeric parameter point at `(r, λ)`: exact values are evaluated, constrained unknowns
    /// take root number `root` (roots of a quadratic ordered `(-b - √D)/2a`, `(-b + √D)/2a`),
    /// free unknowns take `free_value`. A value assigned to `λ` overrides `lambda`.
    pub fn instantiate(&self, r: f64, lambda: f64, root: usize, free_value: f64) -> Result<Point<Complex64>, SolveError> {
        let err = |msg: String| SolveError::Instantiate { branch: self.id.clone(), msg };
        let mut pt = Point::new()
            .with(Symbol::E, Complex64::new(self.e as f64, 0.0))
            .with(Symbol::Rho, Complex64::new(self.rho as f64, 0.0))
            .with(Symbol::R, Complex64::new(r, 0.0))
            .with(Symbol::Lambda, Complex64::new(lambda, 0.0));
        for s in [Symbol::A2, Symbol::B2, Symbol::A3, Symbol::B3, Symbol::A4, Symbol::B4] {
            pt.set(s, Complex64::zero());
        }
        if let Some(v) = self.value(Symbol::Lambda) {
            let lv = v.eval(&pt).map_err(|e| err(e.to_string()))?;
            pt.set(Symbol::Lambda, lv);
        }
        let order = [Symbol::Mu, Symbol::A1, Symbol::B1, Symbol::A0];
        for s in order {
            if let Some(Assignment::Free) | None = self.assignments.get(&s) {
                pt.set(s, Complex64::new(free_value, 0.0));
            }
        }
        let mut remaining_root = root;
        // values may depend on λ, r and on constrained unknowns; resolve in two passes
        for _ in 0..2 {
            for s in order {
                match self.assignments.get(&s) {
                    Some(Assignment::Value(v)) => {
                        if let Ok(x) = v.eval(&pt) {
                            pt.set(s, x);
                        }
                    }
                    Some(Assignment::Constraint(c)) if pt.get(s).is_none() => {
                        let cs: Vec<Complex64> = c
                            .coefficients_in(s)
                            .iter()
                            .map(|k| k.eval(&pt))
                            .collect::<Result<_, _>>()
                            .map_err(|e| err(e.to_string()))?;
                        let roots = match cs.len() {
                            2 => vec![-cs[0] / cs[1]],
                            3 => {
                                let d = (cs[1] * cs[1] - 4.0 * cs[2] * cs[0]).sqrt();
                                vec![(-cs[1] - d) / (2.0 * cs[2]), (-cs[1] + d) / (2.0 * cs[2])]
                            }
                            n => return Err(err(format!("constraint of degree {} not supported", n - 1))),
                        };
                        let k = remaining_root % roots.len();
                        remaining_root /= roots.len();
                        pt.set(s, roots[k]);
                    }
                    _ => {}
                }
            }
        }
        for s in order {
            if pt.get(s).is_none() {
                return Err(err(format!("could not evaluate {s}")));
            }
        }
        Ok(pt)
    }
}

/// Exact `μ` value of a branch, if it has one.
pub fn branch_mu(b: &SolutionBranch) -> Option<GaussianRational> {
    b.value(Symbol::Mu).and_then(|v| v.as_constant())
}
