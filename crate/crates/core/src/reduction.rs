//! Traveling-wave reduction `u(x, t) = V(ξ)`, `ξ = x + λt`, and substitution of the
//! Riccati ansatz into the resulting ODE.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::symkernel::{
    gaussian::format_rational, rat_int, GaussianRational, ParamPoly, Rational, RiccatiPoly, SigmaTauExpr, Symbol,
    MAX_ANSATZ_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("omega must be nonzero: the fifth-order term defines the family")]
    ZeroOmega,
    #[error("ansatz order m = {0} is outside 1..={MAX_ANSATZ_ORDER}")]
    AnsatzOrder(usize),
}

/// Coefficients of `u_t + ω u_xxxxx + α u u_xxx + β u_x u_xx + γ u² u_x = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KdV5Params {
    omega: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl KdV5Params {
    pub fn new(omega: Rational, alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self, ReductionError> {
        if omega.is_zero() {
            return Err(ReductionError::ZeroOmega);
        }
        Ok(KdV5Params { omega, alpha, beta, gamma })
    }

    pub fn from_ints(omega: i64, alpha: i64, beta: i64, gamma: i64) -> Result<Self, ReductionError> {
        Self::new(rat_int(omega), rat_int(alpha), rat_int(beta), rat_int(gamma))
    }

    /// Caudrey-Dodd-Gibbon: `(1, 30, 30, 180)`.
    pub fn cdg() -> Self {
        Self::from_ints(1, 30, 30, 180).unwrap()
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    pub fn as_f64(&self) -> [f64; 4] {
        use crate::symkernel::gaussian::rational_to_f64;
        [&self.omega, &self.alpha, &self.beta, &self.gamma].map(rational_to_f64)
    }
}

/// One monomial `c · Π V^(k)` of a differential polynomial in `V(ξ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffTerm {
    /// Derivative orders of the factors, ascending (repeats allowed).
    pub orders: Vec<u8>,
    pub coeff: ParamPoly,
}

/// Polynomial in `V, V′, …, V⁽⁵⁾` with parameter-polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: Vec<DiffTerm>,
}

pub const MAX_DERIVATIVE_ORDER: u8 = 5;

impl DiffPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff · Π V^(orders)`, merging with an existing term of the same shape.
    pub fn push(&mut self, mut orders: Vec<u8>, coeff: ParamPoly) {
        assert!(orders.iter().all(|&k| k <= MAX_DERIVATIVE_ORDER), "derivative order above {MAX_DERIVATIVE_ORDER}");
        orders.sort_unstable();
        if let Some(t) = self.terms.iter_mut().find(|t| t.orders == orders) {
            t.coeff = &t.coeff + &coeff;
        } else {
            self.terms.push(DiffTerm { orders, coeff });
        }
        self.terms.retain(|t| !t.coeff.is_zero());
    }

    pub fn terms(&self) -> &[DiffTerm] {
        &self.terms
    }

    pub fn max_order(&self) -> u8 {
        self.terms.iter().flat_map(|t| t.orders.iter().copied()).max().unwrap_or(0)
    }

    fn render(&self, latex: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let (neg, coeff) = render_coeff(&t.coeff, latex);
            out.push_str(match (n == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let factors = render_factors(&t.orders, latex);
            match coeff {
                None => out.push_str(&factors),
                Some(c) if latex => out.push_str(&format!("{c} {factors}")),
                Some(c) => out.push_str(&format!("{c}{factors}")),
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    /// Value of each term given `V, V′, …` in `derivs` and a numeric point for the
    /// coefficients.
    pub fn eval_terms(&self, derivs: &[f64], point: &crate::symkernel::Point<f64>) -> Result<Vec<f64>, crate::symkernel::EvalError> {
        self.terms
            .iter()
            .map(|t| {
                let c = t.coeff.eval(point)?;
                Ok(t.orders.iter().fold(c, |acc, &k| acc * derivs[k as usize]))
            })
            .collect()
    }
}

/// `(negative, rendered magnitude or None for 1)`.
fn render_coeff(c: &ParamPoly, latex: bool) -> (bool, Option<String>) {
    if let Some(k) = c.as_constant().filter(|k| k.is_real()) {
        let neg = k.re.is_negative();
        let mag = k.re.abs();
        if mag.is_one() {
            return (neg, None);
        }
        let txt = if latex && !mag.denom().is_one() {
            format!("\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        } else {
            format_rational(&mag)
        };
        return (neg, Some(txt));
    }
    if c == &ParamPoly::var(Symbol::Lambda) {
        return (false, Some(if latex { "\\lambda".into() } else { "λ".into() }));
    }
    let txt = if latex { c.to_latex() } else { c.to_string() };
    (false, Some(format!("({txt})")))
}

fn render_factors(orders: &[u8], latex: bool) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < orders.len() {
        let k = orders[i];
        let reps = orders[i..].iter().take_while(|&&o| o == k).count();
        i += reps;
        if latex {
            if !out.is_empty() {
                out.push(' ');
            }
            let base = match k {
                0 => "V".to_string(),
                1..=3 => format!("V{}", "'".repeat(k as usize)),
                _ => format!("V^{{({k})}}"),
            };
            if reps > 1 {
                out.push_str(&format!("\\left({base}\\right)^{{{reps}}}").replace("\\left(V\\right)", "V"));
            } else {
                out.push_str(&base);
            }
        } else {
            out.push_str(match k {
                0 => "V",
                1 => "V′",
                2 => "V″",
                3 => "V‴",
                4 => "V⁽⁴⁾",
                _ => "V⁽⁵⁾",
            });
            if reps > 1 {
                out.push_str(&superscript(reps));
            }
        }
    }
    out
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

fn rational_poly(q: &Rational) -> ParamPoly {
    ParamPoly::constant(GaussianRational::real(q.clone()))
}

/// `ω V⁽⁵⁾ + α V V‴ + β V′V″ + γ V²V′ + λV′` (`u_t → λV′`, `∂x → d/dξ`).
pub fn reduce_to_ode(p: &KdV5Params) -> DiffPoly {
    let mut d = DiffPoly::new();
    d.push(vec![5], rational_poly(&p.omega));
    d.push(vec![0, 3], rational_poly(&p.alpha));
    d.push(vec![1, 2], rational_poly(&p.beta));
    d.push(vec![0, 0, 1], rational_poly(&p.gamma));
    d.push(vec![1], ParamPoly::var(Symbol::Lambda));
    d
}

/// `v = a0 + Σ_{j=1..m} σ^(j-1)(a_j σ + b_j τ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ansatz {
    pub m: usize,
    pub a0: Symbol,
    pub a: Vec<Symbol>,
    pub b: Vec<Symbol>,
}

impl Ansatz {
    pub fn new(m: usize) -> Result<Self, ReductionError> {
        if m == 0 || m > MAX_ANSATZ_ORDER {
            return Err(ReductionError::AnsatzOrder(m));
        }
        Ok(Ansatz {
            m,
            a0: Symbol::A0,
            a: (1..=m).map(|j| Symbol::a(j).unwrap()).collect(),
            b: (1..=m).map(|j| Symbol::b(j).unwrap()).collect(),
        })
    }

    pub fn unknowns(&self) -> Vec<Symbol> {
        let mut out = vec![self.a0];
        for (a, b) in self.a.iter().zip(&self.b) {
            out.push(*a);
            out.push(*b);
        }
        out
    }

    pub fn as_riccati_poly(&self) -> RiccatiPoly {
        let mut v = RiccatiPoly::constant(ParamPoly::var(self.a0));
        for j in 1..=self.m {
            v = &v + &RiccatiPoly::term(j as u32, 0, ParamPoly::var(self.a[j - 1]));
            v = &v + &RiccatiPoly::term(j as u32 - 1, 1, ParamPoly::var(self.b[j - 1]));
        }
        v
    }
}

/// When the relation `τ² = T(σ)/r` is applied during substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionStrategy {
    /// Differentiate and multiply in free `σ, τ`; reduce once at the end with `e`, `ρ`
    /// symbolic. The result matches the shipped reference system.
    #[default]
    Deferred,
    /// Reduce after every derivative and product, rewriting `e², ρ² → 1` (only then is
    /// the normal form closed under differentiation).
    Eager,
}

pub fn substitute_ansatz(ode: &DiffPoly, ansatz: &Ansatz) -> SigmaTauExpr {
    substitute_ansatz_with(ode, ansatz, ReductionStrategy::Deferred)
}

pub fn substitute_ansatz_with(ode: &DiffPoly, ansatz: &Ansatz, strategy: ReductionStrategy) -> SigmaTauExpr {
    let top = ode.max_order() as usize;
    match strategy {
        ReductionStrategy::Deferred => {
            let mut ds = vec![ansatz.as_riccati_poly()];
            for k in 0..top {
                let next = ds[k].derivation();
                ds.push(next);
            }
            let mut total = RiccatiPoly::zero();
            for t in ode.terms() {
                let prod = t.orders.iter().fold(RiccatiPoly::constant(t.coeff.clone()), |acc, &k| &acc * &ds[k as usize]);
                total = &total + &prod;
            }
            total.reduce().normalize()
        }
        ReductionStrategy::Eager => {
            let mut ds = vec![ansatz.as_riccati_poly().reduce()];
            for k in 0..top {
                let next = ds[k].xi_derivative(true);
                ds.push(next);
            }
            let mut total = SigmaTauExpr::zero();
            for t in ode.terms() {
                let prod = t.orders.iter().fold(SigmaTauExpr::constant(t.coeff.clone()), |acc, &k| &acc * &ds[k as usize]);
                total = &total + &prod;
            }
            total.map_coefficients(|c| c.reduce_involutions()).normalize()
        }
    }
}
