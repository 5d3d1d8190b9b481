use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;
use super::param_poly::{EvalError, ParamPoly, Point};
use super::scalar::Scalar;
use super::symbol::Symbol;

fn sym(s: Symbol) -> ParamPoly {
    ParamPoly::var(s)
}

/// Numerator of `τ²` over `r`: coefficients of `σ⁰, σ¹, σ²` in
/// `r·τ² = -e r² + 2eμr σ - e(μ²+ρ) σ²`.
pub fn tau_squared_numerator() -> [ParamPoly; 3] {
    let e = sym(Symbol::E);
    let r = sym(Symbol::R);
    let mu = sym(Symbol::Mu);
    let rho = sym(Symbol::Rho);
    [
        -&(&e * &r.pow(2)),
        &(&e * &mu) * &r.scale(&GaussianRational::from_int(2)),
        -&(&e * &(&mu.pow(2) + &rho)),
    ]
}

/// First integral `I = τ² + e[r - 2μσ + (μ²+ρ)σ²/r]`, which vanishes on the solutions
/// used by the expansion. Returned as `r·I`, a polynomial in `σ, τ`.
pub fn first_integral_times_r() -> RiccatiPoly {
    let t = tau_squared_numerator();
    let mut out = RiccatiPoly::term(0, 2, sym(Symbol::R));
    for (i, c) in t.iter().enumerate() {
        out = &out - &RiccatiPoly::term(i as u32, 0, c.clone());
    }
    out
}

fn trim(v: &mut Vec<ParamPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add_vec(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    let n = a.len().max(b.len());
    let zero = ParamPoly::zero();
    let mut out: Vec<ParamPoly> = (0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect();
    trim(&mut out);
    out
}

fn mul_vec(a: &[ParamPoly], b: &[ParamPoly]) -> Vec<ParamPoly> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![ParamPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn scale_vec(a: &[ParamPoly], c: &ParamPoly) -> Vec<ParamPoly> {
    let mut out: Vec<ParamPoly> = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

fn eval_vec<T: Scalar>(a: &[ParamPoly], sigma: &T, point: &Point<T>) -> Result<(T, f64), EvalError> {
    let mut acc = T::zero();
    let mut scale = 0.0;
    let mut pw = T::one();
    for c in a {
        let (v, s) = c.eval_with_scale(point)?;
        scale += s * pw.magnitude();
        acc = acc + v * pw.clone();
        pw = pw * sigma.clone();
    }
    Ok((acc, scale))
}

/// `(P(σ) + Q(σ)·τ) / r^den`: the normal form modulo `τ² = T(σ)/r`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SigmaTauExpr {
    p: Vec<ParamPoly>,
    q: Vec<ParamPoly>,
    den: u32,
}

impl SigmaTauExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::from_parts(vec![c], vec![], 0)
    }

    pub fn sigma() -> Self {
        Self::from_parts(vec![ParamPoly::zero(), ParamPoly::one()], vec![], 0)
    }

    pub fn tau() -> Self {
        Self::from_parts(vec![], vec![ParamPoly::one()], 0)
    }

    pub fn from_parts(mut p: Vec<ParamPoly>, mut q: Vec<ParamPoly>, den: u32) -> Self {
        trim(&mut p);
        trim(&mut q);
        SigmaTauExpr { p, q, den }
    }

    pub fn p(&self) -> &[ParamPoly] {
        &self.p
    }

    pub fn q(&self) -> &[ParamPoly] {
        &self.q
    }

    /// Power of `r` in the common denominator.
    pub fn denominator_power(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_empty() && self.q.is_empty()
    }

    fn lifted(&self, den: u32) -> (Vec<ParamPoly>, Vec<ParamPoly>) {
        let f = sym(Symbol::R).pow(den - self.den);
        (scale_vec(&self.p, &f), scale_vec(&self.q, &f))
    }

    /// Cancels common factors of `r` between numerator and denominator.
    pub fn normalize(mut self) -> Self {
        while self.den > 0 {
            let all = self.p.iter().chain(self.q.iter()).all(|c| c.is_zero() || c.valuation_in(Symbol::R) >= 1);
            if !all || self.is_zero() {
                break;
            }
            self.p = self.p.iter().map(|c| c.div_var_pow(Symbol::R, 1)).collect();
            self.q = self.q.iter().map(|c| c.div_var_pow(Symbol::R, 1)).collect();
            self.den -= 1;
        }
        if self.is_zero() {
            self.den = 0;
        }
        self
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        Self::from_parts(scale_vec(&self.p, c), scale_vec(&self.q, c), self.den)
    }

    /// `d/dξ` along the Riccati flow `σ' = eστ`, `τ' = eτ² - μσ + r`.
    ///
    /// The normal form is only closed under differentiation when `e² = 1`, so
    /// `reduce_involutions` controls whether `e², ρ²` are rewritten to 1 afterwards.
    pub fn xi_derivative(&self, reduce_involutions: bool) -> Self {
        let e = sym(Symbol::E);
        let r = sym(Symbol::R);
        let mu = sym(Symbol::Mu);
        let t = tau_squared_numerator();
        let n = self.p.len().max(self.q.len() + 1) + 2;
        // numerator over r^(den+1)
        let mut np = vec![ParamPoly::zero(); n];
        let mut nq = vec![ParamPoly::zero(); n];
        for (i, pi) in self.p.iter().enumerate() {
            if i > 0 && !pi.is_zero() {
                let c = &(pi * &e).scale(&GaussianRational::from_int(i as i64)) * &r;
                nq[i] = &nq[i] + &c;
            }
        }
        for (i, qi) in self.q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            let lead = (qi * &e).scale(&GaussianRational::from_int(i as i64 + 1));
            for (k, tk) in t.iter().enumerate() {
                np[i + k] = &np[i + k] + &(&lead * tk);
            }
            let rr = &r * &r;
            np[i] = &np[i] + &(qi * &rr);
            np[i + 1] = &np[i + 1] - &(&(qi * &mu) * &r);
        }
        let mut out = Self::from_parts(np, nq, self.den + 1);
        if reduce_involutions {
            out = out.map_coefficients(|c| c.reduce_involutions());
        }
        out.normalize()
    }

    pub fn map_coefficients<F: Fn(&ParamPoly) -> ParamPoly>(&self, f: F) -> Self {
        Self::from_parts(self.p.iter().map(&f).collect(), self.q.iter().map(&f).collect(), self.den)
    }

    pub fn substitute(&self, s: Symbol, value: &ParamPoly) -> Self {
        assert!(s != Symbol::R || self.den == 0, "cannot substitute for r under an r-denominator");
        self.map_coefficients(|c| c.substitute(s, value))
    }

    /// Numerator coefficients of `σ^i τ^j` (`j` is 0 or 1), skipping zeros.
    pub fn collect(&self) -> BTreeMap<(u32, u32), ParamPoly> {
        let mut out = BTreeMap::new();
        for (j, part) in [&self.p, &self.q].into_iter().enumerate() {
            for (i, c) in part.iter().enumerate() {
                if !c.is_zero() {
                    out.insert((i as u32, j as u32), c.clone());
                }
            }
        }
        out
    }

    /// Value and absolute term scale at `(σ, τ)`. The scale excludes the `r` denominator.
    pub fn eval_with_scale<T: Scalar>(&self, sigma: &T, tau: &T, point: &Point<T>) -> Result<(T, f64), EvalError> {
        let (pv, ps) = eval_vec(&self.p, sigma, point)?;
        let (qv, qs) = eval_vec(&self.q, sigma, point)?;
        let num = pv + qv * tau.clone();
        let scale = ps + qs * tau.magnitude();
        if self.den == 0 {
            return Ok((num, scale));
        }
        let r = point.get(Symbol::R).ok_or(EvalError::Unassigned(Symbol::R))?;
        let inv = r.checked_inv().ok_or(EvalError::DivisionByZero)?.powu(self.den);
        let m = inv.magnitude();
        Ok((num * inv, scale * m))
    }

    pub fn eval<T: Scalar>(&self, sigma: &T, tau: &T, point: &Point<T>) -> Result<T, EvalError> {
        self.eval_with_scale(sigma, tau, point).map(|x| x.0)
    }
}

impl<'a> Add<&'a SigmaTauExpr> for &'a SigmaTauExpr {
    type Output = SigmaTauExpr;
    fn add(self, o: &SigmaTauExpr) -> SigmaTauExpr {
        let den = self.den.max(o.den);
        let (p1, q1) = self.lifted(den);
        let (p2, q2) = o.lifted(den);
        SigmaTauExpr::from_parts(add_vec(&p1, &p2), add_vec(&q1, &q2), den).normalize()
    }
}

impl Neg for &SigmaTauExpr {
    type Output = SigmaTauExpr;
    fn neg(self) -> SigmaTauExpr {
        self.scale(&ParamPoly::int(-1))
    }
}

impl<'a> Sub<&'a SigmaTauExpr> for &'a SigmaTauExpr {
    type Output = SigmaTauExpr;
    fn sub(self, o: &SigmaTauExpr) -> SigmaTauExpr {
        self + &(-o)
    }
}

impl<'a> Mul<&'a SigmaTauExpr> for &'a SigmaTauExpr {
    type Output = SigmaTauExpr;
    /// `P = r·P₁P₂ + Q₁Q₂·T`, `Q = r(P₁Q₂ + Q₁P₂)` over `r^(k₁+k₂+1)`.
    fn mul(self, o: &SigmaTauExpr) -> SigmaTauExpr {
        let r = sym(Symbol::R);
        let t = tau_squared_numerator();
        let p = add_vec(&scale_vec(&mul_vec(&self.p, &o.p), &r), &mul_vec(&mul_vec(&self.q, &o.q), &t));
        let q = scale_vec(&add_vec(&mul_vec(&self.p, &o.q), &mul_vec(&self.q, &o.p)), &r);
        SigmaTauExpr::from_parts(p, q, self.den + o.den + 1).normalize()
    }
}

fn render_part(out: &mut Vec<String>, part: &[ParamPoly], tau: bool) {
    for (i, c) in part.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match (i, tau) {
            (0, false) => String::new(),
            (0, true) => "tau".into(),
            (1, false) => "sigma".into(),
            (1, true) => "sigma*tau".into(),
            (k, false) => format!("sigma^{k}"),
            (k, true) => format!("sigma^{k}*tau"),
        };
        out.push(if mono.is_empty() { format!("({c})") } else { format!("({c})*{mono}") });
    }
}

impl fmt::Display for SigmaTauExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        render_part(&mut parts, &self.q, true);
        render_part(&mut parts, &self.p, false);
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        match self.den {
            0 => f.write_str(&body),
            1 => write!(f, "[{body}]/r"),
            k => write!(f, "[{body}]/r^{k}"),
        }
    }
}

impl fmt::Debug for SigmaTauExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SigmaTauExpr({self})")
    }
}

/// Polynomial in free `σ, τ` with parameter-polynomial coefficients. No relation between
/// `σ` and `τ` is applied until [`RiccatiPoly::reduce`].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RiccatiPoly {
    terms: BTreeMap<(u32, u32), ParamPoly>,
}

impl RiccatiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(i: u32, j: u32, c: ParamPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        RiccatiPoly { terms }
    }

    pub fn constant(c: ParamPoly) -> Self {
        Self::term(0, 0, c)
    }

    pub fn sigma() -> Self {
        Self::term(1, 0, ParamPoly::one())
    }

    pub fn tau() -> Self {
        Self::term(0, 1, ParamPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), ParamPoly> {
        &self.terms
    }

    fn add_term(&mut self, k: (u32, u32), c: &ParamPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &ParamPoly) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(ParamPoly::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The derivation `D = eστ ∂σ + (eτ² - μσ + r) ∂τ`:
    /// `D(σⁱτʲ) = (i+j)e σⁱτʲ⁺¹ - jμ σⁱ⁺¹τʲ⁻¹ + jr σⁱτʲ⁻¹`.
    pub fn derivation(&self) -> Self {
        let e = sym(Symbol::E);
        let mu = sym(Symbol::Mu);
        let r = sym(Symbol::R);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i + j > 0 {
                out.add_term((i, j + 1), &(c * &e).scale(&GaussianRational::from_int((i + j) as i64)));
            }
            if j > 0 {
                let jj = GaussianRational::from_int(j as i64);
                out.add_term((i + 1, j - 1), &-&(c * &mu).scale(&jj));
                out.add_term((i, j - 1), &(c * &r).scale(&jj));
            }
        }
        out
    }

    /// Rewrites `τʲ → τ^(j mod 2)·(T/r)^(j div 2)` once, over a common `r` denominator.
    pub fn reduce(&self) -> SigmaTauExpr {
        let k = self.terms.keys().map(|&(_, j)| j / 2).max().unwrap_or(0);
        let t = tau_squared_numerator();
        let r = sym(Symbol::R);
        let mut t_pows: Vec<Vec<ParamPoly>> = vec![vec![ParamPoly::one()]];
        for n in 1..=k as usize {
            let next = mul_vec(&t_pows[n - 1], &t);
            t_pows.push(next);
        }
        let mut p: Vec<ParamPoly> = vec![];
        let mut q: Vec<ParamPoly> = vec![];
        for (&(i, j), c) in &self.terms {
            let half = (j / 2) as usize;
            let lift = &r.pow(k - j / 2) * c;
            let mut shifted = vec![ParamPoly::zero(); i as usize];
            shifted.extend(t_pows[half].iter().map(|x| x * &lift));
            if j % 2 == 0 {
                p = add_vec(&p, &shifted);
            } else {
                q = add_vec(&q, &shifted);
            }
        }
        SigmaTauExpr::from_parts(p, q, k)
    }

    pub fn map_coefficients<F: Fn(&ParamPoly) -> ParamPoly>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v));
        }
        out
    }

    pub fn eval<T: Scalar>(&self, sigma: &T, tau: &T, point: &Point<T>) -> Result<T, EvalError> {
        let mut acc = T::zero();
        for (&(i, j), c) in &self.terms {
            acc = acc + c.eval(point)? * sigma.powu(i) * tau.powu(j);
        }
        Ok(acc)
    }
}

impl From<&SigmaTauExpr> for RiccatiPoly {
    /// Drops the denominator: the result is the numerator `P + Qτ`.
    fn from(x: &SigmaTauExpr) -> Self {
        let mut out = RiccatiPoly::zero();
        for ((i, j), c) in x.collect() {
            out.add_term((i, j), &c);
        }
        out
    }
}

impl<'a> Add<&'a RiccatiPoly> for &'a RiccatiPoly {
    type Output = RiccatiPoly;
    fn add(self, o: &RiccatiPoly) -> RiccatiPoly {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl<'a> Sub<&'a RiccatiPoly> for &'a RiccatiPoly {
    type Output = RiccatiPoly;
    fn sub(self, o: &RiccatiPoly) -> RiccatiPoly {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl<'a> Mul<&'a RiccatiPoly> for &'a RiccatiPoly {
    type Output = RiccatiPoly;
    fn mul(self, o: &RiccatiPoly) -> RiccatiPoly {
        let mut out = RiccatiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Debug for RiccatiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().rev().map(|(&(i, j), c)| format!("({c})*sigma^{i}*tau^{j}")).collect();
        write!(f, "RiccatiPoly({})", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

/// Rational point on the surface `τ² = T(σ)/r` obtained by solving the first integral for `ρ`.
pub fn point_on_integral_surface(
    sigma: &GaussianRational,
    tau: &GaussianRational,
    mu: &GaussianRational,
    r: &GaussianRational,
    e: &GaussianRational,
) -> Option<GaussianRational> {
    // ρ = (-eτ² - r + 2μσ)·r/σ² - μ²   (uses e⁻¹ = e when e = ±1; general e divides)
    let e_inv = e.inv()?;
    let s2_inv = (sigma * sigma).inv()?;
    let inner = &(&(&-&(tau * tau) * &e_inv) - r) + &(&GaussianRational::from_int(2) * &(mu * sigma));
    Some(&(&(&inner * r) * &s2_inv) - &(mu * mu))
}
