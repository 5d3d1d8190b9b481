use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::gaussian::{format_rational, rat_int, GaussianRational};
use super::scalar::Scalar;
use super::symbol::{Symbol, NUM_SYMBOLS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("symbol `{0}` has no assigned value")]
    Unassigned(Symbol),
    #[error("coefficient {0} is not representable in the target number type")]
    Unrepresentable(String),
    #[error("division by zero: r = 0 with a nonzero r-denominator power")]
    DivisionByZero,
}

/// Dense exponent vector over the declared symbols.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial([u16; NUM_SYMBOLS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NUM_SYMBOLS])
    }

    pub fn var(s: Symbol) -> Self {
        Self::one().with_exp(s, 1)
    }

    pub fn with_exp(mut self, s: Symbol, k: u16) -> Self {
        self.0[s.index()] = k;
        self
    }

    pub fn exp(&self, s: Symbol) -> u16 {
        self.0[s.index()]
    }

    pub fn exponents(&self) -> &[u16; NUM_SYMBOLS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&k| k as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = [0u16; NUM_SYMBOLS];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[i].checked_add(o.0[i]).expect("exponent overflow");
        }
        Monomial(out)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut out = o.0;
        for (slot, k) in out.iter_mut().zip(self.0.iter()) {
            *slot -= k;
        }
        Monomial(out)
    }

    fn render(&self, latex: bool) -> String {
        let mut parts = Vec::new();
        for s in Symbol::ALL {
            let k = self.exp(s);
            if k == 0 {
                continue;
            }
            let name = if latex { s.latex() } else { s.name() };
            parts.push(match (k, latex) {
                (1, _) => name.to_string(),
                (k, false) => format!("{name}^{k}"),
                (k, true) => format!("{name}^{{{k}}}"),
            });
        }
        parts.join(if latex { " " } else { "*" })
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the earliest
    /// declared symbol.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Values for the declared symbols.
#[derive(Clone, Debug)]
pub struct Point<T> {
    values: [Option<T>; NUM_SYMBOLS],
}

impl<T: Clone> Default for Point<T> {
    fn default() -> Self {
        Point { values: std::array::from_fn(|_| None) }
    }
}

impl<T: Clone> Point<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, s: Symbol, v: T) -> Self {
        self.values[s.index()] = Some(v);
        self
    }

    pub fn set(&mut self, s: Symbol, v: T) {
        self.values[s.index()] = Some(v);
    }

    pub fn get(&self, s: Symbol) -> Option<&T> {
        self.values[s.index()].as_ref()
    }
}

/// Exact multivariate polynomial over `Q(i)` in the declared symbols.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    // invariant: no zero coefficients stored
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(<GaussianRational as One>::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(<GaussianRational as One>::one(), Monomial::var(s))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(it: I) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter().rev()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(<GaussianRational as Zero>::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &GaussianRational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.exp(s) > 0)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL.iter().copied().filter(|&s| self.contains(s)).collect()
    }

    pub fn degree_in(&self, s: Symbol) -> u16 {
        self.terms.keys().map(|m| m.exp(s)).max().unwrap_or(0)
    }

    /// Largest `k` with `s^k` dividing every term (0 for the zero polynomial).
    pub fn valuation_in(&self, s: Symbol) -> u16 {
        self.terms.keys().map(|m| m.exp(s)).min().unwrap_or(0)
    }

    /// Divide by `s^k`; every term must be divisible.
    pub fn div_var_pow(&self, s: Symbol, k: u16) -> ParamPoly {
        let d = Monomial::one().with_exp(s, k);
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    assert!(d.divides(m), "{} is not divisible by {}^{}", self, s, k);
                    (d.quotient_of(m), v.clone())
                })
                .collect(),
        }
    }

    /// Coefficients with respect to `s`: entry `k` multiplies `s^k`.
    pub fn coefficients_in(&self, s: Symbol) -> Vec<ParamPoly> {
        let mut out = vec![ParamPoly::zero(); self.degree_in(s) as usize + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m.exp(s);
            out[k as usize].add_term(m.with_exp(s, 0), c);
        }
        out
    }

    pub fn substitute(&self, s: Symbol, value: &ParamPoly) -> ParamPoly {
        if !self.contains(s) {
            return self.clone();
        }
        let coeffs = self.coefficients_in(s);
        // Horner in `value`
        let mut acc = ParamPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    pub fn substitute_value(&self, s: Symbol, value: &GaussianRational) -> ParamPoly {
        self.substitute(s, &ParamPoly::constant(value.clone()))
    }

    /// Rewrite `e² → 1` and `ρ² → 1` (both are ±1 in the method).
    pub fn reduce_involutions(&self) -> ParamPoly {
        ParamPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let m = m
                .with_exp(Symbol::E, m.exp(Symbol::E) % 2)
                .with_exp(Symbol::Rho, m.exp(Symbol::Rho) % 2);
            (m, c.clone())
        }))
    }

    pub fn map_coefficients<F: Fn(&GaussianRational) -> GaussianRational>(&self, f: F) -> ParamPoly {
        ParamPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Value at `point` together with the sum of absolute term magnitudes, which is
    /// the natural scale for relative residuals.
    pub fn eval_with_scale<T: Scalar>(&self, point: &Point<T>) -> Result<(T, f64), EvalError> {
        let mut value = T::zero();
        let mut scale = 0.0;
        for (m, c) in &self.terms {
            let mut t = T::from_gaussian(c).ok_or_else(|| EvalError::Unrepresentable(c.to_string()))?;
            for s in Symbol::ALL {
                let k = m.exp(s);
                if k > 0 {
                    let v = point.get(s).ok_or(EvalError::Unassigned(s))?;
                    t = t * v.powu(k as u32);
                }
            }
            scale += t.magnitude();
            value = value + t;
        }
        Ok((value, scale))
    }

    pub fn eval<T: Scalar>(&self, point: &Point<T>) -> Result<T, EvalError> {
        self.eval_with_scale(point).map(|(v, _)| v)
    }

    /// Division by a polynomial whose leading coefficient in `s` is a nonzero constant:
    /// `(quotient, remainder)` with the remainder of lower degree in `s` than `divisor`.
    pub fn divrem_in(&self, s: Symbol, divisor: &ParamPoly) -> (ParamPoly, ParamPoly) {
        let dcoeffs = divisor.coefficients_in(s);
        let n = dcoeffs.len() - 1;
        let lead = dcoeffs[n]
            .as_constant()
            .filter(|c| !c.is_zero())
            .expect("divisor leading coefficient must be a nonzero constant");
        let lead_inv = lead.inv().unwrap();
        let mut quot = ParamPoly::zero();
        let mut rem = self.clone();
        loop {
            let deg = rem.degree_in(s) as usize;
            if rem.is_zero() || deg < n {
                return (quot, rem);
            }
            let top = rem.coefficients_in(s).swap_remove(deg);
            let factor = top.scale(&lead_inv).mul_monomial(&Monomial::one().with_exp(s, (deg - n) as u16));
            rem = &rem - &(&factor * divisor);
            quot = &quot + &factor;
        }
    }

    pub fn rem_monic_in(&self, s: Symbol, divisor: &ParamPoly) -> ParamPoly {
        self.divrem_in(s, divisor).1
    }

    /// Common monomial factor of all terms (`1` for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Monomial::one() };
        let mut exps = *first.exponents();
        for m in it {
            for (slot, k) in exps.iter_mut().zip(m.exponents()) {
                *slot = (*slot).min(*k);
            }
        }
        Monomial(exps)
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, d: &Monomial) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    assert!(d.divides(m), "monomial does not divide {self}");
                    (d.quotient_of(m), v.clone())
                })
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> ParamPoly {
        match self.leading_term() {
            None => ParamPoly::zero(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (m, c)) in self.terms().enumerate() {
            let (sign, mag) = split_sign(c);
            out.push_str(match (n == 0, sign) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            let coeff = latex_coefficient(&mag);
            let mono = m.render(true);
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&coeff);
                out.push(' ');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// `(negative, magnitude)`; only real coefficients are split.
fn split_sign(c: &GaussianRational) -> (bool, GaussianRational) {
    if c.is_negative_real() {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

fn latex_coefficient(c: &GaussianRational) -> String {
    let q = |r: &num_rational::BigRational| {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
        }
    };
    if c.is_real() {
        return q(&c.re);
    }
    let mut s = String::from("\\left(");
    if !c.re.is_zero() {
        s.push_str(&q(&c.re));
        s.push_str(if c.im.is_negative() { "-" } else { "+" });
    } else if c.im.is_negative() {
        s.push('-');
    }
    let mag = c.im.abs();
    if !mag.is_one() {
        s.push_str(&q(&mag));
    }
    s.push_str("i\\right)");
    s
}

impl fmt::Display for ParamPoly {
    /// Canonical text rendering: descending graded-lex terms, `*` for products and `^`
    /// for powers, non-real coefficients in parentheses. [`str::parse`] reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let mono = m.render(false);
            if c.is_real() {
                let neg = c.re.is_negative();
                f.write_str(match (n == 0, neg) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                })?;
                let mag = c.re.abs();
                if mono.is_empty() {
                    f.write_str(&format_rational(&mag))?;
                } else if mag.is_one() {
                    f.write_str(&mono)?;
                } else {
                    write!(f, "{}*{}", format_rational(&mag), mono)?;
                }
            } else {
                if n > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "({c})")?;
                if !mono.is_empty() {
                    write!(f, "*{mono}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamPoly({self})")
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, o: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, o: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ParamPoly {
            type Output = ParamPoly;
            fn $m(self, o: ParamPoly) -> ParamPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

impl serde::Serialize for ParamPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<GaussianRational> for ParamPoly {
    fn from(c: GaussianRational) -> Self {
        ParamPoly::constant(c)
    }
}

impl From<Symbol> for ParamPoly {
    fn from(s: Symbol) -> Self {
        ParamPoly::var(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

impl std::str::FromStr for ParamPoly {
    type Err = ParsePolyError;

    /// Reads sums of products of rationals, `i`, declared symbol names, `^` powers and
    /// parenthesised sub-expressions. Division is allowed only by integer literals.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParsePolyError {
        ParsePolyError { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ParamPoly, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, ParsePolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    let inv = GaussianRational::real(num_rational::BigRational::new(1.into(), d));
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<ParamPoly, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt, ParsePolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<ParamPoly, ParsePolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ParamPoly::constant(GaussianRational::real(num_rational::BigRational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "i" {
                    return Ok(ParamPoly::constant(GaussianRational::i()));
                }
                Symbol::from_name(name).map(ParamPoly::var).ok_or_else(|| ParsePolyError {
                    pos: start,
                    msg: format!("unknown symbol `{name}`"),
                })
            }
            _ => Err(self.err("expected number, symbol or `(`")),
        }
    }
}

/// Convenience for tests and data: `poly("2*a1*e^7 - r")`.
pub fn poly(s: &str) -> ParamPoly {
    s.parse().unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}

pub fn int_poly(n: i64) -> ParamPoly {
    ParamPoly::constant(GaussianRational::real(rat_int(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::gaussian::rat;

    #[test]
    fn grlex_order() {
        let a0 = Monomial::var(Symbol::A0);
        let mu2 = Monomial::one().with_exp(Symbol::Mu, 2);
        let a1 = Monomial::var(Symbol::A1);
        assert!(mu2 > a0, "higher total degree wins");
        assert!(a0 > a1, "earlier symbol wins within a degree");
    }

    #[test]
    fn render_and_parse_round_trip() {
        let p = poly("e^7*(mu^2 + rho)^2*a1");
        assert_eq!(p.to_string(), "a1*mu^4*e^7 + 2*a1*mu^2*e^7*rho + a1*e^7*rho^2");
        let q = poly("-3/2*r + (1/2-i)*a0 - 7");
        assert_eq!(q.to_string(), "(1/2-i)*a0 - 3/2*r - 7");
        assert_eq!(poly(&q.to_string()), q);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = &poly("a0 + r") - &poly("a0");
        assert_eq!(p, poly("r"));
        assert_eq!(p.num_terms(), 1);
        assert!((&p - &p).is_zero());
        assert_eq!(ParamPoly::zero().to_string(), "0");
    }

    #[test]
    fn substitution_and_involutions() {
        let p = poly("e^3*rho^2 + mu^2 + 1");
        assert_eq!(p.reduce_involutions(), poly("e + mu^2 + 1"));
        let q = p.substitute_value(Symbol::Mu, &GaussianRational::i());
        assert_eq!(q, poly("e^3*rho^2"));
        let s = poly("a0^2 - r").substitute(Symbol::A0, &poly("r + 1"));
        assert_eq!(s, poly("r^2 + r + 1"));
    }

    #[test]
    fn valuation_and_division() {
        let p = poly("r^3*a0 + r^2*lambda");
        assert_eq!(p.valuation_in(Symbol::R), 2);
        assert_eq!(p.div_var_pow(Symbol::R, 2), poly("r*a0 + lambda"));
    }

    #[test]
    fn evaluation_reports_scale() {
        let p = poly("a0 - r");
        let pt = Point::new().with(Symbol::A0, 2.0).with(Symbol::R, 2.0);
        let (v, scale) = p.eval_with_scale(&pt).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(scale, 4.0);
        assert_eq!(p.eval(&Point::<f64>::new().with(Symbol::A0, 1.0)), Err(EvalError::Unassigned(Symbol::R)));
        assert!(poly("i*a0").eval(&pt).is_err());
    }

    #[test]
    fn remainder_modulo_quadratic() {
        // a0^3 mod (a0^2 - r) = r*a0
        let rem = poly("a0^3 + 1").rem_monic_in(Symbol::A0, &poly("2*a0^2 - 2*r"));
        assert_eq!(rem, poly("r*a0 + 1"));
    }

    #[test]
    fn latex_rendering() {
        let p = poly("1/2*a1*mu^2 - lambda");
        assert_eq!(p.to_latex(), "\\frac{1}{2} a_1 \\mu^{2} - \\lambda");
        let _ = rat(1, 2);
    }

    #[test]
    fn parse_errors() {
        assert!("a0 +".parse::<ParamPoly>().is_err());
        assert!("zeta".parse::<ParamPoly>().is_err());
        assert!("a0/0".parse::<ParamPoly>().is_err());
    }
}
