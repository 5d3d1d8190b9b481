//! Exact arithmetic and the `P(σ) + Q(σ)·τ` normal form.

pub mod gaussian;
pub mod param_poly;
pub mod scalar;
pub mod sigma_tau;
pub mod symbol;
pub mod univariate;

pub use gaussian::{rat, rat_int, GaussianRational, Rational};
pub use param_poly::{poly, EvalError, Monomial, ParamPoly, ParsePolyError, Point};
pub use scalar::Scalar;
pub use sigma_tau::{first_integral_times_r, point_on_integral_surface, tau_squared_numerator, RiccatiPoly, SigmaTauExpr};
pub use symbol::{Symbol, MAX_ANSATZ_ORDER, NUM_SYMBOLS};
pub use univariate::UniPoly;
