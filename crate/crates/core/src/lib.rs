//! Projective Riccati expansion machinery for the fifth-order KdV family
//!
//! `u_t + ω u_xxxxx + α u u_xxx + β u_x u_xx + γ u² u_x = 0`
//!
//! and in particular the Caudrey-Dodd-Gibbon (CDG) member `(ω, α, β, γ) = (1, 30, 30, 180)`.
//!
//! The crate is organised bottom-up:
//!
//! * [symkernel] exact arithmetic (Gaussian rationals, parameter polynomials) and the
//!   `P(σ) + Q(σ)·τ` normal form under the projective Riccati system
//! * [reduction] traveling-wave reduction of the PDE to an ODE and substitution of the ansatz
//! * [sysgen] degree balancing, coefficient-system generation, comparison against a reference
//!   transcription and branch enumeration for `m = 1`
//! * [catalog] closed-form Riccati solutions and the tabulated solution families, with
//!   Taylor-jet evaluation of `u` and its derivatives
//! * [verify] residual oracles (jet and finite differences), Riccati checks and annihilation
//!   checks
//! * [pdesim] integrating-factor RK4 pseudospectral solver for the CDG equation
//! * [numfmt] canonical float formatting for byte-stable JSON output

pub mod catalog;
pub mod numfmt;
pub mod pdesim;
pub mod reduction;
pub mod symkernel;
pub mod sysgen;
pub mod verify;
