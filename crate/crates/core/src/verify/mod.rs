//! Independent verification: PDE residuals by a Taylor-jet oracle and a high-precision
//! finite-difference oracle, Riccati and first-integral checks, and annihilation of the
//! generated algebraic system.

mod checks;
mod hifloat;
mod report;
mod residual;

pub use checks::{
    annihilation_check, check_riccati_and_integral, m1_point, regular_xi_grid, AnnihilationReport, EquationResidual,
    RiccatiDeviations,
};
pub use hifloat::{HiFloat, HI_PRECISION};
pub use report::{
    cdg_system, effective_annihilation, printed_annihilation, sample_parameters, verify_all, verify_family,
    verify_sample, Annihilation, CatalogReport, FamilyReport, FamilyVerdict, SampleReport, ANNIHILATION_TOLERANCE,
    DEFAULT_SEED, GRID_POINTS, T_RANGE, X_RANGE,
};
pub use residual::{
    fd_derivatives, fd_residual, grid_margin, pde_residual, pde_terms, regular_grid, residual_report, Oracle,
    OracleReport, PointResidual, ResidualReport, Verdict, VerifyError, DEFAULT_FD_STEP, DEFAULT_TOLERANCE,
    FD_MARGIN_STEPS,
};
