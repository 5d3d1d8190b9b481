//! Closed-form Riccati solutions (Cases I–IV), the 21 tabulated solution families and
//! Taylor-jet evaluation of `u` with its derivatives through `∂x⁵` and `∂t`.

mod cases;
mod families;
mod jet;
mod real;

use thiserror::Error;

pub use cases::{eval_sigma_tau, CaseIForm, CaseId, RiccatiParams, POLE_THRESHOLD};
pub use families::{
    build_solution, family, list_families, taylor_eval, A0Rule, Admissibility, Effective, EffectiveR, FormCoeffs,
    Jet, Kernel, Lin, Solution, SolutionFamily, Template, Wave,
};
pub use jet::{Jet2, JET_X_ORDER};
pub use real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("pole at xi = {xi}: denominator {denominator:e}")]
    Pole { xi: f64, denominator: f64 },
    #[error("case precondition violated: {0}")]
    Precondition(String),
    #[error("inadmissible instantiation {0}")]
    Inadmissible(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

/// The four tables as LaTeX tabulars, rows in catalog order.
pub fn tables_latex() -> String {
    let fams = list_families();
    let mut out = String::new();
    for t in 1..=4u8 {
        let rows: Vec<_> = fams.iter().filter(|f| f.table == t).collect();
        let (e, rho) = (rows[0].e, rows[0].rho);
        out.push_str(&format!("% table {t}: e = {e}, rho = {rho}\n"));
        out.push_str("\\begin{tabular}{|c|c|c|c|}\n\\hline\n$a_0$ & $a_1$ & $\\mu$ & $u(x,t)$ \\\\ \\hline\n");
        for f in rows {
            out.push_str(&f.to_latex_row());
            out.push_str(" \\hline\n");
        }
        out.push_str("\\end{tabular}\n\n");
    }
    out
}
