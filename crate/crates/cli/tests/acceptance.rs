//! Acceptance criteria 1-8. Each prints one `PASS`/`FAIL` line with its runtime; the test
//! fails if any criterion fails. Run with `--nocapture` to see the lines.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use riccati_core::catalog::{build_solution, family, list_families, CaseIForm, CaseId, RiccatiParams};
use riccati_core::reduction::KdV5Params;
use riccati_core::symkernel::{first_integral_times_r, poly, GaussianRational, ParamPoly, Symbol};
use riccati_core::sysgen::{branch_mu, solve_m1};
use riccati_core::verify::{
    annihilation_check, cdg_system, check_riccati_and_integral, pde_residual, regular_grid, regular_xi_grid,
    verify_family, FamilyVerdict, DEFAULT_SEED, GRID_POINTS, T_RANGE, X_RANGE,
};

const GENSYS_GROUPS: usize = 13;
const MIN_POINTS: u64 = 20;
const ANNIHILATION_TOL: f64 = 1e-10;
const ROOT_TOL: f64 = 1e-10;
const RESIDUAL_TOL: f64 = 1e-6;
const CONTROL_SCALE: f64 = 1.1;
const CONTROL_MIN_REL: f64 = 1e-3;
const RICCATI_TOL: f64 = 1e-9;
const CASE_I_TOL: f64 = 1e-12;
const SIM_LINF: f64 = 1e-4;
const SIM_SPEED_REL: f64 = 0.01;
const ORDER_RATIO: (f64, f64) = (12.0, 20.0);

fn riccati(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_riccati")).args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

struct Criterion {
    n: u32,
    name: &'static str,
    budget: Duration,
    check: fn() -> Result<String, String>,
}

fn c1_system_regeneration() -> Result<String, String> {
    let (code, v) = riccati(&["gensys", "--cdg", "--m", "1", "--check-paper"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    if v["equation_count"] != GENSYS_GROUPS {
        return Err(format!("{} groups", v["equation_count"]));
    }
    let rep = &v["reference_match"];
    let points = rep["sample_points"].as_u64().unwrap_or(0);
    if points < MIN_POINTS {
        return Err(format!("{points} sample points"));
    }
    let matches = rep["matches"].as_array().ok_or("no matches")?;
    if matches.len() != 13 {
        return Err(format!("{} reference equations", matches.len()));
    }
    let mut unit = Vec::new();
    for m in matches {
        let idx = &m["reference_index"];
        match m["kind"].as_str() {
            Some("exact") => {}
            Some("up_to_unit") => unit.push(format!("{idx} (factor r^{} e^{})", m["r_power"], m["e_power"])),
            _ => return Err(format!("equation {idx} unmatched")),
        }
        if m["constant"] == "0" {
            return Err(format!("equation {idx}: zero constant"));
        }
    }
    Ok(format!("13 groups, {points} points, {} exact, up to a unit: {}", 13 - unit.len(), unit.join(", ")))
}

fn c2_first_integral() -> Result<String, String> {
    let d = first_integral_times_r().derivation().reduce().map_coefficients(|c| c.reduce_involutions()).normalize();
    if d.is_zero() {
        Ok("d/dξ of the invariant is the zero expression".into())
    } else {
        Err(format!("nonzero: {d}"))
    }
}

fn c3_balancing() -> Result<String, String> {
    let (code, v) = riccati(&["balance", "--cdg"]);
    if code == 0 && v["admissible_m"] == serde_json::json!([1, 2]) {
        Ok("m = {1, 2}".into())
    } else {
        Err(format!("exit {code}, admissible_m = {}", v["admissible_m"]))
    }
}

fn c4_solver() -> Result<String, String> {
    let sys = cdg_system();
    let rep = solve_m1(&sys, 1, -1).map_err(|e| e.to_string())?;
    let quad: Vec<_> = rep.branches.iter().filter(|b| b.constraint(Symbol::A0).is_some()).collect();
    let mut mus = Vec::new();
    let mut worst: f64 = 0.0;
    for b in &quad {
        let mu = branch_mu(b).ok_or("branch without fixed mu")?;
        if mu != GaussianRational::from_int(1) && mu != GaussianRational::from_int(-1) {
            continue;
        }
        if b.value(Symbol::B1) != Some(&ParamPoly::zero()) {
            return Err(format!("{}: b1 not zero", b.id));
        }
        let a1 = b.value(Symbol::A1).and_then(|p| p.as_constant()).ok_or("a1 not constant")?;
        if a1 != &(-&mu) * &GaussianRational::from_frac(1, 2) {
            return Err(format!("{}: a1 = {a1}", b.id));
        }
        let want = poly("180*a0^2 - 30*r*a0 + r^2 + lambda");
        if b.constraint(Symbol::A0).map(|p| p.monic()) != Some(want.monic()) {
            return Err(format!("{}: a0 constraint differs", b.id));
        }
        for (r, lambda) in [(3.0f64, 1.0f64), (2.0, -1.0)] {
            let s = 5f64.sqrt() * (r * r - 4.0 * lambda).sqrt();
            let expect = [(5.0 * r - s) / 60.0, (5.0 * r + s) / 60.0];
            let mut roots = Vec::new();
            for root in 0..b.root_count() {
                let pt = b.instantiate(r, lambda, root, 0.0).map_err(|e| e.to_string())?;
                let a = annihilation_check(&sys, &pt).map_err(|e| e.to_string())?;
                worst = worst.max(a.max_rel);
                roots.push(pt.get(Symbol::A0).ok_or("a0 missing")?.re);
            }
            roots.sort_by(f64::total_cmp);
            for (got, want) in roots.iter().zip(expect) {
                if (got - want).abs() > ROOT_TOL * want.abs().max(1.0) {
                    return Err(format!("root {got} vs {want} at ({r}, {lambda})"));
                }
            }
        }
        mus.push(mu.to_string());
    }
    if mus.len() != 2 {
        return Err(format!("surd branches for mu = {mus:?}"));
    }
    if worst >= ANNIHILATION_TOL {
        return Err(format!("annihilation {worst:.2e}"));
    }
    Ok(format!("mu ∈ {{{}}}, max relative annihilation {worst:.1e}", mus.join(", ")))
}

fn c5_catalog() -> Result<String, String> {
    let (code, v) = riccati(&["verify", "--all", "--tol", &RESIDUAL_TOL.to_string()]);
    let fams = v["families"].as_array().ok_or("no report")?;
    if fams.len() != 21 {
        return Err(format!("{} families", fams.len()));
    }
    let mut pass = Vec::new();
    let mut fail = Vec::new();
    for f in fams {
        let id = f["family_id"].as_str().unwrap_or("?").to_string();
        let samples = f["samples"].as_array().ok_or("no samples")?;
        if samples.len() != 2 {
            return Err(format!("{id}: {} samples", samples.len()));
        }
        match f["verdict"].as_str() {
            Some("PASS") => {
                for s in samples {
                    for oracle in ["jet", "fd"] {
                        let o = &s["residuals"][oracle];
                        let rel = o["max_rel"].as_f64().ok_or("max_rel")?;
                        let live = o["points"].as_array().map_or(0, |p| p.len()) as u64 - o["skipped"].as_u64().unwrap_or(0);
                        if !(rel < RESIDUAL_TOL) || live < GRID_POINTS as u64 / 2 {
                            return Err(format!("{id} {oracle}: max_rel {rel}, {live} live points"));
                        }
                    }
                }
                pass.push(id);
            }
            Some("FAIL") => {
                let rel = f["worst_point"]["rel"].as_f64().ok_or(format!("{id}: FAIL without worst point"))?;
                if rel < RESIDUAL_TOL {
                    return Err(format!("{id}: FAIL but worst rel {rel}"));
                }
                fail.push(id);
            }
            other => return Err(format!("{id}: verdict {other:?}")),
        }
    }
    let summary = &v["summary"];
    if summary["PASS"] != pass.len() || summary["FAIL"] != fail.len() {
        return Err(format!("summary {summary} inconsistent"));
    }
    for id in ["T3R6", "T4R5", "T4R6"] {
        if !pass.iter().any(|p| p == id) {
            return Err(format!("{id} did not pass"));
        }
    }
    if (code == 0) != fail.is_empty() {
        return Err(format!("exit {code} with {} FAIL", fail.len()));
    }
    Ok(format!("{} PASS, FAIL as printed: {:?}", pass.len(), fail))
}

fn c6_negative_controls() -> Result<String, String> {
    let sys = cdg_system();
    let p = KdV5Params::cdg();
    let mut n = 0;
    let mut weakest = f64::INFINITY;
    for f in list_families() {
        let rep = verify_family(&f, &sys, RESIDUAL_TOL, DEFAULT_SEED);
        if rep.verdict != FamilyVerdict::Pass {
            continue;
        }
        for s in &rep.samples {
            let u = build_solution(&f, s.lambda, s.r).map_err(|e| e.to_string())?.with_a1_scale(CONTROL_SCALE);
            let grid = regular_grid(&u, GRID_POINTS, X_RANGE, T_RANGE, DEFAULT_SEED);
            let jet = pde_residual(&u, &p, &grid, RESIDUAL_TOL).map_err(|e| e.to_string())?;
            if !(jet.max_rel > CONTROL_MIN_REL) {
                return Err(format!("{}: perturbed max_rel {}", f.id, jet.max_rel));
            }
            weakest = weakest.min(jet.max_rel);
        }
        n += 1;
    }
    Ok(format!("{n} PASS families flip, smallest perturbed max_rel {weakest:.2e}"))
}

fn c7_riccati_cases() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    let cases = [
        (CaseId::IISec, 1.0 / 3.0, 1.0),
        (CaseId::IICsc, 1.0 / 3.0, 1.0),
        (CaseId::III, 0.5, 1.5),
        (CaseId::III, -0.4, 0.7),
        (CaseId::IV, 0.5, 2.0),
    ];
    for (case, mu, r) in cases {
        let p = RiccatiParams::for_case(case, mu, r);
        let grid = regular_xi_grid(case, &p, CaseIForm { c: 0.0 }, -6.0, 6.0, 50);
        if grid.len() != 50 {
            return Err(format!("{case:?}: {} grid points", grid.len()));
        }
        let d = check_riccati_and_integral(case, &p, CaseIForm { c: 0.0 }, &grid).map_err(|e| e.to_string())?;
        if d.first_integral.is_none() || !(d.max() < RICCATI_TOL) {
            return Err(format!("{case:?}: {d:?}"));
        }
        worst = worst.max(d.max());
    }
    let mut worst_i: f64 = 0.0;
    for e in [1i8, -1] {
        let p = RiccatiParams::new(e, 1, 0.0, 0.0);
        let grid: Vec<f64> = (0..50).map(|i| -4.9 + 0.2 * i as f64).collect();
        let d = check_riccati_and_integral(CaseId::I, &p, CaseIForm { c: 0.05 }, &grid).map_err(|e| e.to_string())?;
        if !(d.max() < CASE_I_TOL) {
            return Err(format!("Case I e = {e}: {d:?}"));
        }
        worst_i = worst_i.max(d.max());
    }
    Ok(format!("Cases II-IV max deviation {worst:.1e}, Case I {worst_i:.1e}"))
}

fn c8_simulation() -> Result<String, String> {
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/soliton.cfg");
    let (code, v) = riccati(&["simulate", "--config", cfg.to_str().unwrap(), "--order"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    let m = &v["metrics"];
    let f = |x: &Value| x.as_f64().unwrap_or(f64::NAN);
    let (linf, speed, ratio) = (f(&m["linf_error"]), f(&m["speed_rel_error"]), f(&v["order"]["ratio"]));
    if f(&v["config"]["lambda"]) != 0.25 || v["config"]["n_modes"] != 512 || v["metrics"]["family_id"] != "T3R6" {
        return Err("config is not the benchmark".into());
    }
    if !(linf < SIM_LINF && speed < SIM_SPEED_REL && (ORDER_RATIO.0..=ORDER_RATIO.1).contains(&ratio)) {
        return Err(format!("L∞ {linf:.2e}, speed error {speed:.2e}, ratio {ratio:.2}"));
    }
    Ok(format!("L∞ {linf:.2e}, speed error {speed:.2e}, dt-halving ratio {ratio:.2}"))
}

#[test]
fn acceptance_criteria() {
    // A family must still exist for the simulation benchmark.
    assert!(family("T3R6").is_some());
    let criteria = [
        Criterion { n: 1, name: "system regeneration", budget: Duration::from_secs(10), check: c1_system_regeneration },
        Criterion { n: 2, name: "first-integral identity", budget: Duration::from_secs(1), check: c2_first_integral },
        Criterion { n: 3, name: "balancing", budget: Duration::from_secs(1), check: c3_balancing },
        Criterion { n: 4, name: "solver reproduction", budget: Duration::from_secs(10), check: c4_solver },
        Criterion { n: 5, name: "catalog verification", budget: Duration::from_secs(60), check: c5_catalog },
        Criterion { n: 6, name: "negative controls", budget: Duration::from_secs(10), check: c6_negative_controls },
        Criterion { n: 7, name: "Riccati case checks", budget: Duration::from_secs(5), check: c7_riccati_cases },
        Criterion { n: 8, name: "simulation", budget: Duration::from_secs(120), check: c8_simulation },
    ];
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {:?}", c.budget)),
            Err(d) => (false, d),
        };
        println!(
            "criterion {} {:<24} {} ({:.2} s) {}",
            c.n,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            detail
        );
        if !ok {
            failed.push(c.n);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
