use approx::assert_relative_eq;
use riccati_core::catalog::*;
use riccati_core::symkernel::GaussianRational;
use riccati_core::verify::fd_derivatives;

#[test]
fn twenty_one_families() {
    let all = list_families();
    assert_eq!(all.len(), 21);
    let per_table: Vec<usize> = (1..=4).map(|t| all.iter().filter(|f| f.table == t).count()).collect();
    assert_eq!(per_table, vec![4, 4, 7, 6]);
    let mut ids: Vec<_> = all.iter().map(|f| f.id.clone()).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), 21);
    assert!(family("T3R6").is_some());
    assert!(family("T5R1").is_none());
}

#[test]
fn table_one_row_one_parameters() {
    let f = family("T1R1").unwrap();
    assert_eq!(f.a1, GaussianRational::from_frac(1, 2));
    assert_eq!(f.mu, GaussianRational::from_int(-1));
    assert_eq!(f.b1, GaussianRational::from_int(0));
    assert_eq!((f.e, f.rho), (1, 1));
}

#[test]
fn table_two_row_four_template() {
    let f = family("T2R4").unwrap();
    assert_eq!(f.a0_formula, "-5√λ/6 + √λ/6");
    assert_eq!(f.u_template, "√λ/(csc(⁴√(4λ) ξ) + 1)");
    assert_eq!(f.mu, GaussianRational::i());
}

#[test]
fn table_three_row_six_closed_form() {
    let u = build_solution(&family("T3R6").unwrap(), 0.25, 1.0).unwrap();
    for &(x, t) in &[(0.0, 0.0), (0.3, 0.7), (-4.0, 1.0), (9.5, 0.2)] {
        let want = -1.0 / 12.0 + 0.5 / ((x + t / 4.0f64).cosh() + 1.0);
        assert_relative_eq!(u.eval(x, t), want, max_relative = 1e-14);
    }
    assert_relative_eq!(u.background(), -1.0 / 12.0, max_relative = 1e-14);
}

#[test]
fn table_four_row_six_at_origin() {
    let u = build_solution(&family("T4R6").unwrap(), 1.0, 2.0).unwrap();
    // −1/6 + 1·(1/(1 + 1))
    assert_relative_eq!(u.eval(0.0, 0.0), -1.0 / 6.0 + 0.5, max_relative = 1e-15);
}

#[test]
fn surd_degenerates_at_double_root() {
    for id in ["T3R1", "T3R2"] {
        let f = family(id).unwrap();
        for r in [0.5, 1.0, 3.0] {
            let lambda = r * r / 4.0;
            assert_relative_eq!(f.a0_value(r, lambda), r / 12.0, max_relative = 1e-14);
        }
    }
}

#[test]
fn surd_rows_follow_quadratic() {
    // 180a0² − 30r·e·a0 + r² + λ = 0 with the header's e
    for f in list_families().iter().filter(|f| matches!(f.a0_rule, A0Rule::Surd { .. })) {
        let (r, lambda) = if f.admissibility == Admissibility::NegativeRSurd { (-1.3, 0.2) } else { (1.3, 0.2) };
        let a0 = f.a0_value(r, lambda);
        let e = f.e as f64;
        let q = 180.0 * a0 * a0 - 30.0 * r * e * a0 + r * r + lambda;
        assert!(q.abs() < 1e-12, "{}: {q}", f.id);
    }
}

#[test]
fn inadmissible_inputs_error() {
    let surd = family("T3R1").unwrap();
    assert!(matches!(build_solution(&surd, 1.0, 1.0), Err(CatalogError::Inadmissible(_))));
    assert!(matches!(build_solution(&surd, 0.1, -1.0), Err(CatalogError::Inadmissible(_))));
    let neg = family("T2R1").unwrap();
    assert!(build_solution(&neg, 0.1, 1.0).is_err());
    assert!(build_solution(&neg, 0.1, -1.0).is_ok());
    let root = family("T3R6").unwrap();
    assert!(build_solution(&root, 0.0, 0.0).is_err());
    assert!(build_solution(&root, -0.5, 1.0).is_err());
}

#[test]
fn template_matches_effective_case_form() {
    for f in list_families() {
        let (r, lambda) = match f.admissibility {
            Admissibility::PositiveRSurd => (1.2, 0.1),
            Admissibility::NegativeRSurd => (-1.2, 0.1),
            Admissibility::PositiveLambda => (1.0, 0.36),
        };
        let u = build_solution(&f, lambda, r).unwrap();
        for xi in [-2.9, -1.1, 0.37, 0.8, 2.3] {
            if !u.is_regular(xi, 1e-2) {
                continue;
            }
            let a = u.profile(xi);
            let b = u.effective_eval(xi).unwrap();
            assert!((a - b).abs() <= 1e-11 * (1.0 + a.abs()), "{} ξ={xi}: {a} vs {b}", f.id);
        }
    }
}

#[test]
fn pole_is_reported() {
    let u = build_solution(&family("T3R1").unwrap(), 0.1, 1.0).unwrap();
    // sec(√r ξ) = 1 at ξ = 0 makes the denominator vanish
    assert!(matches!(taylor_eval(&u, 0.0, 0.0), Err(CatalogError::Pole { .. })));
    assert!(!u.is_regular(0.0, 1e-3));
}

#[test]
fn constant_jet_has_zero_derivatives() {
    let j = Jet2::constant(0.7);
    for i in 0..=5 {
        for k in 0..=1 {
            if i + k > 0 {
                assert_eq!(j.derivative(i, k), 0.0);
            }
        }
    }
}

#[test]
fn sech_squared_curvature() {
    let x = Jet2::var_x(0.0);
    let s = x.cosh().recip();
    let u = s.clone() * s;
    assert_relative_eq!(u.derivative(2, 0), -2.0, epsilon = 1e-14);
    assert_relative_eq!(u.derivative(4, 0), 16.0, epsilon = 1e-12);
}

fn fd5(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + 3.0 * h) - 4.0 * f(x + 2.0 * h) + 5.0 * f(x + h) - 5.0 * f(x - h) + 4.0 * f(x - 2.0 * h) - f(x - 3.0 * h)) / (2.0 * h.powi(5));
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn fd1(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[test]
fn elementary_jets_match_finite_differences() {
    type F = (&'static str, fn(Jet2) -> Jet2, fn(f64) -> f64);
    let cases: [F; 8] = [
        ("sin", |j| j.sin(), f64::sin),
        ("cos", |j| j.cos(), f64::cos),
        ("sinh", |j| j.sinh(), f64::sinh),
        ("cosh", |j| j.cosh(), f64::cosh),
        ("recip", |j| (j + Jet2::constant(2.0)).recip(), |x| 1.0 / (x + 2.0)),
        ("sqrt", |j| (j + Jet2::constant(2.0)).sqrt(), |x| (x + 2.0).sqrt()),
        ("powf", |j| (j + Jet2::constant(2.0)).powf(0.25), |x| (x + 2.0).powf(0.25)),
        ("tanh", |j| j.sinh() / j.cosh(), f64::tanh),
    ];
    let x0 = 0.41;
    for (name, jf, ff) in cases {
        let j = jf(Jet2::var_x(x0));
        assert_relative_eq!(j.value(), ff(x0), max_relative = 1e-14);
        let d1 = fd1(&ff, x0, 1e-3);
        assert!((j.derivative(1, 0) - d1).abs() < 1e-9, "{name}: {} vs {d1}", j.derivative(1, 0));
        let d5 = fd5(&ff, x0, 0.02);
        assert!((j.derivative(5, 0) - d5).abs() < 1e-4 * (1.0 + d5.abs()), "{name}: {} vs {d5}", j.derivative(5, 0));
    }
}

#[test]
fn fifth_derivative_matches_richardson_on_table_four_row_six() {
    let u = build_solution(&family("T4R6").unwrap(), 1.0, 2.0).unwrap();
    let jet = taylor_eval(&u, 0.7, 0.3).unwrap();
    let (v, dx, dt) = fd_derivatives(&u, 0.7, 0.3, 2.5e-4);
    assert_relative_eq!(jet.value, v, max_relative = 1e-14);
    assert!((jet.dx[4] - dx[4]).abs() <= 1e-6 * jet.dx[4].abs(), "{} vs {}", jet.dx[4], dx[4]);
    for k in 0..4 {
        assert!((jet.dx[k] - dx[k]).abs() <= 1e-8 * (1.0 + jet.dx[k].abs()));
    }
    assert!((jet.dt - dt).abs() <= 1e-8 * (1.0 + jet.dt.abs()));
    // traveling wave: u_t = λ u_x
    assert_relative_eq!(jet.dt, jet.dx[0], max_relative = 1e-13);
}

#[test]
fn json_schema_fields() {
    let v: serde_json::Value = serde_json::to_value(family("T3R6").unwrap()).unwrap();
    for key in ["family_id", "table", "row", "e", "rho", "mu", "a1", "b1", "a0_formula", "u_template", "admissibility"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["family_id"], "T3R6");
    assert_eq!(v["a1"], "-1/2");
    assert_eq!(v["effective"]["case"], "III");
}

#[test]
fn latex_tables_have_every_row() {
    let tex = tables_latex();
    assert_eq!(tex.matches("\\begin{tabular}").count(), 4);
    for f in list_families() {
        assert!(tex.contains(&f.to_latex_row()));
    }
}

#[test]
fn header_conflicts_are_noted() {
    for id in ["T1R1", "T1R2", "T1R3", "T1R4", "T3R5", "T3R6"] {
        assert!(!family(id).unwrap().notes.is_empty(), "{id}");
    }
    for id in ["T3R1", "T4R1", "T4R6"] {
        assert!(family(id).unwrap().notes.is_empty(), "{id}");
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn jet_value_and_time_derivative(lambda in 0.05f64..2.0, x in -8.0f64..8.0, t in 0.0f64..1.0) {
            let u = build_solution(&family("T4R6").unwrap(), lambda, 2.0 * lambda.sqrt()).unwrap();
            let jet = taylor_eval(&u, x, t).unwrap();
            prop_assert!((jet.value - u.eval(x, t)).abs() <= 1e-13 * (1.0 + jet.value.abs()));
            // u depends on x + λt only
            prop_assert!((jet.dt - lambda * jet.dx[0]).abs() <= 1e-12 * (1.0 + jet.dt.abs()));
        }

        #[test]
        fn surd_roots_bracket_r_over_twelve(r in 0.2f64..3.0, frac in -2.0f64..0.99) {
            let lambda = frac * r * r / 4.0;
            let lo = family("T3R1").unwrap().a0_value(r, lambda);
            let hi = family("T3R2").unwrap().a0_value(r, lambda);
            prop_assert!(lo <= r / 12.0 + 1e-15 && r / 12.0 <= hi + 1e-15);
            prop_assert!((lo + hi - r / 6.0).abs() <= 1e-14 * r.max(1.0));
        }
    }
}
