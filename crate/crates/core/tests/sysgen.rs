use num_complex::Complex64;
use riccati_core::reduction::*;
use riccati_core::symkernel::*;
use riccati_core::sysgen::*;
use riccati_core::verify::{annihilation_check, m1_point};

fn cdg_system() -> AlgebraicSystem {
    generate_system(&reduce_to_ode(&KdV5Params::cdg()), 1).unwrap()
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

#[test]
fn cdg_m1_has_thirteen_groups_matching_reference() {
    let sys = cdg_system();
    assert_eq!(sys.len(), 13);
    let rep = check_structural_match(&sys, &ReferenceSystem::cdg_m1(), 20, 7);
    assert_eq!(rep.reference_count, 13);
    assert!(rep.sample_points >= 20);
    assert!(rep.all_matched);
    for m in &rep.matches {
        assert!(m.symbolically_confirmed, "{m:?}");
        match &m.kind {
            MatchKind::Exact { constant } | MatchKind::UpToUnit { constant, .. } => assert!(*constant != GaussianRational::from_int(0)),
            MatchKind::Unmatched => unreachable!(),
        }
    }
    // only equation 8 differs from its generated group, by a factor e
    let unit: Vec<_> = rep.matches.iter().filter(|m| matches!(m.kind, MatchKind::UpToUnit { .. })).collect();
    assert_eq!(unit.len(), 1);
    assert_eq!(unit[0].reference_index, 8);
    assert_eq!(unit[0].kind, MatchKind::UpToUnit { constant: GaussianRational::from_int(30), r_power: 0, e_power: 1 });
}

#[test]
fn top_groups_carry_expected_factors() {
    let sys = cdg_system();
    let g = by_group(&sys);
    let mu_rho = &poly("mu^2") + &poly("rho");
    let eq1 = &(&mu_rho.pow(2) * &poly("a1")) * &poly("e^7");
    let top = g[&(5, 1)];
    let ratio = top.leading_term().unwrap().1 / eq1.leading_term().unwrap().1;
    assert_eq!(*top, eq1.scale(&ratio));
    let eq2 = &(&mu_rho.pow(3) * &poly("b1")) * &poly("e^8");
    let q = g[&(6, 0)];
    let ratio = q.leading_term().unwrap().1 / eq2.leading_term().unwrap().1;
    assert_eq!(*q, eq2.scale(&ratio));
}

#[test]
fn equation_six_b1_free_part() {
    let sys = cdg_system();
    let eq6 = by_group(&sys)[&(1, 1)].substitute(Symbol::B1, &ParamPoly::zero());
    let want = &poly("180*a0^2*a1*e") + &poly("lambda*a1*e");
    // the group is a rational multiple of the reference; fix the scale on a0^2 a1 e
    let m = Monomial::one().with_exp(Symbol::A0, 2).with_exp(Symbol::A1, 1).with_exp(Symbol::E, 1);
    let lam = Monomial::one().with_exp(Symbol::A1, 1).with_exp(Symbol::Lambda, 1).with_exp(Symbol::E, 1);
    let coeff = |p: &ParamPoly, mono: &Monomial| p.terms().find(|(k, _)| *k == mono).map(|(_, c)| c.clone());
    let k = coeff(&eq6, &m).unwrap() / coeff(&want, &m).unwrap();
    assert_eq!(coeff(&eq6, &lam).unwrap(), &coeff(&want, &lam).unwrap() * &k);
}

#[test]
fn constant_branch_annihilates_identically() {
    let sys = cdg_system();
    for p in sys.polys() {
        let q = p.substitute(Symbol::A1, &ParamPoly::zero()).substitute(Symbol::B1, &ParamPoly::zero());
        assert!(q.is_zero(), "{p}");
    }
}

#[test]
fn corrupted_reference_is_reported() {
    let sys = cdg_system();
    let mut reference = ReferenceSystem::cdg_m1();
    let eq = &mut reference.equations[5];
    let (mono, coeff) = eq.poly.leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
    let flip = ParamPoly::term(&coeff * &GaussianRational::from_int(-2), mono);
    eq.poly = &eq.poly + &flip;
    let rep = check_structural_match(&sys, &reference, 20, 7);
    assert!(!rep.all_matched);
    let bad: Vec<_> = rep.matches.iter().filter(|m| m.kind == MatchKind::Unmatched).map(|m| m.reference_index).collect();
    assert_eq!(bad, vec![6]);
}

#[test]
fn reference_parser_rejects_malformed_input() {
    assert!(ReferenceSystem::parse("[1] x\na1\n").is_err());
    assert!(ReferenceSystem::parse("format-version: 2\n").is_err());
    assert!(ReferenceSystem::parse("format-version: 1\na1\n").is_err());
    assert!(ReferenceSystem::parse("format-version: 1\n[1] x\na1 +\n").is_err());
}

#[test]
fn generation_is_deterministic() {
    let a = cdg_system();
    let b = cdg_system();
    assert_eq!(a, b);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn groups_are_ordered_descending() {
    let sys = cdg_system();
    let keys: Vec<_> = sys.equations.iter().map(|e| (e.sigma_power, e.tau_power)).collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    assert_eq!(keys, sorted);
}

#[test]
fn eager_and_deferred_agree_after_involutions() {
    let ode = reduce_to_ode(&KdV5Params::cdg());
    let ans = Ansatz::new(1).unwrap();
    let d = substitute_ansatz_with(&ode, &ans, ReductionStrategy::Deferred).map_coefficients(|c| c.reduce_involutions());
    let e = substitute_ansatz_with(&ode, &ans, ReductionStrategy::Eager);
    assert_eq!(d.collect(), e.collect());
}

#[test]
fn balance_cdg() {
    let rep = balance_degrees(&reduce_to_ode(&KdV5Params::cdg()));
    assert_eq!(rep.admissible_m, vec![1, 2]);
    let exprs: Vec<_> = rep.leading_degrees.iter().map(|d| d.expression.as_str()).collect();
    for want in ["m+5", "2m+3", "3m+1"] {
        assert!(exprs.contains(&want), "{exprs:?}");
    }
    let q = rep.quoted_coincidences.iter().find(|c| c.condition.starts_with("3m+2")).unwrap();
    assert_eq!(q.unmatched_degrees, vec!["3m+2".to_string()]);
}

#[test]
fn balance_linear_is_empty() {
    let rep = balance_degrees(&reduce_to_ode(&KdV5Params::from_ints(1, 0, 0, 0).unwrap()));
    assert!(rep.admissible_m.is_empty());
}

#[test]
fn balance_without_cubic_term() {
    let rep = balance_degrees(&reduce_to_ode(&KdV5Params::from_ints(1, 30, 30, 0).unwrap()));
    // 2m+3 = m+5 at m = 2 generically; the degenerate regime adds m = 1
    let generic = rep.regimes.iter().find(|r| r.regime == DegreeRegime::Generic).unwrap();
    assert_eq!(generic.admissible_m, vec![2]);
    assert!(rep.admissible_m.contains(&2));
    assert!(rep.admissible_m.iter().all(|m| [1, 2].contains(m)));
}

#[test]
fn higher_m_systems_generate() {
    let ode = reduce_to_ode(&KdV5Params::cdg());
    let sys = generate_system(&ode, 2).unwrap();
    assert!(sys.len() > 13);
    assert!(sys.polys().all(|p| !p.is_zero()));
    assert_eq!(solve_m1(&sys, 1, -1).unwrap_err(), SolveError::OutOfScope(2));
    assert!(generate_system(&ode, 0).is_err());
}

fn quadratic_branches(rep: &SolveReport) -> Vec<&SolutionBranch> {
    rep.branches.iter().filter(|b| b.constraint(Symbol::A0).is_some()).collect()
}

#[test]
fn solver_reproduces_surd_branch() {
    let sys = cdg_system();
    let rep = solve_m1(&sys, 1, -1).unwrap();
    let quad = quadratic_branches(&rep);
    assert_eq!(quad.len(), 2);
    let target = poly("180*a0^2 - 30*r*a0 + r^2 + lambda").monic();
    for b in &quad {
        assert_eq!(b.value(Symbol::B1), Some(&ParamPoly::zero()));
        let mu = branch_mu(b).unwrap();
        assert!(mu == GaussianRational::from_int(1) || mu == GaussianRational::from_int(-1));
        let a1 = b.value(Symbol::A1).unwrap().as_constant().unwrap();
        assert_eq!(a1, &(-&mu) * &GaussianRational::from_frac(1, 2));
        assert_eq!(b.constraint(Symbol::A0).unwrap().monic(), target);
        assert!(b.certificate.iter().all(|c| c == "0"));
        for (r, lambda) in [(3.0, 1.0), (2.0, -1.0)] {
            let s = (5.0f64).sqrt() * (r * r - 4.0 * lambda as f64).sqrt();
            let mut roots = Vec::new();
            for root in 0..b.root_count() {
                let pt = b.instantiate(r, lambda, root, 0.0).unwrap();
                let rep = annihilation_check(&sys, &pt).unwrap();
                assert!(rep.max_rel < 1e-10, "{r} {lambda}: {}", rep.max_rel);
                roots.push(pt.get(Symbol::A0).unwrap().re);
            }
            roots.sort_by(f64::total_cmp);
            assert!((roots[0] - (5.0 * r - s) / 60.0).abs() < 1e-14);
            assert!((roots[1] - (5.0 * r + s) / 60.0).abs() < 1e-14);
        }
    }
}

#[test]
fn solver_branches_all_annihilate() {
    let sys = cdg_system();
    for (e, rho) in [(1, -1), (1, 1), (-1, -1), (-1, 1)] {
        let rep = solve_m1(&sys, e, rho).unwrap();
        assert!(!rep.branches.is_empty());
        assert!(rep.branches.iter().any(|b| b.constant_family));
        for b in &rep.branches {
            for (r, lambda) in [(3.0, 1.0), (2.0, -1.0), (0.7, 0.1), (1.3, -2.0), (5.0, 2.5)] {
                for root in 0..b.root_count() {
                    let pt = b.instantiate(r, lambda, root, 0.37).unwrap();
                    let a = annihilation_check(&sys, &pt).unwrap();
                    assert!(a.max_rel < 1e-10, "{} at ({r},{lambda}): {}", b.id, a.max_rel);
                }
            }
        }
    }
}

#[test]
fn linear_a1_branch_factorization() {
    // 2a1² + 3μe·a1 + μ² = (2a1 + μe)(a1 + μe): the second root gives a1 = −μe
    let sys = cdg_system();
    let rep = solve_m1(&sys, 1, -1).unwrap();
    let other: Vec<_> = rep
        .branches
        .iter()
        .filter(|b| !b.constant_family && b.constraint(Symbol::A0).is_none())
        .collect();
    assert_eq!(other.len(), 2);
    for b in other {
        let mu = branch_mu(b).unwrap();
        assert_eq!(b.value(Symbol::A1).unwrap().as_constant().unwrap(), -&mu);
        assert_eq!(b.value(Symbol::Lambda), Some(&poly("-r^2")));
        assert_eq!(b.value(Symbol::A0), Some(&poly("1/6*r")));
    }
}

#[test]
fn generic_mu_leaves_only_constants() {
    let sys = cdg_system();
    let rep = solve_m1(&sys, 1, -1).unwrap();
    let generic: Vec<_> = rep.branches.iter().filter(|b| b.assumptions[0].ends_with("!= 0")).collect();
    assert!(generic.iter().all(|b| b.constant_family));
    // μ = 0.3 is off the degenerate locus; a nonconstant guess must not annihilate
    let pt = m1_point(1.0, -1.0, c(0.3), 2.0, 0.5, 0.1, c(0.5), c(0.0));
    assert!(annihilation_check(&sys, &pt).unwrap().max_rel > 1e-3);
    let pt = m1_point(1.0, -1.0, c(0.3), 2.0, 0.5, 0.1, c(0.0), c(0.0));
    assert_eq!(annihilation_check(&sys, &pt).unwrap().max_abs, 0.0);
}

#[test]
fn refutations_carry_witnesses() {
    let rep = solve_m1(&cdg_system(), 1, -1).unwrap();
    assert!(!rep.refutations.is_empty());
    for r in &rep.refutations {
        assert!(!r.witness.is_zero(), "{r:?}");
        assert!(!r.assumptions.is_empty());
    }
    assert!(rep.refutations.iter().any(|r| r.reason.starts_with("no common root in a1")));
}

#[test]
fn solve_rejects_bad_signs() {
    let sys = cdg_system();
    assert!(matches!(solve_m1(&sys, 2, 1), Err(SolveError::NotASign("e", 2))));
    assert!(matches!(solve_m1(&sys, 1, 0), Err(SolveError::NotASign("rho", 0))));
}

#[test]
fn solver_is_deterministic() {
    let sys = cdg_system();
    let a = serde_json::to_string(&solve_m1(&sys, -1, 1).unwrap()).unwrap();
    let b = serde_json::to_string(&solve_m1(&sys, -1, 1).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn latex_lists_every_equation() {
    let sys = cdg_system();
    let tex = sys.to_latex();
    assert_eq!(tex.matches("= 0").count(), 13, "{tex}");
}
