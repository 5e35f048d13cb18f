use igsmac_core::boundary::{
    next_activation, solve_boundary_point, solve_feasibility, sweep_region, tolerable_interference,
    user_params_from_c, ActivationKind, BoundaryPoint, Feasibility, RateProfile, Signaling, SolverOptions,
};
use igsmac_core::model::{pu_rate, su_rate_raw};
use igsmac_core::oracle::brute_boundary;
use igsmac_core::single_user::{self, q_of_c};
use igsmac_core::{CanonicalScenario, NoiseState, SingleUserProblem};
use proptest::prelude::*;

fn scenario(k: usize) -> impl Strategy<Value = CanonicalScenario> {
    (
        1.0f64..300.0,
        0.3f64..0.9,
        proptest::collection::vec(0.01f64..3.0, k),
        proptest::collection::vec(-1.0f64..2.0, k),
    )
        .prop_map(|(p, frac, gains, lb)| {
            let budgets = lb.iter().map(|x| 10f64.powf(*x)).collect();
            CanonicalScenario::new(p, gains, budgets, frac * (1.0 + p).log2()).unwrap()
        })
}

fn profile(k: usize) -> impl Strategy<Value = RateProfile> {
    proptest::collection::vec(0.0f64..1.0, k).prop_map(|w| {
        let s: f64 = w.iter().sum();
        if s <= 0.0 {
            return RateProfile::uniform(w.len());
        }
        let mut a: Vec<f64> = w.iter().map(|x| x / s).collect();
        let rest: f64 = a[1..].iter().sum();
        a[0] = 1.0 - rest;
        RateProfile::new(a).unwrap()
    })
}

fn check_point(pt: &BoundaryPoint, s: &CanonicalScenario) -> Result<(), TestCaseError> {
    let alpha = pt.profile.as_slice();
    for k in 0..s.users() {
        let x = pt.params[k];
        prop_assert!(x.power >= 0.0 && x.power <= s.budgets[k] * (1.0 + 1e-12), "user {k}: p = {}", x.power);
        prop_assert!((0.0..=1.0).contains(&x.circularity));
        if alpha[k] > 0.0 {
            prop_assert!(su_rate_raw(x.power, x.circularity) >= alpha[k] * pt.r - 1e-8, "user {k} rate short");
        }
    }
    prop_assert!(pu_rate(s, &pt.params).unwrap() >= s.pu_rate_target - 1e-8, "primary target violated");
    prop_assert!(pt.iterations <= s.users());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn two_user_invariants_and_nesting(s in scenario(2), prof in profile(2)) {
        let igs = solve_boundary_point(&prof, &s, &SolverOptions::default()).unwrap();
        let pgs = solve_boundary_point(&prof, &s, &SolverOptions::proper()).unwrap();
        check_point(&igs, &s)?;
        check_point(&pgs, &s)?;
        prop_assert!(pgs.r <= igs.r + 1e-9, "pgs {} > igs {}", pgs.r, igs.r);
        prop_assert!(pgs.params.iter().all(|x| x.circularity == 0.0));
        prop_assert_eq!(igs.igs_required, igs.aggregate_c > 1e-6);
    }

    #[test]
    fn three_user_invariants(s in scenario(3), prof in profile(3)) {
        let igs = solve_boundary_point(&prof, &s, &SolverOptions::default()).unwrap();
        let pgs = solve_boundary_point(&prof, &s, &SolverOptions::proper()).unwrap();
        check_point(&igs, &s)?;
        prop_assert!(pgs.r <= igs.r + 1e-9);
        prop_assert_eq!(igs.igs_required, igs.aggregate_c > 1e-6);
    }

    #[test]
    fn single_user_consistency(s in scenario(1)) {
        let pt = solve_boundary_point(&RateProfile::uniform(1), &s, &SolverOptions::default()).unwrap();
        let prob = SingleUserProblem::new(s.pu_snr, s.gains[0], s.budgets[0], s.pu_rate_target, NoiseState::PROPER).unwrap();
        let sol = single_user::solve(&prob).unwrap();
        prop_assert!((pt.r - sol.su_rate).abs() <= 2e-8, "{} vs {}", pt.r, sol.su_rate);
    }

    #[test]
    fn extreme_points_coincide_below_beta(s in scenario(2), user in 0usize..2) {
        prop_assume!(s.gains[user] < s.beta());
        let prof = RateProfile::extreme(2, user);
        let igs = solve_boundary_point(&prof, &s, &SolverOptions::default()).unwrap();
        let pgs = solve_boundary_point(&prof, &s, &SolverOptions::proper()).unwrap();
        prop_assert!((igs.r - pgs.r).abs() <= 1e-6);
        prop_assert!(!igs.igs_required);
    }

    #[test]
    fn tolerance_monotone_in_c(p in 1.0f64..300.0, frac in 0.2f64..0.9, p_i in 0.0f64..10.0, c_i in 0.0f64..=1.0) {
        let target = frac * (1.0 + p).log2();
        let noise = NoiseState::from_improper(p_i, c_i).unwrap();
        prop_assume!(tolerable_interference(0.0, noise, p, target).is_ok());
        let mut prev = 0.0;
        for i in 0..=100 {
            let t = tolerable_interference(i as f64 / 100.0, noise, p, target).unwrap();
            prop_assert!(t >= prev * (1.0 - 1e-12));
            prev = t;
        }
    }

    #[test]
    fn tolerance_independent_of_gain(p in 1.0f64..300.0, frac in 0.2f64..0.9, p_i in 0.0f64..10.0, c_i in 0.0f64..=1.0, c in 0.0f64..0.99) {
        let target = frac * (1.0 + p).log2();
        let noise = NoiseState::from_improper(p_i, c_i).unwrap();
        prop_assume!(tolerable_interference(0.0, noise, p, target).is_ok());
        let t = tolerable_interference(c, noise, p, target).unwrap();
        for a in [0.5, 1.0, 2.0] {
            let prob = SingleUserProblem::new(p, a, 1.0, target, noise).unwrap();
            let aq = a * q_of_c(&prob, c).unwrap();
            prop_assert!((aq - t).abs() <= 1e-10 * (1.0 + t));
        }
    }
}

#[test]
fn proper_reduction_of_tolerance() {
    let (p, target) = (100.0, 5.0);
    let t = tolerable_interference(0.0, NoiseState::PROPER, p, target).unwrap();
    let beta = 1.0 - p / (2f64.powf(2.0 * target) - 1.0);
    let c0 = 1.0 - (1.0 - beta) * (p + 2.0);
    assert!((t * t + 2.0 * beta * t + c0).abs() < 1e-9);
}

#[test]
fn split_is_tight_at_a_solved_point() {
    let s = CanonicalScenario::new(100.0, vec![1.5, 1.7], vec![3.0, 3.0], 5.0).unwrap();
    let prof = RateProfile::pair(0.5).unwrap();
    let pt = solve_boundary_point(&prof, &s, &SolverOptions { tol: 1e-13, ..Default::default() }).unwrap();
    assert!(pt.fixed.is_empty() && pt.saturated.is_empty());
    let c = pt.aggregate_c;
    let params = user_params_from_c(c, pt.r, &prof, &[0, 1], NoiseState::PROPER, &s).unwrap();
    let t = tolerable_interference(c, NoiseState::PROPER, s.pu_snr, s.pu_rate_target).unwrap();
    let i: f64 = params.iter().zip(&s.gains).map(|(x, a)| a * x.power).sum();
    let j: f64 = params.iter().zip(&s.gains).map(|(x, a)| a * x.power * x.circularity).sum();
    assert!((i - t).abs() <= 1e-8 * (1.0 + t), "{i} vs {t}");
    assert!((j - t * c).abs() <= 1e-8 * (1.0 + t), "{j} vs {}", t * c);
}

#[test]
fn activation_root_meets_budget() {
    let s = CanonicalScenario::new(100.0, vec![1.0, 1.0], vec![0.3, 2.0], 5.0).unwrap();
    let prof = RateProfile::uniform(2);
    let act = next_activation((0.0, 1.0), 0.7, &prof, &[0, 1], NoiseState::PROPER, &s).unwrap().unwrap();
    assert_eq!((act.user, act.kind), (0, ActivationKind::Power));
    assert!(act.matches_minus_one_rule && act.matches_plus_one_rule);
    let p = user_params_from_c(act.c, 0.7, &prof, &[0, 1], NoiseState::PROPER, &s).unwrap();
    assert!((p[0].power - 0.3).abs() <= 1e-8);
}

#[test]
fn rate_above_cap_is_infeasible() {
    let s = CanonicalScenario::new(100.0, vec![0.5, 0.5], vec![3.0, 3.0], 5.0).unwrap();
    let f = solve_feasibility(4.0 * 2.0 + 0.01, &RateProfile::uniform(2), &s, Signaling::Improper).unwrap();
    assert_eq!(f, Feasibility::Infeasible);
}

#[test]
fn sweep_of_two_gives_extreme_points() {
    let s = CanonicalScenario::new(100.0, vec![0.5, 1.5], vec![10.0, 10.0], 5.0).unwrap();
    let pts = sweep_region(&s, 2, Signaling::Improper).unwrap();
    assert_eq!(pts.len(), 2);
    assert_eq!(pts[0].profile.as_slice(), &[0.0, 1.0]);
    assert_eq!(pts[1].profile.as_slice(), &[1.0, 0.0]);
}

#[test]
fn three_users_against_grid() {
    let s = CanonicalScenario::new(80.0, vec![0.4, 1.2, 0.9], vec![4.0, 8.0, 2.0], 4.5).unwrap();
    for prof in [RateProfile::uniform(3), RateProfile::new(vec![0.2, 0.5, 0.3]).unwrap()] {
        let pt = solve_boundary_point(&prof, &s, &SolverOptions::default()).unwrap();
        let grid = brute_boundary(&prof, &s, 11).unwrap().unwrap().value;
        assert!(pt.r >= grid * 0.98, "solver {} grid {}", pt.r, grid);
    }
}
