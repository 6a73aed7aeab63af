mod common;

use common::*;
use multiboost::analysis::{cohen_kappa, kappa, margins, similarity, training_error_bound};
use multiboost::boosters::{
    adaboost_discrete, adaboost_gradient_view, entropy_projection_update, mirror_descent_boost,
    optimal_alpha, poe_boost, pythagoras_printed_residual, pythagoras_three_point_residual, tilted,
    totally_corrective_update, z_of_alpha,
};
use multiboost::dynamics::{detect_trace_cycle, iterate_map, weight_map};
use multiboost::hypothesis::{correctness, weighted_error};
use multiboost::kernel_boost::{boost_regression, boosting_kernel, kernel_estimate, residual_norms, SmootherState};
use multiboost::learners::{oracle_best_hypothesis, train_stump, StumpGrid};
use multiboost::weights::{edge, Dichotomy, SIMPLEX_TOL};
use multiboost::{BoostConfig, BoostTrace, Ensemble, LearnerSpec, WeakHypothesis, WeightDistribution};
use nalgebra::DVector;
use proptest::prelude::*;
use rand::Rng;

fn on_simplex(w: &WeightDistribution) -> bool {
    w.as_slice().iter().all(|&x| x >= 0.0) && (w.as_slice().iter().sum::<f64>() - 1.0).abs() <= SIMPLEX_TOL
}

fn views(data: &multiboost::Dataset, rounds: usize) -> [BoostTrace; 4] {
    let cfg = BoostConfig::with_rounds(rounds);
    [
        adaboost_discrete(data, &cfg).unwrap().1,
        adaboost_gradient_view(data, &cfg).unwrap().1,
        mirror_descent_boost(data, &cfg).unwrap().trace,
        poe_boost(data, &cfg).unwrap().1,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stump_learner_matches_exhaustive_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_binary(&mut r, 50, 4);
        let w = random_weights(&mut r, data.len());
        let fast = WeakHypothesis::Stump(train_stump(&data, &w));
        let slow = oracle_best_hypothesis(&data, &w, &StumpGrid::new(&data).hypotheses()).unwrap();
        prop_assert_eq!(fast.key(), slow.key());
    }

    #[test]
    fn best_stump_beats_chance_and_edge_is_dual_to_error(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_binary(&mut r, 50, 4);
        let w = random_weights(&mut r, data.len());
        let h = WeakHypothesis::Stump(train_stump(&data, &w));
        let eps = weighted_error(&h, &data, &w).unwrap();
        prop_assert!(eps <= 0.5);
        let e = edge(&w, &correctness(&h, &data).unwrap()).unwrap();
        prop_assert!((e - (1.0 - 2.0 * eps)).abs() <= SIMPLEX_TOL);
    }

    #[test]
    fn views_coincide(seed in any::<u64>(), rounds in 1usize..=30) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 40, 3);
        let [disc, rest @ ..] = views(&data, rounds);
        for other in &rest {
            prop_assert_eq!(other.hypothesis_ids(), disc.hypothesis_ids());
            for (a, b) in disc.rounds.iter().zip(&other.rounds) {
                prop_assert!((a.alpha - b.alpha).abs() <= 1e-12);
                prop_assert!(a.w_after.sup_distance(&b.w_after) <= 1e-10);
            }
        }
        for rec in &disc.rounds {
            let eta = correctness(&rec.hypothesis, &data).unwrap();
            let p = entropy_projection_update(&rec.w_before, &eta).unwrap();
            prop_assert!(p.weights.sup_distance(&rec.w_after) <= 1e-12);
        }
    }

    #[test]
    fn updates_decorrelate_and_stay_on_simplex(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 40, 3);
        for tr in views(&data, 20) {
            for rec in &tr.rounds {
                let eta = correctness(&rec.hypothesis, &data).unwrap();
                prop_assert!(edge(&rec.w_after, &eta).unwrap().abs() <= 1e-12);
                prop_assert!(on_simplex(&rec.w_before) && on_simplex(&rec.w_after));
                prop_assert!((0.0..=1.0).contains(&rec.epsilon));
            }
        }
    }

    #[test]
    fn training_error_never_exceeds_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 40, 3);
        let (ens, tr) = adaboost_discrete(&data, &BoostConfig::with_rounds(30)).unwrap();
        let eps = tr.epsilons();
        for k in 1..=ens.len() {
            let err = ens.prefix(k).training_error(&data).unwrap();
            prop_assert!(err <= training_error_bound(&eps[..k]).unwrap());
        }
    }

    #[test]
    fn error_bound_is_multiplicative(
        a in prop::collection::vec(0.0f64..=1.0, 0..10),
        b in prop::collection::vec(0.0f64..=1.0, 0..10),
    ) {
        let joined: Vec<f64> = a.iter().chain(&b).copied().collect();
        let whole = training_error_bound(&joined).unwrap();
        let parts = training_error_bound(&a).unwrap() * training_error_bound(&b).unwrap();
        prop_assert!((whole - parts).abs() <= 1e-12 * whole.max(1e-300));
    }

    #[test]
    fn printed_pythagoras_holds_at_zero_and_optimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.random_range(2..=20);
        let w = random_weights(&mut r, m);
        let eta = random_dichotomy(&mut r, m);
        let star = entropy_projection_update(&w, &eta).unwrap();
        prop_assert!(pythagoras_printed_residual(&w, &eta, 0.0).unwrap().abs() <= 1e-9);
        prop_assert!(pythagoras_printed_residual(&w, &eta, star.alpha).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn three_point_identity_holds_on_hyperplane(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.random_range(2..=20);
        let w = random_weights(&mut r, m);
        let eta = random_dichotomy(&mut r, m);
        // any projection onto the same hyperplane lies on it
        let u = entropy_projection_update(&random_weights(&mut r, m), &eta).unwrap().weights;
        prop_assert!(pythagoras_three_point_residual(&u, &w, &eta).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn optimal_alpha_is_stationary(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.random_range(2..=30);
        let w = random_weights(&mut r, m);
        let eta = random_dichotomy(&mut r, m);
        let eps: f64 = w.as_slice().iter().zip(eta.as_slice()).filter(|(_, &e)| e < 0).map(|(x, _)| x).sum();
        let a = optimal_alpha(eps).unwrap();
        let h = 1e-5;
        let dz = (z_of_alpha(&w, &eta, a + h) - z_of_alpha(&w, &eta, a - h)) / (2.0 * h);
        prop_assert!(dz.abs() <= 1e-8, "Z'(alpha*) = {dz}");
    }

    #[test]
    fn boosted_regression_equals_kernel_estimate(seed in any::<u64>(), which in 0usize..3, t in 1usize..=10) {
        let mut r = rng(seed);
        let sigma2 = [0.1, 1.0, 10.0][which];
        let m = r.random_range(1..=8);
        let p = random_spd(&mut r, m, 0.05 * sigma2, 2.0 * sigma2);
        let y = DVector::from_fn(m, |_, _| r.random_range(-1.0..1.0));
        let st = SmootherState::new(p, sigma2).unwrap();
        let boosted = boost_regression(&y, &st, t).unwrap();
        let direct = kernel_estimate(&boosting_kernel(&st, t).unwrap(), sigma2, &y).unwrap();
        prop_assert!((&boosted[t - 1] - direct).amax() <= 1e-8);
        let norms = residual_norms(&y, &st, t).unwrap();
        prop_assert!(norms.windows(2).all(|n| n[1] <= n[0] + 1e-12));
    }

    #[test]
    fn cycle_detection_is_tolerance_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 12, 2);
        let (_, tr) = adaboost_discrete(&data, &BoostConfig::with_rounds(150)).unwrap();
        let tight = detect_trace_cycle(&tr, 1e-9);
        for loose in [1e-8, 1e-6, 1e-3] {
            let c = detect_trace_cycle(&tr, loose);
            if tight.entered {
                prop_assert!(c.entered);
                prop_assert!(c.entry_time <= tight.entry_time);
            }
        }
    }

    #[test]
    fn map_iteration_matches_trace(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 30, 3);
        let (_, tr) = adaboost_discrete(&data, &BoostConfig::with_rounds(20)).unwrap();
        let orbit = iterate_map(&WeightDistribution::uniform(data.len()), &data, &LearnerSpec::Stump, tr.len()).unwrap();
        for (a, b) in orbit.iter().zip(tr.orbit()) {
            prop_assert!(a.sup_distance(&b) <= 1e-14);
        }
    }

    #[test]
    fn map_keeps_interior(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_binary(&mut r, 30, 3);
        let w = random_weights(&mut r, data.len());
        let next = weight_map(&w, &data, &LearnerSpec::Stump).unwrap().weights;
        prop_assert!(next.is_interior());
        prop_assert!(on_simplex(&next));
    }

    #[test]
    fn map_is_continuous_inside_a_cell(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 30, 3);
        let w = random_weights(&mut r, data.len());
        let base = weight_map(&w, &data, &LearnerSpec::Stump).unwrap();
        let dir: Vec<f64> = (0..data.len()).map(|_| r.random_range(-1.0..1.0)).collect();
        let mean = dir.iter().sum::<f64>() / dir.len() as f64;
        let mut prev = f64::INFINITY;
        for k in 3..=8 {
            let scale = 10f64.powi(-k);
            let moved: Vec<f64> = w.as_slice().iter().zip(&dir).map(|(a, d)| a + scale * (d - mean) * a).collect();
            let moved = WeightDistribution::from_unnormalized(moved).unwrap();
            let step = weight_map(&moved, &data, &LearnerSpec::Stump).unwrap();
            if step.hypothesis.key() != base.hypothesis.key() {
                continue;
            }
            let gap = step.weights.sup_distance(&base.weights);
            prop_assert!(gap <= prev + 1e-15);
            prev = gap;
        }
        if prev.is_finite() {
            prop_assert!(prev <= 1e-5);
        }
    }

    #[test]
    fn similarity_symmetric_bounded_and_kappa_at_most_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let data = random_binary(&mut r, 40, 3);
        let hs = StumpGrid::new(&data).hypotheses();
        let a = &hs[r.random_range(0..hs.len())];
        let b = &hs[r.random_range(0..hs.len())];
        let s = similarity(a, b, &data).unwrap();
        prop_assert_eq!(s, similarity(b, a, &data).unwrap());
        prop_assert!((-1.0..=1.0).contains(&s));
        prop_assert!(kappa(a, b, &data).unwrap() <= 1.0);
    }

    #[test]
    fn cohen_kappa_at_most_one(labels in prop::collection::vec((0i32..4, 0i32..4), 1..60)) {
        let (a, b): (Vec<i32>, Vec<i32>) = labels.into_iter().unzip();
        prop_assert!(cohen_kappa(&a, &b).unwrap() <= 1.0 + 1e-15);
    }

    #[test]
    fn margins_are_scale_free(seed in any::<u64>(), c in 1e-3f64..1e3, p in prop::sample::select(vec![1.0, 2.0, f64::INFINITY])) {
        let mut r = rng(seed);
        let data = random_nonseparable(&mut r, 30, 3);
        let (ens, _) = adaboost_discrete(&data, &BoostConfig::with_rounds(10)).unwrap();
        let mut scaled = Ensemble::new(ens.rule().clone());
        for t in ens.terms() {
            scaled.push(c * t.alpha, t.hypothesis.clone()).unwrap();
        }
        let a = margins(&ens, &data, p).unwrap();
        let b = margins(&scaled, &data, p).unwrap();
        for (x, y) in a.margins.iter().zip(&b.margins) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
        if p == 1.0 {
            prop_assert!(a.margins.iter().all(|m| (-1.0 - 1e-12..=1.0 + 1e-12).contains(m)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn totally_corrective_matches_newton_projection(seed in any::<u64>()) {
        let mut r = rng(seed);
        // paired coordinates with opposite signs keep the uniform point feasible
        let pairs = r.random_range(2..=6);
        let k = r.random_range(1..=3);
        let etas: Vec<Dichotomy> = (0..k)
            .map(|_| {
                let s: Vec<i8> = (0..pairs).flat_map(|_| {
                    let v = if r.random_bool(0.5) { 1 } else { -1 };
                    [v, -v]
                }).collect();
                Dichotomy::new(s).unwrap()
            })
            .collect();
        let w = random_weights(&mut r, 2 * pairs);
        let tc = totally_corrective_update(&w, &etas).unwrap();
        let newton = kl_projection_newton(&w, &etas);
        prop_assert!(tc.weights.sup_distance(&newton) <= 1e-8, "gap {}", tc.weights.sup_distance(&newton));
        for e in &etas {
            prop_assert!(edge(&tc.weights, e).unwrap().abs() <= 1e-9);
        }
    }

    #[test]
    fn tilt_at_optimum_is_the_projection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = r.random_range(2..=20);
        let w = random_weights(&mut r, m);
        let eta = random_dichotomy(&mut r, m);
        let p = entropy_projection_update(&w, &eta).unwrap();
        prop_assert!(p.exact);
        prop_assert!(tilted(&w, &eta, p.alpha).unwrap().sup_distance(&p.weights) <= 1e-12);
    }
}
