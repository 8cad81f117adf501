use levelcut::family::{
    compactness_conditions_report, equi_continuity_report, eventually_equi_left, left_modulus,
    random_family, right_modulus_at_zero, support_bound, RandomShape,
};
use levelcut::metrics::{
    d_infty_grid_lower_bound, d_infty_parametric, d_infty_sampled, level_distance_profile,
    DInfError,
};
use levelcut::{AlphaGrid, CutCurve1D, FuzzyBody2D, FuzzyNumber, Interval, SampledFuzzy1D};
use proptest::prelude::*;

fn shape(levels: usize) -> RandomShape<f64> {
    RandomShape {
        levels,
        ..RandomShape::default()
    }
}

fn triple(seed: u64, levels: [usize; 3]) -> Vec<SampledFuzzy1D<f64>> {
    levels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            random_family(seed.wrapping_add(i as u64 * 7919), 1, &shape(l))
                .unwrap()
                .remove(0)
        })
        .collect()
}

fn smooth_curve(a: f64, b: f64, p: f64) -> CutCurve1D<f64> {
    // lower a - (1-α)^p, upper b + (1-α)^p: nested, monotone, continuous
    CutCurve1D::new(
        move |t: f64| a - (1.0 - t).powf(p),
        move |t: f64| b + (1.0 - t).powf(p),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn metric_axioms(seed in any::<u64>(), l1 in 2usize..15, l2 in 2usize..15, l3 in 2usize..15) {
        let t = triple(seed, [l1, l2, l3]);
        let (u, v, w) = (&t[0], &t[1], &t[2]);
        let duv = d_infty_sampled(u, v);
        prop_assert!(duv >= 0.0);
        prop_assert_eq!(duv, d_infty_sampled(v, u));
        prop_assert_eq!(d_infty_sampled(u, u), 0.0);
        prop_assert!(duv <= d_infty_sampled(u, w) + d_infty_sampled(w, v) + 1e-12);
    }

    #[test]
    fn distinct_on_shared_grid_is_positive(seed in any::<u64>()) {
        let f = random_family::<f64>(seed, 2, &shape(7)).unwrap();
        if f[0] != f[1] {
            prop_assert!(d_infty_sampled(&f[0], &f[1]) > 0.0);
        }
    }

    #[test]
    fn nested_cuts(seed in any::<u64>(), a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let u = random_family::<f64>(seed, 1, &shape(9)).unwrap().remove(0);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(u.cut(lo).contains_interval(&u.cut(hi)));
    }

    #[test]
    fn nodes_return_samples(seed in any::<u64>()) {
        let u = random_family::<f64>(seed, 1, &shape(13)).unwrap().remove(0);
        for (i, &a) in u.grid().levels().iter().enumerate() {
            prop_assert_eq!(u.cut(a), Interval::new(u.lower()[i], u.upper()[i]).unwrap());
        }
    }

    #[test]
    fn membership_duality(seed in any::<u64>(), x in -2.5f64..2.5) {
        let u = random_family::<f64>(seed, 1, &shape(9)).unwrap().remove(0);
        let mu = u.membership_at(x);
        for &a in u.grid().levels().iter().filter(|&&a| a > 0.0) {
            prop_assert_eq!(u.cut(a).contains(x), mu >= a, "x = {}, alpha = {}, mu = {}", x, a, mu);
        }
    }

    #[test]
    fn level_distance_dominated(seed in any::<u64>()) {
        let t = triple(seed, [5, 8, 11]);
        let d = d_infty_sampled(&t[0], &t[1]);
        let grid = AlphaGrid::<f64>::uniform(257).unwrap();
        for row in level_distance_profile(&t[0], &t[1], &grid) {
            prop_assert!(row.h <= d + 1e-15);
        }
    }

    #[test]
    fn sampled_curve_within_enclosure(a in -1.0f64..1.0, b in 1.0f64..2.0, p in 0.5f64..3.0, q in 0.5f64..3.0, size in 2usize..40) {
        let (u, v) = (smooth_curve(a, b, p), smooth_curve(0.0, 1.0, q));
        let enc = d_infty_parametric(&u, &v, 1e-6, 60).unwrap();
        let grid = AlphaGrid::uniform(size).unwrap();
        let (su, sv) = (SampledFuzzy1D::sample(&u, &grid).unwrap(), SampledFuzzy1D::sample(&v, &grid).unwrap());
        prop_assert!(d_infty_sampled(&su, &sv) <= enc.upper + 1e-12);
    }

    #[test]
    fn grid_refinement_monotone(seed in any::<u64>(), p in 0.2f64..4.0, size in 2usize..60) {
        let u = smooth_curve(0.0, 1.0, p);
        let v = random_family::<f64>(seed, 1, &shape(6)).unwrap().remove(0);
        let coarse = AlphaGrid::uniform(size).unwrap();
        let fine = coarse.with_levels((0..size).map(|i| (i as f64 + 0.37) / size as f64));
        prop_assert!(d_infty_grid_lower_bound(&u, &v, &fine) >= d_infty_grid_lower_bound(&u, &v, &coarse));
    }

    #[test]
    fn enclosure_width_shrinks_with_depth(p in 0.3f64..3.0, q in 0.3f64..3.0, depth in 2u32..12) {
        let (u, v) = (smooth_curve(0.0, 1.0, p), smooth_curve(0.2, 0.9, q));
        let bracket = |d| match d_infty_parametric(&u, &v, 1e-15, d) {
            Ok(e) => e,
            Err(DInfError::DepthExceeded(e)) => e,
            Err(e) => panic!("{e:?}"),
        };
        let (shallow, deep) = (bracket(depth), bracket(depth + 3));
        prop_assert!(deep.width() <= shallow.width());
        prop_assert!(deep.upper <= shallow.upper && deep.lower >= shallow.lower);
    }

    #[test]
    fn modulus_monotone_in_delta(seed in any::<u64>(), alpha in 0.05f64..=1.0, d1 in 0.0f64..1.0, d2 in 0.0f64..1.0) {
        let fam = random_family::<f64>(seed, 5, &shape(8)).unwrap();
        let (small, large) = if d1 <= d2 { (d1 * alpha, d2 * alpha) } else { (d2 * alpha, d1 * alpha) };
        prop_assert!(left_modulus(&fam, alpha, small).unwrap() <= left_modulus(&fam, alpha, large).unwrap());
        prop_assert!(right_modulus_at_zero(&fam, small).unwrap() <= right_modulus_at_zero(&fam, large).unwrap());
    }

    #[test]
    fn subfamily_monotone(seed in any::<u64>(), split in 1usize..6, alpha in 0.1f64..=1.0, d in 0.0f64..1.0) {
        let fam = random_family::<f64>(seed, 6, &shape(8)).unwrap();
        let sub = &fam[..split];
        let delta = d * alpha;
        prop_assert!(left_modulus(sub, alpha, delta).unwrap() <= left_modulus(&fam, alpha, delta).unwrap());
        prop_assert!(support_bound(sub).unwrap().radius <= support_bound(&fam).unwrap().radius);
    }

    #[test]
    fn uniform_witness_is_eventual_witness(seed in any::<u64>(), count in 1usize..8) {
        let fam = random_family::<f64>(seed, count, &shape(6)).unwrap();
        let deltas: Vec<f64> = (2..=12).map(|k| 2f64.powi(-k)).collect();
        let alphas = [0.25, 0.5, 0.9, 1.0];
        let report = equi_continuity_report(&fam, &alphas, &deltas, 0.05).unwrap();
        for entry in &report.left {
            if let Some(delta) = entry.witness_delta {
                let w = eventually_equi_left(|k| fam[k - 1].clone(), entry.alpha, 0.05, count, &deltas)
                    .unwrap()
                    .expect("uniform witness implies eventual witness");
                prop_assert_eq!(w.k0, 1);
                prop_assert_eq!(w.delta, delta);
            }
        }
    }

    #[test]
    fn shared_conditions_identical(seed in any::<u64>()) {
        let fam = random_family::<f64>(seed, 4, &shape(6)).unwrap();
        let v = compactness_conditions_report(&fam).unwrap().condition_verdicts;
        prop_assert_eq!(&v.level_topology.conditions[1].condition, &v.supremum_metric.conditions[0].condition);
        prop_assert_eq!(&v.level_topology.conditions[2].condition, &v.supremum_metric.conditions[2].condition);
    }

    #[test]
    fn lift_matches_interval(seed in any::<u64>(), alpha in 0.0f64..=1.0) {
        let u = random_family::<f64>(seed, 1, &shape(7)).unwrap().remove(0);
        let body = FuzzyBody2D::lift(&u, 360).unwrap();
        let cut = u.cut(alpha);
        prop_assert_eq!(body.support_function_value(alpha, 0.0).unwrap(), cut.hi);
        prop_assert_eq!(body.support_function_value(alpha, std::f64::consts::PI).unwrap(), -cut.lo);
    }
}
