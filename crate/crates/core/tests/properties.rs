use proptest::prelude::*;
use stgr::exact::{candidate_alphas, decide, optimize, DEFAULT_BUDGET};
use stgr::format::{parse_graph_file, write_graph_file};
use stgr::generate::{random_connected, random_labeling, rng_from_seed};
use stgr::oracles::{brute_force_stretch, enumerate_feasible, enumerate_optimum, simple_path_durations};
use stgr::radius::{improved_bound, radius_label, BoundCertificate};
use stgr::temporal::{
    evaluate_stretch, reflect_labeling, rotate_labeling, worst_case_duration, DurationMatrix, Labeling,
};
use stgr::Graph;

fn instance(n: usize, p: f64, seed: u64, delta: u32) -> (Graph, Labeling) {
    let mut rng = rng_from_seed(seed);
    let g = random_connected(n, p, &mut rng);
    let lab = random_labeling(&g, delta, &mut rng);
    (g, lab)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distances_are_a_metric(n in 1usize..14, p in 0.0f64..0.5, seed in any::<u64>()) {
        let (g, _) = instance(n, p, seed, 1);
        let d = g.distance_matrix();
        for a in 0..n {
            prop_assert_eq!(d.get(a, a), 0);
            for b in 0..n {
                prop_assert_eq!(d.get(a, b), d.get(b, a));
                for c in 0..n {
                    prop_assert!(d.get(a, c) <= d.get(a, b) + d.get(b, c));
                }
            }
        }
        let m = d.metrics();
        prop_assert!(m.radius <= m.diameter && m.diameter <= 2 * m.radius);
    }

    #[test]
    fn layers_follow_edges(n in 1usize..14, p in 0.0f64..0.5, seed in any::<u64>()) {
        let (g, _) = instance(n, p, seed, 1);
        let lay = g.layering(0);
        for &(a, b) in g.edges() {
            prop_assert!(lay.layer[a].abs_diff(lay.layer[b]) <= 1);
        }
        prop_assert_eq!(lay.depth(), g.distance_matrix().metrics().eccentricity[0]);
    }

    #[test]
    fn files_round_trip(n in 1usize..10, p in 0.0f64..0.6, seed in any::<u64>(), delta in 1u32..9) {
        let (g, lab) = instance(n, p, seed, delta);
        let text = write_graph_file(&g, delta, Some(&lab), &["generated".into()]);
        let back = parse_graph_file(&text).unwrap();
        prop_assert_eq!(&back.graph, &g);
        prop_assert_eq!(back.labeling.as_ref(), Some(&lab));
        prop_assert_eq!(write_graph_file(&back.graph, delta, back.labeling.as_ref(), &["generated".into()]), text);
    }

    #[test]
    fn fastest_durations_match_simple_paths(n in 1usize..7, p in 0.0f64..0.6, seed in any::<u64>(), delta in 1u32..6) {
        let (g, lab) = instance(n, p, seed, delta);
        prop_assert_eq!(DurationMatrix::compute(&g, &lab).rows(), simple_path_durations(&g, &lab));
        prop_assert_eq!(evaluate_stretch(&g, &lab).stretch, brute_force_stretch(&g, &lab));
    }

    #[test]
    fn duration_upper_bound(n in 1usize..10, p in 0.0f64..0.5, seed in any::<u64>(), delta in 1u32..7) {
        let (g, lab) = instance(n, p, seed, delta);
        let d = g.distance_matrix();
        let dur = DurationMatrix::compute(&g, &lab);
        let constant = DurationMatrix::compute(&g, &Labeling::constant(&g, delta, 1));
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    prop_assert!(dur.get(a, b) >= u64::from(d.get(a, b)));
                    prop_assert!(dur.get(a, b) <= worst_case_duration(d.get(a, b), delta));
                    prop_assert_eq!(constant.get(a, b), worst_case_duration(d.get(a, b), delta));
                }
            }
        }
    }

    #[test]
    fn stretch_is_rotation_and_reflection_invariant(
        n in 1usize..9, p in 0.0f64..0.5, seed in any::<u64>(), delta in 1u32..7, shift in -10i64..10,
    ) {
        let (g, lab) = instance(n, p, seed, delta);
        let s = evaluate_stretch(&g, &lab).stretch;
        prop_assert_eq!(evaluate_stretch(&g, &rotate_labeling(&lab, shift)).stretch, s);
        prop_assert_eq!(evaluate_stretch(&g, &reflect_labeling(&lab)).stretch, s);
    }

    #[test]
    fn radius_labeling_meets_its_certificate(n in 1usize..16, p in 0.0f64..0.4, seed in any::<u64>(), delta in 1u32..9) {
        let (g, _) = instance(n, p, seed, delta);
        let m = g.distance_matrix().metrics();
        let root = m.first_center();
        let lab = radius_label(&g, delta, None).unwrap();
        let s = evaluate_stretch(&g, &lab).stretch;
        let cert = BoundCertificate::from_metrics(m.radius, m.diameter, delta);
        prop_assert!(s <= cert.overall_bound);
        prop_assert_eq!(cert.overall_bound, BoundCertificate::closed_form(m.radius, m.diameter, delta));
        if let Some(b) = improved_bound(&g, delta, root).unwrap() {
            prop_assert!(s <= b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decide_matches_enumeration(n in 2usize..6, p in 0.0f64..0.4, seed in any::<u64>(), delta in 1u32..4) {
        let (g, _) = instance(n, p, seed, delta);
        prop_assume!(g.m() <= 6);
        let diam = g.distance_matrix().diameter();
        let mut prev = false;
        for alpha in candidate_alphas(diam, delta) {
            let got = decide(&g, delta, alpha, DEFAULT_BUDGET).unwrap();
            prop_assert_eq!(got.is_some(), enumerate_feasible(&g, delta, alpha));
            if let Some(w) = &got {
                prop_assert!(evaluate_stretch(&g, w).stretch <= alpha);
            }
            // feasibility is monotone in α
            prop_assert!(!prev || got.is_some());
            prev = got.is_some();
        }
    }

    #[test]
    fn optimize_matches_enumeration(n in 2usize..6, p in 0.0f64..0.4, seed in any::<u64>(), delta in 1u32..4) {
        let (g, _) = instance(n, p, seed, delta);
        prop_assume!(g.m() <= 6);
        let opt = optimize(&g, delta, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(opt.alpha, enumerate_optimum(&g, delta));
        prop_assert_eq!(evaluate_stretch(&g, &opt.witness).stretch, opt.alpha);
    }
}
