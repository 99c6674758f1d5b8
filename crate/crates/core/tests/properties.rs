use ca184::annihilation::{
    first_return_exact, first_return_probability, match_partners, FirstReturnMode,
};
use ca184::dynamics::{
    ba_step, ca184_step, ca184_step_bitparallel, evolve_ca, min_filter, sg_step, sg_step_strict,
    sliding_min,
};
use ca184::hydro::{decay_curve, segment_pattern, segment_profile};
use ca184::measure::invariance_audit;
use ca184::phase::{
    ca_path, path_to_config, trace_window, validate_ca_path, validate_ca_path_alternating,
};
use ca184::rng::stream;
use ca184::transforms::{ba_to_ca, ca_to_ba, lambda_membership};
use ca184::{BaConfig, Ca184Config, HeightProfile, InitKind, InitSpec, SecondClassPath};
use proptest::prelude::*;
use rand::Rng;

fn bits(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, len)
}

fn trits(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<i8>> {
    prop::collection::vec(-1i8..=1, len)
}

fn phase_window() -> impl Strategy<Value = BaConfig> {
    (
        prop::collection::vec(0usize..6, 0..8),
        prop::collection::vec(0usize..6, 1..8),
        0usize..5,
        -20i64..20,
    )
        .prop_map(|(plus_gaps, minus_gaps, mid, lo)| {
            let mut cells = Vec::new();
            for g in plus_gaps {
                cells.push(1);
                cells.extend(std::iter::repeat_n(0, g));
            }
            cells.extend(std::iter::repeat_n(0, mid));
            for g in minus_gaps {
                cells.extend(std::iter::repeat_n(0, g));
                cells.push(-1);
            }
            BaConfig::open(lo, cells).unwrap()
        })
}

proptest! {
    #[test]
    fn kernels_agree_over_many_steps(cells in bits(3..400), steps in 1usize..20) {
        let mut a = Ca184Config::ring(cells).unwrap();
        let mut b = a.clone();
        for _ in 0..steps {
            a = ca184_step(&a).unwrap();
            b = ca184_step_bitparallel(&b).unwrap();
        }
        prop_assert_eq!(a, b);
    }

    #[test]
    fn open_kernels_agree(cells in bits(3..300), lo in -50i64..50) {
        let eta = Ca184Config::open(lo, cells).unwrap();
        prop_assert_eq!(ca184_step(&eta).unwrap(), ca184_step_bitparallel(&eta).unwrap());
    }

    #[test]
    fn ring_conserves_particles(cells in bits(3..200)) {
        let eta = Ca184Config::ring(cells).unwrap();
        prop_assert_eq!(ca184_step(&eta).unwrap().particle_count(), eta.particle_count());
    }

    #[test]
    fn ring_equivariance(cells in bits(3..120)) {
        let eta = Ca184Config::ring(cells).unwrap();
        let lhs = ca_to_ba(&ca184_step(&eta).unwrap()).unwrap();
        let rhs = ba_step(&ca_to_ba(&eta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transform_round_trip(cells in bits(2..100), lo in -30i64..30) {
        let eta = Ca184Config::open(lo, cells).unwrap();
        let zeta = ca_to_ba(&eta).unwrap();
        prop_assert!(lambda_membership(&zeta).member);
        prop_assert_eq!(ba_to_ca(&zeta, eta.cells()[0]).unwrap(), eta);
    }

    #[test]
    fn lambda_membership_matches_invertibility(cells in trits(1..40)) {
        let zeta = BaConfig::open(0, cells).unwrap();
        let member = lambda_membership(&zeta).member;
        let back = ba_to_ca(&zeta, 0).and_then(|eta| ca_to_ba(&eta));
        prop_assert_eq!(member, back.as_ref() == Ok(&zeta));
    }

    #[test]
    fn mirror_symmetry(cells in trits(3..60)) {
        let zeta = BaConfig::open(0, cells).unwrap();
        let lhs = ba_step(&zeta.negated_mirror()).unwrap();
        prop_assert_eq!(lhs, ba_step(&zeta).unwrap().negated_mirror());
    }

    #[test]
    fn ring_charge_is_conserved(cells in trits(3..80)) {
        let zeta = BaConfig::ring(cells).unwrap();
        let next = ba_step(&zeta).unwrap();
        let charge = |z: &BaConfig| z.count(1) as i64 - z.count(-1) as i64;
        prop_assert_eq!(charge(&next), charge(&zeta));
    }

    #[test]
    fn min_filter_commutes_with_constants(steps in trits(1..80), y in 0usize..10, c in -50i64..50) {
        let f = HeightProfile::new(0, 0, steps).unwrap();
        prop_assume!(f.node_count() > 2 * y);
        prop_assert_eq!(min_filter(&f.shifted(c), y).unwrap(), min_filter(&f, y).unwrap().shifted(c));
    }

    #[test]
    fn sliding_min_is_monotone(h in prop::collection::vec(-20i64..20, 1..60), bumps in prop::collection::vec(0i64..3, 60), y in 0usize..8) {
        prop_assume!(h.len() > 2 * y);
        let raised: Vec<i64> = h.iter().zip(&bumps).map(|(a, b)| a + b).collect();
        let (mf, mg) = (sliding_min(&h, y), sliding_min(&raised, y));
        prop_assert!(mf.iter().zip(&mg).all(|(a, b)| a <= b));
    }

    #[test]
    fn shape_identity_random(steps in trits(2..120)) {
        let f = HeightProfile::new(0, 0, steps).unwrap();
        let m = min_filter(&f, 1).unwrap().heights();
        let s = sg_step(&f).unwrap().heights();
        prop_assert!(m.iter().zip(&s).all(|(a, b)| a - b == m[0] - s[0]));
    }

    #[test]
    fn matching_is_nested(cells in trits(1..200)) {
        let report = match_partners(&BaConfig::open(0, cells).unwrap()).unwrap();
        for p in &report.pairs {
            prop_assert!(p.pos_plus < p.pos_minus);
            for q in &report.pairs {
                let crossing = p.pos_plus < q.pos_plus && q.pos_plus < p.pos_minus && p.pos_minus < q.pos_minus;
                prop_assert!(!crossing);
            }
        }
    }

    #[test]
    fn companion_formula_matches_matching(cells in prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..120)) {
        // Profile anchored at the particle: f(i) = 0, f(k+1) - f(k) = ζ(k);
        // the companion sits one before the first return to zero.
        let report = match_partners(&BaConfig::open(0, cells.clone()).unwrap()).unwrap();
        for (i, _) in cells.iter().enumerate().filter(|(_, &v)| v == 1) {
            let mut f = 0i64;
            let mut partner = None;
            for k in i..cells.len() {
                f += cells[k] as i64;
                if k > i && f == 0 {
                    partner = Some(k as i64);
                    break;
                }
            }
            prop_assert_eq!(report.partner_of_plus(i as i64), partner);
        }
    }

    #[test]
    fn phase_round_trip(zeta in phase_window(), horizon2 in 1usize..100) {
        let trace = trace_window(&zeta, horizon2).unwrap();
        let back = path_to_config(&trace.path, horizon2).unwrap();
        let lo = back.topology().lo();
        for (i, &c) in back.cells().iter().enumerate() {
            prop_assert_eq!(zeta.get(lo + i as i64).unwrap_or(0), c);
        }
    }

    #[test]
    fn phase_trace_shifts_with_window(zeta in phase_window(), horizon2 in 1usize..60, shift in -15i64..15) {
        let moved = BaConfig::open(zeta.topology().lo() + shift, zeta.cells().to_vec()).unwrap();
        let a = trace_window(&zeta, horizon2).unwrap();
        let b = trace_window(&moved, horizon2).unwrap();
        prop_assert_eq!(&a.path.steps2, &b.path.steps2);
        prop_assert_eq!(a.path.start_pos2 + 2 * shift, b.path.start_pos2);
    }

    #[test]
    fn pattern_segments_tile(cells in bits(2..200)) {
        let eta = Ca184Config::open(0, cells).unwrap();
        let report = segment_pattern(&eta).unwrap();
        prop_assert_eq!(report.total_length(), eta.len() - 1);
        let mut at = 0;
        for s in &report.segments {
            prop_assert_eq!(s.start, at);
            at += s.length as i64;
        }
    }

    #[test]
    fn profile_segments_tile(steps in trits(1..200)) {
        let g = HeightProfile::new(3, 0, steps).unwrap();
        let report = segment_profile(&g);
        prop_assert_eq!(report.total_length(), g.node_count() - 1);
    }

    #[test]
    fn text_formats_round_trip(cells in trits(1..50), lo in -20i64..20, bitcells in bits(3..50)) {
        let zeta = BaConfig::open(lo, cells.clone()).unwrap();
        prop_assert_eq!(zeta.to_string().parse::<BaConfig>().unwrap(), zeta);
        let eta = Ca184Config::ring(bitcells).unwrap();
        prop_assert_eq!(eta.to_string().parse::<Ca184Config>().unwrap(), eta);
        let f = HeightProfile::new(lo, 7, cells).unwrap();
        prop_assert_eq!(HeightProfile::from_csv(&f.to_csv()).unwrap(), f);
    }
}

#[test]
fn strict_reflection_is_not_shape_equivalent() {
    // A one-node dip between two plateaus: the weak-minimum rule lifts the
    // whole bottom, the strict one only isolated minima.
    let f = HeightProfile::from_heights(0, &[2, 1, 1, 2, 3]).unwrap();
    let m = min_filter(&f, 1).unwrap().heights();
    let weak = sg_step(&f).unwrap().heights();
    let strict = sg_step_strict(&f).unwrap().heights();
    assert!(m.iter().zip(&weak).all(|(a, b)| a - b == m[0] - weak[0]));
    assert!(m
        .iter()
        .zip(&strict)
        .any(|(a, b)| a - b != m[0] - strict[0]));
}

#[test]
fn ca_paths_satisfy_odd_runs_but_not_the_alternating_reading() {
    let mut rng = stream(31, 0, "ca-paths");
    let (mut traced, mut alternating_fails) = (0, 0);
    for _ in 0..3000 {
        let mut cells = Vec::new();
        for _ in 0..rng.random_range(1..6) {
            cells.push(1);
            cells.extend(std::iter::repeat_n(0, rng.random_range(1..4)));
        }
        for _ in 0..rng.random_range(1..6) {
            cells.extend(std::iter::repeat_n(1, rng.random_range(1..4)));
            cells.push(0);
        }
        let eta = Ca184Config::open(0, cells).unwrap();
        if let Ok(path) = ca_path(&eta, rng.random_range(2..40)) {
            traced += 1;
            assert!(validate_ca_path(&path).valid, "{path}");
            alternating_fails += !validate_ca_path_alternating(&path).valid as usize;
        }
    }
    assert!(traced > 1000);
    assert!(alternating_fails > 0);
}

#[test]
fn path_text_round_trip() {
    let p: SecondClassPath = "path:HALF:0:4:--++-".parse().unwrap();
    assert_eq!(p.to_string().parse::<SecondClassPath>().unwrap(), p);
    assert_eq!(p.positions2(), vec![4, 3, 2, 3, 4, 3]);
}

#[test]
fn first_return_monte_carlo_agrees_with_enumeration() {
    for n in 2..=6 {
        let r = first_return_probability(
            n,
            FirstReturnMode::MonteCarlo {
                samples: 200_000,
                seed: n as u64,
            },
        )
        .unwrap();
        assert!(r.z_score().unwrap() < 3.5, "{r:?}");
    }
    let (h, c) = first_return_exact(2).unwrap();
    assert_eq!(4 * h, 3 * c);
}

#[test]
fn initial_disorder_is_one_half() {
    let c = decay_curve(&InitKind::fair_ca(), &[0], 1 << 16, 16, 5, 1).unwrap();
    let vals: Vec<f64> = c.iter().map(|r| r[0]).collect();
    let (mean, se) = ca184::stats::mean_se(&vals);
    assert!((mean - 0.5).abs() < 3.0 * se + 1e-3, "{mean} ± {se}");
}

#[test]
fn positive_only_law_is_invariant() {
    let spec = InitSpec {
        kind: InitKind::BernoulliBa {
            p_plus: 0.3,
            p_minus: 0.0,
            p_zero: 0.7,
        },
        seed: 3,
    };
    let r = invariance_audit(&spec, 10, 20_000, 3).unwrap();
    assert!(r.z_score().unwrap() < 3.0, "{r:?}");
}

#[test]
fn streams_are_reproducible_and_unbiased() {
    let a: Vec<u64> = (0..8).map(|_| stream(9, 4, "x").random()).collect();
    assert!(a.windows(2).all(|w| w[0] == w[1]));
    assert_ne!(
        stream(9, 4, "x").random::<u64>(),
        stream(9, 5, "x").random::<u64>()
    );
    assert_ne!(
        stream(9, 4, "x").random::<u64>(),
        stream(9, 4, "y").random::<u64>()
    );

    // Two-bit patterns across the first draws of 4096 sibling streams.
    let mut counts = [0f64; 4];
    for r in 0..4096u64 {
        let v: u64 = stream(1, r, "pairs").random();
        for k in 0..32 {
            counts[((v >> (2 * k)) & 3) as usize] += 1.0;
        }
    }
    let expected = counts.iter().sum::<f64>() / 4.0;
    let chi2: f64 = counts
        .iter()
        .map(|c| (c - expected).powi(2) / expected)
        .sum();
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let p = 1.0 - ChiSquared::new(3.0).unwrap().cdf(chi2);
    assert!(p > 1e-4, "chi2 {chi2}, p {p}");
}

#[test]
fn rows_respect_the_light_cone() {
    let eta = Ca184Config::open(0, vec![1, 0, 1, 1, 0, 0, 1, 0, 1]).unwrap();
    let rows = evolve_ca(&eta, 4).unwrap();
    assert_eq!(rows[4].len(), 1);
    assert!(evolve_ca(&eta, 5).is_err());
}
