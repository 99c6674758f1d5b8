//! Self-check suite: exhaustive identities and seeded Monte Carlo checks,
//! each named by the property it exercises.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annihilation::{
    first_return_exact, match_partners, neighbor_velocity_stats, survival_probability,
};
use crate::dynamics::{
    ba_half_step, ba_step, ca184_step, ca184_step_bitparallel, embed_doubled, evolve_ba,
    half_step_doubled, min_filter, restrict_whole, sg_step,
};
use crate::error::{Error, Result};
use crate::hydro::{
    decay_rate_fit, plateau_cdf_experiment, rescaling_experiment, segment_profile, SegmentKind,
};
use crate::init::{InitKind, InitSpec};
use crate::lattice::{BaConfig, Ca184Config, HeightProfile, Topology};
use crate::measure::{diverging_gaps, flux_estimate, invariance_audit, ring_relaxation_time};
use crate::phase::{ca_path, path_to_config, trace_window, validate_ca_path};
use crate::rng::{stream, StreamRng};
use crate::transforms::{
    ba_counting_profile, ba_to_ca, ca_balanced_profile, ca_to_ba, lambda_membership,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Stochastic,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Suite::Exact),
            "stochastic" => Ok(Suite::Stochastic),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

type CheckFn = fn(u64) -> Result<(bool, String)>;

const EXACT: &[(&str, CheckFn)] = &[
    ("rule-184-table", rule_table),
    ("bitparallel-kernel", bitparallel_kernel),
    ("ca-ba-equivariance", equivariance),
    ("lambda-image", lambda_image),
    ("half-step-composition", half_step_composition),
    ("checkerboard-swap", checkerboard_swap),
    ("sg-min-filter-shape", shape_identity),
    ("min-filter-semigroup", semigroup),
    ("profile-gap-bound", profile_gap_bound),
    ("diverging-gap", diverging_gap),
    ("matching-soundness", matching_soundness),
    ("first-return-enumeration", first_return_enumeration),
    ("phase-round-trip", phase_round_trip),
    ("ca-path-condition", ca_path_condition),
    ("ring-relaxation", ring_relaxation),
    ("segment-structure", segment_structure),
];

const STOCHASTIC: &[(&str, CheckFn)] = &[
    ("survival-u2n", survival_u2n),
    ("neighbor-velocity", neighbor_velocity),
    ("flux-curve", flux_curve),
    ("cylinder-invariance", cylinder_invariance),
    ("decay-rate", decay_rate),
    ("plateau-cdf", plateau_cdf_check),
    ("rescaling-cauchy", rescaling_cauchy),
];

fn entries(suite: Suite) -> Vec<(&'static str, CheckFn)> {
    match suite {
        Suite::Exact => EXACT.to_vec(),
        Suite::Stochastic => STOCHASTIC.to_vec(),
        Suite::All => EXACT.iter().chain(STOCHASTIC).copied().collect(),
    }
}

/// Names of the checks in a suite, in run order.
pub fn suite_listing(suite: Suite) -> Vec<&'static str> {
    entries(suite).into_iter().map(|e| e.0).collect()
}

pub fn run_check(name: &str, seed: u64) -> Result<CheckResult> {
    let (_, f) = entries(Suite::All)
        .into_iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown check {name:?}")))?;
    let start = Instant::now();
    let (passed, detail) = match f(seed) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Ok(CheckResult {
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let results = suite_listing(suite)
        .into_iter()
        .map(|name| run_check(name, seed).expect("listed check"))
        .collect();
    SuiteReport {
        suite,
        seed,
        results,
    }
}

fn bits_of(m: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((m >> i) & 1) as u8).collect()
}

fn trits_of(mut m: u64, len: usize) -> Vec<i8> {
    (0..len)
        .map(|_| {
            let t = (m % 3) as i8 - 1;
            m /= 3;
            t
        })
        .collect()
}

fn random_bits(rng: &mut StreamRng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random_range(0..2u8)).collect()
}

fn random_trits(rng: &mut StreamRng, len: usize) -> Vec<i8> {
    (0..len).map(|_| rng.random_range(-1..=1i8)).collect()
}

fn rule_table(_: u64) -> Result<(bool, String)> {
    let mut bad = 0;
    for idx in 0..8u8 {
        let cells = vec![idx >> 2 & 1, idx >> 1 & 1, idx & 1];
        let out = ca184_step(&Ca184Config::open(0, cells)?)?;
        bad += (out.cells()[0] != (184u8 >> idx) & 1) as usize;
    }
    Ok((
        bad == 0,
        format!("{bad} of 8 neighborhoods disagree with rule number 184"),
    ))
}

fn bitparallel_kernel(seed: u64) -> Result<(bool, String)> {
    let mut bad = 0usize;
    let mut rings = 0usize;
    for n in 3..=16 {
        for m in 0..1u64 << n {
            let eta = Ca184Config::ring(bits_of(m, n))?;
            bad += (ca184_step(&eta)? != ca184_step_bitparallel(&eta)?) as usize;
            rings += 1;
        }
    }
    let random = 10_000;
    bad += (0..random as u64)
        .into_par_iter()
        .map(|r| -> Result<usize> {
            let eta = Ca184Config::ring(random_bits(&mut stream(seed, r, "kernel"), 1 << 12))?;
            Ok((ca184_step(&eta)? != ca184_step_bitparallel(&eta)?) as usize)
        })
        .sum::<Result<usize>>()?;
    Ok((
        bad == 0,
        format!("{bad} mismatches over {} rings", rings + random),
    ))
}

fn equivariance_holds(eta: &Ca184Config) -> Result<bool> {
    Ok(ca_to_ba(&ca184_step(eta)?)? == ba_step(&ca_to_ba(eta)?)?)
}

fn equivariance(seed: u64) -> Result<(bool, String)> {
    let mut bad = 0;
    let mut count = 0;
    for len in 4..=12 {
        for m in 0..1u64 << len {
            bad += !equivariance_holds(&Ca184Config::open(0, bits_of(m, len))?)? as usize;
            count += 1;
        }
    }
    for n in 3..=10 {
        for m in 0..1u64 << n {
            let eta = Ca184Config::ring(bits_of(m, n))?;
            bad += !equivariance_holds(&eta)? as usize;
            count += 1;
        }
    }
    let mut rng = stream(seed, 0, "equivariance");
    for _ in 0..10_000 {
        let len = rng.random_range(4..200);
        bad += !equivariance_holds(&Ca184Config::open(
            rng.random_range(-50..50),
            random_bits(&mut rng, len),
        )?)? as usize;
        count += 1;
    }
    Ok((bad == 0, format!("{bad} failures over {count} windows")))
}

fn lambda_image(_: u64) -> Result<(bool, String)> {
    let mut bad = 0;
    for len in 2..=12 {
        for m in 0..1u64 << len {
            let eta = Ca184Config::open(0, bits_of(m, len))?;
            let zeta = ca_to_ba(&eta)?;
            bad += !lambda_membership(&zeta).member as usize;
            bad += (ba_to_ca(&zeta, eta.cells()[0])? != eta) as usize;
        }
    }
    // Every Λ window of length ≤ 8 is an image.
    for len in 1..=8 {
        for m in 0..3u64.pow(len as u32) {
            let zeta = BaConfig::open(0, trits_of(m, len))?;
            if lambda_membership(&zeta).member {
                bad += (ca_to_ba(&ba_to_ca(&zeta, 0)?)? != zeta) as usize;
            }
        }
    }
    Ok((bad == 0, format!("{bad} failures")))
}

fn half_step_composition(_: u64) -> Result<(bool, String)> {
    let mut bad = 0;
    for len in 3..=8 {
        for m in 0..3u64.pow(len as u32) {
            let zeta = BaConfig::open(0, trits_of(m, len))?;
            let twice = half_step_doubled(&ba_half_step(&embed_doubled(&zeta))?)?;
            bad += (restrict_whole(&twice)? != ba_step(&zeta)?) as usize;
        }
    }
    Ok((
        bad == 0,
        format!("{bad} windows where two half steps differ from a whole step"),
    ))
}

fn checkerboard_swap(_: u64) -> Result<(bool, String)> {
    let mut bad = 0;
    for n in (4..=64).step_by(2) {
        let t = Topology::ring(n)?;
        let (o, e) = (
            Ca184Config::checkerboard_odd(t),
            Ca184Config::checkerboard_even(t),
        );
        bad += (ca184_step(&o)? != e) as usize + (ca184_step(&e)? != o) as usize;
    }
    Ok((bad == 0, format!("{bad} failures")))
}

fn random_profile(rng: &mut StreamRng, len: usize) -> Result<HeightProfile> {
    HeightProfile::new(
        rng.random_range(-20..20),
        rng.random_range(-20..20),
        random_trits(rng, len),
    )
}

fn shape_identity(seed: u64) -> Result<(bool, String)> {
    let mut rng = stream(seed, 0, "shape");
    let mut bad = 0;
    for _ in 0..10_000 {
        let len = rng.random_range(3..80);
        let f = random_profile(&mut rng, len)?;
        let a = min_filter(&f, 1)?;
        let b = sg_step(&f)?;
        let diff: Vec<i64> = a
            .heights()
            .iter()
            .zip(b.heights())
            .map(|(x, y)| x - y)
            .collect();
        bad += (a.origin() != b.origin() || diff.iter().any(|&d| d != diff[0])) as usize;
    }
    Ok((
        bad == 0,
        format!("{bad} of 10000 profiles not shape-equivalent"),
    ))
}

fn semigroup(_: u64) -> Result<(bool, String)> {
    let mut bad = 0;
    let mut count = 0;
    for len in 1..=9 {
        for m in 0..3u64.pow(len as u32) {
            let f = HeightProfile::new(0, 0, trits_of(m, len))?;
            let mut g = f.clone();
            for n in 1..=len / 2 {
                g = min_filter(&g, 1)?;
                bad += (g != min_filter(&f, n)?) as usize;
                count += 1;
            }
        }
    }
    Ok((
        bad == 0,
        format!("{bad} failures over {count} (profile, n) pairs"),
    ))
}

fn profile_gap_bound(_: u64) -> Result<(bool, String)> {
    let mut worst = 0;
    for len in 2..=14 {
        for m in 0..1u64 << len {
            let eta = Ca184Config::open(0, bits_of(m, len))?;
            let f = ba_counting_profile(&ca_to_ba(&eta)?, 0).heights();
            let g = ca_balanced_profile(&eta, 0).heights();
            worst = f
                .iter()
                .zip(&g)
                .map(|(a, b)| (a - b).abs())
                .fold(worst, i64::max);
        }
    }
    Ok((worst <= 1, format!("max |f - g| = {worst}")))
}

fn diverging_gap(seed: u64) -> Result<(bool, String)> {
    let bad = (0..10_000u64)
        .into_par_iter()
        .map(|r| -> Result<usize> {
            let mut rng = stream(seed, r, "diverging");
            let len = rng.random_range(3..120);
            let zeta = BaConfig::open(0, random_trits(&mut rng, len))?;
            let rows = evolve_ba(&zeta, (len - 1) / 2)?;
            Ok(rows
                .iter()
                .enumerate()
                .map(|(m, row)| {
                    diverging_gaps(row)
                        .iter()
                        .filter(|&&d| d < 2 * m as i64 + 1)
                        .count()
                })
                .sum())
        })
        .sum::<Result<usize>>()?;
    Ok((bad == 0, format!("{bad} diverging pairs closer than 2m+1")))
}

/// Independent particle simulation on the doubled lattice: every particle
/// moves one half cell per half tick and a converging neighbor pair vanishes
/// when the two positions coincide. Returns `(initial position of the
/// positive particle, half tick)` per annihilation.
fn simulated_pairs(zeta: &BaConfig) -> Vec<(i64, i64)> {
    let mut alive: Vec<(i64, i8, i64)> = zeta
        .particles()
        .into_iter()
        .map(|(x, v)| (x, v, 2 * x))
        .collect();
    let mut out = Vec::new();
    let mut t2 = 0;
    while alive.windows(2).any(|w| w[0].1 == 1 && w[1].1 == -1) {
        t2 += 1;
        for p in alive.iter_mut() {
            p.2 += p.1 as i64;
        }
        let mut next = Vec::with_capacity(alive.len());
        let mut i = 0;
        while i < alive.len() {
            if i + 1 < alive.len()
                && alive[i].1 == 1
                && alive[i + 1].1 == -1
                && alive[i].2 == alive[i + 1].2
            {
                out.push((alive[i].0, t2));
                i += 2;
            } else {
                next.push(alive[i]);
                i += 1;
            }
        }
        alive = next;
    }
    out.sort_unstable();
    out
}

fn matching_agrees(zeta: &BaConfig) -> Result<bool> {
    let report = match_partners(zeta)?;
    let bracket: Vec<(i64, i64)> = report.pairs.iter().map(|p| (p.pos_plus, p.time2)).collect();
    let law = report
        .pairs
        .iter()
        .all(|p| p.time2 == p.pos_minus - p.pos_plus);
    Ok(law && bracket == simulated_pairs(zeta))
}

fn matching_soundness(seed: u64) -> Result<(bool, String)> {
    let exhaustive = 3u64.pow(10);
    let bad: usize = (0..exhaustive)
        .into_par_iter()
        .map(|m| -> Result<usize> {
            Ok(!matching_agrees(&BaConfig::open(0, trits_of(m, 10))?)? as usize)
        })
        .sum::<Result<usize>>()?;
    let random = (0..1000u64)
        .into_par_iter()
        .map(|r| -> Result<usize> {
            let zeta = BaConfig::open(0, random_trits(&mut stream(seed, r, "matching"), 1000))?;
            Ok(!matching_agrees(&zeta)? as usize)
        })
        .sum::<Result<usize>>()?;
    Ok((
        bad + random == 0,
        format!("{bad} of {exhaustive} exhaustive and {random} of 1000 random windows disagree"),
    ))
}

fn first_return_enumeration(_: u64) -> Result<(bool, String)> {
    // Oracle: transfer counts over (height, last occupancy bit).
    let mut bad = 0;
    for n in 1..=10usize {
        // ζ(1) = +1 forces η(1) = η(2) = 0; state is (height, last bit).
        let mut states = std::collections::HashMap::from([((1i64, 0u8), 1u64)]);
        for _ in 2..2 * n {
            let mut next = std::collections::HashMap::new();
            for (&(h, last), &c) in &states {
                for b in 0..2u8 {
                    let h2 = h + 1 - last as i64 - b as i64;
                    if h2 > 0 {
                        *next.entry((h2, b)).or_insert(0) += c;
                    }
                }
            }
            states = next;
        }
        let hits: u64 = states.values().sum();
        // η(0) never enters the event.
        let (h, c) = first_return_exact(n)?;
        bad += (h != hits * 2 || c != 1 << (2 * n - 1)) as usize;
    }
    Ok((
        bad == 0,
        format!("{bad} of 10 horizons disagree with the transfer count"),
    ))
}

fn random_phase_window(rng: &mut StreamRng) -> Result<BaConfig> {
    let plus = rng.random_range(0..8);
    let minus = rng.random_range(1..8);
    let mut cells = Vec::new();
    for _ in 0..plus {
        cells.push(1);
        cells.extend(std::iter::repeat_n(0, rng.random_range(0..6)));
    }
    cells.extend(std::iter::repeat_n(0, rng.random_range(0..6)));
    for _ in 0..minus {
        cells.extend(std::iter::repeat_n(0, rng.random_range(0..6)));
        cells.push(-1);
    }
    BaConfig::open(rng.random_range(-10..10), cells)
}

fn round_trip_holds(zeta: &BaConfig, horizon2: usize) -> Result<bool> {
    let trace = trace_window(zeta, horizon2)?;
    let rebuilt = path_to_config(&trace.path, horizon2)?;
    let lo = rebuilt.topology().lo();
    Ok(rebuilt
        .cells()
        .iter()
        .enumerate()
        .all(|(i, &c)| zeta.get(lo + i as i64).unwrap_or(0) == c))
}

fn phase_round_trip(seed: u64) -> Result<(bool, String)> {
    let mut rng = stream(seed, 0, "phase");
    let mut bad = 0;
    for _ in 0..1000 {
        let zeta = random_phase_window(&mut rng)?;
        let horizon2 = rng.random_range(1..80);
        bad += !round_trip_holds(&zeta, horizon2)? as usize;
    }
    Ok((bad == 0, format!("{bad} of 1000 windows not reproduced")))
}

fn ca_path_condition(seed: u64) -> Result<(bool, String)> {
    let mut rng = stream(seed, 0, "ca-path");
    let (mut bad, mut traced) = (0, 0);
    for _ in 0..2000 {
        let k = rng.random_range(1..6);
        let j = rng.random_range(1..6);
        let mut cells = Vec::new();
        // Free-flowing left block and jammed right block meet at one
        // interface, so the transform has a single boundary.
        for _ in 0..k {
            cells.push(1);
            cells.extend(std::iter::repeat_n(0, rng.random_range(1..4)));
        }
        for _ in 0..j {
            cells.extend(std::iter::repeat_n(1, rng.random_range(1..4)));
            cells.push(0);
        }
        let eta = Ca184Config::open(0, cells)?;
        match ca_path(&eta, rng.random_range(2..40)) {
            Ok(path) => {
                traced += 1;
                bad += !validate_ca_path(&path).valid as usize;
            }
            Err(Error::NotPhaseBoundary) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((
        bad == 0 && traced > 0,
        format!("{bad} of {traced} traced paths violate the odd-run condition"),
    ))
}

fn ring_relaxation(_: u64) -> Result<(bool, String)> {
    let mut worst = Vec::new();
    for n in 3..=16usize {
        let max = (0..1u64 << n)
            .into_par_iter()
            .map(|m| ring_relaxation_time(&Ca184Config::ring(bits_of(m, n))?))
            .try_reduce(|| 0, |a, b| Ok(a.max(b)));
        match max {
            Ok(t) => worst.push(format!("{n}:{t}")),
            Err(e) => return Ok((false, e.to_string())),
        }
    }
    Ok((
        true,
        format!("max relaxation time per size {}", worst.join(" ")),
    ))
}

fn segment_structure(seed: u64) -> Result<(bool, String)> {
    let mut rng = stream(seed, 0, "plateau-order");
    let mut bad = 0;
    for _ in 0..2000 {
        let len = rng.random_range(20..300);
        let steps: Vec<i8> = (0..len)
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        let f = HeightProfile::new(0, 0, steps)?;
        let g = min_filter(&f, rng.random_range(1..len / 2))?;
        let report = segment_profile(&g);
        // Exact tiling.
        let mut at = g.origin();
        for s in &report.segments {
            bad += (s.start != at) as usize;
            at += s.length as i64;
        }
        bad += (at != g.end() - 1) as usize;
        // Shifting the profile shifts the segments.
        let shift = rng.random_range(-9..10);
        let moved = HeightProfile::new(g.origin() + shift, g.base(), g.steps().to_vec())?;
        let starts: Vec<i64> = segment_profile(&moved)
            .segments
            .iter()
            .map(|s| s.start - shift)
            .collect();
        bad += (starts != report.segments.iter().map(|s| s.start).collect::<Vec<_>>()) as usize;
        // With shelves folded into the runs they interrupt, monotone runs
        // alternate and flats sit only at turns.
        let folded: Vec<SegmentKind> = report
            .kinds()
            .into_iter()
            .filter(|k| *k != SegmentKind::Shelf)
            .fold(Vec::new(), |mut v, k| {
                if v.last() != Some(&k) {
                    v.push(k);
                }
                v
            });
        let turn = |a: SegmentKind, b: SegmentKind, c: SegmentKind| match b {
            SegmentKind::Plateau => a == SegmentKind::Increasing && c == SegmentKind::Decreasing,
            SegmentKind::Valley => a == SegmentKind::Decreasing && c == SegmentKind::Increasing,
            SegmentKind::Increasing | SegmentKind::Decreasing => a != b && c != b,
            _ => true,
        };
        bad += folded.windows(3).any(|w| !turn(w[0], w[1], w[2])) as usize;
    }
    Ok((
        bad == 0,
        format!("{bad} segmentation failures over 2000 filtered walks"),
    ))
}

fn z_ok(z: Option<f64>) -> bool {
    z.is_some_and(|z| z <= 3.0)
}

fn survival_u2n(seed: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [1, 2, 4, 8, 16] {
        let spec = InitSpec {
            kind: InitKind::BernoulliBaPm,
            seed: seed.wrapping_add(n as u64),
        };
        let r = survival_probability(&spec, n, 200_000)?;
        ok &= z_ok(r.z_score());
        parts.push(format!(
            "n={n}: {:.5} vs {:.5}",
            r.estimate,
            r.reference.unwrap()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn neighbor_velocity(seed: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [1, 2, 4, 8] {
        let r = neighbor_velocity_stats(n, 100_000, seed.wrapping_add(n as u64))?;
        let s = &r.same_velocity;
        ok &= z_ok(s.z_score()) && r.unresolved == 0;
        parts.push(format!(
            "n={n}: {:.5} ± {:.5} vs {:.5}",
            s.estimate,
            s.stderr.unwrap(),
            s.reference.unwrap()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn flux_curve(seed: u64) -> Result<(bool, String)> {
    let ring = 100_000;
    let mut worst: f64 = 0.0;
    for i in 1..=9 {
        let rho = i as f64 / 10.0;
        let spec = InitSpec {
            kind: InitKind::BernoulliCa { p: rho },
            seed: seed.wrapping_add(i),
        };
        let r = flux_estimate(&spec, ring, ring / 2, 1000)?;
        worst = worst.max((r.flux - r.reference).abs());
    }
    Ok((
        worst <= 0.01,
        format!("max |flux - reference| = {worst:.5}"),
    ))
}

fn cylinder_invariance(seed: u64) -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    let cases = [
        ("mixture", InitKind::checkerboard_mixture(), true),
        (
            "vacuum",
            InitKind::BernoulliBa {
                p_plus: 0.0,
                p_minus: 0.0,
                p_zero: 1.0,
            },
            true,
        ),
        (
            "all-positive",
            InitKind::BernoulliBa {
                p_plus: 0.3,
                p_minus: 0.0,
                p_zero: 0.7,
            },
            true,
        ),
        ("fair-occupancy", InitKind::fair_ca(), false),
    ];
    for (name, kind, invariant) in cases {
        let r = invariance_audit(&InitSpec { kind, seed }, 10, 20_000, 3)?;
        let se = r.stderr.unwrap();
        let flagged = r.estimate > 3.0 * se.max(1e-12);
        ok &= flagged != invariant;
        parts.push(format!("{name}: tv {:.4} (se {:.4})", r.estimate, se));
    }
    Ok((ok, parts.join("; ")))
}

fn decay_rate(seed: u64) -> Result<(bool, String)> {
    let ns: Vec<usize> = (4..=12).map(|e| 1 << e).collect();
    let r = decay_rate_fit(&ns, 1 << 20, 8, seed)?;
    Ok((
        (r.slope + 0.5).abs() <= 0.05,
        format!("slope {:.4} ± {:.4}", r.slope, r.slope_stderr),
    ))
}

fn plateau_cdf_check(seed: u64) -> Result<(bool, String)> {
    let r = plateau_cdf_experiment(1000, 1000, seed)?;
    Ok((
        r.ks <= 0.05,
        format!(
            "ks {:.4} over {} plateaus (ties merged: {:.4})",
            r.ks, r.plateaus, r.ks_raw
        ),
    ))
}

fn rescaling_cauchy(seed: u64) -> Result<(bool, String)> {
    let ns = [64, 256, 1024];
    let probes = [-1.0, 0.5, 2.0];
    let samples = 4000;
    // Two-sample KS critical value at the 0.1% level.
    let critical = 1.95 * (2.0 / samples as f64).sqrt();
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in [InitKind::fair_pm(), InitKind::fair_ca()] {
        let r = rescaling_experiment(&kind, &ns, &probes, samples, seed)?;
        let last = r
            .consecutive_ks
            .iter()
            .filter(|c| c.1 == ns[2])
            .fold(0.0f64, |m, c| m.max(c.3));
        ok &= last <= critical;
        for &(n, gap) in &r.ca_gap {
            ok &= gap <= 1.0 / (n as f64).sqrt() + 1e-12;
        }
        parts.push(format!(
            "{}: ks({}, {}) {:.4}",
            if kind.is_ca() { "occupancy" } else { "trit" },
            ns[1],
            ns[2],
            last
        ));
    }
    Ok((ok, parts.join("; ")))
}
