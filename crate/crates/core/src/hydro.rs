//! Large-scale statistics: profile and pattern segmentation, plateau lengths
//! of the sliding minimum of a random walk, diffusive rescaling, and the
//! decay of local disorder under rule 184.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{min_filter, sliding_min, PackedRing};
use crate::error::{Error, Result};
use crate::init::InitKind;
use crate::lattice::{Ca184Config, HeightProfile, Topology};
use crate::rng::stream;
use crate::stats::{ks_distance, ks_two_sample, linear_fit, mean_se, StatReport};
use crate::transforms::{ba_counting_profile, ca_balanced_profile, ca_to_ba};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SegmentKind {
    Increasing,
    Decreasing,
    /// Flat, entered going down and left going up.
    Valley,
    /// Flat, entered going up and left going down.
    Plateau,
    /// Flat between two runs in the same direction.
    Shelf,
    /// Flat touching the edge of the valid range.
    Undetermined,
    ParticleDominated,
    HoleDominated,
    Duce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub start: i64,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SegmentReport {
    pub segments: Vec<Segment>,
}

impl SegmentReport {
    pub fn kinds(&self) -> Vec<SegmentKind> {
        self.segments.iter().map(|s| s.kind).collect()
    }

    pub fn total_length(&self) -> usize {
        self.segments.iter().map(|s| s.length).sum()
    }

    /// Lengths of flats of the given kind, including the zero-length ones
    /// where a run turns directly (`Plateau`: up then down; `Valley`: down
    /// then up).
    pub fn flat_lengths(&self, kind: SegmentKind) -> Vec<usize> {
        let (before, after) = match kind {
            SegmentKind::Plateau => (SegmentKind::Increasing, SegmentKind::Decreasing),
            SegmentKind::Valley => (SegmentKind::Decreasing, SegmentKind::Increasing),
            _ => return Vec::new(),
        };
        let s = &self.segments;
        let mut out: Vec<usize> = s
            .iter()
            .filter(|x| x.kind == kind)
            .map(|x| x.length)
            .collect();
        out.extend(
            s.windows(2)
                .filter(|w| w[0].kind == before && w[1].kind == after)
                .map(|_| 0),
        );
        out
    }
}

/// Segments a sequence of edge directions (`signs[j]` runs from node
/// `origin + j` to `origin + j + 1`).
pub fn segment_signs(origin: i64, signs: &[i8]) -> SegmentReport {
    let mut runs: Vec<(i8, i64, usize)> = Vec::new();
    for (j, &s) in signs.iter().enumerate() {
        match runs.last_mut() {
            Some((d, _, len)) if *d == s => *len += 1,
            _ => runs.push((s, origin + j as i64, 1)),
        }
    }
    let segments = runs
        .iter()
        .enumerate()
        .map(|(k, &(dir, start, length))| {
            let kind = match dir {
                1 => SegmentKind::Increasing,
                -1 => SegmentKind::Decreasing,
                _ => {
                    let prev = k.checked_sub(1).map(|i| runs[i].0);
                    let next = runs.get(k + 1).map(|r| r.0);
                    match (prev, next) {
                        (Some(-1), Some(1)) => SegmentKind::Valley,
                        (Some(1), Some(-1)) => SegmentKind::Plateau,
                        (Some(_), Some(_)) => SegmentKind::Shelf,
                        _ => SegmentKind::Undetermined,
                    }
                }
            };
            Segment {
                kind,
                start,
                length,
            }
        })
        .collect();
    SegmentReport { segments }
}

/// Maximal monotone and flat runs of a profile.
pub fn segment_profile(g: &HeightProfile) -> SegmentReport {
    segment_signs(g.origin(), g.steps())
}

/// Stripes of a rule-184 configuration, on bonds `(i, i+1)`: a jammed
/// stretch runs from a particle pair to the last particle pair before the
/// next hole pair, a free stretch likewise with hole pairs, and whatever lies
/// between is alternating.
pub fn segment_pattern(eta: &Ca184Config) -> Result<SegmentReport> {
    let eta = match eta.topology() {
        Topology::Ring { .. } => eta.window(0, eta.len() as i64)?,
        _ => eta.clone(),
    };
    let zeta = ca_to_ba(&eta)?;
    let lo = zeta.topology().lo();
    let hi = zeta.topology().hi();
    let particles = zeta.particles();
    let mut segments = Vec::new();
    let mut cursor = lo;
    let mut i = 0;
    while i < particles.len() {
        let v = particles[i].1;
        let mut j = i;
        while j + 1 < particles.len() && particles[j + 1].1 == v {
            j += 1;
        }
        let (a, b) = (particles[i].0, particles[j].0);
        if a > cursor {
            segments.push(Segment {
                kind: SegmentKind::Duce,
                start: cursor,
                length: (a - cursor) as usize,
            });
        }
        segments.push(Segment {
            kind: if v == -1 {
                SegmentKind::ParticleDominated
            } else {
                SegmentKind::HoleDominated
            },
            start: a,
            length: (b - a + 1) as usize,
        });
        cursor = b + 1;
        i = j + 1;
    }
    if cursor < hi {
        segments.push(Segment {
            kind: SegmentKind::Duce,
            start: cursor,
            length: (hi - cursor) as usize,
        });
    }
    Ok(SegmentReport { segments })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternStats {
    pub particle_dominated: usize,
    pub hole_dominated: usize,
    pub duce: usize,
    pub mean_particle_len: f64,
    pub mean_hole_len: f64,
    pub mean_duce_len: f64,
    /// Adjacent jammed/free stretches with no alternating stretch between.
    pub order_violations: usize,
}

pub fn pattern_stats(report: &SegmentReport) -> PatternStats {
    let of = |k: SegmentKind| -> Vec<f64> {
        report
            .segments
            .iter()
            .filter(|s| s.kind == k)
            .map(|s| s.length as f64)
            .collect()
    };
    let mean = |v: &[f64]| {
        if v.is_empty() {
            0.0
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let p = of(SegmentKind::ParticleDominated);
    let h = of(SegmentKind::HoleDominated);
    let d = of(SegmentKind::Duce);
    let dense = |k: SegmentKind| {
        matches!(
            k,
            SegmentKind::ParticleDominated | SegmentKind::HoleDominated
        )
    };
    let order_violations = report
        .segments
        .windows(2)
        .filter(|w| dense(w[0].kind) && dense(w[1].kind))
        .count();
    PatternStats {
        particle_dominated: p.len(),
        hole_dominated: h.len(),
        duce: d.len(),
        mean_particle_len: mean(&p),
        mean_hole_len: mean(&h),
        mean_duce_len: mean(&d),
        order_violations,
    }
}

/// Limit law of plateau length over window width.
pub fn plateau_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        2.0 * x.sqrt() / (1.0 + x)
    }
}

/// Random-walk profile length, in windows of width `2n`.
const PROFILE_WINDOWS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateauReport {
    pub n: usize,
    pub samples: usize,
    /// KS distance of plateau length / (2n) to `2√x/(1+x)`, with the
    /// sliding-minimum argmin made unique (leftmost) so that lattice ties do
    /// not merge neighboring flats.
    pub ks: f64,
    pub plateaus: usize,
    /// Same statistic on the plain sliding minimum, ties merged.
    pub ks_raw: f64,
    pub plateaus_raw: usize,
    /// Mean valley length / (2n), plain sliding minimum.
    pub valley_mean: f64,
    /// Fraction of valleys of length at most 1, plain sliding minimum.
    pub valley_short_fraction: f64,
    pub valleys: usize,
}

impl PlateauReport {
    pub fn stat(&self) -> StatReport {
        StatReport {
            name: format!("plateau_cdf_ks(n={})", self.n),
            estimate: self.ks,
            stderr: None,
            count: self.plateaus as u64,
            reference: Some(0.0),
        }
    }
}

/// Plateau lengths of `min_filter(f0, n)` for fair ±1 random-walk profiles
/// `f0`, against the closed-form limit CDF.
pub fn plateau_cdf_experiment(n: usize, samples: usize, seed: u64) -> Result<PlateauReport> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidArgument(
            "n and samples must be positive".into(),
        ));
    }
    let len = 2 * n * PROFILE_WINDOWS;
    let per_sample: Vec<(Vec<usize>, Vec<usize>, Vec<usize>)> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream(seed, s, "plateau");
            let mut h = Vec::with_capacity(len + 1);
            let mut cur = 0i64;
            h.push(cur);
            while h.len() <= len {
                let mut bits: u64 = rng.random();
                for _ in 0..64.min(len + 1 - h.len()) {
                    cur += if bits & 1 == 1 { 1 } else { -1 };
                    h.push(cur);
                    bits >>= 1;
                }
            }
            let raw = sliding_min(&h, n);
            let raw_signs: Vec<i8> = raw
                .windows(2)
                .map(|w| (w[1] - w[0]).signum() as i8)
                .collect();
            let raw_seg = segment_signs(0, &raw_signs);
            // Unique keys: equal heights ordered by position.
            let scale = h.len() as i64 + 1;
            let keyed: Vec<i64> = h
                .iter()
                .enumerate()
                .map(|(k, &v)| v * scale + k as i64)
                .collect();
            let tb = sliding_min(&keyed, n);
            let tb_signs: Vec<i8> = tb
                .windows(2)
                .map(|w| (w[1] - w[0]).signum() as i8)
                .collect();
            let tb_seg = segment_signs(0, &tb_signs);
            (
                tb_seg.flat_lengths(SegmentKind::Plateau),
                raw_seg.flat_lengths(SegmentKind::Plateau),
                raw_seg.flat_lengths(SegmentKind::Valley),
            )
        })
        .collect();
    let width = (2 * n) as f64;
    let scaled =
        |v: &mut dyn Iterator<Item = usize>| v.map(|l| l as f64 / width).collect::<Vec<f64>>();
    let tb: Vec<f64> = scaled(&mut per_sample.iter().flat_map(|p| p.0.iter().copied()));
    let raw: Vec<f64> = scaled(&mut per_sample.iter().flat_map(|p| p.1.iter().copied()));
    let valleys: Vec<usize> = per_sample
        .iter()
        .flat_map(|p| p.2.iter().copied())
        .collect();
    if tb.is_empty() || raw.is_empty() {
        return Err(Error::InsufficientData(
            "no plateaus; lengthen the profiles".into(),
        ));
    }
    let valley_mean =
        valleys.iter().map(|&l| l as f64 / width).sum::<f64>() / valleys.len().max(1) as f64;
    let valley_short =
        valleys.iter().filter(|&&l| l <= 1).count() as f64 / valleys.len().max(1) as f64;
    Ok(PlateauReport {
        n,
        samples,
        ks: ks_distance(&tb, plateau_cdf),
        plateaus: tb.len(),
        ks_raw: ks_distance(&raw, plateau_cdf),
        plateaus_raw: raw.len(),
        valley_mean,
        valley_short_fraction: valley_short,
        valleys: valleys.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RescalePoint {
    pub n: usize,
    pub probe: f64,
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RescaleReport {
    pub points: Vec<RescalePoint>,
    /// `(n_prev, n, probe, ks)` between the rescaled value laws at
    /// consecutive `n`.
    pub consecutive_ks: Vec<(usize, usize, f64, f64)>,
    /// For occupancy samplers: max over nodes and samples of
    /// `|M_n f - M_n g| / √n`, `f` the trit profile and `g` the balanced
    /// occupancy profile, both starting at 0.
    pub ca_gap: Vec<(usize, f64)>,
}

/// Rescaled sliding minimum `(g_n(n x) - g_n(0)) / √n` at the probe points
/// for each `n`, with a Cauchy-style comparison across consecutive `n`.
pub fn rescaling_experiment(
    kind: &InitKind,
    n_list: &[usize],
    probes: &[f64],
    samples: usize,
    seed: u64,
) -> Result<RescaleReport> {
    if n_list.is_empty() || probes.is_empty() || samples == 0 {
        return Err(Error::InvalidArgument("empty experiment".into()));
    }
    if !matches!(kind, InitKind::BernoulliBaPm | InitKind::BernoulliCa { .. }) {
        return Err(Error::InvalidArgument(
            "rescaling needs a fair ±1 or Bernoulli occupancy sampler".into(),
        ));
    }
    let reach = probes.iter().fold(0.0f64, |m, p| m.max(p.abs()));
    let mut points = Vec::new();
    let mut laws: Vec<Vec<Vec<f64>>> = Vec::new();
    let mut ca_gap = Vec::new();
    for &n in n_list {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let x = (reach * n as f64).ceil() as i64 + n as i64;
        let scale = (n as f64).sqrt();
        let per: Vec<Result<(Vec<f64>, f64)>> = (0..samples as u64)
            .into_par_iter()
            .map(|s| {
                let mut rng = stream(seed, s, &format!("rescale/{n}"));
                let (f, gap) = if kind.is_ca() {
                    let eta = kind.sample_ca(Topology::open(-x + 1, x + 2)?, &mut rng)?;
                    let zeta = ca_to_ba(&eta)?;
                    let f = ba_counting_profile(&zeta, 0);
                    let g = ca_balanced_profile(&eta, 0);
                    let mf = min_filter(&f, n)?.heights();
                    let mg = min_filter(&g, n)?.heights();
                    let gap = mf
                        .iter()
                        .zip(&mg)
                        .map(|(a, b)| (a - b).abs())
                        .max()
                        .unwrap_or(0);
                    (f, gap as f64 / scale)
                } else {
                    let zeta = kind.sample_ba(Topology::open(-x + 1, x + 1)?, &mut rng)?;
                    (ba_counting_profile(&zeta, 0), 0.0)
                };
                let g = min_filter(&f, n)?;
                let at0 = g.height(0).unwrap();
                let vals = probes
                    .iter()
                    .map(|p| {
                        let k = (p * n as f64).round() as i64;
                        (g.height(k).unwrap() - at0) as f64 / scale
                    })
                    .collect();
                Ok((vals, gap))
            })
            .collect();
        let mut by_probe = vec![Vec::with_capacity(samples); probes.len()];
        let mut gap_max: f64 = 0.0;
        for r in per {
            let (vals, gap) = r?;
            gap_max = gap_max.max(gap);
            for (i, v) in vals.into_iter().enumerate() {
                by_probe[i].push(v);
            }
        }
        for (i, &p) in probes.iter().enumerate() {
            let (mean, stderr) = mean_se(&by_probe[i]);
            points.push(RescalePoint {
                n,
                probe: p,
                mean,
                stderr,
            });
        }
        if kind.is_ca() {
            ca_gap.push((n, gap_max));
        }
        laws.push(by_probe);
    }
    let mut consecutive_ks = Vec::new();
    for w in 1..n_list.len() {
        for (i, &p) in probes.iter().enumerate() {
            consecutive_ks.push((
                n_list[w - 1],
                n_list[w],
                p,
                ks_two_sample(&laws[w - 1][i], &laws[w][i]),
            ));
        }
    }
    Ok(RescaleReport {
        points,
        consecutive_ks,
        ca_gap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub n: usize,
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub points: Vec<DecayPoint>,
    /// Least-squares slope of `log d_n` against `log n`, pooled over
    /// replicas.
    pub slope: f64,
    /// Standard error from the spread of per-replica slopes.
    pub slope_stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub replicas: usize,
    pub ring_size: usize,
    pub window: usize,
}

impl DecayReport {
    pub fn stat(&self) -> StatReport {
        StatReport {
            name: "decay_slope".into(),
            estimate: self.slope,
            stderr: Some(self.slope_stderr),
            count: self.replicas as u64,
            reference: Some(-0.5),
        }
    }
}

/// Fraction of positions `x` on the ring with some equal adjacent pair
/// among sites `x..=x+k`.
fn disorder_fraction(ring: &PackedRing, k: usize) -> f64 {
    let n = ring.size();
    if k == 1 {
        return ring.equal_neighbor_count() as f64 / n as f64;
    }
    let bits = ring.bits().to_bits();
    let eq: Vec<bool> = (0..n).map(|i| bits[i] == bits[(i + 1) % n]).collect();
    let mut hits = 0usize;
    let mut inside = eq[..k].iter().filter(|&&b| b).count();
    for x in 0..n {
        hits += (inside > 0) as usize;
        inside -= eq[x] as usize;
        inside += eq[(x + k) % n] as usize;
    }
    hits as f64 / n as f64
}

/// `d_n` per replica (outer) and per requested time (inner, in the order of
/// `n_list`), on rings started from `kind`.
pub fn decay_curve(
    kind: &InitKind,
    n_list: &[usize],
    ring_size: usize,
    replicas: usize,
    seed: u64,
    k: usize,
) -> Result<Vec<Vec<f64>>> {
    if k == 0 || k >= ring_size {
        return Err(Error::InvalidArgument(
            "window must be positive and shorter than the ring".into(),
        ));
    }
    let mut order: Vec<usize> = (0..n_list.len()).collect();
    order.sort_by_key(|&i| n_list[i]);
    let topology = Topology::ring(ring_size)?;
    (0..replicas as u64)
        .into_par_iter()
        .map(|r| {
            let eta = kind.sample_ca(topology, &mut stream(seed, r, "decay"))?;
            let mut ring = PackedRing::from_config(&eta)?;
            let mut scratch = ring.clone();
            let mut now = 0;
            let mut out = vec![0.0; n_list.len()];
            for &i in &order {
                ring.advance(n_list[i] - now, &mut scratch);
                now = n_list[i];
                out[i] = disorder_fraction(&ring, k);
            }
            Ok(out)
        })
        .collect()
}

/// Fits the power-law decay of `d_n` under fair-coin initial occupancy.
pub fn decay_rate_fit(
    n_list: &[usize],
    ring_size: usize,
    replicas: usize,
    seed: u64,
) -> Result<DecayReport> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 3 || ns[0] == 0 {
        return Err(Error::InsufficientData(
            "need at least three distinct positive times".into(),
        ));
    }
    if replicas < 2 {
        return Err(Error::InsufficientData("need at least two replicas".into()));
    }
    let curves = decay_curve(&InitKind::fair_ca(), &ns, ring_size, replicas, seed, 1)?;
    if curves.iter().flatten().any(|&d| d <= 0.0) {
        return Err(Error::InsufficientData(
            "disorder vanished; enlarge the ring".into(),
        ));
    }
    let lx: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let points: Vec<DecayPoint> = (0..ns.len())
        .map(|i| {
            let vals: Vec<f64> = curves.iter().map(|c| c[i]).collect();
            let (estimate, stderr) = mean_se(&vals);
            DecayPoint {
                n: ns[i],
                estimate,
                stderr,
            }
        })
        .collect();
    let pooled: Vec<f64> = points.iter().map(|p| p.estimate.ln()).collect();
    let (slope, _) = linear_fit(&lx, &pooled);
    let slopes: Vec<f64> = curves
        .iter()
        .map(|c| linear_fit(&lx, &c.iter().map(|d| d.ln()).collect::<Vec<_>>()).0)
        .collect();
    let (_, slope_stderr) = mean_se(&slopes);
    Ok(DecayReport {
        points,
        slope,
        slope_stderr,
        ci_low: slope - 1.96 * slope_stderr,
        ci_high: slope + 1.96 * slope_stderr,
        replicas,
        ring_size,
        window: 1,
    })
}
