//! Annihilation partners, survival and first-return probabilities, and
//! nearest-neighbor velocity statistics.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::evolve_ba;
use crate::error::{Error, Result};
use crate::init::{InitKind, InitSpec};
use crate::lattice::{BaConfig, Topology};
use crate::rng::{blocks, stream};
use crate::stats::StatReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub pos_plus: i64,
    pub pos_minus: i64,
    /// Annihilation time in half ticks; equals the initial distance.
    pub time2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MatchReport {
    /// Sorted by `pos_plus`.
    pub pairs: Vec<MatchedPair>,
    pub unmatched_plus: Vec<i64>,
    pub unmatched_minus: Vec<i64>,
}

impl MatchReport {
    /// Partner of the positive particle at `x`, if matched.
    pub fn partner_of_plus(&self, x: i64) -> Option<i64> {
        self.pairs
            .binary_search_by_key(&x, |p| p.pos_plus)
            .ok()
            .map(|i| self.pairs[i].pos_minus)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("pos_plus,pos_minus,time2\n");
        for p in &self.pairs {
            out.push_str(&format!("{},{},{}\n", p.pos_plus, p.pos_minus, p.time2));
        }
        out
    }
}

/// Bracket matching: a positive particle at `i` annihilates with the first
/// negative particle `j > i` at which the running sum of trits over
/// `(i, j]` reaches −1.
pub fn match_partners(zeta: &BaConfig) -> Result<MatchReport> {
    let particles = zeta.particles();
    let mut report = MatchReport::default();
    let mut stack: Vec<i64> = Vec::new();
    match zeta.topology() {
        Topology::Open { .. } => {
            for (x, v) in particles {
                if v == 1 {
                    stack.push(x);
                } else if let Some(p) = stack.pop() {
                    report.pairs.push(MatchedPair {
                        pos_plus: p,
                        pos_minus: x,
                        time2: x - p,
                    });
                } else {
                    report.unmatched_minus.push(x);
                }
            }
            report.unmatched_plus = stack;
        }
        Topology::Ring { size } => {
            let plus = zeta.count(1);
            let minus = zeta.count(-1);
            if plus != minus {
                return Err(Error::RingImbalance { plus, minus });
            }
            // Start the scan right after the lowest point of the running sum;
            // from there every prefix stays at or above its start.
            let mut sum = 0i64;
            let mut low = (0i64, 0usize);
            for (k, &(_, v)) in particles.iter().enumerate() {
                sum += v as i64;
                if sum < low.0 {
                    low = (sum, k + 1);
                }
            }
            let n = particles.len();
            for k in 0..n {
                let (x, v) = particles[(low.1 + k) % n];
                if v == 1 {
                    stack.push(x);
                } else {
                    let p = stack.pop().expect("balanced rotation");
                    report.pairs.push(MatchedPair {
                        pos_plus: p,
                        pos_minus: x,
                        time2: (x - p).rem_euclid(size as i64),
                    });
                }
            }
        }
    }
    report.pairs.sort_by_key(|p| p.pos_plus);
    Ok(report)
}

/// `u_{2n} = C(2n, n) / 4^n`, the return probability of a simple random
/// walk at time `2n`.
pub fn u2n_exact(n: u32) -> BigRational {
    let mut c = BigUint::one();
    for k in 1..=n as u64 {
        c = c * BigUint::from(n as u64 + k) / BigUint::from(k);
    }
    BigRational::new(BigInt::from(c), BigInt::one() << (2 * n as usize))
}

pub fn u2n_f64(n: u32) -> f64 {
    u2n_exact(n).to_f64().expect("finite")
}

const BLOCK: usize = 4096;
const MAX_REJECT_FACTOR: usize = 10_000;

/// Exact reference for the survival probability when the law has one.
fn survival_reference(kind: &InitKind, n: usize) -> Option<f64> {
    match kind {
        InitKind::BernoulliBaPm => Some(u2n_f64(n as u32)),
        InitKind::BernoulliCa { p } if *p == 0.5 && 2 * n < 24 => first_return_exact(n)
            .ok()
            .map(|(hits, count)| hits as f64 / count as f64),
        _ => None,
    }
}

/// Whether the particle at the window's origin is not annihilated strictly
/// before whole time `n`, i.e. its partner is at distance at least `2n`.
fn origin_survives(zeta: &BaConfig, n: usize) -> Option<bool> {
    let v = zeta.get(0)?;
    if v == 0 {
        return None;
    }
    let reach = 2 * n as i64 - 1;
    let mut sum = 0i64;
    for k in 1..=reach {
        // A negative particle looks left; mirror the scan.
        let x = if v == 1 { k } else { -k };
        sum += (zeta.get(x).expect("window covers the light cone") * v) as i64;
        if sum == -1 {
            return Some(false);
        }
    }
    Some(true)
}

/// Monte Carlo probability that the particle at the origin survives until
/// whole time `n`, given that there is one.
pub fn survival_probability(spec: &InitSpec, n: usize, samples: usize) -> Result<StatReport> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidArgument(
            "n and samples must be positive".into(),
        ));
    }
    spec.kind.validate()?;
    let reach = 2 * n as i64 - 1;
    let topology = Topology::open(-reach, reach + 1)?;
    let results: Vec<Result<(u64, u64)>> = blocks(samples, BLOCK)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(b, size)| {
            let mut rng = stream(spec.seed, b, "survival");
            let (mut hits, mut drawn) = (0u64, 0u64);
            let mut accepted = 0;
            while accepted < size {
                drawn += 1;
                if drawn as usize > MAX_REJECT_FACTOR * size {
                    return Err(Error::InsufficientData("no particle at the origin".into()));
                }
                let zeta = spec.kind.sample_ba(topology, &mut rng)?;
                if let Some(alive) = origin_survives(&zeta, n) {
                    accepted += 1;
                    hits += alive as u64;
                }
            }
            Ok((hits, accepted as u64))
        })
        .collect();
    let mut hits = 0;
    let mut count = 0;
    for r in results {
        let (h, c) = r?;
        hits += h;
        count += c;
    }
    Ok(StatReport::from_indicator(
        format!("survival(n={n})"),
        hits,
        count,
        survival_reference(&spec.kind, n),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FirstReturnMode {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

/// Whether `f(k) > 0` for `k = 1..2n-1`, where `f(k) = ζ(1) + ... + ζ(k)`
/// and `ζ(i) = 1 - η(i) - η(i+1)`; `None` when `ζ(1) != +1`.
fn positive_excursion(eta: impl Fn(usize) -> u8, n: usize) -> Option<bool> {
    let zeta = |i: usize| 1 - eta(i) as i64 - eta(i + 1) as i64;
    if zeta(1) != 1 {
        return None;
    }
    let mut f = 0;
    for k in 1..2 * n {
        f += zeta(k);
        if f <= 0 {
            return Some(false);
        }
    }
    Some(true)
}

/// Counts `(hits, conditioning windows)` over all `2^{2n+1}` occupancy
/// windows `η(0..=2n)`.
pub fn first_return_exact(n: usize) -> Result<(u64, u64)> {
    if n == 0 || 2 * n + 1 > 24 {
        return Err(Error::ExactTooLarge { n });
    }
    let bits = 2 * n + 1;
    let (hits, count) = (0u64..1 << bits)
        .into_par_iter()
        .map(|m| match positive_excursion(|i| ((m >> i) & 1) as u8, n) {
            Some(true) => (1u64, 1u64),
            Some(false) => (0, 1),
            None => (0, 0),
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((hits, count))
}

/// Probability that the counting profile of the transformed fair-coin
/// occupancy stays positive up to `2n - 1`, given it starts upward.
pub fn first_return_probability(n: usize, mode: FirstReturnMode) -> Result<StatReport> {
    let name = format!("first_return(n={n})");
    match mode {
        FirstReturnMode::Exact => {
            let (hits, count) = first_return_exact(n)?;
            Ok(StatReport::exact(name, hits as f64 / count as f64, count))
        }
        FirstReturnMode::MonteCarlo { samples, seed } => {
            if n == 0 || samples == 0 {
                return Err(Error::InvalidArgument(
                    "n and samples must be positive".into(),
                ));
            }
            let words = (2 * n + 1).div_ceil(64);
            let (hits, count) = blocks(samples, BLOCK)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|(b, size)| {
                    use rand::Rng;
                    let mut rng = stream(seed, b, "first-return");
                    let mut buf = vec![0u64; words];
                    let (mut hits, mut accepted) = (0u64, 0usize);
                    while accepted < size {
                        for w in buf.iter_mut() {
                            *w = rng.random();
                        }
                        let eta = |i: usize| ((buf[i / 64] >> (i % 64)) & 1) as u8;
                        if let Some(ok) = positive_excursion(eta, n) {
                            accepted += 1;
                            hits += ok as u64;
                        }
                    }
                    (hits, accepted as u64)
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
            let reference = first_return_exact(n).ok().map(|(h, c)| h as f64 / c as f64);
            Ok(StatReport::from_indicator(name, hits, count, reference))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborReport {
    pub n: usize,
    pub same_velocity: StatReport,
    pub opposite_velocity: StatReport,
    /// Samples discarded because no right neighbor was found in range.
    pub unresolved: u64,
}

/// Among particles present at whole time `n` under fair ±1 initial data,
/// the frequency that the nearest particle to the right moves the same way.
///
/// Each sample is an independent window conditioned, by rejection, on a
/// particle at the origin at time `n`.
pub fn neighbor_velocity_stats(n: usize, samples: usize, seed: u64) -> Result<NeighborReport> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidArgument(
            "n and samples must be positive".into(),
        ));
    }
    let reach = 32 + 16 * (n as f64).sqrt().ceil() as i64;
    let half = n as i64 + reach;
    let topology = Topology::open(-half, half + 1)?;
    let kind = InitKind::BernoulliBaPm;
    let per_block: Vec<Result<(u64, u64, u64)>> = blocks(samples, BLOCK / 4)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(b, size)| {
            let mut rng = stream(seed, b, "neighbor-velocity");
            let (mut same, mut accepted, mut unresolved) = (0u64, 0usize, 0u64);
            let mut drawn = 0usize;
            while accepted < size {
                drawn += 1;
                if drawn > MAX_REJECT_FACTOR * size {
                    return Err(Error::InsufficientData("no surviving particles".into()));
                }
                let zeta = kind.sample_ba(topology, &mut rng)?;
                let row = evolve_ba(&zeta, n)?.pop().unwrap();
                let v = row.get(0).unwrap();
                if v == 0 {
                    continue;
                }
                match (1..=reach).map(|x| row.get(x).unwrap()).find(|&w| w != 0) {
                    Some(w) => {
                        accepted += 1;
                        same += (w == v) as u64;
                    }
                    None => unresolved += 1,
                }
            }
            Ok((same, accepted as u64, unresolved))
        })
        .collect();
    let (mut same, mut count, mut unresolved) = (0, 0, 0);
    for r in per_block {
        let (s, c, u) = r?;
        same += s;
        count += c;
        unresolved += u;
    }
    let u = u2n_f64(n as u32);
    Ok(NeighborReport {
        n,
        same_velocity: StatReport::from_indicator(
            format!("same_velocity(n={n})"),
            same,
            count,
            Some(1.0 / (1.0 + u)),
        ),
        opposite_velocity: StatReport::from_indicator(
            format!("opposite_velocity(n={n})"),
            count - same,
            count,
            Some(u / (1.0 + u)),
        ),
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn pairs(v: Vec<i8>) -> Vec<(i64, i64, i64)> {
        match_partners(&BaConfig::open(0, v).unwrap())
            .unwrap()
            .pairs
            .iter()
            .map(|p| (p.pos_plus, p.pos_minus, p.time2))
            .collect()
    }

    #[test]
    fn matching_examples() {
        assert_eq!(pairs(vec![1, -1]), vec![(0, 1, 1)]);
        assert_eq!(pairs(vec![1, 1, -1, -1]), vec![(0, 3, 3), (1, 2, 1)]);
        let r = match_partners(&BaConfig::open(0, vec![-1, 1]).unwrap()).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.unmatched_minus, vec![0]);
        assert_eq!(r.unmatched_plus, vec![1]);
    }

    #[test]
    fn ring_matching_wraps() {
        let z = BaConfig::ring(vec![-1, 0, 1, 0, 0]).unwrap();
        let r = match_partners(&z).unwrap();
        assert_eq!(
            r.pairs,
            vec![MatchedPair {
                pos_plus: 2,
                pos_minus: 0,
                time2: 3
            }]
        );
        assert!(matches!(
            match_partners(&BaConfig::ring(vec![1, 0, 0]).unwrap()),
            Err(Error::RingImbalance { .. })
        ));
    }

    #[test]
    fn u2n_values() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(u2n_exact(1), r(1, 2));
        assert_eq!(u2n_exact(2), r(3, 8));
        assert_eq!(u2n_exact(3), r(5, 16));
        assert_eq!(u2n_exact(4), r(35, 128));
        assert_eq!(u2n_exact(8), r(12870, 65536));
        assert!(u2n_exact(40) < BigRational::from_f64(0.09).unwrap());
    }

    #[test]
    fn first_return_small_n() {
        assert_eq!(
            first_return_exact(1).unwrap().0,
            first_return_exact(1).unwrap().1
        );
        let (h, c) = first_return_exact(2).unwrap();
        assert_eq!(h * 4, c * 3);
        assert!(first_return_exact(12).is_err());
    }

    #[test]
    fn degenerate_survival() {
        let spec = InitSpec {
            kind: InitKind::BernoulliBa {
                p_plus: 1.0,
                p_minus: 0.0,
                p_zero: 0.0,
            },
            seed: 1,
        };
        let r = survival_probability(&spec, 5, 100).unwrap();
        assert_eq!(r.estimate, 1.0);
    }
}
