//! Ring relaxation, flux, and empirical invariance of cylinder statistics.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{ca184_step, evolve_ba, evolve_ca, PackedRing};
use crate::error::{Error, Result};
use crate::init::{InitKind, InitSpec};
use crate::lattice::{BaConfig, Ca184Config, Topology};
use crate::rng::stream;
use crate::stats::{mean_se, StatReport};
use crate::transforms::ca_to_ba;

/// Whether some positive particle is directly followed (cyclically on rings)
/// by a negative one.
pub fn has_converging_pair(zeta: &BaConfig) -> bool {
    let p = zeta.particles();
    if p.len() < 2 {
        return false;
    }
    let linear = p.windows(2).any(|w| w[0].1 == 1 && w[1].1 == -1);
    linear || (zeta.topology().is_ring() && p[p.len() - 1].1 == 1 && p[0].1 == -1)
}

/// Distances of consecutive particle pairs moving apart (a negative particle
/// directly followed by a positive one), open windows only.
pub fn diverging_gaps(zeta: &BaConfig) -> Vec<i64> {
    zeta.particles()
        .windows(2)
        .filter(|w| w[0].1 == -1 && w[1].1 == 1)
        .map(|w| w[1].0 - w[0].0)
        .collect()
}

/// Number of rule-184 steps until the ring's transform has no converging
/// pair left. Errors if that takes longer than `ceil(N/2)` steps.
pub fn ring_relaxation_time(eta: &Ca184Config) -> Result<usize> {
    let size = match eta.topology() {
        Topology::Ring { size } => size,
        _ => {
            return Err(Error::InvalidArgument(
                "relaxation time is defined on rings".into(),
            ))
        }
    };
    let bound = size.div_ceil(2);
    let mut row = eta.clone();
    for t in 0..=bound {
        if !has_converging_pair(&ca_to_ba(&row)?) {
            return Ok(t);
        }
        row = ca184_step(&row)?;
    }
    Err(Error::RelaxationBound { size, steps: bound })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxReport {
    pub density: f64,
    /// Density of the sampled ring.
    pub realized_density: f64,
    pub flux: f64,
    /// Same estimator for holes: sites emptied per step.
    pub hole_flux: f64,
    pub reference: f64,
    pub stderr: f64,
    pub burn_in: usize,
    pub steps: usize,
    pub ring_size: usize,
}

pub fn flux_reference(rho: f64) -> f64 {
    0.5 - (0.5 - rho).abs()
}

/// Mean number of particle arrivals per site and step, after a burn-in long
/// enough for the ring to reach its no-annihilation regime.
pub fn flux_estimate(
    spec: &InitSpec,
    ring_size: usize,
    burn_in: usize,
    measure_steps: usize,
) -> Result<FluxReport> {
    let density = match spec.kind {
        InitKind::BernoulliCa { p } => p,
        _ => {
            return Err(Error::InvalidArgument(
                "flux needs a Bernoulli occupancy sampler".into(),
            ))
        }
    };
    let required = ring_size.div_ceil(2);
    if burn_in < required {
        return Err(Error::BurnInTooShort { burn_in, required });
    }
    if measure_steps == 0 {
        return Err(Error::InvalidArgument(
            "measure_steps must be positive".into(),
        ));
    }
    let topology = Topology::ring(ring_size)?;
    let eta = spec
        .kind
        .sample_ca(topology, &mut stream(spec.seed, 0, "flux"))?;
    let mut ring = PackedRing::from_config(&eta)?;
    let mut scratch = ring.clone();
    ring.advance(burn_in, &mut scratch);
    let mut per_step = Vec::with_capacity(measure_steps);
    let mut holes = 0usize;
    for _ in 0..measure_steps {
        ring.step_into(&mut scratch);
        per_step.push(scratch.arrivals_since(&ring) as f64 / ring_size as f64);
        holes += scratch.departures_since(&ring);
        std::mem::swap(&mut ring, &mut scratch);
    }
    let (flux, stderr) = mean_se(&per_step);
    Ok(FluxReport {
        density,
        realized_density: eta.particle_count() as f64 / ring_size as f64,
        flux,
        hole_flux: holes as f64 / (ring_size * measure_steps) as f64,
        reference: flux_reference(density),
        stderr,
        burn_in,
        steps: measure_steps,
        ring_size,
    })
}

fn pattern_index(cells: &[i8], base: usize) -> usize {
    cells.iter().fold(0, |acc, &c| {
        acc * base + (c as i64 + if base == 3 { 1 } else { 0 }) as usize
    })
}

/// Total-variation distance between the empirical laws of `k`-cylinders at
/// the start and after `n_steps`, each averaged over two consecutive times
/// so that period-two states compare equal.
pub fn invariance_audit(
    spec: &InitSpec,
    n_steps: usize,
    samples: usize,
    k: usize,
) -> Result<StatReport> {
    if k == 0 || samples == 0 {
        return Err(Error::InvalidArgument(
            "k and samples must be positive".into(),
        ));
    }
    if k > 12 {
        return Err(Error::InvalidArgument(
            "cylinder width exceeds the supported window".into(),
        ));
    }
    spec.kind.validate()?;
    let is_ca = spec.kind.is_ca();
    let base: usize = if is_ca { 2 } else { 3 };
    let len = k + 2 * (n_steps + 1);
    let topology = Topology::open(0, len as i64)?;
    let lo = (n_steps + 1) as i64;
    let hi = lo + k as i64;
    let cells_at = |sample: u64| -> Result<[Vec<i8>; 4]> {
        let mut rng = stream(spec.seed, sample, "invariance");
        let times = [0, 1, n_steps, n_steps + 1];
        let rows: Vec<Vec<i8>> = if is_ca {
            let eta = spec.kind.sample_ca(topology, &mut rng)?;
            let rows = evolve_ca(&eta, n_steps + 1)?;
            times
                .iter()
                .map(|&t| (lo..hi).map(|x| rows[t].get(x).unwrap() as i8).collect())
                .collect()
        } else {
            let zeta = spec.kind.sample_ba(topology, &mut rng)?;
            let rows = evolve_ba(&zeta, n_steps + 1)?;
            times
                .iter()
                .map(|&t| (lo..hi).map(|x| rows[t].get(x).unwrap()).collect())
                .collect()
        };
        Ok([
            rows[0].clone(),
            rows[1].clone(),
            rows[2].clone(),
            rows[3].clone(),
        ])
    };
    let patterns = base.pow(k as u32);
    let counts: Result<(Vec<u64>, Vec<u64>)> = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let rows = cells_at(s)?;
            Ok([
                pattern_index(&rows[0], base),
                pattern_index(&rows[1], base),
                pattern_index(&rows[2], base),
                pattern_index(&rows[3], base),
            ])
        })
        .try_fold(
            || (vec![0u64; patterns], vec![0u64; patterns]),
            |(mut a, mut b), idx: Result<[usize; 4]>| {
                let idx = idx?;
                a[idx[0]] += 1;
                a[idx[1]] += 1;
                b[idx[2]] += 1;
                b[idx[3]] += 1;
                Ok((a, b))
            },
        )
        .try_reduce(
            || (vec![0u64; patterns], vec![0u64; patterns]),
            |(mut a, mut b), (c, d)| {
                a.iter_mut().zip(c).for_each(|(x, y)| *x += y);
                b.iter_mut().zip(d).for_each(|(x, y)| *x += y);
                Ok((a, b))
            },
        );
    let (a, b) = counts?;
    let total = 2.0 * samples as f64;
    let s = samples as f64;
    let (mut tv, mut se) = (0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        let p = *x as f64 / total;
        let q = *y as f64 / total;
        tv += (p - q).abs();
        se += (p * (1.0 - p) / s + q * (1.0 - q) / s).sqrt();
    }
    Ok(StatReport {
        name: format!("cylinder_tv(k={k},n={n_steps})"),
        estimate: tv / 2.0,
        stderr: Some(se / 2.0),
        count: samples as u64,
        reference: Some(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_relax_immediately() {
        let t = Topology::ring(10).unwrap();
        assert_eq!(
            ring_relaxation_time(&Ca184Config::checkerboard_odd(t)).unwrap(),
            0
        );
        assert_eq!(
            ring_relaxation_time(&Ca184Config::ring(vec![1; 7]).unwrap()).unwrap(),
            0
        );
        // One jam in free flow: 1100000 has a converging pair in its image.
        let eta = Ca184Config::ring(vec![1, 1, 0, 0, 0, 0, 0]).unwrap();
        assert!(ring_relaxation_time(&eta).unwrap() > 0);
    }

    #[test]
    fn converging_pairs() {
        assert!(has_converging_pair(
            &BaConfig::open(0, vec![1, 0, -1]).unwrap()
        ));
        assert!(!has_converging_pair(
            &BaConfig::open(0, vec![-1, 0, 1]).unwrap()
        ));
        assert!(has_converging_pair(
            &BaConfig::ring(vec![-1, 0, 1]).unwrap()
        ));
    }

    #[test]
    fn empty_ring_has_no_flux() {
        let spec = InitSpec {
            kind: InitKind::BernoulliCa { p: 0.0 },
            seed: 1,
        };
        let r = flux_estimate(&spec, 100, 50, 10).unwrap();
        assert_eq!(r.flux, 0.0);
        assert!(matches!(
            flux_estimate(&spec, 100, 49, 10),
            Err(Error::BurnInTooShort { .. })
        ));
    }

    #[test]
    fn vacuum_and_checkerboards_are_exactly_invariant() {
        let phi = InitSpec {
            kind: InitKind::BernoulliBa {
                p_plus: 0.0,
                p_minus: 0.0,
                p_zero: 1.0,
            },
            seed: 1,
        };
        assert_eq!(invariance_audit(&phi, 5, 50, 3).unwrap().estimate, 0.0);
        let mix = InitSpec {
            kind: InitKind::checkerboard_mixture(),
            seed: 2,
        };
        assert_eq!(invariance_audit(&mix, 7, 101, 4).unwrap().estimate, 0.0);
    }
}
