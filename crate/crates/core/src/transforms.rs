//! Maps between rule-184 occupancies, annihilation configurations and height
//! profiles, and the parity test for the image of the first map.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BaConfig, Ca184Config, HeightProfile, Topology};

/// Why a trit configuration has no rule-184 preimage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LambdaWitness {
    /// Subsequent particles at the wrong distance parity.
    Pair {
        left: i64,
        right: i64,
        distance: i64,
        same_velocity: bool,
    },
    /// An empty odd ring: a checkerboard cannot close up.
    OddEmptyRing { size: usize },
}

impl fmt::Display for LambdaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaWitness::Pair {
                left,
                right,
                distance,
                same_velocity,
            } => write!(
                f,
                "particles at {left} and {right}: {} velocity at {} distance {distance}",
                if *same_velocity { "same" } else { "opposite" },
                if distance % 2 == 0 { "even" } else { "odd" },
            ),
            LambdaWitness::OddEmptyRing { size } => write!(f, "empty ring of odd size {size}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaVerdict {
    pub member: bool,
    pub witness: Option<LambdaWitness>,
}

/// `ζ(i) = 1 - η(i) - η(i+1)`: a hole pair is a right-mover, a particle pair
/// a left-mover, an alternating bond is empty.
pub fn ca_to_ba(eta: &Ca184Config) -> Result<BaConfig> {
    let c = eta.cells();
    let n = c.len();
    let bond = |a: u8, b: u8| 1 - a as i8 - b as i8;
    match eta.topology() {
        Topology::Ring { .. } => {
            let cells = (0..n).map(|i| bond(c[i], c[(i + 1) % n])).collect();
            BaConfig::new(eta.topology(), cells)
        }
        Topology::Open { lo, .. } => {
            if n < 2 {
                return Err(Error::WindowTooShort {
                    needed: 2,
                    found: n,
                });
            }
            let cells = c.windows(2).map(|w| bond(w[0], w[1])).collect();
            BaConfig::open(lo, cells)
        }
    }
}

/// Subsequent particles must sit at odd distance when they share a velocity
/// and at even distance otherwise. Rings include the wrap-around pair.
pub fn lambda_membership(zeta: &BaConfig) -> LambdaVerdict {
    let particles = zeta.particles();
    let mut pairs: Vec<((i64, i8), (i64, i8), i64)> = particles
        .windows(2)
        .map(|w| (w[0], w[1], w[1].0 - w[0].0))
        .collect();
    if let Topology::Ring { size } = zeta.topology() {
        match (particles.first(), particles.last()) {
            (Some(&first), Some(&last)) => {
                pairs.push((last, first, first.0 + size as i64 - last.0));
            }
            _ if size % 2 == 1 => {
                return LambdaVerdict {
                    member: false,
                    witness: Some(LambdaWitness::OddEmptyRing { size }),
                }
            }
            _ => {}
        }
    }
    for (a, b, d) in pairs {
        let same = a.1 == b.1;
        if (d % 2 == 1) != same {
            return LambdaVerdict {
                member: false,
                witness: Some(LambdaWitness::Pair {
                    left: a.0,
                    right: b.0,
                    distance: d,
                    same_velocity: same,
                }),
            };
        }
    }
    LambdaVerdict {
        member: true,
        witness: None,
    }
}

/// Inverse of [`ca_to_ba`] on its image. `anchor_bit` is the occupancy of
/// the first site; it only matters for the empty configuration, whose two
/// preimages are the checkerboards.
pub fn ba_to_ca(zeta: &BaConfig, anchor_bit: u8) -> Result<Ca184Config> {
    let verdict = lambda_membership(zeta);
    if let Some(w) = verdict.witness {
        return Err(Error::NotInLambda(w));
    }
    let z = zeta.cells();
    let n = z.len();
    let occupancy_of = |v: i8| if v == 1 { 0u8 } else { 1u8 };
    let ring = zeta.topology().is_ring();
    // Sites: n + 1 on a window, n on a ring.
    let sites = if ring { n } else { n + 1 };
    let mut eta = vec![0u8; sites];
    let start = z.iter().position(|&v| v != 0);
    match start {
        None => {
            for (i, e) in eta.iter_mut().enumerate() {
                *e = (anchor_bit & 1) ^ (i % 2) as u8;
            }
        }
        Some(s) => {
            let v = occupancy_of(z[s]);
            eta[s] = v;
            eta[(s + 1) % sites] = v;
            // Each bond fixes one site from its neighbor: an empty bond flips,
            // a particle bond repeats its pair value.
            let bond = |b: usize, known: u8| {
                if z[b] == 0 {
                    1 - known
                } else {
                    occupancy_of(z[b])
                }
            };
            if ring {
                for k in 1..n - 1 {
                    let b = (s + k) % n;
                    eta[(b + 1) % n] = bond(b, eta[b]);
                }
            } else {
                for b in s + 1..n {
                    eta[b + 1] = bond(b, eta[b]);
                }
                for b in (0..s).rev() {
                    eta[b] = bond(b, eta[b + 1]);
                }
            }
        }
    }
    let topology = match zeta.topology() {
        Topology::Ring { .. } => zeta.topology(),
        Topology::Open { lo, hi } => Topology::open(lo, hi + 1)?,
    };
    let out = Ca184Config::new(topology, eta)?;
    debug_assert_eq!(ca_to_ba(&out).as_ref(), Ok(zeta));
    Ok(out)
}

/// Height profile with `height(k) - height(k-1) = ζ(k)`; the first node
/// sits just left of the window and carries `base`.
pub fn ba_counting_profile(zeta: &BaConfig, base: i64) -> HeightProfile {
    HeightProfile::new(zeta.topology().lo() - 1, base, zeta.cells().to_vec())
        .expect("trits are valid steps")
}

/// Height profile with `height(k) - height(k-1) = -η(k)`.
pub fn ca_counting_profile(eta: &Ca184Config, base: i64) -> HeightProfile {
    let steps = eta.cells().iter().map(|&c| -(c as i8)).collect();
    HeightProfile::new(eta.topology().lo() - 1, base, steps).expect("valid steps")
}

/// Height profile with `height(k) - height(k-1) = 1 - 2η(k)`: the
/// drift-free counting profile that stays within distance 1 of the
/// annihilation profile of the transformed configuration.
pub fn ca_balanced_profile(eta: &Ca184Config, base: i64) -> HeightProfile {
    let steps = eta.cells().iter().map(|&c| 1 - 2 * c as i8).collect();
    HeightProfile::new(eta.topology().lo() - 1, base, steps).expect("valid steps")
}
