use crate::error::{Error, Result};
use crate::lattice::{BaConfig, Topology};

/// Whole-step annihilation rule at a site with neighborhood `(l, c, r)`.
pub fn ba_rule(l: i8, c: i8, r: i8) -> i8 {
    let blocked_plus = c == -1 || (c == 0 && r == -1);
    let blocked_minus = c == 1 || (c == 0 && l == 1);
    if l == 1 && !blocked_plus {
        1
    } else if r == -1 && !blocked_minus {
        -1
    } else {
        0
    }
}

pub fn ba_step(zeta: &BaConfig) -> Result<BaConfig> {
    let c = zeta.cells();
    let n = c.len();
    match zeta.topology() {
        Topology::Ring { .. } => {
            let out = (0..n)
                .map(|i| ba_rule(c[(i + n - 1) % n], c[i], c[(i + 1) % n]))
                .collect();
            BaConfig::new(zeta.topology(), out)
        }
        Topology::Open { .. } => {
            if n < 3 {
                return Err(Error::WindowTooShort {
                    needed: 3,
                    found: n,
                });
            }
            let out = c.windows(3).map(|w| ba_rule(w[0], w[1], w[2])).collect();
            BaConfig::new(zeta.topology().trimmed(1)?, out)
        }
    }
}

/// Half-step rule on the doubled lattice: a particle advances half a cell
/// unless it meets an oncoming particle there.
fn half_rule(l: i8, r: i8) -> i8 {
    if l == 1 && r != -1 {
        1
    } else if r == -1 && l != 1 {
        -1
    } else {
        0
    }
}

fn particle_parity(zeta: &BaConfig) -> Result<Option<i64>> {
    let mut parity = None;
    for (x, _) in zeta.particles() {
        let p = x.rem_euclid(2);
        match parity {
            None => parity = Some(p),
            Some(q) if q != p => {
                return Err(Error::InvalidArgument(
                    "particles on both parities of the doubled lattice".into(),
                ))
            }
            _ => {}
        }
    }
    Ok(parity)
}

/// One half step on the doubled lattice (positions are `pos2`), from either
/// parity class to the other. Open windows lose one doubled cell per side.
pub fn half_step_doubled(zeta2: &BaConfig) -> Result<BaConfig> {
    particle_parity(zeta2)?;
    let c = zeta2.cells();
    let n = c.len();
    match zeta2.topology() {
        Topology::Ring { size } => {
            if size % 2 != 0 {
                return Err(Error::InvalidTopology(
                    "doubled ring must have even size".into(),
                ));
            }
            let out = (0..n)
                .map(|i| half_rule(c[(i + n - 1) % n], c[(i + 1) % n]))
                .collect();
            BaConfig::new(zeta2.topology(), out)
        }
        Topology::Open { .. } => {
            if n < 3 {
                return Err(Error::WindowTooShort {
                    needed: 3,
                    found: n,
                });
            }
            let out = c.windows(3).map(|w| half_rule(w[0], w[2])).collect();
            BaConfig::new(zeta2.topology().trimmed(1)?, out)
        }
    }
}

/// Half step from a whole-time configuration given on the doubled lattice;
/// the result lives on odd doubled positions.
pub fn ba_half_step(zeta2: &BaConfig) -> Result<BaConfig> {
    if particle_parity(zeta2)? == Some(1) {
        return Err(Error::InvalidArgument("input not on whole sites".into()));
    }
    half_step_doubled(zeta2)
}

/// Places a whole-lattice configuration on the doubled lattice: site `x`
/// goes to `2x`, odd doubled positions are empty.
pub fn embed_doubled(zeta: &BaConfig) -> BaConfig {
    let c = zeta.cells();
    match zeta.topology() {
        Topology::Ring { size } => {
            let mut out = vec![0; 2 * size];
            for (i, &v) in c.iter().enumerate() {
                out[2 * i] = v;
            }
            BaConfig::new(Topology::Ring { size: 2 * size }, out).unwrap()
        }
        Topology::Open { lo, .. } => {
            let mut out = vec![0; 2 * c.len() - 1];
            for (i, &v) in c.iter().enumerate() {
                out[2 * i] = v;
            }
            BaConfig::open(2 * lo, out).unwrap()
        }
    }
}

/// Reads the whole sites back off a doubled-lattice row at even time.
pub fn restrict_whole(zeta2: &BaConfig) -> Result<BaConfig> {
    if particle_parity(zeta2)? == Some(1) {
        return Err(Error::InvalidArgument("row lives on half sites".into()));
    }
    match zeta2.topology() {
        Topology::Ring { size } => {
            let c = zeta2.cells();
            BaConfig::ring((0..size / 2).map(|i| c[2 * i]).collect())
        }
        Topology::Open { lo, hi } => {
            let first = lo + lo.rem_euclid(2);
            let cells: Vec<i8> = (first..hi)
                .step_by(2)
                .map(|x2| zeta2.get(x2).unwrap())
                .collect();
            BaConfig::open(first / 2, cells)
        }
    }
}
