use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::init::Config;
use crate::lattice::{BaConfig, Ca184Config, Topology};

use super::{ba_step, ca184_step_bitparallel, embed_doubled, half_step_doubled};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    Ca184,
    Ba,
}

/// Rows of an evolution, `rows[t]` at whole time `t`. BA sheets may also
/// carry every half-time row on the doubled lattice, indexed by `time2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceTimeSheet {
    Ca184 {
        rows: Vec<Ca184Config>,
    },
    Ba {
        rows: Vec<BaConfig>,
        doubled: Option<Vec<BaConfig>>,
    },
}

impl SpaceTimeSheet {
    pub fn model(&self) -> Model {
        match self {
            SpaceTimeSheet::Ca184 { .. } => Model::Ca184,
            SpaceTimeSheet::Ba { .. } => Model::Ba,
        }
    }

    pub fn topology(&self) -> Topology {
        match self {
            SpaceTimeSheet::Ca184 { rows } => rows[0].topology(),
            SpaceTimeSheet::Ba { rows, .. } => rows[0].topology(),
        }
    }

    /// Number of whole-time steps recorded.
    pub fn steps(&self) -> usize {
        match self {
            SpaceTimeSheet::Ca184 { rows } => rows.len() - 1,
            SpaceTimeSheet::Ba { rows, .. } => rows.len() - 1,
        }
    }

    pub fn ca_rows(&self) -> Option<&[Ca184Config]> {
        match self {
            SpaceTimeSheet::Ca184 { rows } => Some(rows),
            _ => None,
        }
    }

    pub fn ba_rows(&self) -> Option<&[BaConfig]> {
        match self {
            SpaceTimeSheet::Ba { rows, .. } => Some(rows),
            _ => None,
        }
    }

    pub fn doubled_rows(&self) -> Option<&[BaConfig]> {
        match self {
            SpaceTimeSheet::Ba { doubled, .. } => doubled.as_deref(),
            _ => None,
        }
    }
}

fn check_light_cone(topology: Topology, n: usize) -> Result<()> {
    if !topology.is_ring() && 2 * n >= topology.len() {
        return Err(Error::WindowTooShort {
            needed: 2 * n + 1,
            found: topology.len(),
        });
    }
    Ok(())
}

pub fn evolve_ca(eta: &Ca184Config, n: usize) -> Result<Vec<Ca184Config>> {
    check_light_cone(eta.topology(), n)?;
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(eta.clone());
    for _ in 0..n {
        let next = ca184_step_bitparallel(rows.last().unwrap())?;
        rows.push(next);
    }
    Ok(rows)
}

pub fn evolve_ba(zeta: &BaConfig, n: usize) -> Result<Vec<BaConfig>> {
    check_light_cone(zeta.topology(), n)?;
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(zeta.clone());
    for _ in 0..n {
        let next = ba_step(rows.last().unwrap())?;
        rows.push(next);
    }
    Ok(rows)
}

/// Rows at every half tick `0..=steps2` on the doubled lattice.
pub fn evolve_ba_doubled(zeta: &BaConfig, steps2: usize) -> Result<Vec<BaConfig>> {
    let mut rows = Vec::with_capacity(steps2 + 1);
    rows.push(embed_doubled(zeta));
    if !zeta.topology().is_ring() && 2 * steps2 >= rows[0].len() {
        return Err(Error::WindowTooShort {
            needed: steps2 + 1,
            found: zeta.len(),
        });
    }
    for _ in 0..steps2 {
        let next = half_step_doubled(rows.last().unwrap())?;
        rows.push(next);
    }
    Ok(rows)
}

/// Iterates the model's step `n` times. `half_rows` additionally records the
/// half-step expansion for BA.
pub fn evolve(config: &Config, n: usize, half_rows: bool) -> Result<SpaceTimeSheet> {
    match config {
        Config::Ca(eta) => Ok(SpaceTimeSheet::Ca184 {
            rows: evolve_ca(eta, n)?,
        }),
        Config::Ba(zeta) => {
            let rows = evolve_ba(zeta, n)?;
            let doubled = if half_rows {
                Some(evolve_ba_doubled(zeta, 2 * n)?)
            } else {
                None
            };
            Ok(SpaceTimeSheet::Ba { rows, doubled })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{ca184_step, restrict_whole};

    #[test]
    fn checkerboard_two_cycle() {
        let t = Topology::ring(10).unwrap();
        let o = Ca184Config::checkerboard_odd(t);
        let sheet = evolve(&Config::Ca(o.clone()), 2, false).unwrap();
        let rows = sheet.ca_rows().unwrap();
        assert_eq!(rows[0], o);
        assert_eq!(rows[1], Ca184Config::checkerboard_even(t));
        assert_eq!(rows[2], o);
    }

    #[test]
    fn rows_compose() {
        let eta = Ca184Config::ring(vec![1, 1, 0, 1, 0, 0]).unwrap();
        let rows = evolve_ca(&eta, 3).unwrap();
        let mut direct = eta.clone();
        for _ in 0..3 {
            direct = ca184_step(&direct).unwrap();
        }
        assert_eq!(rows[3], direct);
    }

    #[test]
    fn vacuum_stays_vacuum_and_halves_agree() {
        let z = BaConfig::zeros(Topology::open(0, 9).unwrap());
        let sheet = evolve(&Config::Ba(z), 4, true).unwrap();
        assert!(sheet.ba_rows().unwrap().iter().all(|r| r.is_vacuum()));
        let z = BaConfig::open(0, vec![1, 0, 1, -1, 0, -1, -1, 1, 0, 1, -1]).unwrap();
        let sheet = evolve(&Config::Ba(z), 5, true).unwrap();
        let whole = sheet.ba_rows().unwrap();
        let doubled = sheet.doubled_rows().unwrap();
        for t in 0..=5 {
            assert_eq!(restrict_whole(&doubled[2 * t]).unwrap(), whole[t]);
        }
        assert!(evolve(&Config::Ba(whole[0].clone()), 6, false).is_err());
    }
}
