//! Seeded initial-state samplers.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BaConfig, Ca184Config, Topology};
use crate::rng::{stream, StreamRng};

const TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InitKind {
    /// i.i.d. occupancy with probability `p`.
    BernoulliCa {
        p: f64,
    },
    /// i.i.d. fair ±1 trits, no empty sites.
    BernoulliBaPm,
    /// i.i.d. trits with the given probabilities.
    BernoulliBa {
        p_plus: f64,
        p_minus: f64,
        p_zero: f64,
    },
    /// Stationary two-state Markov chain along the lattice;
    /// `matrix[a][b]` is the probability that a site in state `a` is followed
    /// by a site in state `b`.
    MarkovCa {
        matrix: [[f64; 2]; 2],
    },
    ExplicitCa {
        cells: Vec<u8>,
    },
    ExplicitBa {
        cells: Vec<i8>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitSpec {
    pub kind: InitKind,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Config {
    Ca(Ca184Config),
    Ba(BaConfig),
}

impl Config {
    pub fn topology(&self) -> Topology {
        match self {
            Config::Ca(c) => c.topology(),
            Config::Ba(c) => c.topology(),
        }
    }
}

impl InitKind {
    /// Fair ±1 trits: the law with `P[+1] = P[-1] = 1/2`.
    pub fn fair_pm() -> Self {
        InitKind::BernoulliBaPm
    }

    /// Occupancy with probability 1/2.
    pub fn fair_ca() -> Self {
        InitKind::BernoulliCa { p: 0.5 }
    }

    /// Equal-weight mixture of the two checkerboards.
    pub fn checkerboard_mixture() -> Self {
        InitKind::MarkovCa {
            matrix: [[0.0, 1.0], [1.0, 0.0]],
        }
    }

    pub fn is_ca(&self) -> bool {
        matches!(
            self,
            InitKind::BernoulliCa { .. } | InitKind::MarkovCa { .. } | InitKind::ExplicitCa { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidProbability(format!(
                    "{name} = {p} outside [0,1]"
                )))
            }
        };
        match self {
            InitKind::BernoulliCa { p } => prob("p", *p),
            InitKind::BernoulliBaPm => Ok(()),
            InitKind::BernoulliBa {
                p_plus,
                p_minus,
                p_zero,
            } => {
                prob("p_plus", *p_plus)?;
                prob("p_minus", *p_minus)?;
                prob("p_zero", *p_zero)?;
                let s = p_plus + p_minus + p_zero;
                if (s - 1.0).abs() > TOL {
                    return Err(Error::InvalidProbability(format!(
                        "trit probabilities sum to {s}"
                    )));
                }
                Ok(())
            }
            InitKind::MarkovCa { matrix } => {
                for (a, row) in matrix.iter().enumerate() {
                    prob("transition", row[0])?;
                    prob("transition", row[1])?;
                    if (row[0] + row[1] - 1.0).abs() > TOL {
                        return Err(Error::InvalidProbability(format!(
                            "transition row {a} sums to {}",
                            row[0] + row[1]
                        )));
                    }
                }
                Ok(())
            }
            InitKind::ExplicitCa { cells } => match cells.iter().find(|&&c| c > 1) {
                Some(&c) => Err(Error::InvalidCell(c as i64)),
                None => Ok(()),
            },
            InitKind::ExplicitBa { cells } => match cells.iter().find(|&&c| !(-1..=1).contains(&c))
            {
                Some(&c) => Err(Error::InvalidCell(c as i64)),
                None => Ok(()),
            },
        }
    }

    /// Draws a configuration on `topology` from `rng`.
    pub fn sample(&self, topology: Topology, rng: &mut StreamRng) -> Result<Config> {
        self.validate()?;
        let n = topology.len();
        if n == 0 {
            return Err(Error::InvalidTopology("zero-length topology".into()));
        }
        Ok(match self {
            InitKind::BernoulliCa { p } => {
                let cells = (0..n).map(|_| (rng.random::<f64>() < *p) as u8).collect();
                Config::Ca(Ca184Config::new(topology, cells)?)
            }
            InitKind::BernoulliBaPm => {
                let mut cells = Vec::with_capacity(n);
                while cells.len() < n {
                    let mut bits: u64 = rng.random();
                    for _ in 0..64.min(n - cells.len()) {
                        cells.push(if bits & 1 == 1 { 1 } else { -1 });
                        bits >>= 1;
                    }
                }
                Config::Ba(BaConfig::new(topology, cells)?)
            }
            InitKind::BernoulliBa {
                p_plus, p_minus, ..
            } => {
                let cells = (0..n)
                    .map(|_| {
                        let u = rng.random::<f64>();
                        if u < *p_plus {
                            1
                        } else if u < p_plus + p_minus {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect();
                Config::Ba(BaConfig::new(topology, cells)?)
            }
            InitKind::MarkovCa { matrix } => {
                let to_one = matrix[0][1];
                let to_zero = matrix[1][0];
                let p_one = if to_one + to_zero > 0.0 {
                    to_one / (to_one + to_zero)
                } else {
                    0.5
                };
                let mut cells = Vec::with_capacity(n);
                let mut cur = (rng.random::<f64>() < p_one) as usize;
                cells.push(cur as u8);
                for _ in 1..n {
                    cur = (rng.random::<f64>() < matrix[cur][1]) as usize;
                    cells.push(cur as u8);
                }
                Config::Ca(Ca184Config::new(topology, cells)?)
            }
            InitKind::ExplicitCa { cells } => {
                Config::Ca(Ca184Config::new(topology, cells.clone())?)
            }
            InitKind::ExplicitBa { cells } => Config::Ba(BaConfig::new(topology, cells.clone())?),
        })
    }

    pub fn sample_ca(&self, topology: Topology, rng: &mut StreamRng) -> Result<Ca184Config> {
        match self.sample(topology, rng)? {
            Config::Ca(c) => Ok(c),
            Config::Ba(_) => Err(Error::InvalidArgument(
                "sampler produces trit configurations".into(),
            )),
        }
    }

    /// Draws a trit configuration; occupancy samplers are mapped through the
    /// rule-184 to annihilation transform, which needs one extra cell.
    pub fn sample_ba(&self, topology: Topology, rng: &mut StreamRng) -> Result<BaConfig> {
        if self.is_ca() {
            let wider = match topology {
                Topology::Open { lo, hi } => Topology::open(lo, hi + 1)?,
                ring => ring,
            };
            let eta = self.sample_ca(wider, rng)?;
            return crate::transforms::ca_to_ba(&eta);
        }
        match self.sample(topology, rng)? {
            Config::Ba(c) => Ok(c),
            Config::Ca(_) => unreachable!(),
        }
    }
}

/// Samples the initial configuration for `spec` on `topology`.
pub fn sample_initial(spec: &InitSpec, topology: Topology) -> Result<Config> {
    let mut rng = stream(spec.seed, 0, "initial");
    spec.kind.sample(topology, &mut rng)
}
