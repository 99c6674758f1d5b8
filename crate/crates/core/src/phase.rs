//! Second-class particle at a single phase boundary.
//!
//! In a configuration with every positive particle left of every negative
//! one, an extra tracer rides the innermost negative particle until that
//! particle is annihilated, then moves right until it meets the next
//! negative particle, and so on. Its path records every gap of the
//! configuration: rightward runs are negative-particle gaps, leftward runs
//! positive-particle gaps, so the path and the configuration determine each
//! other up to the horizon.

use serde::{Deserialize, Serialize};

use crate::dynamics::{evolve, SpaceTimeSheet};
use crate::error::{Error, Result};
use crate::init::Config;
use crate::lattice::{BaConfig, Ca184Config, Clock, ConfigClass, SecondClassPath};
use crate::transforms::ca_to_ba;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub path: SecondClassPath,
    /// `(time2, pos2)` of every annihilation the tracer takes part in.
    pub annihilations: Vec<(i64, i64)>,
    /// Ticks before the first annihilation. Until then the tracer's
    /// position depends on the attachment convention at time 0.
    pub provisional_ticks: usize,
}

/// Sheet for tracing: the window is padded with enough empty cells that the
/// tracer stays inside the exact region for `horizon2` half ticks.
pub fn phase_sheet(zeta: &BaConfig, horizon2: usize) -> Result<SpaceTimeSheet> {
    let pad = horizon2 + 2;
    let padded = zeta.padded(pad)?;
    let whole = horizon2.div_ceil(2);
    let sheet = evolve(&Config::Ba(padded), whole, true)?;
    match sheet {
        SpaceTimeSheet::Ba { rows, doubled } => {
            let mut doubled = doubled.expect("half rows requested");
            doubled.truncate(horizon2 + 1);
            Ok(SpaceTimeSheet::Ba {
                rows,
                doubled: Some(doubled),
            })
        }
        _ => unreachable!(),
    }
}

/// Follows the second-class particle through the half-step rows of `sheet`,
/// starting on the leftmost negative particle at `init_pos`.
///
/// Rules per half tick: if the tracer's companion meets a positive particle
/// next to it, the tracer sits at the meeting point; otherwise it moves left
/// when a negative particle occupies its cell and right when the cell is
/// empty.
pub fn trace_second_class(sheet: &SpaceTimeSheet, init_pos: i64) -> Result<Trace> {
    let rows = sheet
        .doubled_rows()
        .ok_or_else(|| Error::InvalidArgument("sheet has no half-step rows".into()))?;
    let row0 = &sheet.ba_rows().expect("BA sheet")[0];
    match row0.classify() {
        ConfigClass::SinglePhaseBoundary { neg, .. } if neg == init_pos => {}
        ConfigClass::SinglePhaseBoundary { neg, .. } => {
            return Err(Error::InvalidArgument(format!(
                "tracer must start on the leftmost negative particle at {neg}"
            )))
        }
        ConfigClass::AllNegative if row0.particles()[0].0 == init_pos => {}
        _ => return Err(Error::NotPhaseBoundary),
    }
    let mut e = 2 * init_pos;
    let mut steps2 = Vec::with_capacity(rows.len());
    let mut annihilations = Vec::new();
    for s in 1..rows.len() {
        let prev = &rows[s - 1];
        let cur = &rows[s];
        let here = prev.get(e).ok_or(Error::HorizonExhausted {
            time2: s as i64 - 1,
        })?;
        let met = [e - 1, e + 1].into_iter().find(|&m| {
            cur.get(m) == Some(0) && prev.get(m - 1) == Some(1) && prev.get(m + 1) == Some(-1)
        });
        let next = match (met, here) {
            (Some(m), _) => {
                annihilations.push((s as i64, m));
                m
            }
            (None, -1) => e - 1,
            (None, 0) => e + 1,
            (None, _) => {
                return Err(Error::InvalidPath(format!(
                    "tracer ran into a positive particle at half tick {s}"
                )))
            }
        };
        steps2.push((next - e) as i8);
        e = next;
    }
    let provisional_ticks = annihilations.first().map_or(steps2.len(), |a| a.0 as usize);
    Ok(Trace {
        path: SecondClassPath {
            clock: Clock::HalfStep,
            start_time2: 0,
            start_pos2: 2 * init_pos,
            steps2,
        },
        annihilations,
        provisional_ticks,
    })
}

/// Traces the second-class particle of a single-boundary window for
/// `horizon2` half ticks, treating the outside as empty.
pub fn trace_window(zeta: &BaConfig, horizon2: usize) -> Result<Trace> {
    let neg = match zeta.classify() {
        ConfigClass::SinglePhaseBoundary { neg, .. } => neg,
        ConfigClass::AllNegative => zeta.particles()[0].0,
        _ => return Err(Error::NotPhaseBoundary),
    };
    let sheet = phase_sheet(zeta, horizon2)?;
    trace_second_class(&sheet, neg)
}

/// Maximal runs of equal steps as `(direction, length)`.
fn runs(steps: &[i8]) -> Vec<(i8, usize)> {
    let mut out: Vec<(i8, usize)> = Vec::new();
    for &s in steps {
        match out.last_mut() {
            Some((d, len)) if *d == s => *len += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

/// Rebuilds the window whose cells are fixed by the first `horizon2` ticks of
/// a traced path. Cells beyond the returned window are undetermined.
pub fn path_to_config(path: &SecondClassPath, horizon2: usize) -> Result<BaConfig> {
    let verdict = validate_ba_path(path);
    if !verdict.valid {
        return Err(Error::InvalidPath(format!("{:?}", verdict.violations[0])));
    }
    if horizon2 > path.ticks() {
        return Err(Error::InvalidPath(format!(
            "horizon {horizon2} exceeds path length {}",
            path.ticks()
        )));
    }
    if path.start_time2.rem_euclid(2) != 0 {
        return Err(Error::InvalidPath("path must start at a whole time".into()));
    }
    let runs = runs(&path.steps2[..horizon2]);
    if runs.first().is_some_and(|r| r.0 != -1) {
        return Err(Error::InvalidPath(
            "path must start riding a negative particle".into(),
        ));
    }
    let n0 = path.start_pos2 / 2;
    let mut plus = Vec::new();
    let mut minus = vec![n0];
    // Outermost cells known to be empty beyond the last placed particle on
    // each side.
    let mut left_edge = n0;
    let mut right_edge = n0;
    let last = runs.len().saturating_sub(1);
    for (k, &(dir, len)) in runs.iter().enumerate() {
        let complete = k < last;
        let len = len as i64;
        if dir == -1 {
            let from = plus.last().copied().unwrap_or(n0);
            if complete {
                plus.push(from - len);
                left_edge = from - len;
            } else {
                left_edge = from - len + 1;
            }
        } else {
            let from = *minus.last().unwrap();
            if complete {
                minus.push(from + len);
                right_edge = from + len;
            } else {
                right_edge = from + len - 1;
            }
        }
    }
    // A leftward run that never started leaves nothing known past the last
    // positive particle; the same holds on the right.
    let mut cells = vec![0i8; (right_edge - left_edge + 1) as usize];
    for &p in &plus {
        cells[(p - left_edge) as usize] = 1;
    }
    for &m in &minus {
        cells[(m - left_edge) as usize] = -1;
    }
    BaConfig::open(left_edge, cells)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathViolation {
    pub i: usize,
    pub j: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathVerdict {
    pub valid: bool,
    pub violations: Vec<PathViolation>,
}

impl PathVerdict {
    fn from(violations: Vec<PathViolation>) -> Self {
        PathVerdict {
            valid: violations.is_empty(),
            violations,
        }
    }
}

/// Half-step paths: every step is ±1 doubled unit and whole times sit on
/// whole sites.
pub fn validate_ba_path(path: &SecondClassPath) -> PathVerdict {
    let mut v = Vec::new();
    if path.clock != Clock::HalfStep {
        v.push(PathViolation {
            i: 0,
            j: 0,
            reason: "expected a half-step clock".into(),
        });
    }
    for (i, &s) in path.steps2.iter().enumerate() {
        if s.abs() != 1 {
            v.push(PathViolation {
                i,
                j: i + 1,
                reason: format!("step of {s} doubled units"),
            });
        }
    }
    for (i, p) in path.positions2().into_iter().enumerate() {
        let t2 = path.start_time2 + i as i64;
        if (p - t2).rem_euclid(2) != 0 {
            v.push(PathViolation {
                i,
                j: i,
                reason: format!("position {p} has the wrong parity at half tick {t2}"),
            });
        }
    }
    PathVerdict::from(v)
}

fn unit_steps(path: &SecondClassPath, v: &mut Vec<PathViolation>) {
    if path.clock != Clock::WholeStep {
        v.push(PathViolation {
            i: 0,
            j: 0,
            reason: "expected a whole-step clock".into(),
        });
    }
    for (k, &s) in path.steps2.iter().enumerate() {
        if s.abs() != 1 {
            v.push(PathViolation {
                i: k,
                j: k + 1,
                reason: format!("increment {s} is not ±1"),
            });
        }
    }
}

/// Rule-184 paths: unit increments, and every straight stretch enclosed by
/// two direction changes has odd length.
///
/// With increments `D_k = X_k - X_{k-1}`, a violation `(i, j)` means
/// `D_i = -D_{i+1}`, `D_{i+1} = ... = D_j`, `D_j = -D_{j+1}` with `j - i` even.
pub fn validate_ca_path(path: &SecondClassPath) -> PathVerdict {
    let mut v = Vec::new();
    unit_steps(path, &mut v);
    if v.is_empty() {
        let runs = runs(&path.steps2);
        let mut start = 1usize;
        for (k, &(_, len)) in runs.iter().enumerate() {
            let end = start + len - 1;
            if k > 0 && k + 1 < runs.len() && len % 2 == 0 {
                v.push(PathViolation {
                    i: start - 1,
                    j: end,
                    reason: format!("enclosed stretch of even length {len}"),
                });
            }
            start = end + 1;
        }
    }
    PathVerdict::from(v)
}

/// The alternative reading of the odd-chain condition: no four consecutive
/// increments alternate in sign. Paths of genuine rule-184 phase boundaries
/// can fail it (see the crate tests); [`validate_ca_path`] is the reading
/// they satisfy.
pub fn validate_ca_path_alternating(path: &SecondClassPath) -> PathVerdict {
    let mut v = Vec::new();
    unit_steps(path, &mut v);
    if v.is_empty() {
        let d = &path.steps2;
        let mut run_start = 0;
        for k in 1..=d.len() {
            if k == d.len() || d[k] != -d[k - 1] {
                if k - run_start >= 4 {
                    v.push(PathViolation {
                        i: run_start + 1,
                        j: run_start + 3,
                        reason: format!("{} alternating increments", k - run_start),
                    });
                }
                run_start = k;
            }
        }
    }
    PathVerdict::from(v)
}

/// Second-class path of a rule-184 window whose transform has a single phase
/// boundary, indexed one tick per half step.
pub fn ca_path(eta: &Ca184Config, horizon2: usize) -> Result<SecondClassPath> {
    let zeta = ca_to_ba(eta)?;
    let trace = trace_window(&zeta, horizon2)?;
    Ok(SecondClassPath {
        clock: Clock::WholeStep,
        ..trace.path
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(cells: &[(i64, i8)], lo: i64, hi: i64) -> BaConfig {
        let mut v = vec![0; (hi - lo) as usize];
        for &(x, c) in cells {
            v[(x - lo) as usize] = c;
        }
        BaConfig::open(lo, v).unwrap()
    }

    #[test]
    fn hand_trace() {
        let z = window(&[(0, 1), (2, -1), (6, -1)], 0, 7);
        let t = trace_window(&z, 8).unwrap();
        assert_eq!(&t.path.positions2()[..5], &[4, 3, 2, 3, 4]);
        assert_eq!(t.annihilations[0], (2, 2));
        assert_eq!(t.provisional_ticks, 2);
        // Meets the negative from 6 at time 3, position 3, then rides it.
        assert_eq!(t.path.positions2()[6], 6);
        assert_eq!(t.path.positions2()[7], 5);

        let back = path_to_config(&t.path, 8).unwrap();
        assert_eq!(back.get(0), Some(1));
        assert_eq!(back.get(2), Some(-1));
        assert_eq!(back.get(6), Some(-1));
        assert_eq!(back.get(1), Some(0));
    }

    #[test]
    fn no_positives_moves_left() {
        let z = window(&[(3, -1), (5, -1)], 0, 6);
        let t = trace_window(&z, 6).unwrap();
        assert!(t.path.steps2.iter().all(|&s| s == -1));
        let back = path_to_config(&t.path, 6).unwrap();
        assert_eq!(back.particles(), vec![(3, -1)]);
        assert_eq!(back.topology().lo(), -2);
    }

    #[test]
    fn rejects_mixed_rows() {
        let z = window(&[(0, -1), (2, 1)], 0, 3);
        assert_eq!(trace_window(&z, 4), Err(Error::NotPhaseBoundary));
    }

    #[test]
    fn ba_path_validation() {
        let zigzag = SecondClassPath {
            clock: Clock::HalfStep,
            start_time2: 0,
            start_pos2: 0,
            steps2: vec![1, -1, 1, -1],
        };
        assert!(validate_ba_path(&zigzag).valid);
        let jump = SecondClassPath {
            steps2: vec![1, 2, -1],
            ..zigzag.clone()
        };
        assert!(!validate_ba_path(&jump).valid);
        let odd = SecondClassPath {
            start_pos2: 1,
            ..zigzag
        };
        assert!(!validate_ba_path(&odd).valid);
    }

    #[test]
    fn ca_path_validation() {
        let p = |steps2: Vec<i8>| SecondClassPath {
            clock: Clock::WholeStep,
            start_time2: 0,
            start_pos2: 0,
            steps2,
        };
        assert!(validate_ca_path(&p(vec![1, -1, 1])).valid);
        assert!(validate_ca_path(&p(vec![1, 1, 1, 1])).valid);
        assert!(!validate_ca_path(&p(vec![1, -1, -1, 1])).valid);
        assert!(validate_ca_path(&p(vec![1, -1, -1, -1, 1, 1])).valid);
        assert!(!validate_ca_path(&p(vec![1, 0, 1])).valid);

        assert!(validate_ca_path_alternating(&p(vec![1, -1, 1])).valid);
        assert!(!validate_ca_path_alternating(&p(vec![1, -1, 1, -1])).valid);
        assert!(validate_ca_path(&p(vec![1, -1, 1, -1])).valid);
    }
}
