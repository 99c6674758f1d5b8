//! Configuration, profile and path types shared by every model.
//!
//! Positions are plain integers. Half-integer positions and times are stored
//! doubled (`pos2`, `time2`) so no floating point enters the combinatorics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary geometry of a finite lattice.
///
/// `Open { lo, hi }` is the half-open window `[lo, hi)`; evolution trims it by
/// one cell per side per step, so every stored value equals its value on the
/// infinite lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Topology {
    Ring { size: usize },
    Open { lo: i64, hi: i64 },
}

impl Topology {
    pub fn ring(size: usize) -> Result<Self> {
        if size < 3 {
            return Err(Error::InvalidTopology(format!("ring size {size} < 3")));
        }
        Ok(Topology::Ring { size })
    }

    pub fn open(lo: i64, hi: i64) -> Result<Self> {
        if hi <= lo {
            return Err(Error::InvalidTopology(format!("empty window {lo}..{hi}")));
        }
        Ok(Topology::Open { lo, hi })
    }

    pub fn len(&self) -> usize {
        match *self {
            Topology::Ring { size } => size,
            Topology::Open { lo, hi } => (hi - lo) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_ring(&self) -> bool {
        matches!(self, Topology::Ring { .. })
    }

    /// Leftmost position (0 on rings).
    pub fn lo(&self) -> i64 {
        match *self {
            Topology::Ring { .. } => 0,
            Topology::Open { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo() + self.len() as i64
    }

    /// Valid range after `k` radius-1 steps.
    pub fn trimmed(&self, k: usize) -> Result<Self> {
        match *self {
            Topology::Ring { .. } => Ok(*self),
            Topology::Open { lo, hi } => {
                if self.len() <= 2 * k {
                    return Err(Error::WindowTooShort {
                        needed: 2 * k + 1,
                        found: self.len(),
                    });
                }
                Ok(Topology::Open {
                    lo: lo + k as i64,
                    hi: hi - k as i64,
                })
            }
        }
    }

    /// Storage index of position `x`, if it is inside the lattice.
    pub fn index(&self, x: i64) -> Option<usize> {
        match *self {
            Topology::Ring { size } => Some(x.rem_euclid(size as i64) as usize),
            Topology::Open { lo, hi } => (lo..hi).contains(&x).then(|| (x - lo) as usize),
        }
    }

    fn tag(&self) -> String {
        match *self {
            Topology::Ring { size } => format!("RING:{size}"),
            Topology::Open { lo, hi } => format!("OPEN:{lo}..{hi}"),
        }
    }

    fn parse_tag(kind: &str, extent: &str) -> Result<Self> {
        match kind {
            "RING" => {
                let size = extent
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad ring size {extent:?}")))?;
                Topology::ring(size)
            }
            "OPEN" => {
                let (lo, hi) = extent
                    .split_once("..")
                    .ok_or_else(|| Error::Parse(format!("bad window {extent:?}")))?;
                let lo = lo
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad window start {lo:?}")))?;
                let hi = hi
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad window end {hi:?}")))?;
                Topology::open(lo, hi)
            }
            other => Err(Error::Parse(format!("unknown topology {other:?}"))),
        }
    }
}

fn split_header<'a>(s: &'a str, model: &str) -> Result<(Topology, &'a str)> {
    let mut parts = s.trim().splitn(4, ':');
    let head = parts.next().unwrap_or_default();
    if head != model {
        return Err(Error::Parse(format!(
            "expected {model:?} prefix, got {head:?}"
        )));
    }
    let kind = parts
        .next()
        .ok_or_else(|| Error::Parse("missing topology".into()))?;
    let extent = parts
        .next()
        .ok_or_else(|| Error::Parse("missing extent".into()))?;
    let cells = parts
        .next()
        .ok_or_else(|| Error::Parse("missing cells".into()))?;
    Ok((Topology::parse_tag(kind, extent)?, cells))
}

/// Rule-184 occupancy: one bit per site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ca184Config {
    topology: Topology,
    cells: Vec<u8>,
}

impl Ca184Config {
    pub fn new(topology: Topology, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != topology.len() {
            return Err(Error::LengthMismatch {
                expected: topology.len(),
                found: cells.len(),
            });
        }
        if let Some(&bad) = cells.iter().find(|&&c| c > 1) {
            return Err(Error::InvalidCell(bad as i64));
        }
        Ok(Ca184Config { topology, cells })
    }

    pub fn ring(cells: Vec<u8>) -> Result<Self> {
        Self::new(Topology::ring(cells.len())?, cells)
    }

    pub fn open(lo: i64, cells: Vec<u8>) -> Result<Self> {
        Self::new(Topology::open(lo, lo + cells.len() as i64)?, cells)
    }

    /// Checkerboard `o`: occupied exactly at odd positions.
    pub fn checkerboard_odd(topology: Topology) -> Self {
        Self::checkerboard(topology, 1)
    }

    /// Checkerboard `e`: occupied exactly at even positions.
    pub fn checkerboard_even(topology: Topology) -> Self {
        Self::checkerboard(topology, 0)
    }

    fn checkerboard(topology: Topology, parity: i64) -> Self {
        let lo = topology.lo();
        let cells = (0..topology.len() as i64)
            .map(|i| ((lo + i).rem_euclid(2) == parity) as u8)
            .collect();
        Ca184Config { topology, cells }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<u8> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, x: i64) -> Option<u8> {
        self.topology.index(x).map(|i| self.cells[i])
    }

    pub fn particle_count(&self) -> usize {
        self.cells.iter().map(|&c| c as usize).sum()
    }

    /// Restriction to a sub-window `[lo, hi)`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Self> {
        let cells = (lo..hi)
            .map(|x| {
                self.get(x)
                    .ok_or_else(|| Error::InvalidArgument(format!("position {x} outside lattice")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::open(lo, cells)
    }
}

impl fmt::Display for Ca184Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ca184:{}:", self.topology.tag())?;
        for &c in &self.cells {
            f.write_str(if c == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Ca184Config {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (topology, body) = split_header(s, "ca184")?;
        let cells = body
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("bad occupancy character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(topology, cells)
    }
}

/// Class of a ballistic-annihilation configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfigClass {
    Empty,
    AllPositive,
    AllNegative,
    /// All positive particles left of all negative ones, at least one of each.
    /// `pos` is the rightmost positive, `neg` the leftmost negative.
    SinglePhaseBoundary {
        pos: i64,
        neg: i64,
    },
    Mixed,
}

impl ConfigClass {
    /// Doubled midpoint of the interface gap, `pos + neg`.
    pub fn midgap2(&self) -> Option<i64> {
        match *self {
            ConfigClass::SinglePhaseBoundary { pos, neg } => Some(pos + neg),
            _ => None,
        }
    }

    /// Doubled half-width of the interface gap, `neg - pos`.
    pub fn half_gap2(&self) -> Option<i64> {
        match *self {
            ConfigClass::SinglePhaseBoundary { pos, neg } => Some(neg - pos),
            _ => None,
        }
    }
}

/// Ballistic-annihilation configuration: +1 moves right, −1 moves left.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaConfig {
    topology: Topology,
    cells: Vec<i8>,
}

impl BaConfig {
    pub fn new(topology: Topology, cells: Vec<i8>) -> Result<Self> {
        if cells.len() != topology.len() {
            return Err(Error::LengthMismatch {
                expected: topology.len(),
                found: cells.len(),
            });
        }
        if let Some(&bad) = cells.iter().find(|&&c| !(-1..=1).contains(&c)) {
            return Err(Error::InvalidCell(bad as i64));
        }
        Ok(BaConfig { topology, cells })
    }

    pub fn ring(cells: Vec<i8>) -> Result<Self> {
        Self::new(Topology::ring(cells.len())?, cells)
    }

    pub fn open(lo: i64, cells: Vec<i8>) -> Result<Self> {
        Self::new(Topology::open(lo, lo + cells.len() as i64)?, cells)
    }

    pub fn zeros(topology: Topology) -> Self {
        BaConfig {
            topology,
            cells: vec![0; topology.len()],
        }
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn cells(&self) -> &[i8] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<i8> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, x: i64) -> Option<i8> {
        self.topology.index(x).map(|i| self.cells[i])
    }

    /// Particles as `(position, velocity)` in increasing position.
    pub fn particles(&self) -> Vec<(i64, i8)> {
        let lo = self.topology.lo();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (lo + i as i64, c))
            .collect()
    }

    pub fn count(&self, velocity: i8) -> usize {
        self.cells.iter().filter(|&&c| c == velocity).count()
    }

    /// Window padded with `pad` zero cells on each side: the finite system
    /// with nothing outside the window.
    pub fn padded(&self, pad: usize) -> Result<Self> {
        if self.topology.is_ring() {
            return Err(Error::InvalidArgument("cannot pad a ring".into()));
        }
        let mut cells = vec![0; pad];
        cells.extend_from_slice(&self.cells);
        cells.extend(std::iter::repeat_n(0, pad));
        Self::open(self.topology.lo() - pad as i64, cells)
    }

    pub fn window(&self, lo: i64, hi: i64) -> Result<Self> {
        let cells = (lo..hi)
            .map(|x| {
                self.get(x)
                    .ok_or_else(|| Error::InvalidArgument(format!("position {x} outside lattice")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::open(lo, cells)
    }

    /// Spatial mirror `x -> -x` combined with velocity reversal.
    pub fn negated_mirror(&self) -> Self {
        let cells: Vec<i8> = self.cells.iter().rev().map(|&c| -c).collect();
        match self.topology {
            Topology::Ring { size } => {
                // Position x goes to -x mod size.
                let mut out = vec![0; size];
                for (x, &c) in self.cells.iter().enumerate() {
                    out[(size - x) % size] = -c;
                }
                BaConfig {
                    topology: self.topology,
                    cells: out,
                }
            }
            Topology::Open { lo, hi } => BaConfig {
                topology: Topology::Open {
                    lo: 1 - hi,
                    hi: 1 - lo,
                },
                cells,
            },
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }

    pub fn classify(&self) -> ConfigClass {
        let particles = self.particles();
        if particles.is_empty() {
            return ConfigClass::Empty;
        }
        if particles.iter().all(|&(_, v)| v == 1) {
            return ConfigClass::AllPositive;
        }
        if particles.iter().all(|&(_, v)| v == -1) {
            return ConfigClass::AllNegative;
        }
        if self.topology.is_ring() {
            // A cyclic sign sequence with both species has as many diverging
            // as converging interfaces.
            return ConfigClass::Mixed;
        }
        let switches = particles.windows(2).filter(|w| w[0].1 != w[1].1).count();
        let first = particles[0].1;
        if switches == 1 && first == 1 {
            let k = particles.iter().position(|&(_, v)| v == -1).unwrap();
            ConfigClass::SinglePhaseBoundary {
                pos: particles[k - 1].0,
                neg: particles[k].0,
            }
        } else {
            ConfigClass::Mixed
        }
    }
}

impl fmt::Display for BaConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ba:{}:", self.topology.tag())?;
        for &c in &self.cells {
            f.write_str(match c {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

impl FromStr for BaConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (topology, body) = split_header(s, "ba")?;
        let cells = body
            .chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(Error::Parse(format!("bad trit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(topology, cells)
    }
}

/// Integer lattice path `height(origin + j) = base + steps[0] + ... + steps[j-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightProfile {
    origin: i64,
    base: i64,
    steps: Vec<i8>,
}

impl HeightProfile {
    pub fn new(origin: i64, base: i64, steps: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = steps.iter().find(|&&s| !(-1..=1).contains(&s)) {
            return Err(Error::InvalidCell(bad as i64));
        }
        Ok(HeightProfile {
            origin,
            base,
            steps,
        })
    }

    pub fn from_heights(origin: i64, heights: &[i64]) -> Result<Self> {
        let (&base, _) = heights
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("empty profile".into()))?;
        let steps = heights
            .windows(2)
            .map(|w| {
                let d = w[1] - w[0];
                if (-1..=1).contains(&d) {
                    Ok(d as i8)
                } else {
                    Err(Error::InvalidCell(d))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HeightProfile {
            origin,
            base,
            steps,
        })
    }

    /// Abscissa of the first node.
    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// Height at the first node.
    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn node_count(&self) -> usize {
        self.steps.len() + 1
    }

    /// Abscissa one past the last node.
    pub fn end(&self) -> i64 {
        self.origin + self.node_count() as i64
    }

    pub fn heights(&self) -> Vec<i64> {
        let mut h = Vec::with_capacity(self.node_count());
        let mut cur = self.base;
        h.push(cur);
        for &s in &self.steps {
            cur += s as i64;
            h.push(cur);
        }
        h
    }

    pub fn height(&self, k: i64) -> Option<i64> {
        if k < self.origin || k >= self.end() {
            return None;
        }
        let j = (k - self.origin) as usize;
        Some(self.base + self.steps[..j].iter().map(|&s| s as i64).sum::<i64>())
    }

    pub fn shifted(&self, c: i64) -> Self {
        HeightProfile {
            base: self.base + c,
            ..self.clone()
        }
    }

    /// `k,height` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,height\n");
        for (j, h) in self.heights().into_iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.origin + j as i64, h));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut origin = None;
        let mut heights = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with('k')) {
                continue;
            }
            let (k, h) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected k,height", lineno + 1)))?;
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad abscissa", lineno + 1)))?;
            let h: i64 = h
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad height", lineno + 1)))?;
            let expected = origin.get_or_insert(k);
            if k != *expected + heights.len() as i64 {
                return Err(Error::Parse(format!(
                    "line {}: abscissae not consecutive",
                    lineno + 1
                )));
            }
            heights.push(h);
        }
        Self::from_heights(origin.unwrap_or(0), &heights)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clock {
    /// One tick is half a time unit, displacement ±1 doubled unit.
    HalfStep,
    /// One tick is one index step of an integer path, displacement ±1.
    WholeStep,
}

/// ±1-step path recorded in doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondClassPath {
    pub clock: Clock,
    pub start_time2: i64,
    pub start_pos2: i64,
    pub steps2: Vec<i8>,
}

impl SecondClassPath {
    /// Position (doubled) after each tick, starting with the start position.
    pub fn positions2(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps2.len() + 1);
        let mut p = self.start_pos2;
        out.push(p);
        for &s in &self.steps2 {
            p += s as i64;
            out.push(p);
        }
        out
    }

    pub fn ticks(&self) -> usize {
        self.steps2.len()
    }

    pub fn truncated(&self, ticks: usize) -> Self {
        SecondClassPath {
            steps2: self.steps2[..ticks.min(self.steps2.len())].to_vec(),
            ..self.clone()
        }
    }
}

impl fmt::Display for SecondClassPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let clock = match self.clock {
            Clock::HalfStep => "HALF",
            Clock::WholeStep => "WHOLE",
        };
        write!(f, "path:{clock}:{}:{}:", self.start_time2, self.start_pos2)?;
        for &s in &self.steps2 {
            f.write_str(match s {
                1 => "+",
                -1 => "-",
                _ => "?",
            })?;
        }
        Ok(())
    }
}

impl FromStr for SecondClassPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().splitn(5, ':').collect();
        if parts.len() != 5 || parts[0] != "path" {
            return Err(Error::Parse("expected path:CLOCK:t2:p2:steps".into()));
        }
        let clock = match parts[1] {
            "HALF" => Clock::HalfStep,
            "WHOLE" => Clock::WholeStep,
            other => return Err(Error::Parse(format!("unknown clock {other:?}"))),
        };
        let start_time2 = parts[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad start time {:?}", parts[2])))?;
        let start_pos2 = parts[3]
            .parse()
            .map_err(|_| Error::Parse(format!("bad start position {:?}", parts[3])))?;
        let steps2 = parts[4]
            .chars()
            .map(|ch| match ch {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::Parse(format!("bad step character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SecondClassPath {
            clock,
            start_time2,
            start_pos2,
            steps2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkerboards() {
        let t = Topology::ring(6).unwrap();
        assert_eq!(
            Ca184Config::checkerboard_odd(t).cells(),
            &[0, 1, 0, 1, 0, 1]
        );
        assert_eq!(
            Ca184Config::checkerboard_even(t).cells(),
            &[1, 0, 1, 0, 1, 0]
        );
        let w = Topology::open(-3, 0).unwrap();
        assert_eq!(Ca184Config::checkerboard_odd(w).cells(), &[1, 0, 1]);
    }

    #[test]
    fn text_round_trip() {
        let eta: Ca184Config = "ca184:RING:5:10110".parse().unwrap();
        assert_eq!(eta.cells(), &[1, 0, 1, 1, 0]);
        assert_eq!(eta.to_string(), "ca184:RING:5:10110");

        let zeta: BaConfig = "ba:OPEN:-2..2:+0-0".parse().unwrap();
        assert_eq!(zeta.topology(), Topology::Open { lo: -2, hi: 2 });
        assert_eq!(zeta.cells(), &[1, 0, -1, 0]);
        assert_eq!(zeta.to_string(), "ba:OPEN:-2..2:+0-0");

        assert!("ba:OPEN:0..3:+0".parse::<BaConfig>().is_err());
        assert!("ca184:RING:2:10".parse::<Ca184Config>().is_err());
        assert!("ba:RING:3:+x0".parse::<BaConfig>().is_err());

        let p: SecondClassPath = "path:HALF:0:4:--++".parse().unwrap();
        assert_eq!(p.positions2(), vec![4, 3, 2, 3, 4]);
        assert_eq!(p.to_string(), "path:HALF:0:4:--++");
    }

    #[test]
    fn classification_examples() {
        let c = |v: Vec<i8>| BaConfig::open(0, v).unwrap().classify();
        assert_eq!(c(vec![0, 0, 0]), ConfigClass::Empty);
        assert_eq!(c(vec![0, 1, 0, 1, 0]), ConfigClass::AllPositive);
        assert_eq!(c(vec![-1, 0, -1]), ConfigClass::AllNegative);
        let spb = c(vec![1, 0, 0, -1]);
        assert_eq!(spb, ConfigClass::SinglePhaseBoundary { pos: 0, neg: 3 });
        assert_eq!(spb.midgap2(), Some(3));
        assert_eq!(spb.half_gap2(), Some(3));
        assert_eq!(c(vec![-1, 1]), ConfigClass::Mixed);
        assert_eq!(c(vec![1, -1, 1, -1]), ConfigClass::Mixed);
        assert_eq!(
            BaConfig::ring(vec![1, 0, -1]).unwrap().classify(),
            ConfigClass::Mixed
        );
    }

    #[test]
    fn mirror_swaps_species() {
        let z = BaConfig::open(2, vec![1, 1, 0, -1, 0]).unwrap();
        let m = z.negated_mirror();
        assert_eq!(m.topology(), Topology::Open { lo: -6, hi: -1 });
        assert_eq!(m.get(-2), Some(-1));
        assert_eq!(m.get(-5), Some(1));
        assert_eq!(m.negated_mirror(), z);
    }

    #[test]
    fn profile_heights_and_csv() {
        let f = HeightProfile::new(-1, 0, vec![1, 1, -1]).unwrap();
        assert_eq!(f.heights(), vec![0, 1, 2, 1]);
        assert_eq!(f.height(1), Some(2));
        assert_eq!(f.height(3), None);
        let back = HeightProfile::from_csv(&f.to_csv()).unwrap();
        assert_eq!(back, f);
        assert!(HeightProfile::from_heights(0, &[0, 2]).is_err());
    }

    #[test]
    fn topology_trim() {
        let t = Topology::open(0, 5).unwrap();
        assert_eq!(t.trimmed(2).unwrap(), Topology::Open { lo: 2, hi: 3 });
        assert!(t.trimmed(3).is_err());
        assert!(Topology::ring(2).is_err());
        assert!(Topology::open(1, 1).is_err());
    }
}
