use crate::error::{Error, Result};
use crate::lattice::{Ca184Config, Topology};

use super::packed::PackedBits;

/// Rule 184 as a lookup on the neighborhood `(l, c, r)`.
pub fn rule184(l: u8, c: u8, r: u8) -> u8 {
    const TABLE: [u8; 8] = [0, 0, 0, 1, 1, 1, 0, 1];
    TABLE[((l << 2) | (c << 1) | r) as usize]
}

fn check_open(eta: &Ca184Config) -> Result<()> {
    if !eta.topology().is_ring() && eta.len() < 3 {
        return Err(Error::WindowTooShort {
            needed: 3,
            found: eta.len(),
        });
    }
    Ok(())
}

/// One synchronous rule-184 step, site by site.
pub fn ca184_step(eta: &Ca184Config) -> Result<Ca184Config> {
    check_open(eta)?;
    let c = eta.cells();
    let n = c.len();
    match eta.topology() {
        Topology::Ring { .. } => {
            let out = (0..n)
                .map(|i| rule184(c[(i + n - 1) % n], c[i], c[(i + 1) % n]))
                .collect();
            Ca184Config::new(eta.topology(), out)
        }
        Topology::Open { .. } => {
            let out = c.windows(3).map(|w| rule184(w[0], w[1], w[2])).collect();
            Ca184Config::new(eta.topology().trimmed(1)?, out)
        }
    }
}

/// Same map as [`ca184_step`], evaluated 64 sites per word.
pub fn ca184_step_bitparallel(eta: &Ca184Config) -> Result<Ca184Config> {
    check_open(eta)?;
    match eta.topology() {
        Topology::Ring { .. } => {
            let ring = super::PackedRing::from_config(eta)?;
            Ok(ring.stepped().to_config())
        }
        Topology::Open { .. } => {
            let bits = PackedBits::from_bits(eta.cells());
            let next = bits.step_open();
            let n = eta.len();
            let cells = (1..n - 1).map(|i| next.get(i)).collect();
            Ca184Config::new(eta.topology().trimmed(1)?, cells)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truth_table() {
        let expect = [
            ((1, 1, 1), 1),
            ((1, 1, 0), 0),
            ((1, 0, 1), 1),
            ((1, 0, 0), 1),
            ((0, 1, 1), 1),
            ((0, 1, 0), 0),
            ((0, 0, 1), 0),
            ((0, 0, 0), 0),
        ];
        for ((l, c, r), out) in expect {
            assert_eq!(rule184(l, c, r), out);
            assert_eq!((c & r) | (l & (1 - c)), out);
        }
    }

    #[test]
    fn ring_example() {
        let eta = Ca184Config::ring(vec![1, 0, 1, 1, 0]).unwrap();
        assert_eq!(ca184_step(&eta).unwrap().cells(), &[0, 1, 1, 0, 1]);
        assert_eq!(
            ca184_step_bitparallel(&eta).unwrap().cells(),
            &[0, 1, 1, 0, 1]
        );
    }

    #[test]
    fn open_window_trims() {
        let eta = Ca184Config::open(0, vec![1, 0, 1, 1, 0]).unwrap();
        let next = ca184_step(&eta).unwrap();
        assert_eq!(next.topology(), Topology::Open { lo: 1, hi: 4 });
        assert_eq!(next.cells(), &[1, 1, 0]);
        assert_eq!(ca184_step_bitparallel(&eta).unwrap(), next);
        assert!(ca184_step(&Ca184Config::open(0, vec![1, 0]).unwrap()).is_err());
    }

    #[test]
    fn checkerboards_swap() {
        let t = Topology::ring(8).unwrap();
        let o = Ca184Config::checkerboard_odd(t);
        let e = Ca184Config::checkerboard_even(t);
        assert_eq!(ca184_step(&o).unwrap(), e);
        assert_eq!(ca184_step(&e).unwrap(), o);
    }
}
