//! Rule 184 on bit-packed lattices: `c' = (c & r) | (l & !c)` a word at a time.
//!
//! Bit `i` of word `w` holds site `64 w + i`; bits past the last site are kept
//! at zero.

use crate::error::{Error, Result};
use crate::lattice::{Ca184Config, Topology};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedBits {
    len: usize,
    words: Vec<u64>,
}

#[inline(always)]
fn rule_word(prev: u64, c: u64, next: u64) -> u64 {
    let l = (c << 1) | (prev >> 63);
    let r = (c >> 1) | (next << 63);
    (c & r) | (l & !c)
}

impl PackedBits {
    pub fn zeros(len: usize) -> Self {
        PackedBits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut p = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            p.words[i / 64] |= ((b & 1) as u64) << (i % 64);
        }
        p
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        ((self.words[i / 64] >> (i % 64)) & 1) as u8
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn tail_mask(&self) -> u64 {
        match self.len % 64 {
            0 => u64::MAX,
            k => (1u64 << k) - 1,
        }
    }

    /// Core word loop; `left_in` / `right_in` are the single bits entering
    /// from beyond site 0 and beyond the last site.
    fn step_into(&self, out: &mut [u64], left_in: u64, right_in: u64) {
        let w = &self.words;
        let nw = w.len();
        if nw == 0 {
            return;
        }
        if nw == 1 {
            let c = w[0];
            let r = (c >> 1) | (right_in << ((self.len - 1) % 64));
            let l = (c << 1) | left_in;
            out[0] = ((c & r) | (l & !c)) & self.tail_mask();
            return;
        }
        // First word: its left neighbor bit comes from outside.
        {
            let c = w[0];
            let l = (c << 1) | left_in;
            let r = (c >> 1) | (w[1] << 63);
            out[0] = (c & r) | (l & !c);
        }
        for i in 1..nw - 1 {
            out[i] = rule_word(w[i - 1], w[i], w[i + 1]);
        }
        {
            let c = w[nw - 1];
            let l = (c << 1) | (w[nw - 2] >> 63);
            let r = (c >> 1) | (right_in << ((self.len - 1) % 64));
            out[nw - 1] = ((c & r) | (l & !c)) & self.tail_mask();
        }
    }

    /// One step with empty sites outside; the two edge sites are not exact
    /// values of a larger lattice and callers trim them.
    pub fn step_open(&self) -> PackedBits {
        let mut out = PackedBits::zeros(self.len);
        self.step_into(&mut out.words, 0, 0);
        out
    }
}

/// A rule-184 ring packed 64 sites per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedRing {
    bits: PackedBits,
}

impl PackedRing {
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() < 3 {
            return Err(Error::InvalidTopology(format!(
                "ring size {} < 3",
                bits.len()
            )));
        }
        Ok(PackedRing {
            bits: PackedBits::from_bits(bits),
        })
    }

    pub fn from_config(eta: &Ca184Config) -> Result<Self> {
        if !eta.topology().is_ring() {
            return Err(Error::InvalidArgument(
                "packed ring needs a ring topology".into(),
            ));
        }
        Self::from_bits(eta.cells())
    }

    pub fn to_config(&self) -> Ca184Config {
        Ca184Config::new(
            Topology::Ring {
                size: self.bits.len,
            },
            self.bits.to_bits(),
        )
        .expect("packed ring has valid size")
    }

    pub fn size(&self) -> usize {
        self.bits.len
    }

    pub fn bits(&self) -> &PackedBits {
        &self.bits
    }

    pub fn get(&self, i: usize) -> u8 {
        self.bits.get(i)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones()
    }

    /// Writes the next configuration into `out` (same size).
    pub fn step_into(&self, out: &mut PackedRing) {
        debug_assert_eq!(out.bits.len, self.bits.len);
        let n = self.bits.len;
        let left_in = self.bits.get(n - 1) as u64;
        let right_in = self.bits.get(0) as u64;
        self.bits.step_into(&mut out.bits.words, left_in, right_in);
    }

    pub fn stepped(&self) -> PackedRing {
        let mut out = PackedRing {
            bits: PackedBits::zeros(self.bits.len),
        };
        self.step_into(&mut out);
        out
    }

    /// Advances `steps` times using `scratch` as the double buffer.
    pub fn advance(&mut self, steps: usize, scratch: &mut PackedRing) {
        for _ in 0..steps {
            self.step_into(scratch);
            std::mem::swap(self, scratch);
        }
    }

    /// Number of sites occupied now and empty in `prev`.
    pub fn arrivals_since(&self, prev: &PackedRing) -> usize {
        self.bits
            .words
            .iter()
            .zip(&prev.bits.words)
            .map(|(&now, &before)| (now & !before).count_ones() as usize)
            .sum()
    }

    /// Number of sites empty now and occupied in `prev`.
    pub fn departures_since(&self, prev: &PackedRing) -> usize {
        prev.arrivals_since(self)
    }

    /// Number of sites `x` with `η(x) = η(x+1)`, cyclically.
    pub fn equal_neighbor_count(&self) -> usize {
        let n = self.bits.len;
        let w = &self.bits.words;
        let nw = w.len();
        let mut total = 0usize;
        for i in 0..nw {
            let next = if i + 1 < nw { w[i + 1] } else { 0 };
            let right = (w[i] >> 1) | (next << 63);
            let mut eq = !(w[i] ^ right);
            if i + 1 == nw {
                // Last site compares with site 0; drop bits past the ring.
                let last = (n - 1) % 64;
                eq &= if last == 63 {
                    u64::MAX >> 1
                } else {
                    (1u64 << last) - 1
                };
                total += (self.bits.get(n - 1) == self.bits.get(0)) as usize;
            }
            total += eq.count_ones() as usize;
        }
        total
    }
}
