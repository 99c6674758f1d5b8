use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::lattice::HeightProfile;

/// Minimum of `values[i - radius ..= i + radius]` for every `i` whose window
/// fits, via a monotone deque in O(len). Ties resolve to the leftmost index.
pub fn sliding_min(values: &[i64], radius: usize) -> Vec<i64> {
    let width = 2 * radius + 1;
    if values.len() < width {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(values.len() - 2 * radius);
    let mut dq: VecDeque<usize> = VecDeque::with_capacity(width);
    for (i, &v) in values.iter().enumerate() {
        while dq.back().is_some_and(|&j| values[j] > v) {
            dq.pop_back();
        }
        dq.push_back(i);
        if dq[0] + width <= i {
            dq.pop_front();
        }
        if i + 1 >= width {
            out.push(values[dq[0]]);
        }
    }
    out
}

/// `g(x) = min f over [x - y, x + y]`, trimmed by `y` nodes per side.
pub fn min_filter(f: &HeightProfile, y: usize) -> Result<HeightProfile> {
    if f.node_count() <= 2 * y {
        return Err(Error::WindowTooShort {
            needed: 2 * y + 1,
            found: f.node_count(),
        });
    }
    let g = sliding_min(&f.heights(), y);
    HeightProfile::from_heights(f.origin() + y as i64, &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_value_example() {
        let h: Vec<i64> = (-5..=5).map(|k: i64| k.abs()).collect();
        let f = HeightProfile::from_heights(-5, &h).unwrap();
        let g = min_filter(&f, 1).unwrap();
        assert_eq!(g.origin(), -4);
        let expect: Vec<i64> = (-4..=4).map(|k: i64| (k.abs() - 1).max(0)).collect();
        assert_eq!(g.heights(), expect);
    }

    #[test]
    fn identity_and_constant() {
        let f = HeightProfile::from_heights(3, &[1, 2, 1, 1, 0]).unwrap();
        assert_eq!(min_filter(&f, 0).unwrap(), f);
        let c = HeightProfile::from_heights(0, &[4; 9]).unwrap();
        assert_eq!(min_filter(&c, 3).unwrap().heights(), vec![4, 4, 4]);
        assert!(min_filter(&f, 3).is_err());
    }

    #[test]
    fn matches_brute_force() {
        let v: Vec<i64> = (0..50).map(|i| ((i * 37) % 11) as i64 - 5).collect();
        for r in 0..6 {
            let brute: Vec<i64> = (r..v.len() - r)
                .map(|i| *v[i - r..=i + r].iter().min().unwrap())
                .collect();
            assert_eq!(sliding_min(&v, r), brute);
        }
    }
}
