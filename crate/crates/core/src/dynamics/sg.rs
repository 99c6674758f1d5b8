use crate::error::{Error, Result};
use crate::lattice::HeightProfile;

fn interior(f: &HeightProfile) -> Result<Vec<i64>> {
    if f.node_count() < 3 {
        return Err(Error::WindowTooShort {
            needed: 3,
            found: f.node_count(),
        });
    }
    Ok(f.heights())
}

/// Surface-growth step: every node that is a (weak) local minimum rises by
/// one; the two end nodes are dropped because their neighborhoods are
/// incomplete.
///
/// With this convention `min_filter(f, 1) = sg_step(f) - 1` node by node.
pub fn sg_step(f: &HeightProfile) -> Result<HeightProfile> {
    let h = interior(f)?;
    let out: Vec<i64> = h
        .windows(3)
        .map(|w| w[1] + (w[0] >= w[1] && w[1] <= w[2]) as i64)
        .collect();
    HeightProfile::from_heights(f.origin() + 1, &out)
}

/// Literal reflection of strict V-shaped minima across the chord of their
/// neighbors, other nodes unchanged. Kept for comparison: unlike
/// [`sg_step`] it does not stay a constant distance from `min_filter(f, 1)`.
pub fn sg_step_strict(f: &HeightProfile) -> Result<HeightProfile> {
    let h = interior(f)?;
    let out: Vec<i64> = h
        .windows(3)
        .map(|w| {
            if w[0] > w[1] && w[1] < w[2] {
                w[0] + w[2] - w[1]
            } else {
                w[1]
            }
        })
        .collect();
    HeightProfile::from_heights(f.origin() + 1, &out)
}
