//! Exact one-step and multi-step evolution.

mod ba;
mod ca;
mod minfilter;
pub mod packed;
mod sg;
mod sheet;

pub use ba::{ba_half_step, ba_rule, ba_step, embed_doubled, half_step_doubled, restrict_whole};
pub use ca::{ca184_step, ca184_step_bitparallel, rule184};
pub use minfilter::{min_filter, sliding_min};
pub use packed::PackedRing;
pub use sg::{sg_step, sg_step_strict};
pub use sheet::{evolve, evolve_ba, evolve_ba_doubled, evolve_ca, Model, SpaceTimeSheet};
