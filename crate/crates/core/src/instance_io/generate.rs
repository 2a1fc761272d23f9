//! Seeded random instances.
//!
//! The generator is SplitMix64 (64-bit state, Steele/Lea/Flood constants),
//! pinned here so that a seed means the same instance in every build and in
//! any other implementation of the format:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output z ^ (z >> 31)
//! ```
//!
//! A draw `u` in `[0, 1)` is `(output >> 11) * 2^-53`. Points are drawn as
//! `x` then `y`, each `u * side`, rounded to 12 significant digits so the
//! in-memory instance equals what the file format stores.

use crate::disk_graph::Instance;
use crate::error::{Error, Result};
use crate::geometry::Point;

use super::format::round_significant;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// `count` points uniform in the `side` x `side` square anchored at the
/// origin.
pub fn generate_random(count: usize, side: f64, range: f64, seed: u64) -> Result<Instance> {
    if count == 0 {
        return Err(Error::InvalidParameter(
            "node count must be at least 1".into(),
        ));
    }
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "square side must be positive, got {side}"
        )));
    }
    if !(range.is_finite() && range > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "range must be positive, got {range}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let nodes = (0..count)
        .map(|_| {
            let x = round_significant(rng.next_unit() * side);
            let y = round_significant(rng.next_unit() * side);
            Point::new(x, y)
        })
        .collect();
    Instance::new(nodes, range)
}
