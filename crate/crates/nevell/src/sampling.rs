//! Deterministic point sampling for identity checks.
//!
//! A tiny self-contained generator keeps seeded runs bit-identical across
//! platforms and releases, which matters because the CLI promises
//! reproducible `check` output for a given `--seed`.

use num_complex::Complex64;

use crate::lattice::{reduce_basis, LatticeSpec};

/// SplitMix64: passes through every 64-bit state exactly once, good enough
/// statistical quality for sampling test points.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Sample `count` points of the fundamental cell that are *regular*:
/// at distance at least `0.05·scale` from the pole lattice Λ.
pub fn regular_points(l: &LatticeSpec, count: usize, seed: u64) -> Vec<Complex64> {
    let rb = reduce_basis(l);
    let p1 = 2.0 * rb.w1r;
    let p2 = 2.0 * rb.w2r;
    let scale = rb.scale();
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = rng.next_f64();
        let y = rng.next_f64();
        let z = x * p1 + y * p2;
        let mut dist = f64::INFINITY;
        for m in -1..=1 {
            for n in -1..=1 {
                dist = dist.min((z - m as f64 * p1 - n as f64 * p2).norm());
            }
        }
        if dist >= 0.05 * scale {
            out.push(z);
        }
    }
    out
}

/// Sample points that are regular *and* at distance at least `0.05·scale`
/// from all three midpoint lattices (where the primitive functions have
/// their zeros).
pub fn generic_points(l: &LatticeSpec, count: usize, seed: u64) -> Vec<Complex64> {
    let rb = reduce_basis(l);
    let p1 = 2.0 * rb.w1r;
    let p2 = 2.0 * rb.w2r;
    let scale = rb.scale();
    let (w1, w2, w3) = crate::lattice::half_periods(l);
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = rng.next_f64() * p1 + rng.next_f64() * p2;
        let mut dist = f64::INFINITY;
        for m in -2..=2 {
            for n in -2..=2 {
                let corner = m as f64 * p1 + n as f64 * p2;
                dist = dist.min((z - corner).norm());
                for w in [w1, w2, w3] {
                    dist = dist.min((z - w - corner).norm());
                }
            }
        }
        if dist >= 0.05 * scale {
            out.push(z);
        }
    }
    out
}
