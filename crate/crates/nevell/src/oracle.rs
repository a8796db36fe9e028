//! Independent brute-force evaluators built on the defining lattice sums.
//!
//! These exist to pin golden values and cross-check the nome-series fast
//! paths. They deliberately avoid that machinery: lattice points are
//! enumerated straight from the original generators, and every summand is
//! the literal defining term. Basis reduction is consulted only for
//! geometry — the shortest-vector `scale` that fixes cutoff radii and the
//! regular-point guard — never for the values themselves.
//!
//! The one essential numerical decision here is the symmetric ±λ pairing in
//! [`wp_direct`]: the defining sum for ℘ has terms O(|λ|⁻³) after the
//! `λ⁻²` subtraction, giving an O(R⁻¹) truncation tail that no desk-scale
//! radius can push below single-digit accuracy. Summing λ and −λ together
//! cancels the odd part, making each paired term O(|λ|⁻⁴) and the tail
//! O(R⁻²), which Richardson extrapolation across radii then suppresses
//! further.
//!
//! The error estimate returned with each value is the spread of the
//! extrapolation tableau — a heuristic, not a rigorous bound.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{reduce_basis, LatticeSpec};

/// Cutoff radii (in units of the lattice scale) and extrapolation depth for
/// a direct-sum evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationPlan {
    /// Strictly increasing cutoff radii, in units of `scale`; at least 3,
    /// largest at most 2000 (keeps every evaluation at desk scale,
    /// ≲ 1.5·10⁷ lattice points).
    pub radii: Vec<f64>,
    /// Number of Richardson stages (≥ 1).
    pub extrapolation_order: usize,
}

impl TruncationPlan {
    /// The default plan: radii (250, 500, 1000, 2000)·scale, order 2.
    pub fn default_plan() -> Self {
        TruncationPlan {
            radii: vec![250.0, 500.0, 1000.0, 2000.0],
            extrapolation_order: 2,
        }
    }

    /// A lighter plan for bulk cross-checking; roughly one decade less
    /// accurate than the default.
    pub fn quick_plan() -> Self {
        TruncationPlan {
            radii: vec![80.0, 160.0, 320.0, 640.0],
            extrapolation_order: 2,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.radii.len() < 3 {
            return Err(Error::InvalidPlan("need at least 3 radii"));
        }
        if !self.radii.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidPlan("radii must be strictly increasing"));
        }
        if self.radii[0] <= 0.0 {
            return Err(Error::InvalidPlan("radii must be positive"));
        }
        if *self.radii.last().unwrap() > 2000.0 {
            return Err(Error::InvalidPlan("largest radius exceeds 2000"));
        }
        if self.extrapolation_order < 1 {
            return Err(Error::InvalidPlan("extrapolation order must be >= 1"));
        }
        Ok(())
    }
}

/// Direct defining sum for ℘:
///
/// ```text
/// ℘(z) = z⁻² + Σ_{0≠λ∈Λ, |λ|≤R} { (z−λ)⁻² − λ⁻² }
/// ```
///
/// with ±λ paired and partial sums Richardson-extrapolated across the
/// plan's radii. Requires `z` regular: distance to Λ at least `0.05·scale`.
pub fn wp_direct(
    l: &LatticeSpec,
    z: Complex64,
    plan: &TruncationPlan,
) -> Result<(Complex64, f64)> {
    plan.validate()?;
    let geo = Geometry::of(l);
    geo.require_regular(z)?;
    let partials = pair_sums(&geo, plan, |lambda| {
        let a = z - lambda;
        let b = z + lambda;
        let l2 = lambda * lambda;
        1.0 / (a * a) + 1.0 / (b * b) - 2.0 / l2
    });
    let z2 = 1.0 / (z * z);
    let sums: Vec<Complex64> = partials.into_iter().map(|s| s + z2).collect();
    Ok(extrapolate(&sums, &geo.radii(plan), 2, plan.extrapolation_order))
}

/// Direct shell sum for the Eisenstein series `G_k = Σ_{0≠λ} λ⁻ᵏ`,
/// k even and ≥ 4; truncation tail O(R^(2−k)) before extrapolation.
pub fn g_direct(l: &LatticeSpec, k: i64, plan: &TruncationPlan) -> Result<(Complex64, f64)> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    plan.validate()?;
    let geo = Geometry::of(l);
    let half = (k / 2) as u32;
    let partials = pair_sums(&geo, plan, |lambda| {
        // λ^{-k} + (−λ)^{-k} = 2·(λ²)^{-k/2} for even k.
        2.0 * inv_even_power(lambda, half)
    });
    Ok(extrapolate(
        &partials,
        &geo.radii(plan),
        (k - 2) as i32,
        plan.extrapolation_order,
    ))
}

/// Direct defining sum for the fourth-order Eisenstein function:
///
/// ```text
/// ζ₄(z) = Σ_{λ∈Λ, |λ|≤R} (z−λ)⁻⁴
/// ```
///
/// Absolutely convergent; ±λ pairing symmetrizes the truncation boundary.
pub fn zeta4_direct(
    l: &LatticeSpec,
    z: Complex64,
    plan: &TruncationPlan,
) -> Result<(Complex64, f64)> {
    plan.validate()?;
    let geo = Geometry::of(l);
    geo.require_regular(z)?;
    let partials = pair_sums(&geo, plan, |lambda| {
        inv_even_power(z - lambda, 2) + inv_even_power(z + lambda, 2)
    });
    let z0 = inv_even_power(z, 2);
    let sums: Vec<Complex64> = partials.into_iter().map(|s| s + z0).collect();
    Ok(extrapolate(&sums, &geo.radii(plan), 2, plan.extrapolation_order))
}

/// `x^(-2p)` by inversion and repeated squaring.
fn inv_even_power(x: Complex64, p: u32) -> Complex64 {
    let mut base = 1.0 / (x * x);
    let mut exp = p;
    let mut out = Complex64::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            out *= base;
        }
        base *= base;
        exp >>= 1;
    }
    out
}

/// Enumeration geometry: original generators plus the reduced-basis scale.
struct Geometry {
    p1: Complex64,
    p2: Complex64,
    /// Cell area |Im(conj(P1)·P2)|.
    area: f64,
    scale: f64,
}

impl Geometry {
    fn of(l: &LatticeSpec) -> Self {
        let p1 = 2.0 * l.w1();
        let p2 = 2.0 * l.w2();
        let area = (p1.conj() * p2).im.abs();
        let scale = reduce_basis(l).scale();
        Geometry {
            p1,
            p2,
            area,
            scale,
        }
    }

    fn radii(&self, plan: &TruncationPlan) -> Vec<f64> {
        plan.radii.iter().map(|r| r * self.scale).collect()
    }

    fn require_regular(&self, z: Complex64) -> Result<()> {
        // Nearest lattice point via real coordinates in the (p1, p2) frame.
        let x = (self.p2.conj() * z).im / (self.p2.conj() * self.p1).im;
        let y = (self.p1.conj() * z).im / (self.p1.conj() * self.p2).im;
        let (m0, n0) = (x.round(), y.round());
        let mut dist = f64::INFINITY;
        for dm in -1..=1 {
            for dn in -1..=1 {
                let lam = (m0 + dm as f64) * self.p1 + (n0 + dn as f64) * self.p2;
                dist = dist.min((z - lam).norm());
            }
        }
        if dist < 0.05 * self.scale {
            return Err(Error::TooCloseToPole(dist));
        }
        Ok(())
    }
}

/// Compensated complex accumulator. Plain f64 accumulation over ~10⁷ terms
/// loses ~1e-8 absolute; Kahan compensation keeps the sums at working
/// precision so the extrapolation spread stays an honest error estimate.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: Complex64,
    carry: Complex64,
}

impl Kahan {
    fn add(&mut self, term: Complex64) {
        let y = term - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Accumulate `term(λ)` over ±λ pairs for every cutoff radius at once.
///
/// One pass over the half-lattice in a fixed (m, n) order bins each pair by
/// the smallest cutoff containing it; prefix sums then give all partial
/// sums. The fixed order keeps results bit-stable across runs.
fn pair_sums(
    geo: &Geometry,
    plan: &TruncationPlan,
    term: impl Fn(Complex64) -> Complex64,
) -> Vec<Complex64> {
    let radii = geo.radii(plan);
    let r_max = *radii.last().unwrap();
    let r2: Vec<f64> = radii.iter().map(|r| r * r).collect();
    let m_max = (r_max * geo.p2.norm() / geo.area).ceil() as i64 + 1;
    let n_max = (r_max * geo.p1.norm() / geo.area).ceil() as i64 + 1;

    let mut buckets = vec![Kahan::default(); radii.len()];
    for m in 0..=m_max {
        let n_lo = if m == 0 { 1 } else { -n_max };
        // λ is rebuilt from (m, n) at every point rather than accumulated:
        // an incrementally built λ drifts by thousands of roundings, which
        // breaks the exact translation consistency of the enumerated set
        // that periodicity checks rely on.
        let base = m as f64 * geo.p1;
        for n in n_lo..=n_max {
            let lambda = base + n as f64 * geo.p2;
            let d2 = lambda.norm_sqr();
            if d2 <= r2[r2.len() - 1] && d2 > 0.0 {
                let idx = r2.partition_point(|&r| r < d2);
                buckets[idx].add(term(lambda));
            }
        }
    }
    let mut out = Vec::with_capacity(buckets.len());
    let mut acc = Kahan::default();
    for b in buckets {
        acc.add(b.sum);
        acc.add(b.carry * -1.0);
        out.push(acc.sum);
    }
    out
}

/// Richardson extrapolation of partial sums with tail model
/// `a·R^{-p0} + b·R^{-(p0+1)} + …`; returns the extrapolant and the tableau
/// spread as the error estimate.
fn extrapolate(sums: &[Complex64], radii: &[f64], p0: i32, order: usize) -> (Complex64, f64) {
    let k = sums.len();
    let stages = order.min(k - 1);
    let mut tab: Vec<Vec<Complex64>> = vec![sums.to_vec()];
    for j in 1..=stages {
        let p = (p0 + j as i32 - 1) as f64;
        let prev = &tab[j - 1];
        let mut row = Vec::with_capacity(k - j);
        for i in 0..k - j {
            let ratio = (radii[i + j] / radii[i]).powf(p);
            row.push(prev[i + 1] + (prev[i + 1] - prev[i]) / (ratio - 1.0));
        }
        tab.push(row);
    }
    let value = *tab[stages].last().unwrap();
    let prev_stage = *tab[stages - 1].last().unwrap();
    let mut err = (value - prev_stage).norm();
    if tab[stages].len() >= 2 {
        err = err.max((value - tab[stages][tab[stages].len() - 2]).norm());
    }
    (value, err)
}
