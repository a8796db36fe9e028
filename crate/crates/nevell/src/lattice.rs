//! Lattices in the complex plane and their invariants.
//!
//! A lattice is specified by an oriented pair of half-periods `(w1, w2)`:
//!
//! ```text
//! Λ = { 2·n1·w1 + 2·n2·w2 : n1, n2 ∈ ℤ }
//! ```
//!
//! Note the factor of two: the *generators* of the lattice are the full
//! periods `2w1` and `2w2`; the half-periods `w1, w2, w3 = -w1-w2` sit at the
//! midpoints of the period cell. All evaluation modules share this convention.
//!
//! The invariants are weighted Eisenstein sums over the nonzero lattice
//! points,
//!
//! ```text
//! g2 = 60 · Σ λ⁻⁴        g3 = 140 · Σ λ⁻⁶        disc = g2³ − 27·g3²
//! ```
//!
//! computed here from nome series after basis reduction. The normalized
//! copies `g2n = g2·scale⁴` and `g3n = g3·scale⁶` (with `scale` the length of
//! the shortest nonzero lattice vector) are dimensionless and invariant under
//! lattice rescaling, which makes them suitable for classification.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::theta::Engine;

/// Reject generator pairs whose half-period ratio is this close to real.
pub const COLLINEARITY_GUARD: f64 = 1e-12;

/// Default threshold on normalized invariant magnitude for [`classify`].
///
/// The nome series deliver ~1e-13 relative accuracy, so 1e-9 leaves four
/// orders of margin between "numerically zero" and "resolvably nonzero".
pub const CLASS_THRESHOLD: f64 = 1e-9;

/// Threshold on `|disc|·scale¹²` below which invariants are declared
/// numerically degenerate (extreme aspect-ratio lattices underflow here).
pub const DISC_GUARD: f64 = 1e-10;

/// An oriented pair of half-periods generating a nondegenerate lattice.
///
/// Construction normalizes orientation so that `Im(w2/w1) > 0`, negating
/// `w2` if necessary (which leaves the generated point set unchanged).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    w1: Complex64,
    w2: Complex64,
}

impl LatticeSpec {
    /// Build a lattice spec from two half-periods. See [`make_lattice`].
    pub fn new(w1: Complex64, w2: Complex64) -> Result<Self> {
        make_lattice(w1, w2)
    }

    /// First half-period.
    pub fn w1(&self) -> Complex64 {
        self.w1
    }

    /// Second half-period; `Im(w2/w1) > 0` always holds.
    pub fn w2(&self) -> Complex64 {
        self.w2
    }

    /// The three half-periods `(w1, w2, w3)` with `w1 + w2 + w3 = 0`.
    pub fn half_periods(&self) -> (Complex64, Complex64, Complex64) {
        half_periods(self)
    }
}

/// A basis for the same lattice with the half-period ratio reduced to the
/// standard fundamental domain `|Re τ| ≤ 1/2, |τ| ≥ 1`.
///
/// Reduction guarantees `|q| ≤ exp(−π·√3/2) ≈ 0.0658` for the nome
/// `q = exp(iπτ)`, so every series downstream converges in a handful of
/// terms at double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedBasis {
    /// Reduced first half-period.
    pub w1r: Complex64,
    /// Reduced second half-period.
    pub w2r: Complex64,
    /// Half-period ratio `w2r / w1r`, inside the fundamental domain.
    pub tau: Complex64,
    /// Nome `exp(iπ·tau)`.
    pub q: Complex64,
    /// Integer change of basis: row `i` gives `(m_i1, m_i2)` with
    /// `wir = m_i1·w1 + m_i2·w2` in terms of the originating spec.
    /// Its determinant is +1, so both bases generate the same lattice.
    pub basis_map: [[i64; 2]; 2],
}

impl ReducedBasis {
    /// Length of the shortest nonzero lattice vector.
    ///
    /// For a reduced basis this is `min(|2w1r|, |2w2r|, |2w1r ± 2w2r|)`.
    pub fn scale(&self) -> f64 {
        let p1 = 2.0 * self.w1r;
        let p2 = 2.0 * self.w2r;
        p1.norm()
            .min(p2.norm())
            .min((p1 + p2).norm())
            .min((p1 - p2).norm())
    }
}

/// The invariants `g2`, `g3`, the discriminant, and scale-normalized copies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub g2: Complex64,
    pub g3: Complex64,
    /// `g2³ − 27·g3²`; nonzero for every nondegenerate lattice.
    pub disc: Complex64,
    /// Modulus of the shortest nonzero lattice vector.
    pub scale: f64,
    /// `g2 · scale⁴` (dimensionless).
    pub g2n: Complex64,
    /// `g3 · scale⁶` (dimensionless).
    pub g3n: Complex64,
}

/// Which invariant, if any, vanishes for a lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassTag {
    /// `g2 = 0` (equianharmonic / hexagonal-symmetric lattices).
    G2Zero,
    /// `g3 = 0` (lemniscatic / square-symmetric lattices).
    G3Zero,
    /// Neither invariant vanishes.
    Generic,
}

/// Classification of a lattice by its vanishing invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeClass {
    pub tag: ClassTag,
    /// Normalized magnitude of the near-zero invariant (for `G2Zero` /
    /// `G3Zero`), or of the smaller of the two for `Generic`.
    pub residual: f64,
}

/// Construct a [`LatticeSpec`] from two half-periods, normalizing
/// orientation so `Im(w2/w1) > 0`.
///
/// Errors with [`Error::DegenerateLattice`] if either generator is zero or
/// non-finite, or if the pair is collinear (`|Im(w2/w1)| ≤ 1e-12`).
pub fn make_lattice(w1: Complex64, w2: Complex64) -> Result<LatticeSpec> {
    if !w1.re.is_finite() || !w1.im.is_finite() || !w2.re.is_finite() || !w2.im.is_finite() {
        return Err(Error::DegenerateLattice("non-finite half-period"));
    }
    if w1 == Complex64::new(0.0, 0.0) || w2 == Complex64::new(0.0, 0.0) {
        return Err(Error::DegenerateLattice("zero half-period"));
    }
    let ratio = w2 / w1;
    if !ratio.re.is_finite() || !ratio.im.is_finite() {
        return Err(Error::DegenerateLattice("half-period ratio overflow"));
    }
    if ratio.im.abs() <= COLLINEARITY_GUARD {
        return Err(Error::DegenerateLattice("collinear generators"));
    }
    let w2 = if ratio.im > 0.0 { w2 } else { -w2 };
    Ok(LatticeSpec { w1, w2 })
}

/// The three half-periods `(w1, w2, w3)` with `w3 = −w1 − w2`.
///
/// The midpoint lattices `w_p + Λ` are pairwise disjoint and disjoint
/// from `Λ` itself.
pub fn half_periods(l: &LatticeSpec) -> (Complex64, Complex64, Complex64) {
    (l.w1, l.w2, -l.w1 - l.w2)
}

/// Reduce the basis to the standard fundamental domain.
///
/// Alternates integer translations `τ → τ − n` and inversions `τ → −1/τ`
/// (with a 10⁴-step safety cap) while tracking the unimodular change of
/// basis, then rebuilds `tau` and the nome from the reduced generators.
/// Deterministic for a given input.
pub fn reduce_basis(l: &LatticeSpec) -> ReducedBasis {
    let mut tau = l.w2 / l.w1;
    // gamma = [[a, b], [c, d]] acting as tau -> (a*tau + b)/(c*tau + d),
    // composed left-to-right as moves are applied.
    let (mut a, mut b, mut c, mut d) = (1i64, 0i64, 0i64, 1i64);
    for _ in 0..10_000 {
        let n = tau.re.round();
        if n != 0.0 {
            tau.re -= n;
            let ni = n as i64;
            a -= ni * c;
            b -= ni * d;
        }
        if tau.norm() < 1.0 - 1e-14 {
            tau = -1.0 / tau;
            let (na, nb) = (-c, -d);
            c = a;
            d = b;
            a = na;
            b = nb;
        } else {
            break;
        }
    }
    // w2r = a*w2 + b*w1, w1r = c*w2 + d*w1.
    let w2r = a as f64 * l.w2 + b as f64 * l.w1;
    let w1r = c as f64 * l.w2 + d as f64 * l.w1;
    let tau = w2r / w1r;
    let q = (Complex64::i() * std::f64::consts::PI * tau).exp();
    ReducedBasis {
        w1r,
        w2r,
        tau,
        q,
        basis_map: [[d, c], [b, a]],
    }
}

/// Eisenstein series `G_k = Σ_{0≠λ∈Λ} λ⁻ᵏ` for even `k ≥ 4`.
///
/// Weights 4 and 6 are served by the nome series at full accuracy
/// (≤ 1e-12 relative after scale normalization); other even weights fall
/// back to the direct-sum oracle with its lower, estimated accuracy.
pub fn eisenstein_series(l: &LatticeSpec, k: i64) -> Result<Complex64> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::UnsupportedWeight(k));
    }
    match k {
        4 => Ok(Engine::new(l).g2 / 60.0),
        6 => Ok(Engine::new(l).g3 / 140.0),
        _ => {
            let plan = crate::oracle::TruncationPlan::default_plan();
            let (value, _err) = crate::oracle::g_direct(l, k, &plan)?;
            Ok(value)
        }
    }
}

/// Compute `g2 = 60·G4`, `g3 = 140·G6`, the discriminant, and normalized
/// copies.
///
/// Errors with [`Error::DegenerateInvariants`] when `|disc|·scale¹²` falls
/// below [`DISC_GUARD`]: that signals numerical failure (an extreme
/// aspect-ratio lattice whose nome underflows), not a valid lattice state.
pub fn invariants(l: &LatticeSpec) -> Result<Invariants> {
    invariants_from_engine(&Engine::new(l))
}

pub(crate) fn invariants_from_engine(eng: &Engine) -> Result<Invariants> {
    let g2 = eng.g2;
    let g3 = eng.g3;
    let disc = eng.disc;
    let scale = eng.scale;
    let s2 = scale * scale;
    let s4 = s2 * s2;
    let s6 = s4 * s2;
    let discn = disc.norm() * s4 * s4 * s4;
    if !discn.is_finite() || discn < DISC_GUARD {
        return Err(Error::DegenerateInvariants(discn));
    }
    Ok(Invariants {
        g2,
        g3,
        disc,
        scale,
        g2n: g2 * s4,
        g3n: g3 * s6,
    })
}

/// Classify by vanishing invariant using the default threshold
/// [`CLASS_THRESHOLD`] on the normalized magnitudes.
pub fn classify(inv: &Invariants) -> LatticeClass {
    classify_with(inv, CLASS_THRESHOLD)
}

/// Classify with an explicit threshold on `|g2n|` / `|g3n|`.
///
/// `disc ≠ 0` (enforced by [`invariants`]) keeps the two zero classes
/// mutually exclusive at any sane threshold; if an absurdly large threshold
/// puts both below it, the smaller residual wins.
pub fn classify_with(inv: &Invariants, threshold: f64) -> LatticeClass {
    let m2 = inv.g2n.norm();
    let m3 = inv.g3n.norm();
    if m3 <= threshold && (m2 > threshold || m3 <= m2) {
        LatticeClass {
            tag: ClassTag::G3Zero,
            residual: m3,
        }
    } else if m2 <= threshold {
        LatticeClass {
            tag: ClassTag::G2Zero,
            residual: m2,
        }
    } else {
        LatticeClass {
            tag: ClassTag::Generic,
            residual: m2.min(m3),
        }
    }
}
