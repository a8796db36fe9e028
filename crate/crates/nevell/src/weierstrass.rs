//! The Weierstrass functions ℘, ℘′, σ, ζ, the midpoint constants, and the
//! fourth-order Eisenstein function ζ₄.
//!
//! Everything is evaluated through the reduced-basis nome series: the
//! argument is mapped into the fundamental cell by lattice translation
//! (with quasi-period corrections for the non-periodic σ and ζ), then a
//! handful of theta terms deliver near machine accuracy.
//!
//! Pole handling is a contract, not an accident: a point within
//! `1e-9·scale` of a pole reports [`EvalValue::Pole`] with the pole order
//! instead of a huge finite value. Full tolerances are promised only for
//! points farther than `0.05·scale` from the pole lattice; in between,
//! results are best effort.

use num_complex::Complex64;

use crate::error::Result;
use crate::lattice::{half_periods, invariants_from_engine, LatticeSpec};
use crate::theta::Engine;

/// Relative snap distance below which evaluation reports a pole.
pub const POLE_SNAP: f64 = 1e-9;

/// Result of evaluating a meromorphic function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalValue {
    /// A finite complex value.
    Finite(Complex64),
    /// The point lies on (within snap distance of) a pole of the stated order.
    Pole { order: u32 },
}

impl EvalValue {
    /// The finite value, if any.
    pub fn finite(&self) -> Option<Complex64> {
        match self {
            EvalValue::Finite(v) => Some(*v),
            EvalValue::Pole { .. } => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, EvalValue::Pole { .. })
    }

    /// Unwrap a finite value; panics on a pole (test convenience).
    pub fn unwrap_finite(&self) -> Complex64 {
        self.finite().expect("unexpected pole")
    }
}

/// The three half-periods with their ℘-values and quasi-period constants,
/// computed once per lattice.
///
/// Indices follow the constructor's basis: `w[0] = w1`, `w[1] = w2`,
/// `w[2] = w3 = −w1−w2`, `e[p] = ℘(w[p])`, `eta[p] = ζ(w[p])`. Relabeling
/// the basis permutes these triples together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidpointSet {
    pub w: [Complex64; 3],
    pub e: [Complex64; 3],
    pub eta: [Complex64; 3],
}

/// Weierstrass ℘. Λ-periodic, even, with double poles on Λ.
pub fn wp(l: &LatticeSpec, z: Complex64) -> EvalValue {
    wp_eng(&Engine::new(l), z)
}

pub(crate) fn wp_eng(eng: &Engine, z: Complex64) -> EvalValue {
    let (z_red, _, _) = eng.reduce_z(z);
    if eng.dist_to_lattice(z_red) <= POLE_SNAP * eng.scale {
        return EvalValue::Pole { order: 2 };
    }
    EvalValue::Finite(eng.wp_red(z_red))
}

/// Derivative ℘′. Odd, with triple poles on Λ; vanishes exactly on the
/// three midpoint lattices.
pub fn wp_prime(l: &LatticeSpec, z: Complex64) -> EvalValue {
    wp_prime_eng(&Engine::new(l), z)
}

pub(crate) fn wp_prime_eng(eng: &Engine, z: Complex64) -> EvalValue {
    let (z_red, _, _) = eng.reduce_z(z);
    if eng.dist_to_lattice(z_red) <= POLE_SNAP * eng.scale {
        return EvalValue::Pole { order: 3 };
    }
    EvalValue::Finite(eng.wp_prime_red(z_red))
}

/// Weierstrass σ: entire, odd, simple zeros exactly on Λ, σ(z)/z → 1
/// at the origin.
pub fn sigma(l: &LatticeSpec, z: Complex64) -> Complex64 {
    Engine::new(l).sigma(z)
}

/// Weierstrass ζ (the logarithmic derivative of σ): odd, simple poles on Λ.
pub fn wzeta(l: &LatticeSpec, z: Complex64) -> EvalValue {
    wzeta_eng(&Engine::new(l), z)
}

pub(crate) fn wzeta_eng(eng: &Engine, z: Complex64) -> EvalValue {
    let (z_red, _, _) = eng.reduce_z(z);
    if eng.dist_to_lattice(z_red) <= POLE_SNAP * eng.scale {
        return EvalValue::Pole { order: 1 };
    }
    EvalValue::Finite(eng.zeta(z))
}

/// Quasi-period constants `η_p = ζ(ω_p)` for the constructor's
/// half-periods. They satisfy `η1 + η2 + η3 = 0` and the Legendre relation
/// `η1·w2 − η2·w1 = iπ/2`.
pub fn eta_constants(l: &LatticeSpec) -> (Complex64, Complex64, Complex64) {
    let eng = Engine::new(l);
    let (w1, w2, w3) = half_periods(l);
    (eng.zeta(w1), eng.zeta(w2), eng.zeta(w3))
}

/// Compute the midpoint data `e_p = ℘(ω_p)`, `η_p = ζ(ω_p)` for all three
/// half-periods. Errors if the lattice invariants are numerically
/// degenerate.
pub fn midpoint_constants(l: &LatticeSpec) -> Result<MidpointSet> {
    let eng = Engine::new(l);
    midpoint_constants_eng(l, &eng)
}

pub(crate) fn midpoint_constants_eng(l: &LatticeSpec, eng: &Engine) -> Result<MidpointSet> {
    invariants_from_engine(eng)?;
    let (w1, w2, w3) = half_periods(l);
    let w = [w1, w2, w3];
    let mut e = [Complex64::new(0.0, 0.0); 3];
    let mut eta = [Complex64::new(0.0, 0.0); 3];
    for p in 0..3 {
        let (z_red, _, _) = eng.reduce_z(w[p]);
        e[p] = eng.wp_red(z_red);
        eta[p] = eng.zeta(w[p]);
    }
    Ok(MidpointSet { w, e, eta })
}

/// Fourth-order Eisenstein function `ζ₄(z) = Σ_λ (z−λ)⁻⁴`, with
/// quadruple poles on Λ.
///
/// Computed as `℘² − g2/12`, which reuses the hardened ℘ path; the
/// `℘″/6` route and the direct lattice sum serve as cross-checks in the
/// test suite.
pub fn zeta4(l: &LatticeSpec, z: Complex64) -> EvalValue {
    zeta4_eng(&Engine::new(l), z)
}

pub(crate) fn zeta4_eng(eng: &Engine, z: Complex64) -> EvalValue {
    let (z_red, _, _) = eng.reduce_z(z);
    if eng.dist_to_lattice(z_red) <= POLE_SNAP * eng.scale {
        return EvalValue::Pole { order: 4 };
    }
    let p = eng.wp_red(z_red);
    EvalValue::Finite(p * p - eng.g2 / 12.0)
}
