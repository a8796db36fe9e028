//! Internal nome-series evaluation engine.
//!
//! Everything downstream of basis reduction funnels through this module: it
//! holds the reduced basis, the nome `q = exp(iπτ)`, the invariants from
//! Eisenstein q-series, and the odd theta series used to assemble σ, ζ, ℘
//! and ℘′. Reduction guarantees `|q| ≤ 0.066`, so every series here reaches
//! double-precision accuracy within a handful of terms.
//!
//! This module is not part of the public contract; only its consumers
//! (`lattice`, `weierstrass`, `neville`) are.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::lattice::{reduce_basis, LatticeSpec, ReducedBasis};

/// Stop q-series when terms fall below this fraction of the running sum.
const SERIES_EPS: f64 = 1e-18;

/// Evaluation context for one lattice: reduced basis plus cached constants.
#[derive(Debug, Clone)]
pub(crate) struct Engine {
    pub basis: ReducedBasis,
    /// Shortest nonzero lattice vector length.
    pub scale: f64,
    /// Invariant `g2 = 60·G4`.
    pub g2: Complex64,
    /// Invariant `g3 = 140·G6`.
    pub g3: Complex64,
    /// Discriminant `g2³ − 27·g3²`, computed from the cusp-form product
    /// (no cancellation for elongated lattices).
    pub disc: Complex64,
    /// Quasi-period `ζ(w1r)` of the reduced basis.
    pub eta1r: Complex64,
    /// Quasi-period `ζ(w2r)`, from the Legendre relation.
    pub eta2r: Complex64,
    /// Coefficients `(-1)^n q^{n(n+1)}` of the reduced odd theta series.
    coeff: Vec<Complex64>,
    /// `f'(0)` for the series below (needed to normalize σ).
    fp0: Complex64,
}

/// Values of the reduced odd theta series and its first three derivatives
/// at one argument:
///
/// ```text
/// f(v) = Σ_{n≥0} (-1)^n q^{n(n+1)} sin((2n+1)v)
/// ```
///
/// `f` is θ₁ stripped of the constant prefactor `2q^{1/4}`, which cancels
/// in every ratio used by the elliptic functions.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ThetaValues {
    pub f: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
}

impl Engine {
    pub fn new(l: &LatticeSpec) -> Self {
        let basis = reduce_basis(l);
        let scale = basis.scale();
        let q = basis.q;

        // Eisenstein series in the Fourier nome qb = q^2 = exp(2πiτ):
        //   E4 = 1 + 240 Σ n³ qbⁿ/(1−qbⁿ),  E6 = 1 − 504 Σ n⁵ qbⁿ/(1−qbⁿ).
        let qb = q * q;
        let mut e4 = Complex64::new(1.0, 0.0);
        let mut e6 = Complex64::new(1.0, 0.0);
        let mut qb_pow = Complex64::new(1.0, 0.0);
        for n in 1..200u32 {
            qb_pow *= qb;
            let lambert = qb_pow / (1.0 - qb_pow);
            let n3 = (n as f64).powi(3);
            let t4 = 240.0 * n3 * lambert;
            let t6 = 504.0 * n3 * (n as f64) * (n as f64) * lambert;
            e4 += t4;
            e6 -= t6;
            if t4.norm() < SERIES_EPS * e4.norm() && t6.norm() < SERIES_EPS * e6.norm() {
                break;
            }
        }
        let half_pi_over_w1 = PI / (2.0 * basis.w1r);
        let c4 = half_pi_over_w1.powi(4);
        let c6 = half_pi_over_w1.powi(6);
        let g2 = c4 * (4.0 / 3.0) * e4;
        let g3 = c6 * (8.0 / 27.0) * e6;

        // Discriminant via the cusp-form product,
        //   g2³ − 27·g3² = (π/(2w1r))¹² · 4096 · qb · Π (1 − qbⁿ)²⁴,
        // which stays accurate where the direct difference of near-equal
        // cubes/squares cancels to noise (elongated lattices, |qb| → 0).
        let mut prod24 = Complex64::new(1.0, 0.0);
        let mut qb_pow = Complex64::new(1.0, 0.0);
        for _ in 1..200u32 {
            qb_pow *= qb;
            if qb_pow.norm() < 1e-20 {
                break;
            }
            let f = 1.0 - qb_pow;
            let f2 = f * f;
            let f4 = f2 * f2;
            let f8 = f4 * f4;
            prod24 *= f8 * f8 * f8;
        }
        let disc = c4 * c4 * c4 * 4096.0 * qb * prod24;

        // Odd theta coefficients (-1)^n q^{n(n+1)}, built by running product
        // q^{n(n+1)} = q^{(n-1)n} · q^{2n}. With |q| ≤ 0.066 and
        // |Im v| ≤ π·Im(τ)/2 after argument reduction, term n is bounded by
        // |q|^(n²−1/2); n = 8 is far past double precision for the
        // worst-case nome.
        let mut coeff = Vec::with_capacity(9);
        let mut acc = Complex64::new(1.0, 0.0);
        let mut q2n = Complex64::new(1.0, 0.0);
        let mut sign = 1.0;
        for n in 0..=8u32 {
            if n > 0 {
                q2n *= q * q;
                acc *= q2n;
            }
            coeff.push(sign * acc);
            sign = -sign;
        }

        // f'(0) = Σ (2n+1)·c_n and f'''(0) = −Σ (2n+1)³·c_n give the
        // quasi-period of the reduced basis:
        //   η1 = −π²/(12·w1r) · θ₁'''(0)/θ₁'(0).
        let mut fp0 = Complex64::new(0.0, 0.0);
        let mut fppp0 = Complex64::new(0.0, 0.0);
        for (n, c) in coeff.iter().enumerate() {
            let m = (2 * n + 1) as f64;
            fp0 += m * c;
            fppp0 -= m * m * m * c;
        }
        let eta1r = -(PI * PI / (12.0 * basis.w1r)) * (fppp0 / fp0);
        // Legendre: η1·w2 − η2·w1 = iπ/2 for an oriented basis.
        let eta2r = (eta1r * basis.w2r - Complex64::new(0.0, PI / 2.0)) / basis.w1r;

        Engine {
            basis,
            scale,
            g2,
            g3,
            disc,
            eta1r,
            eta2r,
            coeff,
            fp0,
        }
    }

    /// Split `z = z_red + m·2w1r + n·2w2r` with `z_red` in the centered
    /// fundamental cell (coefficients in `[-1/2, 1/2]`).
    pub fn reduce_z(&self, z: Complex64) -> (Complex64, i64, i64) {
        let p1 = 2.0 * self.basis.w1r;
        let p2 = 2.0 * self.basis.w2r;
        // Real coordinates of z in the (p1, p2) frame.
        let det = (p1.conj() * p2).im;
        let x = (p2.conj() * z).im / (p2.conj() * p1).im;
        let y = (p1.conj() * z).im / det;
        let m = x.round();
        let n = y.round();
        let z_red = z - m * p1 - n * p2;
        (z_red, m as i64, n as i64)
    }

    /// Distance from a cell-reduced point to the nearest lattice point.
    pub fn dist_to_lattice(&self, z_red: Complex64) -> f64 {
        let p1 = 2.0 * self.basis.w1r;
        let p2 = 2.0 * self.basis.w2r;
        let mut best = z_red.norm();
        for m in -1..=1 {
            for n in -1..=1 {
                if m == 0 && n == 0 {
                    continue;
                }
                let d = (z_red - m as f64 * p1 - n as f64 * p2).norm();
                if d < best {
                    best = d;
                }
            }
        }
        best
    }

    /// Theta series and derivatives at `v = πz/(2w1r)`.
    pub fn theta(&self, v: Complex64) -> ThetaValues {
        let mut f = Complex64::new(0.0, 0.0);
        let mut f1 = Complex64::new(0.0, 0.0);
        let mut f2 = Complex64::new(0.0, 0.0);
        let mut f3 = Complex64::new(0.0, 0.0);
        for (n, c) in self.coeff.iter().enumerate() {
            let m = (2 * n + 1) as f64;
            let (s, co) = sin_cos(m * v);
            f += c * s;
            f1 += c * m * co;
            f2 -= c * m * m * s;
            f3 -= c * m * m * m * co;
        }
        ThetaValues { f, f1, f2, f3 }
    }

    fn v_of(&self, z: Complex64) -> Complex64 {
        PI * z / (2.0 * self.basis.w1r)
    }

    /// ℘ at a cell-reduced point.
    pub fn wp_red(&self, z_red: Complex64) -> Complex64 {
        let v = self.v_of(z_red);
        let t = self.theta(v);
        let r1 = t.f1 / t.f;
        let fac = PI / (2.0 * self.basis.w1r);
        -self.eta1r / self.basis.w1r - fac * fac * (t.f2 / t.f - r1 * r1)
    }

    /// ℘′ at a cell-reduced point.
    pub fn wp_prime_red(&self, z_red: Complex64) -> Complex64 {
        let v = self.v_of(z_red);
        let t = self.theta(v);
        let r1 = t.f1 / t.f;
        let fac = PI / (2.0 * self.basis.w1r);
        -fac * fac * fac * (t.f3 / t.f - 3.0 * (t.f2 / t.f) * r1 + 2.0 * r1 * r1 * r1)
    }

    /// Weierstrass ζ at any point not on Λ, via quasi-period correction.
    pub fn zeta(&self, z: Complex64) -> Complex64 {
        let (z_red, m, n) = self.reduce_z(z);
        let v = self.v_of(z_red);
        let t = self.theta(v);
        let base = self.eta1r * z_red / self.basis.w1r
            + (PI / (2.0 * self.basis.w1r)) * (t.f1 / t.f);
        base + 2.0 * m as f64 * self.eta1r + 2.0 * n as f64 * self.eta2r
    }

    /// Weierstrass σ at any point, via quasi-period correction:
    /// `σ(z + Ω) = ε·exp(η_Ω·(z + Ω/2))·σ(z)` with `ε = (−1)^{m+n+mn}`.
    pub fn sigma(&self, z: Complex64) -> Complex64 {
        let (z_red, m, n) = self.reduce_z(z);
        let v = self.v_of(z_red);
        let t = self.theta(v);
        let w1 = self.basis.w1r;
        let base = (2.0 * w1 / PI)
            * (self.eta1r * z_red * z_red / (2.0 * w1)).exp()
            * (t.f / self.fp0);
        if m == 0 && n == 0 {
            return base;
        }
        let omega = 2.0 * m as f64 * w1 + 2.0 * n as f64 * self.basis.w2r;
        let eta_omega = 2.0 * m as f64 * self.eta1r + 2.0 * n as f64 * self.eta2r;
        let eps = if (m + n + m * n) % 2 == 0 { 1.0 } else { -1.0 };
        eps * (eta_omega * (z_red + 0.5 * omega)).exp() * base
    }
}

/// sin and cos of a complex argument in one pass.
fn sin_cos(v: Complex64) -> (Complex64, Complex64) {
    // sin(x+iy) = sin x cosh y + i cos x sinh y; cos likewise.
    let (sx, cx) = v.re.sin_cos();
    let (shy, chy) = (v.im.sinh(), v.im.cosh());
    (
        Complex64::new(sx * chy, cx * shy),
        Complex64::new(cx * chy, -sx * shy),
    )
}
