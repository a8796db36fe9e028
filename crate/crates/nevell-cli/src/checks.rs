//! The identity suite behind `nevell check`: evaluates the defining
//! relations of the lattice functions at seeded random regular points and
//! reports one residual per identity.

use num_complex::Complex64;

use nevell::lattice::{classify_with, invariants, ClassTag, LatticeSpec};
use nevell::neville::{preferred_primitive, primitive_j, PrimitiveIndex};
use nevell::sampling::{regular_points, SplitMix64};
use nevell::weierstrass::{
    eta_constants, midpoint_constants, sigma, wp, wp_prime, wzeta, zeta4,
};

/// Outcome of one identity line.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    /// Max normalized residual observed (None for purely informational lines).
    pub residual: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckLine {
    fn checked(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        CheckLine {
            name: name.into(),
            residual: Some(residual),
            threshold,
            pass: residual <= threshold,
        }
    }

    fn info(name: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            residual: None,
            threshold: f64::INFINITY,
            pass: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub class: ClassTag,
    pub class_residual: f64,
    pub lines: Vec<CheckLine>,
}

impl CheckOutcome {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

fn rel(diff: Complex64, scale: f64) -> f64 {
    diff.norm() / scale
}

/// Run the full identity suite. FD-limited lines use
/// `max(tol, 1e-6)` as their threshold; everything else uses `tol`.
pub fn run_checks(l: &LatticeSpec, tol: f64, seed: u64) -> nevell::Result<CheckOutcome> {
    let inv = invariants(l)?;
    let class = classify_with(&inv, nevell::lattice::CLASS_THRESHOLD);
    let ms = midpoint_constants(l)?;
    let [e1, e2, e3] = ms.e;
    let emax = e1.norm().max(e2.norm()).max(e3.norm());
    let fd_tol = tol.max(1e-6);

    let mut lines = Vec::new();

    // Symmetric-function identities of the midpoint constants.
    lines.push(CheckLine::checked(
        "e1+e2+e3 = 0",
        rel(e1 + e2 + e3, emax),
        tol,
    ));
    lines.push(CheckLine::checked(
        "e1*e2*e3 = g3/4",
        rel(e1 * e2 * e3 - inv.g3 / 4.0, emax.powi(3).max(inv.g3.norm() / 4.0)),
        tol,
    ));
    lines.push(CheckLine::checked(
        "e2*e3+e3*e1+e1*e2 = -g2/4",
        rel(
            e2 * e3 + e3 * e1 + e1 * e2 + inv.g2 / 4.0,
            emax.powi(2).max(inv.g2.norm() / 4.0),
        ),
        tol,
    ));

    // Quasi-period constants.
    let (eta1, eta2, eta3) = eta_constants(l);
    let etamax = eta1.norm().max(eta2.norm()).max(eta3.norm());
    lines.push(CheckLine::checked(
        "eta1+eta2+eta3 = 0",
        rel(eta1 + eta2 + eta3, etamax),
        tol,
    ));
    let legendre = eta1 * l.w2() - eta2 * l.w1();
    lines.push(CheckLine::checked(
        "eta1*w2 - eta2*w1 = i*pi/2",
        rel(
            legendre - Complex64::new(0.0, std::f64::consts::FRAC_PI_2),
            std::f64::consts::FRAC_PI_2,
        ),
        tol,
    ));

    let pts = regular_points(l, 100, seed);

    // Differential identity (cubic factorization of ℘′²).
    let mut worst = 0.0f64;
    for &z in &pts {
        let p = wp(l, z).unwrap_finite();
        let dp = wp_prime(l, z).unwrap_finite();
        let rhs = 4.0 * (p - e1) * (p - e2) * (p - e3);
        worst = worst.max(rel(dp * dp - rhs, 1.0 + dp.norm_sqr()));
    }
    lines.push(CheckLine::checked(
        "wp'^2 = 4(wp-e1)(wp-e2)(wp-e3)",
        worst,
        tol,
    ));

    // ζ₄ against its second route, ℘″/6 by central difference of ℘′.
    let h = 1e-5 * inv.scale;
    let mut worst = 0.0f64;
    for &z in pts.iter().take(20) {
        let z4 = zeta4(l, z).unwrap_finite();
        let wpp = (wp_prime(l, z + h).unwrap_finite() - wp_prime(l, z - h).unwrap_finite())
            / (2.0 * h);
        worst = worst.max(rel(z4 - wpp / 6.0, 1.0 + z4.norm()));
    }
    lines.push(CheckLine::checked(
        "zeta4 = wp''/6 (central difference)",
        worst,
        fd_tol,
    ));

    // ℘ periodicity over random lattice shifts.
    let mut rng = SplitMix64::new(seed ^ 0x5eed);
    let mut worst = 0.0f64;
    for &z in pts.iter().take(20) {
        let m = rng.range(-3.0, 3.0).round();
        let n = rng.range(-3.0, 3.0).round();
        let shift = 2.0 * m * l.w1() + 2.0 * n * l.w2();
        let a = wp(l, z).unwrap_finite();
        let b = wp(l, z + shift).unwrap_finite();
        worst = worst.max(rel(a - b, 1.0 + a.norm()));
    }
    lines.push(CheckLine::checked("wp(z+lambda) = wp(z)", worst, tol));

    // Parity.
    let mut w_even = 0.0f64;
    let mut w_odd = 0.0f64;
    let mut w_sig = 0.0f64;
    let mut w_zeta = 0.0f64;
    for &z in pts.iter().take(20) {
        let p = wp(l, z).unwrap_finite();
        w_even = w_even.max(rel(p - wp(l, -z).unwrap_finite(), 1.0 + p.norm()));
        let dp = wp_prime(l, z).unwrap_finite();
        w_odd = w_odd.max(rel(dp + wp_prime(l, -z).unwrap_finite(), 1.0 + dp.norm()));
        let s = sigma(l, z);
        w_sig = w_sig.max(rel(s + sigma(l, -z), 1.0 + s.norm()));
        let zv = wzeta(l, z).unwrap_finite();
        w_zeta = w_zeta.max(rel(zv + wzeta(l, -z).unwrap_finite(), 1.0 + zv.norm()));
    }
    lines.push(CheckLine::checked("wp(-z) = wp(z)", w_even, tol));
    lines.push(CheckLine::checked("wp'(-z) = -wp'(z)", w_odd, tol));
    lines.push(CheckLine::checked("sigma(-z) = -sigma(z)", w_sig, tol));
    lines.push(CheckLine::checked("zeta(-z) = -zeta(z)", w_zeta, tol));

    // σ quasi-periodicity for all three half-periods.
    let mut worst = 0.0f64;
    for &z in pts.iter().take(5) {
        for p in 0..3 {
            let lhs = sigma(l, z + 2.0 * ms.w[p]);
            let rhs = -(2.0 * ms.eta[p] * (z + ms.w[p])).exp() * sigma(l, z);
            worst = worst.max(rel(lhs - rhs, lhs.norm()));
        }
    }
    lines.push(CheckLine::checked(
        "sigma(z+2w_p) = -exp(2 eta_p (z+w_p)) sigma(z)",
        worst,
        tol,
    ));

    // Primitive functions: square-root identity and residue normalization.
    for p in PrimitiveIndex::ALL {
        let mut worst = 0.0f64;
        for &z in &pts {
            let j = primitive_j(l, p, z).unwrap_finite();
            let pv = wp(l, z).unwrap_finite();
            worst = worst.max(rel(j * j - (pv - ms.e[p.index()]), 1.0 + pv.norm()));
        }
        lines.push(CheckLine::checked(
            format!("{p}^2 = wp - e{}", p.label()),
            worst,
            tol,
        ));
    }
    for p in PrimitiveIndex::ALL {
        let f = |h: f64| {
            let z = Complex64::new(h, 0.0);
            z * primitive_j(l, p, z).unwrap_finite()
        };
        let extrap = (100.0 * f(1e-4) - f(1e-3)) / 99.0;
        lines.push(CheckLine::checked(
            format!("z*{p}(z) -> 1"),
            (extrap - 1.0).norm(),
            tol.max(1e-8),
        ));
    }

    // Class-specific identities and square-root existence lines.
    match class.tag {
        ClassTag::G3Zero => {
            let p0 = preferred_primitive(l)?.expect("G3Zero implies a preferred index");
            let i = Complex64::i();
            let mut w_rot = 0.0f64;
            let mut w_j_self = 0.0f64;
            let mut w_sqrt = 0.0f64;
            for &z in pts.iter().take(100) {
                let pv = wp(l, z).unwrap_finite();
                let piz = wp(l, i * z).unwrap_finite();
                w_rot = w_rot.max(rel(piz + pv, 1.0 + pv.norm()));
                let j = primitive_j(l, p0, z).unwrap_finite();
                let jiz = primitive_j(l, p0, i * z).unwrap_finite();
                w_j_self = w_j_self.max(rel(i * jiz - j, 1.0 + j.norm()));
                w_sqrt = w_sqrt.max(rel(j * j - pv, 1.0 + pv.norm()));
            }
            lines.push(CheckLine::checked("wp(iz) = -wp(z)", w_rot, tol));
            lines.push(CheckLine::checked(
                format!("i*{p0}(iz) = {p0}(z)"),
                w_j_self,
                tol,
            ));
            // The rotation swaps the other two primitive functions.
            let [q, r]: [PrimitiveIndex; 2] = match p0 {
                PrimitiveIndex::P1 => [PrimitiveIndex::P2, PrimitiveIndex::P3],
                PrimitiveIndex::P2 => [PrimitiveIndex::P3, PrimitiveIndex::P1],
                PrimitiveIndex::P3 => [PrimitiveIndex::P1, PrimitiveIndex::P2],
            };
            let mut w_qr = 0.0f64;
            let mut w_rq = 0.0f64;
            for &z in pts.iter().take(100) {
                let jq = primitive_j(l, q, z).unwrap_finite();
                let jr = primitive_j(l, r, z).unwrap_finite();
                let jq_iz = primitive_j(l, q, i * z).unwrap_finite();
                let jr_iz = primitive_j(l, r, i * z).unwrap_finite();
                w_rq = w_rq.max(rel(jr - i * jq_iz, 1.0 + jr.norm()));
                w_qr = w_qr.max(rel(jq - i * jr_iz, 1.0 + jq.norm()));
            }
            lines.push(CheckLine::checked(format!("{r}(z) = i*{q}(iz)"), w_rq, tol));
            lines.push(CheckLine::checked(format!("{q}(z) = i*{r}(iz)"), w_qr, tol));
            lines.push(CheckLine::checked(
                format!("sqrt(wp): exists, witness {p0} ({p0}^2 = wp)"),
                w_sqrt,
                tol,
            ));
            lines.push(CheckLine::info(format!(
                "sqrt(zeta4): not expected (|g2n| = {:.3e})",
                inv.g2n.norm()
            )));
        }
        ClassTag::G2Zero => {
            let mut w_sqrt = 0.0f64;
            for &z in &pts {
                let pv = wp(l, z).unwrap_finite();
                let z4 = zeta4(l, z).unwrap_finite();
                w_sqrt = w_sqrt.max(rel(pv * pv - z4, 1.0 + z4.norm()));
            }
            lines.push(CheckLine::checked("zeta4 = wp^2", w_sqrt, tol));
            lines.push(CheckLine::checked(
                "sqrt(zeta4): exists, witness +-wp (wp^2 = zeta4)",
                w_sqrt,
                tol,
            ));
            lines.push(CheckLine::info(format!(
                "sqrt(wp): not expected (|g3n| = {:.3e})",
                inv.g3n.norm()
            )));
        }
        ClassTag::Generic => {
            lines.push(CheckLine::info(format!(
                "sqrt(wp): not expected (|g3n| = {:.3e})",
                inv.g3n.norm()
            )));
            lines.push(CheckLine::info(format!(
                "sqrt(zeta4): not expected (|g2n| = {:.3e})",
                inv.g2n.norm()
            )));
        }
    }

    Ok(CheckOutcome {
        class: class.tag,
        class_residual: class.residual,
        lines,
    })
}
