//! Seeded property checks across random lattices: homogeneity and symmetry
//! laws, reduction invariants, periodicity, parity, and the zero/pole
//! structure of the primitive functions.

use num_complex::Complex64;

use nevell::lattice::{
    classify, half_periods, invariants, make_lattice, reduce_basis, ClassTag, LatticeSpec,
};
use nevell::neville::{primitive_j, PrimitiveIndex};
use nevell::obstruction::{wp_sqrt_obstruction, wp_zeros, zeta4_sqrt_obstruction};
use nevell::sampling::{generic_points, regular_points, SplitMix64};
use nevell::weierstrass::{
    eta_constants, midpoint_constants, sigma, wp, wp_prime, zeta4, EvalValue,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random nondegenerate lattice, well inside the numerically safe region.
fn random_lattice(rng: &mut SplitMix64) -> LatticeSpec {
    let r = rng.range(0.6, 1.6);
    let th = rng.range(0.0, std::f64::consts::TAU);
    let w1 = r * c(th.cos(), th.sin());
    let tau = c(rng.range(-0.45, 0.45), rng.range(0.85, 2.2));
    make_lattice(w1, tau * w1).unwrap()
}

fn random_unit(rng: &mut SplitMix64) -> Complex64 {
    let r = rng.range(0.5, 2.0);
    let th = rng.range(0.0, std::f64::consts::TAU);
    r * c(th.cos(), th.sin())
}

#[test]
fn public_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<LatticeSpec>();
    assert_send_sync::<nevell::ReducedBasis>();
    assert_send_sync::<nevell::Invariants>();
    assert_send_sync::<nevell::MidpointSet>();
    assert_send_sync::<nevell::EvalValue>();
    assert_send_sync::<nevell::ObstructionReport>();
    assert_send_sync::<nevell::ZeroReport>();
    assert_send_sync::<nevell::PrimitiveIndex>();
}

#[test]
fn invariant_homogeneity_under_rescaling() {
    let mut rng = SplitMix64::new(11);
    for _ in 0..8 {
        let l = random_lattice(&mut rng);
        let f = random_unit(&mut rng);
        let scaled = make_lattice(f * l.w1(), f * l.w2()).unwrap();
        let a = invariants(&l).unwrap();
        let b = invariants(&scaled).unwrap();
        let f4 = f.powi(4);
        let f6 = f.powi(6);
        assert!((b.g2 - a.g2 / f4).norm() <= 1e-10 * a.g2.norm() / f4.norm());
        assert!((b.g3 - a.g3 / f6).norm() <= 1e-10 * a.g3.norm() / f6.norm());
        // The real normalizer scale⁴ leaves a phase (|f|/f)⁴ on g2n under
        // complex rescaling; classification only consumes the magnitudes,
        // which are fully invariant.
        let phase4 = (f / f.norm()).powi(4);
        let phase6 = (f / f.norm()).powi(6);
        assert!((b.g2n * phase4 - a.g2n).norm() <= 1e-12 * a.g2n.norm().max(1.0));
        assert!((b.g3n * phase6 - a.g3n).norm() <= 1e-12 * a.g3n.norm().max(1.0));
        assert!((b.g2n.norm() - a.g2n.norm()).abs() <= 1e-12 * a.g2n.norm().max(1.0));
        assert!((b.g3n.norm() - a.g3n.norm()).abs() <= 1e-12 * a.g3n.norm().max(1.0));
    }
}

#[test]
fn invariant_homogeneity_under_positive_real_rescaling() {
    // For positive real c the normalized pair is unchanged outright.
    let l = make_lattice(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let a = invariants(&l).unwrap();
    let scaled = make_lattice(3.0 * l.w1(), 3.0 * l.w2()).unwrap();
    let b = invariants(&scaled).unwrap();
    assert!((b.g2 - a.g2 / 81.0).norm() <= 1e-12 * a.g2.norm());
    assert!((b.g3 - a.g3 / 729.0).norm() <= 1e-12 * a.g3.norm());
    assert!((b.g2n - a.g2n).norm() <= 1e-12 * a.g2n.norm());
    assert!((b.g3n - a.g3n).norm() <= 1e-12 * a.g3n.norm());
}

#[test]
fn square_symmetric_lattices_have_vanishing_g3() {
    // Any lattice fixed by multiplication by i is a rotated/scaled copy of
    // the square lattice; its g3 must vanish.
    let mut rng = SplitMix64::new(12);
    for _ in 0..6 {
        let f = random_unit(&mut rng);
        let l = make_lattice(f, f * Complex64::i()).unwrap();
        let inv = invariants(&l).unwrap();
        assert!(inv.g3n.norm() < 1e-10, "g3n = {}", inv.g3n);
        assert_eq!(classify(&inv).tag, ClassTag::G3Zero);
    }
}

#[test]
fn reduction_idempotent_and_unimodular_both_ways() {
    let mut rng = SplitMix64::new(13);
    for _ in 0..10 {
        let l = random_lattice(&mut rng);
        let rb = reduce_basis(&l);
        let again = reduce_basis(&make_lattice(rb.w1r, rb.w2r).unwrap());
        assert!((rb.tau - again.tau).norm() < 1e-14);

        // Reduced generators are integer combinations of the originals...
        let m = rb.basis_map;
        assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        // ...and vice versa: solve the originals in the reduced frame and
        // check integrality.
        for w in [l.w1(), l.w2()] {
            let det = (rb.w1r.conj() * rb.w2r).im;
            let x = (rb.w2r.conj() * w).im / (rb.w2r.conj() * rb.w1r).im;
            let y = (rb.w1r.conj() * w).im / det;
            assert!((x - x.round()).abs() < 1e-9, "x = {x}");
            assert!((y - y.round()).abs() < 1e-9, "y = {y}");
        }
    }
}

#[test]
fn elliptic_functions_are_periodic_at_random_lattice_shifts() {
    let mut rng = SplitMix64::new(14);
    for _ in 0..5 {
        let l = random_lattice(&mut rng);
        let pts = regular_points(&l, 4, rng.next_u64());
        for z in pts {
            let m = rng.range(-3.0, 3.0).round();
            let n = rng.range(-3.0, 3.0).round();
            let shift = 2.0 * m * l.w1() + 2.0 * n * l.w2();
            let a = wp(&l, z).unwrap_finite();
            let b = wp(&l, z + shift).unwrap_finite();
            assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
            let a = wp_prime(&l, z).unwrap_finite();
            let b = wp_prime(&l, z + shift).unwrap_finite();
            assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
            let a = zeta4(&l, z).unwrap_finite();
            let b = zeta4(&l, z + shift).unwrap_finite();
            assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
        }
    }
}

#[test]
fn parity_of_all_functions() {
    let mut rng = SplitMix64::new(15);
    for _ in 0..5 {
        let l = random_lattice(&mut rng);
        for z in regular_points(&l, 4, rng.next_u64()) {
            let even = wp(&l, z).unwrap_finite() - wp(&l, -z).unwrap_finite();
            assert!(even.norm() <= 1e-10 * (1.0 + wp(&l, z).unwrap_finite().norm()));
            let odd = wp_prime(&l, z).unwrap_finite() + wp_prime(&l, -z).unwrap_finite();
            assert!(odd.norm() <= 1e-10 * (1.0 + wp_prime(&l, z).unwrap_finite().norm()));
            let odd = sigma(&l, z) + sigma(&l, -z);
            assert!(odd.norm() <= 1e-10 * (1.0 + sigma(&l, z).norm()));
        }
    }
}

#[test]
fn wp_homogeneity_at_random_scales() {
    let mut rng = SplitMix64::new(16);
    for _ in 0..6 {
        let l = random_lattice(&mut rng);
        let f = random_unit(&mut rng);
        let scaled = make_lattice(f * l.w1(), f * l.w2()).unwrap();
        for z in regular_points(&l, 3, rng.next_u64()) {
            let a = wp(&scaled, f * z).unwrap_finite();
            let b = wp(&l, z).unwrap_finite() / (f * f);
            assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()), "{a} vs {b}");
        }
    }
}

#[test]
fn j_square_root_identity_on_grid() {
    // |J_p(z)² − (℘(z) − e_p)| ≤ 1e-9·(1+|℘(z)|) over a 100-point grid.
    let mut rng = SplitMix64::new(17);
    for _ in 0..3 {
        let l = random_lattice(&mut rng);
        let ms = midpoint_constants(&l).unwrap();
        for z in regular_points(&l, 100, 99) {
            let p_val = wp(&l, z).unwrap_finite();
            for p in PrimitiveIndex::ALL {
                let j = primitive_j(&l, p, z).unwrap_finite();
                let rhs = p_val - ms.e[p.index()];
                assert!(
                    (j * j - rhs).norm() <= 1e-9 * (1.0 + p_val.norm()),
                    "lattice ({}, {}), p = {p}, z = {z}",
                    l.w1(),
                    l.w2()
                );
            }
        }
    }
}

#[test]
fn j_residue_normalization_by_richardson_extrapolation() {
    // z·J_p(z) at z = 1e-3, 1e-4 extrapolates to 1 within 1e-8
    // (the expansion of z·J_p is even in z).
    let mut rng = SplitMix64::new(18);
    for _ in 0..3 {
        let l = random_lattice(&mut rng);
        let dir = {
            let th = rng.range(0.0, std::f64::consts::TAU);
            c(th.cos(), th.sin())
        };
        for p in PrimitiveIndex::ALL {
            let f = |h: f64| {
                let z = h * dir;
                z * primitive_j(&l, p, z).unwrap_finite()
            };
            let a = f(1e-3);
            let b = f(1e-4);
            let extrap = (100.0 * b - a) / 99.0;
            assert!((extrap - 1.0).norm() < 1e-8, "extrap = {extrap}");
        }
    }
}

#[test]
fn j_is_odd_at_random_points() {
    let mut rng = SplitMix64::new(19);
    let l = random_lattice(&mut rng);
    for z in regular_points(&l, 6, 5) {
        for p in PrimitiveIndex::ALL {
            let a = primitive_j(&l, p, z).unwrap_finite();
            let b = primitive_j(&l, p, -z).unwrap_finite();
            assert!((a + b).norm() <= 1e-10 * (1.0 + a.norm()));
        }
    }
}

#[test]
fn j_zero_structure_by_minimum_modulus_scan() {
    // On a 64×64 cell grid, |J_p| may only dip toward zero near the
    // midpoint lattice ω_p + Λ. The scan threshold comes from the
    // factorization |J_p|² = |℘ − e_p|: away from ω_p + Λ that product is
    // bounded below by the distance to the nearest e-collision.
    let l = make_lattice(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let rb = reduce_basis(&l);
    let (p1, p2) = (2.0 * rb.w1r, 2.0 * rb.w2r);
    let (w1, w2, w3) = half_periods(&l);
    let scale = rb.scale();
    for (p, wp_mid) in PrimitiveIndex::ALL.into_iter().zip([w1, w2, w3]) {
        for i in 0..64 {
            for j in 0..64 {
                let z = (i as f64 + 0.5) / 64.0 * p1 + (j as f64 + 0.5) / 64.0 * p2;
                let jv = match primitive_j(&l, p, z) {
                    EvalValue::Finite(v) => v,
                    EvalValue::Pole { .. } => continue,
                };
                if jv.norm() < 0.05 {
                    // Must be near the midpoint lattice of this p.
                    let mut dist = f64::INFINITY;
                    for dm in -2..=2 {
                        for dn in -2..=2 {
                            let t = z - wp_mid - dm as f64 * p1 - dn as f64 * p2;
                            dist = dist.min(t.norm());
                        }
                    }
                    assert!(
                        dist < 0.2 * scale,
                        "small |J_{p}| = {} at {z}, {dist} from its midpoint lattice",
                        jv.norm()
                    );
                }
            }
        }
    }
}

#[test]
fn g3_zero_specialization_makes_j_a_square_root_of_wp() {
    // Rotated/scaled square lattices: preferred J_p squares to ℘ itself.
    let mut rng = SplitMix64::new(20);
    for _ in 0..4 {
        let f = random_unit(&mut rng);
        let l = make_lattice(f, f * Complex64::i()).unwrap();
        let p = nevell::neville::preferred_primitive(&l)
            .unwrap()
            .expect("square-symmetric lattice must have a preferred primitive");
        for z in generic_points(&l, 10, rng.next_u64()) {
            let j = primitive_j(&l, p, z).unwrap_finite();
            let p_val = wp(&l, z).unwrap_finite();
            assert!((j * j - p_val).norm() <= 1e-9 * (1.0 + p_val.norm()));
        }
    }
}

#[test]
fn obstruction_exclusivity_on_random_lattices() {
    let mut rng = SplitMix64::new(21);
    for _ in 0..20 {
        let l = random_lattice(&mut rng);
        let a = wp_sqrt_obstruction(&l).unwrap();
        let b = zeta4_sqrt_obstruction(&l).unwrap();
        assert!(!(a.exists && b.exists), "both square roots claimed to exist");
        assert_eq!(a.exists, a.witness.is_some());
        assert_eq!(b.exists, b.witness.is_some());
    }
}

#[test]
fn obstruction_agrees_with_zero_search_on_random_lattices() {
    let mut rng = SplitMix64::new(22);
    for _ in 0..5 {
        let l = random_lattice(&mut rng);
        let obs = wp_sqrt_obstruction(&l).unwrap();
        let zeros = wp_zeros(&l).unwrap();
        assert_eq!(zeros.total_order, 2);
        assert_eq!(obs.exists, zeros.orders == vec![2]);
    }
}

#[test]
fn eta_constants_sum_to_zero_and_satisfy_legendre() {
    let mut rng = SplitMix64::new(23);
    for _ in 0..6 {
        let l = random_lattice(&mut rng);
        let (e1, e2, e3) = eta_constants(&l);
        assert!((e1 + e2 + e3).norm() < 1e-12 * e1.norm().max(1.0));
        let lhs = e1 * l.w2() - e2 * l.w1();
        assert!((lhs - c(0.0, std::f64::consts::PI / 2.0)).norm() < 1e-12);
    }
}

#[test]
fn large_translation_components_reduce_to_the_same_lattice() {
    // (1, 1000+1.2i) and (1, 1.2i) generate the same point set, so every
    // invariant must coincide.
    let a = invariants(&make_lattice(c(1.0, 0.0), c(1000.0, 1.2)).unwrap()).unwrap();
    let b = invariants(&make_lattice(c(1.0, 0.0), c(0.0, 1.2)).unwrap()).unwrap();
    assert!((a.g2 - b.g2).norm() <= 1e-12 * b.g2.norm());
    assert!((a.g3 - b.g3).norm() <= 1e-12 * b.g3.norm());
    assert_eq!(a.scale, b.scale);
}

#[test]
fn sigma_and_j_remain_consistent_far_from_the_origin() {
    // Several cells out, σ carries large quasi-period exponentials; the
    // J_p quotient must still satisfy its square-root identity.
    let l = make_lattice(c(1.0, 0.0), c(0.3, 1.1)).unwrap();
    let ms = midpoint_constants(&l).unwrap();
    let z = c(4.3, 3.7);
    let s = sigma(&l, z);
    assert!(s.is_finite() && s.norm() > 0.0);
    for p in PrimitiveIndex::ALL {
        let j = primitive_j(&l, p, z).unwrap_finite();
        let pv = wp(&l, z).unwrap_finite();
        let rhs = pv - ms.e[p.index()];
        assert!(
            (j * j - rhs).norm() <= 1e-9 * (1.0 + pv.norm()),
            "far-field J_{p} identity"
        );
    }
    // Quasi-periodicity across a long jump: z vs z + 6·w1.
    let (eta1, _, _) = eta_constants(&l);
    let mut factor = Complex64::new(1.0, 0.0);
    let mut base = z;
    for _ in 0..3 {
        factor *= -(2.0 * eta1 * (base + l.w1())).exp();
        base += 2.0 * l.w1();
    }
    let lhs = sigma(&l, z + 6.0 * l.w1());
    let rhs = factor * sigma(&l, z);
    assert!((lhs - rhs).norm() <= 1e-9 * lhs.norm(), "{lhs} vs {rhs}");
}

#[test]
fn sigma_quasi_periodicity_on_random_lattices() {
    let mut rng = SplitMix64::new(24);
    for _ in 0..5 {
        let l = random_lattice(&mut rng);
        let ms = midpoint_constants(&l).unwrap();
        let z = {
            let pts = regular_points(&l, 1, rng.next_u64());
            pts[0]
        };
        for p in 0..3 {
            let lhs = sigma(&l, z + 2.0 * ms.w[p]);
            let rhs = -(2.0 * ms.eta[p] * (z + ms.w[p])).exp() * sigma(&l, z);
            assert!(
                (lhs - rhs).norm() <= 1e-10 * lhs.norm(),
                "p = {p}: {lhs} vs {rhs}"
            );
        }
    }
}
