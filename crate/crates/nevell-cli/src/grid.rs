//! Grid sampling and export: CSV tables and domain-colored PPM images.
//!
//! Samples are taken row-major from the top-left of the window at
//! `re = re_min + j·Δre`, `im = im_max − i·Δim` (so a symmetric window hits
//! lattice-exact points like midpoints dead on). Sampling may run on
//! several threads — capped by the `NEVELL_THREADS` environment variable —
//! but samples land in a preallocated row-major buffer, so the output file
//! is identical regardless of parallelism.

use std::io::Write;

use num_complex::Complex64;

use nevell::lattice::LatticeSpec;
use nevell::neville::{primitive_j, PrimitiveIndex};
use nevell::weierstrass::{sigma, wp, wp_prime, wzeta, zeta4, EvalValue};

use crate::parse::Window;

/// Function selector shared by `eval` and `grid`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FnName {
    Wp,
    Wpp,
    Sigma,
    Zeta,
    Zeta4,
    #[value(alias = "J1")]
    J1,
    #[value(alias = "J2")]
    J2,
    #[value(alias = "J3")]
    J3,
}

impl FnName {
    pub fn eval(self, l: &LatticeSpec, z: Complex64) -> EvalValue {
        match self {
            FnName::Wp => wp(l, z),
            FnName::Wpp => wp_prime(l, z),
            FnName::Sigma => EvalValue::Finite(sigma(l, z)),
            FnName::Zeta => wzeta(l, z),
            FnName::Zeta4 => zeta4(l, z),
            FnName::J1 => primitive_j(l, PrimitiveIndex::P1, z),
            FnName::J2 => primitive_j(l, PrimitiveIndex::P2, z),
            FnName::J3 => primitive_j(l, PrimitiveIndex::P3, z),
        }
    }
}

/// Compute the n×n sample grid, row-major from the top-left.
pub fn sample(l: &LatticeSpec, f: FnName, window: &Window, n: usize) -> Vec<EvalValue> {
    let dre = (window.re_max - window.re_min) / n as f64;
    let dim = (window.im_max - window.im_min) / n as f64;
    let mut out = vec![EvalValue::Pole { order: 0 }; n * n];

    let threads = thread_budget(n);
    let rows_per = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (t, chunk) in out.chunks_mut(rows_per * n).enumerate() {
            let l = &l;
            scope.spawn(move || {
                let row0 = t * rows_per;
                for (k, slot) in chunk.iter_mut().enumerate() {
                    let i = row0 + k / n;
                    let j = k % n;
                    let z = Complex64::new(
                        window.re_min + j as f64 * dre,
                        window.im_max - i as f64 * dim,
                    );
                    *slot = f.eval(l, z);
                }
            });
        }
    });
    out
}

fn thread_budget(rows: usize) -> usize {
    let avail = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("NEVELL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .unwrap_or(avail);
    cap.min(avail.max(1)).min(rows.max(1))
}

/// Write the grid as CSV: header `re,im,val_re,val_im,kind`, one row per
/// sample, poles with empty value fields. UTF-8, LF line endings.
pub fn write_csv(
    out: &mut impl Write,
    window: &Window,
    n: usize,
    samples: &[EvalValue],
) -> std::io::Result<()> {
    let dre = (window.re_max - window.re_min) / n as f64;
    let dim = (window.im_max - window.im_min) / n as f64;
    out.write_all(b"re,im,val_re,val_im,kind\n")?;
    for i in 0..n {
        for j in 0..n {
            let re = window.re_min + j as f64 * dre;
            let im = window.im_max - i as f64 * dim;
            match samples[i * n + j] {
                EvalValue::Finite(v) => {
                    writeln!(out, "{re},{im},{},{},FINITE", v.re, v.im)?;
                }
                EvalValue::Pole { .. } => {
                    writeln!(out, "{re},{im},,,POLE")?;
                }
            }
        }
    }
    Ok(())
}

/// Write the grid as a binary P6 PPM with domain coloring: hue is the
/// argument of the value, lightness ramps with the modulus (zeros black,
/// poles white).
pub fn write_ppm(out: &mut impl Write, n: usize, samples: &[EvalValue]) -> std::io::Result<()> {
    write!(out, "P6\n{n} {n}\n255\n")?;
    let mut buf = Vec::with_capacity(3 * n * n);
    for s in samples {
        let (r, g, b) = match s {
            EvalValue::Pole { .. } => (255, 255, 255),
            EvalValue::Finite(v) => color_of(*v),
        };
        buf.extend_from_slice(&[r, g, b]);
    }
    out.write_all(&buf)
}

/// Domain coloring of one finite value.
fn color_of(v: Complex64) -> (u8, u8, u8) {
    let m = v.norm();
    if !m.is_finite() {
        return (255, 255, 255);
    }
    // Hue from the argument, wrapped into [0,1); lightness is a smooth ramp
    // 0 at zeros -> 1 toward poles.
    let hue = (v.arg() / std::f64::consts::TAU).rem_euclid(1.0);
    let light = m / (m + 1.0);
    hsl_to_rgb(hue, 1.0, light)
}

fn hsl_to_rgb(h: f64, s: f64, l: f64) -> (u8, u8, u8) {
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = h * 6.0;
    let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let q = |t: f64| ((t + m).clamp(0.0, 1.0) * 255.0).round() as u8;
    (q(r1), q(g1), q(b1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    #[test]
    fn csv_has_header_plus_n_squared_rows() {
        let l = parse::lattice("gaussian").unwrap();
        let w = parse::window("-2,2,-2,2").unwrap();
        let n = 8;
        let samples = sample(&l, FnName::Wp, &w, n);
        let mut buf = Vec::new();
        write_csv(&mut buf, &w, n, &samples).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), n * n + 1);
        assert!(text.starts_with("re,im,val_re,val_im,kind\n"));
        assert!(!text.contains('\r'));
        // The corner sample sits on the pole at -2+2i.
        assert!(text.lines().nth(1).unwrap().ends_with(",,,POLE"));
    }

    #[test]
    fn ppm_header_and_payload_size() {
        let l = parse::lattice("gaussian").unwrap();
        let w = parse::window("-2,2,-2,2").unwrap();
        let n = 16;
        let samples = sample(&l, FnName::J3, &w, n);
        let mut buf = Vec::new();
        write_ppm(&mut buf, n, &samples).unwrap();
        let header = format!("P6\n{n} {n}\n255\n");
        assert!(buf.starts_with(header.as_bytes()));
        assert_eq!(buf.len(), header.len() + 3 * n * n);
    }

    #[test]
    fn j3_grid_is_black_at_its_zero_and_white_at_poles() {
        // 256 samples over [-2,2]²: the sample at w3 = -1-i lands exactly
        // on a zero of J3 (black); the one at 0 is a pole (white).
        let l = parse::lattice("gaussian").unwrap();
        let w = parse::window("-2,2,-2,2").unwrap();
        let n = 256;
        let samples = sample(&l, FnName::J3, &w, n);
        let mut buf = Vec::new();
        write_ppm(&mut buf, n, &samples).unwrap();
        let header_len = format!("P6\n{n} {n}\n255\n").len();
        let px = |i: usize, j: usize| {
            let o = header_len + 3 * (i * n + j);
            (buf[o], buf[o + 1], buf[o + 2])
        };
        // z = -1-i -> j = (re+2)/dre = 64, i = (2-im)/dim = 192.
        assert_eq!(px(192, 64), (0, 0, 0));
        // z = 0 -> i = j = 128: pole of J3.
        assert_eq!(px(128, 128), (255, 255, 255));
    }

    #[test]
    fn gaussian_wp_grid_has_fourfold_antisymmetry() {
        // Multiplying z by i rotates the sample grid (i,j) -> (n-j, i) on a
        // symmetric window, and wp(iz) = -wp(z) on the square lattice.
        let l = parse::lattice("gaussian").unwrap();
        let w = parse::window("-2,2,-2,2").unwrap();
        let n = 32;
        let samples = sample(&l, FnName::Wp, &w, n);
        for i in 0..n {
            for j in 1..n {
                let (a, b) = (samples[i * n + j], samples[(n - j) * n + i]);
                match (a, b) {
                    (EvalValue::Finite(va), EvalValue::Finite(vb)) => {
                        assert!(
                            (va + vb).norm() <= 1e-9 * (1.0 + va.norm()),
                            "at ({i},{j}): {va} vs {vb}"
                        );
                    }
                    (EvalValue::Pole { .. }, EvalValue::Pole { .. }) => {}
                    _ => panic!("rotation maps a pole to a regular point at ({i},{j})"),
                }
            }
        }
    }

    #[test]
    fn sampling_is_identical_across_thread_counts() {
        let l = parse::lattice("1+0i,0.3+1.1i").unwrap();
        let w = parse::window("-1,1,-1,1").unwrap();
        std::env::set_var("NEVELL_THREADS", "1");
        let a = sample(&l, FnName::Wp, &w, 32);
        std::env::set_var("NEVELL_THREADS", "4");
        let b = sample(&l, FnName::Wp, &w, 32);
        std::env::remove_var("NEVELL_THREADS");
        assert_eq!(a, b);
    }
}
