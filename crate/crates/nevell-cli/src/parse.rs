//! Parsing of complex numbers, lattice arguments, and grid windows.
//!
//! Complex syntax is the single-token form `a+bi` / `a-bi` with a mandatory
//! explicit sign before the imaginary part; pure-real (`1.5`) and
//! pure-imaginary (`2i`, `-i`) tokens are also accepted. Parsing is
//! locale-independent (always `.` as the decimal separator).

use num_complex::Complex64;

use nevell::lattice::{make_lattice, LatticeSpec};

/// Parse one complex token.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    if let Some(body) = t.strip_suffix(['i', 'I']) {
        // Walk from the second character looking for the sign that splits
        // real from imaginary; signs directly after an exponent marker
        // belong to the exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        match split {
            Some(k) => {
                let re: f64 = body[..k]
                    .parse()
                    .map_err(|_| format!("bad real part in {t:?}"))?;
                let im_str = &body[k..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str
                        .parse()
                        .map_err(|_| format!("bad imaginary part in {t:?}"))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                // Pure imaginary: "i", "-i", "2.5i".
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else if body == "+" {
                    1.0
                } else {
                    body.parse()
                        .map_err(|_| format!("bad imaginary part in {t:?}"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = t.parse().map_err(|_| format!("bad number {t:?}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// Parse a lattice argument: `"a+bi,c+di"` or a named preset.
///
/// Presets: `gaussian` (w1 = 1, w2 = i) and `hexagonal`
/// (w1 = 1, w2 = exp(iπ/3)).
pub fn lattice(s: &str) -> Result<LatticeSpec, LatticeArgError> {
    let (w1, w2) = match s.trim() {
        "gaussian" => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)),
        "hexagonal" => (
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.75f64.sqrt()),
        ),
        other => {
            let parts: Vec<&str> = other.split(',').collect();
            if parts.len() != 2 {
                return Err(LatticeArgError::Parse(format!(
                    "expected \"a+bi,c+di\" or a preset name, got {other:?}"
                )));
            }
            (
                complex(parts[0]).map_err(LatticeArgError::Parse)?,
                complex(parts[1]).map_err(LatticeArgError::Parse)?,
            )
        }
    };
    make_lattice(w1, w2).map_err(LatticeArgError::Degenerate)
}

/// Lattice argument failures, split so the CLI can map them to the right
/// exit codes (2 = parse, 3 = degenerate).
#[derive(Debug)]
pub enum LatticeArgError {
    Parse(String),
    Degenerate(nevell::Error),
}

/// Rectangular window `re_min,re_max,im_min,im_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

pub fn window(s: &str) -> Result<Window, String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad window {s:?}"))?;
    if vals.len() != 4 {
        return Err(format!(
            "window needs 4 numbers re_min,re_max,im_min,im_max, got {}",
            vals.len()
        ));
    }
    let w = Window {
        re_min: vals[0],
        re_max: vals[1],
        im_min: vals[2],
        im_max: vals[3],
    };
    if !vals.iter().all(|v| v.is_finite()) || w.re_min >= w.re_max || w.im_min >= w.im_max {
        return Err(format!("degenerate window {s:?}"));
    }
    Ok(w)
}
