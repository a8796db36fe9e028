//! Command-line front end: lattice invariants, function evaluation, the
//! identity check suite, obstruction and zero reports, and grid export.
//!
//! Exit codes are a stable contract for scripting:
//! 0 success, 1 identity failure, 2 usage/parse error, 3 degenerate lattice.

pub mod checks;
pub mod grid;
pub mod parse;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use nevell::lattice::{classify_with, invariants, LatticeSpec};
use nevell::obstruction::{wp_sqrt_obstruction, wp_zeros, zeta4_sqrt_obstruction};
use nevell::weierstrass::EvalValue;

use grid::FnName;
use parse::LatticeArgError;
use report::{
    class_name, EvalReport, InvariantsReport, ObstructionPair, ObstructionSide, ZerosReport,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "nevell",
    version,
    about = "Weierstrass elliptic functions, Neville primitive functions, and square-root obstructions over complex lattices"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print g2, g3, the discriminant, and the lattice classification.
    Invariants {
        /// Lattice as "a+bi,c+di" (half-periods) or a preset: gaussian, hexagonal.
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        /// Classification threshold on the normalized invariants.
        #[arg(long, default_value_t = nevell::lattice::CLASS_THRESHOLD)]
        tol: f64,
        /// Emit machine-readable JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one function at one point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        /// Function: wp, wpp, sigma, zeta, zeta4, j1, j2, j3.
        #[arg(long = "fn", value_enum)]
        function: FnName,
        /// Evaluation point, e.g. "0.4+0.2i".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the full identity suite at seeded random regular points.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        /// Pass/fail tolerance for the identities.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Seed for the sample points.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Decide square-root existence for wp and zeta4, with witnesses.
    Obstruction {
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        #[arg(long)]
        json: bool,
    },
    /// Locate the zeros of wp in one fundamental cell.
    Zeros {
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample a function over a rectangle and write CSV or a PPM image.
    Grid {
        #[arg(long, allow_hyphen_values = true)]
        lattice: String,
        #[arg(long = "fn", value_enum)]
        function: FnName,
        /// Window "re_min,re_max,im_min,im_max".
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: String,
        /// Samples per side (max 4096).
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
        format: GridFormat,
        /// Output file path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridFormat {
    Csv,
    Ppm,
}

/// Entry point; returns the process exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(dispatch(cli))
}

fn dispatch(cli: Cli) -> u8 {
    match cli.cmd {
        Cmd::Invariants { lattice, tol, json } => with_lattice(&lattice, |l| {
            cmd_invariants(l, tol, json)
        }),
        Cmd::Eval {
            lattice,
            function,
            z,
            json,
        } => with_lattice(&lattice, |l| cmd_eval(l, function, &z, json)),
        Cmd::Check { lattice, tol, seed } => {
            with_lattice(&lattice, |l| cmd_check(l, tol, seed))
        }
        Cmd::Obstruction { lattice, json } => {
            with_lattice(&lattice, |l| cmd_obstruction(l, json))
        }
        Cmd::Zeros { lattice, json } => with_lattice(&lattice, |l| cmd_zeros(l, json)),
        Cmd::Grid {
            lattice,
            function,
            window,
            n,
            format,
            out,
        } => with_lattice(&lattice, |l| cmd_grid(l, function, &window, n, format, &out)),
    }
}

fn with_lattice(arg: &str, f: impl FnOnce(&LatticeSpec) -> u8) -> u8 {
    match parse::lattice(arg) {
        Ok(l) => f(&l),
        Err(LatticeArgError::Parse(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(LatticeArgError::Degenerate(e)) => {
            eprintln!("error: {e}");
            EXIT_DEGENERATE
        }
    }
}

fn degenerate(e: nevell::Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        nevell::Error::DegenerateLattice(_) | nevell::Error::DegenerateInvariants(_) => {
            EXIT_DEGENERATE
        }
        _ => EXIT_USAGE,
    }
}

fn fmt_c(v: Complex64) -> String {
    if v.im >= 0.0 || v.im.is_nan() {
        format!("{}+{}i", v.re, v.im)
    } else {
        format!("{}-{}i", v.re, -v.im)
    }
}

fn cmd_invariants(l: &LatticeSpec, tol: f64, json: bool) -> u8 {
    let inv = match invariants(l) {
        Ok(v) => v,
        Err(e) => return degenerate(e),
    };
    let class = classify_with(&inv, tol);
    let rep = InvariantsReport::new(&inv, &class);
    if json {
        println!("{}", serde_json::to_string(&rep).unwrap());
    } else {
        println!("lattice: w1 = {}, w2 = {}", fmt_c(l.w1()), fmt_c(l.w2()));
        println!("g2    = {}", fmt_c(inv.g2));
        println!("g3    = {}", fmt_c(inv.g3));
        println!("disc  = {}", fmt_c(inv.disc));
        println!("scale = {}", inv.scale);
        println!("|g2n| = {:.6e}, |g3n| = {:.6e}", inv.g2n.norm(), inv.g3n.norm());
        println!(
            "class = {} (residual {:.6e})",
            class_name(class.tag),
            class.residual
        );
    }
    EXIT_OK
}

fn cmd_eval(l: &LatticeSpec, f: FnName, z_arg: &str, json: bool) -> u8 {
    let z = match parse::complex(z_arg) {
        Ok(z) => z,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let v = f.eval(l, z);
    if json {
        println!("{}", serde_json::to_string(&EvalReport::new(&v)).unwrap());
    } else {
        match v {
            EvalValue::Finite(c) => println!("{}", fmt_c(c)),
            EvalValue::Pole { order } => println!("POLE(order {order})"),
        }
    }
    EXIT_OK
}

fn cmd_check(l: &LatticeSpec, tol: f64, seed: u64) -> u8 {
    let out = match checks::run_checks(l, tol, seed) {
        Ok(o) => o,
        Err(e) => return degenerate(e),
    };
    println!(
        "check: lattice w1 = {}, w2 = {}  class = {} (residual {:.3e})  tol = {tol:.1e}  seed = {seed}",
        fmt_c(l.w1()),
        fmt_c(l.w2()),
        class_name(out.class),
        out.class_residual,
    );
    let mut passed = 0usize;
    let mut checked = 0usize;
    for line in &out.lines {
        match line.residual {
            Some(r) => {
                checked += 1;
                let status = if line.pass { "PASS" } else { "FAIL" };
                if line.pass {
                    passed += 1;
                }
                println!(
                    "  {status}  {:<48} max residual {r:.3e}  (tol {:.1e})",
                    line.name, line.threshold
                );
            }
            None => println!("  INFO  {}", line.name),
        }
    }
    println!("check: {passed}/{checked} identities passed");
    if out.all_passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn cmd_obstruction(l: &LatticeSpec, json: bool) -> u8 {
    let wp_rep = match wp_sqrt_obstruction(l) {
        Ok(r) => r,
        Err(e) => return degenerate(e),
    };
    let z4_rep = match zeta4_sqrt_obstruction(l) {
        Ok(r) => r,
        Err(e) => return degenerate(e),
    };
    if json {
        let pair = ObstructionPair {
            wp: ObstructionSide::new(&wp_rep),
            zeta4: ObstructionSide::new(&z4_rep),
        };
        println!("{}", serde_json::to_string(&pair).unwrap());
    } else {
        for (name, rep, inv_name) in [
            ("wp", &wp_rep, "|g3n|"),
            ("zeta4", &z4_rep, "|g2n|"),
        ] {
            match rep.witness {
                Some(w) => println!(
                    "{name}: square root exists ({inv_name} = {:.3e}), witness {w}",
                    rep.residual
                ),
                None => println!(
                    "{name}: no square root ({inv_name} = {:.3e})",
                    rep.residual
                ),
            }
        }
    }
    EXIT_OK
}

fn cmd_zeros(l: &LatticeSpec, json: bool) -> u8 {
    let rep = match wp_zeros(l) {
        Ok(r) => r,
        Err(e) => return degenerate(e),
    };
    if json {
        println!(
            "{}",
            serde_json::to_string(&ZerosReport::new(&rep)).unwrap()
        );
    } else {
        println!("zeros of wp in one fundamental cell:");
        for (z, o) in rep.locations.iter().zip(&rep.orders) {
            println!("  z = {}  order {o}", fmt_c(*z));
        }
        println!("total order = {}", rep.total_order);
    }
    EXIT_OK
}

fn cmd_grid(
    l: &LatticeSpec,
    f: FnName,
    window_arg: &str,
    n: usize,
    format: GridFormat,
    out: &PathBuf,
) -> u8 {
    let window = match parse::window(window_arg) {
        Ok(w) => w,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    if n == 0 || n > 4096 {
        eprintln!("error: resolution n must be in 1..=4096, got {n}");
        return EXIT_USAGE;
    }
    let samples = grid::sample(l, f, &window, n);
    let file = match std::fs::File::create(out) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: cannot create {}: {e}", out.display());
            return EXIT_USAGE;
        }
    };
    let mut writer = std::io::BufWriter::new(file);
    let res = match format {
        GridFormat::Csv => grid::write_csv(&mut writer, &window, n, &samples),
        GridFormat::Ppm => grid::write_ppm(&mut writer, n, &samples),
    };
    if let Err(e) = res.and_then(|()| writer.flush()) {
        eprintln!("error: write failed: {e}");
        return EXIT_USAGE;
    }
    EXIT_OK
}
