//! Numerical toolkit for Weierstrass elliptic functions over arbitrary
//! complex lattices.
//!
//! A lattice `Λ = {2n₁w1 + 2n₂w2}` is given by an oriented pair of
//! half-periods. On top of it this crate evaluates the Weierstrass
//! functions ℘, ℘′, σ, ζ and the fourth-order Eisenstein function ζ₄,
//! computes the invariants `g2`, `g3` and the midpoint constants
//! `e_p = ℘(ω_p)`, and constructs Neville's primitive elliptic functions
//! `J_p` — the meromorphic square roots of `℘ − e_p` normalized by
//! `z·J_p(z) → 1`.
//!
//! The headline feature is obstruction analysis: ℘ itself has a global
//! meromorphic square root exactly when `g3 = 0` (the witness being the
//! preferred `J_p`), and ζ₄ has one exactly when `g2 = 0` (witnesses ±℘).
//! [`obstruction`] decides both questions, returns verified witnesses, and
//! confirms the zero-order dichotomy of ℘ by explicit root search.
//!
//! Everything is double-precision floating point with controlled
//! tolerances: inputs are basis-reduced so the nome satisfies `|q| ≲ 0.066`,
//! after which every series converges in a handful of terms. The [`oracle`]
//! module re-derives key quantities from raw truncated lattice sums so the
//! fast paths can be cross-checked against the defining formulas.
//!
//! ```
//! use num_complex::Complex64;
//! use nevell::lattice::{make_lattice, invariants, classify, ClassTag};
//! use nevell::obstruction::wp_sqrt_obstruction;
//!
//! // The square lattice of side 2: g3 vanishes by symmetry...
//! let l = make_lattice(Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)).unwrap();
//! let inv = invariants(&l).unwrap();
//! assert_eq!(classify(&inv).tag, ClassTag::G3Zero);
//! // ...so ℘ has a global meromorphic square root, witnessed by J3.
//! let report = wp_sqrt_obstruction(&l).unwrap();
//! assert!(report.exists);
//! ```

pub mod error;
pub mod lattice;
pub mod neville;
pub mod obstruction;
pub mod oracle;
pub mod sampling;
mod theta;
pub mod weierstrass;

pub use error::{Error, Result};
pub use lattice::{ClassTag, Invariants, LatticeClass, LatticeSpec, ReducedBasis};
pub use neville::{Generator, PrimitiveIndex};
pub use obstruction::{ObstructionReport, ObstructionTarget, Witness, ZeroReport};
pub use weierstrass::{EvalValue, MidpointSet};
