//! Machine-readable report types. Every JSON document the CLI prints
//! deserializes back to the same value (round-trip contract for scripting).

use serde::{Deserialize, Serialize};

use nevell::lattice::{ClassTag, Invariants, LatticeClass};
use nevell::obstruction::{ObstructionReport, ObstructionTarget, Witness, ZeroReport};
use nevell::weierstrass::EvalValue;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub g2_re: f64,
    pub g2_im: f64,
    pub g3_re: f64,
    pub g3_im: f64,
    pub disc_re: f64,
    pub disc_im: f64,
    pub class: String,
    pub residual: f64,
    pub scale: f64,
    pub g2n_abs: f64,
    pub g3n_abs: f64,
}

pub fn class_name(tag: ClassTag) -> &'static str {
    match tag {
        ClassTag::G2Zero => "G2_ZERO",
        ClassTag::G3Zero => "G3_ZERO",
        ClassTag::Generic => "GENERIC",
    }
}

impl InvariantsReport {
    pub fn new(inv: &Invariants, class: &LatticeClass) -> Self {
        InvariantsReport {
            g2_re: inv.g2.re,
            g2_im: inv.g2.im,
            g3_re: inv.g3.re,
            g3_im: inv.g3.im,
            disc_re: inv.disc.re,
            disc_im: inv.disc.im,
            class: class_name(class.tag).to_string(),
            residual: class.residual,
            scale: inv.scale,
            g2n_abs: inv.g2n.norm(),
            g3n_abs: inv.g3n.norm(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole_order: Option<u32>,
}

impl EvalReport {
    pub fn new(v: &EvalValue) -> Self {
        match v {
            EvalValue::Finite(c) => EvalReport {
                kind: "FINITE".into(),
                re: Some(c.re),
                im: Some(c.im),
                pole_order: None,
            },
            EvalValue::Pole { order } => EvalReport {
                kind: "POLE".into(),
                re: None,
                im: None,
                pole_order: Some(*order),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionSide {
    pub target: String,
    pub exists: bool,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ObstructionSide {
    pub fn new(r: &ObstructionReport) -> Self {
        ObstructionSide {
            target: match r.target {
                ObstructionTarget::Wp => "wp".into(),
                ObstructionTarget::Zeta4 => "zeta4".into(),
            },
            exists: r.exists,
            residual: r.residual,
            witness: r.witness.map(|w| match w {
                Witness::PrimitiveJ(p) => format!("{p}"),
                Witness::PlusMinusWp => "+-wp".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionPair {
    pub wp: ObstructionSide,
    pub zeta4: ObstructionSide,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroEntry {
    pub re: f64,
    pub im: f64,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZerosReport {
    pub zeros: Vec<ZeroEntry>,
    pub total_order: u32,
}

impl ZerosReport {
    pub fn new(r: &ZeroReport) -> Self {
        ZerosReport {
            zeros: r
                .locations
                .iter()
                .zip(&r.orders)
                .map(|(z, o)| ZeroEntry {
                    re: z.re,
                    im: z.im,
                    order: *o,
                })
                .collect(),
            total_order: r.total_order,
        }
    }
}
