//! Membership of catalog functions in L¹, L^∞, L¹_loc, L¹_H, L¹_G, AC_loc
//! and AC(ℝ), with certificates.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::functions::{FnError, FunctionSpec, IntegralLedgerEntry, Status};
use crate::numerics::{DivergenceCertificate, Enclosure, ExtendedValue, Rational};
use crate::sets::IntervalFamily;

mod bound;
mod membership;
mod superlevel;

pub use bound::{l1g_bound_via_variation, BoundCase, VariationBound};
pub use membership::{ac_via_theorem1, membership, membership_with};
pub use superlevel::{superlevel, Approximation, Superlevel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("superlevel set not representable: {0}")]
    NotRepresentable(String),
    #[error(transparent)]
    Function(#[from] FnError),
    #[error("inclusion lattice violated: {0}")]
    LatticeViolation(String),
    #[error("piece {piece} has variation {variation} > 1; delta is not a modulus for epsilon = 1")]
    ModulusViolation { piece: String, variation: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SpaceId {
    L1,
    Linf,
    L1loc,
    L1H,
    L1G,
    ACloc,
    AC,
}

impl SpaceId {
    pub const ALL: [SpaceId; 7] = [
        SpaceId::L1,
        SpaceId::Linf,
        SpaceId::L1loc,
        SpaceId::L1H,
        SpaceId::L1G,
        SpaceId::ACloc,
        SpaceId::AC,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceId::L1 => "L1",
            SpaceId::Linf => "Linf",
            SpaceId::L1loc => "L1loc",
            SpaceId::L1H => "L1H",
            SpaceId::L1G => "L1G",
            SpaceId::ACloc => "ACloc",
            SpaceId::AC => "AC",
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceId::ALL
            .into_iter()
            .find(|sp| sp.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown space {s:?}"))
    }
}

/// Evidence behind a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Bound {
        quantity: String,
        enclosure: Enclosure,
    },
    Threshold {
        level: Rational,
        superlevel: IntervalFamily,
        approx: Approximation,
        measure: ExtendedValue,
        tail_integral: Option<ExtendedValue>,
    },
    /// `∫_K |f| = ∞` on a set `K`; for L¹_G the set has finite measure.
    DivergentFamily {
        family: IntervalFamily,
        measure: ExtendedValue,
        ledger: Vec<IntegralLedgerEntry>,
        certificate: DivergenceCertificate,
    },
    /// Every superlevel set has infinite measure.
    AllLevelsInfinite {
        rule: String,
        sample: Box<Certificate>,
    },
    Attribute {
        justification: String,
    },
    Implication {
        from: SpaceId,
        premise: Box<Verdict>,
    },
    Composition {
        rule: String,
        parts: Vec<Verdict>,
    },
    Theorem1 {
        ac_loc: Box<Verdict>,
        derivative: Option<FunctionSpec>,
        derivative_l1g: Option<Box<Verdict>>,
    },
    Unresolved {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub space: SpaceId,
    pub status: Status,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn new(space: SpaceId, status: Status, certificate: Certificate) -> Self {
        Verdict {
            space,
            status,
            certificate,
        }
    }

    pub fn unknown(space: SpaceId, reason: impl Into<String>) -> Self {
        Verdict::new(
            space,
            Status::Unknown,
            Certificate::Unresolved {
                reason: reason.into(),
            },
        )
    }
}

/// Truncation depth and search caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub depth: u64,
    /// Largest `k` in the threshold search `M = 2^k`.
    pub max_doubling: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            depth: 100,
            max_doubling: 64,
        }
    }
}

/// Verdicts of one function for every space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VennPlacement {
    pub function: FunctionSpec,
    pub verdicts: BTreeMap<SpaceId, Verdict>,
}

impl VennPlacement {
    pub fn status(&self, space: SpaceId) -> Status {
        self.verdicts[&space].status
    }

    /// `space=status` pairs in the fixed space order.
    pub fn summary(&self) -> String {
        SpaceId::ALL
            .iter()
            .map(|s| format!("{s}={}", status_word(self.status(*s))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::In => "in",
        Status::Out => "out",
        Status::Unknown => "unknown",
    }
}

/// The implications every placement must respect.
pub const LATTICE: [(SpaceId, SpaceId); 5] = [
    (SpaceId::L1, SpaceId::L1G),
    (SpaceId::Linf, SpaceId::L1G),
    (SpaceId::L1G, SpaceId::L1H),
    (SpaceId::L1, SpaceId::L1loc),
    (SpaceId::AC, SpaceId::ACloc),
];

/// Implications violated by a placement: `a` is In while `b` is Out.
pub fn lattice_violations(p: &VennPlacement) -> Vec<(SpaceId, SpaceId)> {
    LATTICE
        .into_iter()
        .filter(|(a, b)| p.status(*a) == Status::In && p.status(*b) == Status::Out)
        .collect()
}

/// Runs every membership test and checks the inclusion lattice.
pub fn classify(f: &FunctionSpec, config: &Config) -> Result<VennPlacement, ClassifyError> {
    let mut memo = membership::Memo::new(config);
    let verdicts = SpaceId::ALL
        .into_iter()
        .map(|s| (s, memo.verdict(f, s)))
        .collect();
    let placement = VennPlacement {
        function: f.clone(),
        verdicts,
    };
    let bad = lattice_violations(&placement);
    if let Some((a, b)) = bad.first() {
        return Err(ClassifyError::LatticeViolation(format!(
            "{f}: in {a} but out of {b}"
        )));
    }
    Ok(placement)
}

#[cfg(test)]
mod tests;
