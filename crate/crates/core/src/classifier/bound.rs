use serde::Serialize;

use super::ClassifyError;
use crate::functions::{total_variation, FunctionSpec};
use crate::numerics::{int, Enclosure, ExtendedValue, Rational};
use crate::sets::{Interval, IntervalFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// The whole family is shorter than `δ`.
    Short,
    /// The family is chopped into pieces of length at most `δ`.
    Chopped,
}

/// Upper bound on `∫_fam |f'|` from an `ε = 1` modulus `δ`, with the
/// constructive check that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariationBound {
    pub case: BoundCase,
    pub delta: Rational,
    pub measure: Enclosure,
    pub n0: Option<u64>,
    pub bound: Rational,
    pub pieces: IntervalFamily,
    pub piece_variations: Vec<Enclosure>,
    /// Consecutive pieces grouped so each group has total length at most `δ`.
    pub groups: Vec<(usize, usize)>,
    pub total: Enclosure,
}

fn piece_variation(f: &FunctionSpec, iv: &Interval) -> Result<Enclosure, ClassifyError> {
    let (a, b) = (iv.left().unwrap(), iv.right().unwrap());
    if a == b {
        return Ok(Enclosure::zero());
    }
    match total_variation(f, a, b)? {
        ExtendedValue::Finite { enclosure } => Ok(enclosure),
        _ => Err(ClassifyError::ModulusViolation {
            piece: iv.to_string(),
            variation: "unbounded or undecided".into(),
        }),
    }
}

/// Greedy runs of consecutive pieces with total length at most `δ`.
fn group(pieces: &[Interval], delta: &Rational) -> Vec<(usize, usize)> {
    let mut groups = Vec::new();
    let mut start = 0;
    let mut len = Rational::zero();
    for (i, iv) in pieces.iter().enumerate() {
        let l = iv.length().unwrap();
        if i > start && &len + &l > *delta {
            groups.push((start, i));
            start = i;
            len = Rational::zero();
        }
        len += l;
    }
    if start < pieces.len() {
        groups.push((start, pieces.len()));
    }
    groups
}

/// Bounds `∫_fam |f'|` by `n₀ + 1`, `n₀ = ⌊μ(fam)/(δ/2)⌋`, checking every
/// group of pieces against the modulus.
pub fn l1g_bound_via_variation(
    f: &FunctionSpec,
    fam: &IntervalFamily,
    delta: &Rational,
) -> Result<VariationBound, ClassifyError> {
    if !delta.is_positive() {
        return Err(ClassifyError::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if !fam.is_finite_union() || fam.has_unbounded() {
        return Err(ClassifyError::InvalidParameter(
            "family must be a finite union of bounded intervals".into(),
        ));
    }
    let measure = fam.measure().as_finite().expect("bounded finite union").clone();
    let (case, n0, pieces) = if measure.hi() < delta {
        (BoundCase::Short, None, fam.clone())
    } else {
        let n0: u64 = (measure.hi() / (delta / int(2)))
            .floor()
            .try_into()
            .map_err(|_| ClassifyError::InvalidParameter("measure too large".into()))?;
        let pieces = fam
            .chop(delta)
            .map_err(|e| ClassifyError::InvalidParameter(e.to_string()))?;
        (BoundCase::Chopped, Some(n0), pieces)
    };
    let piece_variations = pieces
        .head()
        .iter()
        .map(|iv| piece_variation(f, iv))
        .collect::<Result<Vec<_>, _>>()?;
    let groups = group(pieces.head(), delta);
    for (s, e) in &groups {
        let v: Enclosure = piece_variations[*s..*e].iter().cloned().sum();
        if v.lo() > &int(1) {
            let span: Vec<String> = pieces.head()[*s..*e].iter().map(|iv| iv.to_string()).collect();
            return Err(ClassifyError::ModulusViolation {
                piece: span.join(" "),
                variation: v.to_string(),
            });
        }
    }
    let total: Enclosure = piece_variations.iter().cloned().sum();
    let bound = match n0 {
        None => int(1),
        Some(n) => int(n as i64 + 1),
    };
    if total.hi() > &bound || groups.len() as u64 > n0.unwrap_or(0) + 1 {
        return Err(ClassifyError::ModulusViolation {
            piece: pieces.to_string(),
            variation: total.to_string(),
        });
    }
    Ok(VariationBound {
        case,
        delta: delta.clone(),
        measure,
        n0,
        bound,
        pieces,
        piece_variations,
        groups,
        total,
    })
}
