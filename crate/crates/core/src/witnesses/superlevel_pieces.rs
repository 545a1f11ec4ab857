use serde::Serialize;

use super::{finish, Verification, WitnessError};
use crate::classifier::{membership, superlevel, Approximation, SpaceId, Superlevel};
use crate::functions::{evaluate, integral_abs_over, FnError, FunctionSpec, Status};
use crate::numerics::{harmonic, int, ExtendedValue, Rational};
use crate::sets::{Interval, IntervalFamily};

/// Upper limit on intervals visited while filling one piece.
const MAX_PIECES: u64 = 1_000_000;

/// Pieces `G_n ⊆ {|f| >= n}` of measure `1/n²` beyond all earlier pieces,
/// so `∫_{⋃G_n} |f| >= Σ 1/n` over a set of finite measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Ledger {
    pub function: FunctionSpec,
    pub superlevels: Vec<Superlevel>,
    /// `a_n`, back-solved from the chosen piece.
    pub indices: Vec<u64>,
    /// `F_n = [-a_n/(2n²), a_n/(2n²)]`.
    pub windows: Vec<Interval>,
    pub pieces: Vec<IntervalFamily>,
    pub measures: Vec<Rational>,
    /// `n · μ(G_n)`.
    pub integral_lower_bounds: Vec<Rational>,
    pub certified_integrals: Vec<ExtendedValue>,
    pub partial_sums: Vec<Rational>,
}

fn piece_budget(n: u64) -> Rational {
    Rational::new(1, (n * n) as i64)
}

/// Positive-side intervals of `s` beyond `cutoff`, left to right, until their
/// total length is exactly `need`.
fn fill(s: &IntervalFamily, cutoff: &Rational, need: &Rational) -> Option<IntervalFamily> {
    let beyond = s.restrict_beyond(cutoff);
    let mut head: Vec<&Interval> = beyond
        .head()
        .iter()
        .filter(|iv| iv.left().is_some_and(|l| !l.is_negative()))
        .collect();
    head.sort_by(|a, b| a.cmp_left(b));
    let tail = beyond.tail().filter(|t| !t.left_fn.at(t.from_index).is_negative());
    let tail_iter = tail
        .into_iter()
        .flat_map(|t| (t.from_index..t.from_index + MAX_PIECES).map(move |n| t.interval_at(n)));
    let mut chosen = Vec::new();
    let mut rem = need.clone();
    for iv in head.into_iter().cloned().chain(tail_iter) {
        let left = iv.left().unwrap().clone();
        match iv.length() {
            Some(len) if len <= rem => {
                rem -= &len;
                chosen.push(iv);
            }
            _ => {
                let right = &left + &rem;
                chosen.push(Interval::new(Some(left), Some(right), iv.left_closed(), true)?);
                rem = Rational::zero();
            }
        }
        if rem.is_zero() {
            return IntervalFamily::finite(chosen).ok();
        }
    }
    None
}

pub fn theorem2_construction(f: &FunctionSpec, depth: u64) -> Result<Theorem2Ledger, WitnessError> {
    if depth == 0 {
        return Err(WitnessError::InvalidParameter("depth must be positive".into()));
    }
    let l1h = membership(f, SpaceId::L1H)?;
    if l1h.status != Status::Out {
        return Err(WitnessError::NotApplicable(format!(
            "{f} is not certified outside L1H ({:?})",
            l1h.status
        )));
    }
    let mut ledger = Theorem2Ledger {
        function: f.clone(),
        superlevels: Vec::new(),
        indices: Vec::new(),
        windows: Vec::new(),
        pieces: Vec::new(),
        measures: Vec::new(),
        integral_lower_bounds: Vec::new(),
        certified_integrals: Vec::new(),
        partial_sums: Vec::new(),
    };
    let mut cutoff = Rational::zero();
    let mut prev_index = 0u64;
    let mut sum = Rational::zero();
    for n in 1..=depth {
        let s = superlevel(f, &int(n as i64))?;
        if s.approx == Approximation::Outer {
            return Err(WitnessError::Construction(format!(
                "superlevel at {n} is only an outer approximation"
            )));
        }
        let need = piece_budget(n);
        let g = fill(&s.family, &cutoff, &need).ok_or_else(|| {
            WitnessError::Construction(format!("superlevel at {n} ran out beyond {cutoff}"))
        })?;
        let extent = g.extent(1);
        let two_n2 = int(2 * (n * n) as i64);
        let a: u64 = (&extent * &two_n2)
            .ceil()
            .try_into()
            .map_err(|_| WitnessError::Construction("window index overflow".into()))?;
        let a = a.max(prev_index + 1);
        let half = Rational::new(a as i64, 1) / &two_n2;
        ledger.windows.push(Interval::closed(-half.clone(), half));
        ledger.indices.push(a);
        prev_index = a;
        let lower = int(n as i64) * &need;
        sum += &lower;
        ledger.certified_integrals.push(integral_abs_over(f, &g, 1).value);
        ledger.integral_lower_bounds.push(lower);
        ledger.partial_sums.push(sum.clone());
        ledger.measures.push(need);
        ledger.superlevels.push(s);
        ledger.pieces.push(g);
        cutoff = extent;
    }
    Ok(ledger)
}

pub fn verify_theorem2(l: &Theorem2Ledger) -> Verification {
    let mut bad = Vec::new();
    let mut all = Vec::new();
    let mut sum = Rational::zero();
    for (i, g) in l.pieces.iter().enumerate() {
        let n = i as u64 + 1;
        let level = int(n as i64);
        match superlevel(&l.function, &level) {
            Ok(s) if s.approx != Approximation::Outer && s.family.covers(g, 1) => {}
            _ => bad.push(format!("G_{n} is not inside the superlevel set at {n}")),
        }
        // Independent pointwise check at the piece endpoints and midpoints.
        for iv in g.head() {
            let (a, b) = (iv.left().unwrap(), iv.right().unwrap());
            let mid = (a + b) / int(2);
            let probes = [Some(mid), iv.left_closed().then(|| a.clone())];
            for x in probes.into_iter().flatten() {
                match evaluate(&l.function, &x) {
                    Ok(v) if v.abs().lo() >= &level => {}
                    // Singular points have |f| = ∞ on both sides.
                    Err(FnError::UndefinedAtPoint { .. }) => {}
                    _ => bad.push(format!("|f({x})| < {n} inside G_{n}")),
                }
            }
        }
        let m: Rational = g.head().iter().filter_map(|iv| iv.length()).sum();
        if g.tail().is_some() || m < piece_budget(n) || m > int(2) * piece_budget(n) {
            bad.push(format!("measure of G_{n} is {m}, outside [1/n^2, 2/n^2]"));
        }
        if m != l.measures[i] {
            bad.push(format!("recorded measure of G_{n} is stale"));
        }
        if l.integral_lower_bounds[i] < int(n as i64) * &m {
            bad.push(format!("integral bound {n} is below n * mu(G_{n})"));
        }
        match l.certified_integrals[i].as_finite() {
            Some(e) if e.lo() >= &l.integral_lower_bounds[i] => {}
            Some(_) => bad.push(format!("certified integral over G_{n} is below its bound")),
            None => {}
        }
        if i > 0 && l.indices[i] <= l.indices[i - 1] {
            bad.push(format!("a_{n} does not increase"));
        }
        let w = &l.windows[i];
        let half = Rational::new(l.indices[i] as i64, 2 * (n * n) as i64);
        if w.right() != Some(&half) || g.extent(1) > half {
            bad.push(format!("G_{n} is not inside F_{n}"));
        }
        sum += &l.integral_lower_bounds[i];
        if l.partial_sums[i] != sum || sum < harmonic(n) {
            bad.push(format!("partial sum {n} is below H_{n}"));
        }
        all.extend(g.head().iter().cloned());
    }
    if IntervalFamily::finite(all).is_err() {
        bad.push("pieces overlap".into());
    }
    finish(bad)
}
