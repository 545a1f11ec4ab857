use serde::Serialize;

use super::ClassifyError;
use crate::functions::{FunctionSpec, StepCoef};
use crate::numerics::{int, pow_enclosure, Rational, SeqTerm, DEFAULT_ROOT_BITS};
use crate::sets::{Interval, IntervalFamily, LeftFn, TailDescriptor};

/// Largest number of steps enumerated for a decaying step coefficient.
const MAX_STEPS: u64 = 1_000_000;

/// How the returned family relates to the true superlevel set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Approximation {
    /// Equal up to a null set.
    Exact,
    /// Contained in the true set.
    Inner,
    /// Contains the true set.
    Outer,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Superlevel {
    pub level: Rational,
    pub family: IntervalFamily,
    pub approx: Approximation,
}

impl Superlevel {
    fn new(level: &Rational, family: IntervalFamily, approx: Approximation) -> Self {
        Superlevel {
            level: level.clone(),
            family,
            approx,
        }
    }
}

fn family(head: Vec<Interval>) -> IntervalFamily {
    IntervalFamily::finite(head).expect("disjoint superlevel pieces")
}

/// `M^(1/α)` rounded so the family errs on the stated side.
fn level_root(m: &Rational, alpha: &Rational) -> (Rational, bool) {
    let t = pow_enclosure(m, &alpha.recip(), DEFAULT_ROOT_BITS);
    (t.hi().clone(), t.is_exact())
}

/// `{x : |x|^α >= M}`.
fn abs_power_level(alpha: &Rational, m: &Rational) -> (IntervalFamily, Approximation) {
    let (t, exact) = level_root(m, alpha);
    if alpha.is_positive() {
        let fam = family(vec![Interval::ray_down(-t.clone()), Interval::ray_up(t)]);
        (fam, if exact { Approximation::Exact } else { Approximation::Inner })
    } else {
        let zero = Rational::zero();
        let fam = family(vec![
            Interval::closed_open(-t.clone(), zero.clone()),
            Interval::new(Some(zero), Some(t), false, true).expect("t > 0"),
        ]);
        (fam, if exact { Approximation::Exact } else { Approximation::Outer })
    }
}

/// The set `{x : |f(x)| >= M}` as an interval family.
pub fn superlevel(f: &FunctionSpec, m: &Rational) -> Result<Superlevel, ClassifyError> {
    use Approximation::*;
    use FunctionSpec::*;
    if !m.is_positive() {
        return Err(ClassifyError::InvalidParameter(format!(
            "superlevel threshold must be positive, got {m}"
        )));
    }
    let whole = || family(vec![Interval::whole_line()]);
    Ok(match f {
        Affine { slope, intercept } if slope.is_zero() => {
            let fam = if intercept.abs() >= *m {
                whole()
            } else {
                IntervalFamily::empty()
            };
            Superlevel::new(m, fam, Exact)
        }
        Affine { slope, intercept } => {
            let u = (m - intercept) / slope;
            let v = (-m - intercept) / slope;
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            let fam = family(vec![Interval::ray_down(lo), Interval::ray_up(hi)]);
            Superlevel::new(m, fam, Exact)
        }
        SignedPower { exponent } if exponent.is_zero() => {
            let fam = if *m <= int(1) {
                whole()
            } else {
                IntervalFamily::empty()
            };
            Superlevel::new(m, fam, Exact)
        }
        PowerAbs { exponent } | SignedPower { exponent } => {
            let (fam, approx) = abs_power_level(exponent, m);
            Superlevel::new(m, fam, approx)
        }
        Reciprocal => {
            let (fam, approx) = abs_power_level(&int(-1), m);
            Superlevel::new(m, fam, approx)
        }
        SqrtPeriodic => {
            if *m >= int(1) {
                // Only the odd integers reach 1.
                return Ok(Superlevel::new(m, IntervalFamily::empty(), Exact));
            }
            // t >= M² on [2n − 2 + M², 2n − M²]; the negative half-line is dropped.
            let m2 = m * m;
            let tail = TailDescriptor::new(
                1,
                LeftFn::linear(2, &m2 - int(2)),
                SeqTerm::constant(int(2) - &m2 * int(2)),
            )
            .map_err(|e| ClassifyError::NotRepresentable(e.to_string()))?;
            Superlevel::new(m, IntervalFamily::from_tail(tail), Inner)
        }
        SqrtPeriodicDeriv => {
            if *m <= Rational::new(1, 2) {
                return Ok(Superlevel::new(m, whole(), Exact));
            }
            // 1/(2√t) >= M iff t <= 1/(4M²); windows around 2n for n >= 0.
            let t = (m * m * int(4)).recip();
            let tail = TailDescriptor::new(
                1,
                LeftFn::linear(2, -t.clone()),
                SeqTerm::constant(&t * int(2)),
            )
            .map_err(|e| ClassifyError::NotRepresentable(e.to_string()))?;
            let fam = IntervalFamily::new(vec![Interval::closed_open(-t.clone(), t)], Some(tail))
                .map_err(|e| ClassifyError::NotRepresentable(e.to_string()))?;
            Superlevel::new(m, fam, Inner)
        }
        StepSeries { coef, placement } => {
            let fam = match coef {
                StepCoef::Linear(c) => {
                    let n_m: u64 = (m / c.abs())
                        .ceil()
                        .try_into()
                        .map_err(|_| ClassifyError::NotRepresentable("threshold index".into()))?;
                    let start = n_m.max(placement.from_index);
                    IntervalFamily::from_tail(placement.starting_at(start))
                }
                StepCoef::Decay(t) if t.exponent.is_zero() => {
                    if t.coefficient >= *m {
                        IntervalFamily::from_tail(placement.clone())
                    } else {
                        IntervalFamily::empty()
                    }
                }
                StepCoef::Decay(_) => {
                    let mut head = Vec::new();
                    let mut n = placement.from_index;
                    while coef.at(n) >= *m {
                        head.push(placement.interval_at(n));
                        n += 1;
                        if n - placement.from_index > MAX_STEPS {
                            return Err(ClassifyError::NotRepresentable(
                                "too many steps above the threshold".into(),
                            ));
                        }
                    }
                    family(head)
                }
            };
            Superlevel::new(m, fam, Exact)
        }
        Scale { factor, inner } => {
            let s = superlevel(inner, &(m / factor.abs()))?;
            Superlevel { level: m.clone(), ..s }
        }
        SumOf(..) => {
            return Err(ClassifyError::NotRepresentable(format!(
                "superlevel set of the sum {f}"
            )))
        }
    })
}
