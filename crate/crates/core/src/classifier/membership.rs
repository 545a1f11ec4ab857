use std::collections::HashMap;

use super::superlevel::{superlevel, Approximation};
use super::{Certificate, ClassifyError, Config, SpaceId, Verdict};
use crate::functions::{derivative, integral_abs_over, FunctionSpec, StepCoef, Status};
use crate::numerics::{int, Enclosure, ExtendedValue, Rational};
use crate::sets::{Interval, IntervalFamily};

/// Verdict cache shared by the spaces of one classification.
pub(crate) struct Memo<'c> {
    config: &'c Config,
    cache: HashMap<(FunctionSpec, SpaceId), Verdict>,
}

fn attribute(space: SpaceId, status: Status, why: impl Into<String>) -> Verdict {
    Verdict::new(
        space,
        status,
        Certificate::Attribute {
            justification: why.into(),
        },
    )
}

fn bound(space: SpaceId, quantity: impl Into<String>, e: Enclosure) -> Verdict {
    Verdict::new(
        space,
        Status::In,
        Certificate::Bound {
            quantity: quantity.into(),
            enclosure: e,
        },
    )
}

/// `∫_fam |f|` turned into a verdict: finite is In, certified infinite is Out.
fn integral_verdict(
    space: SpaceId,
    f: &FunctionSpec,
    fam: IntervalFamily,
    what: &str,
    depth: u64,
) -> Verdict {
    let report = integral_abs_over(f, &fam, depth);
    match report.value {
        ExtendedValue::Finite { enclosure } => bound(space, what, enclosure),
        ExtendedValue::ProvenInfinite { certificate } => Verdict::new(
            space,
            Status::Out,
            Certificate::DivergentFamily {
                measure: fam.measure(),
                family: fam,
                ledger: report.ledger,
                certificate,
            },
        ),
        ExtendedValue::Unknown { reason } => Verdict::unknown(space, reason),
    }
}

fn whole_line() -> IntervalFamily {
    IntervalFamily::finite(vec![Interval::whole_line()]).expect("single interval")
}

fn unit_window() -> IntervalFamily {
    IntervalFamily::finite(vec![Interval::closed(int(-1), int(1))]).expect("single interval")
}

/// Catalog rule: `μ{|f| >= M} = ∞` for every `M > 0`.
fn all_levels_infinite(f: &FunctionSpec) -> Option<String> {
    use FunctionSpec::*;
    match f {
        Affine { slope, .. } if !slope.is_zero() => {
            Some("|ax+b| >= M on two rays for every M".into())
        }
        PowerAbs { exponent } | SignedPower { exponent } if exponent.is_positive() => {
            Some("|x|^a >= M outside a bounded interval for every M".into())
        }
        SqrtPeriodicDeriv => Some(
            "every level M contains a window of width 1/(2M^2) around each even integer".into(),
        ),
        StepSeries {
            coef: StepCoef::Linear(_),
            placement,
        } if placement.width.exponent <= int(1) => {
            Some("c(n) >= M for all large n while the widths are not summable".into())
        }
        Scale { inner, .. } => all_levels_infinite(inner),
        _ => None,
    }
}

/// Closure of a space under sums of two functions.
fn compose(space: SpaceId, l: Verdict, r: Verdict) -> Verdict {
    let (status, rule) = match (l.status, r.status) {
        (Status::In, Status::In) => (Status::In, "sum of two members"),
        (Status::In, Status::Out) | (Status::Out, Status::In) => (
            Status::Out,
            "member plus non-member: the non-member would be a difference of members",
        ),
        _ => {
            return Verdict::unknown(space, "no rule decides a sum of two non-members");
        }
    };
    Verdict::new(
        space,
        status,
        Certificate::Composition {
            rule: rule.into(),
            parts: vec![l, r],
        },
    )
}

impl<'c> Memo<'c> {
    pub(crate) fn new(config: &'c Config) -> Self {
        Memo {
            config,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn verdict(&mut self, f: &FunctionSpec, space: SpaceId) -> Verdict {
        let key = (f.clone(), space);
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let v = match (f, space) {
            (FunctionSpec::SumOf(l, r), s) if s != SpaceId::ACloc && s != SpaceId::AC => {
                let (vl, vr) = (self.verdict(l, s), self.verdict(r, s));
                compose(s, vl, vr)
            }
            // Every composed space is a vector space, so distribute the factor.
            (FunctionSpec::Scale { factor, inner }, s)
                if s != SpaceId::ACloc && s != SpaceId::AC =>
            {
                let scaled = |r: Rational, g: &FunctionSpec| {
                    FunctionSpec::scale(r, g.clone()).expect("nonzero factor")
                };
                match inner.as_ref() {
                    FunctionSpec::SumOf(l, r) => {
                        let g = FunctionSpec::sum(scaled(factor.clone(), l), scaled(factor.clone(), r));
                        self.verdict(&g, s)
                    }
                    FunctionSpec::Scale { factor: k, inner } => {
                        self.verdict(&scaled(factor * k, inner), s)
                    }
                    _ => self.direct(f, s),
                }
            }
            _ => self.direct(f, space),
        };
        self.cache.insert(key, v.clone());
        v
    }

    fn direct(&mut self, f: &FunctionSpec, space: SpaceId) -> Verdict {
        match (f, space) {
            (_, SpaceId::L1) => self.l1(f),
            (_, SpaceId::Linf) => linf(f),
            (_, SpaceId::L1loc) => self.l1loc(f),
            (_, SpaceId::L1H) => self.l1h(f),
            (_, SpaceId::L1G) => self.l1g(f),
            (_, SpaceId::ACloc) => acloc(f),
            (_, SpaceId::AC) => self.ac(f),
        }
    }

    fn l1(&mut self, f: &FunctionSpec) -> Verdict {
        use FunctionSpec::*;
        let space = SpaceId::L1;
        match f {
            Affine { slope, intercept } if slope.is_zero() && intercept.is_zero() => {
                bound(space, "integral of |f| over R", Enclosure::zero())
            }
            Scale { inner, .. } => self.verdict(inner, space),
            StepSeries { placement, .. } => integral_verdict(
                space,
                f,
                IntervalFamily::from_tail(placement.clone()),
                "integral of |f| over its steps",
                self.config.depth,
            ),
            _ => integral_verdict(space, f, whole_line(), "integral of |f| over R", 1),
        }
    }

    fn l1loc(&mut self, f: &FunctionSpec) -> Verdict {
        use FunctionSpec::*;
        let space = SpaceId::L1loc;
        match f {
            PowerAbs { exponent } | SignedPower { exponent } if exponent.is_negative() => {
                integral_verdict(space, f, unit_window(), "integral of |f| over [-1,1]", 1)
            }
            Reciprocal => integral_verdict(space, f, unit_window(), "integral of |f| over [-1,1]", 1),
            SqrtPeriodicDeriv => integral_verdict(
                space,
                f,
                unit_window(),
                "integral of |f| over one period [-1,1]",
                1,
            ),
            Scale { inner, .. } => self.verdict(inner, space),
            StepSeries { .. } => attribute(
                space,
                Status::In,
                "bounded on compacts: finitely many steps meet any bounded interval",
            ),
            _ => attribute(space, Status::In, "continuous, hence bounded on compacts"),
        }
    }

    fn l1h(&mut self, f: &FunctionSpec) -> Verdict {
        let space = SpaceId::L1H;
        let mut level = int(1);
        for _ in 0..=self.config.max_doubling {
            let sl = match superlevel(f, &level) {
                Ok(s) => s,
                Err(e) => return Verdict::unknown(space, e.to_string()),
            };
            let measure = sl.family.measure();
            let cert = Certificate::Threshold {
                level: level.clone(),
                superlevel: sl.family.clone(),
                approx: sl.approx,
                measure: measure.clone(),
                tail_integral: None,
            };
            if measure.is_finite() && sl.approx != Approximation::Inner {
                return Verdict::new(space, Status::In, cert);
            }
            if measure.is_infinite() && sl.approx != Approximation::Outer {
                if let Some(rule) = all_levels_infinite(f) {
                    return Verdict::new(
                        space,
                        Status::Out,
                        Certificate::AllLevelsInfinite {
                            rule,
                            sample: Box::new(cert),
                        },
                    );
                }
            }
            level = level * int(2);
        }
        Verdict::unknown(
            space,
            format!(
                "no superlevel of finite measure found for M <= 2^{}",
                self.config.max_doubling
            ),
        )
    }

    fn l1g(&mut self, f: &FunctionSpec) -> Verdict {
        let space = SpaceId::L1G;
        let h = self.verdict(f, SpaceId::L1H);
        match h.status {
            Status::Out => {
                return Verdict::new(
                    space,
                    Status::Out,
                    Certificate::Implication {
                        from: SpaceId::L1H,
                        premise: Box::new(h),
                    },
                )
            }
            Status::Unknown => return Verdict::unknown(space, "L1H membership undecided"),
            Status::In => {}
        }
        let Certificate::Threshold {
            level,
            superlevel,
            approx,
            measure,
            ..
        } = h.certificate
        else {
            return Verdict::unknown(space, "L1H verdict without a threshold");
        };
        let report = integral_abs_over(f, &superlevel, self.config.depth);
        match report.value {
            v @ ExtendedValue::Finite { .. } => Verdict::new(
                space,
                Status::In,
                Certificate::Threshold {
                    level,
                    superlevel,
                    approx,
                    measure,
                    tail_integral: Some(v),
                },
            ),
            ExtendedValue::ProvenInfinite { certificate } => Verdict::new(
                space,
                Status::Out,
                Certificate::DivergentFamily {
                    family: superlevel,
                    measure,
                    ledger: report.ledger,
                    certificate,
                },
            ),
            ExtendedValue::Unknown { reason } => Verdict::unknown(space, reason),
        }
    }

    fn ac(&mut self, f: &FunctionSpec) -> Verdict {
        let space = SpaceId::AC;
        let loc = acloc(f);
        if loc.status == Status::Out {
            return Verdict::new(
                space,
                Status::Out,
                Certificate::Theorem1 {
                    ac_loc: Box::new(loc),
                    derivative: None,
                    derivative_l1g: None,
                },
            );
        }
        let d = match derivative(f) {
            Ok(d) => d.function,
            Err(e) => return Verdict::unknown(space, e.to_string()),
        };
        let g = self.verdict(&d, SpaceId::L1G);
        let status = match (loc.status, g.status) {
            (_, Status::Out) => Status::Out,
            (Status::In, Status::In) => Status::In,
            _ => Status::Unknown,
        };
        Verdict::new(
            space,
            status,
            Certificate::Theorem1 {
                ac_loc: Box::new(loc),
                derivative: Some(d),
                derivative_l1g: Some(Box::new(g)),
            },
        )
    }
}

fn linf(f: &FunctionSpec) -> Verdict {
    use FunctionSpec::*;
    let space = SpaceId::Linf;
    let sup = |e: Rational| bound(space, "ess sup |f|", Enclosure::exact(e));
    match f {
        Affine { slope, intercept } if slope.is_zero() => sup(intercept.abs()),
        Affine { .. } => attribute(space, Status::Out, "|ax+b| is unbounded for a != 0"),
        PowerAbs { exponent } | SignedPower { exponent } if exponent.is_positive() => {
            attribute(space, Status::Out, "|x|^a is unbounded as |x| grows")
        }
        SignedPower { exponent } if exponent.is_zero() => sup(int(1)),
        PowerAbs { .. } | SignedPower { .. } | Reciprocal => {
            attribute(space, Status::Out, "unbounded near 0")
        }
        SqrtPeriodic => sup(int(1)),
        SqrtPeriodicDeriv => attribute(space, Status::Out, "unbounded near every even integer"),
        StepSeries { coef, placement } => match coef {
            StepCoef::Linear(_) => attribute(
                space,
                Status::Out,
                "|c(n)| grows without bound on steps of positive length",
            ),
            StepCoef::Decay(_) => sup(coef.at(placement.from_index)),
        },
        Scale { factor, inner } => {
            let v = linf(inner);
            match v.certificate {
                Certificate::Bound { enclosure, .. } => {
                    bound(space, "ess sup |f|", enclosure.scale(&factor.abs()))
                }
                _ => Verdict { space, ..v },
            }
        }
        SumOf(..) => unreachable!("sums are composed by the caller"),
    }
}

fn acloc(f: &FunctionSpec) -> Verdict {
    let a = f.attributes();
    match a.ac_loc {
        Status::Unknown => Verdict::unknown(SpaceId::ACloc, a.ac_loc_justification),
        s => attribute(SpaceId::ACloc, s, a.ac_loc_justification),
    }
}

/// Membership of `f` in one space with the default configuration.
pub fn membership(f: &FunctionSpec, space: SpaceId) -> Result<Verdict, ClassifyError> {
    membership_with(f, space, &Config::default())
}

pub fn membership_with(
    f: &FunctionSpec,
    space: SpaceId,
    config: &Config,
) -> Result<Verdict, ClassifyError> {
    Ok(Memo::new(config).verdict(f, space))
}

/// AC(ℝ) as AC_loc together with `f' ∈ L¹_G`.
pub fn ac_via_theorem1(f: &FunctionSpec, config: &Config) -> Result<Verdict, ClassifyError> {
    if acloc(f).status != Status::Out {
        derivative(f)?;
    }
    Ok(Memo::new(config).verdict(f, SpaceId::AC))
}
