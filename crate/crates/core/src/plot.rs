//! Sample tables for plotting, as CSV or a minimal SVG.

use std::fmt::Write;

use crate::functions::{evaluate, FunctionSpec};
use crate::numerics::{int, Enclosure, Rational};
use crate::sets::IntervalFamily;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlotError {
    #[error("invalid range: need lo < hi, got [{0}, {1}]")]
    InvalidRange(String, String),
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(u64),
    #[error("marks must be a finite union of bounded intervals")]
    UnboundedMarks,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub x: Rational,
    pub y: f64,
    pub enclosure: Enclosure,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotTable {
    pub function: FunctionSpec,
    pub samples: Vec<Sample>,
    pub marks: Vec<(Rational, Rational)>,
}

/// `samples` points at uniform rational steps over `[lo, hi]`; points where
/// `f` is undefined are skipped.
pub fn emit_plot(
    f: &FunctionSpec,
    lo: &Rational,
    hi: &Rational,
    samples: u64,
    marks: Option<&IntervalFamily>,
) -> Result<PlotTable, PlotError> {
    if lo >= hi {
        return Err(PlotError::InvalidRange(lo.to_string(), hi.to_string()));
    }
    if samples < 2 {
        return Err(PlotError::TooFewSamples(samples));
    }
    let step = (hi - lo) / int(samples as i64 - 1);
    let rows = (0..samples)
        .filter_map(|i| {
            let x = lo + &step * int(i as i64);
            let enclosure = evaluate(f, &x).ok()?;
            Some(Sample {
                y: enclosure.midpoint().to_f64(),
                x,
                enclosure,
            })
        })
        .collect();
    let marks = match marks {
        None => Vec::new(),
        Some(m) if m.tail().is_some() || m.has_unbounded() => return Err(PlotError::UnboundedMarks),
        Some(m) => m
            .head()
            .iter()
            .map(|iv| (iv.left().unwrap().clone(), iv.right().unwrap().clone()))
            .collect(),
    };
    Ok(PlotTable {
        function: f.clone(),
        samples: rows,
        marks,
    })
}

impl PlotTable {
    /// `band,x,x_end,y`: one `curve` row per sample, one `mark` row per marked interval at level 0.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("band,x,x_end,y\n");
        for s in &self.samples {
            writeln!(out, "curve,{},,{}", s.x.to_f64(), s.y).unwrap();
        }
        for (a, b) in &self.marks {
            writeln!(out, "mark,{},{},0", a.to_f64(), b.to_f64()).unwrap();
        }
        out
    }

    pub fn to_svg(&self, width: f64, height: f64) -> String {
        let xs: Vec<f64> = self.samples.iter().map(|s| s.x.to_f64()).collect();
        let ys: Vec<f64> = self.samples.iter().map(|s| s.y).chain([0.0]).collect();
        let (x0, x1) = (xs.iter().cloned().fold(f64::MAX, f64::min), xs.iter().cloned().fold(f64::MIN, f64::max));
        let (y0, y1) = (ys.iter().cloned().fold(f64::MAX, f64::min), ys.iter().cloned().fold(f64::MIN, f64::max));
        let sx = |x: f64| (x - x0) / (x1 - x0).max(f64::EPSILON) * width;
        let sy = |y: f64| height - (y - y0) / (y1 - y0).max(f64::EPSILON) * height;
        let mut out = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
        );
        let points: Vec<String> = self
            .samples
            .iter()
            .map(|s| format!("{:.3},{:.3}", sx(s.x.to_f64()), sy(s.y)))
            .collect();
        writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>",
            points.join(" ")
        )
        .unwrap();
        for (a, b) in &self.marks {
            writeln!(
                out,
                "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\" stroke=\"red\" stroke-width=\"3\"/>",
                sx(a.to_f64()),
                sy(0.0),
                sx(b.to_f64()),
                sy(0.0)
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn two_samples_of_the_identity() {
        let t = emit_plot(&FunctionSpec::f1(), &int(0), &int(1), 2, None).unwrap();
        let xy: Vec<(Rational, f64)> = t.samples.iter().map(|s| (s.x.clone(), s.y)).collect();
        assert_eq!(xy, vec![(int(0), 0.0), (int(1), 1.0)]);
        assert_eq!(t.to_csv(), "band,x,x_end,y\ncurve,0,,0\ncurve,1,,1\n");
    }

    #[test]
    fn undefined_points_are_skipped() {
        let t = emit_plot(&FunctionSpec::Reciprocal, &int(-1), &int(1), 5, None).unwrap();
        assert_eq!(t.samples.len(), 4);
        assert!(t.samples.iter().all(|s| !s.x.is_zero()));
    }

    #[test]
    fn figure_with_marks() {
        let marks = crate::dsl::parse_set("{[0,1] [2,9/4] [4,37/9]}").unwrap();
        let t = emit_plot(&FunctionSpec::SqrtPeriodic, &int(-1), &int(6), 701, Some(&marks)).unwrap();
        assert_eq!(t.samples.len(), 701);
        assert_eq!(t.marks[1], (int(2), rat(9, 4)));
        for s in &t.samples {
            assert!(s.enclosure.contains_f64(s.y));
        }
        assert!(t.to_svg(600.0, 200.0).contains("stroke=\"red\""));
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(emit_plot(&FunctionSpec::f1(), &int(1), &int(1), 5, None).is_err());
        assert!(emit_plot(&FunctionSpec::f1(), &int(0), &int(1), 1, None).is_err());
    }
}
