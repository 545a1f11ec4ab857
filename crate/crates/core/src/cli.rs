//! Command-line front end: `classify`, `witness`, `venn`, `plot`, `verify`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::acceptance;
use crate::classifier::{classify, ClassifyError, Config, VennPlacement};
use crate::dsl::{parse_function, parse_set, ParseError};
use crate::functions::{FunctionSpec, Status};
use crate::numerics::Rational;
use crate::plot::emit_plot;
use crate::report::{PlacementReport, Report, WitnessLedger, WitnessReport};
use crate::witnesses::{
    ac_failure_intervals, application_set_a, theorem1_adversary, theorem2_construction,
    verify_ac_failure, verify_adversary, verify_set_a, verify_theorem2,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_LATTICE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "acreal", version, about = "Certified function-space membership on the real line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify one function in every space.
    Classify {
        /// Function expression, or `@path` to read it from a file.
        expr: String,
        #[arg(long, default_value_t = 100)]
        depth: u64,
        /// Exit with status 3 if any verdict is unknown.
        #[arg(long)]
        strict: bool,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build and re-check a witness ledger.
    Witness {
        kind: WitnessKind,
        #[arg(long = "f")]
        function: Option<String>,
        #[arg(long, default_value = "1/4")]
        delta: Rational,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 100)]
        depth: u64,
        #[arg(long, default_value = "1/2")]
        eps: Rational,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Place several functions and check the inclusion lattice.
    Venn {
        /// Comma-separated expressions; commas inside brackets do not split.
        #[arg(long)]
        funcs: String,
        #[arg(long, default_value_t = 100)]
        depth: u64,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sample a function to CSV, optionally marking a set.
    Plot {
        #[arg(long = "f")]
        function: String,
        /// `lo:hi`
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 201)]
        samples: u64,
        #[arg(long)]
        marks: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    #[value(name = "ac-failure")]
    AcFailure,
    #[value(name = "thm1")]
    Thm1,
    #[value(name = "thm2")]
    Thm2,
    #[value(name = "set-A", alias = "set-a")]
    SetA,
}

/// A failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(EXIT_PARSE, format!("parse error: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        // A closed downstream pipe is not a failure of the command.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::new(EXIT_OK, String::new());
        }
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

fn classify_error(e: ClassifyError) -> Failure {
    let code = match e {
        ClassifyError::LatticeViolation(_) => EXIT_LATTICE,
        _ => EXIT_FAILURE,
    };
    Failure::new(code, e.to_string())
}

fn read_expr(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            if text.trim().is_empty() {
                return Err(Failure::new(EXIT_PARSE, format!("{path} is empty")));
            }
            Ok(text)
        }
        None => Ok(arg.to_string()),
    }
}

/// Splits at commas outside any brackets.
pub fn split_top_level(list: &str) -> Vec<String> {
    let mut out = Vec::new();
    let (mut depth, mut current) = (0i32, String::new());
    for c in list.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(current.trim().to_string());
                current.clear();
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out
}

fn emit(report: &Report, json: &Option<PathBuf>, summary: &[String], out: &mut impl Write) -> Result<(), Failure> {
    match json {
        Some(path) => {
            fs::write(path, report.to_json() + "\n")?;
            for line in summary {
                writeln!(out, "{line}")?;
            }
        }
        None => writeln!(out, "{}", report.to_json())?,
    }
    Ok(())
}

fn has_unknown(p: &VennPlacement) -> bool {
    p.verdicts.values().any(|v| v.status == Status::Unknown)
}

fn place_all(fs: &[FunctionSpec], config: &Config) -> Vec<Result<VennPlacement, ClassifyError>> {
    // Independent classifications run in parallel; results keep input order.
    std::thread::scope(|s| {
        let handles: Vec<_> = fs.iter().map(|f| s.spawn(move || classify(f, config))).collect();
        handles.into_iter().map(|h| h.join().expect("classifier thread")).collect()
    })
}

fn classify_command(
    command: &str,
    exprs: &[String],
    depth: u64,
    strict: bool,
    json: &Option<PathBuf>,
    out: &mut impl Write,
) -> Result<i32, Failure> {
    let fs = exprs
        .iter()
        .map(|e| parse_function(e))
        .collect::<Result<Vec<_>, _>>()?;
    let config = Config {
        depth,
        ..Config::default()
    };
    let mut report = Report::new(command, &config).with_parameter("strict", strict);
    let mut summary = Vec::new();
    let mut unknown = false;
    for p in place_all(&fs, &config) {
        let p = p.map_err(classify_error)?;
        unknown |= has_unknown(&p);
        summary.push(format!("{}: {}", p.function, p.summary()));
        report.placements.push(PlacementReport::from(&p));
    }
    emit(&report, json, &summary, out)?;
    Ok(if strict && unknown { EXIT_UNKNOWN } else { EXIT_OK })
}

#[allow(clippy::too_many_arguments)]
fn witness_command(
    kind: WitnessKind,
    function: Option<String>,
    delta: Rational,
    count: u64,
    depth: u64,
    eps: Rational,
    json: &Option<PathBuf>,
    out: &mut impl Write,
) -> Result<i32, Failure> {
    let f = function.map(|s| read_expr(&s)).transpose()?;
    let f = f.map(|s| parse_function(&s)).transpose()?;
    let fail = |e: crate::witnesses::WitnessError| Failure::new(EXIT_FAILURE, e.to_string());
    let config = Config {
        depth,
        ..Config::default()
    };
    let mut report = Report::new("witness", &config);
    let (ledger, check, name) = match kind {
        WitnessKind::AcFailure => {
            report = report.with_parameter("delta", &delta).with_parameter("count", count);
            let w = ac_failure_intervals(&delta, count).map_err(fail)?;
            let check = verify_ac_failure(&w);
            (WitnessLedger::AcFailure(w), check, "ac-failure")
        }
        WitnessKind::Thm1 => {
            let f = f.unwrap_or(FunctionSpec::SqrtPeriodic);
            report = report.with_parameter("f", &f).with_parameter("eps", &eps);
            let l = theorem1_adversary(&f, depth, &eps).map_err(fail)?;
            let check = verify_adversary(&l);
            (WitnessLedger::Theorem1(l), check, "thm1")
        }
        WitnessKind::Thm2 => {
            let f = f.unwrap_or(FunctionSpec::f1());
            report = report.with_parameter("f", &f);
            let l = theorem2_construction(&f, depth).map_err(fail)?;
            let check = verify_theorem2(&l);
            (WitnessLedger::Theorem2(l), check, "thm2")
        }
        WitnessKind::SetA => {
            let w = application_set_a(depth);
            let check = verify_set_a(&w);
            (WitnessLedger::SetA(w), check, "set-A")
        }
    };
    let failures = check.err().unwrap_or_default();
    let verified = failures.is_empty();
    let summary = vec![format!(
        "{name}: {}",
        if verified { "verified".to_string() } else { failures.join("; ") }
    )];
    report.witness = Some(WitnessReport {
        verified,
        failures,
        ledger,
    });
    emit(&report, json, &summary, out)?;
    Ok(if verified { EXIT_OK } else { EXIT_FAILURE })
}

fn plot_command(
    function: &str,
    range: &str,
    samples: u64,
    marks: Option<String>,
    path: &PathBuf,
    svg: &Option<PathBuf>,
    out: &mut impl Write,
) -> Result<i32, Failure> {
    let f = parse_function(&read_expr(function)?)?;
    let (lo, hi) = range
        .split_once(':')
        .and_then(|(a, b)| Some((a.trim().parse::<Rational>().ok()?, b.trim().parse::<Rational>().ok()?)))
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("range must be lo:hi, got `{range}`")))?;
    let marks = marks.map(|m| parse_set(&m)).transpose()?;
    let table = emit_plot(&f, &lo, &hi, samples, marks.as_ref())
        .map_err(|e| Failure::new(EXIT_FAILURE, e.to_string()))?;
    fs::write(path, table.to_csv())?;
    if let Some(svg) = svg {
        fs::write(svg, table.to_svg(720.0, 240.0))?;
    }
    writeln!(out, "{} rows, {} marks -> {}", table.samples.len(), table.marks.len(), path.display())?;
    Ok(EXIT_OK)
}

fn verify_command(json: &Option<PathBuf>, out: &mut impl Write) -> Result<i32, Failure> {
    let mut report = Report::new("verify", &Config::default());
    let mut lines = Vec::new();
    for o in acceptance::run_all() {
        let line = format!(
            "criterion {}: {} - {}: {}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        );
        writeln!(out, "{line}")?;
        lines.push(line);
        report.criteria.push(o);
    }
    if let Some(path) = json {
        fs::write(path, report.to_json() + "\n")?;
    }
    Ok(if report.criteria.iter().all(|o| o.passed) { EXIT_OK } else { EXIT_FAILURE })
}

pub fn run(cli: Cli, out: &mut impl Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Classify {
            expr,
            depth,
            strict,
            json,
        } => classify_command("classify", &[read_expr(&expr)?], depth, strict, &json, out),
        Command::Witness {
            kind,
            function,
            delta,
            count,
            depth,
            eps,
            json,
        } => witness_command(kind, function, delta, count, depth, eps, &json, out),
        Command::Venn {
            funcs,
            depth,
            strict,
            json,
        } => classify_command("venn", &split_top_level(&funcs), depth, strict, &json, out),
        Command::Plot {
            function,
            range,
            samples,
            marks,
            out: path,
            svg,
        } => plot_command(&function, &range, samples, marks, &path, &svg, out),
        Command::Verify { json } => verify_command(&json, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_split_outside_brackets() {
        assert_eq!(
            split_top_level("f1, affine(1, 0),step_series(coef=n, left=n, width=1/n^2)"),
            vec!["f1", "affine(1, 0)", "step_series(coef=n, left=n, width=1/n^2)"]
        );
    }

    #[test]
    fn classify_emits_json() {
        let cli = Cli::parse_from(["acreal", "classify", "reciprocal"]);
        let mut out = Vec::new();
        assert_eq!(run(cli, &mut out).unwrap(), EXIT_OK);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["placements"][0]["function"], "reciprocal");
    }

    #[test]
    fn parse_errors_exit_with_two() {
        let cli = Cli::parse_from(["acreal", "classify", "affine(1,"]);
        let e = run(cli, &mut Vec::new()).unwrap_err();
        assert_eq!(e.code, EXIT_PARSE);
        assert!(e.message.contains("column 10"));
    }
}
