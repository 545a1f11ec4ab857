//! The periodic square root with the first three intervals of the
//! counterexample marked, written as CSV and SVG.

use acreal::dsl::parse_set;
use acreal::functions::FunctionSpec;
use acreal::numerics::rat;
use acreal::plot::emit_plot;

fn main() -> std::io::Result<()> {
    let marks = parse_set("{[0,1] [2,9/4] [4,37/9]}").unwrap();
    let t = emit_plot(&FunctionSpec::SqrtPeriodic, &rat(-1, 1), &rat(6, 1), 701, Some(&marks)).unwrap();
    let dir = std::env::temp_dir();
    let (csv, svg) = (dir.join("sqrt_periodic.csv"), dir.join("sqrt_periodic.svg"));
    std::fs::write(&csv, t.to_csv())?;
    std::fs::write(&svg, t.to_svg(720.0, 240.0))?;
    println!("{} samples, {} marks", t.samples.len(), t.marks.len());
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
