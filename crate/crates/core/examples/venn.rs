//! Classify the three example functions in every space.

use acreal::classifier::{classify, Config};
use acreal::functions::FunctionSpec;

fn main() {
    let config = Config::default();
    for f in [FunctionSpec::f1(), FunctionSpec::f2(), FunctionSpec::f3()] {
        let p = classify(&f, &config).unwrap();
        println!("{f}\n  {}", p.summary());
    }
}
