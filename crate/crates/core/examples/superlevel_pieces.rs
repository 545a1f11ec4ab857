//! Pieces of superlevel sets that make an unbounded function non-integrable
//! over a set of finite measure.

use acreal::functions::FunctionSpec;
use acreal::witnesses::{theorem2_construction, verify_theorem2};

fn main() {
    for f in [FunctionSpec::f1(), FunctionSpec::SqrtPeriodicDeriv] {
        let l = theorem2_construction(&f, 5).unwrap();
        println!("{f}");
        for (n, g) in l.pieces.iter().enumerate() {
            println!(
                "  G_{} = {g}, a_n = {}, lower bound {}, partial sum {}",
                n + 1,
                l.indices[n],
                l.integral_lower_bounds[n],
                l.partial_sums[n]
            );
        }
        println!("  verified: {}", verify_theorem2(&l).is_ok());
    }
}
