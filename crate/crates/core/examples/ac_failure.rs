//! The periodic square root is AC on compacts but not on the line.

use acreal::classifier::{classify, Config, SpaceId};
use acreal::functions::FunctionSpec;
use acreal::numerics::rat;
use acreal::witnesses::{ac_failure_intervals, theorem1_adversary, verify_adversary};

fn main() {
    let w = ac_failure_intervals(&rat(1, 4), 10).unwrap();
    println!("10 pairs, total length {} < 1/2", w.length_sum);
    println!("total variation on them {}", w.variation_sum);

    let l = theorem1_adversary(&FunctionSpec::SqrtPeriodic, 8, &rat(1, 2)).unwrap();
    for (n, (fam, b)) in l.families.iter().zip(&l.lower_bounds).enumerate() {
        println!(
            "A_{}: {} intervals, measure {}, integral of |f'| >= {b}",
            n + 1,
            fam.head().len(),
            l.measures[n]
        );
    }
    println!("ledger verified: {}", verify_adversary(&l).is_ok());

    let p = classify(&FunctionSpec::SqrtPeriodic, &Config::default()).unwrap();
    println!("AC_loc: {:?}, AC: {:?}", p.status(SpaceId::ACloc), p.status(SpaceId::AC));
}
