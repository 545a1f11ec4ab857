//! Bounding the variation of an AC function over a finite-measure family.

use acreal::classifier::l1g_bound_via_variation;
use acreal::dsl::{parse_function, parse_set};
use acreal::numerics::rat;

fn main() {
    let f = parse_function("affine(1, 0)").unwrap();
    for (set, delta) in [("{[0,3)}", rat(1, 1)), ("{[0,1/4) [5,11/2)}", rat(1, 1))] {
        let fam = parse_set(set).unwrap();
        let b = l1g_bound_via_variation(&f, &fam, &delta).unwrap();
        println!(
            "{set}, delta {delta}: {:?} case, {} groups, total {} <= bound {}",
            b.case,
            b.groups.len(),
            b.total,
            b.bound
        );
    }
    let steep = parse_function("affine(5, 0)").unwrap();
    let fam = parse_set("{[0,3)}").unwrap();
    println!("{}", l1g_bound_via_variation(&steep, &fam, &rat(1, 1)).unwrap_err());
}
