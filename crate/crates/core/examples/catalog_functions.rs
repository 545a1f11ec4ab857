//! Evaluation, derivatives, total variation and certified integrals.

use acreal::dsl::{parse_function, parse_set};
use acreal::functions::{derivative, evaluate, integral_abs_over, total_variation};
use acreal::numerics::rat;

fn main() {
    let f = parse_function("sqrt_periodic").unwrap();
    for x in [rat(0, 1), rat(1, 4), rat(1, 1), rat(5, 2)] {
        println!("f({x}) in {}", evaluate(&f, &x).unwrap());
    }
    let d = derivative(&f).unwrap();
    println!("f' = {}", d.function);

    let tv = total_variation(&f, &rat(-3, 2), &rat(7, 3)).unwrap();
    let k = parse_set("{[-3/2,7/3]}").unwrap();
    let by_ftc = integral_abs_over(&d.function, &k, 1).value;
    println!("variation on [-3/2, 7/3]: {:?}", tv.as_finite().unwrap());
    println!("integral of |f'| there:   {:?}", by_ftc.as_finite().unwrap());

    let a = parse_set("{} ++ tail(left=2n, width=1/n^2, from=1)").unwrap();
    let over_a = integral_abs_over(&d.function, &a, 20);
    for e in over_a.ledger.iter().take(4) {
        println!("n = {}: contribution {}, partial sum {}", e.index, e.contribution, e.partial_sum);
    }
    println!("integral of |f'| over A is infinite: {}", over_a.value.is_infinite());
}
