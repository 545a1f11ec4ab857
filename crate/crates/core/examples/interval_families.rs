//! Interval families with symbolic tails.

use acreal::dsl::parse_set;
use acreal::numerics::rat;

fn main() {
    let a = parse_set("{} ++ tail(left=2n, width=1/n^2, from=1)").unwrap();
    println!("A = {a}");
    println!("first intervals: {:?}", a.tail_intervals(3));
    println!("mu(A) = {:?}", a.measure_with_depth(100));

    let k = parse_set("{[0,3) [5,11/2]}").unwrap();
    let chopped = k.chop(&rat(1, 1)).unwrap();
    println!("{k} chopped at width 1: {chopped}");
    println!("beyond 1: {}", k.restrict_beyond(&rat(1, 1)));
    println!("inside [-1, 1]: {}", k.intersect_window(&rat(1, 1)));
}
