//! Exact rationals, certified enclosures and series bounds.

use acreal::numerics::{
    divergence_by_comparison, harmonic, ln_enclosure, rat, series_tail, sqrt_enclosure, SeqTerm,
};

fn main() {
    let half = rat(1, 2);
    println!("sqrt(1/2) in {}", sqrt_enclosure(&half));
    println!("ln(3) in {}", ln_enclosure(&rat(3, 1), 40));

    let basel = series_tail(&SeqTerm::power(rat(1, 1), 2), 1);
    println!("sum 1/n^2 in {}", basel.as_finite().unwrap());

    let bounds: Vec<_> = (1..=50).map(|n| (n, rat(1, n as i64))).collect();
    let cert = divergence_by_comparison(&bounds).unwrap();
    println!(
        "sum 1/n diverges: compared with {} from n = {}, H_50 = {}",
        cert.term,
        cert.from_index,
        harmonic(50)
    );

    let squares: Vec<_> = (1..=50).map(|n| (n, rat(1, (n * n) as i64))).collect();
    println!("sum 1/n^2 rejected: {}", divergence_by_comparison(&squares).unwrap_err());
}
