//! Parsing and printing the function and set syntax.

use acreal::dsl::{parse_ast, parse_function, parse_set};

fn main() {
    for text in [
        "affine(1, 0)",
        "step_series(coef=n, left=n, width=1/n^2, from=1)",
        "deriv(sqrt_periodic)",
        "deriv(pow_abs(3/2))",
        "sum(scale(-2, reciprocal), f2)",
    ] {
        let ast = parse_ast(text).unwrap();
        println!("{text}\n  ast {ast:?}\n  canonical {}", parse_function(text).unwrap());
    }
    println!("{}", parse_set("{[-1,0) (0,1]} ++ tail(left=n^2, width=1/n^3, from=2)").unwrap());
    println!("{}", parse_function("affine(1,").unwrap_err());
}
