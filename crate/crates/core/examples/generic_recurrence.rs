//! Closed forms for an arbitrary linear recurrence loaded from JSON.
//!
//! cargo run --example generic_recurrence

use trisum::linrec::{
    gen_fun, partial_sum_closed, partial_sum_direct, second_order_binomial_sums, series_expand,
    RecurrenceSpec,
};
use trisum::rational::ratio;

// X_m = 3 X_{m-1} - 2 X_{m-3} + X_{m-4}/2
const SPEC: &str = r#"{
  "terms": [
    {"shift": 1, "num": 3},
    {"shift": 3, "num": -2},
    {"shift": 4, "num": 1, "den": 2}
  ],
  "seeds": {"-1": {"num": 2}, "0": {"num": 0}, "1": {"num": 1}, "2": {"num": -1, "den": 3}}
}"#;

fn main() -> trisum::Result<()> {
    let spec = RecurrenceSpec::from_json_str(SPEC)?;
    let values: Vec<String> = spec
        .values(-4, 6)?
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("X_-4..X_6: {}", values.join(", "));

    let x = ratio(2, 5);
    for k in [0, 3, 9] {
        println!(
            "k={k}: direct {} closed {}",
            partial_sum_direct(&spec, &x, k)?,
            partial_sum_closed(&spec, &x, k)?
        );
    }

    let f = gen_fun(&spec)?;
    println!("generating function: {f}");
    println!(
        "matches terms 0..=10: {}",
        series_expand(&f, 10)?.coefficients == spec.values(0, 10)?
    );

    // The two-term form of Tribonacci: T_m = 2 T_{m-1} - T_{m-4}.
    let two = RecurrenceSpec::tribonacci_two_term();
    for variant in 1..=3 {
        let pair = second_order_binomial_sums(&two, variant, 10, 5)?;
        println!("binomial variant {variant}: {} = {}", pair.lhs, pair.rhs);
    }
    Ok(())
}
