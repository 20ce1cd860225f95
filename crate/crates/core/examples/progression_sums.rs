//! Sums over indices in arithmetic progression and their generating functions.
//!
//! cargo run --example progression_sums

use trisum::identities::{ap_genfun, ap_sum, ap_sum_undivided};
use trisum::linrec::series_expand;
use trisum::rational::ratio;
use trisum::Error;

fn main() -> trisum::Result<()> {
    let pair = ap_sum(4, 0, &ratio(1, 1), 3)?;
    println!(
        "T_0 + T_4 + T_8 + T_12 = {} (closed form {})",
        pair.lhs, pair.rhs
    );

    let pair = ap_sum(2, 1, &ratio(-1, 1), 6)?;
    println!("alternating, t=2, r=1, k=6: {} = {}", pair.lhs, pair.rhs);

    // t = 0 makes x = 1 singular after division; the multiplied form still checks.
    match ap_sum(0, 3, &ratio(1, 1), 4) {
        Err(Error::Singular(why)) => println!("singular: {why}"),
        other => println!("unexpected: {other:?}"),
    }
    let pair = ap_sum_undivided(0, 3, &ratio(1, 1), 4)?;
    println!("undivided form there: {} = {}", pair.lhs, pair.rhs);

    let f = ap_genfun(3, -1)?;
    println!("sum_j T_(3j-1) x^j = {f}");
    let s = series_expand(&f, 8)?;
    let shown: Vec<String> = s.coefficients.iter().map(ToString::to_string).collect();
    println!("series: {}", shown.join(", "));
    Ok(())
}
