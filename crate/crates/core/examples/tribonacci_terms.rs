//! Exact Tribonacci numbers at positive, negative and very large indices.
//!
//! cargo run --example tribonacci_terms

use trisum::triboncore::{trib, trib_fast, trib_negative_identity};

fn main() -> trisum::Result<()> {
    let row: Vec<String> = (-10..=10)
        .map(|m| trib(m).map(|v| v.to_string()))
        .collect::<Result<_, _>>()?;
    println!("T_-10..T_10: {}", row.join(" "));

    let zeros: Vec<i64> = (-200..=200)
        .filter(|&m| trib(m).is_ok_and(|v| v == 0.into()))
        .collect();
    println!("zeros in [-200, 200]: {zeros:?}");

    // T_{-m} from positive-index terms only.
    for m in [5, 17, 40] {
        println!("T_-{m} = {} = {}", trib(-m)?, trib_negative_identity(m)?);
    }

    let big = trib_fast(100_000)?.to_string();
    println!(
        "T_100000 has {} digits, starts {}...",
        big.len(),
        &big[..20]
    );
    Ok(())
}
