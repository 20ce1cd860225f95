//! Binomial and double binomial identities, including the excluded r values.
//!
//! cargo run --example binomial_sums

use trisum::identities::{lhs_eval, rhs_eval, IdentityId, ParamAssignment, D_EXCLUDED_R};
use trisum::linrec::{third_order_double_binomial_sums, RecurrenceSpec};

fn main() -> trisum::Result<()> {
    for id in [IdentityId::B1, IdentityId::B2, IdentityId::B3] {
        let p = ParamAssignment::new().with_m(6).with_k(4);
        println!("{id}: {} = {}", lhs_eval(id, &p)?, rhs_eval(id, &p)?);
    }
    for id in [IdentityId::BP1, IdentityId::BP2, IdentityId::BP3] {
        let p = ParamAssignment::new().with_k(7);
        println!("{id} k=7: {}", rhs_eval(id, &p)?);
    }

    let p = ParamAssignment::new().with_r(3).with_m(2).with_k(3);
    for id in [IdentityId::D1, IdentityId::D4] {
        println!("{id} r=3: {} = {}", lhs_eval(id, &p)?, rhs_eval(id, &p)?);
    }
    for r in D_EXCLUDED_R {
        let p = ParamAssignment::new().with_r(r).with_m(2).with_k(3);
        if let Err(e) = lhs_eval(IdentityId::D1, &p) {
            println!("D1 r={r}: {e}");
        }
    }

    let spec = RecurrenceSpec::tribonacci();
    for variant in 1..=6 {
        let pair = third_order_double_binomial_sums(&spec, variant, 4, 3)?;
        println!(
            "double binomial variant {variant}: {} = {}",
            pair.lhs, pair.rhs
        );
    }
    Ok(())
}
