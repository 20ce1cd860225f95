//! Decimation coefficients: T_{tm+r} as a third-order recurrence in stride t.
//!
//! cargo run --example decimation

use trisum::identities::{lhs_eval, rhs_eval, IdentityId, ParamAssignment};
use trisum::triboncore::{lambdas, trib_lucas};

fn main() -> trisum::Result<()> {
    println!("{:>4} {:>10} {:>10} {:>4}", "t", "lambda1", "lambda2", "l3");
    for t in -3..=8 {
        let l = lambdas(t)?;
        println!(
            "{t:>4} {:>10} {:>10} {:>4}",
            l.lambda1, l.lambda2, l.lambda3
        );
    }
    println!(
        "lambda1 is the Lucas-type power sum: K_5 = {}",
        trib_lucas(5)?
    );

    // T_{5*7+2} = l1 T_{5*6+2} + l2 T_{5*5+2} + l3 T_{5*4+2}
    let p = ParamAssignment::new().with_t(5).with_m(7).with_r(2);
    println!(
        "{}: {} = {}",
        IdentityId::DEC.statement(),
        lhs_eval(IdentityId::DEC, &p)?,
        rhs_eval(IdentityId::DEC, &p)?
    );
    Ok(())
}
