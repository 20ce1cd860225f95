//! Sums weighted by powers of 2, and the limit sum_j T_j / 2^j = 4.
//!
//! cargo run --example weighted_sums

use trisum::identities::{
    ap_convergence_predicate, ap_genfun, lhs_eval, rhs_eval, weighted_power_sum, IdentityId,
    ParamAssignment,
};
use trisum::rational::ratio;

fn main() -> trisum::Result<()> {
    for id in [IdentityId::W1, IdentityId::W2, IdentityId::W3] {
        let p = ParamAssignment::new().with_m(9).with_k(5);
        println!(
            "{id} at m=9, k=5: {} = {}",
            lhs_eval(id, &p)?,
            rhs_eval(id, &p)?
        );
    }
    for k in [0, 4, 10, 30] {
        let p = ParamAssignment::new().with_k(k);
        println!("partial sum to k={k}: {}", lhs_eval(IdentityId::WP2, &p)?);
    }

    let half = ratio(1, 2);
    println!(
        "converges at x = 1/2: {}",
        ap_convergence_predicate(1, &half)?
    );
    println!("G(1/2) = {}", ap_genfun(1, 0)?.eval(&half)?);

    // sum_j j 2^-j T_(j+r), and the j^2 version
    for p in [1, 2] {
        let pair = weighted_power_sum(p, 0, 8)?;
        println!("j^{p} weights, k=8: {} = {}", pair.lhs, pair.rhs);
    }
    Ok(())
}
