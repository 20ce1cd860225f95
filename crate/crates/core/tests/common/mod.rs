//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trisum::linrec::{RecurrenceSpec, Term};
use trisum::rational::{int, ratio};
use trisum::Rational;

/// Elementary symmetric values of the roots of x^3 - x^2 - x - 1.
pub const ROOT_ELEMENTARY: [i64; 3] = [1, -1, 1];
/// Elementary symmetric values of the pairwise products of those roots,
/// i.e. of their reciprocals.
pub const RECIPROCAL_ELEMENTARY: [i64; 3] = [-1, 1, 1];

/// Power sum p_n of three numbers with elementary symmetric values `e`,
/// via Newton's identities.
pub fn newton_power_sum(e: [i64; 3], n: usize) -> BigInt {
    let e: Vec<BigInt> = e.iter().map(|&v| BigInt::from(v)).collect();
    let mut p: Vec<BigInt> = vec![BigInt::from(3)];
    for k in 1..=n {
        let mut acc = BigInt::from(0);
        for i in 1..=k.min(3) {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            let term = if i == k {
                &e[i - 1] * BigInt::from(k as i64)
            } else {
                &e[i - 1] * &p[k - i]
            };
            acc += term * sign;
        }
        p.push(acc);
    }
    p.swap_remove(n)
}

/// (lambda1, lambda2, lambda3) for stride t >= 0 from the power sums alone:
/// the t-th powers of the roots have characteristic polynomial
/// x^3 - p_t x^2 + q_t x - 1, q_t being the power sum of the reciprocals.
pub fn newton_lambdas(t: usize) -> (BigInt, BigInt, BigInt) {
    (
        newton_power_sum(ROOT_ELEMENTARY, t),
        -newton_power_sum(RECIPROCAL_ELEMENTARY, t),
        BigInt::from(1),
    )
}

/// T_n for n in [lo, hi] from the defining recurrence, filled outward from
/// the seeds.
pub fn brute_tribonacci(lo: i64, hi: i64) -> impl Fn(i64) -> BigInt {
    assert!(lo <= 0 && hi >= 2);
    let len = (hi - lo + 1) as usize;
    let mut v = vec![BigInt::from(0); len];
    let at = move |n: i64| (n - lo) as usize;
    v[at(1)] = BigInt::from(1);
    v[at(2)] = BigInt::from(1);
    for n in 3..=hi {
        v[at(n)] = &v[at(n - 1)] + &v[at(n - 2)] + &v[at(n - 3)];
    }
    for n in (lo..0).rev() {
        v[at(n)] = &v[at(n + 3)] - &v[at(n + 2)] - &v[at(n + 1)];
    }
    move |n| v[at(n)].clone()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nonzero_coefficient(rng: &mut impl Rng) -> Rational {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-9..=9);
    }
    int(c)
}

/// A recurrence with `order` distinct shifts in 1..=5, nonzero integer
/// coefficients in [-9, 9] and small rational seeds.
pub fn random_spec(rng: &mut impl Rng, order: usize) -> RecurrenceSpec {
    let mut shifts: Vec<u32> = (1..=5).collect();
    shifts.shuffle(rng);
    shifts.truncate(order);
    let max = *shifts.iter().max().unwrap() as usize;
    let terms = shifts
        .into_iter()
        .map(|s| Term::new(s, nonzero_coefficient(rng)))
        .collect();
    let window = (0..max)
        .map(|_| ratio(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
        .collect();
    RecurrenceSpec::new(terms, rng.gen_range(-3..=3), window).expect("generated spec is valid")
}

pub fn weights() -> Vec<Rational> {
    vec![
        ratio(1, 1),
        ratio(-1, 1),
        ratio(1, 2),
        ratio(-1, 2),
        ratio(2, 1),
        ratio(3, 7),
    ]
}
