//! Tribonacci numbers over all integer indices.
//!
//! Forward values follow `T_m = T_{m-1} + T_{m-2} + T_{m-3}` from the seeds
//! `T_0 = 0, T_1 = T_2 = 1`; backward values solve the same relation for its
//! most-shifted term, `T_{j-3} = T_j - T_{j-1} - T_{j-2}`. The other classical
//! forms (the four-term recurrence, the negative-index product identity and the
//! addition formula) are exposed as independent evaluators so that they can be
//! checked against the canonical path.
//!
//! The power sums `K_t` of the roots of `x^3 - x^2 - x - 1` and the
//! decimation coefficients `lambda_i(t)` are computed by exact integer
//! recurrences; no floating point is involved anywhere.

use std::cell::RefCell;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, ratio, Rational};

/// A signed sequence subscript.
pub type Index = i64;

/// An exact sequence value.
pub type TermValue = BigInt;

pub const DEFAULT_ITERATIVE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_LOGARITHMIC_LIMIT: u64 = 1_000_000_000_000_000_000;
/// Environment variable overriding both range guards.
pub const MAX_INDEX_ENV: &str = "TRISUM_MAX_INDEX";

/// Entries cached per direction by [`trib`], per thread.
const CACHE_CAP: usize = 1 << 14;

/// Range guards converting runaway indices into errors instead of memory
/// exhaustion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RangeGuard {
    pub iterative: u64,
    pub logarithmic: u64,
}

impl Default for RangeGuard {
    fn default() -> Self {
        RangeGuard {
            iterative: DEFAULT_ITERATIVE_LIMIT,
            logarithmic: DEFAULT_LOGARITHMIC_LIMIT,
        }
    }
}

impl RangeGuard {
    /// Defaults, or the value of `TRISUM_MAX_INDEX` for both guards when it
    /// parses as an unsigned integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_INDEX_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            Some(limit) => RangeGuard {
                iterative: limit,
                logarithmic: limit,
            },
            None => RangeGuard::default(),
        }
    }

    /// Process-wide guard, read from the environment once.
    pub fn current() -> RangeGuard {
        static GUARD: OnceLock<RangeGuard> = OnceLock::new();
        *GUARD.get_or_init(RangeGuard::from_env)
    }

    pub fn check_iterative(&self, index: Index) -> Result<()> {
        check(index, self.iterative)
    }

    pub fn check_logarithmic(&self, index: Index) -> Result<()> {
        check(index, self.logarithmic)
    }
}

fn check(index: Index, limit: u64) -> Result<()> {
    if index.unsigned_abs() > limit {
        Err(Error::IndexOutOfRange { index, limit })
    } else {
        Ok(())
    }
}

/// Per-thread memo of `T_0..` and `T_0, T_{-1}, ..`.
struct Table {
    forward: Vec<BigInt>,
    backward: Vec<BigInt>,
}

impl Table {
    fn new() -> Self {
        Table {
            forward: vec![BigInt::zero(), BigInt::one(), BigInt::one()],
            backward: vec![BigInt::zero()],
        }
    }

    fn get(&mut self, m: Index) -> BigInt {
        if m >= 0 {
            let i = m as usize;
            while self.forward.len() <= i.min(CACHE_CAP - 1) {
                let n = self.forward.len();
                let next = &self.forward[n - 1] + &self.forward[n - 2] + &self.forward[n - 3];
                self.forward.push(next);
            }
            if i < self.forward.len() {
                return self.forward[i].clone();
            }
            let n = self.forward.len();
            let (a, b, c) = (
                &self.forward[n - 3],
                &self.forward[n - 2],
                &self.forward[n - 1],
            );
            iterate_forward((a.clone(), b.clone(), c.clone()), i - (n - 1))
        } else {
            let i = m.unsigned_abs() as usize;
            while self.backward.len() <= i.min(CACHE_CAP - 1) {
                let n = self.backward.len() as Index;
                // T_{-n} = T_{-n+3} - T_{-n+2} - T_{-n+1}
                let next = self.peek(-n + 3) - self.peek(-n + 2) - self.peek(-n + 1);
                self.backward.push(next);
            }
            if i < self.backward.len() {
                return self.backward[i].clone();
            }
            let n = self.backward.len();
            let (a, b, c) = (
                &self.backward[n - 1],
                &self.backward[n - 2],
                &self.backward[n - 3],
            );
            iterate_backward((a.clone(), b.clone(), c.clone()), i - (n - 1))
        }
    }

    fn peek(&self, m: Index) -> &BigInt {
        if m >= 0 {
            &self.forward[m as usize]
        } else {
            &self.backward[m.unsigned_abs() as usize]
        }
    }
}

thread_local! {
    static TABLE: RefCell<Table> = RefCell::new(Table::new());
}

/// Advances the window `(T_{n-2}, T_{n-1}, T_n)` by `steps` and returns the
/// last value.
fn iterate_forward(window: (BigInt, BigInt, BigInt), steps: usize) -> BigInt {
    let (mut a, mut b, mut c) = window;
    for _ in 0..steps {
        let next = &a + &b + &c;
        a = std::mem::replace(&mut b, std::mem::replace(&mut c, next));
    }
    c
}

/// Moves the window `(T_n, T_{n+1}, T_{n+2})` back by `steps` and returns the
/// first value.
fn iterate_backward(window: (BigInt, BigInt, BigInt), steps: usize) -> BigInt {
    let (mut a, mut b, mut c) = window;
    for _ in 0..steps {
        let prev = &c - &b - &a;
        c = std::mem::replace(&mut b, std::mem::replace(&mut a, prev));
    }
    a
}

/// `T_m` for any integer `m` within the iterative range guard.
pub fn trib(m: Index) -> Result<TermValue> {
    RangeGuard::current().check_iterative(m)?;
    Ok(TABLE.with(|t| t.borrow_mut().get(m)))
}

/// `T_m` without consulting the cache; the reference the cache is tested
/// against.
pub fn trib_uncached(m: Index) -> Result<TermValue> {
    RangeGuard::current().check_iterative(m)?;
    let seeds = (BigInt::zero(), BigInt::one(), BigInt::one());
    Ok(match m {
        0 => seeds.0,
        1 | 2 => BigInt::one(),
        m if m > 2 => iterate_forward(seeds, (m - 2) as usize),
        m => iterate_backward(seeds, m.unsigned_abs() as usize),
    })
}

/// A 3x3 integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3(pub [[BigInt; 3]; 3]);

impl Matrix3 {
    pub fn identity() -> Self {
        let mut rows: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        Matrix3(rows)
    }

    /// Companion matrix of `x^3 - x^2 - x - 1`, mapping
    /// `(T_{n}, T_{n-1}, T_{n-2})` to `(T_{n+1}, T_n, T_{n-1})`.
    pub fn companion() -> Self {
        let m = |rows: [[i32; 3]; 3]| Matrix3(rows.map(|r| r.map(BigInt::from)));
        m([[1, 1, 1], [1, 0, 0], [0, 1, 0]])
    }

    pub fn mul(&self, rhs: &Matrix3) -> Matrix3 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out: [[BigInt; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j] + &a[i][2] * &b[2][j];
            }
        }
        Matrix3(out)
    }

    pub fn determinant(&self) -> BigInt {
        let a = &self.0;
        &a[0][0] * (&a[1][1] * &a[2][2] - &a[1][2] * &a[2][1])
            - &a[0][1] * (&a[1][0] * &a[2][2] - &a[1][2] * &a[2][0])
            + &a[0][2] * (&a[1][0] * &a[2][1] - &a[1][1] * &a[2][0])
    }

    /// Classical adjugate: `self * adjugate = det * I`.
    pub fn adjugate(&self) -> Matrix3 {
        let a = &self.0;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &a[r0][c0] * &a[r1][c1] - &a[r0][c1] * &a[r1][c0]
        };
        Matrix3([
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ])
    }

    /// Square-and-multiply power.
    pub fn pow(&self, mut exp: u64) -> Matrix3 {
        let mut result = Matrix3::identity();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        result
    }
}

/// `T_m` in `O(log |m|)` big-integer multiplications via powers of the
/// companion matrix. Negative `m` powers the adjugate, which is the exact
/// integer inverse because the determinant is 1.
pub fn trib_fast(m: Index) -> Result<TermValue> {
    RangeGuard::current().check_logarithmic(m)?;
    let companion = Matrix3::companion();
    let base = if m >= 0 {
        companion
    } else {
        debug_assert!(companion.determinant().is_one());
        companion.adjugate()
    };
    // first column of M^n is (T_{n+1}, T_n, T_{n-1})
    let power = base.pow(m.unsigned_abs());
    let [_, [value, _, _], _] = power.0;
    Ok(value)
}

/// `2 T_{m-1} - T_{m-4}`.
pub fn trib_alt_recurrence_check(m: Index) -> Result<TermValue> {
    Ok(2 * trib(m - 1)? - trib(m - 4)?)
}

/// `T_{m-1}^2 - T_{m-2} T_m`, which equals `T_{-m}`.
pub fn trib_negative_identity(m: Index) -> Result<TermValue> {
    let prev = trib(m - 1)?;
    Ok(&prev * &prev - trib(m - 2)? * trib(m)?)
}

/// `T_r T_{m-2} + (T_{r-1} + T_r) T_{m-1} + T_{r+1} T_m`, which equals
/// `T_{m+r}`.
pub fn trib_addition(m: Index, r: Index) -> Result<TermValue> {
    let tr = trib(r)?;
    Ok(&tr * trib(m - 2)? + (trib(r - 1)? + &tr) * trib(m - 1)? + trib(r + 1)? * trib(m)?)
}

/// `K_t`, the sum of the `t`-th powers of the roots of `x^3 - x^2 - x - 1`,
/// from `K_0 = 3, K_1 = 1, K_2 = 3` and the Tribonacci recurrence in both
/// directions.
pub fn trib_lucas(t: Index) -> Result<TermValue> {
    RangeGuard::current().check_iterative(t)?;
    let seeds = (BigInt::from(3), BigInt::one(), BigInt::from(3));
    Ok(match t {
        0 => seeds.0,
        1 => seeds.1,
        2 => seeds.2,
        t if t > 2 => iterate_forward(seeds, (t - 2) as usize),
        t => iterate_backward(seeds, t.unsigned_abs() as usize),
    })
}

/// Decimation coefficients for stride `t`:
/// `T_{tm+r} = lambda1 T_{t(m-1)+r} + lambda2 T_{t(m-2)+r} + lambda3 T_{t(m-3)+r}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTriple {
    pub t: Index,
    pub lambda1: TermValue,
    pub lambda2: TermValue,
    pub lambda3: TermValue,
}

impl LambdaTriple {
    pub fn as_rationals(&self) -> [Rational; 3] {
        [
            int(self.lambda1.clone()),
            int(self.lambda2.clone()),
            int(self.lambda3.clone()),
        ]
    }
}

/// `lambda1 = K_t`, `lambda2 = -K_{-t}` (the pairwise products of the roots
/// are reciprocals of single roots since their product is 1), `lambda3 = 1`.
pub fn lambdas(t: Index) -> Result<LambdaTriple> {
    Ok(LambdaTriple {
        t,
        lambda1: trib_lucas(t)?,
        lambda2: -trib_lucas(-t)?,
        lambda3: BigInt::one(),
    })
}

/// `x^3 - x^2 - x - 1`.
pub fn characteristic(x: &Rational) -> Rational {
    let x2 = x * x;
    &x2 * x - &x2 - x - int(1)
}

/// Rational bracket around the dominant real root of `x^3 - x^2 - x - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootApprox {
    pub alpha_lo: Rational,
    pub alpha_hi: Rational,
}

impl RootApprox {
    pub fn width(&self) -> Rational {
        &self.alpha_hi - &self.alpha_lo
    }
}

/// Bisection on `[1.8, 1.9]` down to a width of at most `10^-12`.
pub fn alpha_bracket() -> RootApprox {
    static BRACKET: OnceLock<RootApprox> = OnceLock::new();
    BRACKET
        .get_or_init(|| {
            let tolerance = Rational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
            let (mut lo, mut hi) = (ratio(9, 5), ratio(19, 10));
            while &hi - &lo > tolerance {
                let mid = (&lo + &hi) / int(2);
                if characteristic(&mid).is_negative() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            RootApprox {
                alpha_lo: lo,
                alpha_hi: hi,
            }
        })
        .clone()
}
