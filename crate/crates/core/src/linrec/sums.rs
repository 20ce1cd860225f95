use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::rational::{int, powi, Rational};
use crate::triboncore::Index;

use super::poly::{Polynomial, RationalFunction};
use super::spec::RecurrenceSpec;

/// Both sides of an identity, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumPair {
    pub lhs: Rational,
    pub rhs: Rational,
}

impl SumPair {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// A contiguous run of sequence values, addressed by sequence index.
pub(crate) struct Samples {
    lo: Index,
    values: Vec<Rational>,
}

impl Samples {
    pub(crate) fn covering(spec: &RecurrenceSpec, indices: &[Index]) -> Result<Self> {
        let lo = *indices.iter().min().expect("nonempty");
        let hi = *indices.iter().max().expect("nonempty");
        Ok(Samples {
            lo,
            values: spec.values(lo, hi)?,
        })
    }

    pub(crate) fn at(&self, j: Index) -> &Rational {
        &self.values[(j - self.lo) as usize]
    }
}

/// `sum_{j=0}^{k} x^j X_j` by direct summation.
pub fn partial_sum_direct(spec: &RecurrenceSpec, x: &Rational, k: u64) -> Result<Rational> {
    let values = spec.values(0, k as Index)?;
    let mut power = Rational::one();
    let mut total = Rational::zero();
    for v in &values {
        total += &power * v;
        power *= x;
    }
    Ok(total)
}

/// `1 - sum_m f_m x^{c_m}`.
pub fn weight_denominator(spec: &RecurrenceSpec, x: &Rational) -> Rational {
    let mut d = Rational::one();
    for t in spec.terms() {
        d -= &t.coefficient * num_traits::pow(x.clone(), t.shift as usize);
    }
    d
}

/// Closed form of the partial sum:
///
/// ```text
/// S_k(x) = sum_m x^{c_m} f_m ( sum_{j=1}^{c_m} x^{-j} X_{-j} - sum_{j=k-c_m+1}^{k} x^j X_j )
///          / (1 - sum_m x^{c_m} f_m)
/// ```
///
/// The trailing window is taken literally: when `c_m > k + 1` it reaches
/// below index 0 and picks up the corresponding backward values.
pub fn partial_sum_closed(spec: &RecurrenceSpec, x: &Rational, k: u64) -> Result<Rational> {
    if x.is_zero() {
        return Err(domain("weight x = 0 is excluded (negative powers of x)"));
    }
    let denominator = weight_denominator(spec, x);
    if denominator.is_zero() {
        return Err(Error::Singular(format!(
            "1 - sum x^c f vanishes at x = {x}"
        )));
    }
    let k = k as Index;
    let span = spec.max_shift() as Index;
    let samples = Samples::covering(spec, &[-span, k - span + 1, k])?;
    let mut numerator = Rational::zero();
    for term in spec.terms() {
        let c = term.shift as Index;
        let mut inner = Rational::zero();
        for j in 1..=c {
            inner += powi(x, c - j)? * samples.at(-j);
        }
        for j in k - c + 1..=k {
            inner -= powi(x, c + j)? * samples.at(j);
        }
        numerator += &term.coefficient * inner;
    }
    Ok(numerator / denominator)
}

/// Generating function `sum_{j>=0} X_j x^j` as a ratio of polynomials:
/// denominator `1 - sum_m f_m x^{c_m}`, numerator
/// `sum_m f_m sum_{j=1}^{c_m} X_{-j} x^{c_m - j}`.
pub fn gen_fun(spec: &RecurrenceSpec) -> Result<RationalFunction> {
    let span = spec.max_shift() as Index;
    let samples = Samples::covering(spec, &[-span, -1])?;
    let mut num = Polynomial::zero();
    let mut den = Polynomial::constant(Rational::one());
    for term in spec.terms() {
        let c = term.shift as usize;
        den = &den - &Polynomial::monomial(term.coefficient.clone(), c);
        let window: Vec<Rational> = (0..c)
            .map(|power| &term.coefficient * samples.at(power as Index - c as Index))
            .collect();
        num = &num + &Polynomial::new(window);
    }
    RationalFunction::new(num, den)
}

/// `C(k, j)`, zero outside `0..=k`.
pub fn binom(k: u64, j: i64) -> BigInt {
    if j < 0 || j as u64 > k {
        return BigInt::zero();
    }
    let j = (j as u64).min(k - j as u64);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * (k - i) / (i + 1);
    }
    acc
}

/// Row `C(k, 0..=k)`.
pub(crate) fn binom_row(k: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(k as usize + 1);
    let mut acc = BigInt::one();
    row.push(acc.clone());
    for i in 0..k {
        acc = acc * (k - i) / (i + 1);
        row.push(acc.clone());
    }
    row
}

fn term_pair(spec: &RecurrenceSpec, order: usize) -> Result<Vec<(Index, Rational)>> {
    if spec.order() != order {
        return Err(domain(format!(
            "expected an order-{order} recurrence, got {} terms",
            spec.order()
        )));
    }
    Ok(spec
        .terms()
        .iter()
        .map(|t| (t.shift as Index, t.coefficient.clone()))
        .collect())
}

fn check_k(k: i64) -> Result<u64> {
    u64::try_from(k).map_err(|_| domain("k must be a non-negative integer"))
}

/// Weighted sums for `X_m = f1 X_{m-a} + f2 X_{m-b}`, variants 1 to 3:
///
/// 1. `f2 sum_j X_{m-ka-b+aj} / f1^j = X_m / f1^k - f1 X_{m-(k+1)a}`
/// 2. `f1 sum_j X_{m-kb-a+bj} / f2^j = X_m / f2^k - f2 X_{m-(k+1)b}`
/// 3. `sum_j X_{m-(b-a)k+a+(b-a)j} / (-f2/f1)^j = f1 X_m / (-f2/f1)^k + f2 X_{m-(k+1)(b-a)}`
pub fn second_order_weighted_sums(
    spec: &RecurrenceSpec,
    variant: u8,
    m: Index,
    k: i64,
) -> Result<SumPair> {
    let k = check_k(k)? as Index;
    let pair = term_pair(spec, 2)?;
    let ((a, f1), (b, f2)) = (pair[0].clone(), pair[1].clone());
    let (step, lead, weight, head, tail) = match variant {
        // (index step per j, lhs prefactor, per-j ratio, first index, rhs shift)
        1 => (a, f2.clone(), f1.clone(), m - k * a - b, (k + 1) * a),
        2 => (b, f1.clone(), f2.clone(), m - k * b - a, (k + 1) * b),
        3 => (
            b - a,
            Rational::one(),
            -&f2 / &f1,
            m - (b - a) * k + a,
            (k + 1) * (b - a),
        ),
        v => return Err(domain(format!("variant {v} is not one of 1..=3"))),
    };
    let samples = Samples::covering(spec, &[head, head + step * k, m, m - tail])?;
    let mut lhs = Rational::zero();
    for j in 0..=k {
        lhs += samples.at(head + step * j) / powi(&weight, j)?;
    }
    lhs *= lead;
    let xm = samples.at(m);
    let rhs = match variant {
        1 => xm / powi(&f1, k)? - &f1 * samples.at(m - tail),
        2 => xm / powi(&f2, k)? - &f2 * samples.at(m - tail),
        _ => &f1 * xm / powi(&weight, k)? + &f2 * samples.at(m - tail),
    };
    Ok(SumPair { lhs, rhs })
}

/// Binomial sums for `X_m = f1 X_{m-a} + f2 X_{m-b}`, variants 1 to 3:
///
/// 1. `sum_j C(k,j) (f1/f2)^j X_{m-bk+(b-a)j} = X_m / f2^k`
/// 2. `sum_j C(k,j) X_{m+(a-b)k+bj} / (-f2)^j = (-f1/f2)^k X_m`
/// 3. `sum_j C(k,j) X_{m+(b-a)k+aj} / (-f1)^j = (-f2/f1)^k X_m`
pub fn second_order_binomial_sums(
    spec: &RecurrenceSpec,
    variant: u8,
    m: Index,
    k: i64,
) -> Result<SumPair> {
    let ku = check_k(k)?;
    let k = ku as Index;
    let pair = term_pair(spec, 2)?;
    let ((a, f1), (b, f2)) = (pair[0].clone(), pair[1].clone());
    let (head, step, ratio, rhs_factor) = match variant {
        1 => (m - b * k, b - a, &f1 / &f2, f2.recip()),
        2 => (m + (a - b) * k, b, (-&f2).recip(), -&f1 / &f2),
        3 => (m + (b - a) * k, a, (-&f1).recip(), -&f2 / &f1),
        v => return Err(domain(format!("variant {v} is not one of 1..=3"))),
    };
    let samples = Samples::covering(spec, &[head, head + step * k, m])?;
    let row = binom_row(ku);
    let mut lhs = Rational::zero();
    let mut weight = Rational::one();
    for j in 0..=k {
        lhs += int(row[j as usize].clone()) * &weight * samples.at(head + step * j);
        weight *= &ratio;
    }
    let rhs = powi(&rhs_factor, k)? * samples.at(m);
    Ok(SumPair { lhs, rhs })
}

/// Double binomial sums for `X_m = f1 X_{m-a} + f2 X_{m-b} + f3 X_{m-c}`,
/// variants 1 to 6. Each has the shape
/// `sum_{j,s} C(k,j) C(j,s) u^j v^s X_{m + base k + dj j + ds s} = w^k X_m`.
pub fn third_order_double_binomial_sums(
    spec: &RecurrenceSpec,
    variant: u8,
    m: Index,
    k: i64,
) -> Result<SumPair> {
    let ku = check_k(k)?;
    let k = ku as Index;
    let t = term_pair(spec, 3)?;
    let ((a, f1), (b, f2), (c, f3)) = (t[0].clone(), t[1].clone(), t[2].clone());
    let neg_inv = |f: &Rational| -f.recip();
    // (u, v, index base per k, per j, per s, rhs factor w)
    let (u, v, base, dj, ds, w) = match variant {
        1 => (&f2 / &f3, &f1 / &f2, -c, c - b, b - a, f3.recip()),
        2 => (&f3 / &f2, &f1 / &f3, -b, b - c, c - a, f2.recip()),
        3 => (&f3 / &f1, &f2 / &f3, -a, a - c, c - b, f1.recip()),
        4 => (&f2 / &f3, neg_inv(&f2), a - c, c - b, b, -&f1 / &f3),
        5 => (&f1 / &f3, neg_inv(&f1), b - c, c - a, a, -&f2 / &f3),
        6 => (&f1 / &f2, neg_inv(&f1), c - b, b - a, a, -&f3 / &f2),
        v => return Err(domain(format!("variant {v} is not one of 1..=6"))),
    };
    let head = m + base * k;
    let corners = [head, head + dj * k, head + (dj + ds) * k, m];
    let samples = Samples::covering(spec, &corners)?;
    let pascal: Vec<Vec<BigInt>> = (0..=ku).map(binom_row).collect();
    let outer = &pascal[ku as usize];
    let mut lhs = Rational::zero();
    let mut u_pow = Rational::one();
    for j in 0..=k {
        let mut inner = Rational::zero();
        let mut v_pow = Rational::one();
        for s in 0..=j {
            inner += int(pascal[j as usize][s as usize].clone())
                * &v_pow
                * samples.at(head + dj * j + ds * s);
            v_pow *= &v;
        }
        lhs += int(outer[j as usize].clone()) * &u_pow * inner;
        u_pow *= &u;
    }
    let rhs = powi(&w, k)? * samples.at(m);
    Ok(SumPair { lhs, rhs })
}
