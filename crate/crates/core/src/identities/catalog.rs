//! Left and right sides of every catalogued identity.
//!
//! Left sides are evaluated by direct summation over `T`; right sides are
//! returned as their individual closed-form summands so that a single
//! summand can be sign-flipped by the mutation self-test.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::linrec::{binom_row, series_expand};
use crate::rational::{int, powi, ratio, sign_pow, Rational};
use crate::triboncore::{lambdas, trib, Index};

use super::ap::{ap_genfun, half_weighted_series_value};
use super::IdentityId::{self, *};
use super::ParamAssignment;

/// Values of `r` excluded by the double binomial identities (the zeros of `T_r`).
pub const D_EXCLUDED_R: [Index; 4] = [-17, -4, -1, 0];

fn t(i: Index) -> Result<Rational> {
    Ok(int(trib(i)?))
}

fn tb(i: Index) -> Result<BigInt> {
    trib(i)
}

/// Parameter-presence and validity checks, run before either side.
pub fn check_domain(id: IdentityId, p: &ParamAssignment) -> Result<()> {
    for &param in id.signature() {
        if !p.has(param) {
            return Err(domain(format!("{id} requires parameter {}", param.name())));
        }
    }
    if p.k.is_some() {
        p.k()?;
    }
    match id {
        APGF if p.t()? == 0 => Err(domain(
            "t = 0 has no arithmetic-progression generating function",
        )),
        D1 | D2 | D3 | D4 | D5 | D6 => {
            let r = p.r()?;
            if D_EXCLUDED_R.contains(&r) {
                return Err(domain(format!(
                    "r excluded: r = {r} is in {{-17, -4, -1, 0}}"
                )));
            }
            let zero_tr = tb(r)?.is_zero();
            let zero_f2 = (tb(r - 1)? + tb(r)?).is_zero();
            match id {
                D1 | D3 | D4 | D5 if zero_tr => {
                    Err(Error::Singular(format!("T(r) = 0 at r = {r}")))
                }
                D2 | D6 if zero_f2 => Err(Error::Singular(format!("T(r-1) + T(r) = 0 at r = {r}"))),
                _ => Ok(()),
            }
        }
        _ => Ok(()),
    }
}

/// Exact brute-force left side.
pub fn lhs_eval(id: IdentityId, p: &ParamAssignment) -> Result<Rational> {
    check_domain(id, p)?;
    let two = int(2);
    let half = ratio(1, 2);
    match id {
        W1 => {
            let (m, k) = (p.m()?, p.k()?);
            weighted(&half, k, |j| m - k - 4 + j)
        }
        W2 => {
            let (m, k) = (p.m()?, p.k()?);
            Ok(&two * weighted(&int(-1), k, |j| m - 4 * k - 1 + 4 * j)?)
        }
        W3 => {
            let (m, k) = (p.m()?, p.k()?);
            weighted(&two, k, |j| m - 3 * k + 1 + 3 * j)
        }
        WP1 | WP2 => weighted(&half, p.k()?, |j| j),
        WP3 => Ok(&two * weighted(&int(-1), p.k()?, |j| 4 * j)?),
        WP4 => weighted(&two, p.k()?, |j| 3 * j),
        AP => {
            let (tt, r, x, k) = (p.t()?, p.r()?, p.x()?, p.k()?);
            let [l1, l2, l3] = lambdas(tt)?.as_rationals();
            let factor = int(1) - &l1 * x - &l2 * x * x - &l3 * x * x * x;
            Ok(factor * weighted(x, k, |j| tt * j + r)?)
        }
        APGF => {
            let (tt, r, k) = (p.t()?, p.r()?, p.k()?);
            let series = series_expand(&ap_genfun(tt, r)?, k as usize)?;
            Ok(series.coefficients[k as usize].clone())
        }
        AP1 | AP1Z => {
            let tt = p.t()?;
            let r = if id == AP1 { p.r()? } else { 0 };
            let [l1, l2, l3] = lambdas(tt)?.as_rationals();
            Ok((l1 + l2 + l3 - int(1)) * weighted(&int(1), p.k()?, |j| tt * j + r)?)
        }
        APALT | APALTZ => {
            let tt = p.t()?;
            let r = if id == APALT { p.r()? } else { 0 };
            let [l1, l2, l3] = lambdas(tt)?.as_rationals();
            Ok((int(1) + l1 - l2 + l3) * weighted(&int(-1), p.k()?, |j| tt * j + r)?)
        }
        J1 | J2 | J1Z | J2Z => {
            let r = if matches!(id, J1 | J2) { p.r()? } else { 0 };
            let power = if matches!(id, J1 | J1Z) { 1 } else { 2 };
            let mut total = Rational::zero();
            for j in 0..=p.k()? {
                total += int(j.pow(power)) * t(j + r)?;
            }
            Ok(two * total)
        }
        B1 => {
            let (m, k) = (p.m()?, p.k()?);
            binomial(&int(-2), k, |j| m - 4 * k + 3 * j)
        }
        B2 => {
            let (m, k) = (p.m()?, p.k()?);
            binomial(&int(1), k, |j| m - 3 * k + 4 * j)
        }
        B3 => {
            let (m, k) = (p.m()?, p.k()?);
            binomial(&ratio(-1, 2), k, |j| m + 3 * k + j)
        }
        BP1 => binomial(&int(-2), p.k()?, |j| 3 * j),
        BP2 => binomial(&int(1), p.k()?, |j| 4 * j),
        BP3 => binomial(&ratio(-1, 2), p.k()?, |j| j),
        D1 | D2 | D3 | D4 | D5 | D6 => double_binomial(id, p.r()?, p.m()?, p.k()?),
        DEC => {
            let (tt, m, r) = (p.t()?, p.m()?, p.r()?);
            t(tt * m + r)
        }
        NEG => t(-p.m()?),
        ADD => t(p.m()? + p.r()?),
    }
}

/// Closed-form right side, as its individual summands.
pub fn rhs_terms(id: IdentityId, p: &ParamAssignment) -> Result<Vec<Rational>> {
    check_domain(id, p)?;
    let two = int(2);
    Ok(match id {
        W1 => {
            let (m, k) = (p.m()?, p.k()?);
            vec![&two * t(m - k - 1)?, -powi(&two, -k)? * t(m)?]
        }
        W2 => {
            let (m, k) = (p.m()?, p.k()?);
            vec![sign_pow(k) * t(m)?, t(m - 4 * k - 4)?]
        }
        W3 => {
            let (m, k) = (p.m()?, p.k()?);
            vec![powi(&two, k + 1)? * t(m)?, -t(m - 3 * k - 3)?]
        }
        WP1 => {
            let k = p.k()?;
            vec![int(4), -powi(&two, -k)? * t(k + 4)?]
        }
        WP2 => {
            let k = p.k()?;
            vec![half_weighted_series_value()?, -powi(&two, -k)? * t(k + 4)?]
        }
        WP3 => {
            let k = p.k()?;
            vec![sign_pow(k) * t(4 * k + 1)?, int(-1)]
        }
        WP4 => {
            let k = p.k()?;
            vec![powi(&two, k + 1)? * t(3 * k - 1)?]
        }
        AP => {
            let (tt, r, x, k) = (p.t()?, p.r()?, p.x()?, p.k()?);
            let [_, l2, l3] = lambdas(tt)?.as_rationals();
            let xk1 = powi(x, k + 1)?;
            let xk2 = &xk1 * x;
            vec![
                t(r)?,
                (x * &l2 + x * x * &l3) * t(r - tt)?,
                x * &l3 * t(r - 2 * tt)?,
                -&xk1 * t((k + 1) * tt + r)?,
                -&xk2 * (&l2 + x * &l3) * t(k * tt + r)?,
                -&xk2 * &l3 * t((k - 1) * tt + r)?,
            ]
        }
        APGF => {
            let (tt, r, k) = (p.t()?, p.r()?, p.k()?);
            vec![t(tt * k + r)?]
        }
        AP1 => {
            let (tt, r, k) = (p.t()?, p.r()?, p.k()?);
            let [_, l2, l3] = lambdas(tt)?.as_rationals();
            let l23 = &l2 + &l3;
            vec![
                -t(r)?,
                -&l23 * t(r - tt)?,
                -&l3 * t(r - 2 * tt)?,
                t((k + 1) * tt + r)?,
                &l23 * t(k * tt + r)?,
                &l3 * t((k - 1) * tt + r)?,
            ]
        }
        AP1Z => {
            let (tt, k) = (p.t()?, p.k()?);
            let [_, l2, l3] = lambdas(tt)?.as_rationals();
            let l23 = &l2 + &l3;
            let [a1, a2] = negative_index_parts(tt)?;
            let [b1, b2] = negative_index_parts(2 * tt)?;
            vec![
                -&l23 * a1,
                -&l23 * a2,
                -&l3 * b1,
                -&l3 * b2,
                t((k + 1) * tt)?,
                &l23 * t(k * tt)?,
                &l3 * t((k - 1) * tt)?,
            ]
        }
        APALT => {
            let (tt, r, k) = (p.t()?, p.r()?, p.k()?);
            let [_, l2, l3] = lambdas(tt)?.as_rationals();
            let l32 = &l3 - &l2;
            let sk = sign_pow(k);
            vec![
                t(r)?,
                &l32 * t(r - tt)?,
                -&l3 * t(r - 2 * tt)?,
                &sk * t((k + 1) * tt + r)?,
                &sk * &l32 * t(k * tt + r)?,
                -&sk * &l3 * t((k - 1) * tt + r)?,
            ]
        }
        APALTZ => {
            let (tt, k) = (p.t()?, p.k()?);
            let [_, l2, l3] = lambdas(tt)?.as_rationals();
            let l32 = &l3 - &l2;
            let sk = sign_pow(k);
            let [a1, a2] = negative_index_parts(tt)?;
            let [b1, b2] = negative_index_parts(2 * tt)?;
            vec![
                &l32 * a1,
                &l32 * a2,
                -&l3 * b1,
                -&l3 * b2,
                &sk * t((k + 1) * tt)?,
                &sk * &l32 * t(k * tt)?,
                -&sk * &l3 * t((k - 1) * tt)?,
            ]
        }
        J1 | J1Z => {
            let r = if id == J1 { p.r()? } else { 0 };
            let k = p.k()?;
            let head = if id == J1 {
                vec![-t(r - 2)?, int(3) * t(r + 1)?]
            } else {
                vec![int(2)]
            };
            head.into_iter()
                .chain([
                    int(k - 1) * t(k + r - 1)?,
                    int(2 * k - 1) * t(k + r)?,
                    int(k - 2) * t(k + r + 1)?,
                ])
                .collect()
        }
        J2 | J2Z => {
            let r = if id == J2 { p.r()? } else { 0 };
            let k = p.k()?;
            let head = if id == J2 {
                vec![int(-3) * t(r - 1)?, int(-5) * t(r)?, int(-6) * t(r + 1)?]
            } else {
                vec![int(-6)]
            };
            head.into_iter()
                .chain([
                    int(k * k - 2 * k + 3) * t(k + r - 1)?,
                    int(2 * k * k - 2 * k + 5) * t(k + r)?,
                    int(k * k - 4 * k + 6) * t(k + r + 1)?,
                ])
                .collect()
        }
        B1 => vec![sign_pow(p.k()?) * t(p.m()?)?],
        B2 => vec![powi(&two, p.k()?)? * t(p.m()?)?],
        B3 => vec![powi(&two, -p.k()?)? * t(p.m()?)?],
        BP1 => {
            let k = p.k()?;
            vec![sign_pow(k) * t(4 * k)?]
        }
        BP2 => {
            let k = p.k()?;
            vec![powi(&two, k)? * t(3 * k)?]
        }
        BP3 => {
            let k = p.k()?;
            let scale = powi(&two, -k)?;
            let [a, b] = negative_index_parts(3 * k)?;
            vec![&scale * a, &scale * b]
        }
        D1 | D2 | D3 | D4 | D5 | D6 => {
            let (r, m, k) = (p.r()?, p.m()?, p.k()?);
            let (tr, tr1, f2) = (t(r)?, t(r + 1)?, t(r - 1)? + t(r)?);
            let factor = match id {
                D1 | D3 => tr.recip(),
                D2 => f2.recip(),
                D4 => -(&tr1 / &tr),
                D5 => -(&f2 / &tr),
                _ => -(&tr / &f2),
            };
            vec![powi(&factor, k)? * t(m)?]
        }
        DEC => {
            let (tt, m, r) = (p.t()?, p.m()?, p.r()?);
            let [l1, l2, l3] = lambdas(tt)?.as_rationals();
            vec![
                l1 * t(tt * (m - 1) + r)?,
                l2 * t(tt * (m - 2) + r)?,
                l3 * t(tt * (m - 3) + r)?,
            ]
        }
        NEG => {
            let [a, b] = negative_index_parts(p.m()?)?;
            vec![a, b]
        }
        ADD => {
            let (m, r) = (p.m()?, p.r()?);
            vec![
                t(r)? * t(m - 2)?,
                (t(r - 1)? + t(r)?) * t(m - 1)?,
                t(r + 1)? * t(m)?,
            ]
        }
    })
}

/// Sum of [`rhs_terms`].
pub fn rhs_eval(id: IdentityId, p: &ParamAssignment) -> Result<Rational> {
    Ok(rhs_terms(id, p)?.into_iter().sum())
}

/// `[T_{n-1}^2, -T_{n-2} T_n]`, whose sum is `T_{-n}`.
fn negative_index_parts(n: Index) -> Result<[Rational; 2]> {
    let prev = t(n - 1)?;
    Ok([&prev * &prev, -t(n - 2)? * t(n)?])
}

/// `sum_{j=0}^k w^j T(index(j))`.
fn weighted(w: &Rational, k: i64, index: impl Fn(i64) -> Index) -> Result<Rational> {
    let mut total = Rational::zero();
    let mut power = Rational::one();
    for j in 0..=k {
        total += &power * t(index(j))?;
        power *= w;
    }
    Ok(total)
}

/// `sum_{j=0}^k C(k,j) w^j T(index(j))`.
fn binomial(w: &Rational, k: i64, index: impl Fn(i64) -> Index) -> Result<Rational> {
    let row = binom_row(k as u64);
    let mut total = Rational::zero();
    let mut power = Rational::one();
    for j in 0..=k {
        total += int(row[j as usize].clone()) * &power * t(index(j))?;
        power *= w;
    }
    Ok(total)
}

/// `sum_{j=0}^k sum_{s=0}^j C(k,j) C(j,s) u^j v^s T(m + base k + dj j + ds s)`
/// with the per-identity weights of the double binomial identities, written as
/// `num_a^(j-s) num_b^s / den^j` (times `(-1)^s` for D4 to D6).
fn double_binomial(id: IdentityId, r: Index, m: Index, k: i64) -> Result<Rational> {
    let (tr, tr1) = (t(r)?, t(r + 1)?);
    let f2 = t(r - 1)? + &tr;
    let one = Rational::one();
    // (num_a, num_b, den, base, dj, ds)
    let (num_a, num_b, den, base, dj, ds) = match id {
        D1 => (f2.clone(), tr1.clone(), tr.clone(), -(r + 2), 1, 1),
        D2 => (tr.clone(), tr1.clone(), f2.clone(), -(r + 1), -1, 2),
        D3 => (
            t(r - 1)?,
            t(r - 2)? + t(r - 1)?,
            tr.clone(),
            -(r - 1),
            -2,
            1,
        ),
        D4 => (f2.clone(), -&one, tr.clone(), -2, 1, r + 1),
        D5 => (tr1.clone(), -&one, tr.clone(), -1, 2, r),
        D6 => (tr1.clone(), -&one, f2.clone(), 1, 1, r),
        _ => unreachable!("not a double-binomial identity"),
    };
    // The (-1)^s factor of D4..D6 rides on num_b = -1 there; the weight of a
    // (j, s) cell is num_a^(j-s) num_b^s / den^j.
    let pascal: Vec<Vec<BigInt>> = (0..=k as u64).map(binom_row).collect();
    let a_pows = powers(&num_a, k);
    let b_pows = powers(&num_b, k);
    let inv_den = den.recip();
    let mut den_pow = Rational::one();
    let mut total = Rational::zero();
    for j in 0..=k {
        let mut inner = Rational::zero();
        for s in 0..=j {
            let weight = int(pascal[j as usize][s as usize].clone())
                * &a_pows[(j - s) as usize]
                * &b_pows[s as usize];
            if !weight.is_zero() {
                inner += weight * t(m + base * k + dj * j + ds * s)?;
            }
        }
        total += int(pascal[k as usize][j as usize].clone()) * &den_pow * inner;
        den_pow *= &inv_den;
    }
    Ok(total)
}

fn powers(base: &Rational, k: i64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut acc = Rational::one();
    for _ in 0..=k {
        out.push(acc.clone());
        acc *= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn pm(m: i64, k: i64) -> ParamAssignment {
        ParamAssignment::new().with_m(m).with_k(k)
    }

    #[test]
    fn w2_example() {
        assert_eq!(lhs_eval(W2, &pm(9, 1)).unwrap(), int(-80));
        assert_eq!(rhs_eval(W2, &pm(9, 1)).unwrap(), int(-80));
    }

    #[test]
    fn b2_collapses_at_k_zero() {
        assert_eq!(lhs_eval(B2, &pm(0, 0)).unwrap(), int(0));
    }

    #[test]
    fn wp1_and_wp2_at_k_four() {
        let p = ParamAssignment::new().with_k(4);
        for id in [WP1, WP2] {
            assert_eq!(lhs_eval(id, &p).unwrap(), ratio(5, 4));
            assert_eq!(rhs_eval(id, &p).unwrap(), ratio(5, 4));
        }
    }

    #[test]
    fn j1z_at_k_three() {
        // 2 (1*1 + 2*1 + 3*2) = 18
        let p = ParamAssignment::new().with_k(3);
        assert_eq!(lhs_eval(J1Z, &p).unwrap(), int(18));
        assert_eq!(rhs_eval(J1Z, &p).unwrap(), int(18));
    }

    #[test]
    fn d1_example() {
        let p = ParamAssignment::new().with_r(2).with_m(10).with_k(2);
        assert_eq!(lhs_eval(D1, &p).unwrap(), rhs_eval(D1, &p).unwrap());
        // T_10 / T_2^2
        assert_eq!(rhs_eval(D1, &p).unwrap(), int(149));
    }

    #[test]
    fn d_family_domain() {
        for r in D_EXCLUDED_R {
            let p = ParamAssignment::new().with_r(r).with_m(3).with_k(1);
            let err = lhs_eval(D1, &p).unwrap_err();
            assert!(
                matches!(&err, Error::Domain(msg) if msg.contains("r excluded")),
                "{err}"
            );
        }
        // T_{-3} + T_{-2} = 0 only matters where it is a denominator
        let p = ParamAssignment::new().with_r(-2).with_m(3).with_k(2);
        assert!(lhs_eval(D2, &p).is_err());
        assert!(lhs_eval(D6, &p).is_err());
        assert_eq!(lhs_eval(D1, &p).unwrap(), rhs_eval(D1, &p).unwrap());
    }

    #[test]
    fn missing_parameters_are_domain_errors() {
        let err = lhs_eval(AP, &pm(1, 1)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(rhs_eval(W1, &pm(1, -2)).is_err());
    }

    #[test]
    fn structural_identities() {
        for m in -5..=5 {
            assert_eq!(
                lhs_eval(NEG, &ParamAssignment::new().with_m(m)).unwrap(),
                rhs_eval(NEG, &ParamAssignment::new().with_m(m)).unwrap()
            );
        }
        let p = ParamAssignment::new().with_t(4).with_m(4).with_r(0);
        // T_16 = 11 T_12 + 5 T_8 + T_4
        assert_eq!(lhs_eval(DEC, &p).unwrap(), int(5768));
        assert_eq!(rhs_eval(DEC, &p).unwrap(), int(5768));
    }
}
