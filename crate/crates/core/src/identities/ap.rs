//! Sums over arithmetic progressions of indices, their generating functions,
//! and the `j`- and `j^2`-weighted sums.

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::linrec::{Polynomial, RationalFunction, SumPair};
use crate::rational::{int, ratio, Rational};
use crate::triboncore::{alpha_bracket, lambdas, trib, Index};

use super::catalog::{lhs_eval, rhs_eval};
use super::IdentityId;
use super::ParamAssignment;

/// `1 - l1 x - l2 x^2 - l3 x^3` for stride `t`.
fn progression_denominator(t: Index, x: &Rational) -> Result<Rational> {
    let [l1, l2, l3] = lambdas(t)?.as_rationals();
    Ok(int(1) - l1 * x - l2 * x * x - l3 * x * x * x)
}

/// Both sides of the arithmetic-progression identity in its multiplied form:
/// `(1 - l1 x - l2 x^2 - l3 x^3) sum_j x^j T_{tj+r}` against the closed form.
/// Holds at every weight, including singular ones.
pub fn ap_sum_undivided(t: Index, r: Index, x: &Rational, k: i64) -> Result<SumPair> {
    let p = ParamAssignment::new()
        .with_t(t)
        .with_r(r)
        .with_x(x.clone())
        .with_k(k);
    Ok(SumPair {
        lhs: lhs_eval(IdentityId::AP, &p)?,
        rhs: rhs_eval(IdentityId::AP, &p)?,
    })
}

/// `sum_{j=0}^k x^j T_{tj+r}` directly, against the closed form divided
/// through by `1 - l1 x - l2 x^2 - l3 x^3`.
///
/// `t = 0` is accepted (`lambda = (3, -3, 1)`); the weight `x = 1` is then
/// singular.
pub fn ap_sum(t: Index, r: Index, x: &Rational, k: i64) -> Result<SumPair> {
    let denominator = progression_denominator(t, x)?;
    if denominator.is_zero() {
        return Err(Error::Singular(format!(
            "1 - l1 x - l2 x^2 - l3 x^3 vanishes at t = {t}, x = {x}"
        )));
    }
    let undivided = ap_sum_undivided(t, r, x, k)?;
    let mut lhs = Rational::zero();
    let mut power = Rational::one();
    for j in 0..=k {
        lhs += &power * int(trib(t * j + r)?);
        power *= x;
    }
    Ok(SumPair {
        lhs,
        rhs: undivided.rhs / denominator,
    })
}

/// `(T_r + (l2 T_{r-t} + l3 T_{r-2t}) x + l3 T_{r-t} x^2) / (1 - l1 x - l2 x^2 - l3 x^3)`,
/// the generating function of `T_{tj+r}`.
pub fn ap_genfun(t: Index, r: Index) -> Result<RationalFunction> {
    if t == 0 {
        return Err(domain("t must be nonzero"));
    }
    let [l1, l2, l3] = lambdas(t)?.as_rationals();
    let (t0, t1, t2) = (int(trib(r)?), int(trib(r - t)?), int(trib(r - 2 * t)?));
    let num = Polynomial::new(vec![t0, &l2 * &t1 + &l3 * t2, &l3 * t1]);
    let den = Polynomial::new(vec![int(1), -l1, -l2, -l3]);
    RationalFunction::new(num, den)
}

/// Whether `sum_j x^j T_{tj+r}` converges, i.e. `|x| alpha^t < 1`, decided
/// with the rational bracket around `alpha`.
pub fn ap_convergence_predicate(t: Index, x: &Rational) -> Result<bool> {
    if t < 1 {
        return Err(domain("convergence is decided for t >= 1 only"));
    }
    let bracket = alpha_bracket();
    let magnitude = if x < &Rational::zero() { -x } else { x.clone() };
    let e = t as usize;
    let upper = num_traits::pow(bracket.alpha_hi, e) * &magnitude;
    let lower = num_traits::pow(bracket.alpha_lo, e) * &magnitude;
    let one = Rational::one();
    if upper < one {
        Ok(true)
    } else if lower >= one {
        Ok(false)
    } else {
        Err(Error::Indeterminate(format!(
            "|x| alpha^t straddles 1 for t = {t}, x = {x}"
        )))
    }
}

/// `sum_{j>=0} 2^-j T_j`, from the generating function evaluated at `1/2`
/// after confirming convergence there.
pub fn half_weighted_series_value() -> Result<Rational> {
    let half = ratio(1, 2);
    if !ap_convergence_predicate(1, &half)? {
        return Err(domain("sum 2^-j T_j does not converge"));
    }
    ap_genfun(1, 0)?.eval(&half)
}

/// `2 sum_{j=0}^k j^p T_{j+r}` against its closed form, for `p` in `{1, 2}`.
pub fn weighted_power_sum(p: u32, r: Index, k: i64) -> Result<SumPair> {
    let id = match p {
        1 => IdentityId::J1,
        2 => IdentityId::J2,
        _ => return Err(domain(format!("power {p} is not 1 or 2"))),
    };
    let params = ParamAssignment::new().with_r(r).with_k(k);
    Ok(SumPair {
        lhs: lhs_eval(id, &params)?,
        rhs: rhs_eval(id, &params)?,
    })
}
