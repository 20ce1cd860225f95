//! Acceptance gate: one PASS/FAIL line per criterion, with its time budget.
//! Exits nonzero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::Value;
use trisum::identities::{
    ap_genfun, default_grid, lhs_eval, rhs_eval, IdentityId, ParamAssignment,
};
use trisum::linrec::{
    partial_sum_closed, partial_sum_direct, second_order_binomial_sums, second_order_weighted_sums,
    series_expand, third_order_double_binomial_sums,
};
use trisum::rational::{int, powi, ratio};
use trisum::triboncore::{lambdas, trib, trib_addition, trib_fast, trib_negative_identity};
use trisum::{Error, Rational};

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: &'static str,
    name: &'static str,
    budget: Duration,
    check: Check,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn seeds_and_zero_set() -> Result<String, String> {
    let seeds: Vec<i64> = (0..=3)
        .map(|m| trib(m).unwrap().try_into().unwrap())
        .collect();
    ensure(seeds == [0, 1, 1, 2], || format!("seeds {seeds:?}"))?;
    let mut zeros = Vec::new();
    for r in -200..=200 {
        if trib(r).map_err(e)? == 0.into() {
            zeros.push(r);
        }
    }
    ensure(zeros == [-17, -4, -1, 0], || format!("zero set {zeros:?}"))?;
    Ok("T_0..T_3 = 0,1,1,2; zeros in [-200, 200] = {-17, -4, -1, 0}".into())
}

fn half_weighted_sum() -> Result<String, String> {
    let half = ratio(1, 2);
    let mut partial = Rational::from_integer(0.into());
    for k in 0..=200i64 {
        partial += powi(&half, k).map_err(e)? * int(trib(k).map_err(e)?);
        let closed = int(4) - powi(&half, k).map_err(e)? * int(trib(k + 4).map_err(e)?);
        ensure(partial == closed, || {
            format!("S_{k} = {partial}, closed form {closed}")
        })?;
        let p = ParamAssignment::new().with_k(k);
        let (l, r) = (
            lhs_eval(IdentityId::WP2, &p).map_err(e)?,
            rhs_eval(IdentityId::WP2, &p).map_err(e)?,
        );
        ensure(l == r && l == partial, || {
            format!("WP2 at k={k}: {l} vs {r}")
        })?;
    }
    let value = ap_genfun(1, 0).map_err(e)?.eval(&half).map_err(e)?;
    ensure(value == int(4), || format!("G(1/2) = {value}"))?;
    Ok("S_k = 4 - 2^-k T_(k+4) for k in [0, 200]; G(1/2) = 4".into())
}

fn lambda_table() -> Result<String, String> {
    let one = lambdas(1).map_err(e)?;
    ensure(
        [one.lambda1, one.lambda2, one.lambda3] == [1.into(), 1.into(), 1.into()],
        || "lambdas(1) != (1,1,1)".into(),
    )?;
    for t in 2..=6 {
        let got = lambdas(t as i64).map_err(e)?;
        let want = common::newton_lambdas(t);
        ensure(
            (
                got.lambda1.clone(),
                got.lambda2.clone(),
                got.lambda3.clone(),
            ) == want,
            || format!("t={t}: {got:?} vs Newton {want:?}"),
        )?;
    }
    let brute = common::brute_tribonacci(-60, 260);
    let mut count = 0;
    for t in 1..=12i64 {
        let (l1, l2, l3) = common::newton_lambdas(t as usize);
        for m in 3..=20 {
            for r in -10..=10 {
                let p = ParamAssignment::new().with_t(t).with_m(m).with_r(r);
                let (lhs, rhs) = (
                    lhs_eval(IdentityId::DEC, &p).map_err(e)?,
                    rhs_eval(IdentityId::DEC, &p).map_err(e)?,
                );
                let oracle = &l1 * brute(t * (m - 1) + r)
                    + &l2 * brute(t * (m - 2) + r)
                    + &l3 * brute(t * (m - 3) + r);
                ensure(
                    lhs == rhs && rhs == int(oracle.clone()) && brute(t * m + r) == oracle,
                    || format!("decimation fails at t={t} m={m} r={r}"),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "lambdas(2..6) match Newton's identities; decimation holds on {count} points"
    ))
}

fn full_suite() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_trisum"))
        .args(["verify", "--id", "all", "--jobs", "1"])
        .output()
        .map_err(|err| err.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}", out.status.code())
    })?;
    let record: Value = serde_json::from_slice(&out.stdout).map_err(|err| err.to_string())?;
    let result = &record["result"];
    let checked = result["checked"].as_u64().unwrap_or(0);
    let skipped = result["skipped"].as_u64().unwrap_or(0);
    ensure(result["counterexamples"] == 0, || {
        format!("{} counterexamples", result["counterexamples"])
    })?;
    ensure(checked >= 10_000, || format!("only {checked} checked"))?;
    let reports = result["reports"].as_array().ok_or("no reports")?;
    ensure(reports.len() == IdentityId::ALL.len(), || {
        format!("{} identities", reports.len())
    })?;
    let mut logged = 0;
    for report in reports {
        for entry in report["skip_log"].as_array().ok_or("no skip log")? {
            let status = entry["status"].as_str().unwrap_or("");
            let reason = entry["reason"].as_str().unwrap_or("");
            ensure(
                matches!(status, "singular" | "domain_error") && !reason.is_empty(),
                || format!("unattributed skip {entry}"),
            )?;
            logged += 1;
        }
    }
    ensure(logged == skipped, || {
        format!("{skipped} skipped but {logged} logged")
    })?;
    let t4 = default_grid(IdentityId::AP1Z)
        .assignments(IdentityId::AP1Z)
        .map_err(e)?
        .iter()
        .filter(|p| p.t == Some(4))
        .count();
    ensure(t4 > 0, || "AP1Z grid lacks t = 4".into())?;
    Ok(format!("{checked} checked, {skipped} skipped (all logged), 0 counterexamples; AP1Z t=4 points: {t4}"))
}

fn generic_lemmas() -> Result<String, String> {
    let mut rng = common::rng(5);
    let (mut partial, mut second, mut third) = (0, 0, 0);
    for _ in 0..100 {
        let order = rng.gen_range(1..=4);
        let spec = common::random_spec(&mut rng, order);
        for x in common::weights() {
            for k in 0..=12 {
                let direct = partial_sum_direct(&spec, &x, k).map_err(e)?;
                match partial_sum_closed(&spec, &x, k) {
                    Ok(closed) => {
                        ensure(closed == direct, || {
                            format!("partial sum {spec:?} x={x} k={k}")
                        })?;
                        partial += 1;
                    }
                    Err(Error::Singular(_)) => {}
                    Err(err) => return Err(err.to_string()),
                }
            }
        }
        let spec = common::random_spec(&mut rng, 2);
        for variant in 1..=3 {
            for m in -5..=5 {
                for k in 0..=6 {
                    let w = second_order_weighted_sums(&spec, variant, m, k).map_err(e)?;
                    let b = second_order_binomial_sums(&spec, variant, m, k).map_err(e)?;
                    ensure(w.holds() && b.holds(), || {
                        format!("second order v{variant} m={m} k={k} {spec:?}")
                    })?;
                    second += 2;
                }
            }
        }
        let spec = common::random_spec(&mut rng, 3);
        for variant in 1..=6 {
            for m in -4..=4 {
                for k in 0..=5 {
                    let d = third_order_double_binomial_sums(&spec, variant, m, k).map_err(e)?;
                    ensure(d.holds(), || {
                        format!("double binomial v{variant} m={m} k={k} {spec:?}")
                    })?;
                    third += 1;
                }
            }
        }
    }
    Ok(format!("100 specs per family: {partial} partial sums, {second} second-order, {third} double-binomial checks"))
}

fn generating_functions() -> Result<String, String> {
    for t in 1..=6 {
        for r in -5..=5 {
            let series = series_expand(&ap_genfun(t, r).map_err(e)?, 32).map_err(e)?;
            for (j, c) in series.coefficients.iter().enumerate() {
                let want = int(trib(t * j as i64 + r).map_err(e)?);
                ensure(*c == want, || format!("t={t} r={r} j={j}: {c} vs {want}"))?;
            }
        }
    }
    Ok("66 generating functions match to order 32".into())
}

fn cross_identities() -> Result<String, String> {
    for k in 0..=20 {
        let p = ParamAssignment::new().with_k(k);
        let rhs = rhs_eval(IdentityId::BP3, &p).map_err(e)?;
        let want = powi(&ratio(1, 2), k).map_err(e)? * int(trib(-3 * k).map_err(e)?);
        ensure(rhs == want, || format!("BP3 k={k}: {rhs} vs {want}"))?;
        ensure(lhs_eval(IdentityId::BP3, &p).map_err(e)? == rhs, || {
            format!("BP3 k={k} fails")
        })?;
    }
    for m in 0..=100 {
        ensure(
            trib_negative_identity(m).map_err(e)? == trib(-m).map_err(e)?,
            || format!("m={m}"),
        )?;
    }
    for m in -30..=30 {
        for r in -30..=30 {
            ensure(
                trib_addition(m, r).map_err(e)? == trib(m + r).map_err(e)?,
                || format!("m={m} r={r}"),
            )?;
        }
    }
    Ok("BP3 for k in [0, 20], negation for m in [0, 100], addition on [-30, 30]^2".into())
}

fn fast_million() -> Result<String, String> {
    let start = Instant::now();
    let v = trib_fast(1_000_000).map_err(e)?;
    let took = start.elapsed();
    Ok(format!(
        "{} decimal digits in {took:.2?}",
        v.to_string().len()
    ))
}

fn fast_agrees() -> Result<String, String> {
    for m in -10_000..=10_000 {
        ensure(trib_fast(m).map_err(e)? == trib(m).map_err(e)?, || {
            format!("m={m}")
        })?;
    }
    Ok("20001 indices".into())
}

fn mutation_self_test() -> Result<String, String> {
    let mut caught = Vec::new();
    for id in IdentityId::ALL {
        let target = format!("{id}:0");
        let out = Command::new(env!("CARGO_BIN_EXE_trisum"))
            .args(["verify", "--id", id.name(), "--mutate-rhs", &target])
            .output()
            .map_err(|err| err.to_string())?;
        ensure(out.status.code() == Some(1), || {
            format!("{target} exit {:?}", out.status.code())
        })?;
        caught.push(id);
    }
    Ok(format!(
        "sign-flipped first rhs term caught (exit 1) for all {} identities",
        caught.len()
    ))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: "1",
        name: "seeds and zero set",
        budget: secs(1),
        check: seeds_and_zero_set,
    },
    Criterion {
        id: "2",
        name: "sum of 2^-j T_j",
        budget: secs(1),
        check: half_weighted_sum,
    },
    Criterion {
        id: "3",
        name: "lambda table and decimation",
        budget: secs(5),
        check: lambda_table,
    },
    Criterion {
        id: "4",
        name: "full identity suite",
        budget: secs(300),
        check: full_suite,
    },
    Criterion {
        id: "5",
        name: "generic lemmas on random specs",
        budget: secs(60),
        check: generic_lemmas,
    },
    Criterion {
        id: "6",
        name: "generating-function series",
        budget: secs(10),
        check: generating_functions,
    },
    Criterion {
        id: "7",
        name: "cross-identity consistency",
        budget: secs(5),
        check: cross_identities,
    },
    Criterion {
        id: "8a",
        name: "trib_fast(10^6)",
        budget: secs(1),
        check: fast_million,
    },
    Criterion {
        id: "8b",
        name: "trib_fast = trib on |m| <= 10^4",
        budget: secs(60),
        check: fast_agrees,
    },
    Criterion {
        id: "8c",
        name: "mutation self-test",
        budget: secs(60),
        check: mutation_self_test,
    },
];

fn main() {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = (c.check)();
        let took = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(detail) if took <= c.budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("over budget: {detail}")),
            Err(why) => ("FAIL", why),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:<3} {verdict}  {:<34} {:>9.3?} / {:?}  {detail}",
            c.id, c.name, took, c.budget
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
