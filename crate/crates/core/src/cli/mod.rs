//! The `trisum` command line: `term`, `lambda`, `sum`, `verify` and
//! `series`, each printing one JSON [`OutputRecord`] (or CSV rows with
//! `--csv` for `sum` and `verify`).
//!
//! Exit codes: 0 verified/ok, 1 counterexample, 2 usage or I/O error,
//! 3 domain error.

mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Status};
use crate::identities::{
    self, ap_genfun, default_grids, load_grid_file, GridEntry, IdentityId, Instance, Outcome,
    Param, ParamAssignment, RhsMutation, VerificationReport, VerifyOptions,
};
use crate::linrec::{self, RecurrenceSpec, SumPair};
use crate::rational::{parse_rational, Rational};
use crate::triboncore::{lambdas, trib, trib_fast};

pub use output::{exit, write_csv, write_json, CsvRow, OutputRecord, CSV_HEADER, SCHEMA_VERSION};

/// `--fast` results are cross-checked against the iterative path up to this
/// magnitude.
pub const FAST_CROSS_CHECK_LIMIT: i64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "trisum",
    version,
    about = "Exact Tribonacci numbers and summation-identity verification"
)]
pub struct Cli {
    /// Emit CSV (identity,params,lhs,rhs,status) instead of JSON; sum and verify only
    #[arg(long, global = true)]
    pub csv: bool,
    /// Add an elapsed_ms field to the output
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print T_m
    Term {
        #[arg(allow_negative_numbers = true)]
        m: i64,
        /// Use the logarithmic companion-matrix path
        #[arg(long)]
        fast: bool,
    },
    /// Print the decimation coefficients (lambda1, lambda2, lambda3) for stride t
    Lambda {
        #[arg(allow_negative_numbers = true)]
        t: i64,
    },
    /// Evaluate both sides of one identity instance, or of a generic lemma
    Sum(SumArgs),
    /// Sweep identities over parameter grids
    Verify(VerifyArgs),
    /// Expand a generating function and compare coefficients with the sequence
    Series(SeriesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    /// Partial weighted sum, closed form against direct summation (needs --x, --k)
    PartialSum,
    /// Second-order weighted sums, variants 1-3 (needs --variant, --m, --k)
    Weighted2,
    /// Second-order binomial sums, variants 1-3
    Binomial2,
    /// Third-order double binomial sums, variants 1-6
    DoubleBinomial3,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    /// Identity tag, e.g. W1, AP, D3
    #[arg(long, conflicts_with = "spec")]
    pub id: Option<String>,
    /// Recurrence spec JSON file for a generic lemma
    #[arg(long, requires = "lemma")]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub lemma: Option<Lemma>,
    #[arg(long)]
    pub variant: Option<u8>,
    #[arg(long, allow_negative_numbers = true)]
    pub m: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    /// Exact rational weight, e.g. 1/2
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Grid JSON file (one entry or an array); defaults to the built-in grids
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Identity tag or `all`
    #[arg(long, default_value = "all")]
    pub id: String,
    /// Worker threads; output is identical for every value
    #[arg(long, default_value = "1")]
    pub jobs: NonZeroUsize,
    /// Self-test: negate right-side summand TERM (default 0) of identity ID, as ID[:TERM]
    #[arg(long, value_name = "ID[:TERM]")]
    pub mutate_rhs: Option<String>,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(
        long,
        allow_negative_numbers = true,
        conflicts_with = "spec",
        requires = "r"
    )]
    pub t: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires = "t")]
    pub r: Option<i64>,
    /// Recurrence spec JSON file
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Truncation order N; N + 1 coefficients are printed
    #[arg(long, default_value_t = linrec::DEFAULT_SERIES_ORDER)]
    pub terms: usize,
}

/// What a subcommand produced.
struct Reply {
    record: OutputRecord,
    exit: i32,
    csv: Option<Vec<CsvRow>>,
}

impl Reply {
    fn ok(record: OutputRecord) -> Self {
        Reply {
            record,
            exit: exit::OK,
            csv: None,
        }
    }

    fn error(record: OutputRecord, err: &Error) -> Self {
        let record = record.failed(err.status(), err.to_string());
        Reply {
            record,
            exit: exit::DOMAIN,
            csv: None,
        }
    }

    fn usage(record: OutputRecord, message: String) -> Self {
        let record = record.failed(Status::DomainError, message);
        Reply {
            record,
            exit: exit::USAGE,
            csv: None,
        }
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// writes its output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let csv_capable = matches!(cli.command, Command::Sum(_) | Command::Verify(_));
    if cli.csv && !csv_capable {
        let _ = writeln!(err, "error: --csv is supported by sum and verify only");
        return exit::USAGE;
    }
    let mut reply = match &cli.command {
        Command::Term { m, fast } => cmd_term(*m, *fast),
        Command::Lambda { t } => cmd_lambda(*t),
        Command::Sum(a) => cmd_sum(a),
        Command::Verify(a) => cmd_verify(a, cli.timing),
        Command::Series(a) => cmd_series(a),
    };
    if cli.timing {
        reply.record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    if let Some(message) = &reply.record.error {
        let _ = writeln!(err, "error: {message}");
    }
    let written = match (&reply.csv, cli.csv) {
        (Some(rows), true) => write_csv(out, rows),
        _ => write_json(out, &reply.record),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return exit::USAGE;
    }
    reply.exit
}

/// Entry point for the binary.
pub fn main() -> ! {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code)
}

fn inputs<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn cmd_term(m: i64, fast: bool) -> Reply {
    let record = OutputRecord::new(
        "term",
        inputs([("m", m.to_string()), ("fast", fast.to_string())]),
    );
    let value = if fast { trib_fast(m) } else { trib(m) };
    let value = match value {
        Ok(v) => v,
        Err(e) => return Reply::error(record, &e),
    };
    let mut reply = Reply::ok(OutputRecord {
        result: Value::String(value.to_string()),
        ..record
    });
    if fast {
        let checked = m.abs() <= FAST_CROSS_CHECK_LIMIT;
        let agrees = !checked || trib(m).is_ok_and(|v| v == value);
        reply.record.detail = Some(json!({ "cross_checked": checked, "agrees": agrees }));
        if !agrees {
            reply.exit = exit::COUNTEREXAMPLE;
            reply.record.error = Some("fast and iterative paths disagree".into());
        }
    }
    reply
}

fn cmd_lambda(t: i64) -> Reply {
    let record = OutputRecord::new("lambda", inputs([("t", t.to_string())]));
    match lambdas(t) {
        Ok(l) => Reply::ok(OutputRecord {
            result: json!([
                l.lambda1.to_string(),
                l.lambda2.to_string(),
                l.lambda3.to_string()
            ]),
            ..record
        }),
        Err(e) => Reply::error(record, &e),
    }
}

fn pair_result(pair: &SumPair) -> Value {
    json!({
        "lhs": pair.lhs.to_string(),
        "rhs": pair.rhs.to_string(),
        "equal": pair.holds(),
    })
}

fn cmd_sum(a: &SumArgs) -> Reply {
    let mut names: Vec<(&str, String)> = Vec::new();
    if let Some(id) = &a.id {
        names.push(("id", id.clone()));
    }
    if let Some(spec) = &a.spec {
        names.push(("spec", spec.display().to_string()));
    }
    if let Some(lemma) = a.lemma {
        names.push((
            "lemma",
            lemma.to_possible_value().unwrap().get_name().to_string(),
        ));
    }
    if let Some(v) = a.variant {
        names.push(("variant", v.to_string()));
    }
    for (n, v) in [("m", a.m), ("k", a.k), ("t", a.t), ("r", a.r)] {
        if let Some(v) = v {
            names.push((n, v.to_string()));
        }
    }
    let x = match a.x.as_deref().map(parse_rational).transpose() {
        Ok(x) => x,
        Err(e) => {
            let record = OutputRecord::new(
                "sum",
                names.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            );
            return Reply::usage(record, e.to_string());
        }
    };
    if let Some(x) = &x {
        names.push(("x", x.to_string()));
    }
    let record = OutputRecord::new(
        "sum",
        names.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    );

    match (&a.id, &a.spec) {
        (Some(id), None) => sum_identity(record, id, a, x),
        (None, Some(path)) => sum_lemma(record, path, a, x),
        _ => Reply::usage(record, "pass exactly one of --id or --spec".into()),
    }
}

fn sum_identity(record: OutputRecord, id: &str, a: &SumArgs, x: Option<Rational>) -> Reply {
    let id: IdentityId = match id.parse() {
        Ok(id) => id,
        Err(e) => return Reply::usage(record, Error::to_string(&e)),
    };
    if a.lemma.is_some() || a.variant.is_some() {
        return Reply::usage(record, "--lemma and --variant apply to --spec only".into());
    }
    let params = ParamAssignment {
        m: a.m,
        k: a.k,
        t: a.t,
        r: a.r,
        x,
    };
    for p in [Param::M, Param::K, Param::T, Param::R, Param::X] {
        if params.has(p) && !id.signature().contains(&p) {
            let e = Error::Domain(format!("{id} takes no parameter {}", p.name()));
            return Reply::error(record, &e);
        }
    }
    let signature = id.signature();
    let params_text = params.describe(signature);
    let evaluated = identities::lhs_eval(id, &params).and_then(|lhs| {
        Ok(SumPair {
            lhs,
            rhs: identities::rhs_eval(id, &params)?,
        })
    });
    let row = |lhs: String, rhs: String, status: &str| CsvRow {
        identity: id.name().to_string(),
        params: params_text.clone(),
        lhs,
        rhs,
        status: status.to_string(),
    };
    match evaluated {
        Ok(pair) => {
            let status = if pair.holds() { "ok" } else { "counterexample" };
            let csv = vec![row(pair.lhs.to_string(), pair.rhs.to_string(), status)];
            let mut reply = Reply::ok(OutputRecord {
                result: pair_result(&pair),
                ..record
            });
            reply.record.detail = Some(json!({ "statement": id.statement() }));
            reply.csv = Some(csv);
            if !pair.holds() {
                reply.exit = exit::COUNTEREXAMPLE;
            }
            reply
        }
        Err(e) => {
            let csv = vec![row(String::new(), String::new(), e.status().as_str())];
            let mut reply = Reply::error(record, &e);
            reply.csv = Some(csv);
            reply
        }
    }
}

fn read_spec(path: &Path) -> Result<RecurrenceSpec, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    RecurrenceSpec::from_json_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn sum_lemma(record: OutputRecord, path: &Path, a: &SumArgs, x: Option<Rational>) -> Reply {
    let spec = match read_spec(path) {
        Ok(s) => s,
        Err(msg) => return Reply::usage(record, msg),
    };
    let need = |v: Option<i64>, name: &str| {
        v.ok_or_else(|| Error::Domain(format!("--{name} is required")))
    };
    let lemma = a.lemma.expect("clap enforces --lemma with --spec");
    let evaluated = (|| -> crate::Result<SumPair> {
        match lemma {
            Lemma::PartialSum => {
                let x = x
                    .clone()
                    .ok_or_else(|| Error::Domain("--x is required".into()))?;
                let k = need(a.k, "k")?;
                let k =
                    u64::try_from(k).map_err(|_| Error::Domain("k must be non-negative".into()))?;
                Ok(SumPair {
                    lhs: linrec::partial_sum_direct(&spec, &x, k)?,
                    rhs: linrec::partial_sum_closed(&spec, &x, k)?,
                })
            }
            other => {
                let variant = a
                    .variant
                    .ok_or_else(|| Error::Domain("--variant is required".into()))?;
                let (m, k) = (need(a.m, "m")?, need(a.k, "k")?);
                match other {
                    Lemma::Weighted2 => linrec::second_order_weighted_sums(&spec, variant, m, k),
                    Lemma::Binomial2 => linrec::second_order_binomial_sums(&spec, variant, m, k),
                    _ => linrec::third_order_double_binomial_sums(&spec, variant, m, k),
                }
            }
        }
    })();
    match evaluated {
        Ok(pair) => {
            let name = lemma.to_possible_value().unwrap().get_name().to_string();
            let csv = vec![CsvRow {
                identity: name,
                params: record
                    .inputs
                    .iter()
                    .filter(|(k, _)| matches!(k.as_str(), "variant" | "m" | "k" | "x"))
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";"),
                lhs: pair.lhs.to_string(),
                rhs: pair.rhs.to_string(),
                status: if pair.holds() { "ok" } else { "counterexample" }.to_string(),
            }];
            let holds = pair.holds();
            let mut reply = Reply::ok(OutputRecord {
                result: pair_result(&pair),
                ..record
            });
            reply.csv = Some(csv);
            if !holds {
                reply.exit = exit::COUNTEREXAMPLE;
            }
            reply
        }
        Err(e) => Reply::error(record, &e),
    }
}

fn parse_mutation(text: &str) -> Result<RhsMutation, String> {
    let (id, term) = match text.split_once(':') {
        Some((id, term)) => (
            id,
            term.parse::<usize>()
                .map_err(|_| format!("bad term index {term:?}"))?,
        ),
        None => (text, 0),
    };
    let identity = id.parse::<IdentityId>().map_err(|e| e.to_string())?;
    Ok(RhsMutation { identity, term })
}

fn report_json(report: &VerificationReport, timing: bool) -> Value {
    let signature = report.identity.signature();
    let counterexamples: Vec<Value> = report
        .counterexamples
        .iter()
        .map(|c| json!({ "params": c.params.to_strings(), "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string() }))
        .collect();
    let skip_log: Vec<Value> = report
        .skipped
        .iter()
        .map(|s| json!({ "params": s.params.describe(signature), "status": s.status, "reason": s.reason }))
        .collect();
    let mut v = json!({
        "identity": report.identity.name(),
        "checked": report.instances_checked,
        "skipped": report.skipped.len(),
        "verified": report.verified(),
        "counterexamples": counterexamples,
        "skip_log": skip_log,
    });
    if timing {
        v["elapsed_ms"] = json!(report.elapsed.as_millis() as u64);
    }
    v
}

fn instance_row(id: IdentityId, inst: &Instance) -> CsvRow {
    let (lhs, rhs, status) = match &inst.outcome {
        Outcome::Checked { lhs, rhs } => (
            lhs.to_string(),
            rhs.to_string(),
            if lhs == rhs { "ok" } else { "counterexample" },
        ),
        Outcome::Skipped { status, .. } => (String::new(), String::new(), status.as_str()),
    };
    CsvRow {
        identity: id.name().to_string(),
        params: inst.params.describe(id.signature()),
        lhs,
        rhs,
        status: status.to_string(),
    }
}

fn cmd_verify(a: &VerifyArgs, timing: bool) -> Reply {
    let grid_name = a
        .grid
        .as_ref()
        .map_or_else(|| "<default>".to_string(), |p| p.display().to_string());
    let mut record = OutputRecord::new(
        "verify",
        inputs([
            ("id", a.id.clone()),
            ("grid", grid_name),
            ("jobs", a.jobs.to_string()),
        ]),
    );
    if let Some(m) = &a.mutate_rhs {
        record.inputs.insert("mutate_rhs".into(), m.clone());
    }
    let mutation = match a.mutate_rhs.as_deref().map(parse_mutation).transpose() {
        Ok(m) => m,
        Err(msg) => return Reply::usage(record, msg),
    };
    let entries: Vec<GridEntry> = match &a.grid {
        None => default_grids().to_vec(),
        Some(path) => match load_grid_file(path) {
            Err(e) => return Reply::usage(record, format!("cannot read {}: {e}", path.display())),
            Ok(Err(e)) => return Reply::usage(record, format!("{}: {e}", path.display())),
            Ok(Ok(entries)) => entries,
        },
    };
    let selected: Vec<GridEntry> = if a.id.eq_ignore_ascii_case("all") {
        entries
    } else {
        let id: IdentityId = match a.id.parse() {
            Ok(id) => id,
            Err(e) => return Reply::usage(record, Error::to_string(&e)),
        };
        entries.into_iter().filter(|e| e.identity == id).collect()
    };
    if selected.is_empty() {
        return Reply::usage(record, format!("no grid for identity {}", a.id));
    }
    let opts = VerifyOptions {
        jobs: a.jobs.get(),
        mutation,
    };
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for entry in &selected {
        let start = Instant::now();
        let instances = match identities::sweep(entry.identity, &entry.grid, &opts) {
            Ok(i) => i,
            Err(e) => return Reply::error(record, &e),
        };
        rows.extend(instances.iter().map(|i| instance_row(entry.identity, i)));
        reports.push(VerificationReport::from_instances(
            entry.identity,
            &instances,
            start.elapsed(),
        ));
    }
    let checked: usize = reports.iter().map(|r| r.instances_checked).sum();
    let skipped: usize = reports.iter().map(|r| r.skipped.len()).sum();
    let failures: usize = reports.iter().map(|r| r.counterexamples.len()).sum();
    let result = json!({
        "verified": failures == 0,
        "identities": reports.len(),
        "checked": checked,
        "skipped": skipped,
        "counterexamples": failures,
        "reports": reports.iter().map(|r| report_json(r, timing)).collect::<Vec<_>>(),
    });
    let mut reply = Reply::ok(OutputRecord { result, ..record });
    reply.csv = Some(rows);
    if failures > 0 {
        reply.exit = exit::COUNTEREXAMPLE;
    }
    reply
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn cmd_series(a: &SeriesArgs) -> Reply {
    let mut names = BTreeMap::new();
    names.insert("terms".to_string(), a.terms.to_string());
    if let (Some(t), Some(r)) = (a.t, a.r) {
        names.insert("t".into(), t.to_string());
        names.insert("r".into(), r.to_string());
    }
    if let Some(p) = &a.spec {
        names.insert("spec".into(), p.display().to_string());
    }
    let record = OutputRecord::new("series", names);

    let built = match (&a.spec, a.t, a.r) {
        (Some(path), None, None) => match read_spec(path) {
            Ok(spec) => linrec::gen_fun(&spec).and_then(|f| {
                let expected = spec.values(0, a.terms as i64)?;
                Ok((f, expected))
            }),
            Err(msg) => return Reply::usage(record, msg),
        },
        (None, Some(t), Some(r)) => ap_genfun(t, r).and_then(|f| {
            let expected = (0..=a.terms as i64)
                .map(|j| Ok(Rational::from_integer(trib(t * j + r)?)))
                .collect::<crate::Result<Vec<_>>>()?;
            Ok((f, expected))
        }),
        _ => return Reply::usage(record, "pass either --t and --r, or --spec".into()),
    };
    let (f, expected) = match built {
        Ok(v) => v,
        Err(e) => return Reply::error(record, &e),
    };
    let series = match linrec::series_expand(&f, a.terms) {
        Ok(s) => s,
        Err(e) => return Reply::error(record, &e),
    };
    let matches: Vec<bool> = series
        .coefficients
        .iter()
        .zip(&expected)
        .map(|(c, e)| c == e)
        .collect();
    let all_match = matches.iter().all(|&b| b);
    let result = json!({
        "numerator": strings(f.num.coeffs()),
        "denominator": strings(f.den.coeffs()),
        "coefficients": strings(&series.coefficients),
        "expected": strings(&expected),
        "matches": matches,
        "all_match": all_match,
    });
    let mut reply = Reply::ok(OutputRecord { result, ..record });
    if !all_match {
        reply.exit = exit::COUNTEREXAMPLE;
    }
    reply
}
