use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result, Status};
use crate::rational::Rational;

use super::catalog::{lhs_eval, rhs_terms};
use super::{IdentityId, ParamAssignment, ParamGrid};

/// Negates one closed-form summand of one identity's right side. Used to
/// confirm that the sweep actually detects a wrong formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RhsMutation {
    pub identity: IdentityId,
    pub term: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Worker threads; 1 evaluates on the calling thread.
    pub jobs: usize,
    pub mutation: Option<RhsMutation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: 1,
            mutation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Checked { lhs: Rational, rhs: Rational },
    Skipped { status: Status, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub params: ParamAssignment,
    pub outcome: Outcome,
}

impl Instance {
    pub fn is_counterexample(&self) -> bool {
        matches!(&self.outcome, Outcome::Checked { lhs, rhs } if lhs != rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub params: ParamAssignment,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedInstance {
    pub params: ParamAssignment,
    pub status: Status,
    pub reason: String,
}

/// Result of sweeping one identity over one grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub instances_checked: usize,
    pub skipped: Vec<SkippedInstance>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn from_instances(identity: IdentityId, instances: &[Instance], elapsed: Duration) -> Self {
        let mut report = VerificationReport {
            identity,
            instances_checked: 0,
            skipped: Vec::new(),
            counterexamples: Vec::new(),
            elapsed,
        };
        for inst in instances {
            match &inst.outcome {
                Outcome::Checked { lhs, rhs } => {
                    report.instances_checked += 1;
                    if lhs != rhs {
                        report.counterexamples.push(Counterexample {
                            params: inst.params.clone(),
                            lhs: lhs.clone(),
                            rhs: rhs.clone(),
                        });
                    }
                }
                Outcome::Skipped { status, reason } => report.skipped.push(SkippedInstance {
                    params: inst.params.clone(),
                    status: *status,
                    reason: reason.clone(),
                }),
            }
        }
        report
    }
}

fn pair(
    id: IdentityId,
    p: &ParamAssignment,
    mutation: Option<RhsMutation>,
) -> Result<(Rational, Rational)> {
    let lhs = lhs_eval(id, p)?;
    let mut terms = rhs_terms(id, p)?;
    if let Some(m) = mutation.filter(|m| m.identity == id) {
        if let Some(term) = terms.get_mut(m.term) {
            *term = -term.clone();
        }
    }
    Ok((lhs, terms.into_iter().sum()))
}

/// Evaluates both sides of one instance. Domain or singular conditions become
/// a logged skip rather than an error.
pub fn evaluate(id: IdentityId, p: &ParamAssignment, mutation: Option<RhsMutation>) -> Outcome {
    match pair(id, p, mutation) {
        Ok((lhs, rhs)) => Outcome::Checked { lhs, rhs },
        Err(e) => Outcome::Skipped {
            status: e.status(),
            reason: e.to_string(),
        },
    }
}

/// Every instance of the grid, in lexicographic parameter order regardless
/// of `jobs`.
pub fn sweep(id: IdentityId, grid: &ParamGrid, opts: &VerifyOptions) -> Result<Vec<Instance>> {
    let assignments = grid.assignments(id)?;
    let run = |p: ParamAssignment| {
        let outcome = evaluate(id, &p, opts.mutation);
        Instance { params: p, outcome }
    };
    if opts.jobs <= 1 {
        return Ok(assignments.into_iter().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| assignments.into_par_iter().map(run).collect()))
}

pub fn verify_with(
    id: IdentityId,
    grid: &ParamGrid,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let instances = sweep(id, grid, opts)?;
    Ok(VerificationReport::from_instances(
        id,
        &instances,
        start.elapsed(),
    ))
}

/// Single-threaded sweep without mutation.
pub fn verify(id: IdentityId, grid: &ParamGrid) -> Result<VerificationReport> {
    verify_with(id, grid, &VerifyOptions::default())
}

/// Sequential sweep that stops at the first mismatch.
pub fn first_counterexample(
    id: IdentityId,
    grid: &ParamGrid,
    mutation: Option<RhsMutation>,
) -> Result<Option<Counterexample>> {
    for p in grid.assignments(id)? {
        if let Outcome::Checked { lhs, rhs } = evaluate(id, &p, mutation) {
            if lhs != rhs {
                return Ok(Some(Counterexample {
                    params: p,
                    lhs,
                    rhs,
                }));
            }
        }
    }
    Ok(None)
}
