//! End-to-end verification suites over Walker-form candidates, and the
//! Lie-algebra suite over the matrix model.

mod lie;
mod random;
mod suites;

pub use lie::{kostant_suite, KOSTANT_COCHAINS};
pub use random::{perturbed_flat, perturbed_pw, perturbed_quadratic, random_special, RandomSpec};
pub use suites::{
    characterize, omega_prime_suite, prolongation_suite, reduced_scale_check, Candidate, CHARACTERIZE_CHECKS,
    verify_all, OMEGA_PRIME_CHECKS, PROLONGATION_CHECKS, REDUCED_SCALE_CHECKS,
};

use crate::tractor::Residual;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Version of the serialized report layout.
pub const FORMAT_VERSION: u32 = 1;

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "FEFFERMAN_LAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The statement does not apply in this dimension; never counted as a failure.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResidualSummary {
    /// Exact polynomial residuals: how many entries were checked and how many are nonzero.
    Exact { terms: usize, nonzero: usize },
    /// Floating-point comparison against an independent oracle.
    Numeric { max_abs: f64, points: usize },
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub residual: ResidualSummary,
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format_version: u32,
    pub suite: String,
    pub descriptor: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("the candidate needs n ≥ 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("projective structure is not special")]
    NotSpecial,
    #[error("metric: {0}")]
    Metric(#[from] crate::tensor::MetricError),
    #[error("conformal factor must be a nonzero function of the chart")]
    BadScale,
}

/// Result of one check body before timing is attached.
pub(crate) struct Outcome {
    status: Status,
    residual: ResidualSummary,
    detail: Option<String>,
}

impl Outcome {
    /// Passes iff every residual vanishes identically; names the failing parts.
    pub(crate) fn zero(residuals: Vec<Residual>) -> Self {
        let terms = residuals.iter().map(|r| r.terms.len()).sum();
        let nonzero = residuals.iter().map(Residual::defect).sum();
        let bad: Vec<&str> = residuals.iter().filter(|r| !r.is_zero()).map(|r| r.name.as_str()).collect();
        Outcome {
            status: if nonzero == 0 { Status::Pass } else { Status::Fail },
            residual: ResidualSummary::Exact { terms, nonzero },
            detail: (!bad.is_empty()).then(|| format!("nonzero: {}", bad.join(", "))),
        }
    }

    pub(crate) fn decided(pass: bool, residual: ResidualSummary, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Outcome {
            status: if pass { Status::Pass } else { Status::Fail },
            residual,
            detail: (!detail.is_empty()).then_some(detail),
        }
    }

    pub(crate) fn not_applicable(reason: &str) -> Self {
        Outcome { status: Status::NotApplicable, residual: ResidualSummary::None, detail: Some(reason.into()) }
    }
}

type Body<'a> = Box<dyn Fn() -> Outcome + Send + Sync + 'a>;

pub(crate) struct CheckSpec<'a> {
    name: &'static str,
    anchor: &'static str,
    body: Body<'a>,
}

pub(crate) fn spec<'a>(
    name: &'static str,
    anchor: &'static str,
    body: impl Fn() -> Outcome + Send + Sync + 'a,
) -> CheckSpec<'a> {
    CheckSpec { name, anchor, body: Box::new(body) }
}

/// Worker pool sized by `FEFFERMAN_LAB_THREADS` when it holds a positive integer.
pub fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&t| t > 0) {
        builder = builder.num_threads(t);
    }
    builder.build().expect("thread pool")
}

/// Runs independent checks in parallel and keeps their declared order.
pub(crate) fn run(specs: Vec<CheckSpec<'_>>) -> Vec<Check> {
    thread_pool().install(|| {
        specs
            .par_iter()
            .map(|s| {
                let start = Instant::now();
                let o = (s.body)();
                Check {
                    name: s.name.to_string(),
                    anchor: s.anchor.to_string(),
                    status: o.status,
                    residual: o.residual,
                    wall_ms: round_ms(start.elapsed().as_secs_f64() * 1e3),
                    detail: o.detail,
                }
            })
            .collect()
    })
}

fn round_ms(ms: f64) -> f64 {
    (ms * 1000.0).round() / 1000.0
}
