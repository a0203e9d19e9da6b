//! Identity registry: every claim is a pair of independently built series
//! compared coefficient by coefficient.
//!
//! An entry either asserts a list of equalities, or additionally carries
//! competing candidate statements of which exactly one must hold (a printed
//! form against a corrected one); the survivor is reported as a resolved
//! variant.

mod entries;
mod sums;

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::CatalogError;
use crate::graph::GraphError;
use crate::series::{Comparison, Exponent, Series, SeriesError};
use crate::theta::ThetaError;

pub use entries::registry;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

pub type Builder = Arc<dyn Fn(i64) -> Result<Series, RegistryError> + Send + Sync>;

/// One equality `lhs = rhs`, checked through `q^order`.
#[derive(Clone)]
pub struct Case {
    pub label: String,
    pub lhs: Builder,
    pub rhs: Builder,
}

/// A competing statement made of one or more equalities.
#[derive(Clone)]
pub struct Candidate {
    pub label: String,
    pub cases: Vec<Case>,
}

#[derive(Clone)]
pub enum Check {
    Equal(Vec<Case>),
    /// `fixed` must all hold and exactly one candidate must hold.
    Variants {
        fixed: Vec<Case>,
        candidates: Vec<Candidate>,
    },
}

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub claim: &'static str,
    pub tags: &'static [&'static str],
    pub default_order: i64,
    pub notes: &'static str,
    pub check: Check,
}

impl IdentityRecord {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t.eq_ignore_ascii_case(tag))
    }

    fn case_count(&self) -> usize {
        match &self.check {
            Check::Equal(c) => c.len(),
            Check::Variants { fixed, candidates } => {
                fixed.len() + candidates.iter().map(|c| c.cases.len()).sum::<usize>()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

/// Why a case did not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFailure {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejected {
    pub candidate: String,
    pub failure: CaseFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail {
        failures: Vec<CaseFailure>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        matching_candidates: Vec<String>,
    },
    ResolvedVariant {
        selected: String,
        rejected: Vec<Rejected>,
    },
}

impl Status {
    /// Resolved variants count as passing.
    pub fn is_pass(&self) -> bool {
        !matches!(self, Status::Fail { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail { .. } => "fail",
            Status::ResolvedVariant { .. } => "resolved-variant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub id: String,
    pub claim: String,
    pub tags: Vec<String>,
    pub order: i64,
    pub cases: usize,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "str::is_empty")]
    pub notes: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

fn run_case(case: &Case, order: i64) -> Option<CaseFailure> {
    let fail = |mismatch, error| {
        Some(CaseFailure {
            case: case.label.clone(),
            mismatch,
            error,
        })
    };
    let sides = (case.lhs)(order).and_then(|l| Ok((l, (case.rhs)(order)?)));
    let (l, r) = match sides {
        Ok(s) => s,
        Err(e) => return fail(None, Some(e.to_string())),
    };
    match Series::equal_to_order(&l, &r, Exponent::from_integer(order)) {
        Ok(Comparison::Equal) => None,
        Ok(Comparison::Mismatch {
            exponent,
            left,
            right,
        }) => fail(
            Some(Mismatch {
                exponent: exponent.to_string(),
                lhs: left.to_string(),
                rhs: right.to_string(),
            }),
            None,
        ),
        Err(e) => fail(None, Some(e.to_string())),
    }
}

/// First failing case of a list, if any.
fn run_cases(cases: &[Case], order: i64) -> Option<CaseFailure> {
    cases.par_iter().map(|c| run_case(c, order)).find_map_first(|f| f)
}

/// Runs a record at `order` (or its default).
pub fn verify_record(rec: &IdentityRecord, order: Option<i64>) -> Report {
    let order = order.unwrap_or(rec.default_order);
    let status = match &rec.check {
        Check::Equal(cases) => match run_cases(cases, order) {
            None => Status::Pass,
            Some(f) => Status::Fail {
                failures: vec![f],
                matching_candidates: Vec::new(),
            },
        },
        Check::Variants { fixed, candidates } => {
            let outcomes: Vec<Option<CaseFailure>> = candidates
                .par_iter()
                .map(|c| run_cases(&c.cases, order))
                .collect();
            let fixed_failure = run_cases(fixed, order);
            let matching: Vec<String> = candidates
                .iter()
                .zip(&outcomes)
                .filter(|(_, o)| o.is_none())
                .map(|(c, _)| c.label.clone())
                .collect();
            let rejected: Vec<Rejected> = candidates
                .iter()
                .zip(outcomes)
                .filter_map(|(c, o)| {
                    o.map(|failure| Rejected {
                        candidate: c.label.clone(),
                        failure,
                    })
                })
                .collect();
            match (fixed_failure, matching.len()) {
                (None, 1) => Status::ResolvedVariant {
                    selected: matching[0].clone(),
                    rejected,
                },
                (fixed_failure, _) => Status::Fail {
                    failures: fixed_failure
                        .into_iter()
                        .chain(rejected.into_iter().map(|r| r.failure))
                        .collect(),
                    matching_candidates: matching,
                },
            }
        }
    };
    Report {
        id: rec.id.to_string(),
        claim: rec.claim.to_string(),
        tags: rec.tags.iter().map(|t| t.to_string()).collect(),
        order,
        cases: rec.case_count(),
        status,
        notes: rec.notes.to_string(),
        wall_ms: None,
    }
}

fn timed(rec: &IdentityRecord, order: Option<i64>, timings: bool) -> Report {
    let start = Instant::now();
    let mut r = verify_record(rec, order);
    if timings {
        r.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    r
}

/// Looks up an identity by id (case-insensitive).
pub fn find(id: &str) -> Result<IdentityRecord, RegistryError> {
    registry()
        .into_iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| RegistryError::UnknownIdentity(id.to_string()))
}

/// Verifies one identity; `order = None` uses its default.
pub fn verify(id: &str, order: Option<i64>) -> Result<Report, RegistryError> {
    Ok(verify_record(&find(id)?, order))
}

/// Verifies every record carrying any of `tags` (all records when empty),
/// in registry order.
pub fn verify_all(tags: &[String], order: Option<i64>, timings: bool) -> Vec<Report> {
    verify_records(&select(&registry(), tags), order, timings)
}

pub fn verify_records(records: &[IdentityRecord], order: Option<i64>, timings: bool) -> Vec<Report> {
    records.par_iter().map(|r| timed(r, order, timings)).collect()
}

/// Records carrying any of `tags`; all of them when `tags` is empty.
pub fn select(records: &[IdentityRecord], tags: &[String]) -> Vec<IdentityRecord> {
    records
        .iter()
        .filter(|r| tags.is_empty() || tags.iter().any(|t| r.has_tag(t)))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListingEntry {
    pub id: String,
    pub claim: String,
    pub tags: Vec<String>,
    pub default_order: i64,
    pub cases: usize,
    pub variants: Vec<String>,
}

pub fn list_identities() -> Vec<ListingEntry> {
    registry()
        .iter()
        .map(|r| ListingEntry {
            id: r.id.to_string(),
            claim: r.claim.to_string(),
            tags: r.tags.iter().map(|t| t.to_string()).collect(),
            default_order: r.default_order,
            cases: r.case_count(),
            variants: match &r.check {
                Check::Equal(_) => Vec::new(),
                Check::Variants { candidates, .. } => {
                    candidates.iter().map(|c| c.label.clone()).collect()
                }
            },
        })
        .collect()
}
