//! Relation verification, structural checks, and exhaustive sweeps.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{RawIndex, Tensor};
use crate::commutation::{commute_with, gl_descends, q1_collapses, residual, Relation};
use crate::error::{Error, Result};
use crate::minors::MinorSpec;
use crate::rewrite::Normalizer;

/// Outcome of checking a relation against the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub residual: Tensor,
}

impl VerifyReport {
    pub fn is_zero(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Expands the relation as row minors and normalizes the difference.
pub fn verify_relation(rel: &Relation, n: u32) -> VerifyReport {
    let mut norm = Normalizer::new();
    verify_relation_with(rel, n, &mut norm)
}

pub fn verify_relation_with(rel: &Relation, n: u32, norm: &mut Normalizer) -> VerifyReport {
    let in_range = [&rel.lead.0, &rel.lead.1]
        .into_iter()
        .chain(rel.terms.iter().flat_map(|t| [&t.left, &t.right]))
        .all(|m| m.check(n).is_ok());
    let res = residual(rel, norm);
    if !in_range && res.is_zero() {
        // Out-of-range minors are a malformed relation; report a marker
        // residual rather than accepting it.
        return VerifyReport {
            residual: Tensor::one(),
        };
    }
    VerifyReport { residual: res }
}

/// Every term except the reversed product has its left minor strictly below
/// the lead's right minor in the GL order.
pub fn check_gl_descent(rel: &Relation) -> bool {
    gl_descends(rel)
}

/// At `q = 1` the lead coefficient and the reversed-product coefficient are
/// 1 and every other coefficient vanishes.
pub fn check_q1(rel: &Relation) -> bool {
    q1_collapses(rel)
}

/// All minors `[I,J]` with sorted indices in `{1..n}` and `1 <= |I| <= max_size`.
pub fn all_minors(n: u32, max_size: usize) -> Vec<MinorSpec> {
    let mut out = Vec::new();
    for size in 1..=max_size.min(n as usize) {
        for rows in (1..=n).combinations(size) {
            for cols in (1..=n).combinations(size) {
                out.push(MinorSpec {
                    rows: RawIndex(rows.clone()),
                    cols: RawIndex(cols),
                    flavor: Default::default(),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: u32,
    pub max_size: usize,
    pub case_filter: Option<String>,
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub const MAX_N: u32 = 5;

    pub fn new(n: u32, max_size: usize) -> Self {
        Self {
            n,
            max_size,
            case_filter: None,
            jobs: None,
            output: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > Self::MAX_N {
            return Err(Error::Precondition(format!(
                "sweep needs 1 <= n <= {}",
                Self::MAX_N
            )));
        }
        if self.max_size == 0 || self.max_size > self.n as usize {
            return Err(Error::Precondition(format!(
                "sweep needs 1 <= max_size <= n = {}",
                self.n
            )));
        }
        Ok(())
    }
}

/// Result for one ordered pair of minors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub lhs: MinorSpec,
    pub rhs: MinorSpec,
    pub case: Option<String>,
    pub verified: bool,
    pub gl_descent: bool,
    pub q1: bool,
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SweepRecord {
    pub fn passed(&self) -> bool {
        self.verified && self.gl_descent && self.q1
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: u32,
    pub max_size: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub unverified: usize,
    pub descent_failures: usize,
    pub q1_failures: usize,
    pub cases: BTreeMap<String, usize>,
    #[serde(skip)]
    pub records: Vec<SweepRecord>,
}

impl SweepSummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

fn run_pair(a: &MinorSpec, b: &MinorSpec, n: u32, norm: &mut Normalizer) -> SweepRecord {
    // Keep per-worker caches bounded.
    if norm.cache_len() > 2_000_000 {
        norm.clear();
    }
    match commute_with(a, b, n, norm) {
        Ok(rel) => SweepRecord {
            lhs: a.clone(),
            rhs: b.clone(),
            case: Some(rel.case.clone()),
            verified: rel.verified,
            gl_descent: check_gl_descent(&rel),
            q1: check_q1(&rel),
            terms: rel.terms.len(),
            error: None,
        },
        Err(e) => SweepRecord {
            lhs: a.clone(),
            rhs: b.clone(),
            case: None,
            verified: false,
            gl_descent: false,
            q1: false,
            terms: 0,
            error: Some(e.to_string()),
        },
    }
}

/// Runs `commute` and the structural checks on every ordered pair of sorted
/// minors within bounds. Records come back in enumeration order whatever
/// the worker count.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepSummary> {
    cfg.validate()?;
    let minors = all_minors(cfg.n, cfg.max_size);
    let pairs: Vec<(&MinorSpec, &MinorSpec)> =
        minors.iter().cartesian_product(minors.iter()).collect();
    let n = cfg.n;
    let work = || -> Vec<SweepRecord> {
        pairs
            .par_iter()
            .map_init(Normalizer::new, |norm, (a, b)| run_pair(a, b, n, norm))
            .collect()
    };
    let records = match cfg.jobs {
        Some(j) if j > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(work),
        _ => work(),
    };
    let records: Vec<SweepRecord> = match &cfg.case_filter {
        Some(tag) => records
            .into_iter()
            .filter(|r| r.case.as_deref() == Some(tag.as_str()))
            .collect(),
        None => records,
    };
    let mut summary = SweepSummary {
        n: cfg.n,
        max_size: cfg.max_size,
        ..Default::default()
    };
    for r in &records {
        summary.total += 1;
        if r.passed() {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        summary.unverified += usize::from(!r.verified);
        summary.descent_failures += usize::from(r.verified && !r.gl_descent);
        summary.q1_failures += usize::from(r.verified && !r.q1);
        if let Some(c) = &r.case {
            *summary.cases.entry(c.clone()).or_default() += 1;
        }
    }
    summary.records = records;
    if let Some(path) = &cfg.output {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        write_jsonl(&summary, &mut f)?;
    }
    Ok(summary)
}

/// One JSON line per record, then one summary line.
pub fn write_jsonl(summary: &SweepSummary, out: &mut impl Write) -> Result<()> {
    for r in &summary.records {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
    }
    writeln!(out, "{}", serde_json::to_string(summary)?)?;
    Ok(())
}
