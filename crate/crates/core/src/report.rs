//! Machine-readable output records.
//!
//! Coefficients are always written as decimal strings so that values past
//! 64 bits survive a JSON round trip.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::constructors::SeriesId;
use crate::harness::{IdentityId, IdentityReport, SuiteEntry};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub series: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesRecord {
    pub fn new(id: SeriesId, series: &TruncatedSeries) -> Self {
        SeriesRecord {
            series: id.name().to_string(),
            order: series.order(),
            coeffs: series.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchRecord {
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub identity: String,
    pub order: usize,
    /// `VERIFIED`, `VERIFIED_WITH_SIGN_FLIP`, `FAILED`, or `ERROR` when the
    /// check could not run.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<MismatchRecord>,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolved_sign: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign_witness: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRecord {
    pub const ERROR_STATUS: &'static str = "ERROR";

    pub fn from_report(r: &IdentityReport) -> Self {
        ReportRecord {
            identity: r.identity.name().to_string(),
            order: r.order_checked,
            status: r.status.name().to_string(),
            first_mismatch: r.first_mismatch.as_ref().map(|m| MismatchRecord {
                index: m.index,
                lhs: m.lhs.to_string(),
                rhs: m.rhs.to_string(),
            }),
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
            resolved_sign: r.resolved_sign.map(|c| c.sign.as_i64()),
            sign_witness: r.resolved_sign.map(|c| c.witness),
            annotation: r.annotation().map(str::to_string),
            detail: r.detail.clone(),
            error: None,
        }
    }

    pub fn from_error(identity: IdentityId, order: usize, error: &crate::Error) -> Self {
        ReportRecord {
            identity: identity.name().to_string(),
            order,
            status: Self::ERROR_STATUS.to_string(),
            first_mismatch: None,
            elapsed_ms: 0.0,
            resolved_sign: None,
            sign_witness: None,
            annotation: identity
                .is_conjecture()
                .then(|| IdentityReport::UNPROVEN_ANNOTATION.to_string()),
            detail: None,
            error: Some(error.to_string()),
        }
    }

    pub fn from_entry(entry: &SuiteEntry, order: usize) -> Self {
        match &entry.outcome {
            Ok(r) => ReportRecord::from_report(r),
            Err(e) => ReportRecord::from_error(entry.identity, order, e),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == "FAILED" || self.status == Self::ERROR_STATUS
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    pub elapsed_ms: f64,
}

pub fn write_series_csv(
    out: &mut (impl Write + ?Sized),
    series: &TruncatedSeries,
) -> io::Result<()> {
    writeln!(out, "n,coefficient")?;
    for (n, c) in series.coeffs().iter().enumerate() {
        writeln!(out, "{n},{c}")?;
    }
    Ok(())
}

pub fn write_reports_csv(
    out: &mut (impl Write + ?Sized),
    records: &[ReportRecord],
) -> io::Result<()> {
    writeln!(
        out,
        "identity,order,status,mismatch_index,lhs,rhs,elapsed_ms,resolved_sign,annotation"
    )?;
    for r in records {
        let (index, lhs, rhs) = match &r.first_mismatch {
            Some(m) => (m.index.to_string(), m.lhs.clone(), m.rhs.clone()),
            None => Default::default(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{:.3},{},{}",
            r.identity,
            r.order,
            r.status,
            index,
            lhs,
            rhs,
            r.elapsed_ms,
            r.resolved_sign.map(|s| s.to_string()).unwrap_or_default(),
            r.annotation.as_deref().unwrap_or(""),
        )?;
    }
    Ok(())
}

pub fn write_bench_csv(out: &mut (impl Write + ?Sized), rows: &[BenchRow]) -> io::Result<()> {
    writeln!(out, "size,elapsed_ms")?;
    for row in rows {
        writeln!(out, "{},{:.3}", row.size, row.elapsed_ms)?;
    }
    Ok(())
}
