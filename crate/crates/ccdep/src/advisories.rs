//! Vulnerability advisories and matching of scan reports against them,
//! for both version-constrained and unconstrained dependencies.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    ConstraintKind, DependencyRecord, ScanReport, Version, VersionConstraint,
};

/// One vulnerability affecting a library over a version range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Advisory {
    pub id: String,
    /// Normalized library name.
    pub library: String,
    /// The vulnerable range. `Unspecified` only together with
    /// `all_versions`.
    pub affected: VersionConstraint,
    #[serde(default)]
    pub all_versions: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_in: Option<Version>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub severity: Option<String>,
}

/// How a record was matched to an advisory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchMode {
    /// The record's constraint interval intersects the affected range.
    ConstraintOverlap,
    /// The record had no constraint; the OS catalog's latest version for
    /// the library falls in the affected range.
    AssumedLatest,
}

#[derive(Debug, Clone, Serialize)]
pub struct VulnFinding {
    pub repo_id: String,
    pub record: DependencyRecord,
    pub advisory_id: String,
    pub match_mode: MatchMode,
}

/// Result of loading a line-delimited advisory file.
#[derive(Debug)]
pub struct AdvisoryLoad {
    pub advisories: Vec<Advisory>,
    pub skipped: u64,
    pub warnings: Vec<String>,
}

/// Load advisories from a file of one JSON document per line. Malformed
/// lines are skipped with warnings and counted.
pub fn load_advisories(path: &Path) -> Result<AdvisoryLoad> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut load = AdvisoryLoad {
        advisories: Vec::new(),
        skipped: 0,
        warnings: Vec::new(),
    };
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match serde_json::from_str::<Advisory>(line) {
            Ok(mut advisory) => {
                advisory.library = advisory.library.trim().to_lowercase();
                if advisory.library.is_empty() {
                    load.skipped += 1;
                    load.warnings.push(format!("line {lineno}: missing library"));
                    continue;
                }
                if advisory.affected.kind == ConstraintKind::Unspecified && !advisory.all_versions {
                    load.skipped += 1;
                    load.warnings.push(format!(
                        "line {lineno}: unconstrained affected range without all_versions"
                    ));
                    continue;
                }
                load.advisories.push(advisory);
            }
            Err(e) => {
                load.skipped += 1;
                load.warnings.push(format!("line {lineno}: {e}"));
            }
        }
    }
    Ok(load)
}

/// Latest-version catalog for an OS environment: `library version` lines.
#[derive(Debug, Clone, Default)]
pub struct OsCatalog {
    latest: BTreeMap<String, Version>,
}

impl OsCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, library: impl Into<String>, version: Version) {
        self.latest.insert(library.into().to_lowercase(), version);
    }

    pub fn get(&self, library: &str) -> Option<&Version> {
        self.latest.get(library)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut catalog = OsCatalog::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((name, version)) = line.split_once(char::is_whitespace) else {
                return Err(Error::Format {
                    what: "os catalog",
                    detail: format!("line {}: expected `library version`", i + 1),
                });
            };
            catalog.insert(name.trim(), Version::parse(version.trim())?);
        }
        Ok(catalog)
    }
}

/// Match a constrained record: a finding per advisory of the same library
/// whose affected interval intersects the record's constraint interval.
pub fn match_constrained(
    repo_id: &str,
    record: &DependencyRecord,
    advisories: &[Advisory],
) -> Vec<VulnFinding> {
    if !record.constraint.is_specified() {
        return Vec::new();
    }
    advisories
        .iter()
        .filter(|a| a.library == record.library)
        .filter(|a| record.constraint.intersects(&a.affected))
        .map(|a| VulnFinding {
            repo_id: repo_id.to_string(),
            record: record.clone(),
            advisory_id: a.id.clone(),
            match_mode: MatchMode::ConstraintOverlap,
        })
        .collect()
}

/// Match an unconstrained record by assuming the OS catalog's latest
/// version. Returns the findings and whether the library was missing
/// from the catalog.
pub fn match_unconstrained(
    repo_id: &str,
    record: &DependencyRecord,
    advisories: &[Advisory],
    os_catalog: &OsCatalog,
) -> (Vec<VulnFinding>, bool) {
    if record.constraint.is_specified() {
        return (Vec::new(), false);
    }
    let Some(assumed) = os_catalog.get(&record.library) else {
        return (Vec::new(), true);
    };
    let findings = advisories
        .iter()
        .filter(|a| a.library == record.library)
        .filter(|a| a.affected.contains(assumed))
        .map(|a| VulnFinding {
            repo_id: repo_id.to_string(),
            record: record.clone(),
            advisory_id: a.id.clone(),
            match_mode: MatchMode::AssumedLatest,
        })
        .collect();
    (findings, false)
}

/// Outcome of matching a whole report set.
#[derive(Debug, Default)]
pub struct MatchOutcome {
    pub findings: Vec<VulnFinding>,
    /// Unconstrained records whose library was absent from the catalog.
    pub unmatched: u64,
}

/// Match every record of every report. Unconstrained records are only
/// matched when an OS catalog is provided.
pub fn match_reports(
    reports: &[ScanReport],
    advisories: &[Advisory],
    os_catalog: Option<&OsCatalog>,
) -> MatchOutcome {
    let mut outcome = MatchOutcome::default();
    for report in reports {
        for record in &report.records {
            if record.constraint.is_specified() {
                outcome
                    .findings
                    .extend(match_constrained(&report.repo_id, record, advisories));
            } else if let Some(catalog) = os_catalog {
                let (findings, missing) =
                    match_unconstrained(&report.repo_id, record, advisories, catalog);
                outcome.findings.extend(findings);
                outcome.unmatched += missing as u64;
            }
        }
    }
    outcome
}

/// Exposure fractions over a report set.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct ExposureSummary {
    pub vulnerable_dep_fraction: f64,
    pub affected_repo_fraction: f64,
    pub vulnerable_records: u64,
    pub total_records: u64,
    pub affected_repos: u64,
    pub total_repos: u64,
}

/// Distinct records with at least one finding over all records, and
/// repositories with at least one finding over all repositories.
pub fn exposure_summary(findings: &[VulnFinding], reports: &[ScanReport]) -> ExposureSummary {
    let mut vulnerable: BTreeSet<(String, String, crate::model::ToolKind, String, u32)> =
        BTreeSet::new();
    let mut repos: BTreeSet<&str> = BTreeSet::new();
    for f in findings {
        vulnerable.insert((
            f.repo_id.clone(),
            f.record.library.clone(),
            f.record.tool,
            f.record.evidence.path.clone(),
            f.record.evidence.line,
        ));
        repos.insert(&f.repo_id);
    }
    let total_records: u64 = reports.iter().map(|r| r.records.len() as u64).sum();
    let total_repos = reports.len() as u64;
    let frac = |n: u64, d: u64| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    ExposureSummary {
        vulnerable_dep_fraction: frac(vulnerable.len() as u64, total_records),
        affected_repo_fraction: frac(repos.len() as u64, total_repos),
        vulnerable_records: vulnerable.len() as u64,
        total_records,
        affected_repos: repos.len() as u64,
        total_repos,
    }
}
