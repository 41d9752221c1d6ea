//! Python bindings for the ccdep scanner: scanning, version/constraint
//! arithmetic, popularity statistics, clone detection, and evaluation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ccdep::advisories::{self, OsCatalog};
use ccdep::analytics;
use ccdep::clonesig::{self, SignatureDb};
use ccdep::evaluation;
use ccdep::model::{
    compare_versions, normalize_name as normalize, DependencyRecord, ScanReport, ToolKind,
    Version, VersionConstraint,
};
use ccdep::{scan_repository, ScanConfig};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_tool(name: &str) -> PyResult<ToolKind> {
    name.parse::<ToolKind>().map_err(value_err)
}

fn parse_version(text: &str) -> PyResult<Version> {
    Version::parse(text).map_err(value_err)
}

/// One extracted dependency.
#[pyclass(frozen, name = "Record", skip_from_py_object)]
#[derive(Clone)]
pub struct PyRecord {
    inner: DependencyRecord,
}

#[pymethods]
impl PyRecord {
    #[getter]
    fn library(&self) -> &str {
        &self.inner.library
    }

    #[getter]
    fn raw_name(&self) -> &str {
        &self.inner.raw_name
    }

    #[getter]
    fn tool(&self) -> &'static str {
        self.inner.tool.name()
    }

    #[getter]
    fn phase(&self) -> String {
        self.inner.phase.to_string()
    }

    #[getter]
    fn constraint_kind(&self) -> String {
        format!("{:?}", self.inner.constraint.kind).to_lowercase()
    }

    #[getter]
    fn constraint_raw(&self) -> &str {
        &self.inner.constraint.raw
    }

    #[getter]
    fn path(&self) -> &str {
        &self.inner.evidence.path
    }

    #[getter]
    fn line(&self) -> u32 {
        self.inner.evidence.line
    }

    #[getter]
    fn source_url(&self) -> Option<&str> {
        self.inner.source_url.as_deref()
    }

    #[getter]
    fn system(&self) -> bool {
        self.inner.system
    }

    #[getter]
    fn components(&self) -> Vec<String> {
        self.inner.components.clone()
    }

    /// Does this record's constraint admit the given version?
    fn constraint_contains(&self, version: &str) -> PyResult<bool> {
        Ok(self.inner.constraint.contains(&parse_version(version)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Record({} via {} at {}:{})",
            self.inner.library, self.inner.tool, self.inner.evidence.path, self.inner.evidence.line
        )
    }
}

/// A per-repository scan report.
#[pyclass(frozen, name = "Report")]
pub struct PyReport {
    inner: ScanReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn repo_id(&self) -> &str {
        &self.inner.repo_id
    }

    #[getter]
    fn file_count(&self) -> u64 {
        self.inner.file_count
    }

    #[getter]
    fn skipped_files(&self) -> u64 {
        self.inner.skipped_files
    }

    #[getter]
    fn records(&self) -> Vec<PyRecord> {
        self.inner
            .records
            .iter()
            .map(|r| PyRecord { inner: r.clone() })
            .collect()
    }

    #[getter]
    fn tools_seen(&self) -> Vec<&'static str> {
        self.inner.tools_seen.iter().map(|t| t.name()).collect()
    }

    #[getter]
    fn warnings(&self) -> Vec<(String, u32, String)> {
        self.inner
            .warnings
            .iter()
            .map(|w| (w.path.clone(), w.line, w.message.clone()))
            .collect()
    }

    fn to_json(&self) -> PyResult<String> {
        self.inner.to_json().map_err(value_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyReport> {
        Ok(PyReport {
            inner: ScanReport::from_json(text).map_err(value_err)?,
        })
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.inner.save(&path).map_err(value_err)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<PyReport> {
        Ok(PyReport {
            inner: ScanReport::load(&path).map_err(value_err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.records.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Report({}, {} records, {} files)",
            self.inner.repo_id,
            self.inner.records.len(),
            self.inner.file_count
        )
    }
}

/// Scan a repository tree for dependencies.
#[pyfunction]
#[pyo3(signature = (root, tools=None, max_file_bytes=None, repo_id=None, clone_db=None, clone_threshold=None, follow_symlinks=false))]
#[allow(clippy::too_many_arguments)]
fn scan(
    root: PathBuf,
    tools: Option<Vec<String>>,
    max_file_bytes: Option<u64>,
    repo_id: Option<String>,
    clone_db: Option<PathBuf>,
    clone_threshold: Option<f64>,
    follow_symlinks: bool,
) -> PyResult<PyReport> {
    let mut config = ScanConfig::new(root);
    config.repo_id = repo_id;
    config.follow_symlinks = follow_symlinks;
    if let Some(cap) = max_file_bytes {
        config.max_file_bytes = cap;
    }
    if let Some(names) = tools {
        let mut enabled = std::collections::BTreeSet::new();
        for name in names {
            enabled.insert(parse_tool(&name)?);
        }
        config.enabled_tools = enabled;
    }
    if let Some(path) = clone_db {
        config.clone_db = Some(SignatureDb::load(&path).map_err(value_err)?);
    }
    if let Some(threshold) = clone_threshold {
        config.clone_threshold = threshold;
    }
    Ok(PyReport {
        inner: scan_repository(&config).map_err(value_err)?,
    })
}

/// Normalize a raw dependency name under a tool's naming rules.
#[pyfunction]
fn normalize_name(raw: &str, tool: &str) -> PyResult<String> {
    normalize(raw, parse_tool(tool)?).map_err(value_err)
}

/// Compare two version strings: -1, 0, or 1.
#[pyfunction(name = "compare_versions")]
fn py_compare_versions(a: &str, b: &str) -> PyResult<i32> {
    let (a, b) = (parse_version(a)?, parse_version(b)?);
    Ok(match compare_versions(&a, &b) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    })
}

/// Does the constraint text admit the version?
#[pyfunction]
fn constraint_contains(constraint: &str, version: &str) -> PyResult<bool> {
    Ok(VersionConstraint::parse(constraint).contains(&parse_version(version)?))
}

/// Parse constraint text to its wire fields.
#[pyfunction]
fn parse_constraint(text: &str) -> PyResult<BTreeMap<String, Option<String>>> {
    let c = VersionConstraint::parse(text);
    let mut out = BTreeMap::new();
    out.insert(
        "kind".to_string(),
        Some(format!("{:?}", c.kind).to_lowercase()),
    );
    out.insert("lower".to_string(), c.lower.as_ref().map(|b| b.version.to_string()));
    out.insert(
        "lower_inclusive".to_string(),
        c.lower.as_ref().map(|b| b.inclusive.to_string()),
    );
    out.insert("upper".to_string(), c.upper.as_ref().map(|b| b.version.to_string()));
    out.insert(
        "upper_inclusive".to_string(),
        c.upper.as_ref().map(|b| b.inclusive.to_string()),
    );
    out.insert("raw".to_string(), Some(c.raw));
    Ok(out)
}

/// Gini coefficient of a popularity vector.
#[pyfunction]
fn gini(counts: Vec<f64>) -> PyResult<f64> {
    analytics::gini_coefficient(&counts).map_err(value_err)
}

/// Top-k% dependency shares of a popularity vector.
#[pyfunction]
fn topk_shares(counts: Vec<u64>, ks: Vec<u32>) -> PyResult<BTreeMap<u32, f64>> {
    analytics::topk_shares(&counts, &ks).map_err(value_err)
}

/// Precision/recall/F1 from raw counts.
#[pyfunction]
fn evaluate_counts(tp: u64, fp: u64, fn_: u64) -> BTreeMap<String, Option<f64>> {
    let result = evaluation::metrics_from_counts(tp, fp, fn_);
    let mut out = BTreeMap::new();
    out.insert("precision".to_string(), result.precision);
    out.insert("recall_full".to_string(), Some(result.recall_full));
    out.insert("f1".to_string(), result.f1);
    out
}

/// Ecosystem statistics over report files, as a JSON document.
#[pyfunction]
fn ecosystem_stats(report_paths: Vec<PathBuf>) -> PyResult<String> {
    let reports: Vec<ScanReport> = report_paths
        .iter()
        .map(|p| ScanReport::load(p))
        .collect::<Result<_, _>>()
        .map_err(value_err)?;
    let stats = analytics::ecosystem_stats(&reports, None).map_err(value_err)?;
    serde_json::to_string_pretty(&stats).map_err(value_err)
}

/// Build a clone-signature database from (name, source_dir) pairs.
#[pyfunction]
fn build_clone_db(sources: Vec<(String, PathBuf)>, output: PathBuf) -> PyResult<usize> {
    let outcome = clonesig::build_signature_db(&sources).map_err(value_err)?;
    outcome.db.save(&output).map_err(value_err)?;
    Ok(outcome.db.len())
}

/// (library, matched, total, ratio, path) row of a clone match.
type CloneRow = (String, u64, u64, f64, String);

/// Detect clones of database libraries in a repository.
#[pyfunction]
#[pyo3(signature = (root, db_path, threshold=clonesig::DEFAULT_THRESHOLD))]
fn detect_clones(root: PathBuf, db_path: PathBuf, threshold: f64) -> PyResult<Vec<CloneRow>> {
    let db = SignatureDb::load(&db_path).map_err(value_err)?;
    let outcome = clonesig::detect_clones(&root, &db, threshold).map_err(value_err)?;
    Ok(outcome
        .matches
        .into_iter()
        .map(|m| (m.library, m.matched, m.total, m.ratio, m.evidence.path))
        .collect())
}

/// Match report files against an advisory file; returns findings as a
/// JSON document.
#[pyfunction]
#[pyo3(signature = (report_paths, advisories_path, os_catalog=None))]
fn match_advisories(
    report_paths: Vec<PathBuf>,
    advisories_path: PathBuf,
    os_catalog: Option<PathBuf>,
) -> PyResult<String> {
    let reports: Vec<ScanReport> = report_paths
        .iter()
        .map(|p| ScanReport::load(p))
        .collect::<Result<_, _>>()
        .map_err(value_err)?;
    let load = advisories::load_advisories(&advisories_path).map_err(value_err)?;
    let catalog = match os_catalog {
        Some(path) => Some(OsCatalog::load(&path).map_err(value_err)?),
        None => None,
    };
    let outcome = advisories::match_reports(&reports, &load.advisories, catalog.as_ref());
    let summary = advisories::exposure_summary(&outcome.findings, &reports);
    let doc = serde_json::json!({
        "findings": outcome.findings,
        "summary": summary,
        "unmatched_unconstrained": outcome.unmatched,
    });
    serde_json::to_string_pretty(&doc).map_err(value_err)
}

/// Batched database coverage over the reports' popularity ranking:
/// (per-batch coverage, covered-dependency share).
#[pyfunction]
#[pyo3(signature = (report_paths, database, batch_size=100))]
fn db_coverage(
    report_paths: Vec<PathBuf>,
    database: Vec<String>,
    batch_size: usize,
) -> PyResult<(Vec<f64>, f64)> {
    let reports: Vec<ScanReport> = report_paths
        .iter()
        .map(|p| ScanReport::load(p))
        .collect::<Result<_, _>>()
        .map_err(value_err)?;
    let database: std::collections::BTreeSet<String> =
        database.into_iter().map(|s| s.to_lowercase()).collect();
    let coverage = analytics::db_coverage_batched(&reports, &database, batch_size)
        .map_err(value_err)?;
    Ok((coverage.batches, coverage.covered_dep_share))
}

/// Fraction of constrained records (on libraries with a known latest
/// version) whose constraint admits that latest version.
#[pyfunction]
fn latest_adoption(
    report_paths: Vec<PathBuf>,
    latest: BTreeMap<String, String>,
) -> PyResult<f64> {
    let reports: Vec<ScanReport> = report_paths
        .iter()
        .map(|p| ScanReport::load(p))
        .collect::<Result<_, _>>()
        .map_err(value_err)?;
    let latest: BTreeMap<String, Version> = latest
        .into_iter()
        .map(|(k, v)| Ok((k.to_lowercase(), parse_version(&v)?)))
        .collect::<PyResult<_>>()?;
    analytics::latest_adoption(&reports, &latest).map_err(value_err)
}

/// Supported tools as (name, phase, patterns) rows.
#[pyfunction]
#[pyo3(signature = (clone_db_configured=false))]
fn list_supported_tools(clone_db_configured: bool) -> Vec<(String, String, Vec<String>)> {
    ccdep::list_supported_tools(clone_db_configured)
        .into_iter()
        .map(|t| {
            (
                t.tool.name().to_string(),
                t.phase.to_string(),
                t.patterns.iter().map(|p| p.to_string()).collect(),
            )
        })
        .collect()
}

/// Evaluate a report file against a ground-truth file.
#[pyfunction]
#[pyo3(signature = (report_path, truth_path, match_on="name"))]
fn evaluate_report(
    report_path: PathBuf,
    truth_path: PathBuf,
    match_on: &str,
) -> PyResult<BTreeMap<String, Option<f64>>> {
    let report = ScanReport::load(&report_path).map_err(value_err)?;
    let truths = evaluation::load_ground_truth(Path::new(&truth_path)).map_err(value_err)?;
    let truth = truths
        .iter()
        .find(|t| t.repo_id == report.repo_id)
        .or_else(|| (truths.len() == 1).then(|| &truths[0]))
        .ok_or_else(|| value_err("no ground-truth block for this repo"))?;
    let mode = match_on.parse().map_err(value_err)?;
    let result = evaluation::evaluate(&report, truth, mode, None).map_err(value_err)?;
    let mut out = BTreeMap::new();
    out.insert("tp".to_string(), Some(result.tp as f64));
    out.insert("fp".to_string(), Some(result.fp as f64));
    out.insert("fn".to_string(), Some(result.fn_ as f64));
    out.insert("precision".to_string(), result.precision);
    out.insert("recall_full".to_string(), Some(result.recall_full));
    out.insert("recall_supported".to_string(), Some(result.recall_supported));
    out.insert("f1".to_string(), result.f1);
    Ok(out)
}

#[pymodule]
fn ccdep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRecord>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_name, m)?)?;
    m.add_function(wrap_pyfunction!(py_compare_versions, m)?)?;
    m.add_function(wrap_pyfunction!(constraint_contains, m)?)?;
    m.add_function(wrap_pyfunction!(parse_constraint, m)?)?;
    m.add_function(wrap_pyfunction!(gini, m)?)?;
    m.add_function(wrap_pyfunction!(topk_shares, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_counts, m)?)?;
    m.add_function(wrap_pyfunction!(ecosystem_stats, m)?)?;
    m.add_function(wrap_pyfunction!(build_clone_db, m)?)?;
    m.add_function(wrap_pyfunction!(detect_clones, m)?)?;
    m.add_function(wrap_pyfunction!(match_advisories, m)?)?;
    m.add_function(wrap_pyfunction!(db_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(latest_adoption, m)?)?;
    m.add_function(wrap_pyfunction!(list_supported_tools, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_report, m)?)?;
    Ok(())
}
