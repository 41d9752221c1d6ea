//! Per-repository scan reports: the unit of persistence and the input to
//! analytics, advisory matching, and evaluation.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::record::{DependencyRecord, Evidence, ToolKind};
use crate::error::{Error, Result};

/// A non-fatal problem encountered while scanning or extracting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanWarning {
    pub path: String,
    pub line: u32,
    pub message: String,
}

impl ScanWarning {
    pub fn new(path: impl Into<String>, line: u32, message: impl Into<String>) -> Self {
        ScanWarning {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}

/// Aggregated scan result for one repository.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub repo_id: String,
    /// RFC 3339 timestamp taken at scan start.
    pub scanned_at: String,
    pub records: Vec<DependencyRecord>,
    /// Tools whose records appear in `records`, plus tools whose manifest
    /// files were found but yielded zero dependencies.
    pub tools_seen: BTreeSet<ToolKind>,
    /// Regular files visited under the root.
    pub file_count: u64,
    #[serde(default)]
    pub skipped_files: u64,
    #[serde(default)]
    pub warnings: Vec<ScanWarning>,
}

impl ScanReport {
    pub fn new(repo_id: impl Into<String>) -> Self {
        ScanReport {
            repo_id: repo_id.into(),
            scanned_at: chrono::Utc::now().to_rfc3339(),
            records: Vec::new(),
            tools_seen: BTreeSet::new(),
            file_count: 0,
            skipped_files: 0,
            warnings: Vec::new(),
        }
    }

    /// Insert records, dropping duplicates by (library, tool, evidence),
    /// then keep the whole list sorted by (path, line, tool).
    pub fn add_records(&mut self, records: impl IntoIterator<Item = DependencyRecord>) {
        let mut seen: BTreeSet<(String, ToolKind, Evidence)> = self
            .records
            .iter()
            .map(DependencyRecord::dedup_key)
            .collect();
        for rec in records {
            if seen.insert(rec.dedup_key()) {
                self.tools_seen.insert(rec.tool);
                self.records.push(rec);
            }
        }
        self.sort_records();
    }

    pub fn sort_records(&mut self) {
        self.records.sort_by(|a, b| {
            (&a.evidence.path, a.evidence.line, a.tool, &a.library).cmp(&(
                &b.evidence.path,
                b.evidence.line,
                b.tool,
                &b.library,
            ))
        });
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format {
            what: "scan report",
            detail: e.to_string(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format {
            what: "scan report",
            detail: e.to_string(),
        })
    }

    pub fn write_to(&self, mut out: impl Write) -> Result<()> {
        let json = self.to_json()?;
        out.write_all(json.as_bytes())
            .and_then(|()| out.write_all(b"\n"))
            .map_err(|e| Error::io("<output>", e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_to(std::io::BufWriter::new(file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintKind, VersionConstraint};

    fn rec(lib: &str, tool: ToolKind, path: &str, line: u32) -> DependencyRecord {
        DependencyRecord::new(lib, lib, tool, Evidence::new(path, line))
    }

    #[test]
    fn dedup_by_library_tool_evidence() {
        let mut report = ScanReport::new("r");
        report.add_records([
            rec("zlib", ToolKind::CMake, "CMakeLists.txt", 3),
            rec("zlib", ToolKind::CMake, "CMakeLists.txt", 3),
            rec("zlib", ToolKind::Conan, "conanfile.txt", 2),
        ]);
        assert_eq!(report.records.len(), 2);
        assert_eq!(report.tools_seen.len(), 2);
    }

    #[test]
    fn records_sorted_by_path_line_tool() {
        let mut report = ScanReport::new("r");
        report.add_records([
            rec("b", ToolKind::Meson, "z/meson.build", 9),
            rec("a", ToolKind::CMake, "CMakeLists.txt", 1),
            rec("c", ToolKind::Cpm, "CMakeLists.txt", 1),
        ]);
        let keys: Vec<_> = report
            .records
            .iter()
            .map(|r| (r.evidence.path.clone(), r.evidence.line, r.tool))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn json_roundtrip_keeps_normative_keys() {
        let mut report = ScanReport::new("demo");
        report.add_records([rec("fmt", ToolKind::Vcpkg, "vcpkg.json", 4)
            .with_constraint(VersionConstraint::parse(">=1.1.1"))]);
        let json = report.to_json().unwrap();
        for key in [
            "\"library\"",
            "\"raw_name\"",
            "\"constraint\"",
            "\"kind\"",
            "\"lower\"",
            "\"lower_inclusive\"",
            "\"upper\"",
            "\"upper_inclusive\"",
            "\"raw\"",
            "\"tool\"",
            "\"phase\"",
            "\"evidence\"",
            "\"path\"",
            "\"line\"",
            "\"repo_id\"",
            "\"scanned_at\"",
            "\"tools_seen\"",
            "\"file_count\"",
        ] {
            assert!(json.contains(key), "missing {key} in {json}");
        }
        let back = ScanReport::from_json(&json).unwrap();
        assert_eq!(back.records.len(), 1);
        assert_eq!(back.records[0].constraint.kind, ConstraintKind::Range);
    }
}
