//! Ground-truth evaluation: precision, recall (full and supported), F1.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AliasTable, ScanReport, ToolKind};

/// Hand-labeled dependencies of one repository. Labels may carry a tool
/// tag; `supported_subset` optionally restricts the denominator of the
/// supported recall (R2).
#[derive(Debug, Clone, Default)]
pub struct GroundTruth {
    pub repo_id: String,
    pub labeled: BTreeSet<(String, Option<ToolKind>)>,
    pub supported_subset: Option<BTreeSet<String>>,
}

/// How detected records are matched to labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchOn {
    #[default]
    Name,
    NameAndTool,
}

impl std::str::FromStr for MatchOn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "name" => Ok(MatchOn::Name),
            "name+tool" | "name-and-tool" => Ok(MatchOn::NameAndTool),
            other => Err(Error::InvalidInput(format!("unknown match mode: {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    /// Absent when nothing was detected (tp + fp = 0).
    pub precision: Option<f64>,
    pub recall_full: f64,
    pub recall_supported: f64,
    pub f1: Option<f64>,
}

/// Metrics from raw counts: P = tp/(tp+fp), R1 = tp/(tp+fn),
/// F1 = 2·P·R1/(P+R1).
pub fn metrics_from_counts(tp: u64, fp: u64, fn_: u64) -> EvalResult {
    let precision = if tp + fp == 0 {
        None
    } else {
        Some(tp as f64 / (tp + fp) as f64)
    };
    let recall_full = if tp + fn_ == 0 {
        0.0
    } else {
        tp as f64 / (tp + fn_) as f64
    };
    let f1 = precision.map(|p| f1_score(p, recall_full));
    EvalResult {
        tp,
        fp,
        fn_,
        precision,
        recall_full,
        recall_supported: recall_full,
        f1,
    }
}

/// Harmonic mean of precision and full recall (0 when both are 0).
pub fn f1_score(precision: f64, recall: f64) -> f64 {
    if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    }
}

/// Evaluate a report against a ground truth.
pub fn evaluate(
    report: &ScanReport,
    truth: &GroundTruth,
    match_on: MatchOn,
    aliases: Option<&AliasTable>,
) -> Result<EvalResult> {
    if truth.labeled.is_empty() {
        return Err(Error::EmptyInput("ground truth has no labels"));
    }
    let resolve = |name: &str| -> String {
        match aliases {
            Some(t) => t.resolve(name).to_string(),
            None => name.to_string(),
        }
    };
    let detected: BTreeSet<(String, ToolKind)> = report
        .records
        .iter()
        .map(|r| (resolve(&r.library), r.tool))
        .collect();
    let detected_names: BTreeSet<String> = detected.iter().map(|(n, _)| n.clone()).collect();

    let label_hit = |name: &str, tool: &Option<ToolKind>| -> bool {
        let name = resolve(name);
        match (match_on, tool) {
            (MatchOn::Name, _) | (MatchOn::NameAndTool, None) => detected_names.contains(&name),
            (MatchOn::NameAndTool, Some(t)) => detected.contains(&(name, *t)),
        }
    };

    let mut tp = 0u64;
    let mut fn_ = 0u64;
    let mut tp_supported = 0u64;
    let mut supported_total = 0u64;
    for (name, tool) in &truth.labeled {
        let hit = label_hit(name, tool);
        if hit {
            tp += 1;
        } else {
            fn_ += 1;
        }
        let in_supported = truth
            .supported_subset
            .as_ref()
            .map(|s| s.contains(&resolve(name)))
            .unwrap_or(true);
        if in_supported {
            supported_total += 1;
            if hit {
                tp_supported += 1;
            }
        }
    }

    // false positives: detected units not matching any label
    let fp = match match_on {
        MatchOn::Name => detected_names
            .iter()
            .filter(|name| {
                !truth
                    .labeled
                    .iter()
                    .any(|(label, _)| resolve(label) == **name)
            })
            .count() as u64,
        MatchOn::NameAndTool => detected
            .iter()
            .filter(|(name, tool)| {
                !truth.labeled.iter().any(|(label, label_tool)| {
                    resolve(label) == *name && label_tool.map(|lt| lt == *tool).unwrap_or(true)
                })
            })
            .count() as u64,
    };

    let mut result = metrics_from_counts(tp, fp, fn_);
    result.recall_supported = if supported_total == 0 {
        0.0
    } else {
        tp_supported as f64 / supported_total as f64
    };
    Ok(result)
}

/// Ground-truth text format: per-repo blocks.
///
/// ```text
/// repo demo
/// label zlib cmake
/// label fmt
/// supported zlib
/// ```
pub fn load_ground_truth(path: &Path) -> Result<Vec<GroundTruth>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ground_truth(&text)
}

pub fn parse_ground_truth(text: &str) -> Result<Vec<GroundTruth>> {
    let mut out: Vec<GroundTruth> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap_or_default();
        match keyword {
            "repo" => {
                let id = parts.collect::<Vec<_>>().join(" ");
                if id.is_empty() {
                    return Err(Error::Format {
                        what: "ground truth",
                        detail: format!("line {lineno}: repo without an id"),
                    });
                }
                out.push(GroundTruth {
                    repo_id: id,
                    ..GroundTruth::default()
                });
            }
            "label" => {
                let Some(current) = out.last_mut() else {
                    return Err(Error::Format {
                        what: "ground truth",
                        detail: format!("line {lineno}: label before any repo"),
                    });
                };
                let Some(name) = parts.next() else {
                    return Err(Error::Format {
                        what: "ground truth",
                        detail: format!("line {lineno}: label without a name"),
                    });
                };
                let tool = match parts.next() {
                    Some(t) => Some(t.parse::<ToolKind>()?),
                    None => None,
                };
                current.labeled.insert((name.to_lowercase(), tool));
            }
            "supported" => {
                let Some(current) = out.last_mut() else {
                    return Err(Error::Format {
                        what: "ground truth",
                        detail: format!("line {lineno}: supported before any repo"),
                    });
                };
                let Some(name) = parts.next() else {
                    return Err(Error::Format {
                        what: "ground truth",
                        detail: format!("line {lineno}: supported without a name"),
                    });
                };
                current
                    .supported_subset
                    .get_or_insert_with(BTreeSet::new)
                    .insert(name.to_lowercase());
            }
            other => {
                return Err(Error::Format {
                    what: "ground truth",
                    detail: format!("line {lineno}: unknown keyword {other}"),
                });
            }
        }
    }
    if out.iter().any(|t| t.labeled.is_empty()) {
        return Err(Error::Format {
            what: "ground truth",
            detail: "a repo block has no labels".into(),
        });
    }
    Ok(out)
}
