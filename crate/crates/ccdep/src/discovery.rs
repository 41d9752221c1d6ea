//! Repository walking: match files against per-tool filename patterns and
//! dispatch each match to the owning extractors.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use crate::clonesig::{self, SignatureDb};
use crate::error::{Error, Result};
use crate::extract::{self, ExtractFn, ExtractionResult};
use crate::model::{Phase, ScanReport, ScanWarning, ToolKind};

/// When a file matches, should this binding run? Lets Cppget/Build2 share
/// the `manifest` filename and split on directory context.
type ContextGate = fn(&Path) -> bool;

struct Binding {
    tool: ToolKind,
    patterns: &'static [&'static str],
    case_insensitive: bool,
    extract: ExtractFn,
    gate: Option<ContextGate>,
}

fn manifest_beside_buildfile(file: &Path) -> bool {
    file.parent()
        .map(|dir| dir.join("buildfile").is_file() || dir.join("build").join("bootstrap.build").is_file())
        .unwrap_or(false)
}

fn manifest_not_beside_buildfile(file: &Path) -> bool {
    !manifest_beside_buildfile(file)
}

/// The dispatch table. Patterns per tool are the manifest filenames each
/// tool documents; `BUILD.bazel` and lowercase `makefile` are accepted as
/// an extension of the classic names.
fn bindings() -> &'static [Binding] {
    static TABLE: std::sync::OnceLock<Vec<Binding>> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        vec![
            Binding {
                tool: ToolKind::Deb,
                patterns: &["control"],
                case_insensitive: false,
                extract: extract::install::extract_deb_control,
                gate: None,
            },
            Binding {
                tool: ToolKind::Conan,
                patterns: &["conanfile.*", "conaninfo.txt"],
                case_insensitive: false,
                extract: extract::install::extract_conan,
                gate: None,
            },
            Binding {
                tool: ToolKind::Vcpkg,
                patterns: &["vcpkg.json"],
                case_insensitive: false,
                extract: extract::install::extract_vcpkg,
                gate: None,
            },
            Binding {
                tool: ToolKind::Clib,
                patterns: &["package.json", "clib.json"],
                case_insensitive: false,
                extract: extract::install::extract_clib,
                gate: None,
            },
            Binding {
                tool: ToolKind::Cpm,
                patterns: &["CMakeLists.txt"],
                case_insensitive: false,
                extract: extract::install::extract_cpm,
                gate: None,
            },
            Binding {
                tool: ToolKind::Buckaroo,
                patterns: &["buckaroo.toml"],
                case_insensitive: false,
                extract: extract::install::extract_buckaroo,
                gate: None,
            },
            Binding {
                tool: ToolKind::Dds,
                patterns: &["package.json5"],
                case_insensitive: false,
                extract: extract::install::extract_dds,
                gate: None,
            },
            Binding {
                tool: ToolKind::Hunter,
                patterns: &["CMakeLists.txt"],
                case_insensitive: false,
                extract: extract::install::extract_hunter,
                gate: None,
            },
            Binding {
                tool: ToolKind::Cppget,
                patterns: &["manifest"],
                case_insensitive: false,
                extract: extract::install::extract_cppget,
                gate: Some(manifest_not_beside_buildfile),
            },
            Binding {
                tool: ToolKind::Xrepo,
                patterns: &["xmake.lua"],
                case_insensitive: false,
                extract: extract::install::extract_xrepo,
                gate: None,
            },
            Binding {
                tool: ToolKind::GitSubmodule,
                patterns: &[".gitmodules"],
                case_insensitive: false,
                extract: extract::install::extract_gitsubmodule,
                gate: None,
            },
            Binding {
                tool: ToolKind::PkgConfig,
                patterns: &["*.pc"],
                case_insensitive: false,
                extract: extract::install::extract_pkgconfig,
                gate: None,
            },
            Binding {
                tool: ToolKind::Make,
                patterns: &["Makefile"],
                case_insensitive: true,
                extract: extract::build::extract_make,
                gate: None,
            },
            Binding {
                tool: ToolKind::CMake,
                patterns: &["CMakeLists.txt", "*.cmake"],
                case_insensitive: false,
                extract: extract::build::extract_cmake,
                gate: None,
            },
            Binding {
                tool: ToolKind::Autoconf,
                patterns: &["configure", "configure.*"],
                case_insensitive: false,
                extract: extract::build::extract_autoconf,
                gate: None,
            },
            Binding {
                tool: ToolKind::Bazel,
                patterns: &["bazel.build", "BUILD", "BUILD.bazel"],
                case_insensitive: true,
                extract: extract::build::extract_bazel,
                gate: None,
            },
            Binding {
                tool: ToolKind::Meson,
                patterns: &["meson.build"],
                case_insensitive: false,
                extract: extract::build::extract_meson,
                gate: None,
            },
            Binding {
                tool: ToolKind::MsBuild,
                patterns: &["*.vcxproj", "*.vbproj", "*.props"],
                case_insensitive: false,
                extract: extract::build::extract_msbuild,
                gate: None,
            },
            Binding {
                tool: ToolKind::Xmake,
                patterns: &["xmake.lua"],
                case_insensitive: false,
                extract: extract::build::extract_xmake,
                gate: None,
            },
            Binding {
                tool: ToolKind::Build2,
                patterns: &["manifest"],
                case_insensitive: false,
                extract: extract::install::extract_build2,
                gate: Some(manifest_beside_buildfile),
            },
            Binding {
                tool: ToolKind::Buck,
                patterns: &["BUCK"],
                case_insensitive: false,
                extract: extract::build::extract_buck,
                gate: None,
            },
        ]
    })
}

/// Simple filename pattern match: literal names, `*.suffix`, `prefix.*`.
fn pattern_matches(pattern: &str, filename: &str, case_insensitive: bool) -> bool {
    let (pattern, filename) = if case_insensitive {
        (pattern.to_ascii_lowercase(), filename.to_ascii_lowercase())
    } else {
        (pattern.to_string(), filename.to_string())
    };
    if let Some(suffix) = pattern.strip_prefix('*') {
        return filename.ends_with(suffix) && filename.len() > suffix.len();
    }
    if let Some(prefix) = pattern.strip_suffix(".*") {
        return filename
            .strip_prefix(prefix)
            .is_some_and(|rest| rest.starts_with('.') && rest.len() > 1);
    }
    pattern == filename
}

/// Scan configuration; `ScanConfig::new(root)` gives the defaults.
#[derive(Clone)]
pub struct ScanConfig {
    pub root: PathBuf,
    /// Defaults to the root directory name.
    pub repo_id: Option<String>,
    /// Directory names pruned anywhere in the tree.
    pub ignore_dirs: BTreeSet<String>,
    pub follow_symlinks: bool,
    pub enabled_tools: BTreeSet<ToolKind>,
    pub max_file_bytes: u64,
    /// When set, clone detection runs after manifest extraction.
    pub clone_db: Option<SignatureDb>,
    pub clone_threshold: f64,
}

impl ScanConfig {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        ScanConfig {
            root: root.into(),
            repo_id: None,
            ignore_dirs: [".git", "build", "out"].iter().map(|s| s.to_string()).collect(),
            follow_symlinks: false,
            enabled_tools: ToolKind::manifest_tools().collect(),
            max_file_bytes: 8 * 1024 * 1024,
            clone_db: None,
            clone_threshold: clonesig::DEFAULT_THRESHOLD,
        }
    }

    fn repo_id(&self) -> String {
        if let Some(id) = &self.repo_id {
            return id.clone();
        }
        let canonical = self.root.canonicalize().unwrap_or_else(|_| self.root.clone());
        canonical
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| canonical.to_string_lossy().into_owned())
    }
}

/// One supported tool as reported by `list_supported_tools`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedTool {
    pub tool: ToolKind,
    pub patterns: Vec<&'static str>,
    pub phase: Phase,
}

/// The 21 manifest-backed tools, plus clone detection when a signature
/// database is configured.
pub fn list_supported_tools(clone_db_configured: bool) -> Vec<SupportedTool> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for binding in bindings() {
        if seen.insert(binding.tool) {
            out.push(SupportedTool {
                tool: binding.tool,
                patterns: binding.patterns.to_vec(),
                phase: binding.tool.phase(),
            });
        }
    }
    if clone_db_configured {
        out.push(SupportedTool {
            tool: ToolKind::CloneSig,
            patterns: Vec::new(),
            phase: Phase::Clone,
        });
    }
    out
}

/// Walk the repository, dispatch every matching file to each matching
/// enabled extractor, and assemble the report. A file matching several
/// tools is passed to each of them independently.
pub fn scan_repository(config: &ScanConfig) -> Result<ScanReport> {
    if !config.root.is_dir() {
        return Err(Error::InvalidInput(format!(
            "root {} is not a readable directory",
            config.root.display()
        )));
    }
    let mut report = ScanReport::new(config.repo_id());

    let mut matched: Vec<(PathBuf, String)> = Vec::new(); // (absolute, relative)
    let walker = WalkDir::new(&config.root)
        .follow_links(config.follow_symlinks)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(|entry| {
            !(entry.file_type().is_dir()
                && entry.depth() > 0
                && entry
                    .file_name()
                    .to_str()
                    .map(|name| config.ignore_dirs.contains(name))
                    .unwrap_or(false))
        });
    for entry in walker {
        let entry = match entry {
            Ok(e) => e,
            Err(err) => {
                let path = err
                    .path()
                    .map(|p| relative_display(&config.root, p))
                    .unwrap_or_default();
                report.warnings.push(ScanWarning::new(path, 0, format!("unreadable: {err}")));
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        report.file_count += 1;
        let filename = entry.file_name().to_string_lossy();
        let hit = bindings().iter().any(|b| {
            config.enabled_tools.contains(&b.tool)
                && b.patterns
                    .iter()
                    .any(|p| pattern_matches(p, &filename, b.case_insensitive))
        });
        if hit {
            matched.push((
                entry.path().to_path_buf(),
                relative_display(&config.root, entry.path()),
            ));
        }
    }

    // extraction is pure per file, so fan out and merge in walk order
    let outcomes: Vec<FileOutcome> = matched
        .par_iter()
        .map(|(abs, rel)| extract_one(config, abs, rel))
        .collect();
    let mut oversize = 0u64;
    for (_, per_tool, skip) in outcomes {
        if let Some(warning) = skip {
            oversize += 1;
            report.warnings.push(warning);
            continue;
        }
        for (tool, outcome) in per_tool {
            report.tools_seen.insert(tool);
            report.warnings.extend(outcome.warnings);
            report.add_records(outcome.records);
        }
    }
    report.skipped_files = oversize;

    if let Some(db) = &config.clone_db {
        let detection = clonesig::detect_clones(&config.root, db, config.clone_threshold)?;
        report.add_records(clonesig::to_records(&detection.matches));
        for w in detection.warnings {
            report.warnings.push(w);
        }
    }
    report.sort_records();
    Ok(report)
}

/// Extraction outcome for one file: the relative path, what each matching
/// tool produced, and a skip warning when the file was not read at all.
type FileOutcome = (String, Vec<(ToolKind, ExtractionResult)>, Option<ScanWarning>);

fn extract_one(config: &ScanConfig, abs: &Path, rel: &str) -> FileOutcome {
    match std::fs::metadata(abs) {
        Ok(meta) if meta.len() > config.max_file_bytes => {
            return (
                rel.to_string(),
                Vec::new(),
                Some(ScanWarning::new(
                    rel,
                    0,
                    format!("skipped: {} bytes exceeds cap", meta.len()),
                )),
            );
        }
        Err(e) => {
            return (
                rel.to_string(),
                Vec::new(),
                Some(ScanWarning::new(rel, 0, format!("unreadable: {e}"))),
            );
        }
        _ => {}
    }
    let bytes = match std::fs::read(abs) {
        Ok(b) => b,
        Err(e) => {
            return (
                rel.to_string(),
                Vec::new(),
                Some(ScanWarning::new(rel, 0, format!("unreadable: {e}"))),
            );
        }
    };
    let filename = abs
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut per_tool = Vec::new();
    for binding in bindings() {
        if !config.enabled_tools.contains(&binding.tool) {
            continue;
        }
        let matches = binding
            .patterns
            .iter()
            .any(|p| pattern_matches(p, &filename, binding.case_insensitive));
        if !matches {
            continue;
        }
        if let Some(gate) = binding.gate {
            if !gate(abs) {
                continue;
            }
        }
        per_tool.push((binding.tool, (binding.extract)(&bytes, rel)));
    }
    (rel.to_string(), per_tool, None)
}

fn relative_display(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    let mut s = rel.to_string_lossy().replace('\\', "/");
    if s.is_empty() {
        s = ".".to_string();
    }
    s
}
