//! Cross-tool library-name canonicalization.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::ToolKind;

/// Debian source packages whose binary packages keep the `lib` prefix even
/// without a `-dev`/`-dbg` suffix; for these the prefix is still packaging
/// convention, not part of the upstream name.
const DEB_LIB_SOURCE_PREFIXES: &[&str] = &["libssl", "libpng", "libjpeg", "libxml2", "libcurl"];

/// Normalize a raw dependency name for cross-tool comparison.
///
/// Always lowercases and strips whitespace. Tool-scoped rules:
/// - `Deb`: drops one `-dev`/`-dbg` suffix, then drops a leading `lib`
///   when the raw name ended in `-dev`/`-dbg` or matches a known `libX`
///   source-package pattern;
/// - `PkgConfig`: drops a leading `lib`;
/// - `GitSubmodule`: keeps only the final URL path segment and drops a
///   trailing `.git`.
///
/// `lib` is only ever stripped when the whole name is longer than 4
/// characters and at least 2 characters remain, so `libm`, `librt` and
/// friends survive. Idempotent for every tool.
pub fn normalize_name(raw: &str, tool: ToolKind) -> Result<String> {
    let trimmed = raw.trim();
    if trimmed.is_empty() {
        return Err(Error::InvalidInput("empty dependency name".into()));
    }
    let mut name: String = trimmed
        .to_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();

    match tool {
        ToolKind::GitSubmodule => {
            name = last_url_segment(&name);
            if let Some(stripped) = name.strip_suffix(".git") {
                name = stripped.to_string();
            }
        }
        ToolKind::Deb => {
            let had_packaging_suffix = name.ends_with("-dev") || name.ends_with("-dbg");
            if let Some(s) = name.strip_suffix("-dev").or_else(|| name.strip_suffix("-dbg")) {
                name = s.to_string();
            }
            if had_packaging_suffix || DEB_LIB_SOURCE_PREFIXES.iter().any(|p| name.starts_with(p))
            {
                name = strip_lib_prefix(&name);
            }
        }
        ToolKind::PkgConfig => {
            name = strip_lib_prefix(&name);
        }
        _ => {}
    }

    if name.is_empty() {
        return Err(Error::InvalidInput(format!(
            "name {raw:?} normalizes to nothing"
        )));
    }
    Ok(name)
}

/// Strip leading `lib` (repeatedly, so the result is a fixpoint) subject to
/// the length guards: never on names of length <= 4, never when fewer than
/// 2 characters would remain.
pub(crate) fn strip_lib_prefix(name: &str) -> String {
    let mut out = name;
    while out.len() > 4 {
        match out.strip_prefix("lib") {
            Some(rest) if rest.len() >= 2 => out = rest,
            _ => break,
        }
    }
    out.to_string()
}

fn last_url_segment(url: &str) -> String {
    let no_query = url.split(['?', '#']).next().unwrap_or(url);
    let tail = no_query
        .split('/')
        .rev()
        .find(|s| !s.is_empty())
        .unwrap_or(no_query);
    // scp-style remotes: git@host:owner/name
    tail.rsplit(':').next().unwrap_or(tail).to_string()
}

/// Optional alias table mapping normalized names to a canonical library
/// name (e.g. `zlib1g -> zlib`), applied after `normalize_name`.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    map: BTreeMap<String, String>,
}

impl AliasTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, alias: impl Into<String>, canonical: impl Into<String>) {
        self.map
            .insert(alias.into().to_lowercase(), canonical.into().to_lowercase());
    }

    /// Resolve a normalized name through the table (identity when absent).
    pub fn resolve<'a>(&'a self, name: &'a str) -> &'a str {
        self.map.get(name).map(String::as_str).unwrap_or(name)
    }

    /// Load from a text file of `alias = canonical` lines (`#` comments).
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut table = AliasTable::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((alias, canonical)) = line.split_once('=') else {
                return Err(Error::Format {
                    what: "alias table",
                    detail: format!("line {}: expected `alias = canonical`", idx + 1),
                });
            };
            let (alias, canonical) = (alias.trim(), canonical.trim());
            if alias.is_empty() || canonical.is_empty() {
                return Err(Error::Format {
                    what: "alias table",
                    detail: format!("line {}: empty side", idx + 1),
                });
            }
            table.insert(alias, canonical);
        }
        Ok(table)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_folding_only_for_build_tools() {
        assert_eq!(normalize_name("OpenSSL", ToolKind::CMake).unwrap(), "openssl");
        assert_eq!(normalize_name("libfoo", ToolKind::CMake).unwrap(), "libfoo");
    }

    #[test]
    fn deb_packaging_suffixes() {
        assert_eq!(normalize_name("libpng-dev", ToolKind::Deb).unwrap(), "png");
        assert_eq!(normalize_name("libssl-dev", ToolKind::Deb).unwrap(), "ssl");
        assert_eq!(normalize_name("zlib1g-dev", ToolKind::Deb).unwrap(), "zlib1g");
        assert_eq!(normalize_name("libxml2", ToolKind::Deb).unwrap(), "xml2");
    }

    #[test]
    fn short_lib_names_survive() {
        assert_eq!(normalize_name("libm", ToolKind::Deb).unwrap(), "libm");
        assert_eq!(normalize_name("libm", ToolKind::PkgConfig).unwrap(), "libm");
        // length > 4 with a 2-char remainder still strips for pkg-config,
        // but build tools never strip
        assert_eq!(normalize_name("librt", ToolKind::PkgConfig).unwrap(), "rt");
        assert_eq!(normalize_name("librt", ToolKind::Make).unwrap(), "librt");
        assert_eq!(normalize_name("librt", ToolKind::Deb).unwrap(), "librt");
    }

    #[test]
    fn pkgconfig_lib_strip() {
        assert_eq!(normalize_name("libssl", ToolKind::PkgConfig).unwrap(), "ssl");
        assert_eq!(normalize_name("zlib", ToolKind::PkgConfig).unwrap(), "zlib");
    }

    #[test]
    fn submodule_urls() {
        assert_eq!(
            normalize_name("https://github.com/google/googletest.git", ToolKind::GitSubmodule)
                .unwrap(),
            "googletest"
        );
        assert_eq!(
            normalize_name("git@github.com:fmtlib/fmt.git", ToolKind::GitSubmodule).unwrap(),
            "fmt"
        );
        assert_eq!(
            normalize_name("../relative/path/zlib", ToolKind::GitSubmodule).unwrap(),
            "zlib"
        );
    }

    #[test]
    fn idempotent_for_all_fixtures() {
        let cases = [
            ("OpenSSL", ToolKind::CMake),
            ("libpng-dev", ToolKind::Deb),
            ("libssl", ToolKind::PkgConfig),
            ("liblibfoo", ToolKind::PkgConfig),
            ("https://github.com/google/googletest.git", ToolKind::GitSubmodule),
            ("libm", ToolKind::Deb),
            ("zlib1g-dev", ToolKind::Deb),
        ];
        for (raw, tool) in cases {
            let once = normalize_name(raw, tool).unwrap();
            let twice = normalize_name(&once, tool).unwrap();
            assert_eq!(once, twice, "{raw} via {tool}");
        }
    }

    #[test]
    fn empty_name_rejected() {
        assert!(normalize_name("", ToolKind::CMake).is_err());
        assert!(normalize_name("   ", ToolKind::CMake).is_err());
    }

    #[test]
    fn alias_table() {
        let mut t = AliasTable::new();
        t.insert("zlib1g", "zlib");
        assert_eq!(t.resolve("zlib1g"), "zlib");
        assert_eq!(t.resolve("fmt"), "fmt");
    }
}
