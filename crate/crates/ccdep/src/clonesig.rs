//! Copied-code detection: builds a signature database from TPL sources
//! and matches target repositories by exact hashes of normalized function
//! bodies.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use crate::error::{Error, Result};
use crate::model::{DependencyRecord, Evidence, ScanWarning, ToolKind, VersionConstraint};

/// Default match-ratio threshold for reporting a clone.
pub const DEFAULT_THRESHOLD: f64 = 0.10;

/// Functions whose normalized body is shorter than this are noise
/// (one-line accessors, stubs) and never hashed.
pub const MIN_NORMALIZED_LEN: usize = 64;

const SOURCE_EXTENSIONS: &[&str] = &["c", "cc", "cpp", "h", "hpp"];
const DB_HEADER: &str = "ccdep-clonedb 1";

/// Hash of one normalized function body (128-bit, hex) plus its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSignature {
    pub hash: String,
    pub length: usize,
}

/// Per-library signature sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SignatureDb {
    libraries: BTreeMap<String, BTreeSet<String>>,
}

/// One detected clone of a database library inside a repository.
#[derive(Debug, Clone, PartialEq)]
pub struct CloneMatch {
    pub library: String,
    pub matched: u64,
    pub total: u64,
    pub ratio: f64,
    /// First repository file (and function start line) that matched.
    pub evidence: Evidence,
}

/// Strip comments and collapse string/char literals to placeholders,
/// preserving newlines so later passes can still track lines.
fn clean_source(src: &str) -> String {
    let bytes = src.as_bytes();
    let mut out = String::with_capacity(src.len());
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '/' if bytes.get(i + 1) == Some(&b'/') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '/' if bytes.get(i + 1) == Some(&b'*') => {
                i += 2;
                while i + 1 < bytes.len() && !(bytes[i] == b'*' && bytes[i + 1] == b'/') {
                    if bytes[i] == b'\n' {
                        out.push('\n');
                    }
                    i += 1;
                }
                i = (i + 2).min(bytes.len());
            }
            '"' | '\'' => {
                let quote = c;
                out.push(quote);
                out.push(if quote == '"' { 's' } else { 'c' });
                i += 1;
                let mut escaped = false;
                while i < bytes.len() {
                    let q = bytes[i] as char;
                    if escaped {
                        escaped = false;
                    } else if q == '\\' {
                        escaped = true;
                    } else if q == quote {
                        break;
                    } else if q == '\n' {
                        // unterminated literal; stop at the line end
                        break;
                    }
                    i += 1;
                }
                out.push(quote);
                i += 1;
            }
            _ => {
                out.push(c);
                i += 1;
            }
        }
    }
    out
}

fn is_word(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '$'
}

/// Normalize a function body: comments removed, literals collapsed,
/// whitespace runs collapsed (kept as one space only between word
/// characters). Identifier case is preserved.
pub fn normalize_function(body: &str) -> String {
    let cleaned = clean_source(body);
    let mut out = String::with_capacity(cleaned.len());
    let mut pending_space = false;
    for c in cleaned.chars() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if pending_space {
            if out.chars().last().is_some_and(is_word) && is_word(c) {
                out.push(' ');
            }
            pending_space = false;
        }
        out.push(c);
    }
    out
}

fn hash_normalized(normalized: &str) -> String {
    let digest = Sha256::digest(normalized.as_bytes());
    let mut hex = String::with_capacity(32);
    for byte in &digest[..16] {
        write!(hex, "{byte:02x}").expect("writing to a String");
    }
    hex
}

const HEADER_KEYWORDS: &[&str] = &[
    "if", "for", "while", "switch", "do", "else", "catch", "return", "struct", "class", "enum",
    "union", "namespace", "try", "sizeof",
];

/// Extract function-shaped regions: an identifier + parenthesized
/// parameter list followed by a brace block. Returns (source line of the
/// header, normalized text) per function.
fn extract_functions(src: &str) -> Vec<(u32, String)> {
    let cleaned = clean_source(src);
    let bytes = cleaned.as_bytes();
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut region_start = 0usize; // after last ; } { or file start
    let mut region_line = 1u32;
    let mut paren_depth = 0i32;
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '\n' => line += 1,
            '(' => paren_depth += 1,
            ')' => paren_depth -= 1,
            ';' | '}' => {
                if paren_depth <= 0 {
                    region_start = i + 1;
                    region_line = line;
                    paren_depth = 0;
                }
            }
            '{' => {
                if paren_depth > 0 {
                    // initializer braces inside an argument list
                    i += 1;
                    continue;
                }
                let header = cleaned[region_start..i].trim();
                if looks_like_function_header(header) {
                    if let Some(body_len) = brace_block_len(&cleaned[i..]) {
                        let text = &cleaned[region_start..i + body_len];
                        let normalized = normalize_function(text);
                        if normalized.len() >= MIN_NORMALIZED_LEN {
                            out.push((region_line, normalized));
                        }
                        line += cleaned[i..i + body_len].matches('\n').count() as u32;
                        i += body_len;
                        region_start = i;
                        region_line = line;
                        continue;
                    }
                }
                region_start = i + 1;
                region_line = line;
            }
            _ => {}
        }
        i += 1;
    }
    out
}

fn looks_like_function_header(header: &str) -> bool {
    let Some(open) = header.find('(') else {
        return false;
    };
    if !header.ends_with(')') {
        return false;
    }
    // identifier immediately before the parameter list
    let before = header[..open].trim_end();
    let name: String = before
        .chars()
        .rev()
        .take_while(|c| is_word(*c))
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    if name.is_empty() || name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return false;
    }
    if HEADER_KEYWORDS.contains(&name.as_str()) {
        return false;
    }
    // equals sign means assignment/lambda, not a definition header
    !header.contains('=') && !header.starts_with('[') && !header.starts_with('#')
}

/// Length of a `{...}` block including both braces; input starts at `{`.
fn brace_block_len(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i + 1);
                }
            }
            _ => {}
        }
    }
    None
}

fn is_source_file(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| SOURCE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
        .unwrap_or(false)
}

/// Walk a tree and hash every extractable function. Returns
/// hash -> first (path, line) in sorted walk order.
fn hash_tree(root: &Path, warnings: &mut Vec<ScanWarning>) -> BTreeMap<String, Evidence> {
    let mut first_seen: BTreeMap<String, Evidence> = BTreeMap::new();
    let walker = WalkDir::new(root)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(|e| {
            !(e.file_type().is_dir()
                && e.depth() > 0
                && matches!(
                    e.file_name().to_str().unwrap_or(""),
                    ".git" | "build" | "out"
                ))
        });
    for entry in walker.flatten() {
        if !entry.file_type().is_file() || !is_source_file(entry.path()) {
            continue;
        }
        let rel = entry
            .path()
            .strip_prefix(root)
            .unwrap_or(entry.path())
            .to_string_lossy()
            .replace('\\', "/");
        let bytes = match std::fs::read(entry.path()) {
            Ok(b) => b,
            Err(e) => {
                warnings.push(ScanWarning::new(rel, 0, format!("unreadable: {e}")));
                continue;
            }
        };
        if crate::extract::looks_binary(&bytes) {
            continue;
        }
        let text = String::from_utf8_lossy(&bytes);
        for (line, normalized) in extract_functions(&text) {
            let hash = hash_normalized(&normalized);
            first_seen
                .entry(hash)
                .or_insert_with(|| Evidence::new(rel.clone(), line));
        }
    }
    first_seen
}

impl SignatureDb {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.libraries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.libraries.len()
    }

    pub fn libraries(&self) -> impl Iterator<Item = (&str, &BTreeSet<String>)> {
        self.libraries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn insert(&mut self, library: impl Into<String>, hashes: BTreeSet<String>) {
        self.libraries.insert(library.into(), hashes);
    }

    /// Serialize to the flat text format: a header line, then per-library
    /// blocks of `library <name> <total>` followed by sorted hex digests.
    /// Deterministic, so rebuilding from the same sources is
    /// byte-identical.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(DB_HEADER);
        out.push('\n');
        for (name, hashes) in &self.libraries {
            let _ = writeln!(out, "library {} {}", name, hashes.len());
            for h in hashes {
                out.push_str(h);
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(header) if header.trim() == DB_HEADER => {}
            other => {
                return Err(Error::Format {
                    what: "signature db",
                    detail: format!("bad header: {other:?}"),
                })
            }
        }
        let mut db = SignatureDb::new();
        let mut current: Option<(String, u64, BTreeSet<String>)> = None;
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("library ") {
                if let Some((name, _total, hashes)) = current.take() {
                    db.libraries.insert(name, hashes);
                }
                let mut parts = rest.split_whitespace();
                let name = parts.next().unwrap_or_default().to_string();
                let total: u64 = parts.next().and_then(|t| t.parse().ok()).ok_or_else(|| {
                    Error::Format {
                        what: "signature db",
                        detail: format!("bad library line: {line}"),
                    }
                })?;
                if name.is_empty() {
                    return Err(Error::Format {
                        what: "signature db",
                        detail: "library line without a name".into(),
                    });
                }
                current = Some((name, total, BTreeSet::new()));
            } else if let Some((_, _, hashes)) = current.as_mut() {
                if line.len() != 32 || !line.bytes().all(|b| b.is_ascii_hexdigit()) {
                    return Err(Error::Format {
                        what: "signature db",
                        detail: format!("bad digest line: {line}"),
                    });
                }
                hashes.insert(line.to_string());
            } else {
                return Err(Error::Format {
                    what: "signature db",
                    detail: format!("digest before any library block: {line}"),
                });
            }
        }
        if let Some((name, _total, hashes)) = current.take() {
            db.libraries.insert(name, hashes);
        }
        Ok(db)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

/// Outcome of a database build: the db plus per-source warnings.
#[derive(Debug)]
pub struct BuildOutcome {
    pub db: SignatureDb,
    pub warnings: Vec<ScanWarning>,
}

/// Hash every named source tree into a signature database. Trees with no
/// extractable functions are skipped with a warning.
pub fn build_signature_db(sources: &[(String, std::path::PathBuf)]) -> Result<BuildOutcome> {
    let mut db = SignatureDb::new();
    let mut warnings = Vec::new();
    for (name, root) in sources {
        if !root.is_dir() {
            return Err(Error::InvalidInput(format!(
                "source tree {} is not a directory",
                root.display()
            )));
        }
        let library = crate::model::normalize_name(name, ToolKind::CloneSig)?;
        let hashes: BTreeSet<String> = hash_tree(root, &mut warnings).into_keys().collect();
        if hashes.is_empty() {
            warnings.push(ScanWarning::new(
                root.to_string_lossy().into_owned(),
                0,
                format!("no extractable functions; library {library} skipped"),
            ));
            continue;
        }
        db.insert(library, hashes);
    }
    Ok(BuildOutcome { db, warnings })
}

/// Result of clone detection over one repository.
#[derive(Debug)]
pub struct DetectionOutcome {
    pub matches: Vec<CloneMatch>,
    pub warnings: Vec<ScanWarning>,
}

/// Hash the repository with the same pipeline and report every library
/// whose signature-set overlap reaches the threshold.
pub fn detect_clones(repo_root: &Path, db: &SignatureDb, threshold: f64) -> Result<DetectionOutcome> {
    if db.is_empty() {
        return Err(Error::EmptyInput("signature database"));
    }
    if !repo_root.is_dir() {
        return Err(Error::InvalidInput(format!(
            "repository root {} is not a directory",
            repo_root.display()
        )));
    }
    let mut warnings = Vec::new();
    let repo_hashes = hash_tree(repo_root, &mut warnings);
    let mut matches = Vec::new();
    for (library, hashes) in &db.libraries {
        let total = hashes.len() as u64;
        if total == 0 {
            continue;
        }
        let mut matched = 0u64;
        let mut first: Option<&Evidence> = None;
        for h in hashes {
            if let Some(ev) = repo_hashes.get(h) {
                matched += 1;
                let better = match first {
                    None => true,
                    Some(cur) => (&ev.path, ev.line) < (&cur.path, cur.line),
                };
                if better {
                    first = Some(ev);
                }
            }
        }
        let ratio = matched as f64 / total as f64;
        if matched > 0 && ratio >= threshold {
            matches.push(CloneMatch {
                library: library.clone(),
                matched,
                total,
                ratio,
                evidence: first.cloned().expect("matched > 0 implies evidence"),
            });
        }
    }
    Ok(DetectionOutcome { matches, warnings })
}

/// Clone matches as dependency records (tool `CloneSig`, phase `Clone`).
pub fn to_records(matches: &[CloneMatch]) -> Vec<DependencyRecord> {
    matches
        .iter()
        .map(|m| {
            DependencyRecord::new(
                m.library.clone(),
                m.library.clone(),
                ToolKind::CloneSig,
                m.evidence.clone(),
            )
            .with_constraint(VersionConstraint::unspecified(""))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    // ~100 normalized bytes each so the noise filter keeps them
    const FN_A: &str = "int alpha_sum(int a, int b) {\n  int result = a + b;\n  result *= 2;\n  result -= a;\n  return result + b;\n}\n";
    const FN_B: &str = "int beta_mix(int x) {\n  int acc = x * x;\n  acc += x / 3;\n  acc ^= 0x5f;\n  return acc - x;\n}\n";
    const FN_C: &str = "double gamma_scale(double v) {\n  double w = v * 1.5;\n  w += 0.25;\n  w /= 3.0;\n  return w - v;\n}\n";

    fn make_tree(files: &[(&str, &str)]) -> tempfile::TempDir {
        let dir = tempfile::tempdir().unwrap();
        for (rel, content) in files {
            let p = dir.path().join(rel);
            fs::create_dir_all(p.parent().unwrap()).unwrap();
            fs::write(p, content).unwrap();
        }
        dir
    }

    #[test]
    fn normalize_strips_comments_and_spaces() {
        assert_eq!(
            normalize_function("int f( int x ){ return  x; } // c"),
            "int f(int x){return x;}"
        );
    }

    #[test]
    fn normalize_is_idempotent() {
        let once = normalize_function("int f( int x ){ return  x; } /* note */");
        assert_eq!(normalize_function(&once), once);
    }

    #[test]
    fn comment_only_body_normalizes_to_empty() {
        assert_eq!(normalize_function("// only\n/* comments */"), "");
    }

    #[test]
    fn literal_placeholders() {
        let n = normalize_function("const char* s = \"hello world\"; char c = 'x';");
        assert!(n.contains("\"s\""));
        assert!(n.contains("'c'"));
        assert!(!n.contains("hello"));
    }

    #[test]
    fn extracts_functions_not_control_flow() {
        let src = format!("{FN_A}\nvoid driver(void) {{\n  if (alpha_sum(1, 2)) {{\n    beta_mix(3);\n    alpha_sum(4, 5);\n    beta_mix(6);\n  }}\n}}\n");
        let fns = extract_functions(&src);
        assert_eq!(fns.len(), 2, "{fns:?}");
        assert!(fns[0].1.starts_with("int alpha_sum"));
        assert!(fns[1].1.starts_with("void driver"));
    }

    #[test]
    fn short_functions_skipped() {
        let fns = extract_functions("int id(int x) { return x; }");
        assert!(fns.is_empty());
    }

    #[test]
    fn db_build_counts_distinct_bodies() {
        let dir = make_tree(&[("src/a.c", &format!("{FN_A}{FN_B}{FN_C}"))]);
        let sources = vec![("LibX".to_string(), dir.path().to_path_buf())];
        let outcome = build_signature_db(&sources).unwrap();
        let (name, hashes) = outcome.db.libraries().next().unwrap();
        assert_eq!(name, "libx");
        assert_eq!(hashes.len(), 3);
    }

    #[test]
    fn duplicate_bodies_collapse() {
        let dir = make_tree(&[("a.c", FN_A), ("b.c", FN_A)]);
        let sources = vec![("dup".to_string(), dir.path().to_path_buf())];
        let outcome = build_signature_db(&sources).unwrap();
        let (_, hashes) = outcome.db.libraries().next().unwrap();
        assert_eq!(hashes.len(), 1);
    }

    #[test]
    fn empty_tree_skipped_with_warning() {
        let dir = make_tree(&[("README.md", "notes only")]);
        let sources = vec![("empty".to_string(), dir.path().to_path_buf())];
        let outcome = build_signature_db(&sources).unwrap();
        assert!(outcome.db.is_empty());
        assert_eq!(outcome.warnings.len(), 1);
    }

    #[test]
    fn self_detection_is_total() {
        let lib = make_tree(&[("src/a.c", &format!("{FN_A}{FN_B}"))]);
        let sources = vec![("lib".to_string(), lib.path().to_path_buf())];
        let db = build_signature_db(&sources).unwrap().db;
        let outcome = detect_clones(lib.path(), &db, DEFAULT_THRESHOLD).unwrap();
        assert_eq!(outcome.matches.len(), 1);
        assert_eq!(outcome.matches[0].ratio, 1.0);
        assert_eq!(outcome.matches[0].matched, outcome.matches[0].total);
    }

    #[test]
    fn disjoint_code_no_matches() {
        let lib = make_tree(&[("a.c", FN_A)]);
        let other = make_tree(&[("z.c", FN_C)]);
        let sources = vec![("lib".to_string(), lib.path().to_path_buf())];
        let db = build_signature_db(&sources).unwrap().db;
        let outcome = detect_clones(other.path(), &db, DEFAULT_THRESHOLD).unwrap();
        assert!(outcome.matches.is_empty());
    }

    fn boundary_fn(i: usize) -> String {
        format!(
            "int fn_{i}(int a, int b) {{\n  int v{i} = a * {i} + b;\n  v{i} += a - {i} * 3;\n  v{i} ^= ({i} + 7) << 2;\n  v{i} -= b / ({i} + 1);\n  return v{i} * a + b;\n}}\n"
        )
    }

    #[test]
    fn threshold_boundary_one_of_ten() {
        // library with exactly 10 distinct functions; repo copies 1
        let lib_src: String = (0..10).map(boundary_fn).collect();
        let lib = make_tree(&[("lib.c", &lib_src)]);
        let repo = make_tree(&[("copy.c", &boundary_fn(3))]);
        let sources = vec![("lib".to_string(), lib.path().to_path_buf())];
        let db = build_signature_db(&sources).unwrap().db;
        assert_eq!(db.libraries().next().unwrap().1.len(), 10);
        let outcome = detect_clones(repo.path(), &db, 0.10).unwrap();
        assert_eq!(outcome.matches.len(), 1);
        assert!((outcome.matches[0].ratio - 0.10).abs() < 1e-12);
        // just above the copied fraction: no match
        let above = detect_clones(repo.path(), &db, 0.11).unwrap();
        assert!(above.matches.is_empty());
    }

    #[test]
    fn db_text_roundtrip_bit_exact() {
        let dir = make_tree(&[("a.c", &format!("{FN_A}{FN_B}"))]);
        let sources = vec![("lib".to_string(), dir.path().to_path_buf())];
        let db = build_signature_db(&sources).unwrap().db;
        let text = db.to_text();
        let back = SignatureDb::from_text(&text).unwrap();
        assert_eq!(back, db);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn db_rejects_garbage() {
        assert!(SignatureDb::from_text("not a db\n").is_err());
        assert!(SignatureDb::from_text("ccdep-clonedb 1\nzzz\n").is_err());
    }

    #[test]
    fn clone_records_carry_clone_phase() {
        let m = CloneMatch {
            library: "zstd".into(),
            matched: 2,
            total: 4,
            ratio: 0.5,
            evidence: Evidence::new("vendor/zstd.c", 10),
        };
        let records = to_records(&[m]);
        assert_eq!(records[0].tool, ToolKind::CloneSig);
        assert_eq!(records[0].phase, crate::model::Phase::Clone);
    }
}
