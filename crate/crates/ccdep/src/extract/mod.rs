//! Extractors mapping manifest and build-script files to dependency
//! records. Every extractor is a pure, total function of the file bytes
//! and its repository-relative path: arbitrary input never panics, the
//! worst case is zero records plus warnings.

pub mod build;
mod cmake;
pub mod install;

use crate::model::{DependencyRecord, ScanWarning, ToolKind};

pub use cmake::CmakeEvalContext;

/// What one extractor produced for one file.
#[derive(Debug, Clone, Default)]
pub struct ExtractionResult {
    pub records: Vec<DependencyRecord>,
    pub warnings: Vec<ScanWarning>,
}

impl ExtractionResult {
    pub fn warn(&mut self, path: &str, line: u32, message: impl Into<String>) {
        self.warnings.push(ScanWarning::new(path, line, message));
    }
}

/// Extractor entry point signature used by the discovery dispatch table.
pub type ExtractFn = fn(&[u8], &str) -> ExtractionResult;

/// OS-default Unix libraries; records for these are kept but tagged
/// `system = true` rather than dropped.
pub const UNIX_SYSTEM_LIBS: &[&str] = &["threads", "m", "dl", "rt", "nsl", "socket", "pthread"];

/// Windows import libraries linked by default project templates; the
/// MSBuild extractor filters these out unless asked otherwise.
pub const WINDOWS_SYSTEM_LIBS: &[&str] = &[
    "advapi32", "bcrypt", "comctl32", "comdlg32", "crypt32", "d2d1", "d3d11", "d3d12", "dbghelp",
    "dwrite", "gdi32", "gdiplus", "imm32", "iphlpapi", "kernel32", "mswsock", "netapi32", "ntdll",
    "odbc32", "odbccp32", "ole32", "oleaut32", "opengl32", "psapi", "rpcrt4", "secur32",
    "setupapi", "shell32", "shlwapi", "user32", "userenv", "uuid", "version", "wininet", "winmm",
    "winspool", "wininet", "ws2_32", "wsock32", "xinput",
];

pub fn is_unix_system_lib(name: &str) -> bool {
    UNIX_SYSTEM_LIBS.contains(&name)
}

pub fn is_windows_system_lib(name: &str) -> bool {
    WINDOWS_SYSTEM_LIBS.contains(&name)
}

/// Cheap binary-content check: manifest formats are text, so a NUL byte
/// near the start means this is not a file worth mining.
pub(crate) fn looks_binary(bytes: &[u8]) -> bool {
    bytes.iter().take(8192).any(|&b| b == 0)
}

/// Decode as UTF-8, replacing invalid sequences. CRLF endings are
/// normalized so line handling (and the garbage guard below) never sees
/// a stray `\r`.
pub(crate) fn text_lossy(bytes: &[u8]) -> String {
    let text = String::from_utf8_lossy(bytes);
    if text.contains('\r') {
        text.replace("\r\n", "\n")
    } else {
        text.into_owned()
    }
}

/// Blank out `marker`-to-end-of-line comments outside quoted strings,
/// replacing them with spaces so byte offsets and line numbers stay
/// valid. Alphabetic markers (m4's `dnl`) only match on word
/// boundaries.
pub(crate) fn blank_line_comments(text: &str, markers: &[&str]) -> String {
    let mut out: Vec<char> = text.chars().collect();
    let chars: Vec<char> = out.clone();
    let mut quote: Option<char> = None;
    let mut escaped = false;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q || c == '\n' {
                quote = None;
            }
            i += 1;
            continue;
        }
        match c {
            '"' | '\'' => {
                quote = Some(c);
                i += 1;
            }
            '\n' => i += 1,
            _ => {
                let mut matched = false;
                for marker in markers {
                    let m: Vec<char> = marker.chars().collect();
                    if chars[i..].starts_with(&m) {
                        let word_marker = m.iter().all(|mc| mc.is_ascii_alphabetic());
                        if word_marker {
                            let before_ok =
                                i == 0 || !chars[i - 1].is_ascii_alphanumeric() && chars[i - 1] != '_';
                            let after = chars.get(i + m.len());
                            let after_ok =
                                after.is_none_or(|a| !a.is_ascii_alphanumeric() && *a != '_');
                            if !(before_ok && after_ok) {
                                continue;
                            }
                        }
                        while i < chars.len() && chars[i] != '\n' {
                            out[i] = ' ';
                            i += 1;
                        }
                        matched = true;
                        break;
                    }
                }
                if !matched {
                    i += 1;
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Lines containing control bytes or replacement characters are garbage
/// (binary spill, encoding damage) and are never mined for names.
pub(crate) fn is_garbage_line(line: &str) -> bool {
    line.chars()
        .any(|c| (c.is_control() && c != '\t') || c == '\u{FFFD}')
}

/// Guard shared by every extractor; emits the standard warning when the
/// input is binary.
pub(crate) fn binary_guard(bytes: &[u8], path: &str, result: &mut ExtractionResult) -> bool {
    if looks_binary(bytes) {
        result.warn(path, 0, "binary content skipped");
        return true;
    }
    false
}

/// 1-based line number lookup by byte offset.
pub(crate) struct LineIndex {
    starts: Vec<usize>,
}

impl LineIndex {
    pub fn new(text: &str) -> Self {
        let mut starts = vec![0];
        starts.extend(
            text.bytes()
                .enumerate()
                .filter(|(_, b)| *b == b'\n')
                .map(|(i, _)| i + 1),
        );
        LineIndex { starts }
    }

    pub fn line_of(&self, offset: usize) -> u32 {
        match self.starts.binary_search(&offset) {
            Ok(idx) => idx as u32 + 1,
            Err(idx) => idx as u32,
        }
    }
}

/// One `name(...)` invocation found in a script, with the argument text
/// between the balanced outer parentheses.
#[derive(Debug)]
pub(crate) struct CallSite {
    pub args: String,
    pub line: u32,
}

/// Find every `<name>(...)` call of the given identifier pattern, scanning
/// to the matching close paren while respecting single/double quotes.
/// Unterminated calls produce a warning and are dropped.
pub(crate) fn find_calls(
    text: &str,
    index: &LineIndex,
    name: &regex::Regex,
) -> (Vec<CallSite>, Vec<(u32, String)>) {
    let mut calls = Vec::new();
    let mut warnings = Vec::new();
    for m in name.find_iter(text) {
        let rest = &text[m.end()..];
        let open_rel = match rest.find(|c: char| !c.is_whitespace()) {
            Some(i) if rest[i..].starts_with('(') => i,
            _ => continue,
        };
        let args_start = m.end() + open_rel + 1;
        match scan_balanced(&text[args_start..]) {
            Some(len) => calls.push(CallSite {
                args: text[args_start..args_start + len].to_string(),
                line: index.line_of(m.start()),
            }),
            None => warnings.push((
                index.line_of(m.start()),
                format!("unterminated call at `{}`", m.as_str().trim()),
            )),
        }
    }
    (calls, warnings)
}

/// Byte length of the argument text up to (not including) the matching
/// `)` for an already-consumed `(`. Quotes hide parentheses.
pub(crate) fn scan_balanced(s: &str) -> Option<usize> {
    scan_balanced_pair(s, '(', ')')
}

/// Same, for an arbitrary delimiter pair (already-consumed `open`).
pub(crate) fn scan_balanced_pair(s: &str, open: char, close: char) -> Option<usize> {
    let mut depth = 1usize;
    let mut quote: Option<char> = None;
    let mut escaped = false;
    for (i, c) in s.char_indices() {
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q {
                quote = None;
            }
            continue;
        }
        if c == '"' || c == '\'' {
            quote = Some(c);
        } else if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                return Some(i);
            }
        }
    }
    None
}

/// Quoted strings appearing at table/bracket depth 0 of an argument list
/// (so strings inside `{...}` option tables are skipped).
pub(crate) fn top_level_strings(args: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut chars = args.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            '{' | '[' => depth += 1,
            '}' | ']' => depth = depth.saturating_sub(1),
            '"' | '\'' if depth == 0 => {
                let rest = &args[i + c.len_utf8()..];
                if let Some(end) = rest.find(c) {
                    out.push(rest[..end].to_string());
                    for _ in 0..rest[..end].chars().count() + 1 {
                        chars.next();
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// All quoted strings regardless of nesting.
pub(crate) fn all_strings(args: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut quote: Option<char> = None;
    let mut start = 0usize;
    for (i, c) in args.char_indices() {
        match quote {
            Some(q) if c == q => {
                out.push(args[start..i].to_string());
                quote = None;
            }
            None if c == '"' || c == '\'' => {
                quote = Some(c);
                start = i + 1;
            }
            _ => {}
        }
    }
    out
}

/// Normalize + build a record, downgrading name errors to warnings.
pub(crate) fn push_record(
    result: &mut ExtractionResult,
    name: &str,
    tool: ToolKind,
    path: &str,
    line: u32,
    build: impl FnOnce(DependencyRecord) -> DependencyRecord,
) {
    push_record_as(result, name, name, tool, path, line, build);
}

/// Like `push_record` but keeps `raw_name` (the manifest text) distinct
/// from the name fed to normalization, for extractors that locate the
/// library name inside a larger token (URL paths, `owner/name`, `.lib`).
pub(crate) fn push_record_as(
    result: &mut ExtractionResult,
    raw_name: &str,
    name: &str,
    tool: ToolKind,
    path: &str,
    line: u32,
    build: impl FnOnce(DependencyRecord) -> DependencyRecord,
) {
    match crate::model::normalize_name(name, tool) {
        Ok(library) => {
            let record = DependencyRecord::new(
                library,
                raw_name,
                tool,
                crate::model::Evidence::new(path, line),
            );
            result.records.push(build(record));
        }
        Err(e) => result.warn(path, line, format!("skipping dependency name: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_index() {
        let idx = LineIndex::new("a\nbb\nccc\n");
        assert_eq!(idx.line_of(0), 1);
        assert_eq!(idx.line_of(1), 1);
        assert_eq!(idx.line_of(2), 2);
        assert_eq!(idx.line_of(5), 3);
    }

    #[test]
    fn binary_detection() {
        assert!(looks_binary(b"\x00\x01\x02"));
        assert!(!looks_binary(b"Requires: zlib"));
    }

    #[test]
    fn garbage_lines() {
        assert!(is_garbage_line("a\u{1}b"));
        assert!(is_garbage_line("bad \u{FFFD} bytes"));
        assert!(!is_garbage_line("LDLIBS = -lm\t-lpthread"));
    }
}
