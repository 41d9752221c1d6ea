//! Extractors for the 12 Install-phase tools.

use std::sync::OnceLock;

use regex::Regex;

use super::{
    all_strings, binary_guard, blank_line_comments, find_calls, is_garbage_line, push_record,
    push_record_as, text_lossy, top_level_strings, ExtractionResult, LineIndex,
};
use crate::model::{ToolKind, VersionConstraint};

pub use super::cmake::{extract_cpm, extract_hunter};

fn re(cell: &'static OnceLock<Regex>, pattern: &str) -> &'static Regex {
    cell.get_or_init(|| Regex::new(pattern).expect("static regex"))
}

/// Line number of `needle`'s first occurrence at or after `*cursor`,
/// advancing the cursor. Attaches evidence to entries of formats parsed
/// through a document model (JSON/TOML) that drops source positions.
fn locate(text: &str, index: &LineIndex, cursor: &mut usize, needle: &str) -> u32 {
    if let Some(pos) = text[*cursor..].find(needle) {
        let at = *cursor + pos;
        *cursor = at + needle.len();
        return index.line_of(at);
    }
    if let Some(pos) = text.find(needle) {
        return index.line_of(pos);
    }
    1
}

// ---------------------------------------------------------------- Conan

/// `conanfile.txt` / `conaninfo.txt` sections, or lexical extraction from
/// `conanfile.py` (repository code is never executed).
pub fn extract_conan(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    if path.ends_with(".py") {
        extract_conanfile_py(&text, path, &mut result);
    } else {
        extract_conan_sections(&text, path, &mut result);
    }
    result
}

fn extract_conan_sections(text: &str, path: &str, result: &mut ExtractionResult) {
    const DEP_SECTIONS: &[&str] = &["requires", "build_requires", "tool_requires"];
    let mut in_dep_section = false;
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || is_garbage_line(line) {
            continue;
        }
        if line.starts_with('[') {
            match line.strip_suffix(']') {
                Some(header) => in_dep_section = DEP_SECTIONS.contains(&header[1..].trim()),
                None => {
                    result.warn(path, lineno, format!("malformed section header: {line}"));
                    in_dep_section = false;
                }
            }
            continue;
        }
        if in_dep_section {
            conan_reference(line, path, lineno, result);
        }
    }
}

/// `name/version[@user/channel][#rev]`; the version part may be a
/// bracketed range expression like `[>=1.2.11 <1.3]`.
fn conan_reference(entry: &str, path: &str, lineno: u32, result: &mut ExtractionResult) {
    let entry = entry.split(['@', '#']).next().unwrap_or(entry).trim();
    let (name, version) = match entry.split_once('/') {
        Some((n, v)) => (n.trim(), Some(v.trim())),
        None => (entry, None),
    };
    if name.is_empty() {
        result.warn(path, lineno, format!("unparseable reference: {entry}"));
        return;
    }
    let constraint = version
        .filter(|v| !v.is_empty())
        .map(VersionConstraint::parse)
        .unwrap_or_else(|| VersionConstraint::unspecified(""));
    push_record(result, name, ToolKind::Conan, path, lineno, |r| {
        r.with_constraint(constraint)
    });
}

fn extract_conanfile_py(text: &str, path: &str, result: &mut ExtractionResult) {
    static CALL: OnceLock<Regex> = OnceLock::new();
    static ATTR: OnceLock<Regex> = OnceLock::new();
    let index = LineIndex::new(text);
    let call = re(
        &CALL,
        r#"self\.(?:requires|build_requires|tool_requires)\(\s*f?["']([^"']+)["']"#,
    );
    for caps in call.captures_iter(text) {
        let m = caps.get(1).unwrap();
        conan_reference(m.as_str(), path, index.line_of(m.start()), result);
    }
    let attr = re(
        &ATTR,
        r"(?m)^\s*(?:requires|build_requires|tool_requires)\s*=\s*",
    );
    for m in attr.find_iter(text) {
        let rest = &text[m.end()..];
        let lineno = index.line_of(m.start());
        let value = match rest.chars().next() {
            Some(open @ ('(' | '[')) => {
                let close = if open == '(' { ')' } else { ']' };
                match super::scan_balanced_pair(&rest[1..], open, close) {
                    Some(len) => &rest[1..1 + len],
                    None => {
                        result.warn(path, lineno, "unterminated requires attribute");
                        continue;
                    }
                }
            }
            Some(q @ ('"' | '\'')) => match rest[1..].find(q) {
                Some(end) => &rest[..end + 2],
                None => continue,
            },
            _ => continue,
        };
        for s in all_strings(value) {
            if !s.trim().is_empty() {
                conan_reference(&s, path, lineno, result);
            }
        }
    }
}

// ---------------------------------------------------------------- Vcpkg

/// `vcpkg.json`: the `dependencies` array plus `overrides` pins.
pub fn extract_vcpkg(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let doc: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            result.warn(path, 1, format!("not a well-formed manifest: {e}"));
            return result;
        }
    };
    let index = LineIndex::new(&text);
    let mut cursor = 0usize;
    if let Some(deps) = doc.get("dependencies").and_then(|d| d.as_array()) {
        for dep in deps {
            match dep {
                serde_json::Value::String(name) => {
                    let line = locate(&text, &index, &mut cursor, &format!("\"{name}\""));
                    push_record(&mut result, name, ToolKind::Vcpkg, path, line, |r| r);
                }
                serde_json::Value::Object(obj) => {
                    let Some(name) = obj.get("name").and_then(|n| n.as_str()) else {
                        result.warn(path, 1, "dependency object without name");
                        continue;
                    };
                    let line = locate(&text, &index, &mut cursor, &format!("\"{name}\""));
                    let constraint = obj
                        .get("version>=")
                        .and_then(|v| v.as_str())
                        .map(|v| VersionConstraint::parse(&format!(">={v}")))
                        .unwrap_or_else(|| VersionConstraint::unspecified(""));
                    push_record(&mut result, name, ToolKind::Vcpkg, path, line, |r| {
                        r.with_constraint(constraint)
                    });
                }
                _ => result.warn(path, 1, "unsupported dependency entry"),
            }
        }
    }
    if let Some(overrides) = doc.get("overrides").and_then(|d| d.as_array()) {
        for entry in overrides {
            let (Some(name), Some(version)) = (
                entry.get("name").and_then(|n| n.as_str()),
                entry.get("version").and_then(|v| v.as_str()),
            ) else {
                continue;
            };
            let line = locate(&text, &index, &mut cursor, &format!("\"{name}\""));
            let constraint = VersionConstraint::parse(version);
            push_record(&mut result, name, ToolKind::Vcpkg, path, line, |r| {
                r.with_constraint(constraint)
            });
        }
    }
    result
}

// ---------------------------------------------------------- Git submodule

/// `.gitmodules`: one record per `[submodule]` section with a `url`.
pub fn extract_gitsubmodule(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static HEADER: OnceLock<Regex> = OnceLock::new();
    static KEY: OnceLock<Regex> = OnceLock::new();
    let header = re(&HEADER, r#"^\s*\[submodule(?:\s+"(.*)")?\]\s*$"#);
    let key = re(&KEY, r"^\s*(url|path)\s*=\s*(.+)$");

    let text = text_lossy(bytes);
    // (header line, url + its line)
    let mut section: Option<(u32, Option<(String, u32)>)> = None;
    fn flush(
        section: &mut Option<(u32, Option<(String, u32)>)>,
        path: &str,
        result: &mut ExtractionResult,
    ) {
        if let Some((header_line, url)) = section.take() {
            match url {
                Some((url, url_line)) => {
                    push_record(result, &url, ToolKind::GitSubmodule, path, url_line, |r| {
                        r.with_source_url(url.clone())
                    });
                }
                None => result.warn(path, header_line, "submodule section without url"),
            }
        }
    }
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        if is_garbage_line(line) {
            continue;
        }
        if header.is_match(line) {
            flush(&mut section, path, &mut result);
            section = Some((lineno, None));
        } else if let Some(caps) = key.captures(line) {
            if let Some((_, url)) = section.as_mut() {
                if &caps[1] == "url" {
                    *url = Some((caps[2].trim().to_string(), lineno));
                }
            }
        }
    }
    flush(&mut section, path, &mut result);
    result
}

// ------------------------------------------------------------ pkg-config

/// `.pc` files: `Requires:` / `Requires.private:` with `${var}`
/// substitution from the file's own definitions.
pub fn extract_pkgconfig(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let mut vars = std::collections::HashMap::new();
    for line in text.lines() {
        if is_garbage_line(line) || line.contains(':') {
            continue;
        }
        if let Some((name, value)) = line.split_once('=') {
            let name = name.trim();
            if !name.is_empty() && !name.contains(char::is_whitespace) {
                vars.insert(name.to_string(), value.trim().to_string());
            }
        }
    }
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        if is_garbage_line(line) {
            continue;
        }
        let Some((field, value)) = line.split_once(':') else {
            continue;
        };
        let field = field.trim();
        if !field.eq_ignore_ascii_case("requires")
            && !field.eq_ignore_ascii_case("requires.private")
        {
            continue;
        }
        let mut value = value.trim().to_string();
        for _ in 0..8 {
            let substituted = substitute_pc_vars(&value, &vars);
            if substituted == value {
                break;
            }
            value = substituted;
        }
        if value.contains("${") {
            result.warn(path, lineno, format!("unresolved variable in: {value}"));
        }
        for (name, constraint) in parse_module_list(&value) {
            push_record(&mut result, &name, ToolKind::PkgConfig, path, lineno, |r| {
                r.with_constraint(constraint)
            });
        }
    }
    result
}

fn substitute_pc_vars(s: &str, vars: &std::collections::HashMap<String, String>) -> String {
    static VAR: OnceLock<Regex> = OnceLock::new();
    let var = re(&VAR, r"\$\{([A-Za-z0-9_.]+)\}");
    var.replace_all(s, |caps: &regex::Captures| {
        vars.get(&caps[1])
            .cloned()
            .unwrap_or_else(|| caps[0].to_string())
    })
    .into_owned()
}

/// Tokenize a pkg-config-style module list (`zlib >= 1.2.11, libssl`)
/// into (name, constraint) pairs. Comparators may be attached or
/// detached. Shared with the Autoconf and CMake pkg-config macros.
pub(crate) fn parse_module_list(value: &str) -> Vec<(String, VersionConstraint)> {
    let cleaned = value.replace(',', " ");
    let tokens: Vec<&str> = cleaned.split_whitespace().collect();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < tokens.len() {
        let tok = tokens[i];
        if tok.starts_with(['>', '<', '=']) {
            // stray operator without a preceding name
            i += 1;
            continue;
        }
        if let Some(pos) = tok.find(['>', '<', '=']) {
            let (name, expr) = tok.split_at(pos);
            out.push((name.to_string(), VersionConstraint::parse(expr)));
            i += 1;
            continue;
        }
        if i + 1 < tokens.len() && tokens[i + 1].starts_with(['>', '<', '=']) {
            let op = tokens[i + 1];
            let bare_op = matches!(op, ">" | ">=" | "<" | "<=" | "=" | "==");
            if bare_op && i + 2 < tokens.len() {
                let expr = format!("{}{}", op, tokens[i + 2]);
                out.push((tok.to_string(), VersionConstraint::parse(&expr)));
                i += 3;
            } else {
                out.push((tok.to_string(), VersionConstraint::parse(op)));
                i += 2;
            }
            continue;
        }
        out.push((tok.to_string(), VersionConstraint::unspecified("")));
        i += 1;
    }
    out
}

// ----------------------------------------------------------- Deb control

/// Debian `control`: `Depends:`, `Build-Depends:`, `Build-Depends-Indep:`.
pub fn extract_deb_control(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    const FIELDS: &[&str] = &["depends", "build-depends", "build-depends-indep"];
    let text = text_lossy(bytes);

    // fold field values into (char, source line) pairs so comma-separated
    // entries keep their physical line for evidence
    let mut current: Option<Vec<(char, u32)>> = None;
    fn flush(chars: Option<Vec<(char, u32)>>, path: &str, result: &mut ExtractionResult) {
        let Some(chars) = chars else { return };
        for (entry, line) in split_tracked(&chars) {
            deb_entry(&entry, path, line, result);
        }
    }
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        if is_garbage_line(line) {
            continue;
        }
        if line.starts_with([' ', '\t']) {
            if let Some(chars) = current.as_mut() {
                chars.push((' ', lineno));
                chars.extend(line.trim().chars().map(|c| (c, lineno)));
            } else if !line.trim().is_empty() {
                result.warn(path, lineno, "continuation line outside a field");
            }
            continue;
        }
        flush(current.take(), path, &mut result);
        if let Some((field, value)) = line.split_once(':') {
            if FIELDS.contains(&field.trim().to_ascii_lowercase().as_str()) {
                current = Some(value.trim().chars().map(|c| (c, lineno)).collect());
            }
        }
    }
    flush(current.take(), path, &mut result);
    result
}

fn split_tracked(chars: &[(char, u32)]) -> Vec<(String, u32)> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut line = 0u32;
    for &(c, l) in chars {
        if c == ',' {
            if !buf.trim().is_empty() {
                out.push((buf.trim().to_string(), line));
            }
            buf.clear();
            line = 0;
        } else {
            if buf.trim().is_empty() && !c.is_whitespace() {
                line = l;
            }
            buf.push(c);
        }
    }
    if !buf.trim().is_empty() {
        out.push((buf.trim().to_string(), line.max(1)));
    }
    out
}

fn deb_entry(entry: &str, path: &str, lineno: u32, result: &mut ExtractionResult) {
    static PKG: OnceLock<Regex> = OnceLock::new();
    let pkg = re(&PKG, r"^([A-Za-z0-9][A-Za-z0-9+._-]*)\s*(?:\(([^)]*)\))?");
    for alternative in entry.split('|') {
        let alternative = alternative.trim();
        if alternative.is_empty() {
            continue;
        }
        if alternative.starts_with("${") {
            result.warn(
                path,
                lineno,
                format!("substitution variable skipped: {alternative}"),
            );
            continue;
        }
        let Some(caps) = pkg.captures(alternative) else {
            result.warn(path, lineno, format!("unparseable entry: {alternative}"));
            continue;
        };
        let name = caps.get(1).unwrap().as_str();
        let constraint = caps
            .get(2)
            .map(|m| VersionConstraint::parse(&format!("({})", m.as_str())))
            .unwrap_or_else(|| VersionConstraint::unspecified(""));
        push_record(result, name, ToolKind::Deb, path, lineno, |r| {
            r.with_constraint(constraint)
        });
    }
}

// -------------------------------------------------------------- Buckaroo

/// `buckaroo.toml`: `[[dependency]]` tables.
pub fn extract_buckaroo(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let doc: toml::Table = match toml::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            result.warn(path, 1, format!("not well-formed TOML: {e}"));
            return result;
        }
    };
    let index = LineIndex::new(&text);
    let mut cursor = 0usize;
    let Some(deps) = doc.get("dependency").and_then(|d| d.as_array()) else {
        return result;
    };
    for dep in deps {
        let Some(package) = dep
            .get("package")
            .or_else(|| dep.get("name"))
            .and_then(|p| p.as_str())
        else {
            result.warn(path, 1, "dependency table without a package name");
            continue;
        };
        // package paths look like github.com/owner/name; keep the leaf
        let name = package.rsplit('/').next().unwrap_or(package);
        let line = locate(&text, &index, &mut cursor, package);
        let constraint = dep
            .get("version")
            .and_then(|v| v.as_str())
            .map(VersionConstraint::parse)
            .unwrap_or_else(|| VersionConstraint::unspecified(""));
        push_record_as(
            &mut result,
            package,
            name,
            ToolKind::Buckaroo,
            path,
            line,
            |r| r.with_constraint(constraint),
        );
    }
    result
}

// ------------------------------------------------------------------- Dds

/// `package.json5`: entries of the `depends` array, `name@x.y.z` /
/// `name^x.y.z` / `name+x.y.z` forms.
pub fn extract_dds(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let entries: Vec<(String, u32)> = match serde_json::from_str::<serde_json::Value>(&text) {
        Ok(doc) => {
            let index = LineIndex::new(&text);
            let mut cursor = 0usize;
            doc.get("depends")
                .and_then(|d| d.as_array())
                .map(|deps| {
                    deps.iter()
                        .filter_map(|d| d.as_str())
                        .map(|s| {
                            let line = locate(&text, &index, &mut cursor, s);
                            (s.to_string(), line)
                        })
                        .collect()
                })
                .unwrap_or_default()
        }
        // JSON5 niceties (single quotes, trailing commas, comments):
        // fall back to a tolerant scan of the depends array
        Err(_) => json5ish_depends(&text),
    };
    for (entry, line) in entries {
        let entry = entry.trim();
        if entry.is_empty() {
            continue;
        }
        let split_at = entry
            .find(['@', '^', '~', '+', '<', '>', '='])
            .unwrap_or(entry.len());
        let (name, expr) = entry.split_at(split_at);
        let name = name.trim();
        if name.is_empty() {
            result.warn(path, line, format!("unparseable depends entry: {entry}"));
            continue;
        }
        let constraint = match expr.chars().next() {
            None => VersionConstraint::unspecified(""),
            Some('@') => VersionConstraint::parse(&expr[1..]),
            // `name+1.0.0` means at-least
            Some('+') => VersionConstraint::parse(&format!(">={}", &expr[1..])),
            _ => VersionConstraint::parse(expr),
        };
        push_record_as(&mut result, entry, name, ToolKind::Dds, path, line, |r| {
            r.with_constraint(constraint)
        });
    }
    result
}

fn json5ish_depends(text: &str) -> Vec<(String, u32)> {
    static DEPENDS: OnceLock<Regex> = OnceLock::new();
    let depends = re(&DEPENDS, r#"["']?depends["']?\s*:\s*\["#);
    let Some(m) = depends.find(text) else {
        return Vec::new();
    };
    let rest = &text[m.end()..];
    let body = match rest.find(']') {
        Some(end) => &rest[..end],
        None => rest,
    };
    let index = LineIndex::new(text);
    let base = m.end();
    let mut out = Vec::new();
    let mut quote: Option<(char, usize)> = None;
    for (i, c) in body.char_indices() {
        match quote {
            Some((q, start)) if c == q => {
                out.push((body[start..i].to_string(), index.line_of(base + start)));
                quote = None;
            }
            None if c == '"' || c == '\'' => quote = Some((c, i + c.len_utf8())),
            _ => {}
        }
    }
    out
}

// ------------------------------------------------------------------ Clib

/// `clib.json` (or a clib-style `package.json`): keys of the
/// `dependencies` map. Node.js manifests are rejected by a content guard:
/// a `package.json` is only accepted when a `repo` or `install` key is
/// present.
pub fn extract_clib(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let doc: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            result.warn(path, 1, format!("not well-formed JSON: {e}"));
            return result;
        }
    };
    let filename = path.rsplit('/').next().unwrap_or(path);
    let clib_marker = doc.get("repo").is_some() || doc.get("install").is_some();
    if filename != "clib.json" && !clib_marker {
        return result;
    }
    let index = LineIndex::new(&text);
    let mut cursor = 0usize;
    if let Some(deps) = doc.get("dependencies").and_then(|d| d.as_object()) {
        for (key, value) in deps {
            let name = key.rsplit('/').next().unwrap_or(key);
            let line = locate(&text, &index, &mut cursor, &format!("\"{key}\""));
            let constraint = value
                .as_str()
                .map(VersionConstraint::parse)
                .unwrap_or_else(|| VersionConstraint::unspecified(""));
            push_record_as(&mut result, key, name, ToolKind::Clib, path, line, |r| {
                r.with_constraint(constraint)
            });
        }
    }
    result
}

// ------------------------------------------------- build2/cppget manifest

/// build2 package `manifest`: `depends:` lines. Parsing is shared between
/// Cppget and Build2; discovery picks the tool by context (a manifest
/// sitting beside buildfiles belongs to Build2).
pub fn extract_manifest_depends(bytes: &[u8], path: &str, tool: ToolKind) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        if is_garbage_line(line) {
            continue;
        }
        let Some(value) = line.trim().strip_prefix("depends:") else {
            continue;
        };
        // strip trailing enable conditions: `? ($config ...)`
        let value = value.split('?').next().unwrap_or(value).trim();
        for alternative in value.split('|') {
            let alternative = alternative.trim();
            // `*` marks a build-system requirement, not a library
            if alternative.is_empty() || alternative.starts_with('*') {
                continue;
            }
            let mut parts = alternative.splitn(2, char::is_whitespace);
            let Some(raw_name) = parts.next().filter(|n| !n.is_empty()) else {
                continue;
            };
            // build2 names library packages with a `lib` prefix
            let name = crate::model::strip_lib_prefix(&raw_name.to_lowercase());
            let constraint = parts
                .next()
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(VersionConstraint::parse)
                .unwrap_or_else(|| VersionConstraint::unspecified(""));
            push_record_as(&mut result, raw_name, &name, tool, path, lineno, |r| {
                r.with_constraint(constraint)
            });
        }
    }
    result
}

pub fn extract_cppget(bytes: &[u8], path: &str) -> ExtractionResult {
    extract_manifest_depends(bytes, path, ToolKind::Cppget)
}

pub fn extract_build2(bytes: &[u8], path: &str) -> ExtractionResult {
    extract_manifest_depends(bytes, path, ToolKind::Build2)
}

// ----------------------------------------------------------------- Xrepo

/// `xmake.lua` `add_requires(...)` calls, attributed to the Install phase.
pub fn extract_xrepo(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = blank_line_comments(&text_lossy(bytes), &["--"]);
    let index = LineIndex::new(&text);
    for (spec, line) in xmake_requires(&text, &index, &mut result, path) {
        xmake_package_spec(&spec, ToolKind::Xrepo, path, line, &mut result);
    }
    result
}

/// Top-level string arguments of every `add_requires(...)` call; strings
/// inside `{...}` option tables are not package specs.
pub(crate) fn xmake_requires(
    text: &str,
    index: &LineIndex,
    result: &mut ExtractionResult,
    path: &str,
) -> Vec<(String, u32)> {
    static NAME: OnceLock<Regex> = OnceLock::new();
    let name = re(&NAME, r"\badd_requires\b");
    let (calls, warnings) = find_calls(text, index, name);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    calls
        .into_iter()
        .flat_map(|call| {
            top_level_strings(&call.args)
                .into_iter()
                .map(move |s| (s, call.line))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// One xmake package spec: `zlib 1.2.x`, `libpng >=1.6`,
/// `conan::poco/1.9.4`.
pub(crate) fn xmake_package_spec(
    spec: &str,
    tool: ToolKind,
    path: &str,
    line: u32,
    result: &mut ExtractionResult,
) {
    let spec = spec.trim();
    if spec.is_empty() {
        return;
    }
    let unprefixed = spec.rsplit("::").next().unwrap_or(spec);
    let (name, expr) = if let Some((n, v)) = unprefixed.split_once('/') {
        (n, Some(v))
    } else {
        match unprefixed.split_once(char::is_whitespace) {
            Some((n, v)) => (n, Some(v)),
            None => (unprefixed, None),
        }
    };
    let constraint = expr
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(VersionConstraint::parse)
        .unwrap_or_else(|| VersionConstraint::unspecified(""));
    push_record_as(result, spec, name, tool, path, line, |r| {
        r.with_constraint(constraint)
    });
}
