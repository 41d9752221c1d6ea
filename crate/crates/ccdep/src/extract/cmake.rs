//! A small CMake command lexer shared by the CMake, CPM and Hunter
//! extractors, plus bounded `${VAR}` substitution. This is lexical
//! extraction, not evaluation: both branches of conditionals are mined
//! and generator expressions are left alone.

use std::collections::HashMap;
use std::sync::OnceLock;

use regex::Regex;

use super::install::parse_module_list;
use super::{binary_guard, push_record, push_record_as, text_lossy, ExtractionResult, LineIndex};
use crate::model::{ToolKind, Version, VersionConstraint};

/// Keyword tokens of `find_package` and friends; never library names.
const CMAKE_KEYWORDS: &[&str] = &[
    "REQUIRED",
    "QUIET",
    "COMPONENTS",
    "OPTIONAL_COMPONENTS",
    "EXACT",
    "CONFIG",
    "MODULE",
    "NO_MODULE",
    "NO_POLICY_SCOPE",
    "NO_DEFAULT_PATH",
    "NAMES",
    "HINTS",
    "PATHS",
    "PATH_SUFFIXES",
    "GLOBAL",
    "BYPASS_PROVIDER",
    "REGISTRY_VIEW",
    "NO_CMAKE_PATH",
    "NO_CMAKE_ENVIRONMENT_PATH",
    "NO_SYSTEM_ENVIRONMENT_PATH",
    "NO_CMAKE_PACKAGE_REGISTRY",
    "NO_CMAKE_BUILDS_PATH",
    "NO_CMAKE_SYSTEM_PATH",
    "NO_CMAKE_INSTALL_PREFIX",
    "NO_CMAKE_SYSTEM_PACKAGE_REGISTRY",
    "CMAKE_FIND_ROOT_PATH_BOTH",
    "ONLY_CMAKE_FIND_ROOT_PATH",
    "NO_CMAKE_FIND_ROOT_PATH",
    "IMPORTED_TARGET",
    "DOC",
    "VALIDATOR",
];

pub(crate) fn is_cmake_keyword(token: &str) -> bool {
    CMAKE_KEYWORDS.contains(&token.to_ascii_uppercase().as_str())
}

#[derive(Debug)]
pub(crate) struct CmakeCommand {
    /// Lowercased command identifier.
    pub name: String,
    pub args: Vec<String>,
    pub line: u32,
}

/// Lex a CMake script into commands. Comments are dropped, quoted
/// arguments keep their content, nested parentheses inside argument lists
/// are skipped. A command whose parentheses never close produces a
/// warning and lexing resynchronizes at the line after the command start.
pub(crate) fn parse_commands(text: &str) -> (Vec<CmakeCommand>, Vec<(u32, String)>) {
    let mut commands = Vec::new();
    let mut warnings = Vec::new();
    let index = LineIndex::new(text);
    let bytes = text.as_bytes();
    let mut i = 0usize;

    while i < bytes.len() {
        let c = bytes[i] as char;
        if c == '#' {
            // bracket comment #[[ ... ]] or line comment
            if text[i..].starts_with("#[[") {
                match text[i..].find("]]") {
                    Some(end) => i += end + 2,
                    None => break,
                }
            } else {
                match text[i..].find('\n') {
                    Some(end) => i += end + 1,
                    None => break,
                }
            }
            continue;
        }
        if !(c.is_ascii_alphabetic() || c == '_') {
            i += 1;
            continue;
        }
        let ident_len = text[i..]
            .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
            .unwrap_or(text.len() - i);
        let ident = &text[i..i + ident_len];
        let mut j = i + ident_len;
        while j < bytes.len() && (bytes[j] as char).is_whitespace() {
            j += 1;
        }
        if j >= bytes.len() || bytes[j] != b'(' {
            i += ident_len.max(1);
            continue;
        }
        let cmd_line = index.line_of(i);
        match lex_args(&text[j + 1..]) {
            Some((args, consumed)) => {
                commands.push(CmakeCommand {
                    name: ident.to_ascii_lowercase(),
                    args,
                    line: cmd_line,
                });
                i = j + 1 + consumed;
            }
            None => {
                warnings.push((cmd_line, format!("unbalanced parentheses in {ident}(...)")));
                // resynchronize at the next line start
                i = match text[i..].find('\n') {
                    Some(nl) => i + nl + 1,
                    None => text.len(),
                };
            }
        }
    }
    (commands, warnings)
}

/// Lex an argument list up to the matching close paren; returns the
/// arguments and bytes consumed including the `)`.
fn lex_args(s: &str) -> Option<(Vec<String>, usize)> {
    let mut args = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    let bytes = s.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            '"' => {
                // quoted argument, \" escapes
                let mut end = i + 1;
                let mut escaped = false;
                let mut ok = false;
                while end < bytes.len() {
                    let q = bytes[end] as char;
                    if escaped {
                        escaped = false;
                    } else if q == '\\' {
                        escaped = true;
                    } else if q == '"' {
                        ok = true;
                        break;
                    }
                    end += 1;
                }
                if !ok {
                    return None;
                }
                args.push(s[i + 1..end].replace("\\\"", "\""));
                i = end + 1;
            }
            '#' => {
                // comment to end of line inside an argument list
                if !current.is_empty() {
                    args.push(std::mem::take(&mut current));
                }
                i += s[i..].find('\n')? + 1;
            }
            '(' => {
                if !current.is_empty() {
                    args.push(std::mem::take(&mut current));
                }
                depth += 1;
                i += 1;
            }
            ')' => {
                if !current.is_empty() {
                    args.push(std::mem::take(&mut current));
                }
                if depth == 0 {
                    return Some((args, i + 1));
                }
                depth -= 1;
                i += 1;
            }
            _ if c.is_whitespace() => {
                if !current.is_empty() {
                    args.push(std::mem::take(&mut current));
                }
                i += 1;
            }
            _ => {
                current.push(c);
                i += 1;
            }
        }
    }
    None
}

/// Per-file variable environment for `${VAR}` substitution; resolution is
/// bounded so self-referential definitions terminate.
#[derive(Debug, Clone)]
pub struct CmakeEvalContext {
    variables: HashMap<String, String>,
    max_substitution_depth: usize,
}

impl Default for CmakeEvalContext {
    fn default() -> Self {
        CmakeEvalContext {
            variables: HashMap::new(),
            max_substitution_depth: 8,
        }
    }
}

impl CmakeEvalContext {
    pub fn new(max_substitution_depth: usize) -> Self {
        CmakeEvalContext {
            variables: HashMap::new(),
            max_substitution_depth,
        }
    }

    pub fn set(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.variables.insert(name.into(), value.into());
    }

    /// Expand `${NAME}` references; unresolved names stay literal.
    pub fn substitute(&self, input: &str) -> String {
        static VAR: OnceLock<Regex> = OnceLock::new();
        let var = VAR.get_or_init(|| Regex::new(r"\$\{([A-Za-z0-9_.+/-]+)\}").expect("regex"));
        let mut out = input.to_string();
        for _ in 0..self.max_substitution_depth {
            let next = var
                .replace_all(&out, |caps: &regex::Captures| {
                    self.variables
                        .get(&caps[1])
                        .cloned()
                        .unwrap_or_else(|| caps[0].to_string())
                })
                .into_owned();
            if next == out {
                break;
            }
            out = next;
        }
        out
    }
}

fn is_version_token(tok: &str) -> bool {
    // plain versions plus CMake's `1.2...3.4` range form; a digit-leading
    // name without dots (7zip) is not a version
    let head = tok.split("...").next().unwrap_or(tok);
    if !head.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return false;
    }
    head.chars().all(|c| c.is_ascii_digit())
        || (head.contains('.')
            && head
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '-'))
}

fn usable_name(tok: &str) -> bool {
    !tok.is_empty() && !is_cmake_keyword(tok) && !tok.contains('$') && !is_version_token(tok)
}

// ----------------------------------------------------------------- CMake

/// `CMakeLists.txt` / `*.cmake`: `find_package`, `pkg_check_modules`,
/// `find_library`, `FetchContent_Declare`, with `set()` assignments feeding
/// `${VAR}` substitution.
pub fn extract_cmake(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let (commands, warnings) = parse_commands(&text);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    let mut ctx = CmakeEvalContext::default();
    for cmd in &commands {
        let args: Vec<String> = cmd.args.iter().map(|a| ctx.substitute(a)).collect();
        match cmd.name.as_str() {
            "set" => {
                if let Some((name, value)) = args.split_first() {
                    if !name.is_empty() && !name.contains('$') {
                        ctx.set(name.clone(), value.join(";"));
                    }
                }
            }
            "find_package" => find_package(&args, path, cmd.line, &mut result),
            "pkg_check_modules" | "pkg_search_module" => {
                pkg_check_modules(&args, path, cmd.line, &mut result)
            }
            "find_library" => find_library(&args, path, cmd.line, &mut result),
            "fetchcontent_declare" => fetchcontent_declare(&args, path, cmd.line, &mut result),
            _ => {}
        }
    }
    result
}

fn find_package(args: &[String], path: &str, line: u32, result: &mut ExtractionResult) {
    let Some(name) = args.first() else { return };
    if !usable_name(name) {
        return;
    }
    let mut exact = false;
    let mut version: Option<&str> = None;
    let mut components = Vec::new();
    let mut in_components = false;
    for tok in &args[1..] {
        let upper = tok.to_ascii_uppercase();
        match upper.as_str() {
            "COMPONENTS" | "OPTIONAL_COMPONENTS" => in_components = true,
            "EXACT" => {
                exact = true;
                in_components = false;
            }
            _ if is_cmake_keyword(tok) => in_components = false,
            _ if in_components => components.push(tok.clone()),
            _ if version.is_none() && is_version_token(tok) => version = Some(tok),
            _ => {}
        }
    }
    let constraint = match version {
        // a bare version token means "at least" unless EXACT is given
        Some(v) => {
            let v = v.split("...").next().unwrap_or(v);
            if exact {
                VersionConstraint::parse(v)
            } else {
                VersionConstraint::parse(&format!(">={v}"))
            }
        }
        None => VersionConstraint::unspecified(""),
    };
    push_record(result, name, ToolKind::CMake, path, line, |r| {
        r.with_constraint(constraint).with_components(components)
    });
}

fn pkg_check_modules(args: &[String], path: &str, line: u32, result: &mut ExtractionResult) {
    if args.len() < 2 {
        return;
    }
    // args[0] is the output prefix variable
    let spec_text: Vec<String> = args[1..]
        .iter()
        .filter(|t| !is_cmake_keyword(t) && !t.contains('$'))
        .cloned()
        .collect();
    for (raw_name, constraint) in parse_module_list(&spec_text.join(" ")) {
        // pkg-config module names follow pkg-config naming, so the
        // PkgConfig lib-prefix rule applies even though the tool is CMake
        let name = crate::model::strip_lib_prefix(&raw_name.to_lowercase());
        push_record_as(result, &raw_name, &name, ToolKind::CMake, path, line, |r| {
            r.with_constraint(constraint)
        });
    }
}

fn find_library(args: &[String], path: &str, line: u32, result: &mut ExtractionResult) {
    if args.len() < 2 {
        return;
    }
    let mut candidates = &args[1..];
    if candidates[0].eq_ignore_ascii_case("NAMES") {
        candidates = &candidates[1..];
    }
    let Some(first) = candidates.iter().find(|t| usable_name(t)) else {
        return;
    };
    push_record(result, first, ToolKind::CMake, path, line, |r| r);
}

fn fetchcontent_declare(args: &[String], path: &str, line: u32, result: &mut ExtractionResult) {
    let Some(name) = args.first() else { return };
    if !usable_name(name) {
        return;
    }
    let mut source_url = None;
    let mut tag = None;
    let mut iter = args[1..].iter().peekable();
    while let Some(tok) = iter.next() {
        match tok.to_ascii_uppercase().as_str() {
            "GIT_REPOSITORY" | "URL" => source_url = iter.peek().map(|s| s.to_string()),
            "GIT_TAG" => tag = iter.peek().map(|s| s.to_string()),
            _ => {}
        }
    }
    let constraint = match tag {
        Some(t) if Version::looks_like_version(&t) => VersionConstraint::parse(&t),
        Some(t) => VersionConstraint::unspecified(t),
        None => VersionConstraint::unspecified(""),
    };
    push_record(result, name, ToolKind::CMake, path, line, |r| {
        let r = r.with_constraint(constraint);
        match &source_url {
            Some(url) => r.with_source_url(url.clone()),
            None => r,
        }
    });
}

// ------------------------------------------------------------------- CPM

/// `CPMAddPackage(...)`: the `gh:owner/name@version` shorthand or the
/// NAME/VERSION keyword form.
pub fn extract_cpm(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let (commands, warnings) = parse_commands(&text);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for cmd in &commands {
        if cmd.name != "cpmaddpackage" && cmd.name != "cpmfindpackage" {
            continue;
        }
        // single-string keyword syntax: CPMAddPackage("NAME fmt VERSION 9.1.0")
        let tokens: Vec<String> = if cmd.args.len() == 1 && cmd.args[0].contains(char::is_whitespace)
        {
            cmd.args[0].split_whitespace().map(str::to_string).collect()
        } else {
            cmd.args.clone()
        };
        if tokens.is_empty() {
            continue;
        }
        if tokens.len() == 1 || shorthand_uri(&tokens[0]).is_some() {
            if let Some((name, version, url)) = shorthand_uri(&tokens[0]) {
                let constraint = version
                    .map(|v| VersionConstraint::parse(&v))
                    .unwrap_or_else(|| VersionConstraint::unspecified(""));
                push_record_as(
                    &mut result,
                    &tokens[0],
                    &name,
                    ToolKind::Cpm,
                    path,
                    cmd.line,
                    |r| {
                        let r = r.with_constraint(constraint);
                        match &url {
                            Some(u) => r.with_source_url(u.clone()),
                            None => r,
                        }
                    },
                );
                continue;
            }
        }
        cpm_keyword_form(&tokens, path, cmd.line, &mut result);
    }
    result
}

/// `gh:owner/name@1.2.3`, `gl:...`, `bb:...`, or a bare git URL with an
/// optional `@version` / `#ref` suffix.
fn shorthand_uri(token: &str) -> Option<(String, Option<String>, Option<String>)> {
    let (host, rest) = token.split_once(':')?;
    let base = match host {
        "gh" => "https://github.com",
        "gl" => "https://gitlab.com",
        "bb" => "https://bitbucket.org",
        _ => return None,
    };
    let (path_part, version) = match rest.split_once('@') {
        Some((p, v)) => (p, Some(v.to_string())),
        None => (rest.split_once('#').map(|(p, _)| p).unwrap_or(rest), None),
    };
    let name = path_part.rsplit('/').next()?.trim_end_matches(".git");
    if name.is_empty() {
        return None;
    }
    Some((
        name.to_string(),
        version,
        Some(format!("{base}/{path_part}")),
    ))
}

fn cpm_keyword_form(tokens: &[String], path: &str, line: u32, result: &mut ExtractionResult) {
    let mut name: Option<String> = None;
    let mut version: Option<String> = None;
    let mut url: Option<String> = None;
    let mut repo: Option<String> = None;
    let mut tag: Option<String> = None;
    let mut iter = tokens.iter().peekable();
    while let Some(tok) = iter.next() {
        let value = iter.peek().map(|s| s.to_string());
        match tok.to_ascii_uppercase().as_str() {
            "NAME" => name = value,
            "VERSION" => version = value,
            "GITHUB_REPOSITORY" => repo = value,
            "GIT_REPOSITORY" | "URL" => url = value,
            "GIT_TAG" => tag = value,
            _ => {}
        }
    }
    let derived = name.clone().or_else(|| {
        repo.as_ref()
            .and_then(|r| r.rsplit('/').next().map(str::to_string))
    });
    let Some(pkg) = derived.filter(|n| usable_name(n)) else {
        return;
    };
    let source = url.or_else(|| repo.map(|r| format!("https://github.com/{r}")));
    let constraint = version
        .filter(|v| Version::looks_like_version(v))
        .or(tag.filter(|t| Version::looks_like_version(t)))
        .map(|v| VersionConstraint::parse(&v))
        .unwrap_or_else(|| VersionConstraint::unspecified(""));
    push_record(result, &pkg, ToolKind::Cpm, path, line, |r| {
        let r = r.with_constraint(constraint);
        match &source {
            Some(u) => r.with_source_url(u.clone()),
            None => r,
        }
    });
}

// ---------------------------------------------------------------- Hunter

/// `hunter_add_package(Name [COMPONENTS ...])`.
pub fn extract_hunter(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    let text = text_lossy(bytes);
    let (commands, warnings) = parse_commands(&text);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for cmd in &commands {
        if cmd.name != "hunter_add_package" {
            continue;
        }
        let Some(name) = cmd.args.first() else { continue };
        if !usable_name(name) {
            continue;
        }
        push_record(&mut result, name, ToolKind::Hunter, path, cmd.line, |r| r);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintKind, Phase};

    fn ver(s: &str) -> Version {
        Version::parse(s).unwrap()
    }

    #[test]
    fn lexer_basic() {
        let (cmds, warns) = parse_commands("find_package(ZLIB REQUIRED) # trailing\n");
        assert!(warns.is_empty());
        assert_eq!(cmds.len(), 1);
        assert_eq!(cmds[0].name, "find_package");
        assert_eq!(cmds[0].args, ["ZLIB", "REQUIRED"]);
    }

    #[test]
    fn lexer_nested_parens_and_quotes() {
        let src = "if(NOT (A AND B))\n  set(MSG \"closing ) paren\")\nendif()\n";
        let (cmds, warns) = parse_commands(src);
        assert!(warns.is_empty());
        let names: Vec<_> = cmds.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["if", "set", "endif"]);
        assert_eq!(cmds[1].args[1], "closing ) paren");
    }

    #[test]
    fn lexer_unbalanced_resyncs() {
        let src = "find_package(Foo\nfind_package(Bar)\n";
        let (cmds, warns) = parse_commands(src);
        // the malformed call swallows everything to EOF, warns, and lexing
        // restarts at the second line
        assert_eq!(warns.len(), 1);
        assert_eq!(cmds.len(), 1);
        assert_eq!(cmds[0].args[0], "Bar");
    }

    #[test]
    fn find_package_with_minimum_version() {
        let r = extract_cmake(b"find_package(OpenSSL 1.1 REQUIRED)\n", "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        let rec = &r.records[0];
        assert_eq!(rec.library, "openssl");
        assert_eq!(rec.tool, ToolKind::CMake);
        assert_eq!(rec.phase, Phase::Build);
        assert_eq!(rec.constraint.kind, ConstraintKind::Range);
        assert!(rec.constraint.contains(&ver("1.1")));
        assert!(rec.constraint.contains(&ver("3.0")));
        assert!(!rec.constraint.contains(&ver("1.0")));
    }

    #[test]
    fn find_package_threads_bare() {
        let r = extract_cmake(b"find_package(Threads REQUIRED)\n", "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "threads");
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Unspecified);
    }

    #[test]
    fn find_package_exact_and_components() {
        let r = extract_cmake(
            b"find_package(Boost 1.71 EXACT COMPONENTS system filesystem)\n",
            "CMakeLists.txt",
        );
        let rec = &r.records[0];
        assert_eq!(rec.constraint.kind, ConstraintKind::Exact);
        assert_eq!(rec.components, ["system", "filesystem"]);
    }

    #[test]
    fn variable_substitution() {
        let src = b"set(DEP zlib)\nfind_package(${DEP})\n";
        let r = extract_cmake(src, "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "zlib");
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Unspecified);
    }

    #[test]
    fn unresolved_variable_never_becomes_a_name() {
        let r = extract_cmake(b"find_package(${MYSTERY})\n", "CMakeLists.txt");
        assert!(r.records.is_empty());
    }

    #[test]
    fn self_referential_substitution_terminates() {
        let src = b"set(A \"${A}x\")\nfind_package(${A})\n";
        let r = extract_cmake(src, "CMakeLists.txt");
        // unresolvable; must terminate and emit nothing
        assert!(r.records.is_empty());
    }

    #[test]
    fn both_branches_of_conditionals_mined() {
        let src = b"if(WIN32)\nfind_package(DirectX)\nelse()\nfind_package(X11)\nendif()\n";
        let r = extract_cmake(src, "CMakeLists.txt");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["directx", "x11"]);
    }

    #[test]
    fn pkg_check_modules_records() {
        let r = extract_cmake(
            b"pkg_check_modules(PNG REQUIRED libpng>=1.6)\n",
            "CMakeLists.txt",
        );
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "png");
        assert_eq!(r.records[0].raw_name, "libpng");
        assert!(r.records[0].constraint.contains(&ver("1.6")));
    }

    #[test]
    fn find_library_first_name() {
        let r = extract_cmake(b"find_library(M_LIB NAMES m m_static)\n", "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "m");
    }

    #[test]
    fn fetchcontent_with_version_tag() {
        let src = b"FetchContent_Declare(json GIT_REPOSITORY https://github.com/nlohmann/json.git GIT_TAG v3.11.2)\n";
        let r = extract_cmake(src, "CMakeLists.txt");
        let rec = &r.records[0];
        assert_eq!(rec.library, "json");
        assert_eq!(rec.constraint.kind, ConstraintKind::Exact);
        assert!(rec.constraint.contains(&ver("3.11.2")));
        assert!(rec.source_url.as_deref().unwrap().contains("nlohmann"));
    }

    #[test]
    fn fetchcontent_branch_tag_unspecified() {
        let src = b"FetchContent_Declare(fmt GIT_REPOSITORY https://github.com/fmtlib/fmt GIT_TAG master)\n";
        let r = extract_cmake(src, "CMakeLists.txt");
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Unspecified);
        assert_eq!(r.records[0].constraint.raw, "master");
    }

    #[test]
    fn keywords_never_emitted() {
        let src = b"find_package(REQUIRED)\nfind_library(V NAMES REQUIRED)\n";
        let r = extract_cmake(src, "CMakeLists.txt");
        assert!(r.records.is_empty());
    }

    #[test]
    fn cpm_shorthand() {
        let r = extract_cpm(b"CPMAddPackage(\"gh:fmtlib/fmt@9.1.0\")\n", "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        let rec = &r.records[0];
        assert_eq!(rec.library, "fmt");
        assert_eq!(rec.tool, ToolKind::Cpm);
        assert_eq!(rec.phase, Phase::Install);
        assert_eq!(rec.constraint.kind, ConstraintKind::Exact);
        assert!(rec.constraint.contains(&ver("9.1.0")));
        assert_eq!(rec.source_url.as_deref(), Some("https://github.com/fmtlib/fmt"));
    }

    #[test]
    fn cpm_keyword_form_parses() {
        let src = b"CPMAddPackage(NAME nlohmann_json VERSION 3.11.2 GITHUB_REPOSITORY nlohmann/json)\n";
        let r = extract_cpm(src, "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "nlohmann_json");
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Exact);
    }

    #[test]
    fn cpm_absent_means_no_records() {
        let r = extract_cpm(b"find_package(ZLIB)\n", "CMakeLists.txt");
        assert!(r.records.is_empty());
    }

    #[test]
    fn hunter_package() {
        let r = extract_hunter(b"hunter_add_package(Boost)\n", "CMakeLists.txt");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "boost");
        assert_eq!(r.records[0].tool, ToolKind::Hunter);
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Unspecified);
    }

    #[test]
    fn hunter_absent() {
        let r = extract_hunter(b"find_package(ZLIB)\n", "CMakeLists.txt");
        assert!(r.records.is_empty());
    }
}
