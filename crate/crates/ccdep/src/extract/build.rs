//! Extractors for the 9 Build-phase tools.

use std::sync::OnceLock;

use regex::Regex;

use super::install::{parse_module_list, xmake_package_spec, xmake_requires};
use super::{
    binary_guard, blank_line_comments, find_calls, is_garbage_line, is_unix_system_lib,
    is_windows_system_lib, push_record, push_record_as, text_lossy, top_level_strings,
    ExtractionResult, LineIndex,
};
use crate::model::{ToolKind, VersionConstraint};

pub use super::cmake::extract_cmake;

fn re(cell: &'static OnceLock<Regex>, pattern: &str) -> &'static Regex {
    cell.get_or_init(|| Regex::new(pattern).expect("static regex"))
}

// ------------------------------------------------------------------ Make

/// `Makefile`: `-l<name>` link flags and `pkg-config --libs/--cflags`
/// command substitutions. Duplicate `-l` tokens are deduplicated per
/// file.
pub fn extract_make(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static LINK: OnceLock<Regex> = OnceLock::new();
    static PKGCONF: OnceLock<Regex> = OnceLock::new();
    let link = re(&LINK, r"(?:^|[\s=])-l\s?([A-Za-z0-9_.+-]+)");
    let pkgconf = re(
        &PKGCONF,
        r"pkg-config\s+((?:--[A-Za-z-]+\s+)*)([A-Za-z0-9_.+ -]+)",
    );

    let text = text_lossy(bytes);
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i as u32 + 1;
        if is_garbage_line(line) {
            continue;
        }
        let line = line.split('#').next().unwrap_or(line);
        for caps in link.captures_iter(line) {
            let name = caps.get(1).unwrap().as_str();
            if seen.insert(name.to_string()) {
                let system = is_unix_system_lib(name);
                push_record(&mut result, name, ToolKind::Make, path, lineno, |r| {
                    r.with_system(system)
                });
            }
        }
        for caps in pkgconf.captures_iter(line) {
            let names = caps.get(2).unwrap().as_str();
            let names = names.split(['$', ')', '`']).next().unwrap_or(names);
            for (raw_name, constraint) in parse_module_list(names) {
                let name = crate::model::strip_lib_prefix(&raw_name.to_lowercase());
                if seen.insert(name.clone()) {
                    push_record_as(
                        &mut result,
                        &raw_name,
                        &name,
                        ToolKind::Make,
                        path,
                        lineno,
                        |r| r.with_constraint(constraint),
                    );
                }
            }
        }
    }
    result
}

// -------------------------------------------------------------- Autoconf

/// `configure` / `configure.*`: library checks (`AC_CHECK_LIB`,
/// `AC_SEARCH_LIBS`), pkg-config macros, and the `AX_BOOST_*` family.
pub fn extract_autoconf(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static CHECK_LIB: OnceLock<Regex> = OnceLock::new();
    static SEARCH_LIBS: OnceLock<Regex> = OnceLock::new();
    static PKG_MACRO: OnceLock<Regex> = OnceLock::new();
    static AX_BOOST: OnceLock<Regex> = OnceLock::new();

    let text = blank_line_comments(&text_lossy(bytes), &["dnl", "#"]);
    let index = LineIndex::new(&text);

    let check_lib = re(&CHECK_LIB, r"\bAC_CHECK_LIB\b");
    let (calls, warnings) = find_calls(&text, &index, check_lib);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for call in calls {
        let Some(name) = m4_arg(&call.args, 0) else { continue };
        if name.is_empty() || name.contains('$') {
            continue;
        }
        let system = is_unix_system_lib(&name);
        push_record(&mut result, &name, ToolKind::Autoconf, path, call.line, |r| {
            r.with_system(system)
        });
    }

    let search_libs = re(&SEARCH_LIBS, r"\bAC_SEARCH_LIBS\b");
    let (calls, warnings) = find_calls(&text, &index, search_libs);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for call in calls {
        let Some(list) = m4_arg(&call.args, 1) else { continue };
        for name in list.split_whitespace() {
            if name.is_empty() || name.contains('$') {
                continue;
            }
            let system = is_unix_system_lib(name);
            push_record(&mut result, name, ToolKind::Autoconf, path, call.line, |r| {
                r.with_system(system)
            });
        }
    }

    let pkg_macro = re(&PKG_MACRO, r"\bPKG_CHECK_MODULES\b");
    let (calls, warnings) = find_calls(&text, &index, pkg_macro);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for call in calls {
        let Some(list) = m4_arg(&call.args, 1) else { continue };
        if list.contains('$') {
            continue;
        }
        for (raw_name, constraint) in parse_module_list(&list) {
            let name = crate::model::strip_lib_prefix(&raw_name.to_lowercase());
            push_record_as(
                &mut result,
                &raw_name,
                &name,
                ToolKind::Autoconf,
                path,
                call.line,
                |r| r.with_constraint(constraint),
            );
        }
    }

    let ax_boost = re(&AX_BOOST, r"\bAX_BOOST_[A-Z_]+");
    for m in ax_boost.find_iter(&text) {
        let line = index.line_of(m.start());
        let rest = &text[m.end()..];
        let mut constraint = VersionConstraint::unspecified("");
        if m.as_str() == "AX_BOOST_BASE" {
            if let Some(arg) = rest
                .strip_prefix('(')
                .and_then(|r| super::scan_balanced(r).map(|l| &r[..l]))
                .and_then(|args| m4_arg(args, 0))
            {
                if !arg.is_empty() {
                    constraint = VersionConstraint::parse(&format!(">={arg}"));
                }
            }
        }
        push_record(&mut result, "boost", ToolKind::Autoconf, path, line, |r| {
            r.with_constraint(constraint)
        });
    }
    result
}

/// N-th comma-separated argument of an m4 macro call, with one level of
/// `[...]` quoting stripped.
fn m4_arg(args: &str, n: usize) -> Option<String> {
    let mut depth = 0usize;
    let mut parts: Vec<String> = vec![String::new()];
    for c in args.chars() {
        match c {
            '[' => {
                depth += 1;
                if depth == 1 {
                    continue;
                }
            }
            ']' => {
                depth = depth.saturating_sub(1);
                if depth == 0 {
                    continue;
                }
            }
            ',' if depth == 0 => {
                parts.push(String::new());
                continue;
            }
            _ => {}
        }
        parts.last_mut().unwrap().push(c);
    }
    parts.get(n).map(|s| s.trim().to_string())
}

// ----------------------------------------------------------------- Bazel

/// `BUILD` / `bazel.build`: workspace rules (`http_archive`,
/// `git_repository`) and external-repository references in `deps`.
pub fn extract_bazel(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static RULE: OnceLock<Regex> = OnceLock::new();
    static DEPS: OnceLock<Regex> = OnceLock::new();
    static NAME_ATTR: OnceLock<Regex> = OnceLock::new();
    static URL_ATTR: OnceLock<Regex> = OnceLock::new();

    let text = blank_line_comments(&text_lossy(bytes), &["#"]);
    let index = LineIndex::new(&text);

    let rule = re(&RULE, r"\b(?:http_archive|git_repository)\b");
    let (calls, warnings) = find_calls(&text, &index, rule);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    let name_attr = re(&NAME_ATTR, r#"\bname\s*=\s*["']([^"']+)["']"#);
    let url_attr = re(
        &URL_ATTR,
        r#"\b(?:remote|url)\s*=\s*["']([^"']+)["']|\burls\s*=\s*\[\s*["']([^"']+)["']"#,
    );
    for call in calls {
        let Some(name) = name_attr.captures(&call.args).map(|c| c[1].to_string()) else {
            continue;
        };
        if name.is_empty() {
            continue;
        }
        let url = url_attr
            .captures(&call.args)
            .and_then(|c| c.get(1).or_else(|| c.get(2)))
            .map(|m| m.as_str().to_string());
        push_record(&mut result, &name, ToolKind::Bazel, path, call.line, |r| {
            match &url {
                Some(u) => r.with_source_url(u.clone()),
                None => r,
            }
        });
    }

    // deps = ["@repo//pkg:target", "//internal:lib", ":local"]
    let deps = re(&DEPS, r"\bdeps\s*=\s*\[");
    for m in deps.find_iter(&text) {
        let rest = &text[m.end()..];
        let Some(body_len) = rest.find(']') else { continue };
        let body = &rest[..body_len];
        let base = m.end();
        let mut offset = 0usize;
        for label in super::all_strings(body) {
            let pos = body[offset..].find(&label).map(|p| offset + p).unwrap_or(offset);
            offset = pos + label.len();
            let line = index.line_of(base + pos);
            let Some(external) = label.strip_prefix('@') else {
                continue; // //internal:lib and :local targets
            };
            let repo = external.split(['/', ':']).next().unwrap_or(external);
            let repo = repo.trim_start_matches('@'); // canonical @@repo labels
            if repo.is_empty() {
                continue;
            }
            push_record_as(&mut result, &label, repo, ToolKind::Bazel, path, line, |r| r);
        }
    }
    result
}

// ----------------------------------------------------------------- Meson

/// `meson.build`: `dependency('name', version: ...)` and
/// `subproject('name')`.
pub fn extract_meson(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static DEPENDENCY: OnceLock<Regex> = OnceLock::new();
    static SUBPROJECT: OnceLock<Regex> = OnceLock::new();
    static VERSION_KW: OnceLock<Regex> = OnceLock::new();

    let text = blank_line_comments(&text_lossy(bytes), &["#"]);
    let index = LineIndex::new(&text);

    let dependency = re(&DEPENDENCY, r"\bdependency\b");
    let (calls, warnings) = find_calls(&text, &index, dependency);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    let version_kw = re(
        &VERSION_KW,
        r#"version\s*:\s*(\[[^\]]*\]|["'][^"']*["'])"#,
    );
    for call in calls {
        let names = top_level_strings(&call.args);
        let Some(name) = names.first() else { continue };
        if name.trim().is_empty() {
            result.warn(path, call.line, "dependency() with empty name");
            continue;
        }
        let constraint = match version_kw.captures(&call.args) {
            Some(caps) => {
                let spec = caps[1].trim_matches(['[', ']', '"', '\'']).to_string();
                let exprs: Vec<String> = super::all_strings(&caps[1])
                    .into_iter()
                    .filter(|s| !s.trim().is_empty())
                    .collect();
                if exprs.is_empty() {
                    VersionConstraint::parse(&spec)
                } else {
                    VersionConstraint::parse(&exprs.join(" "))
                }
            }
            None => VersionConstraint::unspecified(""),
        };
        push_record(&mut result, name, ToolKind::Meson, path, call.line, |r| {
            r.with_constraint(constraint)
        });
    }

    let subproject = re(&SUBPROJECT, r"\bsubproject\b");
    let (calls, warnings) = find_calls(&text, &index, subproject);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for call in calls {
        let names = top_level_strings(&call.args);
        let Some(name) = names.first() else { continue };
        if name.trim().is_empty() {
            result.warn(path, call.line, "subproject() with empty name");
            continue;
        }
        push_record(&mut result, name, ToolKind::Meson, path, call.line, |r| r);
    }
    result
}

// --------------------------------------------------------------- MSBuild

/// How the MSBuild extractor treats Windows-default import libraries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MsBuildOptions {
    /// Keep records for libraries in the Windows system allowlist
    /// (tagged `system = true`) instead of dropping them.
    pub include_system: bool,
}

/// `*.vcxproj` / `*.vbproj` / `*.props`: `<AdditionalDependencies>`
/// entries. Windows system libraries are excluded by default.
pub fn extract_msbuild(bytes: &[u8], path: &str) -> ExtractionResult {
    extract_msbuild_with(bytes, path, MsBuildOptions::default())
}

pub fn extract_msbuild_with(bytes: &[u8], path: &str, opts: MsBuildOptions) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static ELEMENT: OnceLock<Regex> = OnceLock::new();
    let element = re(
        &ELEMENT,
        r"(?s)<AdditionalDependencies>(.*?)</AdditionalDependencies>",
    );
    let text = text_lossy(bytes);
    let index = LineIndex::new(&text);
    for caps in element.captures_iter(&text) {
        let m = caps.get(1).unwrap();
        let base = m.start();
        let mut offset = 0usize;
        for entry in m.as_str().split(';') {
            let entry_at = base + offset;
            offset += entry.len() + 1;
            let entry = entry.trim();
            // %(AdditionalDependencies) inherits parent items
            if entry.is_empty() || entry.starts_with("%(") || entry.contains('$') {
                continue;
            }
            let line = index.line_of(entry_at);
            let stem = entry
                .strip_suffix(".lib")
                .or_else(|| entry.strip_suffix(".Lib"))
                .or_else(|| entry.strip_suffix(".LIB"))
                .unwrap_or(entry);
            // Windows import libs often carry a lib prefix (libcurl.lib)
            let name = crate::model::strip_lib_prefix(&stem.to_lowercase());
            let system = is_windows_system_lib(&name);
            if system && !opts.include_system {
                continue;
            }
            push_record_as(&mut result, entry, &name, ToolKind::MsBuild, path, line, |r| {
                r.with_system(system)
            });
        }
    }
    result
}

// ----------------------------------------------------------------- Xmake

/// `xmake.lua`: `add_requires(...)` and `add_packages(...)`, attributed
/// to the Build phase.
pub fn extract_xmake(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static PACKAGES: OnceLock<Regex> = OnceLock::new();
    let text = blank_line_comments(&text_lossy(bytes), &["--"]);
    let index = LineIndex::new(&text);
    for (spec, line) in xmake_requires(&text, &index, &mut result, path) {
        xmake_package_spec(&spec, ToolKind::Xmake, path, line, &mut result);
    }
    let packages = re(&PACKAGES, r"\badd_packages\b");
    let (calls, warnings) = find_calls(&text, &index, packages);
    for (line, msg) in warnings {
        result.warn(path, line, msg);
    }
    for call in calls {
        for name in top_level_strings(&call.args) {
            let name = name.trim();
            if name.is_empty() {
                continue;
            }
            push_record(&mut result, name, ToolKind::Xmake, path, call.line, |r| r);
        }
    }
    result
}

// ---------------------------------------------------------------- Build2

pub use super::install::extract_build2;

// ------------------------------------------------------------------ Buck

/// `BUCK`: `deps` entries referencing other cells, and
/// `prebuilt_cxx_library` targets under third-party directories.
pub fn extract_buck(bytes: &[u8], path: &str) -> ExtractionResult {
    let mut result = ExtractionResult::default();
    if binary_guard(bytes, path, &mut result) {
        return result;
    }
    static DEPS: OnceLock<Regex> = OnceLock::new();
    static PREBUILT: OnceLock<Regex> = OnceLock::new();
    static NAME_ATTR: OnceLock<Regex> = OnceLock::new();

    let text = blank_line_comments(&text_lossy(bytes), &["#"]);
    let index = LineIndex::new(&text);

    let deps = re(&DEPS, r"\bdeps\s*=\s*\[");
    for m in deps.find_iter(&text) {
        let rest = &text[m.end()..];
        let Some(body_len) = rest.find(']') else { continue };
        let body = &rest[..body_len];
        let base = m.end();
        let mut offset = 0usize;
        for label in super::all_strings(body) {
            let pos = body[offset..].find(&label).map(|p| offset + p).unwrap_or(offset);
            offset = pos + label.len();
            let line = index.line_of(base + pos);
            // `cell//path:target` references another cell; `:local` and
            // `//pkg:target` stay inside the repository
            let Some((cell, _)) = label.split_once("//") else {
                continue;
            };
            let cell = cell.trim_start_matches('@');
            if cell.is_empty() {
                continue;
            }
            push_record_as(&mut result, &label, cell, ToolKind::Buck, path, line, |r| r);
        }
    }

    if in_third_party_dir(path) {
        let prebuilt = re(&PREBUILT, r"\bprebuilt_cxx_library\b");
        let (calls, warnings) = find_calls(&text, &index, prebuilt);
        for (line, msg) in warnings {
            result.warn(path, line, msg);
        }
        let name_attr = re(&NAME_ATTR, r#"\bname\s*=\s*["']([^"']+)["']"#);
        for call in calls {
            let Some(name) = name_attr.captures(&call.args).map(|c| c[1].to_string()) else {
                continue;
            };
            if name.is_empty() {
                continue;
            }
            push_record(&mut result, &name, ToolKind::Buck, path, call.line, |r| r);
        }
    }
    result
}

fn in_third_party_dir(path: &str) -> bool {
    path.split('/').any(|seg| {
        matches!(
            seg.to_ascii_lowercase().as_str(),
            "third-party" | "third_party" | "thirdparty" | "vendor" | "external" | "externals"
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintKind, Phase, Version};

    fn ver(s: &str) -> Version {
        Version::parse(s).unwrap()
    }

    #[test]
    fn make_link_flags() {
        let r = extract_make(b"LDLIBS = -lpthread -lm\n", "Makefile");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["pthread", "m"]);
        assert!(r.records.iter().all(|r| r.system));
        assert!(r.records.iter().all(|r| r.phase == Phase::Build));
    }

    #[test]
    fn make_pkgconfig_substitution() {
        let r = extract_make(b"CFLAGS += $(shell pkg-config --libs libcurl)\n", "Makefile");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "curl");
        assert_eq!(r.records[0].raw_name, "libcurl");
    }

    #[test]
    fn make_without_link_flags() {
        let r = extract_make(b"all:\n\tgcc -o app main.c\n", "Makefile");
        assert!(r.records.is_empty());
    }

    #[test]
    fn make_dedupes_per_file() {
        let r = extract_make(b"A = -lz\nB = -lz -lz\n", "Makefile");
        assert_eq!(r.records.len(), 1);
    }

    #[test]
    fn make_ignores_library_paths() {
        let r = extract_make(b"LDFLAGS = -L/usr/lib -lfoo\n", "Makefile");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["foo"]);
    }

    #[test]
    fn autoconf_check_lib() {
        let r = extract_autoconf(b"AC_CHECK_LIB([m],[cos])\n", "configure.ac");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "m");
        assert_eq!(r.records[0].tool, ToolKind::Autoconf);
        assert!(r.records[0].system);
    }

    #[test]
    fn autoconf_pkg_check_modules() {
        let r = extract_autoconf(b"PKG_CHECK_MODULES([PNG],[libpng >= 1.6])\n", "configure.ac");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "png");
        assert!(r.records[0].constraint.contains(&ver("1.6")));
        assert!(!r.records[0].constraint.contains(&ver("1.5")));
    }

    #[test]
    fn autoconf_search_libs() {
        let r = extract_autoconf(b"AC_SEARCH_LIBS([dlopen],[dl dld])\n", "configure");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["dl", "dld"]);
    }

    #[test]
    fn autoconf_ax_boost() {
        let r = extract_autoconf(b"AX_BOOST_BASE([1.48])\nAX_BOOST_ASIO\n", "configure.ac");
        assert_eq!(r.records.len(), 2);
        assert!(r.records.iter().all(|rec| rec.library == "boost"));
        assert!(r.records[0].constraint.contains(&ver("1.48")));
    }

    #[test]
    fn autoconf_plain_script_no_macros() {
        let r = extract_autoconf(b"#!/bin/sh\necho configuring\n", "configure");
        assert!(r.records.is_empty());
    }

    #[test]
    fn bazel_http_archive() {
        let src = br#"http_archive(
    name = "com_google_absl",
    urls = ["https://github.com/abseil/abseil-cpp/archive/x.tar.gz"],
)"#;
        let r = extract_bazel(src, "BUILD");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "com_google_absl");
        assert!(r.records[0].source_url.as_deref().unwrap().contains("abseil"));
    }

    #[test]
    fn bazel_external_deps_only() {
        let src = br#"cc_library(
    name = "x",
    deps = ["@boost//:asio", "//internal:lib", ":local"],
)"#;
        let r = extract_bazel(src, "BUILD");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["boost"]);
    }

    #[test]
    fn meson_dependency_with_version() {
        let r = extract_meson(b"zdep = dependency('zlib', version : '>=1.2.8')\n", "meson.build");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "zlib");
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Range);
        assert!(r.records[0].constraint.contains(&ver("1.2.8")));
    }

    #[test]
    fn meson_empty_name_warns() {
        let r = extract_meson(b"dependency('')\n", "meson.build");
        assert!(r.records.is_empty());
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn meson_subproject_and_required_false() {
        let r = extract_meson(
            b"subproject('fmt')\ndep = dependency('x11', required : false)\n",
            "meson.build",
        );
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["x11", "fmt"]);
    }

    #[test]
    fn meson_version_list() {
        let r = extract_meson(
            b"dependency('glib-2.0', version : ['>=2.32', '<3.0'])\n",
            "meson.build",
        );
        let c = &r.records[0].constraint;
        assert!(c.contains(&ver("2.40")));
        assert!(!c.contains(&ver("3.0")));
    }

    #[test]
    fn msbuild_additional_dependencies() {
        let src = br#"<Link><AdditionalDependencies>zlib.lib;ws2_32.lib;%(AdditionalDependencies)</AdditionalDependencies></Link>"#;
        let r = extract_msbuild(src, "app.vcxproj");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["zlib"]);
        let with_system = extract_msbuild_with(
            src,
            "app.vcxproj",
            MsBuildOptions {
                include_system: true,
            },
        );
        let names: Vec<_> = with_system.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["zlib", "ws2_32"]);
        assert!(with_system.records[1].system);
    }

    #[test]
    fn msbuild_lib_prefix_strip() {
        let src = b"<AdditionalDependencies>libcurl.lib</AdditionalDependencies>";
        let r = extract_msbuild(src, "app.vcxproj");
        assert_eq!(r.records[0].library, "curl");
        assert_eq!(r.records[0].raw_name, "libcurl.lib");
    }

    #[test]
    fn msbuild_empty_element() {
        let r = extract_msbuild(b"<AdditionalDependencies></AdditionalDependencies>", "a.props");
        assert!(r.records.is_empty());
    }

    #[test]
    fn xmake_requires_and_packages() {
        let lua = br#"add_requires("zlib 1.2.x")
target("app")
    add_packages("fmt")
"#;
        let r = extract_xmake(lua, "xmake.lua");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["zlib", "fmt"]);
        assert_eq!(r.records[0].constraint.kind, ConstraintKind::Wildcard);
        assert!(r.records[0].constraint.contains(&ver("1.2.11")));
        assert!(!r.records[0].constraint.contains(&ver("1.3.0")));
        assert_eq!(r.records[0].phase, Phase::Build);
    }

    #[test]
    fn buck_cell_deps() {
        let src = br#"cxx_binary(
    name = "app",
    deps = ["fbsource//third-party/folly:folly", ":local", "//internal:x"],
)"#;
        let r = extract_buck(src, "BUCK");
        let names: Vec<_> = r.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["fbsource"]);
    }

    #[test]
    fn buck_prebuilt_in_third_party() {
        let src = br#"prebuilt_cxx_library(name = "zstd", static_lib = "lib/libzstd.a")"#;
        let r = extract_buck(src, "third-party/zstd/BUCK");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "zstd");
        // outside a third-party dir the same rule is a local target
        let outside = extract_buck(src, "src/BUCK");
        assert!(outside.records.is_empty());
    }

    #[test]
    fn buck_local_deps_only() {
        let r = extract_buck(br#"deps = [":local"]"#, "BUCK");
        assert!(r.records.is_empty());
    }

    #[test]
    fn commented_out_declarations_ignored() {
        let meson = extract_meson(
            b"# dep = dependency('zlib')\nx = dependency('x11')\n",
            "meson.build",
        );
        let names: Vec<_> = meson.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["x11"]);

        let autoconf = extract_autoconf(
            b"dnl AC_CHECK_LIB([m],[cos])\n# AC_CHECK_LIB([ssl],[SSL_new])\nAC_CHECK_LIB([z],[gzopen])\n",
            "configure.ac",
        );
        let names: Vec<_> = autoconf.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["z"]);

        let bazel = extract_bazel(
            b"# http_archive(name = \"dead\")\nhttp_archive(name = \"live\")\n",
            "BUILD",
        );
        let names: Vec<_> = bazel.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["live"]);

        let xmake = extract_xmake(
            b"-- add_requires(\"zlib\")\nadd_requires(\"fmt\")\n",
            "xmake.lua",
        );
        let names: Vec<_> = xmake.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["fmt"]);

        let buck = extract_buck(b"# deps = [\"cell//:x\"]\n", "BUCK");
        assert!(buck.records.is_empty());
    }

    #[test]
    fn comment_markers_inside_strings_are_content() {
        // a '#' inside a quoted label must not truncate the list
        let bazel = extract_bazel(
            b"deps = [\"@abseil#fork//:base\", \"@real//:lib\"]\n",
            "BUILD",
        );
        let names: Vec<_> = bazel.records.iter().map(|r| r.library.as_str()).collect();
        assert_eq!(names, ["abseil#fork", "real"]);
        // lua: "--" inside a package spec string stays
        let xmake = extract_xmake(b"add_requires(\"my--pkg 1.0\")\n", "xmake.lua");
        assert_eq!(xmake.records[0].library, "my--pkg");
    }

    #[test]
    fn dnl_matches_only_on_word_boundaries() {
        let src = b"AC_CHECK_LIB([sndnl],[open])\n";
        let r = extract_autoconf(src, "configure.ac");
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].library, "sndnl");
    }
}
