//! Core record types: lifecycle phases, the tool taxonomy, and the
//! per-dependency tuple every extractor produces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::constraint::VersionConstraint;
use crate::error::Error;

/// Lifecycle phase a dependency is handled in. `Clone` is reserved for the
/// copied-code detector.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Install,
    Build,
    Clone,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Install => "install",
            Phase::Build => "build",
            Phase::Clone => "clone",
        })
    }
}

macro_rules! tool_kinds {
    ($(($variant:ident, $name:literal, $phase:ident)),+ $(,)?) => {
        /// The 21 package-management tools plus the clone-signature pseudo-tool.
        #[derive(
            Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        pub enum ToolKind {
            $(#[serde(rename = $name)] $variant,)+
        }

        impl ToolKind {
            /// Every tool, clone detection included.
            pub const ALL: &'static [ToolKind] = &[$(ToolKind::$variant,)+];

            /// The phase a tool always operates in.
            pub fn phase(self) -> Phase {
                match self {
                    $(ToolKind::$variant => Phase::$phase,)+
                }
            }

            pub fn name(self) -> &'static str {
                match self {
                    $(ToolKind::$variant => $name,)+
                }
            }
        }

        impl FromStr for ToolKind {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s.to_ascii_lowercase().as_str() {
                    $($name => Ok(ToolKind::$variant),)+
                    other => Err(Error::InvalidInput(format!("unknown tool: {other}"))),
                }
            }
        }
    };
}

tool_kinds![
    (Deb, "deb", Install),
    (Conan, "conan", Install),
    (Vcpkg, "vcpkg", Install),
    (Clib, "clib", Install),
    (Cpm, "cpm", Install),
    (Buckaroo, "buckaroo", Install),
    (Dds, "dds", Install),
    (Hunter, "hunter", Install),
    (Cppget, "cppget", Install),
    (Xrepo, "xrepo", Install),
    (GitSubmodule, "gitsubmodule", Install),
    (PkgConfig, "pkgconfig", Install),
    (Make, "make", Build),
    (CMake, "cmake", Build),
    (Autoconf, "autoconf", Build),
    (Bazel, "bazel", Build),
    (Meson, "meson", Build),
    (MsBuild, "msbuild", Build),
    (Xmake, "xmake", Build),
    (Build2, "build2", Build),
    (Buck, "buck", Build),
    (CloneSig, "clonesig", Clone),
];

impl ToolKind {
    /// The 21 manifest-backed tools (everything except clone detection).
    pub fn manifest_tools() -> impl Iterator<Item = ToolKind> {
        Self::ALL.iter().copied().filter(|t| *t != ToolKind::CloneSig)
    }
}

impl fmt::Display for ToolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Where in the scanned repository a dependency declaration was found.
/// `path` is relative to the repository root, `/`-separated; `line` is
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Evidence {
    pub path: String,
    pub line: u32,
}

impl Evidence {
    pub fn new(path: impl Into<String>, line: u32) -> Self {
        Evidence {
            path: path.into(),
            line,
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.path, self.line)
    }
}

/// One extracted dependency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DependencyRecord {
    /// Normalized name: lowercase, canonical, no whitespace.
    pub library: String,
    /// The name exactly as written in the manifest.
    pub raw_name: String,
    pub constraint: VersionConstraint,
    pub tool: ToolKind,
    pub phase: Phase,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_url: Option<String>,
    /// OS-default library (libm, pthread, the Windows import set, ...).
    #[serde(default)]
    pub system: bool,
    /// Sub-components requested of the parent package (CMake COMPONENTS).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<String>,
}

impl DependencyRecord {
    /// Build a record; `library` must already be normalized. The phase is
    /// derived from the tool so the two can never disagree.
    pub fn new(
        library: impl Into<String>,
        raw_name: impl Into<String>,
        tool: ToolKind,
        evidence: Evidence,
    ) -> Self {
        let library = library.into();
        debug_assert!(!library.is_empty());
        debug_assert!(!library.chars().any(char::is_whitespace));
        DependencyRecord {
            library,
            raw_name: raw_name.into(),
            constraint: VersionConstraint::unspecified(""),
            tool,
            phase: tool.phase(),
            evidence,
            source_url: None,
            system: false,
            components: Vec::new(),
        }
    }

    pub fn with_constraint(mut self, constraint: VersionConstraint) -> Self {
        self.constraint = constraint;
        self
    }

    pub fn with_source_url(mut self, url: impl Into<String>) -> Self {
        self.source_url = Some(url.into());
        self
    }

    pub fn with_system(mut self, system: bool) -> Self {
        self.system = system;
        self
    }

    pub fn with_components(mut self, components: Vec<String>) -> Self {
        self.components = components;
        self
    }

    /// Identity for report-level deduplication.
    pub fn dedup_key(&self) -> (String, ToolKind, Evidence) {
        (self.library.clone(), self.tool, self.evidence.clone())
    }
}
