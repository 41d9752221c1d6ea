//! Dependency scanner for C/C++ repositories.
//!
//! Extracts third-party-library dependencies from the manifests and build
//! scripts of 21 package-management tools plus copied code, classifies
//! each dependency by lifecycle phase (install vs build), and computes
//! ecosystem statistics and vulnerability exposure over the extracted
//! records.

pub mod advisories;
pub mod analytics;
pub mod clonesig;
pub mod discovery;
mod error;
pub mod evaluation;
pub mod extract;
pub mod model;

pub use discovery::{list_supported_tools, scan_repository, ScanConfig, SupportedTool};
pub use error::{Error, Result};
pub use model::{
    compare_versions, normalize_name, AliasTable, ConstraintKind, DependencyRecord, Evidence,
    Phase, ScanReport, ToolKind, Version, VersionConstraint,
};
