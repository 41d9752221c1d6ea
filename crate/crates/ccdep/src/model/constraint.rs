//! Unified version-constraint language shared by every extractor and by the
//! advisory matcher: exact pins, ranges, caret/tilde/wildcard shorthands.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::version::Version;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    Unspecified,
    Exact,
    Range,
    Caret,
    Tilde,
    Wildcard,
}

/// One end of a version interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub version: Version,
    pub inclusive: bool,
}

/// A version constraint as an interval plus the kind and original text.
///
/// Unknown syntax is never an error: it parses to `Unspecified` with the
/// raw text preserved, because scanners must be lossy-tolerant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VersionConstraint {
    pub kind: ConstraintKind,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    pub raw: String,
}

impl VersionConstraint {
    pub fn unspecified(raw: impl Into<String>) -> Self {
        VersionConstraint {
            kind: ConstraintKind::Unspecified,
            lower: None,
            upper: None,
            raw: raw.into(),
        }
    }

    pub fn exact(version: Version, raw: impl Into<String>) -> Self {
        VersionConstraint {
            kind: ConstraintKind::Exact,
            lower: Some(Bound {
                version: version.clone(),
                inclusive: true,
            }),
            upper: Some(Bound {
                version,
                inclusive: true,
            }),
            raw: raw.into(),
        }
    }

    pub fn range(lower: Option<Bound>, upper: Option<Bound>, raw: impl Into<String>) -> Self {
        let raw = raw.into();
        if let (Some(lo), Some(hi)) = (&lower, &upper) {
            if lo.version > hi.version {
                // inverted interval: degrade to unspecified rather than reject
                return VersionConstraint::unspecified(raw);
            }
        }
        if lower.is_none() && upper.is_none() {
            return VersionConstraint::unspecified(raw);
        }
        VersionConstraint {
            kind: ConstraintKind::Range,
            lower,
            upper,
            raw,
        }
    }

    fn prefix_interval(
        kind: ConstraintKind,
        lower: Version,
        upper: Version,
        raw: String,
    ) -> Self {
        VersionConstraint {
            kind,
            lower: Some(Bound {
                version: lower,
                inclusive: true,
            }),
            upper: Some(Bound {
                version: upper,
                inclusive: false,
            }),
            raw,
        }
    }

    /// `^x.y.z` admits `[x.y.z, (x+1).0.0)`.
    pub fn caret(version: Version, raw: impl Into<String>) -> Self {
        let raw = raw.into();
        let Some(major) = first_numeric(&version.release, 0) else {
            return VersionConstraint::unspecified(raw);
        };
        let upper = Version {
            epoch: version.epoch,
            release: vec![(major + 1).to_string(), "0".into(), "0".into()],
            revision: None,
        };
        Self::prefix_interval(ConstraintKind::Caret, version, upper, raw)
    }

    /// `~x.y.z` admits `[x.y.z, x.(y+1).0)`; with a single segment it
    /// behaves like caret.
    pub fn tilde(version: Version, raw: impl Into<String>) -> Self {
        let raw = raw.into();
        if version.release.len() < 2 {
            let mut c = Self::caret(version, raw);
            if c.kind == ConstraintKind::Caret {
                c.kind = ConstraintKind::Tilde;
            }
            return c;
        }
        let (Some(major), Some(minor)) = (
            first_numeric(&version.release, 0),
            first_numeric(&version.release, 1),
        ) else {
            return VersionConstraint::unspecified(raw);
        };
        let upper = Version {
            epoch: version.epoch,
            release: vec![major.to_string(), (minor + 1).to_string(), "0".into()],
            revision: None,
        };
        Self::prefix_interval(ConstraintKind::Tilde, version, upper, raw)
    }

    /// `x.y.*` admits `[x.y.0, x.(y+1).0)`. A bare `*` is unspecified.
    pub fn wildcard(prefix: &[String], raw: impl Into<String>) -> Self {
        let raw = raw.into();
        if prefix.is_empty() {
            return VersionConstraint::unspecified(raw);
        }
        let mut numeric = Vec::with_capacity(prefix.len());
        for seg in prefix {
            match seg.parse::<u64>() {
                Ok(n) => numeric.push(n),
                Err(_) => return VersionConstraint::unspecified(raw),
            }
        }
        let mut lower_rel: Vec<String> = numeric.iter().map(u64::to_string).collect();
        lower_rel.push("0".into());
        let mut upper_num = numeric;
        *upper_num.last_mut().unwrap() += 1;
        let mut upper_rel: Vec<String> = upper_num.iter().map(u64::to_string).collect();
        upper_rel.push("0".into());
        Self::prefix_interval(
            ConstraintKind::Wildcard,
            Version {
                epoch: 0,
                release: lower_rel,
                revision: None,
            },
            Version {
                epoch: 0,
                release: upper_rel,
                revision: None,
            },
            raw,
        )
    }

    /// Parse constraint text as found in manifests. Total: anything that
    /// does not match a known form comes back as `Unspecified` with the
    /// text preserved in `raw`.
    pub fn parse(input: &str) -> VersionConstraint {
        let raw = input.to_string();
        let mut s = input.trim();
        if s.is_empty() || s == "*" || s.eq_ignore_ascii_case("any") {
            return VersionConstraint::unspecified(raw);
        }

        // surrounding brackets: `[>=1.2 <1.3]` and `(>= 1.1)` are wrappers,
        // while `[1.0 2.0)` carries interval inclusivity
        if s.len() >= 2
            && s.starts_with(['[', '('])
            && s.ends_with([']', ')'])
        {
            let inner = s[1..s.len() - 1].trim();
            if inner.starts_with(['>', '<', '=', '^', '~']) {
                s = inner;
            } else {
                let parts: Vec<&str> = inner.split_whitespace().collect();
                if parts.len() == 2 {
                    if let (Ok(lo), Ok(hi)) = (Version::parse(parts[0]), Version::parse(parts[1]))
                    {
                        return VersionConstraint::range(
                            Some(Bound {
                                version: lo,
                                inclusive: s.starts_with('['),
                            }),
                            Some(Bound {
                                version: hi,
                                inclusive: s.ends_with(']'),
                            }),
                            raw,
                        );
                    }
                }
                return VersionConstraint::unspecified(raw);
            }
        }

        if let Some(rest) = s.strip_prefix('^') {
            return match Version::parse(rest) {
                Ok(v) => VersionConstraint::caret(v, raw),
                Err(_) => VersionConstraint::unspecified(raw),
            };
        }
        if let Some(rest) = s.strip_prefix('~') {
            // `~something` without a leading digit is not a tilde constraint
            if rest.trim_start().starts_with(|c: char| c.is_ascii_digit()) {
                return match Version::parse(rest.trim_start()) {
                    Ok(v) => VersionConstraint::tilde(v, raw),
                    Err(_) => VersionConstraint::unspecified(raw),
                };
            }
            return VersionConstraint::unspecified(raw);
        }

        // wildcard suffix: 1.2.* or 1.2.x
        if let Some(prefix) = s
            .strip_suffix(".*")
            .or_else(|| s.strip_suffix(".x"))
            .or_else(|| s.strip_suffix(".X"))
        {
            if prefix.chars().all(|c| c.is_ascii_digit() || c == '.') && !prefix.is_empty() {
                let segs: Vec<String> = prefix.split('.').map(str::to_string).collect();
                return VersionConstraint::wildcard(&segs, raw);
            }
        }

        if s.starts_with(['>', '<', '=']) {
            return Self::parse_comparators(s, raw);
        }

        match Version::parse(s) {
            Ok(v) => VersionConstraint::exact(v, raw),
            Err(_) => VersionConstraint::unspecified(raw),
        }
    }

    /// A comparator list like `>=1.2.11 <1.3` or `== 1.2.3`.
    fn parse_comparators(s: &str, raw: String) -> VersionConstraint {
        let mut lower: Option<Bound> = None;
        let mut upper: Option<Bound> = None;
        let mut exact: Option<Version> = None;
        let normalized = s.replace(',', " ");
        let mut rest = normalized.trim();
        while !rest.is_empty() {
            let (op, after) = if let Some(r) = rest.strip_prefix(">=") {
                (">=", r)
            } else if let Some(r) = rest.strip_prefix("<=") {
                ("<=", r)
            } else if let Some(r) = rest.strip_prefix("==") {
                ("==", r)
            } else if let Some(r) = rest.strip_prefix('>') {
                (">", r)
            } else if let Some(r) = rest.strip_prefix('<') {
                ("<", r)
            } else if let Some(r) = rest.strip_prefix('=') {
                ("==", r)
            } else {
                return VersionConstraint::unspecified(raw);
            };
            let after = after.trim_start();
            let end = after
                .find(char::is_whitespace)
                .unwrap_or(after.len());
            let (ver_text, tail) = after.split_at(end);
            let Ok(version) = Version::parse(ver_text) else {
                return VersionConstraint::unspecified(raw);
            };
            match op {
                ">=" | ">" => {
                    lower = Some(Bound {
                        version,
                        inclusive: op == ">=",
                    })
                }
                "<=" | "<" => {
                    upper = Some(Bound {
                        version,
                        inclusive: op == "<=",
                    })
                }
                "==" => exact = Some(version),
                _ => unreachable!(),
            }
            rest = tail.trim_start();
        }
        if let Some(v) = exact {
            if lower.is_none() && upper.is_none() {
                return VersionConstraint::exact(v, raw);
            }
            return VersionConstraint::unspecified(raw);
        }
        VersionConstraint::range(lower, upper, raw)
    }

    /// Membership test for a version against this constraint.
    pub fn contains(&self, v: &Version) -> bool {
        if self.kind == ConstraintKind::Unspecified {
            return true;
        }
        if let Some(lo) = &self.lower {
            match v.cmp(&lo.version) {
                Ordering::Less => return false,
                Ordering::Equal if !lo.inclusive => return false,
                _ => {}
            }
        }
        if let Some(hi) = &self.upper {
            match v.cmp(&hi.version) {
                Ordering::Greater => return false,
                Ordering::Equal if !hi.inclusive => return false,
                _ => {}
            }
        }
        true
    }

    /// True when some version satisfies both constraints
    /// (interval-intersection test used by the advisory matcher).
    pub fn intersects(&self, other: &VersionConstraint) -> bool {
        let lower = max_lower(&self.lower, &other.lower);
        let upper = min_upper(&self.upper, &other.upper);
        match (lower, upper) {
            (Some(lo), Some(hi)) => match lo.version.cmp(&hi.version) {
                Ordering::Less => true,
                Ordering::Equal => lo.inclusive && hi.inclusive,
                Ordering::Greater => false,
            },
            _ => true,
        }
    }

    pub fn is_specified(&self) -> bool {
        self.kind != ConstraintKind::Unspecified
    }
}

fn max_lower<'a>(a: &'a Option<Bound>, b: &'a Option<Bound>) -> Option<&'a Bound> {
    match (a, b) {
        (Some(x), Some(y)) => match x.version.cmp(&y.version) {
            Ordering::Greater => Some(x),
            Ordering::Less => Some(y),
            Ordering::Equal => Some(if x.inclusive { y } else { x }),
        },
        (Some(x), None) => Some(x),
        (None, Some(y)) => Some(y),
        (None, None) => None,
    }
}

fn min_upper<'a>(a: &'a Option<Bound>, b: &'a Option<Bound>) -> Option<&'a Bound> {
    match (a, b) {
        (Some(x), Some(y)) => match x.version.cmp(&y.version) {
            Ordering::Less => Some(x),
            Ordering::Greater => Some(y),
            Ordering::Equal => Some(if x.inclusive { y } else { x }),
        },
        (Some(x), None) => Some(x),
        (None, Some(y)) => Some(y),
        (None, None) => None,
    }
}

fn first_numeric(release: &[String], idx: usize) -> Option<u64> {
    release.get(idx)?.parse().ok()
}

impl fmt::Display for VersionConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.raw.is_empty() {
            f.write_str("*")
        } else {
            f.write_str(&self.raw)
        }
    }
}

/// Wire form: the flat key set used in reports and advisory files.
#[derive(Serialize, Deserialize)]
struct ConstraintWire {
    kind: ConstraintKind,
    lower: Option<String>,
    lower_inclusive: Option<bool>,
    upper: Option<String>,
    upper_inclusive: Option<bool>,
    raw: String,
}

impl Serialize for VersionConstraint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ConstraintWire {
            kind: self.kind,
            lower: self.lower.as_ref().map(|b| b.version.to_string()),
            lower_inclusive: self.lower.as_ref().map(|b| b.inclusive),
            upper: self.upper.as_ref().map(|b| b.version.to_string()),
            upper_inclusive: self.upper.as_ref().map(|b| b.inclusive),
            raw: self.raw.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VersionConstraint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = ConstraintWire::deserialize(deserializer)?;
        let bound = |ver: Option<String>, incl: Option<bool>| -> Result<Option<Bound>, D::Error> {
            match ver {
                None => Ok(None),
                Some(text) => {
                    let version = Version::parse(&text).map_err(D::Error::custom)?;
                    Ok(Some(Bound {
                        version,
                        inclusive: incl.unwrap_or(true),
                    }))
                }
            }
        };
        Ok(VersionConstraint {
            kind: wire.kind,
            lower: bound(wire.lower, wire.lower_inclusive)?,
            upper: bound(wire.upper, wire.upper_inclusive)?,
            raw: wire.raw,
        })
    }
}
