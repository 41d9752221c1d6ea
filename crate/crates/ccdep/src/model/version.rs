//! Version values with Debian-style (epoch, upstream, revision) structure
//! and a total ordering over them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A parsed version: optional epoch, dot-separated release segments, and an
/// optional distro revision (the part after the last `-`).
///
/// Ordering compares the epoch first, then release segments pairwise
/// (numeric runs numerically, otherwise character classes with digits
/// sorting before letters and `~` before everything), then the revision,
/// where a present revision sorts after an absent one.
#[derive(Debug, Clone)]
pub struct Version {
    pub epoch: u64,
    pub release: Vec<String>,
    pub revision: Option<String>,
}

impl Version {
    /// Parse a version string such as `1.6.36`, `2:1.6.36-4` or `v1.2.0`.
    /// A single leading `v`/`V` before a digit is tolerated and dropped.
    pub fn parse(input: &str) -> crate::error::Result<Version> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::InvalidInput("empty version string".into()));
        }
        if s.chars().any(char::is_whitespace) {
            return Err(Error::InvalidInput(format!(
                "version contains whitespace: {input:?}"
            )));
        }
        let s = match s.strip_prefix(['v', 'V']) {
            Some(rest) if rest.starts_with(|c: char| c.is_ascii_digit()) => rest,
            _ => s,
        };

        let (epoch, rest) = match s.split_once(':') {
            Some((e, rest)) if !e.is_empty() && e.bytes().all(|b| b.is_ascii_digit()) => {
                match e.parse::<u64>() {
                    Ok(n) => (n, rest),
                    Err(_) => (0, s),
                }
            }
            _ => (0, s),
        };

        let (upstream, revision) = match rest.rsplit_once('-') {
            Some((up, rev)) if !up.is_empty() => (up, Some(rev.to_string())),
            _ => (rest, None),
        };
        // versions start with a digit; anything else (branch names, refs)
        // is not a version
        if !upstream.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(Error::InvalidInput(format!(
                "release must start with a digit: {input:?}"
            )));
        }
        Ok(Version {
            epoch,
            release: upstream.split('.').map(str::to_string).collect(),
            revision,
        })
    }

    /// True when `s` plausibly denotes a version (used to tell version
    /// tokens apart from names in build scripts and git tags).
    pub fn looks_like_version(s: &str) -> bool {
        let s = s.strip_prefix(['v', 'V']).unwrap_or(s);
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if c.is_ascii_digit() => {}
            _ => return false,
        }
        s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+' | '~' | ':' | '_'))
    }

    fn release_str(&self) -> String {
        self.release.join(".")
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.epoch > 0 {
            write!(f, "{}:", self.epoch)?;
        }
        f.write_str(&self.release_str())?;
        if let Some(rev) = &self.revision {
            write!(f, "-{rev}")?;
        }
        Ok(())
    }
}

impl FromStr for Version {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Version::parse(s)
    }
}

impl Serialize for Version {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Version {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Version::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// dpkg-style character weight: digits and end-of-string are neutral,
/// letters sort by code point, `~` before everything else, and remaining
/// symbols after all letters.
fn char_order(c: Option<u8>) -> i32 {
    match c {
        None => 0,
        Some(b'~') => -1,
        Some(b) if b.is_ascii_digit() => 0,
        Some(b) if b.is_ascii_alphabetic() => b as i32,
        Some(b) => b as i32 + 256,
    }
}

/// Compare two bare version fragments: alternating non-digit runs
/// (character order above) and digit runs (numeric, leading zeros ignored).
fn fragment_cmp(a: &str, b: &str) -> Ordering {
    let a = a.as_bytes();
    let b = b.as_bytes();
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        // non-digit run
        while (i < a.len() && !a[i].is_ascii_digit()) || (j < b.len() && !b[j].is_ascii_digit()) {
            let ac = char_order(a.get(i).copied().filter(|c| !c.is_ascii_digit()));
            let bc = char_order(b.get(j).copied().filter(|c| !c.is_ascii_digit()));
            match ac.cmp(&bc) {
                Ordering::Equal => {}
                other => return other,
            }
            if i < a.len() && !a[i].is_ascii_digit() {
                i += 1;
            }
            if j < b.len() && !b[j].is_ascii_digit() {
                j += 1;
            }
        }
        // digit run, compared numerically
        while i < a.len() && a[i] == b'0' {
            i += 1;
        }
        while j < b.len() && b[j] == b'0' {
            j += 1;
        }
        let mut first_diff = Ordering::Equal;
        while i < a.len() && j < b.len() && a[i].is_ascii_digit() && b[j].is_ascii_digit() {
            if first_diff == Ordering::Equal {
                first_diff = a[i].cmp(&b[j]);
            }
            i += 1;
            j += 1;
        }
        if i < a.len() && a[i].is_ascii_digit() {
            return Ordering::Greater;
        }
        if j < b.len() && b[j].is_ascii_digit() {
            return Ordering::Less;
        }
        if first_diff != Ordering::Equal {
            return first_diff;
        }
    }
    Ordering::Equal
}

fn release_cmp(a: &[String], b: &[String]) -> Ordering {
    let n = a.len().max(b.len());
    for idx in 0..n {
        match (a.get(idx), b.get(idx)) {
            (Some(x), Some(y)) => match fragment_cmp(x, y) {
                Ordering::Equal => {}
                other => return other,
            },
            // fewer segments sorts first: 1.6 < 1.6.0
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (None, None) => unreachable!(),
        }
    }
    Ordering::Equal
}

impl Ord for Version {
    fn cmp(&self, other: &Self) -> Ordering {
        self.epoch
            .cmp(&other.epoch)
            .then_with(|| release_cmp(&self.release, &other.release))
            .then_with(|| match (&self.revision, &other.revision) {
                (None, None) => Ordering::Equal,
                // a present revision sorts after an absent one: 1.6.36-4 > 1.6.36
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => fragment_cmp(x, y),
            })
    }
}

impl PartialOrd for Version {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Equality is ordering equality, so e.g. 1.6 == 1.06.
impl PartialEq for Version {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Version {}

/// Three-way comparison of two versions under the total order above.
pub fn compare_versions(a: &Version, b: &Version) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Version {
        Version::parse(s).unwrap()
    }

    #[test]
    fn numeric_segments() {
        assert_eq!(compare_versions(&v("1.6.36"), &v("1.6.37")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.6.37"), &v("1.6.37")), Ordering::Equal);
        assert_eq!(compare_versions(&v("1.99.0"), &v("2.0.0")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.10"), &v("1.9")), Ordering::Greater);
    }

    #[test]
    fn revision_present_sorts_after_absent() {
        assert_eq!(
            compare_versions(&v("1.6.36-4"), &v("1.6.36")),
            Ordering::Greater
        );
        assert_eq!(compare_versions(&v("1.6.36-4"), &v("1.6.36-5")), Ordering::Less);
    }

    #[test]
    fn epoch_dominates() {
        assert_eq!(compare_versions(&v("2:1.0"), &v("9.9")), Ordering::Greater);
        assert_eq!(v("2:1.0").epoch, 2);
        assert_eq!(v("1.0").epoch, 0);
    }

    #[test]
    fn mixed_segments_digits_before_letters() {
        assert_eq!(compare_versions(&v("1.1"), &v("1.rc1")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.2a"), &v("1.2b")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.0~rc1"), &v("1.0")), Ordering::Less);
    }

    #[test]
    fn fewer_segments_sort_first() {
        assert_eq!(compare_versions(&v("1.6"), &v("1.6.0")), Ordering::Less);
        assert_eq!(compare_versions(&v("1.6.0"), &v("1.6")), Ordering::Greater);
    }

    #[test]
    fn display_roundtrip_preserves_ordering() {
        for s in ["1.6.36", "2:1.6.36-4", "1.0~rc1", "v1.2.0", "1.2.3-0ubuntu1"] {
            let a = v(s);
            let b = v(&a.to_string());
            assert_eq!(compare_versions(&a, &b), Ordering::Equal, "{s}");
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Version::parse("").is_err());
        assert!(Version::parse("   ").is_err());
        assert!(Version::parse("1 .2").is_err());
    }

    #[test]
    fn version_likeness() {
        assert!(Version::looks_like_version("1.2.3"));
        assert!(Version::looks_like_version("v9.1.0"));
        assert!(!Version::looks_like_version("main"));
        assert!(!Version::looks_like_version("REQUIRED"));
    }
}
