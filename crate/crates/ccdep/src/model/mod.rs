//! Shared domain vocabulary: dependencies, tools, phases, versions, reports.

mod constraint;
mod normalize;
mod record;
mod report;
mod version;

pub use constraint::{Bound, ConstraintKind, VersionConstraint};
pub(crate) use normalize::strip_lib_prefix;
pub use normalize::{normalize_name, AliasTable};
pub use record::{DependencyRecord, Evidence, Phase, ToolKind};
pub use report::{ScanReport, ScanWarning};
pub use version::{compare_versions, Version};

#[cfg(test)]
mod shared_safely {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn model_types_are_shareable_across_scan_workers() {
        assert_send_sync::<Phase>();
        assert_send_sync::<ToolKind>();
        assert_send_sync::<Version>();
        assert_send_sync::<VersionConstraint>();
        assert_send_sync::<DependencyRecord>();
        assert_send_sync::<ScanReport>();
        assert_send_sync::<AliasTable>();
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;
    use std::cmp::Ordering;

    fn arb_version() -> impl Strategy<Value = Version> {
        (
            0u64..3,
            // first segment digit-leading so Display round-trips via parse
            "[0-9]{1,2}[a-z]{0,2}".prop_map(String::from),
            proptest::collection::vec(
                prop_oneof![
                    (0u64..50).prop_map(|n| n.to_string()),
                    "[0-9]{1,2}[a-z]{0,2}".prop_map(String::from),
                    "rc[0-9]".prop_map(String::from),
                ],
                0..3,
            ),
            proptest::option::of("[0-9a-z]{1,3}".prop_map(String::from)),
        )
            .prop_map(|(epoch, first, rest, revision)| {
                let mut release = vec![first];
                release.extend(rest);
                Version {
                    epoch,
                    release,
                    revision,
                }
            })
    }

    proptest! {
        #[test]
        fn ordering_is_total_and_consistent(mut versions in proptest::collection::vec(arb_version(), 2..12)) {
            versions.sort();
            for w in versions.windows(2) {
                prop_assert_ne!(compare_versions(&w[0], &w[1]), Ordering::Greater);
            }
            // antisymmetry + transitivity spot check over all pairs
            for a in &versions {
                for b in &versions {
                    let ab = compare_versions(a, b);
                    let ba = compare_versions(b, a);
                    prop_assert_eq!(ab, ba.reverse());
                    for c in &versions {
                        if ab != Ordering::Greater && compare_versions(b, c) != Ordering::Greater {
                            prop_assert_ne!(compare_versions(a, c), Ordering::Greater);
                        }
                    }
                }
            }
        }

        #[test]
        fn exact_containment_is_equality(a in arb_version(), b in arb_version()) {
            let c = VersionConstraint::exact(a.clone(), a.to_string());
            prop_assert_eq!(c.contains(&b), compare_versions(&a, &b) == Ordering::Equal);
        }

        #[test]
        fn constraint_parse_is_total(text in "\\PC{0,40}") {
            let c = VersionConstraint::parse(&text);
            prop_assert_eq!(&c.raw, &text);
            if c.kind == ConstraintKind::Unspecified {
                prop_assert!(c.lower.is_none() && c.upper.is_none());
            }
            if let (Some(lo), Some(hi)) = (&c.lower, &c.upper) {
                prop_assert_ne!(
                    compare_versions(&lo.version, &hi.version),
                    std::cmp::Ordering::Greater
                );
            }
        }

        #[test]
        fn normalize_name_never_panics(text in "\\PC{0,30}", tool_idx in 0usize..22) {
            let tool = ToolKind::ALL[tool_idx];
            if let Ok(name) = normalize_name(&text, tool) {
                prop_assert!(!name.is_empty());
                prop_assert!(!name.chars().any(char::is_whitespace));
                prop_assert_eq!(&name.to_lowercase(), &name);
                // idempotent
                prop_assert_eq!(normalize_name(&name, tool).unwrap(), name.clone());
            }
        }

        #[test]
        fn parse_display_preserves_ordering(a in arb_version()) {
            // skip shapes Display cannot round-trip (separator chars inside parts)
            prop_assume!(!a.release.iter().any(|s| s.contains(['-', ':', '.'])));
            prop_assume!(a.revision.as_deref().is_none_or(|r| !r.contains(['-', ':'])));
            let shown = a.to_string();
            let back = Version::parse(&shown).unwrap();
            prop_assert_eq!(compare_versions(&a, &back), Ordering::Equal, "{}", shown);
        }
    }
}
