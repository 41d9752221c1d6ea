//! Ecosystem metrics over collections of scan reports: phase and tool
//! usage, toolchain combinations, popularity distribution (Gini, top-k
//! shares), version-specification rates, and database coverage.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AliasTable, Phase, ScanReport, ToolKind, Version};

/// Dependency share and repository share for one tool.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ToolUsage {
    pub dep_fraction: f64,
    pub repo_fraction: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseStats {
    pub phase_dep_share: BTreeMap<Phase, f64>,
    pub phase_repo_share: BTreeMap<Phase, f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PopularityStats {
    /// Distinct dependent repositories per normalized library name.
    pub popularity: BTreeMap<String, u64>,
    pub gini: f64,
    /// k percent -> fraction of all dependencies contributed by the top
    /// k% most popular libraries.
    pub topk_shares: BTreeMap<u32, f64>,
    pub mean: f64,
    pub median: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VersionSpecRates {
    pub overall: f64,
    pub per_phase: BTreeMap<Phase, f64>,
    pub per_tool: BTreeMap<ToolKind, f64>,
}

/// Batched database coverage, following the popularity-descending order.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    /// Per consecutive batch (of `batch_size` libraries): fraction of the
    /// batch present in the database. The last batch may be partial.
    pub batches: Vec<f64>,
    pub batch_size: usize,
    /// Fraction of all dependencies that land on covered libraries.
    pub covered_dep_share: f64,
}

/// Everything the stats command emits.
#[derive(Debug, Clone, Serialize)]
pub struct EcosystemStats {
    pub dep_count: u64,
    pub repo_count: u64,
    pub phase_dep_share: BTreeMap<Phase, f64>,
    pub phase_repo_share: BTreeMap<Phase, f64>,
    pub tool_usage: BTreeMap<ToolKind, ToolUsage>,
    /// Repos whose only Build-phase tool is Make.
    pub make_only: ToolUsage,
    /// (install tool or none, build tool) -> repositories using both.
    #[serde(serialize_with = "serialize_combos")]
    pub toolchain_combos: BTreeMap<(Option<ToolKind>, ToolKind), u64>,
    pub popularity: BTreeMap<String, u64>,
    pub gini: f64,
    pub topk_shares: BTreeMap<u32, f64>,
    pub mean_popularity: f64,
    pub median_popularity: f64,
    /// Share of distinct (repo, library) dependencies seen in both the
    /// Install and Build phases, linked by normalized name.
    pub cross_phase_share: f64,
    pub version_spec_rate: f64,
    pub phase_version_spec_rate: BTreeMap<Phase, f64>,
    pub tool_version_spec_rate: BTreeMap<ToolKind, f64>,
}

fn serialize_combos<S: serde::Serializer>(
    combos: &BTreeMap<(Option<ToolKind>, ToolKind), u64>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mapped: BTreeMap<String, u64> = combos
        .iter()
        .map(|((install, build), count)| {
            let install = install.map(|t| t.name()).unwrap_or("none");
            (format!("{install}+{build}"), *count)
        })
        .collect();
    mapped.serialize(ser)
}

fn require_reports(reports: &[ScanReport]) -> Result<()> {
    if reports.is_empty() {
        Err(Error::EmptyInput("no scan reports"))
    } else {
        Ok(())
    }
}

/// Dependency and repository shares per lifecycle phase.
pub fn phase_stats(reports: &[ScanReport]) -> Result<PhaseStats> {
    require_reports(reports)?;
    let total_records: u64 = reports.iter().map(|r| r.records.len() as u64).sum();
    let mut dep_counts: BTreeMap<Phase, u64> = BTreeMap::new();
    let mut repo_counts: BTreeMap<Phase, u64> = BTreeMap::new();
    for report in reports {
        let mut phases_here = BTreeSet::new();
        for record in &report.records {
            *dep_counts.entry(record.phase).or_default() += 1;
            phases_here.insert(record.phase);
        }
        for phase in phases_here {
            *repo_counts.entry(phase).or_default() += 1;
        }
    }
    let frac = |n: u64, d: u64| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    let all_phases = [Phase::Install, Phase::Build, Phase::Clone];
    Ok(PhaseStats {
        phase_dep_share: all_phases
            .iter()
            .map(|p| (*p, frac(dep_counts.get(p).copied().unwrap_or(0), total_records)))
            .collect(),
        phase_repo_share: all_phases
            .iter()
            .map(|p| {
                (
                    *p,
                    frac(repo_counts.get(p).copied().unwrap_or(0), reports.len() as u64),
                )
            })
            .collect(),
    })
}

/// Per-tool dependency/repository fractions plus the Make-only measure.
pub fn tool_usage(reports: &[ScanReport]) -> Result<(BTreeMap<ToolKind, ToolUsage>, ToolUsage)> {
    require_reports(reports)?;
    let total_records: u64 = reports.iter().map(|r| r.records.len() as u64).sum();
    let total_repos = reports.len() as u64;
    let mut dep_counts: BTreeMap<ToolKind, u64> = BTreeMap::new();
    let mut repo_counts: BTreeMap<ToolKind, u64> = BTreeMap::new();
    let mut make_only_repos = 0u64;
    let mut make_only_deps = 0u64;
    for report in reports {
        let mut tools_here = BTreeSet::new();
        for record in &report.records {
            *dep_counts.entry(record.tool).or_default() += 1;
            tools_here.insert(record.tool);
        }
        for tool in &tools_here {
            *repo_counts.entry(*tool).or_default() += 1;
        }
        let build_tools: BTreeSet<ToolKind> = tools_here
            .iter()
            .copied()
            .filter(|t| t.phase() == Phase::Build)
            .collect();
        if build_tools.len() == 1 && build_tools.contains(&ToolKind::Make) {
            make_only_repos += 1;
            make_only_deps += report
                .records
                .iter()
                .filter(|r| r.tool == ToolKind::Make)
                .count() as u64;
        }
    }
    let frac = |n: u64, d: u64| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    let usage = ToolKind::ALL
        .iter()
        .map(|tool| {
            (
                *tool,
                ToolUsage {
                    dep_fraction: frac(dep_counts.get(tool).copied().unwrap_or(0), total_records),
                    repo_fraction: frac(repo_counts.get(tool).copied().unwrap_or(0), total_repos),
                },
            )
        })
        .collect();
    Ok((
        usage,
        ToolUsage {
            dep_fraction: frac(make_only_deps, total_records),
            repo_fraction: frac(make_only_repos, total_repos),
        },
    ))
}

/// Cartesian (install tool, build tool) pairs per repository, aggregated
/// over repositories. Repositories with build tools but no install tool
/// contribute `(None, build)` pseudo-combinations.
pub fn toolchain_combinations(
    reports: &[ScanReport],
) -> Result<BTreeMap<(Option<ToolKind>, ToolKind), u64>> {
    require_reports(reports)?;
    let mut combos: BTreeMap<(Option<ToolKind>, ToolKind), u64> = BTreeMap::new();
    for report in reports {
        let tools: BTreeSet<ToolKind> = report.records.iter().map(|r| r.tool).collect();
        let install: Vec<ToolKind> = tools
            .iter()
            .copied()
            .filter(|t| t.phase() == Phase::Install)
            .collect();
        let build: Vec<ToolKind> = tools
            .iter()
            .copied()
            .filter(|t| t.phase() == Phase::Build)
            .collect();
        for b in &build {
            if install.is_empty() {
                *combos.entry((None, *b)).or_default() += 1;
            } else {
                for i in &install {
                    *combos.entry((Some(*i), *b)).or_default() += 1;
                }
            }
        }
    }
    Ok(combos)
}

/// Gini coefficient of a positive count vector by the mean-absolute-
/// difference definition, computed through the sorted identity.
pub fn gini_coefficient(counts: &[f64]) -> Result<f64> {
    if counts.is_empty() {
        return Err(Error::EmptyInput("no popularity counts"));
    }
    if counts.iter().any(|c| *c < 0.0 || !c.is_finite()) {
        return Err(Error::InvalidInput("counts must be finite and non-negative".into()));
    }
    let n = counts.len() as f64;
    let sum: f64 = counts.iter().sum();
    if sum == 0.0 {
        return Ok(0.0);
    }
    let mut sorted = counts.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, x)| (i as f64 + 1.0) * x)
        .sum();
    Ok((2.0 * weighted) / (n * sum) - (n + 1.0) / n)
}

/// Number of libraries making up the "top k percent" of `n` libraries.
pub fn topk_count(n: usize, k_percent: u32) -> usize {
    if n == 0 || k_percent == 0 {
        return 0;
    }
    (n * k_percent as usize).div_ceil(100).min(n)
}

/// Fraction of all dependencies contributed by the top k% most popular
/// libraries, for each requested k.
pub fn topk_shares(counts: &[u64], ks: &[u32]) -> Result<BTreeMap<u32, f64>> {
    if counts.is_empty() {
        return Err(Error::EmptyInput("no popularity counts"));
    }
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let total: u64 = sorted.iter().sum();
    let mut out = BTreeMap::new();
    for &k in ks {
        let take = topk_count(sorted.len(), k);
        let top: u64 = sorted[..take].iter().sum();
        let share = if total == 0 {
            0.0
        } else {
            top as f64 / total as f64
        };
        out.insert(k, share);
    }
    Ok(out)
}

/// Popularity per normalized library (distinct dependent repositories),
/// with Gini, top-k shares, mean, and median.
pub fn popularity_and_gini(
    reports: &[ScanReport],
    aliases: Option<&AliasTable>,
) -> Result<PopularityStats> {
    require_reports(reports)?;
    let mut popularity: BTreeMap<String, u64> = BTreeMap::new();
    for report in reports {
        let mut libs_here = BTreeSet::new();
        for record in &report.records {
            let name = match aliases {
                Some(t) => t.resolve(&record.library).to_string(),
                None => record.library.clone(),
            };
            libs_here.insert(name);
        }
        for lib in libs_here {
            *popularity.entry(lib).or_default() += 1;
        }
    }
    if popularity.is_empty() {
        return Err(Error::EmptyInput("no dependencies in any report"));
    }
    let counts: Vec<u64> = popularity.values().copied().collect();
    let as_f64: Vec<f64> = counts.iter().map(|c| *c as f64).collect();
    let gini = gini_coefficient(&as_f64)?;
    let shares = topk_shares(&counts, &[1, 5, 10, 20, 100])?;
    let mean = as_f64.iter().sum::<f64>() / as_f64.len() as f64;
    let mut sorted = as_f64.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let median = if sorted.len() % 2 == 1 {
        sorted[sorted.len() / 2]
    } else {
        (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2]) / 2.0
    };
    Ok(PopularityStats {
        popularity,
        gini,
        topk_shares: shares,
        mean,
        median,
    })
}

/// A record "specifies a version" iff its constraint kind is not
/// `Unspecified`.
pub fn version_spec_rates(reports: &[ScanReport]) -> Result<VersionSpecRates> {
    require_reports(reports)?;
    let mut total = 0u64;
    let mut specified = 0u64;
    let mut phase_totals: BTreeMap<Phase, (u64, u64)> = BTreeMap::new();
    let mut tool_totals: BTreeMap<ToolKind, (u64, u64)> = BTreeMap::new();
    for report in reports {
        for record in &report.records {
            let is_spec = record.constraint.is_specified() as u64;
            total += 1;
            specified += is_spec;
            let p = phase_totals.entry(record.phase).or_default();
            p.0 += 1;
            p.1 += is_spec;
            let t = tool_totals.entry(record.tool).or_default();
            t.0 += 1;
            t.1 += is_spec;
        }
    }
    let frac = |(d, n): (u64, u64)| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    Ok(VersionSpecRates {
        overall: frac((total, specified)),
        per_phase: phase_totals.iter().map(|(p, v)| (*p, frac(*v))).collect(),
        per_tool: tool_totals.iter().map(|(t, v)| (*t, frac(*v))).collect(),
    })
}

/// Among records with constraints on libraries present in `latest`: the
/// fraction whose constraint admits the latest version.
pub fn latest_adoption(
    reports: &[ScanReport],
    latest: &BTreeMap<String, Version>,
) -> Result<f64> {
    require_reports(reports)?;
    let mut eligible = 0u64;
    let mut adopting = 0u64;
    for report in reports {
        for record in &report.records {
            if !record.constraint.is_specified() {
                continue;
            }
            let Some(latest_version) = latest.get(&record.library) else {
                continue;
            };
            eligible += 1;
            if record.constraint.contains(latest_version) {
                adopting += 1;
            }
        }
    }
    if eligible == 0 {
        return Err(Error::EmptyInput(
            "no constrained records on libraries with known latest versions",
        ));
    }
    Ok(adopting as f64 / eligible as f64)
}

/// Batched coverage of a library database over the reports' popularity
/// ranking (batches of 100 libraries, most popular first).
pub fn db_coverage(reports: &[ScanReport], database: &BTreeSet<String>) -> Result<CoverageReport> {
    db_coverage_batched(reports, database, 100)
}

pub fn db_coverage_batched(
    reports: &[ScanReport],
    database: &BTreeSet<String>,
    batch_size: usize,
) -> Result<CoverageReport> {
    if batch_size == 0 {
        return Err(Error::InvalidInput("batch size must be positive".into()));
    }
    let stats = popularity_and_gini(reports, None)?;
    // popularity descending, name ascending for determinism
    let mut ranked: Vec<(&String, &u64)> = stats.popularity.iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    let total_deps: u64 = ranked.iter().map(|(_, c)| **c).sum();
    let mut batches = Vec::new();
    let mut covered_deps = 0u64;
    for chunk in ranked.chunks(batch_size) {
        let mut covered = 0usize;
        for (name, count) in chunk {
            if database.contains(*name) {
                covered += 1;
                covered_deps += **count;
            }
        }
        batches.push(covered as f64 / chunk.len() as f64);
    }
    Ok(CoverageReport {
        batches,
        batch_size,
        covered_dep_share: if total_deps == 0 {
            0.0
        } else {
            covered_deps as f64 / total_deps as f64
        },
    })
}

/// Share of distinct (repo, library) pairs handled in both lifecycle
/// phases, linked by normalized name.
pub fn cross_phase_share(reports: &[ScanReport]) -> Result<f64> {
    require_reports(reports)?;
    let mut pairs = 0u64;
    let mut both = 0u64;
    for report in reports {
        let mut by_lib: BTreeMap<&str, BTreeSet<Phase>> = BTreeMap::new();
        for record in &report.records {
            by_lib.entry(&record.library).or_default().insert(record.phase);
        }
        for phases in by_lib.values() {
            pairs += 1;
            if phases.contains(&Phase::Install) && phases.contains(&Phase::Build) {
                both += 1;
            }
        }
    }
    Ok(if pairs == 0 { 0.0 } else { both as f64 / pairs as f64 })
}

/// Compute the full stats document.
pub fn ecosystem_stats(
    reports: &[ScanReport],
    aliases: Option<&AliasTable>,
) -> Result<EcosystemStats> {
    require_reports(reports)?;
    let phases = phase_stats(reports)?;
    let (usage, make_only) = tool_usage(reports)?;
    let combos = toolchain_combinations(reports)?;
    let pop = popularity_and_gini(reports, aliases)?;
    let rates = version_spec_rates(reports)?;
    let cross = cross_phase_share(reports)?;
    Ok(EcosystemStats {
        dep_count: reports.iter().map(|r| r.records.len() as u64).sum(),
        repo_count: reports.len() as u64,
        phase_dep_share: phases.phase_dep_share,
        phase_repo_share: phases.phase_repo_share,
        tool_usage: usage,
        make_only,
        toolchain_combos: combos,
        popularity: pop.popularity,
        gini: pop.gini,
        topk_shares: pop.topk_shares,
        mean_popularity: pop.mean,
        median_popularity: pop.median,
        cross_phase_share: cross,
        version_spec_rate: rates.overall,
        phase_version_spec_rate: rates.per_phase,
        tool_version_spec_rate: rates.per_tool,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DependencyRecord, Evidence, VersionConstraint};

    fn record(lib: &str, tool: ToolKind, line: u32) -> DependencyRecord {
        DependencyRecord::new(lib, lib, tool, Evidence::new("f", line))
    }

    fn report(id: &str, records: Vec<DependencyRecord>) -> ScanReport {
        let mut r = ScanReport::new(id);
        r.add_records(records);
        r
    }

    #[test]
    fn phase_shares_direct_count() {
        let reports = vec![
            report(
                "a",
                vec![
                    record("x", ToolKind::CMake, 1),
                    record("y", ToolKind::CMake, 2),
                    record("z", ToolKind::Make, 3),
                ],
            ),
            report("b", vec![record("w", ToolKind::Conan, 1)]),
        ];
        let stats = phase_stats(&reports).unwrap();
        assert_eq!(stats.phase_dep_share[&Phase::Build], 0.75);
        assert_eq!(stats.phase_repo_share[&Phase::Build], 0.5);
        assert_eq!(stats.phase_dep_share[&Phase::Install], 0.25);
        assert_eq!(stats.phase_repo_share[&Phase::Install], 0.5);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(phase_stats(&[]).is_err());
        assert!(tool_usage(&[]).is_err());
        assert!(popularity_and_gini(&[], None).is_err());
    }

    #[test]
    fn tool_usage_single_conan_repo() {
        let reports = vec![report("a", vec![record("x", ToolKind::Conan, 1)])];
        let (usage, make_only) = tool_usage(&reports).unwrap();
        assert_eq!(usage[&ToolKind::Conan].dep_fraction, 1.0);
        assert_eq!(usage[&ToolKind::Conan].repo_fraction, 1.0);
        assert_eq!(usage[&ToolKind::CMake].dep_fraction, 0.0);
        assert_eq!(make_only.repo_fraction, 0.0);
    }

    #[test]
    fn make_only_excludes_mixed_build_repos() {
        let mixed = report(
            "mixed",
            vec![record("a", ToolKind::Make, 1), record("b", ToolKind::CMake, 2)],
        );
        let only = report("only", vec![record("c", ToolKind::Make, 1)]);
        let (usage, make_only) = tool_usage(&[mixed, only]).unwrap();
        assert_eq!(make_only.repo_fraction, 0.5);
        assert_eq!(make_only.dep_fraction, 1.0 / 3.0);
        assert!(usage[&ToolKind::Make].repo_fraction > 0.9);
    }

    #[test]
    fn combos_cartesian_and_pseudo() {
        let reports = vec![
            report(
                "a",
                vec![
                    record("p", ToolKind::Conan, 1),
                    record("q", ToolKind::CMake, 2),
                    record("r", ToolKind::Make, 3),
                ],
            ),
            report("b", vec![record("s", ToolKind::Meson, 1)]),
        ];
        let combos = toolchain_combinations(&reports).unwrap();
        assert_eq!(combos[&(Some(ToolKind::Conan), ToolKind::CMake)], 1);
        assert_eq!(combos[&(Some(ToolKind::Conan), ToolKind::Make)], 1);
        assert_eq!(combos[&(None, ToolKind::Meson)], 1);
        assert_eq!(combos.len(), 3);
    }

    #[test]
    fn gini_constant_vector_is_zero() {
        assert_eq!(gini_coefficient(&[5.0, 5.0, 5.0, 5.0]).unwrap(), 0.0);
    }

    #[test]
    fn gini_hand_computed() {
        // pairwise |xi-xj| sum = 20; 20 / (2 * 16 * 2.5) = 0.25
        let g = gini_coefficient(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!((g - 0.25).abs() < 1e-12);
    }

    #[test]
    fn gini_scale_invariance() {
        let base = gini_coefficient(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let scaled = gini_coefficient(&[10.0, 20.0, 30.0, 40.0]).unwrap();
        assert!((base - scaled).abs() < 1e-12);
    }

    #[test]
    fn topk_quarter_share() {
        let shares = topk_shares(&[97, 1, 1, 1], &[25]).unwrap();
        assert_eq!(shares[&25], 0.97);
    }

    #[test]
    fn topk_full_range_is_one() {
        let shares = topk_shares(&[3, 9, 1], &[100]).unwrap();
        assert_eq!(shares[&100], 1.0);
    }

    #[test]
    fn topk_can_express_reference_pareto_shares() {
        // 100 libraries, 1000 dependencies, built so the top 1/5/10/20%
        // contribute exactly 45/68/77/84%
        let mut counts = vec![450u64];
        counts.extend([58, 58, 57, 57]); // libs 2-5 sum to 230
        counts.extend(vec![18; 5]); // libs 6-10 sum to 90
        counts.extend(vec![7; 10]); // libs 11-20 sum to 70
        counts.extend(vec![2; 80]); // the tail sums to 160
        assert_eq!(counts.iter().sum::<u64>(), 1000);
        assert_eq!(counts.len(), 100);
        let shares = topk_shares(&counts, &[1, 5, 10, 20]).unwrap();
        assert_eq!(shares[&1], 0.45);
        assert_eq!(shares[&5], 0.68);
        assert_eq!(shares[&10], 0.77);
        assert_eq!(shares[&20], 0.84);
    }

    #[test]
    fn popularity_counts_distinct_repos() {
        let reports = vec![
            report(
                "a",
                vec![record("zlib", ToolKind::CMake, 1), record("zlib", ToolKind::Conan, 2)],
            ),
            report("b", vec![record("zlib", ToolKind::CMake, 1)]),
        ];
        let stats = popularity_and_gini(&reports, None).unwrap();
        // duplicate evidence within one repo counts once
        assert_eq!(stats.popularity["zlib"], 2);
    }

    #[test]
    fn version_rates() {
        let mut with_version = record("a", ToolKind::Conan, 1);
        with_version.constraint = VersionConstraint::parse("1.2.3");
        let reports = vec![report(
            "a",
            vec![
                with_version,
                record("b", ToolKind::Conan, 2),
                record("c", ToolKind::CMake, 3),
                record("d", ToolKind::CMake, 4),
            ],
        )];
        let rates = version_spec_rates(&reports).unwrap();
        assert_eq!(rates.overall, 0.25);
        assert_eq!(rates.per_phase[&Phase::Install], 0.5);
        assert_eq!(rates.per_phase[&Phase::Build], 0.0);
    }

    #[test]
    fn version_rates_can_express_reference_splits() {
        // 433 install records (224 constrained) + 567 build records (46
        // constrained): overall 270/1000 = 27% exactly, install 51.73%,
        // build 8.11% -- each within 0.5% of the 27 / 51.7 / 8.09 targets
        let mut records = Vec::new();
        for i in 0..433u32 {
            let mut rec = record(&format!("i{i}"), ToolKind::Conan, i + 1);
            if i < 224 {
                rec.constraint = VersionConstraint::parse("1.0");
            }
            records.push(rec);
        }
        for i in 0..567u32 {
            let mut rec = record(&format!("b{i}"), ToolKind::CMake, i + 1000);
            if i < 46 {
                rec.constraint = VersionConstraint::parse("2.0");
            }
            records.push(rec);
        }
        let reports = vec![report("big", records)];
        let rates = version_spec_rates(&reports).unwrap();
        assert!((rates.overall - 0.27).abs() < 1e-12);
        assert!((rates.per_phase[&Phase::Install] - 0.517).abs() <= 0.005);
        assert!((rates.per_phase[&Phase::Build] - 0.0809).abs() <= 0.005);
    }

    #[test]
    fn latest_adoption_open_range_counts() {
        let mut rec = record("zlib", ToolKind::Conan, 1);
        rec.constraint = VersionConstraint::parse(">=1.0");
        let reports = vec![report("a", vec![rec])];
        let latest: BTreeMap<String, Version> =
            [("zlib".to_string(), Version::parse("2.0").unwrap())].into();
        assert_eq!(latest_adoption(&reports, &latest).unwrap(), 1.0);
    }

    #[test]
    fn coverage_full_and_empty_database() {
        let reports = vec![report(
            "a",
            vec![record("x", ToolKind::CMake, 1), record("y", ToolKind::CMake, 2)],
        )];
        let all: BTreeSet<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let cov = db_coverage(&reports, &all).unwrap();
        assert!(cov.batches.iter().all(|b| *b == 1.0));
        assert_eq!(cov.covered_dep_share, 1.0);
        let none = db_coverage(&reports, &BTreeSet::new()).unwrap();
        assert!(none.batches.iter().all(|b| *b == 0.0));
        assert_eq!(none.covered_dep_share, 0.0);
    }

    #[test]
    fn coverage_partial_batches() {
        // 250 libraries; library lib000..lib249 with popularity 250-i; the
        // database holds the top 100
        let mut reports = Vec::new();
        for i in 0..250usize {
            for r in 0..(250 - i) {
                let id = format!("repo{r:03}");
                let rec = record(&format!("lib{i:03}"), ToolKind::CMake, i as u32 + 1);
                if let Some(existing) = reports.iter_mut().find(|x: &&mut ScanReport| x.repo_id == id) {
                    existing.add_records([rec]);
                } else {
                    let mut rep = ScanReport::new(id);
                    rep.add_records([rec]);
                    reports.push(rep);
                }
            }
        }
        let database: BTreeSet<String> = (0..100).map(|i| format!("lib{i:03}")).collect();
        let cov = db_coverage(&reports, &database).unwrap();
        assert_eq!(cov.batches.len(), 3);
        assert_eq!(cov.batches[0], 1.0);
        assert_eq!(cov.batches[1], 0.0);
        assert_eq!(cov.batches[2], 0.0);
        let total: u64 = (1..=250).sum();
        let covered: u64 = (151..=250).sum();
        assert!((cov.covered_dep_share - covered as f64 / total as f64).abs() < 1e-12);
    }

    #[test]
    fn permutation_invariance() {
        let reports = vec![
            report("a", vec![record("x", ToolKind::CMake, 1), record("y", ToolKind::Make, 2)]),
            report("b", vec![record("x", ToolKind::Conan, 1)]),
            report("c", vec![]),
        ];
        let mut reversed = reports.clone();
        reversed.reverse();
        let one = ecosystem_stats(&reports, None).unwrap();
        let two = ecosystem_stats(&reversed, None).unwrap();
        assert_eq!(one.popularity, two.popularity);
        assert_eq!(one.gini, two.gini);
        assert_eq!(one.phase_dep_share, two.phase_dep_share);
        assert_eq!(one.toolchain_combos, two.toolchain_combos);
    }

    #[test]
    fn cross_phase_linkage() {
        let reports = vec![report(
            "a",
            vec![
                record("zlib", ToolKind::Conan, 1),
                record("zlib", ToolKind::CMake, 2),
                record("fmt", ToolKind::CMake, 3),
            ],
        )];
        let share = cross_phase_share(&reports).unwrap();
        assert!((share - 0.5).abs() < 1e-12);
    }
}
