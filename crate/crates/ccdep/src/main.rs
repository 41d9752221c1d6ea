//! ccdep: scan C/C++ repositories for third-party dependencies, then run
//! analytics, vulnerability matching, and evaluation over the reports.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use ccdep::advisories::{self, OsCatalog};
use ccdep::analytics::{self, EcosystemStats};
use ccdep::clonesig::{self, SignatureDb};
use ccdep::evaluation::{self, MatchOn};
use ccdep::model::{AliasTable, Phase, ScanReport, ToolKind};
use ccdep::{list_supported_tools, scan_repository, ScanConfig};

const EXIT_OK: u8 = 0;
const EXIT_FATAL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "ccdep",
    version,
    about = "C/C++ dependency scanner and ecosystem analytics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan one repository and write a dependency report.
    Scan(ScanArgs),
    /// Ecosystem statistics over one or more reports.
    Stats(StatsArgs),
    /// Match reports against a vulnerability advisory file.
    Vuln(VulnArgs),
    /// Evaluate a report against hand-labeled ground truth.
    Eval(EvalArgs),
    /// Build a clone-signature database from library sources.
    BuildCloneDb(BuildCloneDbArgs),
    /// List supported tools and their manifest patterns.
    Tools(ToolsArgs),
}

#[derive(Args)]
struct ScanArgs {
    /// Repository root to scan.
    root: PathBuf,
    /// Clone-signature database enabling copied-code detection.
    #[arg(long, env = "CCDEP_CLONE_DB")]
    clone_db: Option<PathBuf>,
    /// Clone match-ratio threshold.
    #[arg(long, env = "CCDEP_CLONE_THRESHOLD", default_value_t = clonesig::DEFAULT_THRESHOLD)]
    clone_threshold: f64,
    /// Comma-separated tool subset (default: all).
    #[arg(long, env = "CCDEP_TOOLS", value_delimiter = ',')]
    tools: Vec<String>,
    /// Per-file size cap in bytes.
    #[arg(long, env = "CCDEP_MAX_FILE_BYTES", default_value_t = 8 * 1024 * 1024)]
    max_file_bytes: u64,
    /// Report repo_id (default: root directory name).
    #[arg(long, env = "CCDEP_REPO_ID")]
    repo_id: Option<String>,
    /// Follow symbolic links while walking.
    #[arg(long, env = "CCDEP_FOLLOW_SYMLINKS")]
    follow_symlinks: bool,
    /// Extra directory names to ignore (adds to .git, build, out).
    #[arg(long = "ignore-dir", env = "CCDEP_IGNORE_DIRS", value_delimiter = ',')]
    ignore_dirs: Vec<String>,
    /// Report output path (default: stdout).
    #[arg(short, long, env = "CCDEP_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct StatsArgs {
    /// Report files or directories containing them.
    inputs: Vec<PathBuf>,
    #[arg(long, env = "CCDEP_FORMAT", value_enum, default_value = "text")]
    format: OutputFormat,
    /// Alias table file (`alias = canonical` lines).
    #[arg(long, env = "CCDEP_ALIASES")]
    aliases: Option<PathBuf>,
    /// Also write the toolchain-combination table as CSV.
    #[arg(long, env = "CCDEP_COMBOS_CSV")]
    combos_csv: Option<PathBuf>,
}

#[derive(Args)]
struct VulnArgs {
    /// Report files or directories containing them.
    inputs: Vec<PathBuf>,
    /// Advisory file (one JSON advisory per line).
    #[arg(long, env = "CCDEP_ADVISORIES", required = true)]
    advisories: PathBuf,
    /// OS catalog of latest versions (`library version` lines) used for
    /// records without version constraints.
    #[arg(long, env = "CCDEP_OS_CATALOG")]
    os_catalog: Option<PathBuf>,
    #[arg(long, env = "CCDEP_FORMAT", value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct EvalArgs {
    /// Report file to evaluate.
    report: PathBuf,
    /// Ground-truth file.
    #[arg(long, env = "CCDEP_TRUTH", required = true)]
    truth: PathBuf,
    /// Matching granularity: name or name+tool.
    #[arg(long = "match", env = "CCDEP_MATCH", default_value = "name")]
    match_on: String,
    #[arg(long, env = "CCDEP_ALIASES")]
    aliases: Option<PathBuf>,
}

#[derive(Args)]
struct BuildCloneDbArgs {
    /// Manifest of `name path` lines naming library source trees.
    #[arg(long, env = "CCDEP_MANIFEST", required = true)]
    manifest: PathBuf,
    /// Output database path.
    #[arg(short, long, env = "CCDEP_OUTPUT", required = true)]
    output: PathBuf,
}

#[derive(Args)]
struct ToolsArgs {
    /// Count clone detection as configured.
    #[arg(long, env = "CCDEP_CLONE_DB")]
    clone_db: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scan(args) => cmd_scan(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Vuln(args) => cmd_vuln(args),
        Command::Eval(args) => cmd_eval(args),
        Command::BuildCloneDb(args) => cmd_build_clone_db(args),
        Command::Tools(args) => cmd_tools(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_FATAL)
        }
    }
}

fn usage_error(message: impl std::fmt::Display) -> anyhow::Result<u8> {
    eprintln!("error: {message}");
    Ok(EXIT_USAGE)
}

fn cmd_scan(args: ScanArgs) -> anyhow::Result<u8> {
    if !args.root.is_dir() {
        return usage_error(format!(
            "{} does not exist or is not a directory",
            args.root.display()
        ));
    }
    let mut config = ScanConfig::new(&args.root);
    config.repo_id = args.repo_id;
    config.follow_symlinks = args.follow_symlinks;
    config.max_file_bytes = args.max_file_bytes;
    config.clone_threshold = args.clone_threshold;
    for dir in args.ignore_dirs {
        config.ignore_dirs.insert(dir);
    }
    if !args.tools.is_empty() {
        let mut enabled = BTreeSet::new();
        for name in &args.tools {
            match name.parse::<ToolKind>() {
                Ok(tool) => {
                    enabled.insert(tool);
                }
                Err(_) => return usage_error(format!("unknown tool: {name}")),
            }
        }
        config.enabled_tools = enabled;
    }
    if let Some(db_path) = &args.clone_db {
        let db = SignatureDb::load(db_path)
            .with_context(|| format!("loading clone db {}", db_path.display()))?;
        config.clone_db = Some(db);
    }
    let report = scan_repository(&config)?;
    for w in &report.warnings {
        eprintln!("warning: {}:{}: {}", w.path, w.line, w.message);
    }
    match &args.output {
        Some(path) => report
            .save(path)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => report.write_to(std::io::stdout().lock())?,
    }
    Ok(EXIT_OK)
}

/// Expand report paths: directories contribute every `*.json` inside.
fn collect_reports(inputs: &[PathBuf]) -> anyhow::Result<Vec<ScanReport>> {
    let mut files: Vec<PathBuf> = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut inside: Vec<PathBuf> = std::fs::read_dir(input)
                .with_context(|| format!("reading {}", input.display()))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.extension().is_some_and(|e| e == "json"))
                .collect();
            inside.sort();
            files.extend(inside);
        } else {
            files.push(input.clone());
        }
    }
    files
        .iter()
        .map(|p| ScanReport::load(p).with_context(|| format!("loading report {}", p.display())))
        .collect()
}

fn load_aliases(path: &Option<PathBuf>) -> anyhow::Result<Option<AliasTable>> {
    match path {
        Some(p) => Ok(Some(
            AliasTable::load(p).with_context(|| format!("loading aliases {}", p.display()))?,
        )),
        None => Ok(None),
    }
}

fn cmd_stats(args: StatsArgs) -> anyhow::Result<u8> {
    let reports = collect_reports(&args.inputs)?;
    if reports.is_empty() {
        return usage_error("no reports given (pass report files or a directory of them)");
    }
    let aliases = load_aliases(&args.aliases)?;
    let stats = analytics::ecosystem_stats(&reports, aliases.as_ref())?;
    if let Some(path) = &args.combos_csv {
        let mut out = String::from("install,build,repos\n");
        for ((install, build), count) in &stats.toolchain_combos {
            let install = install.map(|t| t.name()).unwrap_or("none");
            out.push_str(&format!("{install},{build},{count}\n"));
        }
        std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    match args.format {
        OutputFormat::Json => writeln!(w, "{}", serde_json::to_string_pretty(&stats)?)?,
        OutputFormat::Csv => {
            writeln!(w, "library,count")?;
            let mut rows: Vec<(&String, &u64)> = stats.popularity.iter().collect();
            rows.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
            for (library, count) in rows {
                writeln!(w, "{library},{count}")?;
            }
        }
        OutputFormat::Text => write_stats_tables(&mut w, &stats)?,
    }
    Ok(EXIT_OK)
}

fn write_stats_tables(w: &mut impl Write, stats: &EcosystemStats) -> anyhow::Result<()> {
    writeln!(
        w,
        "repositories: {}   dependencies: {}",
        stats.repo_count, stats.dep_count
    )?;
    writeln!(w)?;
    let pct = |f: f64| format!("{:.2}", f * 100.0);
    writeln!(w, "phase        dep(%)   repo(%)")?;
    for phase in [Phase::Install, Phase::Build, Phase::Clone] {
        writeln!(
            w,
            "{:<12} {:>7}  {:>7}",
            phase.to_string(),
            pct(stats.phase_dep_share[&phase]),
            pct(stats.phase_repo_share[&phase]),
        )?;
    }
    writeln!(w)?;

    let mut install: Vec<(&ToolKind, &analytics::ToolUsage)> = stats
        .tool_usage
        .iter()
        .filter(|(t, _)| t.phase() == Phase::Install)
        .collect();
    install.sort_by(|a, b| b.1.dep_fraction.total_cmp(&a.1.dep_fraction));
    let mut build: Vec<(String, analytics::ToolUsage)> =
        vec![("make only".into(), stats.make_only)];
    build.extend(
        stats
            .tool_usage
            .iter()
            .filter(|(t, _)| t.phase() == Phase::Build)
            .map(|(t, u)| (t.to_string(), *u)),
    );
    build.sort_by(|a, b| b.1.dep_fraction.total_cmp(&a.1.dep_fraction));

    writeln!(
        w,
        "{:<14} {:>7} {:>8}    {:<14} {:>7} {:>8}",
        "install", "dep(%)", "repo(%)", "build", "dep(%)", "repo(%)"
    )?;
    for i in 0..install.len().max(build.len()) {
        let left = install
            .get(i)
            .map(|(t, u)| {
                format!(
                    "{:<14} {:>7} {:>8}",
                    t.to_string(),
                    pct(u.dep_fraction),
                    pct(u.repo_fraction)
                )
            })
            .unwrap_or_else(|| format!("{:<31}", ""));
        let right = build
            .get(i)
            .map(|(t, u)| {
                format!(
                    "{:<14} {:>7} {:>8}",
                    t,
                    pct(u.dep_fraction),
                    pct(u.repo_fraction)
                )
            })
            .unwrap_or_default();
        writeln!(w, "{left}    {right}")?;
    }
    writeln!(w)?;
    writeln!(w, "distinct libraries: {}", stats.popularity.len())?;
    writeln!(
        w,
        "popularity: gini {:.4}, mean {:.2}, median {:.1}",
        stats.gini, stats.mean_popularity, stats.median_popularity
    )?;
    let shares: Vec<String> = stats
        .topk_shares
        .iter()
        .filter(|(k, _)| **k != 100)
        .map(|(k, s)| format!("top {k}% -> {}%", pct(*s)))
        .collect();
    writeln!(w, "pareto shares: {}", shares.join(", "))?;
    writeln!(
        w,
        "version specification: {}% overall ({}% install, {}% build)",
        pct(stats.version_spec_rate),
        pct(stats
            .phase_version_spec_rate
            .get(&Phase::Install)
            .copied()
            .unwrap_or(0.0)),
        pct(stats
            .phase_version_spec_rate
            .get(&Phase::Build)
            .copied()
            .unwrap_or(0.0)),
    )?;
    writeln!(
        w,
        "dependencies handled in both phases: {}%",
        pct(stats.cross_phase_share)
    )?;
    Ok(())
}

fn cmd_vuln(args: VulnArgs) -> anyhow::Result<u8> {
    let reports = collect_reports(&args.inputs)?;
    if reports.is_empty() {
        return usage_error("no reports given");
    }
    let load = advisories::load_advisories(&args.advisories)?;
    for warning in &load.warnings {
        eprintln!("warning: advisories: {warning}");
    }
    let catalog = match &args.os_catalog {
        Some(path) => {
            Some(OsCatalog::load(path).with_context(|| format!("loading {}", path.display()))?)
        }
        None => None,
    };
    let outcome = advisories::match_reports(&reports, &load.advisories, catalog.as_ref());
    let summary = advisories::exposure_summary(&outcome.findings, &reports);
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    match args.format {
        OutputFormat::Json => {
            let doc = serde_json::json!({
                "findings": outcome.findings,
                "summary": summary,
                "unmatched_unconstrained": outcome.unmatched,
                "skipped_advisory_lines": load.skipped,
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        _ => {
            for f in &outcome.findings {
                writeln!(
                    w,
                    "{}: {} ({} via {}) affected by {} [{:?}] at {}",
                    f.repo_id,
                    f.record.library,
                    f.record.constraint,
                    f.record.tool,
                    f.advisory_id,
                    f.match_mode,
                    f.record.evidence,
                )?;
            }
            writeln!(
                w,
                "vulnerable dependencies: {}/{} ({:.2}%)",
                summary.vulnerable_records,
                summary.total_records,
                summary.vulnerable_dep_fraction * 100.0
            )?;
            writeln!(
                w,
                "affected repositories:   {}/{} ({:.2}%)",
                summary.affected_repos,
                summary.total_repos,
                summary.affected_repo_fraction * 100.0
            )?;
            if outcome.unmatched > 0 {
                writeln!(w, "unconstrained deps not in catalog: {}", outcome.unmatched)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_eval(args: EvalArgs) -> anyhow::Result<u8> {
    let report = ScanReport::load(&args.report)
        .with_context(|| format!("loading report {}", args.report.display()))?;
    let truths = evaluation::load_ground_truth(&args.truth)?;
    let truth = truths
        .iter()
        .find(|t| t.repo_id == report.repo_id)
        .or_else(|| (truths.len() == 1).then(|| &truths[0]));
    let Some(truth) = truth else {
        return usage_error(format!(
            "ground truth has no block for repo {}",
            report.repo_id
        ));
    };
    let match_on: MatchOn = match args.match_on.parse() {
        Ok(m) => m,
        Err(e) => return usage_error(e),
    };
    let aliases = load_aliases(&args.aliases)?;
    let result = evaluation::evaluate(&report, truth, match_on, aliases.as_ref())?;
    let fmt_opt = |v: Option<f64>| v.map(|x| format!("{x:.4}")).unwrap_or_else(|| "/".into());
    println!("tp {}  fp {}  fn {}", result.tp, result.fp, result.fn_);
    println!(
        "precision {}  recall_full {:.4}  recall_supported {:.4}  f1 {}",
        fmt_opt(result.precision),
        result.recall_full,
        result.recall_supported,
        fmt_opt(result.f1),
    );
    Ok(EXIT_OK)
}

fn cmd_build_clone_db(args: BuildCloneDbArgs) -> anyhow::Result<u8> {
    let text = std::fs::read_to_string(&args.manifest)
        .with_context(|| format!("reading manifest {}", args.manifest.display()))?;
    let base = args
        .manifest
        .parent()
        .unwrap_or_else(|| Path::new("."))
        .to_path_buf();
    let mut sources = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((name, path)) = line.split_once(char::is_whitespace) else {
            return usage_error(format!("manifest line {}: expected `name path`", i + 1));
        };
        let path = Path::new(path.trim());
        let absolute = if path.is_absolute() {
            path.to_path_buf()
        } else {
            base.join(path)
        };
        sources.push((name.to_string(), absolute));
    }
    if sources.is_empty() {
        return usage_error("manifest names no library sources");
    }
    let outcome = clonesig::build_signature_db(&sources)?;
    for w in &outcome.warnings {
        eprintln!("warning: {}: {}", w.path, w.message);
    }
    if outcome.db.is_empty() {
        return usage_error("no library yielded any function signature");
    }
    outcome
        .db
        .save(&args.output)
        .with_context(|| format!("writing {}", args.output.display()))?;
    eprintln!(
        "wrote {} libraries to {}",
        outcome.db.len(),
        args.output.display()
    );
    Ok(EXIT_OK)
}

fn cmd_tools(args: ToolsArgs) -> anyhow::Result<u8> {
    for tool in list_supported_tools(args.clone_db.is_some()) {
        println!(
            "{:<14} {:<8} {}",
            tool.tool.to_string(),
            tool.phase.to_string(),
            tool.patterns.join(", ")
        );
    }
    Ok(EXIT_OK)
}
