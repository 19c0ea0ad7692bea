//! Command implementations.
//!
//! Each subcommand maps to one function here; [`run`] dispatches. All
//! computation is deterministic and single-threaded, so identical inputs
//! produce identical output bytes. Failures carry their exit-code class in
//! [`CliError`]; in particular an interior atom-budget overflow is replayed
//! index by index so the error names the first bit-channel that overflows.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_rational::BigRational;
use polar_bsc::{closed_form_k3, closed_form_k4};
use polar_ce::{
    all_bhattacharyya, polarize, select_info_set, BitPattern, CeError, EngineConfig,
    SelectionCriterion,
};
use polar_density::{AbsDDensity, ChannelSpec, Scalar};
use polar_oracle::{brute_force_z, OracleError};
use serde::Serialize;

use crate::channel_arg::ChannelArg;
use crate::cli::{
    BackendChoice, CacheArgs, Cli, Command, ConstructArgs, FamilyChoice, LoadCacheArgs,
    SweepArgs, VerifyArgs,
};
use crate::error::{CliError, Result};
use crate::table::{ReliabilityTable, TableMetadata, TableRow};

/// Largest level any command will compute; 2^20 rows is about one million.
pub const MAX_TABLE_LEVEL: u32 = 20;

/// Crossover probabilities the closed-form verification checks run on.
const VERIFY_P_GRID: [f64; 5] = [0.05, 0.1, 0.2, 0.3, 0.45];

/// Agreement tolerance between the evolution engine and the closed forms.
const CLOSED_FORM_TOL: f64 = 1e-10;

/// Agreement tolerance between the evolution engine and the brute-force
/// oracle (which accumulates float error over exponentially many outputs).
const ORACLE_TOL: f64 = 1e-9;

/// Executes one parsed command line.
pub fn run(cli: Cli) -> Result<()> {
    let backend = cli.backend;
    let cfg = engine_config(cli.atom_cap)?;
    match cli.command {
        Command::Construct(args) => construct(&args, backend, &cfg),
        Command::Verify(args) => verify(&args, backend, &cfg),
        Command::Sweep(args) => sweep(&args, backend, &cfg),
        Command::Cache(args) => cache(&args, backend, &cfg),
        Command::LoadCache(args) => load_cache(&args),
    }
}

/// Reads and validates a cache file.
pub fn read_cache(path: &Path) -> Result<ReliabilityTable> {
    let text = std::fs::read_to_string(path)?;
    ReliabilityTable::from_cache_json(&text)
}

fn engine_config(atom_cap: u64) -> Result<EngineConfig> {
    let cap = usize::try_from(atom_cap).map_err(|_| {
        CliError::Usage(format!("atom cap {atom_cap} does not fit this platform"))
    })?;
    let cfg = EngineConfig { atom_cap: cap, ..EngineConfig::default() };
    cfg.validate()?;
    Ok(cfg)
}

fn check_level(level: u32) -> Result<()> {
    if !(1..=MAX_TABLE_LEVEL).contains(&level) {
        return Err(CliError::Usage(format!(
            "level must be between 1 and {MAX_TABLE_LEVEL}, got {level}"
        )));
    }
    Ok(())
}

/// Computes all `2^level` Bhattacharyya parameters for a command-line
/// channel, honoring the exact-decimal parse under the rational backend.
fn zs_for_arg(
    arg: &ChannelArg,
    level: u32,
    backend: BackendChoice,
    cfg: &EngineConfig,
) -> Result<Vec<f64>> {
    match backend {
        BackendChoice::Float => all_with_diagnostics(&arg.density_float(cfg.merge_tol)?, level, cfg),
        BackendChoice::Rational => {
            all_with_diagnostics(&arg.density_rational(cfg.merge_tol)?, level, cfg)
        }
    }
}

/// Computes all `2^level` Bhattacharyya parameters for an in-memory channel
/// description (the rational backend starts from the dyadic parameter).
fn zs_for_spec(
    spec: &ChannelSpec,
    level: u32,
    backend: BackendChoice,
    cfg: &EngineConfig,
) -> Result<Vec<f64>> {
    match backend {
        BackendChoice::Float => {
            all_with_diagnostics(&AbsDDensity::<f64>::from_spec(spec, cfg.merge_tol)?, level, cfg)
        }
        BackendChoice::Rational => all_with_diagnostics(
            &AbsDDensity::<BigRational>::from_spec(spec, cfg.merge_tol)?,
            level,
            cfg,
        ),
    }
}

/// Runs the full-level evolution; values are shaved into `[0, 1]` (float
/// round-off can land a hair outside) and an atom-budget overflow is
/// upgraded to a resource error naming the first offending index.
fn all_with_diagnostics<T: Scalar>(
    d: &AbsDDensity<T>,
    level: u32,
    cfg: &EngineConfig,
) -> Result<Vec<f64>> {
    match all_bhattacharyya(d, level, cfg) {
        Ok(zs) => Ok(zs.into_iter().map(|z| z.clamp(0.0, 1.0)).collect()),
        Err(CeError::AtomBudget { .. }) => Err(first_overflow(d, level, cfg)),
        Err(e) => Err(e.into()),
    }
}

/// Replays the evolution one bit-channel at a time to identify the first
/// index whose interior support exceeds the atom budget.
fn first_overflow<T: Scalar>(d: &AbsDDensity<T>, level: u32, cfg: &EngineConfig) -> CliError {
    for index in 1..=(1u64 << level) {
        let pattern = match BitPattern::from_index(level, index) {
            Ok(p) => p,
            Err(e) => return e.into(),
        };
        if let Err(CeError::AtomBudget { required, cap, .. }) = polarize(d, &pattern, cfg) {
            return CliError::Resource(format!(
                "atom budget exceeded at index {index} (pattern {pattern}): the evolution \
                 needs {required} interior atoms, the cap is {cap}; rerun with a larger \
                 --atom-cap"
            ));
        }
    }
    CliError::Resource("atom budget exceeded".into())
}

fn build_table(
    channel: ChannelSpec,
    level: u32,
    zs: Vec<f64>,
    backend: BackendChoice,
    cfg: &EngineConfig,
) -> ReliabilityTable {
    let rows = zs
        .into_iter()
        .enumerate()
        .map(|(position, z)| {
            let index = position as u64 + 1;
            let pattern = BitPattern::from_index(level, index)
                .expect("index ranges over exactly the valid table positions")
                .to_string();
            TableRow { index, pattern, z }
        })
        .collect();
    ReliabilityTable {
        channel,
        level,
        rows,
        metadata: TableMetadata {
            backend: backend.name().into(),
            merge_tol: cfg.merge_tol,
            atom_cap: cfg.atom_cap as u64,
            tool_version: env!("CARGO_PKG_VERSION").into(),
        },
    }
}

fn construct(args: &ConstructArgs, backend: BackendChoice, cfg: &EngineConfig) -> Result<()> {
    check_level(args.level)?;
    let zs = zs_for_arg(&args.channel, args.level, backend, cfg)?;
    let criterion = match (args.gamma, args.rate) {
        (Some(gamma), None) => SelectionCriterion::Threshold(gamma),
        (None, Some(rate)) => SelectionCriterion::Rate(rate),
        _ => unreachable!("the argument group admits exactly one criterion"),
    };
    let selected = select_info_set(&zs, criterion)?;
    let table = build_table(args.channel.spec().clone(), args.level, zs, backend, cfg);
    debug_assert!(table.validate().is_ok());
    let summary = format!("selected {} of {} indices", selected.len(), table.rows.len());
    match &args.out {
        Some(path) => {
            table.write_csv(&selected, BufWriter::new(File::create(path)?))?;
            println!("{summary}");
        }
        None => {
            // The CSV occupies stdout, so the count goes to stderr.
            table.write_csv(&selected, io::stdout().lock())?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cache(args: &CacheArgs, backend: BackendChoice, cfg: &EngineConfig) -> Result<()> {
    check_level(args.level)?;
    let zs = zs_for_arg(&args.channel, args.level, backend, cfg)?;
    let table = build_table(args.channel.spec().clone(), args.level, zs, backend, cfg);
    debug_assert!(table.validate().is_ok());
    std::fs::write(&args.out, table.to_cache_json())?;
    println!(
        "cached {} rows at level {} to {}",
        table.rows.len(),
        table.level,
        args.out.display()
    );
    Ok(())
}

fn load_cache(args: &LoadCacheArgs) -> Result<()> {
    let table = read_cache(&args.path)?;
    println!(
        "loaded {} table at level {}: {} rows, backend {}, tool version {}",
        table.channel.describe(),
        table.level,
        table.rows.len(),
        table.metadata.backend,
        table.metadata.tool_version
    );
    Ok(())
}

fn sweep(args: &SweepArgs, backend: BackendChoice, cfg: &EngineConfig) -> Result<()> {
    check_level(args.level)?;
    if args.grid == 0 {
        return Err(CliError::Usage("the sweep grid needs at least one point".into()));
    }
    let sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    writer.write_record(["param", "index", "z"])?;
    for step in 1..=args.grid {
        // Evenly spaced interior points: the endpoints are degenerate
        // (all-zero or all-one tables), so the grid stays strictly inside
        // the parameter domain.
        let fraction = f64::from(step) / f64::from(args.grid + 1);
        let (param, spec) = match args.family {
            FamilyChoice::Bsc => {
                let p = 0.5 * fraction;
                (p, ChannelSpec::Bsc { p })
            }
            FamilyChoice::Bec => (fraction, ChannelSpec::Bec { eps: fraction }),
        };
        let zs = zs_for_spec(&spec, args.level, backend, cfg)?;
        for (position, &z) in zs.iter().enumerate() {
            writer.write_record([
                param.to_string(),
                (position as u64 + 1).to_string(),
                z.to_string(),
            ])?;
        }
    }
    writer.flush().map_err(CliError::from)?;
    Ok(())
}

/// One verification check's outcome, as reported in the JSON.
#[derive(Debug, Serialize)]
struct CheckOutcome {
    name: String,
    cases: u64,
    max_abs_diff: f64,
    tolerance: f64,
    passed: bool,
}

/// The machine-readable verification report.
#[derive(Debug, Serialize)]
struct VerifyReport {
    passed: bool,
    checks: Vec<CheckOutcome>,
}

fn verify(args: &VerifyArgs, backend: BackendChoice, cfg: &EngineConfig) -> Result<()> {
    if let Some(level) = args.level {
        if level != 3 && level != 4 {
            return Err(CliError::Usage(format!(
                "closed forms are available at levels 3 and 4, got {level}"
            )));
        }
    }
    // Flags narrow the suite: --level picks one closed-form comparison,
    // --channel picks the oracle channels; with no flags everything runs.
    let run_all = args.level.is_none() && args.channels.is_empty();
    let mut checks = Vec::new();
    if args.level == Some(3) || run_all {
        checks.push(closed_form_check(3, backend, cfg)?);
    }
    if args.level == Some(4) || run_all {
        checks.push(closed_form_check(4, backend, cfg)?);
    }
    if !args.channels.is_empty() || run_all {
        let channels: Vec<ChannelSpec> = if args.channels.is_empty() {
            default_verify_channels()
        } else {
            args.channels.iter().map(|c| c.spec().clone()).collect()
        };
        checks.push(oracle_check(&channels, backend, cfg)?);
    }
    let report = VerifyReport { passed: checks.iter().all(|c| c.passed), checks };
    let mut text =
        serde_json::to_string_pretty(&report).expect("the report serializes cleanly");
    text.push('\n');
    match &args.json {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(failing) = report.checks.iter().find(|c| !c.passed) {
        return Err(CliError::Verification(format!(
            "check {} failed: max |diff| = {:e} exceeds tolerance {:e} over {} cases",
            failing.name, failing.max_abs_diff, failing.tolerance, failing.cases
        )));
    }
    Ok(())
}

/// Compares the evolution pipeline against the level-3 or level-4 closed
/// forms over [`VERIFY_P_GRID`].
fn closed_form_check(
    level: u32,
    backend: BackendChoice,
    cfg: &EngineConfig,
) -> Result<CheckOutcome> {
    debug_assert!(level == 3 || level == 4);
    let form: fn(usize, f64) -> f64 = if level == 3 { closed_form_k3 } else { closed_form_k4 };
    let mut max_abs_diff = 0.0f64;
    let mut cases = 0u64;
    for &p in &VERIFY_P_GRID {
        let zs = zs_for_spec(&ChannelSpec::Bsc { p }, level, backend, cfg)?;
        for (position, &z) in zs.iter().enumerate() {
            max_abs_diff = max_abs_diff.max((z - form(position + 1, p)).abs());
            cases += 1;
        }
    }
    Ok(CheckOutcome {
        name: format!("closed-forms-k{level}"),
        cases,
        max_abs_diff,
        tolerance: CLOSED_FORM_TOL,
        passed: max_abs_diff <= CLOSED_FORM_TOL,
    })
}

/// Compares the evolution pipeline against the brute-force oracle for every
/// pattern of length at most three on the given channels.
fn oracle_check(
    channels: &[ChannelSpec],
    backend: BackendChoice,
    cfg: &EngineConfig,
) -> Result<CheckOutcome> {
    let mut max_abs_diff = 0.0f64;
    let mut cases = 0u64;
    for spec in channels {
        for level in 1..=3u32 {
            let zs = zs_for_spec(spec, level, backend, cfg)?;
            for (position, &z) in zs.iter().enumerate() {
                let pattern = BitPattern::from_index(level, position as u64 + 1)
                    .map_err(CliError::from)?;
                let reference = brute_force_z::<f64>(spec, &pattern).map_err(oracle_error)?;
                max_abs_diff = max_abs_diff.max((z - reference).abs());
                cases += 1;
            }
        }
    }
    Ok(CheckOutcome {
        name: "oracle-equivalence".into(),
        cases,
        max_abs_diff,
        tolerance: ORACLE_TOL,
        passed: max_abs_diff <= ORACLE_TOL,
    })
}

/// The standard oracle-check channel list: two crossover settings, one
/// erasure setting, and one four-output symmetric channel.
fn default_verify_channels() -> Vec<ChannelSpec> {
    vec![
        ChannelSpec::Bsc { p: 0.1 },
        ChannelSpec::Bsc { p: 0.3 },
        ChannelSpec::Bec { eps: 0.5 },
        ChannelSpec::General {
            rows: vec![vec![0.4, 0.3, 0.2, 0.1], vec![0.1, 0.2, 0.3, 0.4]],
            perm: vec![3, 2, 1, 0],
        },
    ]
}

fn oracle_error(e: OracleError) -> CliError {
    match e {
        OracleError::OutputBudget { .. } => CliError::Resource(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}
