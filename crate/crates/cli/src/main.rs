//! Command-line front end for the `spinsym` library: single-energy queries,
//! coupling sweeps with CSV output, the spectral-region table of the log
//! potential, and comparison-suite runs over corpora of ordered potential
//! pairs.
//!
//! Exit codes form a fixed contract:
//!
//! - `0` — success
//! - `1` — usage, configuration, or input-file errors
//! - `2` — numerical failure, inapplicable request, or detected ordering
//!   violations
//! - `3` — no discrete spectrum for the requested parameters

use std::collections::BTreeMap;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use spinsym::compare::{built_in_corpus, run_corpus, CompareOptions};
use spinsym::parse::{parse_config, parse_corpus, parse_potential_spec};
use spinsym::spectra::{self, EigenvalueSolution};
use spinsym::sweep::{
    self, csv_document, gnuplot_script, reference_log_sweep, run_sweep, ConstantSource, RowStatus,
    Spacing, SweepFamily, SweepOutputs, SweepSpec,
};
use spinsym::{radial, Channel, PotentialModel, RadialGrid, Sign, SolveError, SymmetryMode};

// ---------------------------------------------------------------------------
// Failure plumbing.
// ---------------------------------------------------------------------------

/// A command failure carrying the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

/// Usage-class failure (exit 1).
fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::Domain(_) => 1,
            SolveError::NoDiscreteSpectrum(_) | SolveError::NoBoundState(_) => 3,
            SolveError::NumericalFailure(_)
            | SolveError::DegenerateEnergy(_)
            | SolveError::NotComparable(_)
            | SolveError::NotApplicable(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

// ---------------------------------------------------------------------------
// Argument grammar.
// ---------------------------------------------------------------------------

/// Bound-state energies of a Dirac particle whose scalar potential matches
/// the vector potential up to sign.
#[derive(Parser)]
#[command(name = "spinsym", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bound-state energy of one potential in one channel
    Spectrum(SpectrumArgs),
    /// Sweep the coupling over a grid and emit CSV rows
    Sweep(SweepArgs),
    /// Check ordered potential pairs against the spectral comparison rule
    Verify(VerifyArgs),
    /// Print the spectral-region table of the log potential
    Regions(RegionsArgs),
}

/// Quantum-number flags shared by the energy commands. Every flag falls back
/// to the config file and then to the baseline channel
/// (`d=3 j2=1 tau=+1 spin nu=0 m=1`).
#[derive(Args)]
struct ChannelArgs {
    /// Spatial dimension d >= 1
    #[arg(long)]
    d: Option<u32>,
    /// Twice the total angular momentum, 2j
    #[arg(long)]
    j2: Option<u32>,
    /// Spin-orbit sign tau: +1 or -1
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
    /// Symmetry mode: spin (S = +V) or pseudo (S = -V)
    #[arg(long)]
    mode: Option<String>,
    /// Radial quantum number (node count of the principal component)
    #[arg(long)]
    nu: Option<u32>,
    /// Mass
    #[arg(long, allow_hyphen_values = true)]
    m: Option<f64>,
}

/// Controls for the shooting-derived reference constants (the linear-shape
/// `P` and the unit-coupling log eigenvalue `e(1)`); only the linear and log
/// families consult them.
#[derive(Args)]
struct ConstantArgs {
    /// Radial extent of the shooting grid (must be given with --npoints)
    #[arg(long)]
    rmax: Option<f64>,
    /// Number of shooting-grid points (must be given with --rmax)
    #[arg(long)]
    npoints: Option<usize>,
    /// Use the published reference constants instead of recomputing them
    #[arg(long)]
    use_published_constants: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Potential family (oscillator | linear | coulomb | shifted-coulomb |
    /// kratzer | log) or a full spec such as kratzer:a=0.1,v=1,c=0.5
    #[arg(long)]
    potential: Option<String>,
    /// Coupling strength v
    #[arg(long, allow_hyphen_values = true)]
    v: Option<f64>,
    /// Constant shift c (shifted-coulomb and kratzer families)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Inverse-square strength a (kratzer family)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    constants: ConstantArgs,
    /// Line-oriented key=value configuration; flags override file values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Also print the root bracket, residual, node count, and branch note
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Swept potential family; the coupling v is the sweep variable
    /// [default: log]
    #[arg(long)]
    potential: Option<String>,
    /// Fixed constant shift c (shifted-coulomb and kratzer families)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    /// Fixed inverse-square strength a (kratzer family)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[command(flatten)]
    channel: ChannelArgs,
    /// First coupling of the grid [default: 0.05]
    #[arg(long, allow_hyphen_values = true)]
    vmin: Option<f64>,
    /// Last coupling of the grid [default: 14]
    #[arg(long, allow_hyphen_values = true)]
    vmax: Option<f64>,
    /// Number of sweep points, at least 2 [default: 50]
    #[arg(long)]
    points: Option<usize>,
    /// Coupling spacing: linear or log [default: log]
    #[arg(long)]
    spacing: Option<String>,
    /// Comma list of output columns from exact, oracle, envelope
    /// [default: exact,envelope for the log family, exact otherwise]
    #[arg(long)]
    outputs: Option<String>,
    /// Energy tolerance of the shooting oracle column
    #[arg(long)]
    tol: Option<f64>,
    /// Use the published reference constants instead of recomputing them
    #[arg(long)]
    use_published_constants: bool,
    /// Write the CSV here instead of standard output
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Also write a gnuplot script referencing the CSV (needs --csv)
    #[arg(long, value_name = "PATH")]
    gnuplot: Option<PathBuf>,
    /// Line-oriented key=value configuration; flags override file values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Print a run summary to standard error
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Corpus file of ordered potential pairs (built-in corpus when omitted)
    #[arg(long, value_name = "PATH")]
    corpus: Option<PathBuf>,
    /// Oracle energy tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Relative slack allowed by the ordering comparison
    #[arg(long)]
    slack: Option<f64>,
    /// Offset added to every left-hand energy before comparing; a harness
    /// self-test proving that violations are detected
    #[arg(long, hide = true, allow_hyphen_values = true)]
    inject_offset: Option<f64>,
    /// Line-oriented key=value configuration; flags override file values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Print the case count and tolerances before running
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct RegionsArgs {
    #[command(flatten)]
    channel: ChannelArgs,
    #[command(flatten)]
    constants: ConstantArgs,
    /// Line-oriented key=value configuration; flags override file values
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests leave through this path too; only
            // genuine usage errors take the nonzero code.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Spectrum(args) => cmd_spectrum(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Regions(args) => cmd_regions(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

// ---------------------------------------------------------------------------
// Configuration merge.
// ---------------------------------------------------------------------------

/// Parsed `--config` contents. Flag values take precedence, file values fill
/// the gaps, compiled defaults fill the rest. Keys mirror the long flag
/// names; unknown keys are permitted so one file can serve several commands.
struct Config {
    map: BTreeMap<String, String>,
}

impl Config {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        let map = match path {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
                parse_config(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
            }
            None => BTreeMap::new(),
        };
        Ok(Config { map })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    /// The flag value if given, else the parsed file value, else `None`.
    fn opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            Some(s) => s.parse().map(Some).map_err(|e| usage(format!("config key '{key}': {e}"))),
            None => Ok(None),
        }
    }

    /// The flag value if given, else the parsed file value, else `default`.
    fn get<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T::Err: Display,
    {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    /// String-valued option with the same precedence, parsed by the caller.
    fn choice(&self, flag: Option<&String>, key: &str) -> Option<String> {
        flag.cloned().or_else(|| self.raw(key).map(str::to_string))
    }
}

// ---------------------------------------------------------------------------
// Shared flag resolution.
// ---------------------------------------------------------------------------

fn parse_sign(s: &str) -> CliResult<Sign> {
    match s.trim() {
        "+1" | "+" | "1" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        other => Err(usage(format!("tau must be +1 or -1, got '{other}'"))),
    }
}

fn parse_mode(s: &str) -> CliResult<SymmetryMode> {
    match s.trim() {
        "spin" => Ok(SymmetryMode::Spin),
        "pseudo" => Ok(SymmetryMode::Pseudo),
        other => Err(usage(format!("mode must be spin or pseudo, got '{other}'"))),
    }
}

fn resolve_channel(args: &ChannelArgs, cfg: &Config) -> CliResult<Channel> {
    let d = cfg.get(args.d, "d", 3)?;
    let j2 = cfg.get(args.j2, "j2", 1)?;
    let tau = match cfg.choice(args.tau.as_ref(), "tau") {
        Some(s) => parse_sign(&s)?,
        None => Sign::Plus,
    };
    let mode = match cfg.choice(args.mode.as_ref(), "mode") {
        Some(s) => parse_mode(&s)?,
        None => SymmetryMode::Spin,
    };
    let nu = cfg.get(args.nu, "nu", 0)?;
    let m = cfg.get(args.m, "m", 1.0)?;
    Ok(Channel::new(d, j2, tau, mode, nu, m)?)
}

/// Optional override of the shooting grid used for the reference constants.
fn resolve_grid(args: &ConstantArgs, cfg: &Config) -> CliResult<Option<RadialGrid>> {
    let rmax = cfg.opt(args.rmax, "rmax")?;
    let npoints = cfg.opt(args.npoints, "npoints")?;
    match (rmax, npoints) {
        (None, None) => Ok(None),
        (Some(r), Some(n)) => {
            if n == 0 {
                return Err(usage("--npoints must be positive"));
            }
            Ok(Some(RadialGrid::with_spacing(r / n as f64, r)?))
        }
        _ => Err(usage("--rmax and --npoints must be given together")),
    }
}

fn resolve_constants(published_flag: bool, cfg: &Config) -> CliResult<ConstantSource> {
    if published_flag {
        return Ok(ConstantSource::Published);
    }
    match cfg.raw("constants") {
        Some(s) => s.parse().map_err(|e| usage(format!("config key 'constants': {e}"))),
        None => Ok(ConstantSource::Computed),
    }
}

/// The linear-shape principal value `P` with the custom grid honored on the
/// computed route.
fn linear_constant(
    ch: &Channel,
    source: ConstantSource,
    grid: Option<&RadialGrid>,
) -> CliResult<f64> {
    match grid {
        Some(g) if !(source == ConstantSource::Published && sweep::published_applies(ch)) => {
            Ok(radial::linear_p_on(g, ch.l_eff(), ch.nu)?)
        }
        _ => Ok(sweep::effective_linear_p(ch, source)?),
    }
}

/// The unit-coupling log eigenvalue `e(1)` with the custom grid honored on
/// the computed route.
fn log_constant(ch: &Channel, source: ConstantSource, grid: Option<&RadialGrid>) -> CliResult<f64> {
    match grid {
        Some(g) if !(source == ConstantSource::Published && sweep::published_applies(ch)) => {
            Ok(radial::log_e1_on(g, ch.l_eff(), ch.nu)?)
        }
        _ => Ok(sweep::effective_log_e1(ch, source)?),
    }
}

/// Which named parameters a family accepts, for config fallback: explicit
/// flags are always forwarded (so mistakes are caught), but file values are
/// forwarded only where they apply, letting one config serve many families.
fn family_takes(name: &str) -> (bool, bool) {
    match name {
        "coulomb" | "shifted-coulomb" => (true, false),
        "kratzer" => (true, true),
        _ => (false, false),
    }
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

fn resolve_potential(args: &SpectrumArgs, cfg: &Config) -> CliResult<PotentialModel> {
    let spec = cfg
        .choice(args.potential.as_ref(), "potential")
        .ok_or_else(|| usage("no potential given (use --potential)"))?;
    if spec.contains(':') {
        if args.v.is_some() || args.c.is_some() || args.a.is_some() {
            return Err(usage(
                "give parameters either inside the potential spec or as flags, not both",
            ));
        }
        // Flag-sourced specs are single-line; the line prefix is noise here.
        return parse_potential_spec(&spec).map_err(|e| usage(e.message));
    }
    let (takes_c, takes_a) = family_takes(&spec);
    let v = cfg.opt(args.v, "v")?;
    let c = if takes_c { cfg.opt(args.c, "c")? } else { args.c };
    let a = if takes_a { cfg.opt(args.a, "a")? } else { args.a };
    let mut parts = Vec::new();
    if let Some(x) = v {
        parts.push(format!("v={x}"));
    }
    if let Some(x) = c {
        parts.push(format!("c={x}"));
    }
    if let Some(x) = a {
        parts.push(format!("a={x}"));
    }
    let full = if parts.is_empty() { spec } else { format!("{spec}:{}", parts.join(",")) };
    parse_potential_spec(&full).map_err(|e| usage(e.message))
}

fn solve_model(
    model: &PotentialModel,
    ch: &Channel,
    source: ConstantSource,
    grid: Option<&RadialGrid>,
) -> CliResult<EigenvalueSolution> {
    let sol = match model {
        PotentialModel::Oscillator { v } => spectra::oscillator_energy(*v, ch)?,
        PotentialModel::Linear { v } => {
            let p = linear_constant(ch, source, grid)?;
            spectra::linear_energy_with_p(*v, ch, p)?
        }
        PotentialModel::Coulomb { v } => spectra::coulomb_energy(*v, ch)?,
        PotentialModel::ShiftedCoulomb { v, c } => spectra::shifted_coulomb_energy(*v, *c, ch)?,
        PotentialModel::Kratzer { a, v, c } => spectra::kratzer_energy(*a, *v, *c, ch)?,
        PotentialModel::Log { v } => {
            let e1 = log_constant(ch, source, grid)?;
            spectra::log_energy_with_e1(*v, ch, e1)?
        }
        PotentialModel::Custom { .. } => {
            return Err(usage("custom shapes are not addressable from the command line"));
        }
    };
    Ok(sol)
}

fn cmd_spectrum(args: &SpectrumArgs) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let ch = resolve_channel(&args.channel, &cfg)?;
    let grid = resolve_grid(&args.constants, &cfg)?;
    let source = resolve_constants(args.constants.use_published_constants, &cfg)?;
    let model = resolve_potential(args, &cfg)?;
    let sol = solve_model(&model, &ch, source, grid.as_ref())?;
    println!("E = {}", sweep::fmt9(sol.energy));
    if args.verbose {
        println!("potential {}", model.describe());
        println!("channel   {ch}  L = {}", ch.l_eff());
        println!(
            "bracket   [{}, {}]",
            sweep::fmt9(sol.bracket.0),
            sweep::fmt9(sol.bracket.1)
        );
        println!("residual  {:.3e}", sol.residual);
        println!("nodes     {}", sol.nodes);
        println!("branch    {}", sol.branch_note);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn resolve_sweep_family(args: &SweepArgs, cfg: &Config) -> CliResult<SweepFamily> {
    let name = cfg
        .choice(args.potential.as_ref(), "potential")
        .unwrap_or_else(|| "log".to_string());
    if name.contains(':') {
        return Err(usage(format!(
            "the sweep varies the coupling v; give a bare family name (got '{name}') and fixed \
             parameters via --c/--a"
        )));
    }
    let (takes_c, takes_a) = family_takes(&name);
    let c = if takes_c { cfg.opt(args.c, "c")? } else { args.c };
    let a = if takes_a { cfg.opt(args.a, "a")? } else { args.a };
    // Validate through the shared spec grammar with a placeholder coupling;
    // the sweep substitutes its own v at every grid point.
    let mut parts = vec!["v=1".to_string()];
    if let Some(x) = c {
        parts.push(format!("c={x}"));
    }
    if let Some(x) = a {
        parts.push(format!("a={x}"));
    }
    let model = parse_potential_spec(&format!("{name}:{}", parts.join(",")))
        .map_err(|e| usage(e.message))?;
    Ok(match model {
        PotentialModel::Oscillator { .. } => SweepFamily::Oscillator,
        PotentialModel::Linear { .. } => SweepFamily::Linear,
        PotentialModel::Coulomb { .. } => SweepFamily::Coulomb,
        PotentialModel::ShiftedCoulomb { c, .. } => SweepFamily::ShiftedCoulomb { c },
        PotentialModel::Kratzer { a, c, .. } => SweepFamily::Kratzer { a, c },
        PotentialModel::Log { .. } => SweepFamily::Log,
        PotentialModel::Custom { .. } => {
            return Err(usage("custom shapes are not addressable from the command line"));
        }
    })
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let base = reference_log_sweep();
    let family = resolve_sweep_family(args, &cfg)?;
    let channel = resolve_channel(&args.channel, &cfg)?;
    let spacing = match cfg.choice(args.spacing.as_ref(), "spacing") {
        Some(s) => s.parse::<Spacing>().map_err(|e| usage(e.to_string()))?,
        None => base.spacing,
    };
    let outputs = match cfg.choice(args.outputs.as_ref(), "outputs") {
        Some(s) => SweepOutputs::parse_list(&s).map_err(|e| usage(e.to_string()))?,
        None if matches!(family, SweepFamily::Log) => base.outputs,
        None => SweepOutputs::default(),
    };
    let spec = SweepSpec {
        family,
        channel,
        v_min: cfg.get(args.vmin, "vmin", base.v_min)?,
        v_max: cfg.get(args.vmax, "vmax", base.v_max)?,
        n_points: cfg.get(args.points, "points", base.n_points)?,
        spacing,
        outputs,
        constants: resolve_constants(args.use_published_constants, &cfg)?,
        oracle_tol: cfg.get(args.tol, "tol", base.oracle_tol)?,
    };
    spec.validate()?;
    let rows = run_sweep(&spec)?;
    let doc = csv_document(&rows);
    let csv_path = cfg.opt(args.csv.clone(), "csv")?;
    match &csv_path {
        Some(p) => fs::write(p, &doc)
            .map_err(|e| usage(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{doc}"),
    }
    if let Some(gp) = cfg.opt(args.gnuplot.clone(), "gnuplot")? {
        let Some(csv) = &csv_path else {
            return Err(usage("--gnuplot needs --csv so the script has a data file to load"));
        };
        let script = gnuplot_script(&spec, &csv.display().to_string());
        fs::write(&gp, script)
            .map_err(|e| usage(format!("cannot write {}: {e}", gp.display())))?;
    }
    if args.verbose {
        eprintln!(
            "swept {} over [{}, {}] in {} {} steps; channel {}",
            spec.name(),
            spec.v_min,
            spec.v_max,
            spec.n_points,
            spec.spacing.label(),
            spec.channel,
        );
    }
    let failed = rows.iter().filter(|r| r.status == RowStatus::Failed).count();
    if failed > 0 {
        return Err(Failure {
            code: 2,
            message: format!("{failed} sweep point(s) failed; see the status column"),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let cases = match cfg.opt(args.corpus.clone(), "corpus")? {
        Some(p) => {
            let text = fs::read_to_string(&p)
                .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            parse_corpus(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?
        }
        None => built_in_corpus(),
    };
    let defaults = CompareOptions::default();
    let opts = CompareOptions {
        oracle_tol: cfg.get(args.tol, "tol", defaults.oracle_tol)?,
        slack: cfg.get(args.slack, "slack", defaults.slack)?,
        inject_offset: cfg.get(args.inject_offset, "inject-offset", defaults.inject_offset)?,
    };
    if args.verbose {
        eprintln!(
            "running {} case(s); oracle tol {:.1e}, slack {:.1e}",
            cases.len(),
            opts.oracle_tol,
            opts.slack
        );
    }
    let report = run_corpus(&cases, &opts);
    print!("{report}");
    if report.ok() {
        Ok(())
    } else {
        Err(Failure {
            code: 2,
            message: format!(
                "{} violation(s) and {} failure(s) across {} case(s)",
                report.violated,
                report.failed,
                report.cases.len()
            ),
        })
    }
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

/// One symbolic cell of the region table: the open energy window between
/// `-mu` and `u1/v - mu`, ordered by the sign of `v`.
fn region_cell(v_pos: bool, mu_plus: bool, m: f64) -> String {
    let head = format!(
        "v {} 0, mu = {}m:",
        if v_pos { ">" } else { "<" },
        if mu_plus { "+" } else { "-" }
    );
    let neg_mu = if mu_plus { -m } else { m };
    let edge = if neg_mu == 0.0 { "0".to_string() } else { format!("{neg_mu}") };
    let shifted = if neg_mu == 0.0 {
        "u1/v".to_string()
    } else if neg_mu > 0.0 {
        format!("u1/v + {neg_mu}")
    } else {
        format!("u1/v - {}", -neg_mu)
    };
    let window = if v_pos {
        format!("{edge} < E < {shifted}")
    } else {
        format!("{shifted} < E < {edge}")
    };
    format!("  {head:<16} {window}")
}

fn cmd_regions(args: &RegionsArgs) -> CliResult<()> {
    let cfg = Config::load(args.config.as_deref())?;
    let ch = resolve_channel(&args.channel, &cfg)?;
    let grid = resolve_grid(&args.constants, &cfg)?;
    let source = resolve_constants(args.constants.use_published_constants, &cfg)?;
    let e1 = log_constant(&ch, source, grid.as_ref())?;
    let u1 = spectra::log_u1(&ch, e1)?;
    let tag = if source == ConstantSource::Published && sweep::published_applies(&ch) {
        "published"
    } else {
        "computed"
    };
    println!("spectral regions of V(r) = v ln r");
    println!("channel  {ch}  L = {}", ch.l_eff());
    println!("e(1) = {}  [{tag}]", sweep::fmt9(e1));
    println!("u1   = {}", sweep::fmt9(u1));
    println!("bound states require u = v(mu + E) in (0, u1]; E = 0 exactly at u = u1");
    println!();
    for (v_pos, mu_plus) in [(true, true), (true, false), (false, true), (false, false)] {
        println!("{}", region_cell(v_pos, mu_plus, ch.m));
    }
    Ok(())
}
