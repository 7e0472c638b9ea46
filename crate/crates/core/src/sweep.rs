//! Coupling sweeps over the solvable families with deterministic CSV output.
//!
//! A [`SweepSpec`] fixes one potential family, one channel, and a coupling
//! grid; [`run_sweep`] evaluates the requested outputs (closed-form energy,
//! shooting-oracle energy, envelope bound) at every grid point and returns
//! one [`CsvRow`] per coupling. [`csv_document`] renders the rows
//! byte-reproducibly: fixed column order, nine significant digits, `\n` line
//! endings, empty fields for absent values — two identical runs produce
//! byte-identical files.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::channels::{Channel, Sign, SymmetryMode};
use crate::dirac::{self, OracleOptions};
use crate::envelope;
use crate::error::{Result, SolveError};
use crate::potential::PotentialModel;
use crate::radial;
use crate::spectra::{self, EigenvalueSolution};

/// CSV column header; fixed so downstream scripts can rely on it.
pub const CSV_HEADER: &str = "v,E_exact,E_oracle,E_envelope,region_lo,region_hi,status";

/// Grid spacing of the swept coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// Equally spaced couplings.
    Linear,
    /// Equally spaced in `ln v` (requires `v_min > 0`).
    Log,
}

impl Spacing {
    /// Lower-case label used on the command line and in config files.
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        }
    }
}

impl FromStr for Spacing {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            other => Err(SolveError::Domain(format!(
                "unknown spacing '{other}' (expected 'linear' or 'log')"
            ))),
        }
    }
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where the two shooting-derived reference constants (the unit-coupling
/// linear eigenvalue `P` and the unit-coupling log eigenvalue `e(1)`) come
/// from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantSource {
    /// Recompute both constants with the shooting solver (the default; the
    /// results are cached process-wide).
    Computed,
    /// Substitute the eight-digit reference values
    /// [`radial::PUBLISHED_LINEAR_P10`] and [`radial::PUBLISHED_LOG_E1_10`].
    /// They are tabulated for the `L = 1`, `ν = 0` channel only; any other
    /// channel falls back to the computed constants.
    Published,
}

impl FromStr for ConstantSource {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "computed" => Ok(ConstantSource::Computed),
            "published" => Ok(ConstantSource::Published),
            other => Err(SolveError::Domain(format!(
                "unknown constant source '{other}' (expected 'computed' or 'published')"
            ))),
        }
    }
}

/// Whether the published reference constants apply to this channel (they
/// were tabulated for the ground state at unit effective angular momentum).
#[must_use]
pub fn published_applies(ch: &Channel) -> bool {
    ch.nu == 0 && (ch.l_eff() - 1.0).abs() < 1e-12
}

/// The linear-shape principal value `P` for this channel under the chosen
/// constant source.
pub fn effective_linear_p(ch: &Channel, constants: ConstantSource) -> Result<f64> {
    match constants {
        ConstantSource::Published if published_applies(ch) => Ok(radial::PUBLISHED_LINEAR_P10),
        _ => radial::linear_p(ch.l_eff(), ch.nu),
    }
}

/// The unit-coupling log eigenvalue `e(1)` for this channel under the chosen
/// constant source.
pub fn effective_log_e1(ch: &Channel, constants: ConstantSource) -> Result<f64> {
    match constants {
        ConstantSource::Published if published_applies(ch) => Ok(radial::PUBLISHED_LOG_E1_10),
        _ => radial::log_e1(ch.l_eff(), ch.nu),
    }
}

/// Which energy columns a sweep fills in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOutputs {
    /// Closed-form (or reduced transcendental) energy.
    pub exact: bool,
    /// Shooting-oracle energy.
    pub oracle: bool,
    /// Envelope bound (log family only).
    pub envelope: bool,
}

impl Default for SweepOutputs {
    fn default() -> Self {
        SweepOutputs { exact: true, oracle: false, envelope: false }
    }
}

impl SweepOutputs {
    /// Parses a comma-separated list such as `exact,envelope`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let mut out = SweepOutputs { exact: false, oracle: false, envelope: false };
        for part in s.split(',') {
            match part.trim() {
                "exact" => out.exact = true,
                "oracle" => out.oracle = true,
                "envelope" => out.envelope = true,
                other => {
                    return Err(SolveError::Domain(format!(
                        "unknown output '{other}' (expected a comma-separated subset of \
                         exact, oracle, envelope)"
                    )));
                }
            }
        }
        Ok(out)
    }

    /// True when no column is requested.
    #[must_use]
    pub fn is_empty(self) -> bool {
        !(self.exact || self.oracle || self.envelope)
    }
}

/// The swept potential family. The coupling `v` is the sweep variable; any
/// remaining shape parameters are fixed for the whole sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepFamily {
    /// `V = v r²`
    Oscillator,
    /// `V = v r`
    Linear,
    /// `V = -v/r`
    Coulomb,
    /// `V = -v/r + c`
    ShiftedCoulomb {
        /// Constant shift.
        c: f64,
    },
    /// `V = a/r² - v/r + c`
    Kratzer {
        /// Inverse-square strength.
        a: f64,
        /// Constant shift.
        c: f64,
    },
    /// `V = v ln r`
    Log,
}

impl SweepFamily {
    /// The potential at coupling `v`.
    #[must_use]
    pub fn model_at(&self, v: f64) -> PotentialModel {
        match *self {
            SweepFamily::Oscillator => PotentialModel::Oscillator { v },
            SweepFamily::Linear => PotentialModel::Linear { v },
            SweepFamily::Coulomb => PotentialModel::Coulomb { v },
            SweepFamily::ShiftedCoulomb { c } => PotentialModel::ShiftedCoulomb { v, c },
            SweepFamily::Kratzer { a, c } => PotentialModel::Kratzer { a, v, c },
            SweepFamily::Log => PotentialModel::Log { v },
        }
    }

    /// Family name matching [`PotentialModel::family_name`].
    #[must_use]
    pub fn name(&self) -> &'static str {
        match self {
            SweepFamily::Oscillator => "oscillator",
            SweepFamily::Linear => "linear",
            SweepFamily::Coulomb => "coulomb",
            SweepFamily::ShiftedCoulomb { .. } => "shifted-coulomb",
            SweepFamily::Kratzer { .. } => "kratzer",
            SweepFamily::Log => "log",
        }
    }

    /// Closed-route energy at coupling `v`.
    pub fn exact_energy(
        &self,
        v: f64,
        ch: &Channel,
        constants: ConstantSource,
    ) -> Result<EigenvalueSolution> {
        match *self {
            SweepFamily::Oscillator => spectra::oscillator_energy(v, ch),
            SweepFamily::Linear => {
                spectra::linear_energy_with_p(v, ch, effective_linear_p(ch, constants)?)
            }
            SweepFamily::Coulomb => spectra::coulomb_energy(v, ch),
            SweepFamily::ShiftedCoulomb { c } => spectra::shifted_coulomb_energy(v, c, ch),
            SweepFamily::Kratzer { a, c } => spectra::kratzer_energy(a, v, c, ch),
            SweepFamily::Log => {
                spectra::log_energy_with_e1(v, ch, effective_log_e1(ch, constants)?)
            }
        }
    }
}

/// A full sweep description: family, channel, coupling grid, and outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    /// Swept potential family.
    pub family: SweepFamily,
    /// Bound-state channel.
    pub channel: Channel,
    /// First coupling on the grid.
    pub v_min: f64,
    /// Last coupling on the grid.
    pub v_max: f64,
    /// Number of grid points (`≥ 2`).
    pub n_points: usize,
    /// Grid spacing.
    pub spacing: Spacing,
    /// Which energy columns to fill.
    pub outputs: SweepOutputs,
    /// Source of the shooting-derived reference constants.
    pub constants: ConstantSource,
    /// Energy tolerance handed to the shooting oracle.
    pub oracle_tol: f64,
}

impl SweepSpec {
    /// Checks the grid and output invariants: `v_min < v_max`, `n_points ≥
    /// 2`, log spacing only for positive ranges, envelope output only for
    /// the log family, at least one output requested.
    pub fn validate(&self) -> Result<()> {
        if !self.v_min.is_finite() || !self.v_max.is_finite() {
            return Err(SolveError::Domain(format!(
                "sweep range [{}, {}] must be finite",
                self.v_min, self.v_max
            )));
        }
        if self.v_min >= self.v_max {
            return Err(SolveError::Domain(format!(
                "sweep range requires v_min < v_max (got {} .. {})",
                self.v_min, self.v_max
            )));
        }
        if self.n_points < 2 {
            return Err(SolveError::Domain(format!(
                "sweep needs at least 2 points (got {})",
                self.n_points
            )));
        }
        if self.spacing == Spacing::Log && self.v_min <= 0.0 {
            return Err(SolveError::Domain(format!(
                "log spacing requires v_min > 0 (got {})",
                self.v_min
            )));
        }
        if self.outputs.is_empty() {
            return Err(SolveError::Domain(
                "at least one output column (exact, oracle, envelope) must be requested".into(),
            ));
        }
        if self.outputs.envelope && !matches!(self.family, SweepFamily::Log) {
            return Err(SolveError::NotApplicable(format!(
                "the envelope bound is implemented for the log family; \
                 family '{}' has no envelope output",
                self.name()
            )));
        }
        if !(self.oracle_tol.is_finite() && self.oracle_tol > 0.0) {
            return Err(SolveError::Domain(format!(
                "oracle tolerance {} must be positive",
                self.oracle_tol
            )));
        }
        Ok(())
    }

    /// Family name (convenience passthrough).
    #[must_use]
    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// The `k`-th coupling on the grid; the endpoints land exactly on
    /// `v_min` and `v_max`.
    #[must_use]
    pub fn v_at(&self, k: usize) -> f64 {
        if k == 0 {
            return self.v_min;
        }
        if k + 1 >= self.n_points {
            return self.v_max;
        }
        let t = k as f64 / (self.n_points - 1) as f64;
        match self.spacing {
            Spacing::Linear => self.v_min + (self.v_max - self.v_min) * t,
            Spacing::Log => (self.v_min.ln() + (self.v_max.ln() - self.v_min.ln()) * t).exp(),
        }
    }
}

/// The bundled reference sweep: the log potential in the baseline channel
/// (`d = 3`, `j = 1/2`, `τ = +1`, spin mode, `ν = 0`, `m = 1`), 50
/// log-spaced couplings from 0.05 to 14, exact energy plus envelope lower
/// bound.
#[must_use]
pub fn reference_log_sweep() -> SweepSpec {
    let channel = Channel::new(3, 1, Sign::Plus, SymmetryMode::Spin, 0, 1.0)
        .expect("baseline channel parameters are valid");
    SweepSpec {
        family: SweepFamily::Log,
        channel,
        v_min: 0.05,
        v_max: 14.0,
        n_points: 50,
        spacing: Spacing::Log,
        outputs: SweepOutputs { exact: true, oracle: false, envelope: true },
        constants: ConstantSource::Computed,
        oracle_tol: dirac::DEFAULT_TOL_E,
    }
}

/// Row-level outcome of one sweep point. Variant order matters: when several
/// outputs disagree the row keeps the worst outcome
/// (`Failed` > `NoSpectrum` > `Ok`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowStatus {
    /// All requested outputs were computed.
    Ok,
    /// The channel has no discrete state at this coupling.
    NoSpectrum,
    /// A solver failed at this coupling.
    Failed,
}

impl RowStatus {
    /// CSV cell text.
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::NoSpectrum => "no-spectrum",
            RowStatus::Failed => "failed",
        }
    }
}

/// One sweep point. Column order mirrors [`CSV_HEADER`]; `None` renders as
/// an empty field.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    /// Coupling.
    pub v: f64,
    /// Closed-route energy.
    pub e_exact: Option<f64>,
    /// Shooting-oracle energy.
    pub e_oracle: Option<f64>,
    /// Envelope bound.
    pub e_envelope: Option<f64>,
    /// Spectral window `(lo, hi)` (log family only).
    pub region: Option<(f64, f64)>,
    /// Row outcome.
    pub status: RowStatus,
}

fn status_of(err: &SolveError) -> RowStatus {
    match err {
        SolveError::NoDiscreteSpectrum(_) | SolveError::NoBoundState(_) => RowStatus::NoSpectrum,
        _ => RowStatus::Failed,
    }
}

/// Runs the sweep. Grid-level problems (bad range, unavailable constants)
/// fail the whole call; per-point problems are reported in the row status
/// and leave the affected cells empty.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<CsvRow>> {
    spec.validate()?;
    let ch = &spec.channel;
    // The log-family constants e(1) and u1 do not depend on the coupling;
    // solve for them once per sweep.
    let log_constants = match spec.family {
        SweepFamily::Log => {
            let e1 = effective_log_e1(ch, spec.constants)?;
            let u1 = spectra::log_u1(ch, e1)?;
            Some((e1, u1))
        }
        _ => None,
    };
    let opts = OracleOptions { tol: spec.oracle_tol, ..OracleOptions::default() };
    let mut rows = Vec::with_capacity(spec.n_points);
    for k in 0..spec.n_points {
        rows.push(evaluate_point(spec, spec.v_at(k), log_constants, &opts));
    }
    Ok(rows)
}

fn evaluate_point(
    spec: &SweepSpec,
    v: f64,
    log_constants: Option<(f64, f64)>,
    opts: &OracleOptions,
) -> CsvRow {
    let ch = &spec.channel;
    let mut row =
        CsvRow { v, e_exact: None, e_oracle: None, e_envelope: None, region: None, status: RowStatus::Ok };
    // Every family loses its discrete states at zero coupling.
    if v == 0.0 {
        row.status = RowStatus::NoSpectrum;
        return row;
    }
    if let Some((_, u1)) = log_constants {
        if let Ok(region) = spectra::log_spectral_region_with_u1(v, ch, u1) {
            row.region = Some((region.e_lo, region.e_hi));
        }
    }
    let mut worst = RowStatus::Ok;
    if spec.outputs.exact {
        let exact = match (spec.family, log_constants) {
            (SweepFamily::Log, Some((e1, _))) => spectra::log_energy_with_e1(v, ch, e1),
            (family, _) => family.exact_energy(v, ch, spec.constants),
        };
        match exact {
            Ok(sol) => row.e_exact = Some(sol.energy),
            Err(e) => worst = worst.max(status_of(&e)),
        }
    }
    if spec.outputs.oracle {
        match dirac::dirac_energy(&spec.family.model_at(v), ch, opts) {
            Ok(e) => row.e_oracle = Some(e),
            Err(e) => worst = worst.max(status_of(&e)),
        }
    }
    if spec.outputs.envelope {
        match envelope::log_envelope_bound(v, ch) {
            Ok(bound) => row.e_envelope = Some(bound.energy),
            Err(e) => worst = worst.max(status_of(&e)),
        }
    }
    row.status = worst;
    row
}

// ---------------------------------------------------------------------------
// Deterministic rendering.
// ---------------------------------------------------------------------------

/// Formats a value with nine significant digits: plain decimal notation
/// within a readable magnitude window, scientific notation outside it. The
/// mapping is a pure function of the bits, so repeated runs produce
/// byte-identical output.
#[must_use]
pub fn fmt9(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Decimal exponent via the `{:e}` renderer (exact, unlike log10+floor).
    let sci = format!("{x:e}");
    let exp: i32 = sci
        .rsplit(['e', 'E'])
        .next()
        .and_then(|t| t.parse().ok())
        .unwrap_or(0);
    if !(-4..9).contains(&exp) {
        format!("{x:.8e}")
    } else {
        let prec = (8 - exp) as usize;
        format!("{x:.prec$}")
    }
}

fn opt9(x: Option<f64>) -> String {
    x.map(fmt9).unwrap_or_default()
}

/// One CSV data line (no trailing newline).
#[must_use]
pub fn csv_line(row: &CsvRow) -> String {
    let (region_lo, region_hi) = match row.region {
        Some((lo, hi)) => (fmt9(lo), fmt9(hi)),
        None => (String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{}",
        fmt9(row.v),
        opt9(row.e_exact),
        opt9(row.e_oracle),
        opt9(row.e_envelope),
        region_lo,
        region_hi,
        row.status.as_str()
    )
}

/// Renders the full CSV document: header, one line per row, `\n` endings,
/// trailing newline.
#[must_use]
pub fn csv_document(rows: &[CsvRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(row));
        out.push('\n');
    }
    out
}

/// Writes [`csv_document`] to `w`.
pub fn write_csv<W: Write>(w: &mut W, rows: &[CsvRow]) -> io::Result<()> {
    w.write_all(csv_document(rows).as_bytes())
}

/// A plain-text gnuplot script that plots the CSV produced by this sweep;
/// only the series the sweep actually emitted are included.
#[must_use]
pub fn gnuplot_script(spec: &SweepSpec, csv_path: &str) -> String {
    let mut series: Vec<String> = Vec::new();
    if spec.outputs.exact {
        series.push(format!("'{csv_path}' skip 1 using 1:2 with lines title 'E exact'"));
    }
    if spec.outputs.oracle {
        series
            .push(format!("'{csv_path}' skip 1 using 1:3 with points pt 7 ps 0.5 title 'E oracle'"));
    }
    if spec.outputs.envelope {
        series.push(format!(
            "'{csv_path}' skip 1 using 1:4 with lines dashtype 2 title 'envelope bound'"
        ));
    }
    let mut s = String::new();
    s.push_str("# generated plotting script; pairs with the CSV it references\n");
    s.push_str("set datafile separator ','\n");
    s.push_str("set xlabel 'coupling v'\n");
    s.push_str("set ylabel 'energy E'\n");
    s.push_str("set key left top\n");
    if spec.spacing == Spacing::Log {
        s.push_str("set logscale x\n");
    }
    s.push_str(&format!("set title '{} spectrum, channel {}'\n", spec.name(), spec.channel));
    s.push_str("plot ");
    s.push_str(&series.join(", \\\n     "));
    s.push('\n');
    s
}
