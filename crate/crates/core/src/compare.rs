//! Comparison checks: pointwise-ordered potentials must produce ordered
//! bound-state energies.
//!
//! The central claim being exercised: if `V_a(r) ≤ V_b(r)` for all `r > 0`
//! and both potentials support a bound state in the same channel, then
//! `E_a ≤ E_b`. The machinery here
//!
//! 1. establishes (or refutes) the pointwise ordering on a wide sample of
//!    radii,
//! 2. computes both energies with the relativistic oracle — never with the
//!    closed forms, so the check does not assume what it is verifying,
//! 3. compares the energies with a small slack tied to the oracle tolerance,
//! 4. optionally perturbs one energy (fault injection) to prove the harness
//!    actually detects violations, and
//! 5. scans the straight-line homotopy `V_λ = (1-λ)V_a + λV_b`, whose energy
//!    must be monotone in `λ` for ordered endpoints.
//!
//! A built-in corpus of ordered pairs (plus one deliberately crossing pair)
//! covers all six solvable families, both symmetry modes, and custom shapes.

use crate::channels::{Channel, Sign, SymmetryMode};
use crate::dirac::{self, OracleOptions};
use crate::error::{Result, SolveError};
use crate::potential::PotentialModel;
use crate::spectra;
use std::fmt;

/// Number of radii sampled when checking pointwise ordering.
const ORDER_SAMPLES: usize = 1000;
/// Radial range sampled when checking pointwise ordering.
const ORDER_RANGE: (f64, f64) = (1e-4, 1e3);

/// How two potentials relate pointwise on the sampled radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialOrder {
    /// `V_lhs(r) ≤ V_rhs(r)` everywhere sampled.
    BelowOrEqual,
    /// `V_lhs(r) ≥ V_rhs(r)` everywhere sampled.
    AboveOrEqual,
    /// Indistinguishable at every sampled radius.
    Equal,
    /// The difference changes sign near the recorded radius.
    Crossing {
        /// A radius where the sign of `V_lhs - V_rhs` flips.
        r: f64,
    },
}

/// Samples `V_lhs - V_rhs` on a log-spaced radial grid and classifies the
/// pointwise ordering.
#[must_use]
pub fn verify_ordering(lhs: &PotentialModel, rhs: &PotentialModel) -> PotentialOrder {
    let (r_lo, r_hi) = ORDER_RANGE;
    let step = (r_hi / r_lo).ln() / (ORDER_SAMPLES - 1) as f64;
    let mut any_pos = false;
    let mut any_neg = false;
    for k in 0..ORDER_SAMPLES {
        let r = r_lo * (step * k as f64).exp();
        let a = lhs.eval(r);
        let b = rhs.eval(r);
        let scale = a.abs().max(b.abs()).max(1.0);
        let d = a - b;
        if d > 1e-12 * scale {
            any_pos = true;
        } else if d < -1e-12 * scale {
            any_neg = true;
        }
        if any_pos && any_neg {
            return PotentialOrder::Crossing { r };
        }
    }
    match (any_pos, any_neg) {
        (false, false) => PotentialOrder::Equal,
        (false, true) => PotentialOrder::BelowOrEqual,
        (true, false) => PotentialOrder::AboveOrEqual,
        (true, true) => unreachable!("crossing returns early"),
    }
}

/// One ordered-pair test: two potentials, the channels to compare them in,
/// and optional explicit oracle search windows (needed for custom shapes).
#[derive(Debug)]
pub struct ComparisonCase {
    /// Left-hand potential.
    pub lhs: PotentialModel,
    /// Right-hand potential.
    pub rhs: PotentialModel,
    /// Channels to run the comparison in.
    pub channels: Vec<Channel>,
    /// Short name used in reports.
    pub label: String,
    /// Energy search window for the left side (custom shapes).
    pub search_lhs: Option<(f64, f64)>,
    /// Energy search window for the right side (custom shapes).
    pub search_rhs: Option<(f64, f64)>,
}

/// Outcome category for a single channel of a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStatus {
    /// Energies ordered as the potentials are.
    Confirmed,
    /// Energies ordered against the potentials: the comparison claim failed.
    Violated,
    /// The potentials cross; no ordering is claimed.
    NotComparable,
    /// At least one side has no discrete spectrum in this channel; the
    /// claim's hypotheses are not met.
    NoSpectrum,
    /// The oracle failed outright; no verdict.
    Failed,
}

impl CaseStatus {
    fn tag(self) -> &'static str {
        match self {
            CaseStatus::Confirmed => "CONFIRMED",
            CaseStatus::Violated => "VIOLATED",
            CaseStatus::NotComparable => "NOT-COMPARABLE",
            CaseStatus::NoSpectrum => "NO-SPECTRUM",
            CaseStatus::Failed => "FAILED",
        }
    }
}

/// Per-channel comparison record.
#[derive(Debug, Clone)]
pub struct ChannelOutcome {
    /// The channel compared in.
    pub channel: Channel,
    /// Oracle energy of the left side, when it exists.
    pub e_lhs: Option<f64>,
    /// Oracle energy of the right side, when it exists.
    pub e_rhs: Option<f64>,
    /// Verdict.
    pub status: CaseStatus,
    /// Explanation (which side lacked a spectrum, crossing radius, ...).
    pub note: String,
}

/// All outcomes of one case.
#[derive(Debug, Clone)]
pub struct CaseReport {
    /// Case name.
    pub label: String,
    /// Pointwise ordering found.
    pub order: PotentialOrder,
    /// One outcome per channel.
    pub outcomes: Vec<ChannelOutcome>,
}

/// Aggregate over a corpus.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    /// Per-case reports, in corpus order.
    pub cases: Vec<CaseReport>,
    /// Channel-level counts by status.
    pub confirmed: usize,
    /// See [`CaseStatus::Violated`].
    pub violated: usize,
    /// See [`CaseStatus::NotComparable`].
    pub not_comparable: usize,
    /// See [`CaseStatus::NoSpectrum`].
    pub no_spectrum: usize,
    /// See [`CaseStatus::Failed`].
    pub failed: usize,
}

impl ComparisonReport {
    /// True when no channel produced a violation or an outright failure.
    #[must_use]
    pub fn ok(&self) -> bool {
        self.violated == 0 && self.failed == 0
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for case in &self.cases {
            for out in &case.outcomes {
                let fmt_e = |e: Option<f64>| match e {
                    Some(x) => format!("{x:.9}"),
                    None => "---".into(),
                };
                writeln!(
                    f,
                    "{:<14} {} {} E_lhs={} E_rhs={}{}",
                    out.status.tag(),
                    case.label,
                    out.channel,
                    fmt_e(out.e_lhs),
                    fmt_e(out.e_rhs),
                    if out.note.is_empty() {
                        String::new()
                    } else {
                        format!(" ({})", out.note)
                    }
                )?;
            }
        }
        write!(
            f,
            "total: {} confirmed, {} violated, {} not-comparable, {} no-spectrum, {} failed",
            self.confirmed, self.violated, self.not_comparable, self.no_spectrum, self.failed
        )
    }
}

/// Options for corpus runs.
#[derive(Debug, Clone, Copy)]
pub struct CompareOptions {
    /// Oracle tolerance on each energy.
    pub oracle_tol: f64,
    /// Relative slack allowed when comparing the two energies.
    pub slack: f64,
    /// Offset added to every left-hand energy before comparison. Zero in
    /// normal operation; non-zero only to prove violations are detected.
    pub inject_offset: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions { oracle_tol: 1e-9, slack: 1e-6, inject_offset: 0.0 }
    }
}

/// Closed-route energy for the solvable families; `None` for custom shapes,
/// which only the oracle can handle.
fn closed_form_energy(pot: &PotentialModel, ch: &Channel) -> Option<Result<f64>> {
    let sol = match pot {
        PotentialModel::Oscillator { v } => spectra::oscillator_energy(*v, ch),
        PotentialModel::Linear { v } => spectra::linear_energy(*v, ch),
        PotentialModel::Coulomb { v } => spectra::coulomb_energy(*v, ch),
        PotentialModel::ShiftedCoulomb { v, c } => spectra::shifted_coulomb_energy(*v, *c, ch),
        PotentialModel::Kratzer { a, v, c } => spectra::kratzer_energy(*a, *v, *c, ch),
        PotentialModel::Log { v } => spectra::log_energy(*v, ch),
        PotentialModel::Custom { .. } => return None,
    };
    Some(sol.map(|s| s.energy))
}

/// One side's energy: closed forms when available, the shooting oracle
/// otherwise.
fn energy_side(
    pot: &PotentialModel,
    ch: &Channel,
    search: Option<(f64, f64)>,
    opts: &CompareOptions,
) -> std::result::Result<f64, (CaseStatus, String)> {
    let res = match closed_form_energy(pot, ch) {
        Some(r) => r,
        None => {
            let oracle_opts = OracleOptions { tol: opts.oracle_tol, grid: None, search };
            dirac::dirac_energy(pot, ch, &oracle_opts)
        }
    };
    match res {
        Ok(e) => Ok(e),
        Err(SolveError::NoDiscreteSpectrum(msg) | SolveError::NoBoundState(msg)) => {
            Err((CaseStatus::NoSpectrum, msg))
        }
        Err(e) => Err((CaseStatus::Failed, e.to_string())),
    }
}

/// Runs one case across its channels.
pub fn run_case(case: &ComparisonCase, opts: &CompareOptions) -> CaseReport {
    let order = verify_ordering(&case.lhs, &case.rhs);
    let mut outcomes = Vec::with_capacity(case.channels.len());
    for ch in &case.channels {
        if let PotentialOrder::Crossing { r } = order {
            outcomes.push(ChannelOutcome {
                channel: *ch,
                e_lhs: None,
                e_rhs: None,
                status: CaseStatus::NotComparable,
                note: format!("potentials cross near r = {r:.6}"),
            });
            continue;
        }
        let lhs = energy_side(&case.lhs, ch, case.search_lhs, opts);
        let rhs = energy_side(&case.rhs, ch, case.search_rhs, opts);
        let outcome = match (lhs, rhs) {
            (Ok(mut e_l), Ok(e_r)) => {
                e_l += opts.inject_offset;
                let slack = opts.slack * (1.0 + e_l.abs().max(e_r.abs()));
                let (status, note) = match order {
                    PotentialOrder::BelowOrEqual if e_l <= e_r + slack => {
                        (CaseStatus::Confirmed, String::new())
                    }
                    PotentialOrder::AboveOrEqual if e_l >= e_r - slack => {
                        (CaseStatus::Confirmed, String::new())
                    }
                    PotentialOrder::Equal if (e_l - e_r).abs() <= slack => {
                        (CaseStatus::Confirmed, String::new())
                    }
                    _ => (
                        CaseStatus::Violated,
                        format!("energy order contradicts potential order ({order:?})"),
                    ),
                };
                ChannelOutcome { channel: *ch, e_lhs: Some(e_l), e_rhs: Some(e_r), status, note }
            }
            (Err((status, msg)), rhs) => ChannelOutcome {
                channel: *ch,
                e_lhs: None,
                e_rhs: rhs.ok(),
                status,
                note: format!("lhs: {msg}"),
            },
            (Ok(e_l), Err((status, msg))) => ChannelOutcome {
                channel: *ch,
                e_lhs: Some(e_l),
                e_rhs: None,
                status,
                note: format!("rhs: {msg}"),
            },
        };
        outcomes.push(outcome);
    }
    CaseReport { label: case.label.clone(), order, outcomes }
}

/// Runs every case and aggregates the counts.
pub fn run_corpus(cases: &[ComparisonCase], opts: &CompareOptions) -> ComparisonReport {
    let mut report = ComparisonReport {
        cases: Vec::with_capacity(cases.len()),
        confirmed: 0,
        violated: 0,
        not_comparable: 0,
        no_spectrum: 0,
        failed: 0,
    };
    for case in cases {
        let cr = run_case(case, opts);
        for out in &cr.outcomes {
            match out.status {
                CaseStatus::Confirmed => report.confirmed += 1,
                CaseStatus::Violated => report.violated += 1,
                CaseStatus::NotComparable => report.not_comparable += 1,
                CaseStatus::NoSpectrum => report.no_spectrum += 1,
                CaseStatus::Failed => report.failed += 1,
            }
        }
        report.cases.push(cr);
    }
    report
}

/// The straight-line homotopy between two ordered potentials, with the
/// oracle energy at each step.
#[derive(Debug, Clone)]
pub struct FamilyScan {
    /// Interpolation parameters in `[0, 1]`.
    pub lambdas: Vec<f64>,
    /// Oracle energy at each parameter.
    pub energies: Vec<f64>,
    /// Finite-difference slopes `ΔE/Δλ` between consecutive samples
    /// (one fewer entry than `energies`).
    pub slopes: Vec<f64>,
    /// Whether the energies are non-decreasing (up to comparison slack).
    pub monotone: bool,
}

/// Solves the interpolated family `V_λ = (1-λ)·V_lhs + λ·V_rhs` at `steps`
/// evenly spaced `λ` and checks that the energy is monotone. Requires
/// `V_lhs ≤ V_rhs` pointwise.
pub fn family_scan(
    lhs: &PotentialModel,
    rhs: &PotentialModel,
    ch: &Channel,
    steps: usize,
    opts: &CompareOptions,
) -> Result<FamilyScan> {
    if steps < 2 {
        return Err(SolveError::Domain("interpolation scan needs at least 2 steps".into()));
    }
    match verify_ordering(lhs, rhs) {
        PotentialOrder::BelowOrEqual | PotentialOrder::Equal => {}
        other => {
            return Err(SolveError::NotComparable(format!(
                "interpolation scan needs V_lhs <= V_rhs pointwise, found {other:?}"
            )));
        }
    }
    let oracle = |pot: &PotentialModel, search: Option<(f64, f64)>| {
        dirac::dirac_energy(pot, ch, &OracleOptions { tol: opts.oracle_tol, grid: None, search })
    };
    let e0 = oracle(lhs, None)?;
    let e1 = oracle(rhs, None)?;
    // Window for the interior solves: the endpoint range plus generous
    // margin. (Monotonicity would put every interior energy inside the
    // endpoint range; the margin keeps the search honest rather than
    // assuming that.)
    let (w_lo, w_hi) = {
        let lo = e0.min(e1);
        let hi = e0.max(e1);
        let pad = 0.5 * (1.0 + hi - lo);
        (lo - pad, hi + pad)
    };
    let mut lambdas = Vec::with_capacity(steps);
    let mut energies = Vec::with_capacity(steps);
    for k in 0..steps {
        let lam = k as f64 / (steps - 1) as f64;
        let e = if k == 0 {
            e0
        } else if k == steps - 1 {
            e1
        } else {
            let a = lhs.clone();
            let b = rhs.clone();
            let mix = PotentialModel::custom(
                move |r| (1.0 - lam) * a.eval(r) + lam * b.eval(r),
                1.0,
                format!("mix lambda={lam:.3}"),
            );
            oracle(&mix, Some((w_lo, w_hi)))?
        };
        lambdas.push(lam);
        energies.push(e);
    }
    let slopes: Vec<f64> = energies
        .windows(2)
        .zip(lambdas.windows(2))
        .map(|(e, l)| (e[1] - e[0]) / (l[1] - l[0]))
        .collect();
    let slack = opts.slack * (1.0 + energies.iter().fold(0.0f64, |m, e| m.max(e.abs())));
    // The λ spacing is uniform, so a slope floor of -slack/Δλ is exactly the
    // per-step energy decrease allowed by the comparison slack.
    let dlam = lambdas[1] - lambdas[0];
    let monotone = slopes.iter().all(|s| *s >= -slack / dlam);
    Ok(FamilyScan { lambdas, energies, slopes, monotone })
}

/// A solvable family with a designated scan parameter, for derivative sign
/// checks against the closed forms.
#[derive(Debug, Clone, Copy)]
pub enum KnownFamily {
    /// `v r²`, scanned in `v`; `∂V/∂v = r² ≥ 0`.
    Oscillator,
    /// `v r`, scanned in `v`; `∂V/∂v = r ≥ 0`.
    Linear,
    /// `-v/r`, scanned in `v`; `∂V/∂v = -1/r ≤ 0`.
    Coulomb,
    /// `-v/r + c` at fixed `c`, scanned in `v`; `∂V/∂v ≤ 0`.
    ShiftedCoulombStrength {
        /// The fixed shift.
        c: f64,
    },
    /// `-v/r + c` at fixed `v`, scanned in `c`; `∂V/∂c = 1 ≥ 0`.
    ShiftedCoulombShift {
        /// The fixed strength.
        v: f64,
    },
    /// `a/r² - v/r + c` at fixed `a, c`, scanned in `v`; `∂V/∂v ≤ 0`.
    Kratzer {
        /// Inverse-square strength.
        a: f64,
        /// Constant shift.
        c: f64,
    },
    /// `v ln r`, scanned in `v`; `∂V/∂v = ln r` has no definite sign, so no
    /// monotonicity is claimed.
    Log,
}

/// Result of a derivative sign check at one parameter value.
#[derive(Debug, Clone)]
pub struct DerivativeSignOutcome {
    /// Family and parameter description.
    pub family: String,
    /// Parameter value the derivative was taken at.
    pub at: f64,
    /// Finite-difference derivative of the oracle energy.
    pub derivative: f64,
    /// The same derivative by the wavefunction route:
    /// `2∫ (∂V/∂a) ψ_principal² dr`.
    pub inner_product: f64,
    /// Sign implied by the pointwise parameter derivative of the potential
    /// (`None` when that derivative has no definite sign).
    pub expected_sign: Option<i8>,
    /// Whether the computed derivative is consistent with the expectation.
    pub consistent: bool,
    /// Whether the two derivative routes agree to working accuracy.
    pub identity_ok: bool,
}

impl KnownFamily {
    /// The parameterized potential with its pointwise derivative, for the
    /// derivative identity machinery.
    fn potential_family(self) -> dirac::PotentialFamily {
        match self {
            KnownFamily::Oscillator => dirac::PotentialFamily::oscillator_coupling(),
            KnownFamily::Linear => dirac::PotentialFamily::linear_coupling(),
            KnownFamily::Coulomb => dirac::PotentialFamily::coulomb_coupling(),
            KnownFamily::ShiftedCoulombStrength { c } => {
                dirac::PotentialFamily::shifted_coulomb_strength(c)
            }
            KnownFamily::ShiftedCoulombShift { v } => dirac::PotentialFamily::coulomb_shift(v, 0.0),
            KnownFamily::Kratzer { a, c } => dirac::PotentialFamily::kratzer_strength(a, c),
            KnownFamily::Log => dirac::PotentialFamily::log_coupling(),
        }
    }

    /// Sign of `∂V/∂parameter` when it is pointwise definite.
    fn expected_sign(self) -> Option<i8> {
        match self {
            KnownFamily::Oscillator
            | KnownFamily::Linear
            | KnownFamily::ShiftedCoulombShift { .. } => Some(1),
            KnownFamily::Coulomb
            | KnownFamily::ShiftedCoulombStrength { .. }
            | KnownFamily::Kratzer { .. } => Some(-1),
            KnownFamily::Log => None,
        }
    }
}

/// Evaluates the energy-derivative identity for the family at each sample
/// parameter value and compares the finite-difference derivative against
/// both the pointwise sign of `∂V/∂parameter` and the wavefunction
/// inner-product route.
pub fn derivative_sign_check(
    family: KnownFamily,
    samples: &[f64],
    ch: &Channel,
) -> Result<Vec<DerivativeSignOutcome>> {
    let fam = family.potential_family();
    let expected_sign = family.expected_sign();
    let opts = OracleOptions::default();
    samples
        .iter()
        .map(|&x| {
            let check = dirac::energy_derivative_identity(&fam, x, ch, &opts)?;
            let scale = 1.0 + check.lhs.abs().max(check.rhs.abs());
            // The finite differences carry oracle noise of order tol/delta;
            // the sign test allows that much leakage past zero.
            let consistent = match expected_sign {
                Some(s) => f64::from(s) * check.lhs >= -1e-6 * scale,
                None => true,
            };
            let identity_ok = check.defect <= 1e-4 * scale;
            Ok(DerivativeSignOutcome {
                family: format!("{family:?}"),
                at: x,
                derivative: check.lhs,
                inner_product: check.rhs,
                expected_sign,
                consistent,
                identity_ok,
            })
        })
        .collect()
}

/// The built-in comparison corpus: thirteen ordered pairs spanning every
/// solvable family, both symmetry modes, and custom shapes, plus one
/// deliberately crossing pair that must come back `NOT-COMPARABLE`.
#[must_use]
pub fn built_in_corpus() -> Vec<ComparisonCase> {
    let spin = Channel::new(3, 1, Sign::Plus, SymmetryMode::Spin, 0, 1.0).unwrap();
    let pseudo = Channel::new(3, 1, Sign::Plus, SymmetryMode::Pseudo, 0, 1.0).unwrap();
    let simple = |label: &str, lhs: PotentialModel, rhs: PotentialModel, ch: Channel| {
        ComparisonCase {
            lhs,
            rhs,
            channels: vec![ch],
            label: label.into(),
            search_lhs: None,
            search_rhs: None,
        }
    };
    vec![
        simple(
            "osc-strength",
            PotentialModel::Oscillator { v: 1.0 },
            PotentialModel::Oscillator { v: 2.0 },
            spin,
        ),
        simple(
            "linear-strength",
            PotentialModel::Linear { v: 1.0 },
            PotentialModel::Linear { v: 1.5 },
            spin,
        ),
        simple(
            "coulomb-strength",
            PotentialModel::Coulomb { v: 2.0 },
            PotentialModel::Coulomb { v: 1.0 },
            spin,
        ),
        simple(
            "coulomb-shift",
            PotentialModel::ShiftedCoulomb { v: 1.0, c: 0.0 },
            PotentialModel::ShiftedCoulomb { v: 1.0, c: 0.5 },
            spin,
        ),
        simple(
            "kratzer-core",
            PotentialModel::Kratzer { a: 0.1, v: 1.0, c: 0.0 },
            PotentialModel::Kratzer { a: 0.2, v: 1.0, c: 0.0 },
            spin,
        ),
        simple(
            "kratzer-strength",
            PotentialModel::Kratzer { a: 0.1, v: 1.0, c: 0.0 },
            PotentialModel::Kratzer { a: 0.1, v: 0.5, c: 0.0 },
            spin,
        ),
        simple(
            "coulomb-vs-shifted",
            PotentialModel::Coulomb { v: 1.0 },
            PotentialModel::ShiftedCoulomb { v: 1.0, c: 0.3 },
            spin,
        ),
        simple(
            "osc-pseudo",
            PotentialModel::Oscillator { v: 1.0 },
            PotentialModel::Oscillator { v: 1.3 },
            pseudo,
        ),
        simple(
            "coulomb-pseudo",
            PotentialModel::Coulomb { v: -1.0 },
            PotentialModel::Coulomb { v: -2.0 },
            pseudo,
        ),
        ComparisonCase {
            lhs: PotentialModel::Log { v: 2.0 },
            rhs: PotentialModel::custom(|r: f64| r.ln() + 0.1, 2.0, "ln r + 0.1"),
            channels: vec![spin],
            label: "log-vs-lifted-log".into(),
            search_lhs: None,
            search_rhs: Some((0.0, 5.0)),
        },
        ComparisonCase {
            lhs: PotentialModel::Oscillator { v: 1.0 },
            rhs: PotentialModel::custom(|r: f64| r * r * (1.0 + 0.25 * r * r), 1.0, "r^2 + r^4/4"),
            channels: vec![spin],
            label: "osc-vs-quartic".into(),
            search_lhs: None,
            search_rhs: Some((1.0 + 1e-6, 9.0)),
        },
        ComparisonCase {
            lhs: PotentialModel::Log { v: 1.5 },
            rhs: PotentialModel::custom(|r: f64| r.ln() + 0.3, 1.5, "ln r + 0.3"),
            channels: vec![pseudo],
            label: "log-pseudo".into(),
            search_lhs: None,
            search_rhs: Some((1.0 + 1e-6, 20.0)),
        },
        simple(
            "kratzer-sign",
            PotentialModel::Kratzer { a: -0.1, v: 1.0, c: 0.0 },
            PotentialModel::Kratzer { a: 0.1, v: 1.0, c: 0.0 },
            spin,
        ),
        simple(
            "osc-vs-linear-crossing",
            PotentialModel::Oscillator { v: 1.0 },
            PotentialModel::Linear { v: 1.0 },
            spin,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spin() -> Channel {
        Channel::new(3, 1, Sign::Plus, SymmetryMode::Spin, 0, 1.0).unwrap()
    }

    #[test]
    fn ordering_classification() {
        let a = PotentialModel::Oscillator { v: 1.0 };
        let b = PotentialModel::Oscillator { v: 2.0 };
        assert_eq!(verify_ordering(&a, &b), PotentialOrder::BelowOrEqual);
        assert_eq!(verify_ordering(&b, &a), PotentialOrder::AboveOrEqual);
        assert_eq!(verify_ordering(&a, &a.clone()), PotentialOrder::Equal);
        let lin = PotentialModel::Linear { v: 1.0 };
        assert!(matches!(verify_ordering(&a, &lin), PotentialOrder::Crossing { .. }));
        // -1/r < r everywhere on r > 0: ordered, not crossing.
        let cou = PotentialModel::Coulomb { v: 1.0 };
        assert_eq!(verify_ordering(&cou, &lin), PotentialOrder::BelowOrEqual);
    }

    #[test]
    fn confirmed_case_and_fault_injection() {
        let case = ComparisonCase {
            lhs: PotentialModel::Coulomb { v: 2.0 },
            rhs: PotentialModel::Coulomb { v: 1.0 },
            channels: vec![spin()],
            label: "coulomb".into(),
            search_lhs: None,
            search_rhs: None,
        };
        let clean = run_case(&case, &CompareOptions::default());
        assert_eq!(clean.outcomes[0].status, CaseStatus::Confirmed);
        assert_relative_eq!(clean.outcomes[0].e_lhs.unwrap(), 0.0, epsilon = 1e-6);
        assert_relative_eq!(clean.outcomes[0].e_rhs.unwrap(), 0.6, epsilon = 1e-6);

        let faulty = run_case(
            &case,
            &CompareOptions { inject_offset: 1.0, ..CompareOptions::default() },
        );
        assert_eq!(faulty.outcomes[0].status, CaseStatus::Violated);
    }

    #[test]
    fn crossing_case_is_not_comparable() {
        let case = ComparisonCase {
            lhs: PotentialModel::Oscillator { v: 1.0 },
            rhs: PotentialModel::Linear { v: 1.0 },
            channels: vec![spin()],
            label: "crossing".into(),
            search_lhs: None,
            search_rhs: None,
        };
        let report = run_case(&case, &CompareOptions::default());
        assert_eq!(report.outcomes[0].status, CaseStatus::NotComparable);
    }

    #[test]
    fn missing_spectrum_is_not_a_violation() {
        // lhs +1/r (repulsive in the spin channel) has no bound state.
        let case = ComparisonCase {
            lhs: PotentialModel::Coulomb { v: -1.0 },
            rhs: PotentialModel::Coulomb { v: -0.5 },
            channels: vec![spin()],
            label: "repulsive".into(),
            search_lhs: None,
            search_rhs: None,
        };
        let report = run_case(&case, &CompareOptions::default());
        assert_eq!(report.outcomes[0].status, CaseStatus::NoSpectrum);
    }

    #[test]
    fn derivative_signs_and_identity_agree() {
        let ch = spin();
        for out in derivative_sign_check(KnownFamily::Oscillator, &[1.0, -1.5], &ch).unwrap() {
            assert!(out.consistent && out.identity_ok, "{out:?}");
        }
        let c = &derivative_sign_check(KnownFamily::Coulomb, &[1.0], &ch).unwrap()[0];
        assert!(c.consistent && c.identity_ok && c.derivative < 0.0, "{c:?}");
        let s = &derivative_sign_check(KnownFamily::ShiftedCoulombShift { v: 1.0 }, &[0.4], &ch)
            .unwrap()[0];
        assert!(s.consistent && s.identity_ok && s.derivative > 0.0, "{s:?}");
        // Closed form for the shift derivative: 2/(1+q) with q = 1/4.
        assert_relative_eq!(s.derivative, 1.6, epsilon = 1e-5);
        let k =
            &derivative_sign_check(KnownFamily::Kratzer { a: 0.1, c: 0.0 }, &[1.0], &ch).unwrap()[0];
        assert!(k.consistent && k.identity_ok && k.derivative < 0.0, "{k:?}");
    }

    #[test]
    fn log_derivative_makes_no_sign_claim() {
        let ch = spin();
        let out = &derivative_sign_check(KnownFamily::Log, &[1.0], &ch).unwrap()[0];
        assert_eq!(out.expected_sign, None);
        assert!(out.consistent && out.identity_ok, "{out:?}");
    }

    #[test]
    fn interpolation_scan_is_monotone() {
        let ch = spin();
        let lhs = PotentialModel::Coulomb { v: 1.2 };
        let rhs = PotentialModel::Coulomb { v: 1.0 };
        let scan = family_scan(&lhs, &rhs, &ch, 5, &CompareOptions::default()).unwrap();
        assert!(scan.monotone, "energies = {:?}", scan.energies);
        assert_eq!(scan.slopes.len(), 4);
        assert!(scan.slopes.iter().all(|s| *s > 0.0), "slopes = {:?}", scan.slopes);
        assert_relative_eq!(scan.energies[0], 1.0 - 2.0 * 0.36 / 1.36, epsilon = 1e-6);
        assert_relative_eq!(scan.energies[4], 0.6, epsilon = 1e-6);
    }

    #[test]
    fn interpolation_scan_rejects_unordered_endpoints() {
        let ch = spin();
        let lhs = PotentialModel::Oscillator { v: 1.0 };
        let rhs = PotentialModel::Linear { v: 1.0 };
        assert!(matches!(
            family_scan(&lhs, &rhs, &ch, 5, &CompareOptions::default()),
            Err(SolveError::NotComparable(_))
        ));
    }

    #[test]
    fn corpus_shape() {
        let corpus = built_in_corpus();
        assert_eq!(corpus.len(), 14);
        let crossing: Vec<_> = corpus
            .iter()
            .filter(|c| matches!(verify_ordering(&c.lhs, &c.rhs), PotentialOrder::Crossing { .. }))
            .collect();
        assert_eq!(crossing.len(), 1);
        assert_eq!(crossing[0].label, "osc-vs-linear-crossing");
    }
}
