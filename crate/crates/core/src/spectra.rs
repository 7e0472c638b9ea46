//! Closed-form (or reduced transcendental) bound-state energies for the six
//! solvable potential families under matched scalar/vector coupling.
//!
//! Every family reduces the relativistic fixed-point condition to a scalar
//! equation in `E` built from the non-relativistic spectrum of its shape:
//!
//! * **oscillator** `v r²`:   `(E²-m²)(E-μ) = 2 v P²`, `P = 4ν+2L+3`
//! * **linear** `v r`:        `(E²-m²)(E-μ)² = 4 v² P³`, `P = F(1)` numeric
//! * **Coulomb** `-v/r`:      `E = μ(1-q)/(1+q)`, `q = v²/P²`, `P = ν+L+1`
//! * **shifted Coulomb** `-v/r + c`: `E = -μ + 2(μ+c)/(1+q)`
//! * **Kratzer** `a/r² - v/r + c`: implicit root (and an independent quartic
//!   route through the effective principal number)
//! * **log** `v ln r`:        `E = μ + v[2e(1) - ln 2 - ln(v(μ+E))]`
//!
//! Here `μ = s·m` and `L` come from the [`Channel`]; admissibility conditions
//! (sign constraints, spectral windows) are enforced before any root is
//! reported, and every returned energy is plugged back into its defining
//! relation as a residual check.

use crate::channels::{Channel, PrincipalFamily, SymmetryMode};
use crate::error::{Result, SolveError};
use crate::radial;
use crate::roots;
use crate::special;

/// A bound-state energy from a closed-form family.
#[derive(Debug, Clone)]
pub struct EigenvalueSolution {
    /// The energy `E`.
    pub energy: f64,
    /// Residual of the family's defining relation at `energy`.
    pub residual: f64,
    /// Radial node count of the underlying state (equals the channel's `ν`).
    pub nodes: u32,
    /// Interval within which the root was isolated (informational).
    pub bracket: (f64, f64),
    /// Which admissible branch was selected and why.
    pub branch_note: String,
}

/// Spectral window of the log potential for one sign combination.
#[derive(Debug, Clone)]
pub struct SpectralRegion {
    /// Lower edge of the window.
    pub e_lo: f64,
    /// Upper edge of the window.
    pub e_hi: f64,
    /// Critical value `u₁` of `u = v(μ+E)`.
    pub u1: f64,
    /// Which sign cell (`v`, `μ`) the window belongs to.
    pub note: String,
}

const RESIDUAL_TOL: f64 = 1e-9;

fn check_residual(res: f64, scale: f64, what: &str) -> Result<()> {
    if res.abs() <= RESIDUAL_TOL * scale.max(1.0) {
        Ok(())
    } else {
        Err(SolveError::NumericalFailure(format!(
            "{what}: defining-relation residual {res:.3e} exceeds tolerance"
        )))
    }
}

fn require_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(SolveError::Domain(format!("{name} = {x} must be finite")))
    }
}

// ---------------------------------------------------------------------------
// Oscillator and linear: one-sided monotone root in x = |E| - m.
// ---------------------------------------------------------------------------

/// Finds the root of a function of `x = |E| - m > 0` that is strictly
/// monotone in `x`, by walking decades from `x = 1e-30` and refining on
/// `ln x`. Returns `(x_root, (x_dec_lo, x_dec_hi))`.
fn decade_root(g: impl Fn(f64) -> f64, what: &str) -> Result<(f64, (f64, f64))> {
    let mut prev_x = 1e-30;
    let mut prev_g = g(prev_x);
    if !prev_g.is_finite() {
        return Err(SolveError::NumericalFailure(format!("{what}: non-finite start")));
    }
    if prev_g == 0.0 {
        return Ok((prev_x, (prev_x, prev_x)));
    }
    for j in 1..=60 {
        let x = 1e-30 * 10f64.powi(j);
        let gx = g(x);
        if !gx.is_finite() {
            return Err(SolveError::NumericalFailure(format!(
                "{what}: non-finite value at x = {x:.3e}"
            )));
        }
        if gx == 0.0 || gx.signum() != prev_g.signum() {
            let root = roots::solve_bracketed(
                |t: f64| g(t.exp()),
                prev_x.ln(),
                x.ln(),
                1e-14,
            )?;
            return Ok((root.x.exp(), (prev_x, x)));
        }
        prev_x = x;
        prev_g = gx;
    }
    Err(SolveError::NumericalFailure(format!(
        "{what}: no sign change found over 60 decades"
    )))
}

/// Oscillator potential `V = v r²`: the unique admissible root of
/// `(E²-m²)(E-μ) = 2 v P²` with `v·(E+μ) > 0` and `|E| > m`, on the side
/// `sign(E) = sign(v)`.
pub fn oscillator_energy(v: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    require_finite("v", v)?;
    if v == 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "oscillator coupling v = 0 leaves a free particle".into(),
        ));
    }
    let m = ch.m;
    let mu = ch.mu();
    let p = ch.principal(PrincipalFamily::Oscillator);
    let side = v.signum();
    // With E = side·(m+x): E - μ = side·x + (side·m - μ) and the products
    // below stay cancellation-free for x → 0.
    let d_minus = side * m - mu;
    let d_plus = side * m + mu;
    let rhs = 2.0 * v * p * p;
    let g = |x: f64| x * (x + 2.0 * m) * (side * x + d_minus) * side - rhs * side;
    // Multiplying by `side` keeps g increasing in x on both branches.
    let (x, decade) = decade_root(g, "oscillator")?;
    let energy = side * (m + x);
    let e_plus_mu = side * x + d_plus;
    let arg = 2.0 * v * e_plus_mu;
    if arg < 0.0 {
        return Err(SolveError::NumericalFailure(
            "oscillator root landed outside the v(E+mu) > 0 branch".into(),
        ));
    }
    let e2_m2 = x * (x + 2.0 * m);
    let residual = e2_m2 - p * arg.sqrt();
    check_residual(residual, e2_m2.abs(), "oscillator")?;
    Ok(EigenvalueSolution {
        energy,
        residual,
        nodes: ch.nu,
        bracket: ordered(side * (m + decade.0), side * (m + decade.1)),
        branch_note: format!(
            "unique root with sign(E) = sign(v) = {side:+.0}, |E| > m, v(E+mu) > 0; P = {p}"
        ),
    })
}

/// Linear potential `V = v r`: the unique admissible root of
/// `(E²-m²)(E-μ)² = 4 v² P³` on the side `sign(E) = sign(v)`, where
/// `P = F(1)` is the unit-coupling eigenvalue of the linear shape.
pub fn linear_energy(v: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    let p = radial::linear_p(ch.l_eff(), ch.nu)?;
    linear_energy_with_p(v, ch, p)
}

/// [`linear_energy`] with an explicit `P = F(1)` (for published-constant
/// runs).
pub fn linear_energy_with_p(v: f64, ch: &Channel, p: f64) -> Result<EigenvalueSolution> {
    require_finite("v", v)?;
    require_finite("P", p)?;
    if v == 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "linear coupling v = 0 leaves a free particle".into(),
        ));
    }
    if p <= 0.0 {
        return Err(SolveError::Domain(format!("linear P = {p} must be positive")));
    }
    let m = ch.m;
    let mu = ch.mu();
    let side = v.signum();
    let d_minus = side * m - mu;
    let d_plus = side * m + mu;
    let rhs = 4.0 * v * v * p * p * p;
    let g = |x: f64| {
        let f3 = side * x + d_minus;
        x * (x + 2.0 * m) * f3 * f3 - rhs
    };
    let (x, decade) = decade_root(g, "linear")?;
    let energy = side * (m + x);
    let e_plus_mu = side * x + d_plus;
    let arg = 2.0 * v * e_plus_mu;
    let e2_m2 = x * (x + 2.0 * m);
    let residual = e2_m2 - p * (arg * arg).cbrt();
    check_residual(residual, e2_m2.abs(), "linear")?;
    Ok(EigenvalueSolution {
        energy,
        residual,
        nodes: ch.nu,
        bracket: ordered(side * (m + decade.0), side * (m + decade.1)),
        branch_note: format!(
            "unique root with sign(E) = sign(v) = {side:+.0}, |E| > m; P = {p:.9}"
        ),
    })
}

// ---------------------------------------------------------------------------
// Coulomb-like families.
// ---------------------------------------------------------------------------

/// Coulomb potential `V = -v/r`: `E = μ(1-q)/(1+q)` with `q = v²/P²`,
/// `P = ν+L+1`. Binding requires `v·μ > 0` (in particular `m > 0`).
pub fn coulomb_energy(v: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    require_finite("v", v)?;
    let mu = ch.mu();
    if v * mu <= 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(format!(
            "coulomb binding requires v*mu > 0 (v = {v}, mu = {mu})"
        )));
    }
    let p = ch.principal(PrincipalFamily::CoulombLike);
    let q = (v / p) * (v / p);
    let energy = mu * (1.0 - q) / (1.0 + q);
    let e_plus_mu = energy + mu;
    let residual = energy * energy - mu * mu + v * v * e_plus_mu * e_plus_mu / (p * p);
    check_residual(residual, mu * mu, "coulomb")?;
    Ok(EigenvalueSolution {
        energy,
        residual,
        nodes: ch.nu,
        bracket: (-ch.m, ch.m),
        branch_note: format!("q = v^2/P^2 = {q:.9}; P = {p}; E strictly inside (-m, m)"),
    })
}

/// Shifted Coulomb potential `V = -v/r + c`: `E = -μ + 2(μ+c)/(1+q)`.
/// Binding requires `v·(c+μ) > 0`.
pub fn shifted_coulomb_energy(v: f64, c: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    require_finite("v", v)?;
    require_finite("c", c)?;
    let mu = ch.mu();
    if v * (c + mu) <= 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(format!(
            "shifted-coulomb binding requires v*(c+mu) > 0 (v = {v}, c+mu = {})",
            c + mu
        )));
    }
    let p = ch.principal(PrincipalFamily::CoulombLike);
    let q = (v / p) * (v / p);
    let energy = -mu + 2.0 * (mu + c) / (1.0 + q);
    let e_plus_mu = energy + mu;
    let residual = energy * energy - mu * mu - 2.0 * c * e_plus_mu
        + v * v * e_plus_mu * e_plus_mu / (p * p);
    check_residual(residual, mu * mu + c * c, "shifted-coulomb")?;
    Ok(EigenvalueSolution {
        energy,
        residual,
        nodes: ch.nu,
        bracket: ordered(-mu, -mu + 2.0 * (mu + c)),
        branch_note: format!("q = v^2/P^2 = {q:.9}; P = {p}; E between -mu and -mu+2(mu+c)"),
    })
}

/// Closed-form derivative `dE/dv` of the shifted-Coulomb energy:
/// `E'(v) = -4(μ+c)·v / (P²(1+q)²)`.
pub fn shifted_coulomb_denergy_dv(v: f64, c: f64, ch: &Channel) -> Result<f64> {
    let mu = ch.mu();
    if v * (c + mu) <= 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "shifted-coulomb derivative needs v*(c+mu) > 0".into(),
        ));
    }
    let p = ch.principal(PrincipalFamily::CoulombLike);
    let q = (v / p) * (v / p);
    Ok(-4.0 * (mu + c) * v / (p * p * (1.0 + q) * (1.0 + q)))
}

/// Closed-form derivative `dE/da` of the shifted-Coulomb energy under a
/// constant shift `c → c + a`: `E'(a) = 2/(1+q)`.
pub fn shifted_coulomb_denergy_dshift(v: f64, ch: &Channel) -> f64 {
    let p = ch.principal(PrincipalFamily::CoulombLike);
    let q = (v / p) * (v / p);
    2.0 / (1.0 + q)
}

// ---------------------------------------------------------------------------
// Kratzer.
// ---------------------------------------------------------------------------

/// Admissible energy window for the Kratzer family (also used by the
/// relativistic oracle's Coulomb-like search):
/// `E` strictly between `c - |c+μ|` and `c + |c+μ|`, on the `v`-side of
/// `-μ`, with the inverse-square discriminant `(κ+1/2)² + 2a(μ+E) ≥ 0`.
pub(crate) fn kratzer_window(a: f64, v: f64, c: f64, ch: &Channel) -> Option<(f64, f64)> {
    let mu = ch.mu();
    let k2 = (ch.kappa() + 0.5).powi(2);
    let half_width = (c + mu).abs();
    let mut lo = c - half_width;
    let mut hi = c + half_width;
    if v > 0.0 {
        lo = lo.max(-mu);
    } else {
        hi = hi.min(-mu);
    }
    if a > 0.0 {
        lo = lo.max(-mu - k2 / (2.0 * a));
    } else if a < 0.0 {
        hi = hi.min(-mu + k2 / (2.0 * -a));
    }
    if lo < hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// The defining relation of the Kratzer spectrum:
/// `g(E) = v(μ+E) - (ν + 1/2 + sqrt((κ+1/2)² + 2a(μ+E))) · sqrt((μ+E)(2c+μ-E))`.
fn kratzer_relation(a: f64, v: f64, c: f64, ch: &Channel, e: f64) -> f64 {
    let mu = ch.mu();
    let k2 = (ch.kappa() + 0.5).powi(2);
    let e_plus_mu = e + mu;
    let disc1 = (k2 + 2.0 * a * e_plus_mu).max(0.0);
    let disc2 = (e_plus_mu * (2.0 * c + mu - e)).max(0.0);
    v * e_plus_mu - (ch.nu as f64 + 0.5 + disc1.sqrt()) * disc2.sqrt()
}

/// Kratzer potential `V = a/r² - v/r + c`: root of the implicit defining
/// relation inside the admissible window. `a = 0` reduces exactly to the
/// shifted Coulomb family and is delegated there.
pub fn kratzer_energy(a: f64, v: f64, c: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    require_finite("a", a)?;
    require_finite("v", v)?;
    require_finite("c", c)?;
    if v == 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "kratzer binding requires a Coulomb term (v = 0 has no discrete spectrum, \
             regardless of c)"
                .into(),
        ));
    }
    if a == 0.0 {
        let mut sol = shifted_coulomb_energy(v, c, ch)?;
        sol.branch_note = format!("a = 0 reduces to shifted Coulomb; {}", sol.branch_note);
        return Ok(sol);
    }
    let (lo, hi) = kratzer_window(a, v, c, ch).ok_or_else(|| {
        SolveError::NoDiscreteSpectrum(format!(
            "kratzer admissible window is empty for a={a}, v={v}, c={c}, mu={}",
            ch.mu()
        ))
    })?;
    let eps = 1e-9 * (hi - lo);
    let g = |e: f64| kratzer_relation(a, v, c, ch, e);
    let brackets = roots::scan_sign_changes(g, lo + eps, hi - eps, 2048);
    if brackets.is_empty() {
        return Err(SolveError::NoDiscreteSpectrum(format!(
            "kratzer defining relation has no root in the admissible window \
             ({lo:.6}, {hi:.6})"
        )));
    }
    let mut candidates = Vec::new();
    for (blo, bhi) in &brackets {
        let root = roots::solve_bracketed(g, *blo, *bhi, 1e-13 * (1.0 + hi.abs()))?;
        candidates.push(root.x);
    }
    let chosen = if candidates.len() == 1 {
        candidates[0]
    } else {
        // Several admissible roots: prefer the one continuously connected to
        // the a = 0 (shifted Coulomb) energy.
        match shifted_coulomb_energy(v, c, ch) {
            Ok(limit) => candidates
                .iter()
                .copied()
                .min_by(|x, y| {
                    (x - limit.energy).abs().total_cmp(&(y - limit.energy).abs())
                })
                .unwrap(),
            Err(_) => candidates.iter().copied().fold(f64::INFINITY, f64::min),
        }
    };
    let residual = g(chosen);
    check_residual(residual, (v * (chosen + ch.mu())).abs(), "kratzer")?;
    Ok(EigenvalueSolution {
        energy: chosen,
        residual,
        nodes: ch.nu,
        bracket: (lo, hi),
        branch_note: format!(
            "{} root(s) of the defining relation in the admissible window",
            candidates.len()
        ),
    })
}

/// Independent Kratzer route: real roots `P > ν + 1/2` of the quartic
///
/// ```text
/// [(P - ν - 1/2)² - (κ+1/2)²]·(P² + v²) = 4a(μ+c)·P² ,
/// ```
///
/// each mapped to `E = -μ + 2(μ+c)P²/(P²+v²)` and filtered through the
/// admissible window and the (unsquared) defining relation. Requires
/// `a ≠ 0`; used to cross-check [`kratzer_energy`].
pub fn kratzer_energy_quartic(a: f64, v: f64, c: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    require_finite("a", a)?;
    require_finite("v", v)?;
    require_finite("c", c)?;
    if a == 0.0 {
        return Err(SolveError::NotApplicable(
            "quartic route needs a != 0; use the shifted Coulomb form for a = 0".into(),
        ));
    }
    if v == 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "kratzer binding requires a Coulomb term".into(),
        ));
    }
    let mu = ch.mu();
    let s = ch.nu as f64 + 0.5;
    let k2 = (ch.kappa() + 0.5).powi(2);
    // Expanded coefficients, highest power first:
    // P^4 - 2s P^3 + (s²-k2+v²-4a(μ+c)) P^2 - 2s v² P + (s²-k2) v².
    let coeffs = [
        1.0,
        -2.0 * s,
        s * s - k2 + v * v - 4.0 * a * (mu + c),
        -2.0 * s * v * v,
        (s * s - k2) * v * v,
    ];
    let quartic = |p: f64| {
        coeffs.iter().fold(0.0, |acc, &ck| acc * p + ck)
    };
    let p_cap = 1.0 + coeffs.iter().skip(1).fold(0.0f64, |m, &ck| m.max(ck.abs()));
    let p_lo = s + 1e-9 * (1.0 + s);
    let mut candidates = Vec::new();
    if p_lo < p_cap {
        for (blo, bhi) in roots::scan_sign_changes(quartic, p_lo, p_cap, 4096) {
            let root = roots::solve_bracketed(quartic, blo, bhi, 1e-12 * (1.0 + p_cap))?;
            candidates.push(root.x);
        }
    }
    let window = kratzer_window(a, v, c, ch);
    let mut admissible = Vec::new();
    for p in candidates {
        let energy = -mu + 2.0 * (mu + c) * p * p / (p * p + v * v);
        let in_window = window
            .map(|(lo, hi)| energy > lo && energy < hi)
            .unwrap_or(false);
        if !in_window {
            continue;
        }
        // Squaring the defining relation introduced sign-flipped branches;
        // keep only roots of the original (unsquared) relation.
        let res = kratzer_relation(a, v, c, ch, energy);
        let scale = (v * (energy + mu)).abs().max(1.0);
        if res.abs() <= 1e-6 * scale {
            admissible.push((energy, res, p));
        }
    }
    if admissible.is_empty() {
        return Err(SolveError::NoDiscreteSpectrum(
            "quartic route found no admissible principal number P > nu + 1/2".into(),
        ));
    }
    let total = admissible.len();
    let (energy, residual, p_star) = admissible
        .into_iter()
        .min_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .unwrap();
    Ok(EigenvalueSolution {
        energy,
        residual,
        nodes: ch.nu,
        bracket: window.unwrap_or((f64::NAN, f64::NAN)),
        branch_note: format!(
            "quartic route: P = {p_star:.9}, {total} admissible candidate(s)"
        ),
    })
}

// ---------------------------------------------------------------------------
// Log potential.
// ---------------------------------------------------------------------------

/// Root `u₁ > 0` of `u·(cc - ln u) = -m²` beyond the peak of the left-hand
/// side, for a given spectral constant `cc`.
fn log_u1_for(cc: f64, m: f64) -> Result<f64> {
    if m == 0.0 {
        return Ok(cc.exp());
    }
    let phi = |u: f64| u * (cc - u.ln()) + m * m;
    let u_peak = (cc - 1.0).exp();
    let mut hi = u_peak.max(1e-6);
    for _ in 0..200 {
        if phi(hi) < 0.0 {
            break;
        }
        hi *= 2.0;
    }
    if phi(hi) >= 0.0 {
        return Err(SolveError::NumericalFailure(
            "critical coupling u1 not bracketed".into(),
        ));
    }
    let root = roots::solve_bracketed(phi, u_peak.max(1e-12), hi, 1e-13 * hi.max(1.0))?;
    Ok(root.x)
}

/// Critical coupling `u₁` of the log potential: the value of `u = v(μ+E)` at
/// which the bound-state energy crosses `E = 0`. Depends on the channel only
/// through `e(1)` (passed explicitly) and the mass.
pub fn log_u1(ch: &Channel, e1: f64) -> Result<f64> {
    require_finite("e1", e1)?;
    log_u1_for(2.0 * e1 - std::f64::consts::LN_2, ch.m)
}

/// Shared solver for log-form spectral conditions
/// `E = μ + v·(cc - ln(v(μ+E)))`: substitutes `u = v(μ+E)`, brackets the
/// strictly monotone residual on `(0, u₁]` (right endpoint included — the
/// root sits exactly at `u₁` when `E = 0`), and maps back to `E`.
pub(crate) fn log_form_energy(v: f64, mu: f64, m: f64, cc: f64) -> Result<(f64, f64, f64)> {
    if v == 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "log coupling v = 0 leaves a free particle".into(),
        ));
    }
    let u1 = log_u1_for(cc, m)?;
    let residual_in_u = |u: f64| 2.0 * mu + v * (cc - u.ln()) - u / v;
    let lo = 1e-12 * u1;
    let f_lo = residual_in_u(lo);
    let f_hi = residual_in_u(u1);
    // At the critical coupling v = u1/m the root coincides with u1 and
    // roundoff can push both endpoint values onto the same side.
    let u = if f_hi == 0.0 || (f_lo.signum() == f_hi.signum() && f_hi.abs() <= 1e-9 * (1.0 + m)) {
        u1
    } else {
        roots::solve_bracketed(residual_in_u, lo, u1, 1e-13 * u1)?.x
    };
    let energy = u / v - mu;
    Ok((energy, u, u1))
}

/// Log potential `V = v ln r`: root of `E = μ + v[2e(1) - ln 2 - ln(v(μ+E))]`
/// where `e(1)` is the unit-coupling eigenvalue of the log shape for the
/// channel's `(L, ν)`.
pub fn log_energy(v: f64, ch: &Channel) -> Result<EigenvalueSolution> {
    let e1 = radial::log_e1(ch.l_eff(), ch.nu)?;
    log_energy_with_e1(v, ch, e1)
}

/// [`log_energy`] with an explicit `e(1)` (for published-constant runs).
pub fn log_energy_with_e1(v: f64, ch: &Channel, e1: f64) -> Result<EigenvalueSolution> {
    require_finite("v", v)?;
    require_finite("e1", e1)?;
    let mu = ch.mu();
    let cc = 2.0 * e1 - std::f64::consts::LN_2;
    let (energy, u, u1) = log_form_energy(v, mu, ch.m, cc)?;
    let residual = energy - mu - v * (cc - (v * (mu + energy)).ln());
    check_residual(residual, 1.0 + energy.abs(), "log")?;
    let region = log_spectral_region_with_u1(v, ch, u1)?;
    Ok(EigenvalueSolution {
        energy,
        residual,
        nodes: ch.nu,
        bracket: (region.e_lo, region.e_hi),
        branch_note: format!("u = v(mu+E) = {u:.9} in (0, u1 = {u1:.9}]; {}", region.note),
    })
}

/// Spectral window of the log potential at coupling `v`, computing `e(1)`
/// (and hence `u₁`) from the channel.
pub fn log_spectral_region(v: f64, ch: &Channel) -> Result<SpectralRegion> {
    let e1 = radial::log_e1(ch.l_eff(), ch.nu)?;
    log_spectral_region_with_u1(v, ch, log_u1(ch, e1)?)
}

/// Spectral window of the log potential for a precomputed `u₁`: the energy
/// lies strictly between `-μ` and `u₁/v - μ` (ordering depends on the signs
/// of `v` and `μ`).
pub fn log_spectral_region_with_u1(v: f64, ch: &Channel, u1: f64) -> Result<SpectralRegion> {
    require_finite("v", v)?;
    require_finite("u1", u1)?;
    if v == 0.0 {
        return Err(SolveError::NoDiscreteSpectrum(
            "log coupling v = 0 leaves a free particle".into(),
        ));
    }
    if u1 <= 0.0 {
        return Err(SolveError::Domain(format!("u1 = {u1} must be positive")));
    }
    let mu = ch.mu();
    let (e_lo, e_hi) = ordered(-mu, u1 / v - mu);
    let v_cell = if v > 0.0 { "v > 0" } else { "v < 0" };
    let mu_cell = match ch.mode {
        SymmetryMode::Spin => "mu = +m",
        SymmetryMode::Pseudo => "mu = -m",
    };
    Ok(SpectralRegion {
        e_lo,
        e_hi,
        u1,
        note: format!("{v_cell}, {mu_cell}"),
    })
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

// ---------------------------------------------------------------------------
// Coulomb wavefunction.
// ---------------------------------------------------------------------------

/// Analytic Coulomb bound state: principal component
/// `ψ ∝ r^{L+1} e^{-βr} L_ν^{(2L+1)}(2βr)` with `β = sqrt(m²-E²)`, partner
/// component from the first-order coupling relation, joint norm 1.
#[derive(Debug, Clone)]
pub struct CoulombWave {
    ch: Channel,
    energy: f64,
    beta: f64,
    l: f64,
    scale: f64,
    principal_fraction: f64,
}

impl CoulombWave {
    /// Builds the normalized state for coupling `v` in the given channel.
    pub fn new(v: f64, ch: &Channel) -> Result<Self> {
        let sol = coulomb_energy(v, ch)?;
        let energy = sol.energy;
        let m = ch.m;
        let beta2 = (m - energy) * (m + energy);
        if beta2 <= 0.0 {
            return Err(SolveError::DegenerateEnergy(format!(
                "coulomb energy {energy} is not strictly inside (-m, m)"
            )));
        }
        let beta = beta2.sqrt();
        let denom = match ch.mode {
            SymmetryMode::Spin => m + energy,
            SymmetryMode::Pseudo => m - energy,
        };
        if denom.abs() < 1e-12 * m.max(1.0) {
            return Err(SolveError::DegenerateEnergy(format!(
                "energy {energy} sits on the mass shell; the partner component diverges"
            )));
        }
        let l = ch.l_eff();
        let mut wave = CoulombWave {
            ch: *ch,
            energy,
            beta,
            l,
            scale: 1.0,
            principal_fraction: 1.0,
        };
        // Quadrature domain: past the last Laguerre node plus a long decay
        // tail (in x = 2βr units), mapped back through β.
        let x_span = 4.0 * ch.nu as f64 + 2.0 * (2.0 * l + 1.0) + 40.0;
        let r_max = x_span / (2.0 * beta);
        let n = 32001usize;
        let h = r_max / n as f64;
        let mut w2 = Vec::with_capacity(n);
        let mut p2 = Vec::with_capacity(n);
        for k in 1..=n {
            let r = k as f64 * h;
            let (wp, wq) = wave.raw_pair(r);
            w2.push(wp * wp);
            p2.push(wq * wq);
        }
        let norm_principal = crate::grid::integrate(&w2, h);
        let norm_partner = crate::grid::integrate(&p2, h);
        let total = norm_principal + norm_partner;
        if !(total.is_finite() && total > 0.0) {
            return Err(SolveError::NumericalFailure(
                "coulomb wavefunction norm is not positive and finite".into(),
            ));
        }
        wave.scale = 1.0 / total.sqrt();
        wave.principal_fraction = norm_principal / total;
        Ok(wave)
    }

    /// Unnormalized (principal, partner) amplitudes at radius `r`.
    fn raw_pair(&self, r: f64) -> (f64, f64) {
        let alpha = 2.0 * self.l + 1.0;
        let x = 2.0 * self.beta * r;
        let lag = special::laguerre(self.ch.nu, alpha, x);
        let dlag = special::laguerre_deriv(self.ch.nu, alpha, x);
        let w = r.powf(self.l + 1.0) * (-self.beta * r).exp() * lag;
        let dw = ((self.l + 1.0) / r - self.beta) * w
            + r.powf(self.l + 1.0) * (-self.beta * r).exp() * 2.0 * self.beta * dlag;
        let kd = self.ch.kd();
        let m = self.ch.m;
        let partner = match self.ch.mode {
            SymmetryMode::Spin => (dw + kd * w / r) / (m + self.energy),
            SymmetryMode::Pseudo => (dw - kd * w / r) / (m - self.energy),
        };
        (w, partner)
    }

    /// Bound-state energy.
    #[must_use]
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Decay constant `β = sqrt(m² - E²)`.
    #[must_use]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Normalized principal-component amplitude at radius `r`.
    #[must_use]
    pub fn amplitude(&self, r: f64) -> f64 {
        self.scale * self.raw_pair(r).0
    }

    /// Normalized `(ψ₁, ψ₂)` at radius `r`, in upper/lower order for the
    /// channel's mode (spin: principal is `ψ₁`; pseudo: principal is `ψ₂`).
    #[must_use]
    pub fn components(&self, r: f64) -> (f64, f64) {
        let (w, partner) = self.raw_pair(r);
        match self.ch.mode {
            SymmetryMode::Spin => (self.scale * w, self.scale * partner),
            SymmetryMode::Pseudo => (self.scale * partner, self.scale * w),
        }
    }

    /// Share of the joint norm carried by the principal component,
    /// `∫ψ_principal² / ∫(ψ₁²+ψ₂²)`. For the spin mode this equals
    /// `1/(1+q)` with `q = v²/P²`.
    #[must_use]
    pub fn principal_norm_fraction(&self) -> f64 {
        self.principal_fraction
    }
}

/// Normalized principal-component Coulomb amplitude at radius `r`
/// (convenience wrapper around [`CoulombWave`]).
pub fn coulomb_wavefunction(v: f64, ch: &Channel, r: f64) -> Result<f64> {
    Ok(CoulombWave::new(v, ch)?.amplitude(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::Sign;
    use approx::assert_relative_eq;

    fn channel(mode: SymmetryMode, nu: u32, m: f64) -> Channel {
        Channel::new(3, 1, Sign::Plus, mode, nu, m).unwrap()
    }

    #[test]
    fn oscillator_reference_point() {
        // d=3, j=1/2, tau=+1, spin, nu=0: kappa=1, L=1, P=5; m=1, v=1.
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let sol = oscillator_energy(1.0, &ch).unwrap();
        // (E^2-1)(E-1) = 50 has its admissible root at E = 4.1238314...
        let e = sol.energy;
        assert_relative_eq!((e * e - 1.0) * (e - 1.0), 50.0, max_relative = 1e-12);
        assert_relative_eq!(e, 4.123_831_4, epsilon = 1e-6);
    }

    #[test]
    fn oscillator_massless_closed_form() {
        let ch = channel(SymmetryMode::Spin, 0, 0.0);
        let sol = oscillator_energy(1.0, &ch).unwrap();
        assert_relative_eq!(sol.energy, 50f64.cbrt(), max_relative = 1e-12);
    }

    #[test]
    fn oscillator_weak_coupling_limit() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let sol = oscillator_energy(1e-12, &ch).unwrap();
        assert!(sol.energy > 1.0 && sol.energy < 1.0 + 1e-5);
        let neg = oscillator_energy(-1e-12, &ch).unwrap();
        assert!(neg.energy < -1.0 && neg.energy > -1.0 - 1e-5);
    }

    #[test]
    fn oscillator_negative_coupling_mirror() {
        // For mu = m the map v -> -v, E -> -E is not a symmetry of the cubic,
        // but for m = 0 it is: check the exact mirror there.
        let ch = channel(SymmetryMode::Spin, 0, 0.0);
        let plus = oscillator_energy(2.0, &ch).unwrap();
        let minus = oscillator_energy(-2.0, &ch).unwrap();
        assert_relative_eq!(plus.energy, -minus.energy, max_relative = 1e-12);
    }

    #[test]
    fn oscillator_rejects_zero_coupling() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        assert!(matches!(
            oscillator_energy(0.0, &ch),
            Err(SolveError::NoDiscreteSpectrum(_))
        ));
    }

    #[test]
    fn linear_massless_closed_form() {
        // m=0: E = (4 P^3)^(1/4) v^(1/2); with L=1, nu=0, v=1.
        let ch = channel(SymmetryMode::Spin, 0, 0.0);
        let p = radial::linear_p(1.0, 0).unwrap();
        let sol = linear_energy(1.0, &ch).unwrap();
        assert_relative_eq!(sol.energy, (4.0 * p * p * p).powf(0.25), max_relative = 1e-9);
        assert_relative_eq!(sol.energy, 3.511, epsilon = 5e-4);
    }

    #[test]
    fn coulomb_reference_point() {
        // v=1, P=2, m=1: q=1/4, E = (1-q)/(1+q) = 0.6 exactly.
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let sol = coulomb_energy(1.0, &ch).unwrap();
        assert_relative_eq!(sol.energy, 0.6, max_relative = 1e-14);
        assert_eq!(sol.nodes, 0);
    }

    #[test]
    fn coulomb_pseudo_mirror() {
        // Pseudo mode, mu = -m: binding needs v < 0 and E = -0.6 for |v|=1
        // (here kappa = -1, L = 0, P = 1: q = 1 -> E = 0; use nu=1 for P=2).
        let ch = channel(SymmetryMode::Pseudo, 1, 1.0);
        assert_relative_eq!(ch.principal(PrincipalFamily::CoulombLike), 2.0);
        let sol = coulomb_energy(-1.0, &ch).unwrap();
        assert_relative_eq!(sol.energy, -0.6, max_relative = 1e-14);
        assert!(matches!(
            coulomb_energy(1.0, &ch),
            Err(SolveError::NoDiscreteSpectrum(_))
        ));
    }

    #[test]
    fn coulomb_massless_has_no_spectrum() {
        let ch = channel(SymmetryMode::Spin, 0, 0.0);
        assert!(matches!(
            coulomb_energy(1.0, &ch),
            Err(SolveError::NoDiscreteSpectrum(_))
        ));
    }

    #[test]
    fn shifted_coulomb_reduces_to_coulomb() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let plain = coulomb_energy(1.0, &ch).unwrap();
        let shifted = shifted_coulomb_energy(1.0, 0.0, &ch).unwrap();
        assert_relative_eq!(plain.energy, shifted.energy, max_relative = 1e-14);
        let up = shifted_coulomb_energy(1.0, 0.5, &ch).unwrap();
        assert!(up.energy > plain.energy);
    }

    #[test]
    fn shifted_coulomb_derivatives_match_finite_differences() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let (v, c, dv) = (1.3, 0.4, 1e-6);
        let fd = (shifted_coulomb_energy(v + dv, c, &ch).unwrap().energy
            - shifted_coulomb_energy(v - dv, c, &ch).unwrap().energy)
            / (2.0 * dv);
        let closed = shifted_coulomb_denergy_dv(v, c, &ch).unwrap();
        assert_relative_eq!(fd, closed, max_relative = 1e-8);
        let fd_shift = (shifted_coulomb_energy(v, c + dv, &ch).unwrap().energy
            - shifted_coulomb_energy(v, c - dv, &ch).unwrap().energy)
            / (2.0 * dv);
        assert_relative_eq!(fd_shift, shifted_coulomb_denergy_dshift(v, &ch), max_relative = 1e-8);
    }

    #[test]
    fn kratzer_frozen_references() {
        // Frozen from an independent high-precision solve of the defining
        // relation (and its quartic form) outside this crate.
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let cases = [
            (0.1, 1.0, 0.0, 0.631_774_727_9),
            (-0.1, 1.0, 0.5, 1.314_132_937_0),
            (0.3, 2.0, 1.0, 1.374_221_684_7),
            (0.1, 0.5, 0.0, 0.894_744_649_0),
        ];
        for (a, v, c, expected) in cases {
            let sol = kratzer_energy(a, v, c, &ch).unwrap();
            assert_relative_eq!(sol.energy, expected, epsilon = 1e-9);
            let quartic = kratzer_energy_quartic(a, v, c, &ch).unwrap();
            assert_relative_eq!(sol.energy, quartic.energy, epsilon = 1e-9);
        }
    }

    #[test]
    fn kratzer_continuously_reaches_shifted_coulomb() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let limit = shifted_coulomb_energy(1.0, 0.0, &ch).unwrap().energy;
        let near = kratzer_energy(1e-7, 1.0, 0.0, &ch).unwrap().energy;
        assert_relative_eq!(near, limit, epsilon = 1e-5);
        let exact = kratzer_energy(0.0, 1.0, 0.0, &ch).unwrap().energy;
        assert_relative_eq!(exact, limit, max_relative = 1e-14);
    }

    #[test]
    fn kratzer_no_coulomb_term_means_no_spectrum() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        for a in [-0.1, 0.0, 0.4] {
            for c in [0.0, 0.7] {
                assert!(
                    matches!(
                        kratzer_energy(a, 0.0, c, &ch),
                        Err(SolveError::NoDiscreteSpectrum(_))
                    ),
                    "a={a}, c={c}"
                );
            }
        }
    }

    #[test]
    fn log_u1_reference_values() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        // Published e(1) for (L,nu)=(1,0) pins u1 near 14.2838904.
        let u1 = log_u1(&ch, radial::PUBLISHED_LOG_E1_10).unwrap();
        assert_relative_eq!(u1, 14.283_890_4, epsilon = 1e-6);
        // Massless closed form: u1 = exp(2 e1)/2.
        let ch0 = channel(SymmetryMode::Spin, 0, 0.0);
        let u1_massless = log_u1(&ch0, radial::PUBLISHED_LOG_E1_10).unwrap();
        assert_relative_eq!(
            u1_massless,
            (2.0 * radial::PUBLISHED_LOG_E1_10).exp() / 2.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(u1_massless, 13.32, epsilon = 5e-3);
    }

    #[test]
    fn log_energy_solves_its_relation() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let e1 = radial::PUBLISHED_LOG_E1_10;
        let cc = 2.0 * e1 - std::f64::consts::LN_2;
        for v in [0.05, 0.5, 1.0, 5.0, 14.0] {
            let sol = log_energy_with_e1(v, &ch, e1).unwrap();
            let e = sol.energy;
            assert_relative_eq!(e, 1.0 + v * (cc - (v * (1.0 + e)).ln()), epsilon = 1e-9);
            assert!(e > sol.bracket.0 && e <= sol.bracket.1 + 1e-12);
        }
    }

    #[test]
    fn log_energy_critical_coupling_gives_zero() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let e1 = radial::PUBLISHED_LOG_E1_10;
        let u1 = log_u1(&ch, e1).unwrap();
        let sol = log_energy_with_e1(u1, &ch, e1).unwrap();
        assert!(sol.energy.abs() <= 1e-8, "E(u1) = {} should vanish", sol.energy);
    }

    #[test]
    fn log_region_cells() {
        let m = 1.0;
        let spin = channel(SymmetryMode::Spin, 0, m);
        let pseudo = channel(SymmetryMode::Pseudo, 0, m);
        let u1 = 14.0;
        // v>0, mu=+m: (-m, u1/v - m)
        let r = log_spectral_region_with_u1(2.0, &spin, u1).unwrap();
        assert_relative_eq!(r.e_lo, -1.0);
        assert_relative_eq!(r.e_hi, 6.0);
        // v<0, mu=+m: (u1/v - m, -m)
        let r = log_spectral_region_with_u1(-2.0, &spin, u1).unwrap();
        assert_relative_eq!(r.e_lo, -8.0);
        assert_relative_eq!(r.e_hi, -1.0);
        // v>0, mu=-m: (m, u1/v + m)
        let r = log_spectral_region_with_u1(2.0, &pseudo, u1).unwrap();
        assert_relative_eq!(r.e_lo, 1.0);
        assert_relative_eq!(r.e_hi, 8.0);
        // v<0, mu=-m: (u1/v + m, m)
        let r = log_spectral_region_with_u1(-2.0, &pseudo, u1).unwrap();
        assert_relative_eq!(r.e_lo, -6.0);
        assert_relative_eq!(r.e_hi, 1.0);
    }

    #[test]
    fn log_energy_lies_inside_its_region() {
        for (mode, v) in [
            (SymmetryMode::Spin, 3.0),
            (SymmetryMode::Spin, -3.0),
            (SymmetryMode::Pseudo, 3.0),
            (SymmetryMode::Pseudo, -3.0),
        ] {
            let ch = channel(mode, 0, 1.0);
            let e1 = radial::PUBLISHED_LOG_E1_10; // exact value irrelevant here
            let sol = log_energy_with_e1(v, &ch, e1).unwrap();
            let region = log_spectral_region_with_u1(v, &ch, log_u1(&ch, e1).unwrap()).unwrap();
            assert!(
                sol.energy > region.e_lo - 1e-12 && sol.energy < region.e_hi + 1e-12,
                "{mode:?} v={v}: E={} outside ({}, {})",
                sol.energy,
                region.e_lo,
                region.e_hi
            );
        }
    }

    #[test]
    fn coulomb_wave_nodes_and_norm_split() {
        let ch = channel(SymmetryMode::Spin, 0, 1.0);
        let wave = CoulombWave::new(1.0, &ch).unwrap();
        assert_relative_eq!(wave.energy(), 0.6, max_relative = 1e-13);
        assert_relative_eq!(wave.beta(), 0.8, max_relative = 1e-13);
        // Norm split prediction: principal fraction = 1/(1+q), q = 1/4.
        assert_relative_eq!(wave.principal_norm_fraction(), 0.8, epsilon = 1e-6);
        // nu=1 principal component vanishes at r = (L+1)/beta.
        let ch1 = channel(SymmetryMode::Spin, 1, 1.0);
        let wave1 = CoulombWave::new(1.0, &ch1).unwrap();
        let p = ch1.principal(PrincipalFamily::CoulombLike);
        let q = 1.0 / (p * p);
        let e = 1.0 * (1.0 - q) / (1.0 + q);
        let beta = (1.0 - e * e).sqrt();
        let r_node = (ch1.l_eff() + 1.0) / beta;
        assert!(wave1.amplitude(r_node * 0.99) * wave1.amplitude(r_node * 1.01) < 0.0);
        assert!(wave1.amplitude(r_node).abs() < 1e-8);
    }
}
