//! Quantum-number bookkeeping: symmetry mode, spin-orbit coupling, and the
//! effective centrifugal index of the reduced radial problem.

use crate::error::{Result, SolveError};
use std::fmt;

/// An algebraic sign (`+1` or `-1`), used for the spin-orbit label `τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `+1`
    Plus,
    /// `-1`
    Minus,
}

impl Sign {
    /// The sign as a float factor.
    #[must_use]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// Which of the two matched-potential couplings is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryMode {
    /// Spin symmetry, `S = +V`: the upper component obeys the reduced
    /// equation and `κ = +k_d`, `μ = +m`.
    Spin,
    /// Pseudo-spin symmetry, `S = -V`: the lower component obeys the reduced
    /// equation and `κ = -k_d`, `μ = -m`.
    Pseudo,
}

impl SymmetryMode {
    /// The sign `s` that maps `(k_d, m)` to `(κ, μ) = (s·k_d, s·m)`.
    #[must_use]
    pub fn s(self) -> f64 {
        match self {
            SymmetryMode::Spin => 1.0,
            SymmetryMode::Pseudo => -1.0,
        }
    }

    /// Lower-case label used in CLI output and corpus files.
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            SymmetryMode::Spin => "spin",
            SymmetryMode::Pseudo => "pseudo",
        }
    }
}

impl fmt::Display for SymmetryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A fully specified bound-state channel: dimension, angular momentum,
/// spin-orbit branch, symmetry mode, radial excitation, and mass.
///
/// Angular momentum is stored as `j2 = 2j` (an odd positive integer) so that
/// half-integer `j` stays exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Channel {
    /// Spatial dimension `d ≥ 1`.
    pub d: u32,
    /// Twice the total angular momentum (`j2 = 2j`, odd).
    pub j2: u32,
    /// Spin-orbit branch `τ = ±1`.
    pub tau: Sign,
    /// Symmetry mode (`S = V` or `S = -V`).
    pub mode: SymmetryMode,
    /// Radial quantum number `ν ≥ 0` (number of radial nodes).
    pub nu: u32,
    /// Particle mass `m ≥ 0`.
    pub m: f64,
}

/// Which principal quantum number a solvable family uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalFamily {
    /// Oscillator-like: `P = 4ν + 2L + 3`.
    Oscillator,
    /// Coulomb-like (Coulomb, shifted Coulomb, and the tangent potentials of
    /// the envelope method): `P = ν + L + 1`.
    CoulombLike,
}

impl Channel {
    /// Largest `ν` accepted; keeps runaway inputs from exploding solver cost.
    pub const MAX_NU: u32 = 64;

    /// Validates and builds a channel.
    ///
    /// Requirements: `d ≥ 1`, `j2` odd and ≥ 1, `ν ≤ 64`, `m` finite and
    /// non-negative.
    pub fn new(d: u32, j2: u32, tau: Sign, mode: SymmetryMode, nu: u32, m: f64) -> Result<Self> {
        if d < 1 {
            return Err(SolveError::Domain("dimension d must be >= 1".into()));
        }
        if j2 == 0 || j2 % 2 == 0 {
            return Err(SolveError::Domain(format!(
                "j2 = {j2} must be an odd positive integer (twice a half-integer j)"
            )));
        }
        if nu > Self::MAX_NU {
            return Err(SolveError::Domain(format!(
                "radial quantum number nu = {nu} exceeds the supported maximum {}",
                Self::MAX_NU
            )));
        }
        if !m.is_finite() || m < 0.0 {
            return Err(SolveError::Domain(format!(
                "mass m = {m} must be finite and non-negative"
            )));
        }
        Ok(Channel { d, j2, tau, mode, nu, m })
    }

    /// The spin-orbit coupling `k_d = τ·(2j + d - 2)/2`.
    ///
    /// On the half-line (`d = 1`) there is no angular momentum and `k_1 = 0`
    /// identically.
    #[must_use]
    pub fn kd(&self) -> f64 {
        if self.d == 1 {
            0.0
        } else {
            self.tau.value() * (self.j2 as f64 + self.d as f64 - 2.0) / 2.0
        }
    }

    /// `κ = s·k_d`, the coupling entering the reduced radial equation.
    #[must_use]
    pub fn kappa(&self) -> f64 {
        self.mode.s() * self.kd()
    }

    /// `μ = s·m`, the signed mass entering the reduced radial equation.
    #[must_use]
    pub fn mu(&self) -> f64 {
        self.mode.s() * self.m
    }

    /// The effective centrifugal index `L ≥ 0` defined by
    /// `L(L+1) = κ(κ+1)`, i.e. `L = |κ + 1/2| - 1/2`.
    #[must_use]
    pub fn l_eff(&self) -> f64 {
        (self.kappa() + 0.5).abs() - 0.5
    }

    /// Principal quantum number of a solvable family in this channel.
    #[must_use]
    pub fn principal(&self, family: PrincipalFamily) -> f64 {
        let l = self.l_eff();
        let nu = self.nu as f64;
        match family {
            PrincipalFamily::Oscillator => 4.0 * nu + 2.0 * l + 3.0,
            PrincipalFamily::CoulombLike => nu + l + 1.0,
        }
    }

    /// Same channel with a different radial quantum number.
    #[must_use]
    pub fn with_nu(&self, nu: u32) -> Self {
        Channel { nu, ..*self }
    }

    /// Same channel in the other symmetry mode.
    #[must_use]
    pub fn flipped_mode(&self) -> Self {
        let mode = match self.mode {
            SymmetryMode::Spin => SymmetryMode::Pseudo,
            SymmetryMode::Pseudo => SymmetryMode::Spin,
        };
        Channel { mode, ..*self }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(d={} j2={} tau={} {} nu={} m={})",
            self.d, self.j2, self.tau, self.mode, self.nu, self.m
        )
    }
}
