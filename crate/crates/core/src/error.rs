//! Error types shared across the solver stack.

use thiserror::Error;

/// Everything that can go wrong while locating or validating a bound state.
///
/// The variants are deliberately coarse: callers branch on *kind* (is there a
/// spectrum? did numerics fail?) while the payload string carries the
/// human-readable specifics for logs and CLI output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    /// The potential/channel combination admits no discrete bound state at
    /// all (for example a repulsive Coulomb coupling, or a vanishing
    /// coupling). This is a property of the problem, not a numerical failure.
    #[error("no discrete spectrum: {0}")]
    NoDiscreteSpectrum(String),

    /// The shooting engine could not find a state with the requested node
    /// count on the integration domain (typically the domain is too small or
    /// the state has dissolved into the continuum).
    #[error("no bound state found: {0}")]
    NoBoundState(String),

    /// A root-finder, quadrature, or recurrence failed to converge or
    /// produced non-finite values.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Invalid input: parameters outside the documented domain of an
    /// operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The energy sits on a mass shell (`E = ±m`) where a spinor-component
    /// reconstruction divides by `m ± E`.
    #[error("degenerate energy: {0}")]
    DegenerateEnergy(String),

    /// Two potentials are not pointwise ordered in either direction, so no
    /// comparison theorem applies.
    #[error("not comparable: {0}")]
    NotComparable(String),

    /// The requested operation does not apply to the given inputs (for
    /// example a transformation that is neither convex nor concave).
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, SolveError>;
