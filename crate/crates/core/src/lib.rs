//! Bound states of a Dirac particle whose scalar potential `S` is locked to its
//! vector potential `V`, either `S = V` (spin symmetry) or `S = -V`
//! (pseudo-spin symmetry), for attractive central potentials in `d ≥ 1`
//! dimensions.
//!
//! Under either symmetry the coupled first-order radial equations collapse to a
//! single Schrödinger-like eigenproblem for one spinor component,
//!
//! ```text
//! -ψ'' + [ κ(κ+1)/r² + 2(E + μ)V(r) ] ψ = (E² - μ²) ψ ,
//! ```
//!
//! where `κ = s·k_d` and `μ = s·m` with `s = +1` for spin symmetry and
//! `s = -1` for pseudo-spin symmetry. The energy appears on both sides, so an
//! eigenvalue `E` is a fixed point: the Schrödinger eigenvalue computed with
//! coupling `2(E+μ)` must equal `E² - μ²`.
//!
//! The crate provides three independent routes to the spectrum and the
//! machinery to play them against each other:
//!
//! * [`spectra`] — closed-form (or reduced one-dimensional root-finding)
//!   energies for the six solvable families: harmonic oscillator, linear,
//!   Coulomb, shifted Coulomb, Kratzer, and logarithmic potentials.
//! * [`dirac`] — a numerical oracle that solves the fixed-point problem with a
//!   Numerov shooting engine ([`radial`]), plus spinor-component
//!   reconstruction and an energy-derivative identity check.
//! * [`envelope`] — analytic spectral bounds obtained by sliding tangent
//!   Coulomb potentials along a convex/concave transformation of the shape.
//!
//! [`compare`] verifies spectral comparison theorems (pointwise-ordered
//! potentials have ordered energies) over a built-in or user-supplied corpus,
//! [`sweep`] produces deterministic CSV coupling sweeps, and [`parse`] holds
//! the small text formats used by the command-line tool and the fuzz targets.

#![warn(missing_docs)]

pub mod channels;
pub mod compare;
pub mod dirac;
pub mod envelope;
pub mod error;
pub mod grid;
pub mod parse;
pub mod potential;
pub mod radial;
pub mod roots;
pub mod special;
pub mod spectra;
pub mod sweep;

pub use channels::{Channel, PrincipalFamily, Sign, SymmetryMode};
pub use error::{Result, SolveError};
pub use grid::RadialGrid;
pub use potential::PotentialModel;
