//! Central potential models.

use std::fmt;
use std::sync::Arc;

/// Shape function type for user-defined potentials.
pub type ShapeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A central potential `V(r)`, `r > 0`.
///
/// The six named variants are the solvable families with closed-form (or
/// reduced transcendental) spectra; [`PotentialModel::Custom`] covers
/// everything else and is solved purely numerically.
#[derive(Clone)]
pub enum PotentialModel {
    /// `V(r) = v·r²`
    Oscillator {
        /// Coupling `v`.
        v: f64,
    },
    /// `V(r) = v·r`
    Linear {
        /// Coupling `v`.
        v: f64,
    },
    /// `V(r) = -v/r`
    Coulomb {
        /// Coupling `v` (attractive for `v·μ > 0`).
        v: f64,
    },
    /// `V(r) = -v/r + c`
    ShiftedCoulomb {
        /// Coulomb coupling `v`.
        v: f64,
        /// Constant shift `c`.
        c: f64,
    },
    /// `V(r) = a/r² - v/r + c`
    Kratzer {
        /// Inverse-square strength `a`.
        a: f64,
        /// Coulomb coupling `v`.
        v: f64,
        /// Constant shift `c`.
        c: f64,
    },
    /// `V(r) = v·ln(r)`
    Log {
        /// Coupling `v`.
        v: f64,
    },
    /// `V(r) = v·shape(r)` for an arbitrary shape function.
    Custom {
        /// Shape `f(r)`; the full potential is `v·f(r)`.
        shape: ShapeFn,
        /// Coupling `v`.
        v: f64,
        /// Human-readable description used in reports.
        label: String,
    },
}

impl PotentialModel {
    /// Builds a custom potential from a shape closure.
    pub fn custom(
        shape: impl Fn(f64) -> f64 + Send + Sync + 'static,
        v: f64,
        label: impl Into<String>,
    ) -> Self {
        PotentialModel::Custom { shape: Arc::new(shape), v, label: label.into() }
    }

    /// Evaluates `V(r)`.
    #[must_use]
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            PotentialModel::Oscillator { v } => v * r * r,
            PotentialModel::Linear { v } => v * r,
            PotentialModel::Coulomb { v } => -v / r,
            PotentialModel::ShiftedCoulomb { v, c } => -v / r + c,
            PotentialModel::Kratzer { a, v, c } => a / (r * r) - v / r + c,
            PotentialModel::Log { v } => v * r.ln(),
            PotentialModel::Custom { shape, v, .. } => v * shape(r),
        }
    }

    /// The coupling strength `v` of the model.
    #[must_use]
    pub fn coupling(&self) -> f64 {
        match self {
            PotentialModel::Oscillator { v }
            | PotentialModel::Linear { v }
            | PotentialModel::Coulomb { v }
            | PotentialModel::ShiftedCoulomb { v, .. }
            | PotentialModel::Kratzer { v, .. }
            | PotentialModel::Log { v }
            | PotentialModel::Custom { v, .. } => *v,
        }
    }

    /// Short family name for reports and CSV output.
    #[must_use]
    pub fn family_name(&self) -> &'static str {
        match self {
            PotentialModel::Oscillator { .. } => "oscillator",
            PotentialModel::Linear { .. } => "linear",
            PotentialModel::Coulomb { .. } => "coulomb",
            PotentialModel::ShiftedCoulomb { .. } => "shifted-coulomb",
            PotentialModel::Kratzer { .. } => "kratzer",
            PotentialModel::Log { .. } => "log",
            PotentialModel::Custom { .. } => "custom",
        }
    }

    /// One-line description including parameters.
    #[must_use]
    pub fn describe(&self) -> String {
        match self {
            PotentialModel::Oscillator { v } => format!("oscillator v={v}"),
            PotentialModel::Linear { v } => format!("linear v={v}"),
            PotentialModel::Coulomb { v } => format!("coulomb v={v}"),
            PotentialModel::ShiftedCoulomb { v, c } => format!("shifted-coulomb v={v} c={c}"),
            PotentialModel::Kratzer { a, v, c } => format!("kratzer a={a} v={v} c={c}"),
            PotentialModel::Log { v } => format!("log v={v}"),
            PotentialModel::Custom { v, label, .. } => format!("custom[{label}] v={v}"),
        }
    }
}

impl fmt::Debug for PotentialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn evaluation_matches_formulas() {
        let r = 2.0;
        assert_relative_eq!(PotentialModel::Oscillator { v: 1.5 }.eval(r), 6.0);
        assert_relative_eq!(PotentialModel::Linear { v: -0.5 }.eval(r), -1.0);
        assert_relative_eq!(PotentialModel::Coulomb { v: 2.0 }.eval(r), -1.0);
        assert_relative_eq!(PotentialModel::ShiftedCoulomb { v: 2.0, c: 0.25 }.eval(r), -0.75);
        assert_relative_eq!(PotentialModel::Kratzer { a: 0.4, v: 2.0, c: 0.25 }.eval(r), -0.65);
        assert_relative_eq!(PotentialModel::Log { v: 3.0 }.eval(r), 3.0 * 2f64.ln());
        let custom = PotentialModel::custom(|r| r.powi(3), 2.0, "r^3");
        assert_relative_eq!(custom.eval(r), 16.0);
    }

    #[test]
    fn descriptions_carry_parameters() {
        let p = PotentialModel::Kratzer { a: 0.1, v: 1.0, c: 0.5 };
        assert_eq!(p.describe(), "kratzer a=0.1 v=1 c=0.5");
        assert_eq!(p.family_name(), "kratzer");
        assert_eq!(format!("{p:?}"), p.describe());
    }
}
