//! Exact analytic realization of words under the two toy models, with
//! renormalization schemes, epsilon expansion over an exact coefficient
//! ring, and pole/finiteness checks.

pub mod epsfn;
pub mod eval;
pub mod ring;
pub mod scaled;
pub mod series;

pub use eval::{equivalent_by_grade, eval_expr, eval_expr_exact, resolve_overlap, Scheme, Window};
pub use scaled::{bar_eval, eval_ipw, eval_word, BetaFactor, GammaProd, Model, ScaledSum, TermKey};
pub use series::{expand, EpsSeries};

use alloc::string::String;
use core::fmt;

/// Model-domain failures: inputs outside the analytically solvable
/// patterns, or windows too narrow to certify a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    /// The iterated model is defined for logarithmic letters only.
    LinearLetterInIterated { letter: String },
    /// A linearly divergent letter appeared below another letter; the
    /// propagator model only nests logarithmic content under a linear root.
    LinearContentNested { word: String },
    /// A Gamma function pinned at a nonpositive integer.
    GammaPole { at: i64 },
    /// The requested window cannot certify the result: its floor lies
    /// above the certified pole bound of the value.
    WindowTooSmall { needed_lo: i64, requested_lo: i64 },
    /// The MS scheme has no closed form; the exact evaluation path only
    /// accepts the momentum and identity schemes.
    SchemeNotClosedForm,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::LinearLetterInIterated { letter } => {
                write!(
                    f,
                    "iterated model rejects linearly divergent letter `{letter}`"
                )
            }
            ModelError::LinearContentNested { word } => write!(
                f,
                "propagator model: linear divergence nested below a letter in `{word}`"
            ),
            ModelError::GammaPole { at } => {
                write!(f, "Gamma function pinned at nonpositive integer {at}")
            }
            ModelError::WindowTooSmall {
                needed_lo,
                requested_lo,
            } => write!(
                f,
                "window floor {requested_lo} cannot certify poles down to {needed_lo}"
            ),
            ModelError::SchemeNotClosedForm => {
                f.write_str("scheme has no exact closed form; use the series evaluation")
            }
        }
    }
}
