//! Exact arithmetic for Deligne-Lusztig type spaces in loop groups.
//!
//! Everything works in the equal characteristic model: coefficients live in
//! a finite field `F_{q^m}`, the uniformizer is `t`, and Frobenius raises
//! coefficients to the `q`-th power while fixing `t`.
//!
//! The modules build on each other:
//!
//! * [`coeffring`]: finite fields and windowed Laurent series.
//! * [`latmat`]: matrices over `F_{q^m}((t))`, determinants, Bruhat cells.
//! * [`isocrystal`]: Newton slopes and Kottwitz points for `GL_n`.
//! * [`weyl`]: finite Coxeter groups with a diagram automorphism.
//! * [`braid`]: the positive braid monoid and its Garside normal form.
//! * [`dlspace`]: membership predicates and point counts for `X_w(b)`.

pub mod braid;
pub mod coeffring;
pub mod dlspace;
mod error;
pub mod isocrystal;
pub mod latmat;
pub mod weyl;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Three-valued answer for predicates evaluated on truncated data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }

    /// Logical and; `No` dominates `Unknown`.
    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::No, _) | (_, TriState::No) => TriState::No,
            (TriState::Yes, TriState::Yes) => TriState::Yes,
            _ => TriState::Unknown,
        }
    }
}

impl std::fmt::Display for TriState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        })
    }
}
