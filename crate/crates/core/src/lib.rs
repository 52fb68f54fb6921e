//! Exact computations with finite-group 3-cocycles: the transgressed
//! 2-cocycle on centralizers, 1-dimensional 2- and 3-characters, induced
//! actions as monomial matrices over a subgroup, and induced character
//! formulas.
//!
//! Everything is exact. Roots of unity are elements of ℚ/ℤ
//! ([`CircleElement`]) and character values are formal rational
//! combinations of them ([`CyclotomicValue`]).

pub mod character;
pub mod circle;
pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod induced;
pub mod io;
pub mod library;
pub mod transgression;

use serde::Serialize;

pub use character::CharacterTable;
pub use circle::{CircleElement, CyclotomicValue};
pub use cochain::{Cochain, ThreeCocycle};
pub use error::{Error, Result};
pub use group::{BlockClass, BlockDecomposition, FiniteGroup, Subgroup};
pub use induced::{MonomialMatrix, Transversal};
pub use transgression::{TransgressedCocycle, TransgressionKind};

/// Outcome of an exhaustive check: either it holds, or the first violating
/// tuple in scan order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(Vec<usize>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}
