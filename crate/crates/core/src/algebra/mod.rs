//! Weight algebras: an ordered domain with a top element `∞` and one
//! monotonic, increasing function per symbol.
//!
//! Four algebras are built in. [`SizeAlgebra`] and [`HeightAlgebra`] measure
//! node count and height. [`AffineAlgebra`] interprets each symbol as
//! `c + a1*x1 + .. + an*xn` with user-supplied constants and coefficients.
//! [`MinTermAlgebra`] weighs a term by the term itself under a total
//! simplification ordering, so the minimal weight of a language is its
//! least member.

mod cost;
mod laws;
mod minterm;

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::grammar::{GrammarError, Signature, Symbol, Term};

pub use cost::{AffineAlgebra, AffineCost, AffineSpec, HeightAlgebra, SizeAlgebra};
pub use laws::{check_algebra_laws, Law, LawReport, LawViolation};
pub use minterm::{MinTermAlgebra, MinTermWeight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("no weight function for symbol `{0}`")]
    MissingSymbol(String),
    #[error("weight function for `{symbol}` expects {expected} arguments, grammar uses {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("coefficient {coefficient} for argument {position} of `{symbol}` is below 1")]
    CoefficientTooSmall {
        symbol: String,
        position: usize,
        coefficient: i64,
    },
    #[error("constant {constant} of `{symbol}` is negative")]
    NegativeConstant { symbol: String, constant: i64 },
    #[error("duplicate definition for `{0}`")]
    DuplicateSymbol(String),
    #[error("cost spec line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Term(#[from] GrammarError),
}

/// An ordered weight domain with top element and per-symbol weight functions.
///
/// Implementations must keep `compare` a total order with `infinity` as its
/// unique maximum, and every `apply` must be monotonic, increasing in each
/// argument, and absorbing for `infinity`. [`check_algebra_laws`] samples
/// these laws.
pub trait WeightAlgebra {
    type Weight: Clone + fmt::Debug;

    fn infinity(&self) -> Self::Weight;

    fn compare(&self, a: &Self::Weight, b: &Self::Weight) -> Ordering;

    fn apply(&self, symbol: &Symbol, args: &[Self::Weight]) -> Self::Weight;

    /// Text form of a weight; `∞` renders as `INF`.
    fn render(&self, w: &Self::Weight) -> String;

    /// Fails when some symbol of `sig` has no weight function.
    fn check_signature(&self, _sig: &Signature) -> Result<(), AlgebraError> {
        Ok(())
    }

    fn is_infinite(&self, w: &Self::Weight) -> bool {
        self.compare(w, &self.infinity()) == Ordering::Equal
    }

    fn less(&self, a: &Self::Weight, b: &Self::Weight) -> bool {
        self.compare(a, b) == Ordering::Less
    }

    /// Weight of a ground term, folding `apply` bottom-up.
    fn weigh(&self, sig: &Signature, t: &Term) -> Result<Self::Weight, AlgebraError> {
        sig.check_term(t)?;
        Ok(fold(self, sig, t))
    }
}

fn fold<A: WeightAlgebra + ?Sized>(alg: &A, sig: &Signature, t: &Term) -> A::Weight {
    let args: Vec<A::Weight> = t.children().iter().map(|c| fold(alg, sig, c)).collect();
    let sym = sig.by_name(t.symbol()).expect("checked term");
    alg.apply(sym, &args)
}

/// Naturals extended with `∞`; arithmetic saturates to `∞` on overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

impl Cost {
    pub fn finite(self) -> Option<u64> {
        match self {
            Cost::Finite(v) => Some(v),
            Cost::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Cost::Infinite
    }

    pub fn saturating_add(self, other: Cost) -> Cost {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => {
                a.checked_add(b).map_or(Cost::Infinite, Cost::Finite)
            }
            _ => Cost::Infinite,
        }
    }

    pub fn scale(self, k: u64) -> Cost {
        match self {
            Cost::Finite(a) => a.checked_mul(k).map_or(Cost::Infinite, Cost::Finite),
            Cost::Infinite => Cost::Infinite,
        }
    }
}

impl From<u64> for Cost {
    fn from(v: u64) -> Self {
        Cost::Finite(v)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(v) => write!(f, "{v}"),
            Cost::Infinite => f.write_str("INF"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_saturates() {
        assert_eq!(
            Cost::Finite(u64::MAX).saturating_add(Cost::Finite(1)),
            Cost::Infinite
        );
        assert_eq!(Cost::Finite(u64::MAX / 2 + 1).scale(2), Cost::Infinite);
        assert_eq!(
            Cost::Finite(3).saturating_add(Cost::Infinite),
            Cost::Infinite
        );
        assert!(Cost::Finite(u64::MAX) < Cost::Infinite);
        assert_eq!(Cost::Infinite.to_string(), "INF");
    }
}
