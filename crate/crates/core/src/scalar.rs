//! The max-plus scalar: an exact rational extended with both infinities.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// An element of R ∪ {-inf, +inf} with exact rational finite part.
///
/// The derived order is the natural one: `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedReal {
    NegInf,
    Finite(Rational),
    PosInf,
}

pub use ExtendedReal::{NegInf, PosInf};

impl ExtendedReal {
    /// The multiplicative unit `e = 0`.
    pub fn zero() -> Self {
        ExtendedReal::Finite(Rational::zero())
    }

    pub fn int(v: i64) -> Self {
        ExtendedReal::Finite(int(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, NegInf)
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, PosInf)
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `a ⊗ b`: ordinary addition, with `-inf` absorbing everything
    /// (including `+inf`) and `+inf` absorbing finite values.
    pub fn otimes(&self, other: &Self) -> Self {
        match (self, other) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::Finite(a + b),
        }
    }

    /// In-place `self = self ⊕ other`. Returns whether `self` increased.
    pub fn raise_to(&mut self, other: &Self) -> bool {
        if *other > *self {
            *self = other.clone();
            true
        } else {
            false
        }
    }

    /// The opposite in the ordinary sense; the infinities swap.
    pub fn negate(&self) -> Self {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            ExtendedReal::Finite(v) => ExtendedReal::Finite(-v),
        }
    }
}

impl From<Rational> for ExtendedReal {
    fn from(v: Rational) -> Self {
        ExtendedReal::Finite(v)
    }
}

impl From<i64> for ExtendedReal {
    fn from(v: i64) -> Self {
        ExtendedReal::int(v)
    }
}

impl FromStr for ExtendedReal {
    type Err = Error;

    /// Accepts `-inf`, `inf`, `+inf`, `.` (the -inf placeholder used in
    /// printed matrices) or any form understood by [`parse_rational`].
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" | "-Inf" | "-infinity" | "." => Ok(NegInf),
            "inf" | "+inf" | "Inf" | "infinity" => Ok(PosInf),
            other => parse_rational(other).map(ExtendedReal::Finite),
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("inf"),
            ExtendedReal::Finite(v) => f.write_str(&format_rational(v)),
        }
    }
}
