//! Degree values in `{-inf} ∪ {0, 1, 2, ...}` with absorbing `-inf`.
//!
//! The degree of the zero polynomial (and of the identity map) is `-inf`.
//! Addition absorbs: `-inf + d = -inf`. Subtracting below zero lands on
//! `-inf` as well, so `Fin(0).pred() == NegInf`.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;

/// An element of `ℕ₀ ∪ {-inf}`, ordered with `-inf` below every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Fin(u64),
}

impl Degree {
    pub const ZERO: Degree = Degree::Fin(0);

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }

    pub fn is_finite(self) -> bool {
        !self.is_neg_inf()
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Degree::NegInf => None,
            Degree::Fin(d) => Some(d),
        }
    }

    /// `self + 1`; the successor of `-inf` stays `-inf`.
    pub fn succ(self) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Fin(d) => Degree::Fin(d + 1),
        }
    }

    /// `self - 1` with the convention that going below zero gives `-inf`.
    pub fn pred(self) -> Degree {
        match self {
            Degree::NegInf | Degree::Fin(0) => Degree::NegInf,
            Degree::Fin(d) => Degree::Fin(d - 1),
        }
    }

    /// Clamp `-inf` up to zero; finite values are unchanged.
    pub fn clamp_to_zero(self) -> Degree {
        match self {
            Degree::NegInf => Degree::Fin(0),
            d => d,
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Fin(a), Degree::Fin(b)) => Degree::Fin(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl Sum for Degree {
    fn sum<I: Iterator<Item = Degree>>(iter: I) -> Degree {
        iter.fold(Degree::Fin(0), Add::add)
    }
}

impl From<u64> for Degree {
    fn from(d: u64) -> Degree {
        Degree::Fin(d)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Fin(d) => write!(f, "{d}"),
        }
    }
}
