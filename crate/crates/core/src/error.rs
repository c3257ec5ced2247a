//! Error type shared across the library.
//!
//! All fallible operations are exact, so errors signal genuine domain
//! problems (a pole of a rational function, a divergent regularization,
//! malformed input data), never numerical trouble.

use std::fmt;

use crate::rat::{format_rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two sets with different ambient dimensions were combined.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation requiring a 1-dimensional set was given another dimension.
    NotALine { found: usize },
    /// Evaluation of a rational function at a pole (after full cancellation).
    Pole { at: Rat },
    /// Power-series expansion at 0 does not exist (denominator vanishes at 0).
    ExpansionAtZero,
    /// Regularized evaluation of a series that has no rational closed form.
    Divergence,
    /// A series whose expansion is not a cell count: some prefix coefficient
    /// is negative or non-integral.
    NotACellSeries { index: usize, coefficient: Rat },
    /// Piecewise data whose regions overlap or fail to cover the ambient space.
    BadPartition(String),
    /// Structurally invalid input data (graphs, group actions, tables, pieces).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotALine { found } => {
                write!(f, "operation requires a 1-dimensional set, found dimension {found}")
            }
            Error::Pole { at } => write!(f, "pole at t = {}", format_rat(at)),
            Error::ExpansionAtZero => write!(f, "no power-series expansion: denominator vanishes at t = 0"),
            Error::Divergence => write!(f, "series has no rational regularization"),
            Error::NotACellSeries { index, coefficient } => write!(
                f,
                "coefficient of t^{index} is {}, not a non-negative integer",
                format_rat(coefficient)
            ),
            Error::BadPartition(msg) => write!(f, "pieces do not partition the ambient space: {msg}"),
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
