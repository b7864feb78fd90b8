use thiserror::Error;

use crate::exactlin::Rational;

/// Which factor of a factorization an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    A,
    B,
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Factor::A => write!(f, "A"),
            Factor::B => write!(f, "B"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    /// Row and column are 1-based.
    #[error("negative entry {value} in {factor} at row {row}, column {col}")]
    NegativeEntry {
        factor: Factor,
        row: usize,
        col: usize,
        value: Rational,
    },

    #[error("{factor} has rank {rank}, expected full rank {expected}")]
    RankDeficient {
        factor: Factor,
        rank: usize,
        expected: usize,
    },

    /// A zero row of `A` or zero column of `B`; `index` is 1-based.
    #[error("{factor} has an all-zero {line} at index {index}")]
    ZeroLine {
        factor: Factor,
        line: &'static str,
        index: usize,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "no strictly positive solution for the lifted column (tried {attempts} interior points)"
    )]
    LiftInfeasible { attempts: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
