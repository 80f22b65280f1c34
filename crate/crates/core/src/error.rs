//! Crate-wide error type.

use std::error;
use std::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the crate.
///
/// Variants carry the offending values so callers can report precise
/// diagnostics without string-matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Chain order must be at least 1.
    InvalidChainOrder,
    /// Two elements from chains of different order were combined.
    ChainMismatch { left: u32, right: u32 },
    /// A rank outside `1..=order` was used.
    RankOutOfRange { rank: u32, order: u32 },
    /// A term must mention at least one variable.
    EmptyTerm,
    /// A variable index outside `1..=n` was used.
    VarOutOfRange { var: u32, n: u32 },
    /// Equation text could not be parsed.
    Parse(ParseError),
    /// The equation does not mention every variable of the ambient set.
    MissingVariables { n: u32 },
    /// No valid equation class with these parameters.
    InvalidClass { k1: u32, k2: u32, n: u32 },
    /// A size guard was hit; the value names the refusing operation.
    CapExceeded { what: &'static str },
    /// The operation is only defined when the variable count exceeds the
    /// chain order.
    UnsupportedRegime { n: u32, l: u32 },
    /// The operation needs a nonempty set of points.
    EmptySet,
    /// Two sets (or a point and a set) live in different ambient spaces.
    DimensionMismatch,
    /// The set is not a solution set of any equation system.
    NotAlgebraic,
    /// The given point does not solve the given equation.
    NotASolution,
    /// Blocks failed the ordered-partition invariants; the message says how.
    InvalidPartition(String),
    /// An arithmetic argument outside the operation's domain.
    InvalidArgument(&'static str),
}

/// Syntax error produced by the equation parser.
///
/// `position` is a zero-based byte offset into the input text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.message, self.position)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidChainOrder => write!(f, "chain order must be at least 1"),
            Error::ChainMismatch { left, right } => {
                write!(
                    f,
                    "elements of chains of order {left} and {right} cannot be combined"
                )
            }
            Error::RankOutOfRange { rank, order } => {
                write!(f, "rank {rank} is outside 1..={order}")
            }
            Error::EmptyTerm => write!(f, "a term must mention at least one variable"),
            Error::VarOutOfRange { var, n } => {
                write!(f, "variable x{var} is outside the ambient set x1..x{n}")
            }
            Error::Parse(e) => write!(f, "parse error: {e}"),
            Error::MissingVariables { n } => {
                write!(f, "equation must mention every variable x1..x{n}")
            }
            Error::InvalidClass { k1, k2, n } => {
                write!(f, "no equation class ({k1}, {k2}) over {n} variables")
            }
            Error::CapExceeded { what } => write!(f, "size cap exceeded in {what}"),
            Error::UnsupportedRegime { n, l } => {
                write!(
                    f,
                    "need more variables than chain elements (got n = {n}, l = {l})"
                )
            }
            Error::EmptySet => write!(f, "operation requires a nonempty set of points"),
            Error::DimensionMismatch => write!(f, "operands live in different ambient spaces"),
            Error::NotAlgebraic => write!(f, "set is not a solution set of any system"),
            Error::NotASolution => write!(f, "point does not solve the equation"),
            Error::InvalidPartition(msg) => write!(f, "invalid ordered partition: {msg}"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
        }
    }
}

impl error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}
