use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A token of the `s^c` text encoding could not be read.
    MalformedToken(String),
    DuplicateSymbol(u32),
    MissingSymbol(u32),
    /// Colours are 1-based and must not exceed the rank.
    ColourOutOfRange { colour: u32, rank: u32 },
    InvalidRank(u32),
    RankMismatch { expected: u32, found: u32 },
    LengthMismatch { expected: usize, found: usize },
    IndexOutOfRange { index: usize, len: usize },
    IndicesNotIncreasing,
    /// A numeric parameter violated its documented bounds.
    InvalidParameter(String),
    NotAMember(String),
    EmptyPermutation,
    BudgetExceeded { limit: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::MalformedToken(t) => write!(f, "malformed token `{t}` (expected `symbol^colour`)"),
            Error::DuplicateSymbol(s) => write!(f, "symbol {s} appears more than once"),
            Error::MissingSymbol(s) => write!(f, "symbol {s} is missing"),
            Error::ColourOutOfRange { colour, rank } => {
                write!(f, "colour {colour} is outside 1..={rank}")
            }
            Error::InvalidRank(r) => write!(f, "rank must be at least 1, got {r}"),
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected r={expected}, found r={found}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "position {index} is outside 1..={len}")
            }
            Error::IndicesNotIncreasing => f.write_str("occurrence indices must be strictly increasing"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NotAMember(msg) => write!(f, "not a member: {msg}"),
            Error::EmptyPermutation => f.write_str("operation needs a nonempty permutation"),
            Error::BudgetExceeded { limit } => {
                write!(f, "enumeration budget of {limit} states exceeded")
            }
        }
    }
}

impl core::error::Error for Error {}
