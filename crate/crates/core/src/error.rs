use alloc::string::String;
use core::fmt;

/// Everything that can go wrong while building or interrogating a problem.
///
/// Row and column numbers in messages are 1-based, matching how journals are
/// usually named (`J1`, `J2`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A problem needs at least one journal.
    EmptyProblem,
    /// A citation row has the wrong length.
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    /// The citation matrix has the wrong number of rows.
    WrongRowCount { rows: usize, expected: usize },
    /// Citation counts cannot be negative.
    NegativeEntry { row: usize, col: usize },
    /// Journal names must be unique.
    DuplicateJournal(String),
    /// A journal name was not found in the problem.
    JournalNotFound(String),
    /// A journal index is out of range.
    IndexOutOfRange { index: usize, n: usize },
    /// An operation on a pair of journals was given the same journal twice.
    IdenticalPair { index: usize },
    /// Two pairs of journals were required to be disjoint but overlap.
    OverlappingPairs,
    /// Summation requires both problems to list the same journals in the
    /// same order.
    JournalMismatch,
    /// The operation is only defined on unweighted problems or layers.
    NotUnweighted { row: usize, col: usize },
    /// Decomposition needs every off-diagonal matches entry to be a
    /// nonnegative integer.
    NonIntegralMatches { row: usize, col: usize },
    /// The search granularity must be positive and divide 1.
    InvalidGranularity,
    /// A citation entry is not a multiple of the search granularity.
    OffGrid { row: usize, col: usize },
    /// The decomposition cap must be at least 1.
    ZeroCap,
    /// Fewer layers were allowed than the matches matrix requires.
    MaxLayersTooSmall { required: usize, given: usize },
    /// The instance is too large for exhaustive enumeration.
    TooManyJournals { n: usize, max: usize },
    /// Aggregation checks need at least three journals.
    TooFewJournals { n: usize, min: usize },
    /// The slice passed as a permutation is not one.
    InvalidPermutation,
    /// A string could not be read as a rational number.
    ParseRational(String),
    /// An instance family's alphabet contains a negative citation value.
    InvalidAlphabet,
    /// The instance family has more members than can be indexed.
    FamilyTooLarge,
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyProblem => write!(f, "a problem needs at least one journal"),
            Error::RaggedRow { row, len, expected } => write!(
                f,
                "citation row {} has {} entries, expected {}",
                row + 1,
                len,
                expected
            ),
            Error::NegativeEntry { row, col } => write!(
                f,
                "citation entry at row {}, column {} is negative",
                row + 1,
                col + 1
            ),
            Error::WrongRowCount { rows, expected } => write!(
                f,
                "citation matrix has {rows} rows, expected {expected} (one per journal)"
            ),
            Error::DuplicateJournal(name) => write!(f, "duplicate journal name {name:?}"),
            Error::JournalNotFound(name) => write!(f, "no journal named {name:?}"),
            Error::IndexOutOfRange { index, n } => {
                write!(f, "journal index {index} out of range for {n} journals")
            }
            Error::IdenticalPair { index } => write!(
                f,
                "expected two distinct journals, got journal {} twice",
                index + 1
            ),
            Error::OverlappingPairs => write!(f, "the two journal pairs must be disjoint"),
            Error::JournalMismatch => {
                write!(f, "problems must list the same journals in the same order")
            }
            Error::NotUnweighted { row, col } => write!(
                f,
                "matches entry at row {}, column {} is not 0 or 1; the layer is not unweighted",
                row + 1,
                col + 1
            ),
            Error::NonIntegralMatches { row, col } => write!(
                f,
                "matches entry at row {}, column {} is not an integer; no unweighted decomposition exists",
                row + 1,
                col + 1
            ),
            Error::InvalidGranularity => {
                write!(f, "granularity must be positive and divide 1")
            }
            Error::OffGrid { row, col } => write!(
                f,
                "citation entry at row {}, column {} is not a multiple of the granularity",
                row + 1,
                col + 1
            ),
            Error::ZeroCap => write!(f, "decomposition cap must be at least 1"),
            Error::MaxLayersTooSmall { required, given } => write!(
                f,
                "max layers {given} is below the {required} required by the matches matrix"
            ),
            Error::TooManyJournals { n, max } => {
                write!(f, "{n} journals exceed the exhaustive-enumeration maximum of {max}")
            }
            Error::TooFewJournals { n, min } => {
                write!(f, "need at least {min} journals, got {n}")
            }
            Error::InvalidPermutation => write!(f, "not a permutation of the journal indices"),
            Error::ParseRational(s) => write!(f, "cannot read {s:?} as a rational number"),
            Error::InvalidAlphabet => {
                write!(f, "family alphabet entries must be nonnegative")
            }
            Error::FamilyTooLarge => {
                write!(f, "instance family is too large to enumerate")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
