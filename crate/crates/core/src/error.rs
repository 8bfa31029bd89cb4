use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Pipeline stage an error was raised in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Distance,
    Tree,
    Merge,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Distance => "distance",
            Stage::Tree => "guide tree",
            Stage::Merge => "merge",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty FASTA input")]
    EmptyInput,
    #[error("line {line}: sequence data before the first '>' header")]
    MissingHeader { line: usize },
    #[error("line {line}: header has no identifier")]
    EmptyIdentifier { line: usize },
    #[error("record '{id}' (line {line}) has an empty body")]
    EmptyRecord { id: String, line: usize },
    #[error("illegal character {ch:?} at line {line}, byte offset {offset}")]
    IllegalCharacter { ch: char, line: usize, offset: usize },
    #[error("duplicate sequence identifier '{0}'")]
    DuplicateId(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("sequence '{0}' consists only of gaps")]
    AllGap(String),
    #[error("invalid alignment: {0}")]
    InvalidMsa(String),

    #[error("gapped input where a raw sequence is required ({0})")]
    UnexpectedGap(String),
    #[error("cannot align two empty sequences")]
    BothEmpty,

    #[error("alignment has no comparable (gap-free) columns")]
    NoComparableColumns,
    #[error("pair ({a}, {b}): {source}")]
    Pair {
        a: String,
        b: String,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),

    #[error("neighbor-joining rates need at least 3 live clusters, found {0}")]
    TooFewClusters(usize),

    #[error("profile needs at least 2 rows, got {0}")]
    ProfileTooShallow(usize),

    #[error("need at least {need} sequences, got {got}")]
    TooFewSequences { need: usize, got: usize },
    #[error("{stage} stage: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at(self, stage: Stage) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
