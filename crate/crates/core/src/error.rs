use thiserror::Error;

/// Failures of the integer codecs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("value too large: {0} does not fit in 60 bits")]
    ValueTooLarge(u64),
    #[error("corrupt stream")]
    CorruptStream,
    #[error("sequence is not monotone at index {0}")]
    NotMonotone(usize),
    #[error("value {value} outside universe {universe}")]
    OutsideUniverse { value: u64, universe: u64 },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("value {value} does not fit in {width} bits")]
    ValueTooWide { value: u64, width: usize },
    #[error("block width must be in 1..=64, got {0}")]
    BadBlockWidth(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty text")]
    EmptyText,
    #[error("text of {0} symbols does not fit the chosen index type")]
    TextTooLong(usize),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("not a GCIS container")]
    NotContainer,
    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),
    #[error("unknown codec profile {0}")]
    UnknownProfile(u8),
    #[error("truncated header")]
    TruncatedHeader,
    #[error("truncated level")]
    TruncatedLevel,
    #[error("truncated final string")]
    TruncatedFinalString,
    #[error("truncated extraction index")]
    TruncatedIndex,
    #[error("corrupt container: {0}")]
    CorruptContainer(String),
    #[error("corrupt front coding")]
    CorruptFrontCoding,
    #[error("corrupt grammar")]
    CorruptGrammar,
    #[error("range out of bounds")]
    RangeOutOfBounds,
    #[error("rule {name} out of range at level {level}")]
    RuleOutOfRange { level: usize, name: u64 },
    #[error("profile lacks random access")]
    NoRandomAccess,
}

impl Error {
    /// True for errors caused by malformed container bytes.
    pub fn is_corruption(&self) -> bool {
        matches!(
            self,
            Error::NotContainer
                | Error::UnsupportedVersion(_)
                | Error::UnknownProfile(_)
                | Error::TruncatedHeader
                | Error::TruncatedLevel
                | Error::TruncatedFinalString
                | Error::TruncatedIndex
                | Error::CorruptContainer(_)
                | Error::CorruptFrontCoding
                | Error::CorruptGrammar
                | Error::Codec(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
