use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("phoneme /{0}/ has no inverse grapheme")]
    UnmappedPhoneme(String),

    #[error("phoneme /{0}/ is not in the inventory")]
    PhonemeNotInInventory(String),

    #[error("invalid phoneme inventory: {0}")]
    InvalidInventory(String),

    #[error("invalid grapheme table: {0}")]
    InvalidTable(String),

    #[error("resource mismatch: {0}")]
    ResourceMismatch(String),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("vocabulary is empty")]
    EmptyVocabulary,

    #[error("bitext is empty")]
    EmptyBitext,

    #[error("cannot split {lines} lines into {chunks} chunks")]
    TooFewLines { lines: usize, chunks: usize },

    #[error("length mismatch: {left} vs {right} lines")]
    LengthMismatch { left: usize, right: usize },

    #[error("both strings are empty")]
    BothEmpty,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid language file: {0}")]
    InvalidLanguageFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(line: usize, reason: impl Into<String>) -> Self {
        Error::MalformedLine { line, reason: reason.into() }
    }
}
