use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no genomes")]
    EmptyCollection,
    #[error("genome {index} ({name}) is empty")]
    EmptyGenome { index: usize, name: String },
    #[error("genome {genome}: reserved symbol {symbol:?} at offset {offset}")]
    ReservedSymbol {
        genome: usize,
        offset: usize,
        symbol: char,
    },
    #[error("genome {genome}: invalid symbol {symbol:?} at offset {offset} (use --allow-n to admit ambiguity codes)")]
    InvalidSymbol {
        genome: usize,
        offset: usize,
        symbol: char,
    },
    #[error("malformed FASTA at line {line}: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("position {0} is a separator")]
    SeparatorPosition(usize),
    #[error("position {position} out of bounds for text of length {len}")]
    OutOfBounds { position: usize, len: usize },

    #[error("empty range [{lo}, {hi}]")]
    EmptyRange { lo: usize, hi: usize },
    #[error("empty SA interval")]
    EmptyInterval,
    #[error("symbol {0} is not a legal query symbol for this index")]
    NotInAlphabet(u32),
    #[error("symbol {0} does not occur in the indexed text")]
    AbsentSymbol(u32),
    #[error("symbol {symbol} exceeds the declared alphabet size {size}")]
    AlphabetOverflow { symbol: u32, size: u64 },
    #[error("text of length {0} is too long for 32-bit positions")]
    TextTooLong(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("read contains separator symbol {0:?}")]
    SeparatorInRead(char),

    #[error("not a KTK2 index (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    UnsupportedVersion(u16),
    #[error("index file is truncated")]
    Truncated,
    #[error("index checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error("corrupt index: {0}")]
    Corrupt(String),

    #[error("newick parse error at byte {offset}: {reason}")]
    Newick { offset: usize, reason: String },
    #[error("tree has {leaves} leaves but the collection has {genomes} genomes")]
    LeafCount { leaves: usize, genomes: usize },
    #[error("duplicate leaf label {0:?}")]
    DuplicateLabel(String),
    #[error("tree leaf {position} is {found:?} but genome {position} is {expected:?}")]
    LeafOrder {
        position: usize,
        found: String,
        expected: String,
    },
    #[error("genome {genome} out of range for a tree with {leaves} leaves")]
    GenomeOutOfRange { genome: usize, leaves: usize },

    #[error("no genome is at least {0} bases long")]
    GenomesTooShort(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
