//! Genome collections and their `$`-separated concatenation.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::alphabet::{self, Alphabet, Symbol, DOLLAR, WILDCARD};
use crate::digest::DigestParams;
use crate::error::{Error, Result};
use crate::suffix::BitVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Fasta,
    /// One genome per line.
    Lines,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Map IUPAC ambiguity codes to the never-matching wildcard instead of failing.
    pub allow_n: bool,
}

/// Where an indexed text came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Raw,
    Kernel { k_max: u32 },
    Digest { digest: DigestParams },
    DigestKernel { digest: DigestParams, k_max: u32 },
}

impl Provenance {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            Provenance::Raw | Provenance::Kernel { .. } => Alphabet::Dna,
            Provenance::Digest { digest } | Provenance::DigestKernel { digest, .. } => {
                Alphabet::Digest { k: digest.k }
            }
        }
    }

    pub fn digest_params(&self) -> Option<&DigestParams> {
        match self {
            Provenance::Digest { digest } | Provenance::DigestKernel { digest, .. } => Some(digest),
            _ => None,
        }
    }

    /// Short label such as `kernel(k_max=4)`.
    pub fn label(&self) -> String {
        match self {
            Provenance::Raw => "raw".into(),
            Provenance::Kernel { k_max } => format!("kernel(k_max={k_max})"),
            Provenance::Digest { digest } => format!("digest(k={},w={})", digest.k, digest.w),
            Provenance::DigestKernel { digest, k_max } => {
                format!("digest-kernel(k={},w={},k_max={k_max})", digest.k, digest.w)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenomeCollection {
    genomes: Vec<Vec<Symbol>>,
    names: Vec<String>,
}

impl GenomeCollection {
    pub fn new(genomes: Vec<Vec<Symbol>>, names: Vec<String>) -> Result<Self> {
        if genomes.is_empty() {
            return Err(Error::EmptyCollection);
        }
        if names.len() != genomes.len() {
            return Err(Error::InvalidParameter(format!(
                "{} names for {} genomes",
                names.len(),
                genomes.len()
            )));
        }
        for (index, g) in genomes.iter().enumerate() {
            if g.is_empty() {
                return Err(Error::EmptyGenome {
                    index,
                    name: names[index].clone(),
                });
            }
            if let Some(offset) = g
                .iter()
                .position(|s| !(alphabet::FIRST_PAYLOAD..=WILDCARD).contains(s))
            {
                return Err(Error::InvalidSymbol {
                    genome: index,
                    offset,
                    symbol: '?',
                });
            }
        }
        Ok(Self { genomes, names })
    }

    /// Strict parse of in-memory genome strings, named `g0`, `g1`, ...
    pub fn from_strs<S: AsRef<str>>(genomes: &[S]) -> Result<Self> {
        let text = genomes
            .iter()
            .map(|g| g.as_ref())
            .collect::<Vec<_>>()
            .join("\n");
        Self::parse(text.as_bytes(), InputFormat::Lines, ParseOptions::default())
    }

    pub fn parse<R: BufRead>(input: R, format: InputFormat, opts: ParseOptions) -> Result<Self> {
        let mut genomes: Vec<Vec<Symbol>> = Vec::new();
        let mut names: Vec<String> = Vec::new();
        for (lineno, line) in input.lines().enumerate() {
            let line = line?;
            let line = line.trim_end_matches(['\r', '\n']);
            match format {
                InputFormat::Fasta => {
                    if let Some(header) = line.strip_prefix('>') {
                        let name = header.split_whitespace().next().ok_or_else(|| {
                            Error::MalformedHeader {
                                line: lineno + 1,
                                reason: "empty sequence name".into(),
                            }
                        })?;
                        names.push(name.to_string());
                        genomes.push(Vec::new());
                        continue;
                    }
                    let seq = line.trim();
                    if seq.is_empty() {
                        continue;
                    }
                    let Some(current) = genomes.last_mut() else {
                        return Err(Error::MalformedHeader {
                            line: lineno + 1,
                            reason: "sequence data before the first '>' header".into(),
                        });
                    };
                    let index = names.len() - 1;
                    encode_genome_into(seq.as_bytes(), index, current, opts)?;
                }
                InputFormat::Lines => {
                    let seq = line.trim();
                    if seq.is_empty() {
                        continue;
                    }
                    let index = genomes.len();
                    let mut g = Vec::with_capacity(seq.len());
                    encode_genome_into(seq.as_bytes(), index, &mut g, opts)?;
                    genomes.push(g);
                    names.push(format!("g{index}"));
                }
            }
        }
        Self::new(genomes, names)
    }

    pub fn genomes(&self) -> &[Vec<Symbol>] {
        &self.genomes
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.genomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genomes.is_empty()
    }

    /// Length of the separated concatenation, `$`s included.
    pub fn total_len(&self) -> usize {
        self.genomes.iter().map(|g| g.len() + 1).sum()
    }

    pub fn separate(&self) -> SeparatedText {
        SeparatedText::from_segments(self.genomes.iter().map(|g| g.as_slice()), Provenance::Raw)
    }
}

fn encode_genome_into(
    bytes: &[u8],
    genome: usize,
    out: &mut Vec<Symbol>,
    opts: ParseOptions,
) -> Result<()> {
    for &b in bytes {
        let offset = out.len();
        if alphabet::is_reserved_byte(b) {
            return Err(Error::ReservedSymbol {
                genome,
                offset,
                symbol: b as char,
            });
        }
        match alphabet::encode_base(b) {
            Some(s) => out.push(s),
            None if opts.allow_n && is_iupac(b) => out.push(WILDCARD),
            None => {
                return Err(Error::InvalidSymbol {
                    genome,
                    offset,
                    symbol: b as char,
                })
            }
        }
    }
    Ok(())
}

fn is_iupac(b: u8) -> bool {
    matches!(
        b.to_ascii_uppercase(),
        b'N' | b'R' | b'Y' | b'K' | b'M' | b'S' | b'W' | b'B' | b'D' | b'H' | b'V' | b'U'
    )
}

/// `genome0 $ genome1 $ ... $` with a bit marking every `$`.
///
/// Kernels and digests are also separated texts; `provenance` says which.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedText {
    symbols: Vec<Symbol>,
    separators: BitVector,
    provenance: Provenance,
}

impl SeparatedText {
    /// Concatenate segments, appending `$` after each.
    pub fn from_segments<'a, I>(segments: I, provenance: Provenance) -> Self
    where
        I: IntoIterator<Item = &'a [Symbol]>,
    {
        let mut symbols = Vec::new();
        for seg in segments {
            symbols.extend_from_slice(seg);
            symbols.push(DOLLAR);
        }
        Self::from_symbols(symbols, provenance)
    }

    /// Wrap an already separated symbol sequence. Every genome must end with `$`.
    pub fn from_symbols(symbols: Vec<Symbol>, provenance: Provenance) -> Self {
        debug_assert!(symbols.last() == Some(&DOLLAR));
        let separators = BitVector::from_bits(symbols.iter().map(|&s| s == DOLLAR));
        Self {
            symbols,
            separators,
            provenance,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn separators(&self) -> &BitVector {
        &self.separators
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn alphabet(&self) -> Alphabet {
        self.provenance.alphabet()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn genome_count(&self) -> usize {
        self.separators.count_ones()
    }

    /// 0-based genome containing text position `p`: the number of `$` before `p`.
    pub fn genome_of_position(&self, p: usize) -> Result<usize> {
        if p >= self.symbols.len() {
            return Err(Error::OutOfBounds {
                position: p,
                len: self.symbols.len(),
            });
        }
        if self.symbols[p] == DOLLAR {
            return Err(Error::SeparatorPosition(p));
        }
        Ok(self.separators.rank1(p))
    }

    /// The per-genome segments, separators excluded.
    pub fn segments(&self) -> impl Iterator<Item = &[Symbol]> {
        let mut rest = self.symbols.as_slice();
        std::iter::from_fn(move || {
            let end = rest.iter().position(|&s| s == DOLLAR)?;
            let seg = &rest[..end];
            rest = &rest[end + 1..];
            Some(seg)
        })
    }

    pub fn render(&self) -> String {
        self.alphabet().render(&self.symbols)
    }
}
