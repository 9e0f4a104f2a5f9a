//! Minimizer digests.
//!
//! A k-mer is read as a base-4 number whose *first* base is the least
//! significant digit (A=0, C=1, G=2, T=3). Minimizers are chosen by the affine
//! hash `(a*x + b) mod m` with leftmost tie-breaking, but the digest stores the
//! k-mer value itself, so a 3-mer digest is a text over 64 symbols.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::alphabet::{self, Alphabet, Symbol, FIRST_PAYLOAD, MAX_DIGEST_K};
use crate::collection::{GenomeCollection, Provenance, SeparatedText};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigestParams {
    /// Minimizer length in bases.
    pub k: u32,
    /// Window length in k-mers.
    pub w: u32,
    pub a: u64,
    pub b: u64,
    pub m: u64,
}

impl Default for DigestParams {
    fn default() -> Self {
        Self {
            k: 3,
            w: 10,
            a: 2544,
            b: 3937,
            m: 8863,
        }
    }
}

impl DigestParams {
    pub fn new(k: u32, w: u32) -> Self {
        Self {
            k,
            w,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > MAX_DIGEST_K {
            return Err(Error::InvalidParameter(format!(
                "minimizer length k={} must be in 1..={MAX_DIGEST_K}",
                self.k
            )));
        }
        if self.w == 0 {
            return Err(Error::InvalidParameter(
                "window w must be at least 1".into(),
            ));
        }
        if self.m == 0 {
            return Err(Error::InvalidParameter(
                "hash modulus must be positive".into(),
            ));
        }
        Ok(())
    }

    #[inline]
    pub fn hash(&self, x: u64) -> u64 {
        ((self.a as u128 * x as u128 + self.b as u128) % self.m as u128) as u64
    }

    /// Whether the hash is a bijection onto its image for all `4^k` values.
    pub fn hash_is_injective(&self) -> bool {
        let n = 1u64 << (2 * self.k);
        n <= self.m && gcd(self.a % self.m, self.m) == 1
    }

    /// Bases needed for one full window.
    pub fn span(&self) -> usize {
        (self.k + self.w - 1) as usize
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Digest { k: self.k }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Value of a k-mer, first base least significant.
pub fn kmer_value(kmer: &[Symbol]) -> Result<u64> {
    kmer.iter().rev().try_fold(0u64, |acc, &s| {
        let d = alphabet::base_digit(s)
            .ok_or(Error::InvalidParameter(format!("symbol {s} is not a base")))?;
        Ok(acc * 4 + d)
    })
}

/// Start positions of the marked k-mers of `s`, strictly increasing.
pub fn minimizer_positions(s: &[Symbol], p: &DigestParams) -> Result<Vec<usize>> {
    p.validate()?;
    let (k, w) = (p.k as usize, p.w as usize);
    if s.len() < p.span() {
        return Ok(Vec::new());
    }
    let hashes: Vec<u64> = kmer_values(s, k)?.into_iter().map(|x| p.hash(x)).collect();
    let mut marked: Vec<usize> = Vec::new();
    let mut window: VecDeque<usize> = VecDeque::with_capacity(w);
    for j in 0..hashes.len() {
        while window.back().is_some_and(|&b| hashes[b] > hashes[j]) {
            window.pop_back();
        }
        window.push_back(j);
        if j + 1 < w {
            continue;
        }
        let start = j + 1 - w;
        while window.front().is_some_and(|&f| f < start) {
            window.pop_front();
        }
        let best = *window.front().unwrap();
        if marked.last() != Some(&best) {
            marked.push(best);
        }
    }
    Ok(marked)
}

fn kmer_values(s: &[Symbol], k: usize) -> Result<Vec<u64>> {
    if s.len() < k {
        return Ok(Vec::new());
    }
    let digits: Vec<u64> = s
        .iter()
        .map(|&c| {
            alphabet::base_digit(c)
                .ok_or_else(|| Error::InvalidParameter(format!("symbol {c} is not a base")))
        })
        .collect::<Result<_>>()?;
    let top = 2 * (k - 1);
    let mut value = digits[..k].iter().rev().fold(0u64, |acc, &d| acc * 4 + d);
    let mut out = Vec::with_capacity(s.len() - k + 1);
    out.push(value);
    for &d in &digits[k..] {
        value = (value >> 2) | (d << top);
        out.push(value);
    }
    Ok(out)
}

/// The digest of one base string as digest symbols.
pub fn digest_sequence(s: &[Symbol], p: &DigestParams) -> Result<Vec<Symbol>> {
    let k = p.k as usize;
    minimizer_positions(s, p)?
        .into_iter()
        .map(|j| Ok(FIRST_PAYLOAD + kmer_value(&s[j..j + k])? as Symbol))
        .collect()
}

/// A `$`-separated collection digest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digest {
    text: SeparatedText,
    params: DigestParams,
}

impl Digest {
    pub fn text(&self) -> &SeparatedText {
        &self.text
    }

    pub fn into_text(self) -> SeparatedText {
        self.text
    }

    pub fn params(&self) -> &DigestParams {
        &self.params
    }

    /// Digest symbols excluding separators.
    pub fn symbol_count(&self) -> usize {
        self.text.len() - self.text.genome_count()
    }

    /// Printable rendering, one character per 3-mer (`37 + value`), `$` verbatim.
    pub fn render_ascii(&self) -> Result<String> {
        render_ascii(self.text.symbols(), &self.params)
    }
}

pub fn render_ascii(symbols: &[Symbol], p: &DigestParams) -> Result<String> {
    if p.k != 3 {
        return Err(Error::InvalidParameter(format!(
            "ASCII rendering needs k=3, digest has k={}",
            p.k
        )));
    }
    Ok(p.alphabet().render(symbols))
}

pub fn digest_collection(c: &GenomeCollection, p: &DigestParams) -> Result<Digest> {
    let digests = c
        .genomes()
        .iter()
        .enumerate()
        .map(|(g, genome)| {
            digest_sequence(genome, p).map_err(|_| Error::InvalidSymbol {
                genome: g,
                offset: genome
                    .iter()
                    .position(|&s| alphabet::base_digit(s).is_none())
                    .unwrap_or(0),
                symbol: 'N',
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let text = SeparatedText::from_segments(
        digests.iter().map(|d| d.as_slice()),
        Provenance::Digest { digest: *p },
    );
    Ok(Digest { text, params: *p })
}
