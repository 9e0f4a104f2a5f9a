//! Symbol encoding shared by every text the crate indexes.
//!
//! All texts are sequences of [`Symbol`]s under one total order:
//! `EOF < # < $ < payload`. For DNA the payload is `A < C < G < T < N`
//! (`N` is the wildcard admitted by lenient parsing). For minimizer digests
//! the payload is the k-mer value `x`, stored as `FIRST_PAYLOAD + x`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u32;

/// Implicit end-of-file sentinel. Never stored in a text; it appears once in a BWT.
pub const EOF: Symbol = 0;
/// Marks a maximal omitted run inside a kernel.
pub const HASH: Symbol = 1;
/// Genome terminator.
pub const DOLLAR: Symbol = 2;
pub const FIRST_PAYLOAD: Symbol = 3;

pub const BASE_A: Symbol = FIRST_PAYLOAD;
pub const BASE_C: Symbol = FIRST_PAYLOAD + 1;
pub const BASE_G: Symbol = FIRST_PAYLOAD + 2;
pub const BASE_T: Symbol = FIRST_PAYLOAD + 3;
/// Ambiguity code in a genome or read. Present in texts, never matches.
pub const WILDCARD: Symbol = FIRST_PAYLOAD + 4;

/// Largest supported minimizer width; keeps the C-table and wavelet levels small.
pub const MAX_DIGEST_K: u32 = 10;

/// Base value used for k-mer arithmetic (A=0, C=1, G=2, T=3).
#[inline]
pub fn base_digit(sym: Symbol) -> Option<u64> {
    match sym {
        BASE_A..=BASE_T => Some((sym - BASE_A) as u64),
        _ => None,
    }
}

/// Map an input byte to a DNA symbol, folding case. Separators are returned
/// as-is so callers can reject them with a precise error.
#[inline]
pub fn encode_base(byte: u8) -> Option<Symbol> {
    match byte {
        b'A' | b'a' => Some(BASE_A),
        b'C' | b'c' => Some(BASE_C),
        b'G' | b'g' => Some(BASE_G),
        b'T' | b't' => Some(BASE_T),
        _ => None,
    }
}

pub fn is_reserved_byte(byte: u8) -> bool {
    matches!(byte, b'$' | b'#' | 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// Bases plus the wildcard.
    Dna,
    /// Minimizer values `0 .. 4^k`.
    Digest { k: u32 },
}

impl Alphabet {
    /// Number of distinct symbols, including EOF, `#` and `$`.
    pub fn size(&self) -> u64 {
        match self {
            Alphabet::Dna => (WILDCARD + 1) as u64,
            Alphabet::Digest { k } => FIRST_PAYLOAD as u64 + (1u64 << (2 * k)),
        }
    }

    /// Whether `sym` may appear in a read. Separators, EOF and the wildcard may not.
    pub fn is_query_symbol(&self, sym: Symbol) -> bool {
        sym >= FIRST_PAYLOAD && (sym as u64) < self.size() && sym != self.wildcard()
    }

    fn wildcard(&self) -> Symbol {
        match self {
            Alphabet::Dna => WILDCARD,
            Alphabet::Digest { .. } => Symbol::MAX,
        }
    }

    pub fn render_symbol(&self, sym: Symbol, out: &mut String) {
        match sym {
            EOF => out.push('^'),
            HASH => out.push('#'),
            DOLLAR => out.push('$'),
            _ => match self {
                Alphabet::Dna => out.push(match sym {
                    BASE_A => 'A',
                    BASE_C => 'C',
                    BASE_G => 'G',
                    BASE_T => 'T',
                    _ => 'N',
                }),
                Alphabet::Digest { k: 3 } => out.push(digest_char(sym - FIRST_PAYLOAD)),
                Alphabet::Digest { .. } => {
                    if !out.is_empty() && !out.ends_with(['$', '#']) {
                        out.push(',');
                    }
                    out.push_str(&(sym - FIRST_PAYLOAD).to_string());
                }
            },
        }
    }

    /// Human-readable rendering: bases for DNA, printable ASCII for 3-mer digests,
    /// comma-separated values for other digests.
    pub fn render(&self, symbols: &[Symbol]) -> String {
        let mut out = String::with_capacity(symbols.len());
        for &s in symbols {
            self.render_symbol(s, &mut out);
        }
        out
    }
}

/// A 3-mer value `x` renders as the character with code `37 + x`.
#[inline]
pub fn digest_char(value: u32) -> char {
    debug_assert!(value < 64);
    char::from(37 + value as u8)
}

/// Encode a DNA read. Non-ACGT symbols become the wildcard; separators are rejected.
pub fn encode_read(bytes: &[u8]) -> Result<Vec<Symbol>> {
    bytes
        .iter()
        .map(|&b| {
            if is_reserved_byte(b) {
                Err(Error::SeparatorInRead(b as char))
            } else {
                Ok(encode_base(b).unwrap_or(WILDCARD))
            }
        })
        .collect()
}

/// Parse a 3-mer digest rendering (as produced by [`Alphabet::render`]) back into symbols.
pub fn decode_digest_ascii(text: &str) -> Result<Vec<Symbol>> {
    text.bytes()
        .map(|b| match b {
            b'$' => Ok(DOLLAR),
            b'#' => Ok(HASH),
            37..=100 => Ok(FIRST_PAYLOAD + (b - 37) as u32),
            _ => Err(Error::InvalidParameter(format!(
                "byte {b:#04x} is not a 3-mer digest character"
            ))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_matches_layout() {
        const {
            assert!(EOF < HASH && HASH < DOLLAR && DOLLAR < BASE_A);
            assert!(BASE_A < BASE_C && BASE_C < BASE_G && BASE_G < BASE_T && BASE_T < WILDCARD);
        }
    }

    #[test]
    fn digest_rendering_bounds() {
        assert_eq!(digest_char(0), '%');
        assert_eq!(digest_char(63), 'd');
        assert_eq!(digest_char(24), '=');
    }

    #[test]
    fn reads_reject_separators() {
        assert!(matches!(
            encode_read(b"AC$T"),
            Err(Error::SeparatorInRead('$'))
        ));
        assert_eq!(encode_read(b"aN").unwrap(), vec![BASE_A, WILDCARD]);
    }

    #[test]
    fn digest_ascii_round_trip() {
        let s = "=c<J$#%d";
        let syms = decode_digest_ascii(s).unwrap();
        assert_eq!(Alphabet::Digest { k: 3 }.render(&syms), s);
    }

    #[test]
    fn wildcard_is_not_queryable() {
        assert!(!Alphabet::Dna.is_query_symbol(WILDCARD));
        assert!(!Alphabet::Dna.is_query_symbol(DOLLAR));
        assert!(Alphabet::Dna.is_query_symbol(BASE_T));
        assert!(Alphabet::Digest { k: 3 }.is_query_symbol(FIRST_PAYLOAD + 63));
        assert!(!Alphabet::Digest { k: 3 }.is_query_symbol(FIRST_PAYLOAD + 64));
    }
}
