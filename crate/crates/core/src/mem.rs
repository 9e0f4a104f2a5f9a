//! MEM tables: every maximal exact match of a read against an index, each
//! with its first and last text occurrence and the genomes holding them.

use std::io::Write;

use serde::Serialize;

use crate::alphabet::{Alphabet, Symbol, DOLLAR, EOF, HASH};
use crate::error::{Error, Result};
use crate::fm_index::{FmIndex, Occurrences, SaInterval};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MemRecord {
    pub read_start: usize,
    pub length: usize,
    /// `None` for a digest symbol that occurs nowhere in the indexed digest.
    #[serde(flatten, with = "occurrences_serde")]
    pub occurrences: Option<Occurrences>,
}

mod occurrences_serde {
    use super::Occurrences;
    use serde::ser::SerializeStruct;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(occ: &Option<Occurrences>, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Occurrences", 5)?;
        st.serialize_field("first_pos", &occ.map(|o| o.first_pos))?;
        st.serialize_field("last_pos", &occ.map(|o| o.last_pos))?;
        st.serialize_field("first_genome", &occ.map(|o| o.first_genome))?;
        st.serialize_field("last_genome", &occ.map(|o| o.last_genome))?;
        st.serialize_field("empty", &occ.is_none())?;
        st.end()
    }
}

impl MemRecord {
    pub fn is_empty(&self) -> bool {
        self.occurrences.is_none()
    }

    pub fn end(&self) -> usize {
        self.read_start + self.length
    }

    /// `(first_genome, last_genome)`, or `None` for an empty record.
    pub fn genome_range(&self) -> Option<(usize, usize)> {
        self.occurrences.map(|o| (o.first_genome, o.last_genome))
    }

    fn contains(&self, other: &MemRecord) -> bool {
        self.read_start <= other.read_start && other.end() <= self.end()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MemTable {
    records: Vec<MemRecord>,
}

impl MemTable {
    pub fn from_records(mut records: Vec<MemRecord>) -> Self {
        records.sort_by_key(|r| (r.read_start, r.length));
        Self { records }
    }

    pub fn records(&self) -> &[MemRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Drop records shorter than `min_len`.
    pub fn retain_min_length(&mut self, min_len: usize) {
        self.records.retain(|r| r.length >= min_len);
    }

    /// All records of maximum length, in read order.
    pub fn longest_mems(&self) -> Result<Vec<&MemRecord>> {
        let max = self
            .records
            .iter()
            .map(|r| r.length)
            .max()
            .ok_or(Error::EmptyInterval)?;
        Ok(self.records.iter().filter(|r| r.length == max).collect())
    }

    /// One TSV row per record: read_id, read_start, length, mem_string,
    /// first_pos, last_pos, first_genome, last_genome, empty_flag.
    pub fn write_tsv<W: Write>(
        &self,
        out: &mut W,
        read_id: &str,
        read: &[Symbol],
        alphabet: Alphabet,
    ) -> std::io::Result<()> {
        for r in &self.records {
            let mem = alphabet.render(&read[r.read_start..r.end()]);
            match r.occurrences {
                Some(o) => writeln!(
                    out,
                    "{read_id}\t{}\t{}\t{mem}\t{}\t{}\t{}\t{}\t0",
                    r.read_start, r.length, o.first_pos, o.last_pos, o.first_genome, o.last_genome
                )?,
                None => writeln!(
                    out,
                    "{read_id}\t{}\t{}\t{mem}\t-\t-\t-\t-\t1",
                    r.read_start, r.length
                )?,
            }
        }
        Ok(())
    }
}

pub const TSV_HEADER: &str =
    "read_id\tread_start\tlength\tmem\tfirst_pos\tlast_pos\tfirst_genome\tlast_genome\tempty";

/// Compute the MEM table of `read` against `ix`.
///
/// The read is scanned right to left keeping the longest match starting at
/// the current position (its matching statistic). When the next symbol cannot
/// extend the match, the match is a MEM; it is then shortened to its longest
/// prefix that the symbol does extend. Symbols that cannot match at all reset
/// the scan; against digest indexes they also produce an empty record.
pub fn compute_mem_table(ix: &FmIndex, read: &[Symbol]) -> Result<MemTable> {
    if let Some(&s) = read.iter().find(|&&s| s == EOF || s == HASH || s == DOLLAR) {
        return Err(Error::SeparatorInRead(match s {
            HASH => '#',
            DOLLAR => '$',
            _ => '\0',
        }));
    }
    let alphabet = ix.alphabet();
    let digest_semantics = matches!(alphabet, Alphabet::Digest { .. });
    let mut found: Vec<MemRecord> = Vec::new();
    let emit =
        |found: &mut Vec<MemRecord>, start: usize, len: usize, iv: SaInterval| -> Result<()> {
            if len == 0 {
                return Ok(());
            }
            let rec = MemRecord {
                read_start: start,
                length: len,
                occurrences: Some(ix.occurrences(iv)?),
            };
            if found
                .last()
                .is_some_and(|prev| !prev.is_empty() && prev.contains(&rec))
            {
                return Ok(());
            }
            found.push(rec);
            Ok(())
        };

    let mut iv = ix.full_interval();
    let mut len = 0usize;
    for j in (0..read.len()).rev() {
        let c = read[j];
        if !alphabet.is_query_symbol(c) || ix.count(c) == 0 {
            emit(&mut found, j + 1, len, iv)?;
            if digest_semantics {
                found.push(MemRecord {
                    read_start: j,
                    length: 1,
                    occurrences: None,
                });
            }
            iv = ix.full_interval();
            len = 0;
            continue;
        }
        let next = ix.backward_step(iv, c)?;
        if !next.is_empty() {
            iv = next;
            len += 1;
            continue;
        }
        emit(&mut found, j + 1, len, iv)?;
        let (shrunk, shrunk_len) = ix.shrink_to_extendable(iv, len, c)?;
        iv = ix.backward_step(shrunk, c)?;
        debug_assert!(!iv.is_empty());
        len = shrunk_len + 1;
    }
    emit(&mut found, 0, len, iv)?;
    found.reverse();
    Ok(MemTable { records: found })
}

/// A read as it was matched: DNA for DNA indexes, its digest for digest indexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadQuery {
    pub symbols: Vec<Symbol>,
    pub table: MemTable,
}

/// Match a DNA read against any index, digesting it first with the index's
/// stored parameters when the index is over a digest. Returns `None` for a
/// read too short to have a minimizer.
pub fn query_read(ix: &FmIndex, read: &[Symbol]) -> Result<Option<ReadQuery>> {
    let symbols = match ix.provenance().digest_params() {
        None => read.to_vec(),
        Some(p) => {
            if read.len() < p.span() {
                return Ok(None);
            }
            if read
                .iter()
                .any(|&s| crate::alphabet::base_digit(s).is_none())
            {
                return Err(Error::InvalidParameter(
                    "reads queried against a digest index must contain only A, C, G, T".into(),
                ));
            }
            crate::digest::digest_sequence(read, p)?
        }
    };
    let table = compute_mem_table(ix, &symbols)?;
    Ok(Some(ReadQuery { symbols, table }))
}
