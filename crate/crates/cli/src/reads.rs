use std::io::BufRead;

use katka_core::{Error, Result};

pub struct Record {
    pub id: String,
    pub seq: Vec<u8>,
}

/// Reads from FASTA (multi-line records) or one sequence per line, decided by
/// the first non-blank line. Line reads are named by their 0-based index.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<Record>> {
    let mut records: Vec<Record> = Vec::new();
    let mut fasta = None;
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let is_fasta = *fasta.get_or_insert(line.starts_with('>'));
        if !is_fasta {
            records.push(Record {
                id: records.len().to_string(),
                seq: line.as_bytes().to_vec(),
            });
        } else if let Some(header) = line.strip_prefix('>') {
            let id = header
                .split_whitespace()
                .next()
                .ok_or_else(|| Error::MalformedHeader {
                    line: lineno + 1,
                    reason: "empty read name".into(),
                })?;
            records.push(Record {
                id: id.to_string(),
                seq: Vec::new(),
            });
        } else {
            records
                .last_mut()
                .expect("first FASTA line is a header")
                .seq
                .extend_from_slice(line.as_bytes());
        }
    }
    Ok(records)
}
