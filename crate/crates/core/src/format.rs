//! On-disk index format.
//!
//! ```text
//! "KTK2"  u16 version
//! u8 provenance tag, then its parameters
//! u32 genome count, then per genome: u32 byte length, UTF-8 name
//! u64 n (text length without EOF)
//! u8 position width (1, 2 or 4 bytes), u8 symbol width (1, 2 or 4 bytes)
//! SA[0..=n], LCP[0..=n] at the position width; BWT[0..=n] at the symbol width
//! u64 word count, separator bit words
//! u32 CRC-32 of everything above
//! ```
//!
//! All integers are little-endian. Range-query and PSV/NSV structures are
//! rebuilt on load.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::collection::Provenance;
use crate::digest::DigestParams;
use crate::error::{Error, Result};
use crate::fm_index::FmIndex;
use crate::suffix::BitVector;

const MAGIC: &[u8; 4] = b"KTK2";
pub const FORMAT_VERSION: u16 = 1;

fn width_for(max: u64) -> u8 {
    if max <= u8::MAX as u64 {
        1
    } else if max <= u16::MAX as u64 {
        2
    } else {
        4
    }
}

fn put_packed(out: &mut Vec<u8>, values: impl Iterator<Item = u32>, width: u8) {
    for v in values {
        out.extend_from_slice(&v.to_le_bytes()[..width as usize]);
    }
}

fn put_digest(out: &mut Vec<u8>, p: &DigestParams) {
    out.extend_from_slice(&p.k.to_le_bytes());
    out.extend_from_slice(&p.w.to_le_bytes());
    out.extend_from_slice(&p.a.to_le_bytes());
    out.extend_from_slice(&p.b.to_le_bytes());
    out.extend_from_slice(&p.m.to_le_bytes());
}

/// Serialize an index to bytes.
pub fn to_bytes(ix: &FmIndex) -> Vec<u8> {
    let n = ix.text_len();
    let pos_width = width_for(n as u64);
    let bwt = ix.bwt_symbols();
    let sym_width = width_for(ix.alphabet().size() - 1);

    let mut out = Vec::with_capacity(16 + (n + 1) * (2 * pos_width + sym_width) as usize);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    match ix.provenance() {
        Provenance::Raw => out.push(0),
        Provenance::Kernel { k_max } => {
            out.push(1);
            out.extend_from_slice(&k_max.to_le_bytes());
        }
        Provenance::Digest { digest } => {
            out.push(2);
            put_digest(&mut out, &digest);
        }
        Provenance::DigestKernel { digest, k_max } => {
            out.push(3);
            put_digest(&mut out, &digest);
            out.extend_from_slice(&k_max.to_le_bytes());
        }
    }
    out.extend_from_slice(&(ix.names().len() as u32).to_le_bytes());
    for name in ix.names() {
        out.extend_from_slice(&(name.len() as u32).to_le_bytes());
        out.extend_from_slice(name.as_bytes());
    }
    out.extend_from_slice(&(n as u64).to_le_bytes());
    out.push(pos_width);
    out.push(sym_width);
    put_packed(&mut out, ix.sa().iter().copied(), pos_width);
    put_packed(&mut out, ix.lcp().iter().copied(), pos_width);
    put_packed(&mut out, bwt.into_iter(), sym_width);
    let words = ix.separators().words();
    out.extend_from_slice(&(words.len() as u64).to_le_bytes());
    for w in words {
        out.extend_from_slice(&w.to_le_bytes());
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(len).ok_or(Error::Truncated)?;
        let s = self.buf.get(self.pos..end).ok_or(Error::Truncated)?;
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn packed(&mut self, count: usize, width: u8) -> Result<Vec<u32>> {
        let bytes = self.take(count.checked_mul(width as usize).ok_or(Error::Truncated)?)?;
        Ok(bytes
            .chunks_exact(width as usize)
            .map(|c| {
                let mut b = [0u8; 4];
                b[..c.len()].copy_from_slice(c);
                u32::from_le_bytes(b)
            })
            .collect())
    }

    fn digest(&mut self) -> Result<DigestParams> {
        let p = DigestParams {
            k: self.u32()?,
            w: self.u32()?,
            a: self.u64()?,
            b: self.u64()?,
            m: self.u64()?,
        };
        p.validate()
            .map_err(|e| Error::Corrupt(format!("stored digest parameters: {e}")))?;
        Ok(p)
    }
}

/// Deserialize an index, verifying magic, version, checksum and consistency.
pub fn from_bytes(buf: &[u8]) -> Result<FmIndex> {
    if buf.len() < MAGIC.len() {
        return Err(Error::Truncated);
    }
    if &buf[..4] != MAGIC {
        return Err(Error::BadMagic);
    }
    let mut cur = Cursor { buf, pos: 4 };
    let version = cur.u16()?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    if buf.len() < cur.pos + 4 {
        return Err(Error::Truncated);
    }
    let (body, trailer) = buf.split_at(buf.len() - 4);
    let stored = u32::from_le_bytes(trailer.try_into().unwrap());
    let computed = crc32fast::hash(body);
    if stored != computed {
        return Err(Error::ChecksumMismatch { stored, computed });
    }
    cur.buf = body;

    let provenance = match cur.u8()? {
        0 => Provenance::Raw,
        1 => Provenance::Kernel { k_max: cur.u32()? },
        2 => Provenance::Digest {
            digest: cur.digest()?,
        },
        3 => Provenance::DigestKernel {
            digest: cur.digest()?,
            k_max: cur.u32()?,
        },
        t => return Err(Error::Corrupt(format!("unknown provenance tag {t}"))),
    };
    let genome_count = cur.u32()? as usize;
    let mut names = Vec::with_capacity(genome_count.min(1 << 20));
    for _ in 0..genome_count {
        let len = cur.u32()? as usize;
        let name = std::str::from_utf8(cur.take(len)?)
            .map_err(|_| Error::Corrupt("genome name is not UTF-8".into()))?;
        names.push(name.to_string());
    }
    let n = usize::try_from(cur.u64()?).map_err(|_| Error::Truncated)?;
    let pos_width = cur.u8()?;
    let sym_width = cur.u8()?;
    if ![1, 2, 4].contains(&pos_width) || ![1, 2, 4].contains(&sym_width) {
        return Err(Error::Corrupt("invalid field width".into()));
    }
    let rows = n.checked_add(1).ok_or(Error::Truncated)?;
    let sa = cur.packed(rows, pos_width)?;
    let lcp = cur.packed(rows, pos_width)?;
    let bwt = cur.packed(rows, sym_width)?;
    let word_count = usize::try_from(cur.u64()?).map_err(|_| Error::Truncated)?;
    if word_count != n.div_ceil(64) {
        return Err(Error::Corrupt(
            "separator word count disagrees with n".into(),
        ));
    }
    let words = (0..word_count)
        .map(|_| cur.u64())
        .collect::<Result<Vec<_>>>()?;
    if cur.pos != body.len() {
        return Err(Error::Corrupt("trailing bytes before checksum".into()));
    }
    let separators = BitVector::from_words(words, n);
    FmIndex::from_parts(provenance, names, sa, lcp, bwt, separators)
}

pub fn save(ix: &FmIndex, path: impl AsRef<Path>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(&to_bytes(ix))?;
    w.flush()?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<FmIndex> {
    let mut buf = Vec::new();
    BufReader::new(File::open(path)?).read_to_end(&mut buf)?;
    from_bytes(&buf)
}

/// Serialized size in bytes.
pub fn serialized_size(ix: &FmIndex) -> usize {
    to_bytes(ix).len()
}
