//! The augmented FM-index: BWT with rank/select, suffix array with range
//! minimum/maximum, LCP array with range minimum and PSV/NSV, and the `$`
//! bit sequence. Enough to compute MEM tables in which every MEM carries the
//! genomes holding its first and last occurrences.

use crate::alphabet::{Alphabet, Symbol, DOLLAR, EOF};
use crate::collection::{Provenance, SeparatedText};
use crate::error::{Error, Result};
use crate::suffix::{
    build_lcp_array, build_suffix_array, derive_bwt, BitVector, Extreme, Rmq, SmallerValues,
    WaveletMatrix,
};

/// Rows `[start, end)` of the suffix array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SaInterval {
    start: usize,
    end: usize,
}

impl SaInterval {
    /// Inclusive bounds, as in `BWT[lo..hi]`.
    pub fn new(lo: usize, hi: usize) -> Self {
        Self {
            start: lo,
            end: hi + 1,
        }
    }

    pub fn empty() -> Self {
        Self { start: 0, end: 0 }
    }

    pub fn lo(&self) -> usize {
        self.start
    }

    /// Last row. Meaningless for an empty interval.
    pub fn hi(&self) -> usize {
        self.end.wrapping_sub(1)
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn rows(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrences {
    pub first_pos: usize,
    pub last_pos: usize,
    pub first_genome: usize,
    pub last_genome: usize,
}

#[derive(Debug, Clone)]
pub struct FmIndex {
    provenance: Provenance,
    names: Vec<String>,
    text_len: usize,
    bwt: WaveletMatrix,
    /// `c_table[c]`: rows whose suffix starts with a symbol smaller than `c`.
    c_table: Vec<u64>,
    sa: Vec<u32>,
    lcp: Vec<u32>,
    sa_min: Rmq,
    sa_max: Rmq,
    lcp_min: Rmq,
    smaller: SmallerValues,
    separators: BitVector,
}

impl FmIndex {
    /// Index a separated text (raw, kernel or digest) with an implicit EOF.
    pub fn build(st: &SeparatedText) -> Result<Self> {
        let alphabet = st.alphabet();
        if let Some(&s) = st.symbols().iter().find(|&&s| s as u64 >= alphabet.size()) {
            return Err(Error::AlphabetOverflow {
                symbol: s,
                size: alphabet.size(),
            });
        }
        if st.len() >= (u32::MAX - 2) as usize {
            return Err(Error::TextTooLong(st.len()));
        }
        let sa = build_suffix_array(st.symbols());
        let lcp = build_lcp_array(st.symbols(), &sa);
        let bwt = derive_bwt(st.symbols(), &sa);
        let names = (0..st.genome_count()).map(|g| format!("g{g}")).collect();
        Ok(Self::assemble(
            st.provenance(),
            names,
            sa,
            lcp,
            &bwt,
            st.separators().clone(),
        ))
    }

    /// Replace the default `g0, g1, ...` genome names.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.genome_count() {
            return Err(Error::InvalidParameter(format!(
                "{} names for an index over {} genomes",
                names.len(),
                self.genome_count()
            )));
        }
        self.names = names;
        Ok(self)
    }

    fn assemble(
        provenance: Provenance,
        names: Vec<String>,
        sa: Vec<u32>,
        lcp: Vec<u32>,
        bwt: &[Symbol],
        separators: BitVector,
    ) -> Self {
        let max = bwt.iter().copied().max().unwrap_or(EOF) as usize;
        let mut c_table = vec![0u64; max + 2];
        for &s in bwt {
            c_table[s as usize + 1] += 1;
        }
        for i in 1..c_table.len() {
            c_table[i] += c_table[i - 1];
        }
        Self {
            provenance,
            names,
            text_len: separators.len(),
            bwt: WaveletMatrix::new(bwt),
            c_table,
            sa_min: Rmq::new(&sa, Extreme::Min),
            sa_max: Rmq::new(&sa, Extreme::Max),
            lcp_min: Rmq::new(&lcp, Extreme::Min),
            smaller: SmallerValues::new(&lcp),
            sa,
            lcp,
            separators,
        }
    }

    /// Rebuild an index from its stored arrays, checking they are mutually consistent.
    pub(crate) fn from_parts(
        provenance: Provenance,
        names: Vec<String>,
        sa: Vec<u32>,
        lcp: Vec<u32>,
        bwt: Vec<Symbol>,
        separators: BitVector,
    ) -> Result<Self> {
        let n = separators.len();
        let corrupt = |m: &str| Err(Error::Corrupt(m.to_string()));
        if sa.len() != n + 1 || lcp.len() != n + 1 || bwt.len() != n + 1 {
            return corrupt("array lengths disagree");
        }
        if names.len() != separators.count_ones() {
            return corrupt("genome name count disagrees with separators");
        }
        let size = provenance.alphabet().size();
        if bwt.iter().any(|&s| s as u64 >= size) {
            return corrupt("BWT symbol outside the alphabet");
        }
        if bwt.iter().filter(|&&s| s == EOF).count() != 1 {
            return corrupt("BWT must contain exactly one EOF");
        }
        let mut seen = vec![false; n + 1];
        for &p in &sa {
            if p as usize > n || std::mem::replace(&mut seen[p as usize], true) {
                return corrupt("suffix array is not a permutation");
            }
        }
        if lcp[0] != 0 {
            return corrupt("lcp[0] must be 0");
        }
        let ix = Self::assemble(provenance, names, sa, lcp, &bwt, separators);
        // B must mark exactly the rows whose suffix starts with `$`.
        for (row, &p) in ix.sa.iter().enumerate() {
            if (p as usize) < n && ix.separators.get(p as usize) != (ix.first_symbol(row) == DOLLAR)
            {
                return corrupt("separator bits disagree with the BWT");
            }
        }
        Ok(ix)
    }

    fn first_symbol(&self, row: usize) -> Symbol {
        // last symbol c with c_table[c] <= row
        self.c_table.partition_point(|&x| x as usize <= row) as Symbol - 1
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn alphabet(&self) -> Alphabet {
        self.provenance.alphabet()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn genome_count(&self) -> usize {
        self.separators.count_ones()
    }

    /// Indexed text length, separators included, EOF excluded.
    pub fn text_len(&self) -> usize {
        self.text_len
    }

    /// Suffix-array rows: text length plus the EOF row.
    pub fn rows(&self) -> usize {
        self.sa.len()
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    pub fn separators(&self) -> &BitVector {
        &self.separators
    }

    pub fn bwt_at(&self, row: usize) -> Symbol {
        self.bwt.access(row)
    }

    pub fn bwt_symbols(&self) -> Vec<Symbol> {
        (0..self.rows()).map(|i| self.bwt.access(i)).collect()
    }

    /// Occurrences of `c` in the text.
    pub fn count(&self, c: Symbol) -> usize {
        self.bwt.count(c)
    }

    pub fn full_interval(&self) -> SaInterval {
        SaInterval {
            start: 0,
            end: self.rows(),
        }
    }

    fn check_query_symbol(&self, c: Symbol) -> Result<()> {
        if self.alphabet().is_query_symbol(c) {
            Ok(())
        } else {
            Err(Error::NotInAlphabet(c))
        }
    }

    /// Interval of `c·X` from the interval of `X`. Separators, EOF and the
    /// wildcard yield [`Error::NotInAlphabet`] rather than an empty interval.
    pub fn backward_step(&self, iv: SaInterval, c: Symbol) -> Result<SaInterval> {
        self.check_query_symbol(c)?;
        if c as usize + 1 >= self.c_table.len() || iv.is_empty() {
            return Ok(SaInterval::empty());
        }
        let base = self.c_table[c as usize] as usize;
        Ok(SaInterval {
            start: base + self.bwt.rank(c, iv.start),
            end: base + self.bwt.rank(c, iv.end),
        })
    }

    /// Interval of a whole pattern by iterated backward steps.
    pub fn interval_of(&self, pattern: &[Symbol]) -> Result<SaInterval> {
        pattern
            .iter()
            .rev()
            .try_fold(self.full_interval(), |iv, &c| self.backward_step(iv, c))
    }

    /// First and last text positions among the interval's suffixes.
    pub fn first_last_positions(&self, iv: SaInterval) -> Result<(usize, usize)> {
        if iv.is_empty() {
            return Err(Error::EmptyInterval);
        }
        let lo = self.sa_min.query(&self.sa, iv.lo(), iv.hi())?;
        let hi = self.sa_max.query(&self.sa, iv.lo(), iv.hi())?;
        Ok((self.sa[lo] as usize, self.sa[hi] as usize))
    }

    /// Genome holding text position `p`, i.e. the `$`s before `p`.
    pub fn genome_of_position(&self, p: usize) -> usize {
        self.separators.rank1(p.min(self.text_len))
    }

    pub fn genome_range(&self, iv: SaInterval) -> Result<(usize, usize)> {
        let (first, last) = self.first_last_positions(iv)?;
        Ok((
            self.genome_of_position(first),
            self.genome_of_position(last),
        ))
    }

    pub fn occurrences(&self, iv: SaInterval) -> Result<Occurrences> {
        let (first_pos, last_pos) = self.first_last_positions(iv)?;
        Ok(Occurrences {
            first_pos,
            last_pos,
            first_genome: self.genome_of_position(first_pos),
            last_genome: self.genome_of_position(last_pos),
        })
    }

    /// Given the interval `iv` of a match of length `len` that `c` cannot
    /// extend, find the longest prefix of the match that `c` precedes somewhere
    /// in the text, and that prefix's interval.
    ///
    /// The nearest rows above and below `iv` whose BWT symbol is `c` bound the
    /// candidates; the LCP minimum between each of them and `iv` is the prefix
    /// length it supports, and PSV/NSV around the deciding LCP entry give the
    /// prefix's interval. A zero-length answer is the full interval.
    pub fn shrink_to_extendable(
        &self,
        iv: SaInterval,
        len: usize,
        c: Symbol,
    ) -> Result<(SaInterval, usize)> {
        self.check_query_symbol(c)?;
        let total = self.count(c);
        if total == 0 {
            return Err(Error::AbsentSymbol(c));
        }
        if iv.is_empty() {
            return Err(Error::EmptyInterval);
        }
        let before = self.bwt.rank(c, iv.start);
        let through = self.bwt.rank(c, iv.end);
        if through > before {
            return Ok((iv, len));
        }
        let mut best: Option<(usize, usize)> = None; // (lcp value, row)
        if before > 0 {
            let above = self.bwt.select(c, before - 1).expect("rank/select agree");
            let m = self.lcp_min.query(&self.lcp, above + 1, iv.lo())?;
            best = Some((self.lcp[m] as usize, m));
        }
        if before < total {
            let below = self.bwt.select(c, before).expect("rank/select agree");
            let m = self.lcp_min.query(&self.lcp, iv.end, below)?;
            let l = self.lcp[m] as usize;
            if best.is_none_or(|(b, _)| l > b) {
                best = Some((l, m));
            }
        }
        let (l, m) = best.expect("c occurs somewhere");
        let l = l.min(len);
        if l == 0 {
            return Ok((self.full_interval(), 0));
        }
        let start = self.smaller.psv(m).unwrap_or(0);
        let end = self.smaller.nsv(m).unwrap_or(self.rows());
        Ok((SaInterval { start, end }, l))
    }

    /// Reconstruct the indexed text by LF-walking the BWT.
    pub fn recover_text(&self) -> Vec<Symbol> {
        let mut text = vec![EOF; self.text_len];
        let mut row = 0;
        for slot in text.iter_mut().rev() {
            let c = self.bwt.access(row);
            *slot = c;
            row = self.c_table[c as usize] as usize + self.bwt.rank(c, row);
        }
        text
    }

    #[cfg(test)]
    fn c_table(&self) -> &[u64] {
        &self.c_table
    }
}
