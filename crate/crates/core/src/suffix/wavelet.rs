use super::BitVector;
use crate::alphabet::Symbol;

/// Wavelet matrix: access, rank and select over an integer sequence in
/// `O(log sigma)` per query and `n * ceil(log2 sigma)` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletMatrix {
    len: usize,
    levels: Vec<BitVector>,
    /// Zeros in each level; ones are stably moved after them for the next level.
    zeros: Vec<usize>,
}

impl WaveletMatrix {
    pub fn new(seq: &[Symbol]) -> Self {
        let max = seq.iter().copied().max().unwrap_or(0);
        let width = (u32::BITS - max.leading_zeros()).max(1);
        let mut cur = seq.to_vec();
        let mut next = Vec::with_capacity(cur.len());
        let mut levels = Vec::with_capacity(width as usize);
        let mut zeros = Vec::with_capacity(width as usize);
        for level in 0..width {
            let shift = width - 1 - level;
            let bv = BitVector::from_bits(cur.iter().map(|&x| (x >> shift) & 1 == 1));
            zeros.push(bv.rank0(bv.len()));
            next.clear();
            next.extend(cur.iter().filter(|&&x| (x >> shift) & 1 == 0));
            next.extend(cur.iter().filter(|&&x| (x >> shift) & 1 == 1));
            std::mem::swap(&mut cur, &mut next);
            levels.push(bv);
        }
        Self {
            len: seq.len(),
            levels,
            zeros,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn width(&self) -> u32 {
        self.levels.len() as u32
    }

    fn representable(&self, c: Symbol) -> bool {
        self.width() >= u32::BITS || (c >> self.width()) == 0
    }

    pub fn access(&self, mut i: usize) -> Symbol {
        debug_assert!(i < self.len);
        let mut value = 0;
        for (level, bv) in self.levels.iter().enumerate() {
            value <<= 1;
            if bv.get(i) {
                value |= 1;
                i = self.zeros[level] + bv.rank1(i);
            } else {
                i = bv.rank0(i);
            }
        }
        value
    }

    /// `(begin, end)` positions of the prefix `[0, i)` restricted to `c`, in the bottom level.
    fn descend(&self, c: Symbol, i: usize) -> (usize, usize) {
        let width = self.width();
        let (mut b, mut e) = (0, i);
        for (level, bv) in self.levels.iter().enumerate() {
            let shift = width - 1 - level as u32;
            if (c >> shift) & 1 == 1 {
                b = self.zeros[level] + bv.rank1(b);
                e = self.zeros[level] + bv.rank1(e);
            } else {
                b = bv.rank0(b);
                e = bv.rank0(e);
            }
        }
        (b, e)
    }

    /// Occurrences of `c` in `[0, i)`.
    pub fn rank(&self, c: Symbol, i: usize) -> usize {
        debug_assert!(i <= self.len);
        if !self.representable(c) {
            return 0;
        }
        let (b, e) = self.descend(c, i);
        e - b
    }

    pub fn count(&self, c: Symbol) -> usize {
        self.rank(c, self.len)
    }

    /// Position of the `k`-th (0-based) occurrence of `c`.
    pub fn select(&self, c: Symbol, k: usize) -> Option<usize> {
        if !self.representable(c) {
            return None;
        }
        let (b, e) = self.descend(c, self.len);
        if k >= e - b {
            return None;
        }
        let width = self.width();
        let mut p = b + k;
        for level in (0..self.levels.len()).rev() {
            let shift = width - 1 - level as u32;
            let bv = &self.levels[level];
            p = if (c >> shift) & 1 == 1 {
                bv.select1(p - self.zeros[level])?
            } else {
                bv.select0(p)?
            };
        }
        Some(p)
    }
}
