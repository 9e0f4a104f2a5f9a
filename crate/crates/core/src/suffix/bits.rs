/// Plain bit sequence with rank and select.
///
/// Rank is answered from cumulative counts stored every 512 bits plus at most
/// eight popcounts; select binary-searches those counts and scans one block.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
    /// Ones before each 512-bit block; one trailing entry holds the total.
    block_ranks: Vec<u64>,
}

const WORDS_PER_BLOCK: usize = 8;
const BLOCK_BITS: usize = 64 * WORDS_PER_BLOCK;

impl BitVector {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0u64);
            }
            if b {
                *words.last_mut().unwrap() |= 1 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(len.div_ceil(64), 0);
        if !len.is_multiple_of(64) {
            let last = words.len() - 1;
            words[last] &= (1u64 << (len % 64)) - 1;
        }
        let mut block_ranks = Vec::with_capacity(words.len() / WORDS_PER_BLOCK + 2);
        let mut acc = 0u64;
        for chunk in words.chunks(WORDS_PER_BLOCK) {
            block_ranks.push(acc);
            acc += chunk.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        block_ranks.push(acc);
        Self {
            len,
            words,
            block_ranks,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        *self.block_ranks.last().unwrap_or(&0) as usize
    }

    /// Number of ones in `[0, i)`.
    #[inline]
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let block = i / BLOCK_BITS;
        let mut r = self.block_ranks[block];
        let word = i / 64;
        for w in &self.words[block * WORDS_PER_BLOCK..word] {
            r += w.count_ones() as u64;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[word] & ((1u64 << (i % 64)) - 1)).count_ones() as u64;
        }
        r as usize
    }

    #[inline]
    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th one (0-based).
    pub fn select1(&self, k: usize) -> Option<usize> {
        self.select_impl(k, true)
    }

    /// Position of the `k`-th zero (0-based).
    pub fn select0(&self, k: usize) -> Option<usize> {
        self.select_impl(k, false)
    }

    fn select_impl(&self, k: usize, ones: bool) -> Option<usize> {
        let nblocks = self.block_ranks.len() - 1;
        let before = |b: usize| -> usize {
            let r = self.block_ranks[b] as usize;
            if ones {
                r
            } else {
                (b * BLOCK_BITS).min(self.len) - r
            }
        };
        if k >= before(nblocks) {
            return None;
        }
        // last block whose prefix count is <= k
        let (mut lo, mut hi) = (0, nblocks);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = k - before(lo);
        for wi in lo * WORDS_PER_BLOCK..self.words.len() {
            let mut w = if ones {
                self.words[wi]
            } else {
                !self.words[wi]
            };
            if !ones && wi == self.words.len() - 1 && !self.len.is_multiple_of(64) {
                w &= (1u64 << (self.len % 64)) - 1;
            }
            let c = w.count_ones() as usize;
            if remaining < c {
                for _ in 0..remaining {
                    w &= w - 1;
                }
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
            remaining -= c;
        }
        None
    }
}
