use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extreme {
    Min,
    Max,
}

const BLOCK: usize = 32;

/// Range-minimum or range-maximum over a `u32` array that the caller keeps.
///
/// A sparse table over per-block extremes answers the middle of a query; the
/// two partial blocks are scanned. Ties go to the leftmost position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rmq {
    kind: Extreme,
    len: usize,
    /// `table[l][b]` is the best position over blocks `b .. b + 2^l`.
    table: Vec<Vec<u32>>,
}

impl Rmq {
    pub fn new(data: &[u32], kind: Extreme) -> Self {
        let nblocks = data.len().div_ceil(BLOCK);
        let mut level0 = Vec::with_capacity(nblocks);
        for b in 0..nblocks {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(data.len()) - 1;
            level0.push(scan(data, kind, lo, hi) as u32);
        }
        let mut table = vec![level0];
        let mut span = 1;
        while 2 * span <= nblocks {
            let prev = table.last().unwrap();
            let next: Vec<u32> = (0..=nblocks - 2 * span)
                .map(|b| pick(data, kind, prev[b] as usize, prev[b + span] as usize) as u32)
                .collect();
            table.push(next);
            span *= 2;
        }
        Self {
            kind,
            len: data.len(),
            table,
        }
    }

    pub fn kind(&self) -> Extreme {
        self.kind
    }

    /// Leftmost position of the extreme over `data[lo..=hi]`.
    pub fn query(&self, data: &[u32], lo: usize, hi: usize) -> Result<usize> {
        debug_assert_eq!(data.len(), self.len);
        if hi < lo {
            return Err(Error::EmptyRange { lo, hi });
        }
        if hi >= self.len {
            return Err(Error::OutOfBounds {
                position: hi,
                len: self.len,
            });
        }
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        if bl == bh {
            return Ok(scan(data, self.kind, lo, hi));
        }
        let mut best = scan(data, self.kind, lo, (bl + 1) * BLOCK - 1);
        if bh > bl + 1 {
            let (first, last) = (bl + 1, bh - 1);
            let level = (usize::BITS - 1 - (last - first + 1).leading_zeros()) as usize;
            let a = self.table[level][first] as usize;
            let b = self.table[level][last + 1 - (1 << level)] as usize;
            best = pick(data, self.kind, best, pick(data, self.kind, a, b));
        }
        let tail = scan(data, self.kind, bh * BLOCK, hi);
        Ok(pick(data, self.kind, best, tail))
    }
}

#[inline]
fn pick(data: &[u32], kind: Extreme, a: usize, b: usize) -> usize {
    let (va, vb) = (data[a], data[b]);
    let b_better = match kind {
        Extreme::Min => vb < va,
        Extreme::Max => vb > va,
    };
    if b_better || (va == vb && b < a) {
        b
    } else {
        a
    }
}

fn scan(data: &[u32], kind: Extreme, lo: usize, hi: usize) -> usize {
    let mut best = lo;
    for i in lo + 1..=hi {
        let better = match kind {
            Extreme::Min => data[i] < data[best],
            Extreme::Max => data[i] > data[best],
        };
        if better {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn leftmost_ties() {
        let data = [5, 2, 7, 2];
        let min = Rmq::new(&data, Extreme::Min);
        let max = Rmq::new(&data, Extreme::Max);
        assert_eq!(min.query(&data, 0, 3).unwrap(), 1);
        assert_eq!(max.query(&data, 1, 3).unwrap(), 2);
        assert!(matches!(
            min.query(&data, 2, 1),
            Err(Error::EmptyRange { .. })
        ));
    }

    #[test]
    fn agrees_with_linear_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let n = rng.random_range(1..400);
            let vmax = rng.random_range(1..50);
            let data: Vec<u32> = (0..n).map(|_| rng.random_range(0..vmax)).collect();
            let lo = rng.random_range(0..n);
            let hi = rng.random_range(lo..n);
            for kind in [Extreme::Min, Extreme::Max] {
                let rmq = Rmq::new(&data, kind);
                let expected = (lo..=hi)
                    .reduce(|a, b| match kind {
                        Extreme::Min if data[b] < data[a] => b,
                        Extreme::Max if data[b] > data[a] => b,
                        _ => a,
                    })
                    .unwrap();
                assert_eq!(rmq.query(&data, lo, hi).unwrap(), expected);
            }
        }
    }
}
