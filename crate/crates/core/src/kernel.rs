//! KATKA kernels: keep the first and the last occurrence of every distinct
//! `k_max`-mer, plus every `$`. Each maximal omitted run strictly between two
//! kept symbols becomes one `#`; omitted runs next to a `$` (or at the start of
//! the text) vanish.
//!
//! For every `k <= k_max` the kernel has the same `#`/`$`-free k-mers as its
//! input, and counting `$` to the left of the first (last) kernel occurrence
//! of such a k-mer gives the genome of its first (last) input occurrence.

use std::collections::HashMap;

use crate::alphabet::{Symbol, DOLLAR, HASH};
use crate::collection::{Provenance, SeparatedText};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelParams {
    pub k_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KernelSize {
    pub kept_base_symbols: usize,
    pub hash_symbols: usize,
    pub separator_count: usize,
}

impl KernelSize {
    pub fn of(symbols: &[Symbol]) -> Self {
        let mut size = Self::default();
        for &s in symbols {
            match s {
                HASH => size.hash_symbols += 1,
                DOLLAR => size.separator_count += 1,
                _ => size.kept_base_symbols += 1,
            }
        }
        size
    }

    /// Kept symbols plus `#` markers: everything except the separators.
    pub fn non_separator_symbols(&self) -> usize {
        self.kept_base_symbols + self.hash_symbols
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    text: SeparatedText,
    params: KernelParams,
}

impl Kernel {
    pub fn text(&self) -> &SeparatedText {
        &self.text
    }

    pub fn into_text(self) -> SeparatedText {
        self.text
    }

    pub fn params(&self) -> KernelParams {
        self.params
    }

    pub fn size_report(&self) -> KernelSize {
        KernelSize::of(self.text.symbols())
    }
}

pub fn build_katka_kernel(st: &SeparatedText, p: KernelParams) -> Result<Kernel> {
    if p.k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    let k = p.k_max as usize;
    let text = st.symbols();
    let n = text.len();
    let alphabet = st.alphabet();

    // run[i]: length of the matchable run starting at i
    let mut run = vec![0u32; n + 1];
    for i in (0..n).rev() {
        run[i] = if alphabet.is_query_symbol(text[i]) {
            run[i + 1] + 1
        } else {
            0
        };
    }

    let mut extremes: HashMap<&[Symbol], (usize, usize)> = HashMap::new();
    for i in 0..n.saturating_sub(k - 1) {
        if run[i] as usize >= k {
            extremes
                .entry(&text[i..i + k])
                .and_modify(|e| e.1 = i)
                .or_insert((i, i));
        }
    }

    let mut keep = vec![false; n];
    for &(first, last) in extremes.values() {
        keep[first..first + k].fill(true);
        keep[last..last + k].fill(true);
    }
    let mut start = 0;
    for (i, &s) in text.iter().enumerate() {
        if s == DOLLAR {
            keep[i] = true;
            if i - start < k {
                keep[start..i].fill(true);
            }
            start = i + 1;
        }
    }

    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if keep[i] {
            if !(text[i] == HASH && out.last() == Some(&HASH)) {
                out.push(text[i]);
            }
            i += 1;
            continue;
        }
        let gap_start = i;
        while i < n && !keep[i] {
            i += 1;
        }
        let after = text.get(i).copied();
        let before = (gap_start > 0).then(|| text[gap_start - 1]);
        let bounded = matches!(before, Some(b) if b != DOLLAR && b != HASH)
            && matches!(after, Some(a) if a != DOLLAR && a != HASH);
        if bounded {
            out.push(HASH);
        }
    }

    let provenance = match st.provenance() {
        Provenance::Raw | Provenance::Kernel { .. } => Provenance::Kernel { k_max: p.k_max },
        Provenance::Digest { digest } | Provenance::DigestKernel { digest, .. } => {
            Provenance::DigestKernel {
                digest,
                k_max: p.k_max,
            }
        }
    };
    Ok(Kernel {
        text: SeparatedText::from_symbols(out, provenance),
        params: p,
    })
}
