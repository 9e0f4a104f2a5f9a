//! Building blocks of the augmented FM-index: suffix and LCP arrays, BWT,
//! rank/select sequences, range extremes and nearest smaller values.

mod bits;
mod lcp;
mod rmq;
mod sais;
mod smaller;
mod wavelet;

pub use bits::BitVector;
pub use lcp::build_lcp_array;
pub use rmq::{Extreme, Rmq};
pub use sais::build_suffix_array;
pub use smaller::SmallerValues;
pub use wavelet::WaveletMatrix;

use crate::alphabet::{Symbol, EOF};

/// `bwt[i] = text[sa[i] - 1]`, with EOF where `sa[i] = 0`.
pub fn derive_bwt(text: &[Symbol], sa: &[u32]) -> Vec<Symbol> {
    sa.iter()
        .map(|&p| if p == 0 { EOF } else { text[p as usize - 1] })
        .collect()
}
