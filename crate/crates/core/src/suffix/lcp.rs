use crate::alphabet::Symbol;

/// Kasai et al. LCP array: `lcp[i]` is the longest common prefix of the
/// suffixes in rows `i - 1` and `i`; `lcp[0] = 0`. The EOF suffix is empty, so
/// no value reaches past the end of the text.
pub fn build_lcp_array(text: &[Symbol], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    debug_assert_eq!(sa.len(), n + 1);
    let mut rank = vec![0u32; n + 1];
    for (i, &p) in sa.iter().enumerate() {
        rank[p as usize] = i as u32;
    }
    let mut lcp = vec![0u32; n + 1];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && text[i + h] == text[j + h] {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
