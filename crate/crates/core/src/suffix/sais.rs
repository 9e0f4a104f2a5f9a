//! Suffix array construction by induced sorting (SA-IS), linear time over an
//! integer alphabet.

use crate::alphabet::{Symbol, EOF};

const EMPTY: u32 = u32::MAX;

/// Suffix array of `text` followed by the implicit EOF sentinel.
///
/// The result has `text.len() + 1` entries; row 0 is always the EOF suffix
/// (position `text.len()`).
pub fn build_suffix_array(text: &[Symbol]) -> Vec<u32> {
    assert!(
        text.len() < (u32::MAX - 1) as usize,
        "text too long for 32-bit suffix array"
    );
    // Shift by one so the sentinel is the unique smallest symbol even when
    // `text` itself contains EOF-valued symbols (only in tests).
    let mut t: Vec<u32> = text.iter().map(|&s| s + 1).collect();
    t.push(EOF);
    let sigma = t.iter().copied().max().unwrap_or(0) as usize + 1;
    let mut sa = vec![0u32; t.len()];
    sais(&t, sigma, &mut sa);
    sa
}

fn bucket_heads(t: &[u32], sigma: usize) -> Vec<u32> {
    let mut counts = vec![0u32; sigma];
    for &c in t {
        counts[c as usize] += 1;
    }
    let mut sum = 0;
    for c in counts.iter_mut() {
        let n = *c;
        *c = sum;
        sum += n;
    }
    counts
}

fn bucket_tails(t: &[u32], sigma: usize) -> Vec<u32> {
    let mut counts = vec![0u32; sigma];
    for &c in t {
        counts[c as usize] += 1;
    }
    let mut sum = 0;
    for c in counts.iter_mut() {
        sum += *c;
        *c = sum;
    }
    counts
}

/// `t` must end with a unique smallest symbol.
fn sais(t: &[u32], sigma: usize, sa: &mut [u32]) {
    let n = t.len();
    if n == 1 {
        sa[0] = 0;
        return;
    }
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = t[i] < t[i + 1] || (t[i] == t[i + 1] && is_s[i + 1]);
    }
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];

    let lms: Vec<u32> = (1..n).filter(|&i| is_lms(i)).map(|i| i as u32).collect();
    induce(t, sigma, &is_s, &lms, sa);

    // Name the LMS substrings in sorted order.
    let sorted_lms: Vec<u32> = sa.iter().copied().filter(|&p| is_lms(p as usize)).collect();
    let mut names = vec![EMPTY; n];
    let mut name = 0u32;
    let mut prev: Option<usize> = None;
    for &p in &sorted_lms {
        let p = p as usize;
        if let Some(q) = prev {
            if !lms_substrings_equal(t, &is_s, q, p) {
                name += 1;
            }
        }
        names[p] = name;
        prev = Some(p);
    }
    let distinct = name as usize + 1;

    let order: Vec<u32> = if distinct < lms.len() {
        let reduced: Vec<u32> = lms.iter().map(|&p| names[p as usize]).collect();
        let mut sub = vec![0u32; reduced.len()];
        sais(&reduced, distinct, &mut sub);
        sub.iter().map(|&i| lms[i as usize]).collect()
    } else {
        let mut order = vec![0u32; lms.len()];
        for &p in &lms {
            order[names[p as usize] as usize] = p;
        }
        order
    };
    induce(t, sigma, &is_s, &order, sa);
}

fn lms_substrings_equal(t: &[u32], is_s: &[bool], a: usize, b: usize) -> bool {
    let n = t.len();
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];
    let mut j = 0;
    loop {
        if a + j >= n || b + j >= n {
            return false;
        }
        if t[a + j] != t[b + j] || is_s[a + j] != is_s[b + j] {
            return false;
        }
        if j > 0 {
            let (ea, eb) = (is_lms(a + j), is_lms(b + j));
            if ea || eb {
                return ea && eb;
            }
        }
        j += 1;
    }
}

fn induce(t: &[u32], sigma: usize, is_s: &[bool], lms_order: &[u32], sa: &mut [u32]) {
    let n = t.len();
    sa.fill(EMPTY);
    let mut tails = bucket_tails(t, sigma);
    for &p in lms_order.iter().rev() {
        let c = t[p as usize] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p;
    }
    let mut heads = bucket_heads(t, sigma);
    for i in 0..n {
        let j = sa[i];
        if j != EMPTY && j > 0 && !is_s[j as usize - 1] {
            let c = t[j as usize - 1] as usize;
            sa[heads[c] as usize] = j - 1;
            heads[c] += 1;
        }
    }
    let mut tails = bucket_tails(t, sigma);
    for i in (0..n).rev() {
        let j = sa[i];
        if j != EMPTY && j > 0 && is_s[j as usize - 1] {
            let c = t[j as usize - 1] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = j - 1;
        }
    }
}
