//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;
use std::time::Instant;

use katka_core::alphabet::{encode_read, Alphabet, Symbol, BASE_A, DOLLAR, HASH, WILDCARD};
use katka_core::digest::{digest_sequence, minimizer_positions, render_ascii};
use katka_core::eval::{
    classify_range, classify_read, run_experiment, synthetic_collection, RangeClass, ReadSimConfig,
    SynthConfig, Variant,
};
use katka_core::format::{from_bytes, to_bytes};
use katka_core::suffix::{
    build_lcp_array, build_suffix_array, derive_bwt, BitVector, Extreme, Rmq, SmallerValues,
    WaveletMatrix,
};
use katka_core::taxonomy::PhyloTree;
use katka_core::{
    build_katka_kernel, compute_mem_table, digest_collection, query_read, DigestParams, FmIndex,
    GenomeCollection, KernelParams, KernelSize, MemTable, Provenance, SeparatedText,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PATTERN: &str = "GGATGGGCTAGACGATCTTCTGTG";

type Outcome = Result<String, String>;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    std::fs::read_to_string(p).unwrap()
}

fn toy16() -> GenomeCollection {
    GenomeCollection::from_strs(&data("toy16.txt").lines().collect::<Vec<_>>()).unwrap()
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// `(mem, first_genome, last_genome)` rows, empty ranges as `None`.
fn table_rows(
    t: &MemTable,
    read: &[Symbol],
    alphabet: Alphabet,
) -> Vec<(String, Option<(usize, usize)>)> {
    t.records()
        .iter()
        .map(|r| {
            (
                alphabet.render(&read[r.read_start..r.end()]),
                r.genome_range(),
            )
        })
        .collect()
}

fn rows(expected: &[(&str, usize, usize)]) -> Vec<(String, Option<(usize, usize)>)> {
    expected
        .iter()
        .map(|&(m, a, b)| (m.to_string(), Some((a, b))))
        .collect()
}

const RAW_TABLE: [(&str, usize, usize); 3] = [
    ("GGATGGGCTAG", 13, 13),
    ("TAGACGATCTTCTGT", 9, 9),
    ("TGTG", 0, 1),
];
const KERNEL_TABLE: [(&str, usize, usize); 10] = [
    ("GGATGGG", 13, 13),
    ("GGGC", 6, 15),
    ("GGCT", 12, 14),
    ("GCTAG", 15, 15),
    ("TAGA", 0, 15),
    ("AGACG", 15, 15),
    ("GACGATC", 11, 11),
    ("ATCTTCT", 0, 15),
    ("TCTGT", 8, 8),
    ("TGTG", 0, 1),
];
const DIGEST_TABLE: [(&str, usize, usize); 2] = [("Q", 8, 15), (".", 4, 11)];

/// MEM tables of the pattern against the raw, 4th-order kernel and digest indexes.
fn pattern_tables() -> [(MemTable, Vec<Symbol>, Alphabet); 3] {
    let c = toy16();
    let p = encode_read(PATTERN.as_bytes()).unwrap();
    let raw = FmIndex::build(&c.separate()).unwrap();
    let kernel = build_katka_kernel(&c.separate(), KernelParams { k_max: 4 }).unwrap();
    let kernel = FmIndex::build(kernel.text()).unwrap();
    let digest = FmIndex::build(
        digest_collection(&c, &DigestParams::default())
            .unwrap()
            .text(),
    )
    .unwrap();
    [raw, kernel, digest].map(|ix| {
        let q = query_read(&ix, &p).unwrap().unwrap();
        (q.table, q.symbols, ix.alphabet())
    })
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let tables = pattern_tables();
    let elapsed = t0.elapsed();
    let expected = [rows(&RAW_TABLE), rows(&KERNEL_TABLE), rows(&DIGEST_TABLE)];
    for ((t, read, alphabet), want) in tables.iter().zip(&expected) {
        let got = table_rows(t, read, *alphabet);
        check(&got == want, || {
            format!("table mismatch: got {got:?}, want {want:?}")
        })?;
    }
    check(elapsed.as_secs_f64() < 1.0, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "raw, kernel and digest tables match (3 + 10 + 2 rows) in {elapsed:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let c = GenomeCollection::from_strs(&data("toy5.txt").lines().collect::<Vec<_>>()).unwrap();
    let ix = FmIndex::build(&c.separate()).unwrap();
    let t = compute_mem_table(&ix, &encode_read(b"ACATA").unwrap()).unwrap();
    let got: Vec<_> = t
        .records()
        .iter()
        .map(|r| {
            let o = r.occurrences.unwrap();
            (
                r.read_start,
                r.length,
                o.first_pos,
                o.last_pos,
                o.first_genome,
                o.last_genome,
            )
        })
        .collect();
    let want = vec![(0, 4, 4, 21, 0, 2), (2, 3, 11, 41, 1, 4)];
    check(got == want, || format!("got {got:?}"))?;
    Ok("ACAT at 4/21 in genomes 0/2, ATA at 11/41 in genomes 1/4".into())
}

fn criterion_3() -> Outcome {
    let c = toy16();
    let raw = KernelSize::of(c.separate().symbols()).non_separator_symbols();
    let digest = digest_collection(&c, &DigestParams::default()).unwrap();
    let k4 = build_katka_kernel(&c.separate(), KernelParams { k_max: 4 }).unwrap();
    let k5 = build_katka_kernel(&c.separate(), KernelParams { k_max: 5 }).unwrap();
    let dk = build_katka_kernel(digest.text(), KernelParams { k_max: 2 }).unwrap();
    let k4_size = k4.size_report().non_separator_symbols();
    let dk_size = dk.size_report().non_separator_symbols();
    let k5_ratio = k5.size_report().non_separator_symbols() as f64 / raw as f64;
    let summary = format!(
        "raw {raw}, digest {}, kernel(4) {k4_size} ({} bases + {} #), digest kernel(2) {dk_size}, kernel(5) {:.1}% (sizes count # markers)",
        digest.symbol_count(),
        k4.size_report().kept_base_symbols,
        k4.size_report().hash_symbols,
        100.0 * k5_ratio
    );
    let ok = raw == 1600
        && digest.symbol_count() == 287
        && k4_size == 798
        && dk_size == 220
        && (k5_ratio - 0.70).abs() <= 0.02;
    check(ok, || {
        format!("{summary}; expected 1600 / 287 / 798 / 220 / 70%")
    })?;
    Ok(summary)
}

fn criterion_4() -> Outcome {
    let c = toy16();
    let p = DigestParams::default();
    let d = digest_collection(&c, &p).unwrap();
    let ascii = d.render_ascii().unwrap();
    let want = data("toy16_digest.txt");
    let first = digest_sequence(&c.genomes()[0], &p).unwrap().len();
    let pat = render_ascii(
        &digest_sequence(&encode_read(PATTERN.as_bytes()).unwrap(), &p).unwrap(),
        &p,
    )
    .unwrap();
    // window soundness: every window's leftmost minimum is marked, and every mark is one
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let n = rng.random_range(0..300);
        let s = random_bases(&mut rng, n);
        let params = DigestParams {
            k: rng.random_range(1..=6),
            w: rng.random_range(1..=15),
            ..p
        };
        let got = minimizer_positions(&s, &params).unwrap();
        let want = minimizer_oracle(&s, &params);
        check(got == want, || {
            format!("window soundness fails on {params:?}")
        })?;
    }
    check(first == 21, || format!("first digest has {first} symbols"))?;
    check(pat == "Q.", || format!("pattern digest renders as {pat:?}"))?;
    check(ascii == want.trim(), || {
        "collection digest differs from the reference text".into()
    })?;
    Ok(format!(
        "digest text matches ({} symbols), first genome 21, pattern \"Q.\", 500 window checks",
        d.symbol_count()
    ))
}

fn kmer_value_oracle(s: &[Symbol]) -> u64 {
    s.iter()
        .enumerate()
        .map(|(j, &b)| (b - BASE_A) as u64 * 4u64.pow(j as u32))
        .sum()
}

fn minimizer_oracle(s: &[Symbol], p: &DigestParams) -> Vec<usize> {
    let (k, w) = (p.k as usize, p.w as usize);
    if s.len() < k + w - 1 {
        return Vec::new();
    }
    let h: Vec<u64> = s.windows(k).map(|x| p.hash(kmer_value_oracle(x))).collect();
    let mut marked = std::collections::BTreeSet::new();
    for (i, win) in h.windows(w).enumerate() {
        let m = win.iter().min().unwrap();
        marked.insert(i + win.iter().position(|x| x == m).unwrap());
    }
    marked.into_iter().collect()
}

fn random_bases(rng: &mut ChaCha8Rng, n: usize) -> Vec<Symbol> {
    (0..n).map(|_| BASE_A + rng.random_range(0..4)).collect()
}

/// Related genomes: mutated, trimmed copies of one ancestor over `sigma` symbols.
fn related_genomes(
    rng: &mut ChaCha8Rng,
    count: usize,
    max_len: usize,
    sigma: u32,
) -> Vec<Vec<Symbol>> {
    let base: Vec<Symbol> = (0..max_len)
        .map(|_| BASE_A + rng.random_range(0..sigma))
        .collect();
    let rate = rng.random_range(0.0..0.3);
    (0..count)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            let start = rng.random_range(0..=max_len - len);
            base[start..start + len]
                .iter()
                .map(|&s| {
                    if rng.random_bool(rate) {
                        BASE_A + rng.random_range(0..sigma)
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect()
}

fn genome_at(text: &[Symbol], p: usize) -> usize {
    text[..p].iter().filter(|&&s| s == DOLLAR).count()
}

/// First and last start of `pat` in `text`, by scanning.
fn occurrences(text: &[Symbol], pat: &[Symbol]) -> Option<(usize, usize)> {
    let hits: Vec<usize> = (0..=text.len().saturating_sub(pat.len()))
        .filter(|&t| text.len() >= pat.len() && &text[t..t + pat.len()] == pat)
        .collect();
    Some((*hits.first()?, *hits.last()?))
}

fn kernel_oracle_ok(
    raw: &[Symbol],
    kernel: &[Symbol],
    k_max: usize,
    alphabet: Alphabet,
) -> Result<(), String> {
    for k in 1..=k_max {
        let kmers = |t: &[Symbol]| -> BTreeMap<Vec<Symbol>, (usize, usize)> {
            let mut m = BTreeMap::new();
            for (i, w) in t.windows(k).enumerate() {
                if w.iter().all(|&s| alphabet.is_query_symbol(s)) {
                    let g = genome_at(t, i);
                    m.entry(w.to_vec())
                        .and_modify(|e: &mut (usize, usize)| e.1 = g)
                        .or_insert((g, g));
                }
            }
            m
        };
        let (a, b) = (kmers(raw), kmers(kernel));
        if a != b {
            return Err(format!("{k}-mer sets or genome extremes differ"));
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut shrunk = 0;
    let cases = 400;
    for case in 0..cases {
        let count = rng.random_range(1..=8);
        let sigma = if case % 4 == 0 { 2 } else { 4 };
        let max_len = rng.random_range(1..=200);
        let genomes = related_genomes(&mut rng, count, max_len, sigma);
        let k_max = rng.random_range(1..=6);
        let st =
            SeparatedText::from_segments(genomes.iter().map(|g| g.as_slice()), Provenance::Raw);
        let kernel = build_katka_kernel(&st, KernelParams { k_max }).unwrap();
        kernel_oracle_ok(
            st.symbols(),
            kernel.text().symbols(),
            k_max as usize,
            Alphabet::Dna,
        )
        .map_err(|e| format!("case {case}: {e}"))?;
        check(kernel.text().genome_count() == count, || {
            format!("case {case}: separator count")
        })?;
        shrunk += (kernel.text().len() < st.len()) as usize;
    }
    Ok(format!("{cases} random collections, k-mer sets and genome extremes preserved ({shrunk} kernels shorter than their input)"))
}

type Row = (usize, usize, Option<(usize, usize, usize, usize)>);

/// Every maximal exact match by definition: `read[i..i+l)` occurs, and neither
/// `read[i-1..i+l)` nor `read[i..i+l+1)` does. Digest texts add an empty row for
/// each read symbol that occurs nowhere.
fn mem_oracle(text: &[Symbol], read: &[Symbol], alphabet: Alphabet) -> Vec<Row> {
    let occurs = |p: &[Symbol]| {
        p.iter().all(|&s| alphabet.is_query_symbol(s)) && occurrences(text, p).is_some()
    };
    let digest = matches!(alphabet, Alphabet::Digest { .. });
    let mut out = Vec::new();
    for i in 0..read.len() {
        if digest && !occurs(&read[i..i + 1]) {
            out.push((i, 1, None));
            continue;
        }
        let mut l = 0;
        while i + l < read.len() && occurs(&read[i..i + l + 1]) {
            l += 1;
        }
        if l == 0 || (i > 0 && occurs(&read[i - 1..i + l])) {
            continue;
        }
        let (first, last) = occurrences(text, &read[i..i + l]).unwrap();
        out.push((
            i,
            l,
            Some((first, last, genome_at(text, first), genome_at(text, last))),
        ));
    }
    out
}

fn impl_rows(t: &MemTable) -> Vec<Row> {
    t.records()
        .iter()
        .map(|r| {
            (
                r.read_start,
                r.length,
                r.occurrences
                    .map(|o| (o.first_pos, o.last_pos, o.first_genome, o.last_genome)),
            )
        })
        .collect()
}

/// A random text of at most 256 symbols: raw DNA (sometimes with wildcards),
/// a kernel, or a digest over a small digest alphabet.
fn random_text(rng: &mut ChaCha8Rng, case: usize) -> SeparatedText {
    let count = rng.random_range(1..=6);
    let max_len = (256 / count - 1).min(rng.random_range(1..=120));
    match case % 5 {
        0 | 1 => {
            let mut g = related_genomes(rng, count, max_len, 4);
            if case % 10 == 1 {
                for s in g.iter_mut().flatten() {
                    if rng.random_bool(0.05) {
                        *s = WILDCARD;
                    }
                }
            }
            SeparatedText::from_segments(g.iter().map(|x| x.as_slice()), Provenance::Raw)
        }
        2 => {
            let g = related_genomes(rng, count, max_len, 4);
            let st = SeparatedText::from_segments(g.iter().map(|x| x.as_slice()), Provenance::Raw);
            let k_max = rng.random_range(1..=8);
            build_katka_kernel(&st, KernelParams { k_max })
                .unwrap()
                .into_text()
        }
        3 => {
            let g = related_genomes(rng, count, max_len, 2);
            SeparatedText::from_segments(g.iter().map(|x| x.as_slice()), Provenance::Raw)
        }
        _ => {
            let k = rng.random_range(1..=2);
            let sigma = 4u32.pow(k);
            let g = related_genomes(rng, count, max_len, sigma.min(6));
            let prov = Provenance::Digest {
                digest: DigestParams::new(k, 4),
            };
            let st = SeparatedText::from_segments(g.iter().map(|x| x.as_slice()), prov);
            if rng.random_bool(0.5) {
                let k_max = rng.random_range(1..=4);
                build_katka_kernel(&st, KernelParams { k_max })
                    .unwrap()
                    .into_text()
            } else {
                st
            }
        }
    }
}

/// A read over the text's alphabet: usually a mutated piece of the text.
fn random_read(rng: &mut ChaCha8Rng, st: &SeparatedText) -> Vec<Symbol> {
    let alphabet = st.alphabet();
    let len = rng.random_range(1..=64);
    let payload: Vec<Symbol> = st
        .symbols()
        .iter()
        .copied()
        .filter(|&s| alphabet.is_query_symbol(s))
        .collect();
    let random_symbol = |rng: &mut ChaCha8Rng| match alphabet {
        Alphabet::Dna => BASE_A + rng.random_range(0..5),
        Alphabet::Digest { k } => BASE_A + rng.random_range(0..4u32.pow(k).min(8)),
    };
    if payload.is_empty() || rng.random_bool(0.2) {
        return (0..len).map(|_| random_symbol(rng)).collect();
    }
    let start = rng.random_range(0..payload.len());
    let rate = rng.random_range(0.0..0.2);
    (0..len)
        .map(|j| {
            let s = payload[(start + j) % payload.len()];
            if rng.random_bool(rate) {
                random_symbol(rng)
            } else {
                s
            }
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = 10_000;
    let mut rows = 0;
    for case in 0..cases {
        let st = random_text(&mut rng, case);
        let ix = FmIndex::build(&st).unwrap();
        let read = random_read(&mut rng, &st);
        let got = impl_rows(&compute_mem_table(&ix, &read).unwrap());
        let want = mem_oracle(st.symbols(), &read, st.alphabet());
        check(got == want, || {
            format!(
                "case {case}: text {} read {}: got {got:?}, want {want:?}",
                st.render(),
                st.alphabet().render(&read)
            )
        })?;
        rows += got.len();
    }
    Ok(format!(
        "{cases} random cases agree with the definitional oracle ({rows} rows)"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = 60;
    for case in 0..cases {
        let count = rng.random_range(2..=8);
        let max_len = rng.random_range(40..=300);
        let genomes = related_genomes(&mut rng, count, max_len, 4);
        let c =
            GenomeCollection::new(genomes, (0..count).map(|g| format!("g{g}")).collect()).unwrap();
        let read_length = rng.random_range(5..=30);
        let k_max = read_length as u32 + rng.random_range(0..5);
        let raw = Variant::Raw.build_index(&c).unwrap();
        let kernel = Variant::Kernel { k_max }.build_index(&c).unwrap();
        for _ in 0..20 {
            let len = rng.random_range(1..=read_length);
            let g = &c.genomes()[rng.random_range(0..count)];
            let start = rng.random_range(0..g.len());
            let read: Vec<Symbol> = (0..len)
                .map(|j| {
                    if rng.random_bool(0.1) {
                        BASE_A + rng.random_range(0..4)
                    } else {
                        g[(start + j) % g.len()]
                    }
                })
                .collect();
            let strip = |t: MemTable| -> Vec<_> {
                t.records()
                    .iter()
                    .map(|r| (r.read_start, r.length, r.genome_range()))
                    .collect()
            };
            let a = strip(compute_mem_table(&raw, &read).unwrap());
            let b = strip(compute_mem_table(&kernel, &read).unwrap());
            check(a == b, || format!("case {case}: raw {a:?} vs kernel {b:?}"))?;
        }
        let cfg = ReadSimConfig {
            read_length,
            mutation_rate: 0.02,
            reads_per_genome: 10,
            seed: case as u64,
        };
        if let Ok(report) = run_experiment(&c, &[Variant::Raw, Variant::Kernel { k_max }], &cfg) {
            let (r, k) = (&report.variants[0], &report.variants[1]);
            check(r.error.is_none() && k.error.is_none(), || {
                format!("case {case}: variant error")
            })?;
            check(
                r.tp_rate == k.tp_rate && r.class_counts == k.class_counts,
                || format!("case {case}: tp rate {} vs {}", r.tp_rate, k.tp_rate),
            )?;
        }
    }
    Ok(format!(
        "{cases} collections: kernel MEM tables and TP rates equal the raw ones"
    ))
}

fn criterion_8() -> Outcome {
    use RangeClass::*;
    let expected = [
        ((9, 9), TruePositive),
        ((0, 1), FalsePositive),
        ((8, 8), FalsePositive),
        ((11, 11), FalsePositive),
        ((12, 14), FalsePositive),
        ((13, 13), FalsePositive),
        ((15, 15), FalsePositive),
        ((0, 15), VaguePositive),
        ((4, 11), VaguePositive),
        ((6, 15), VaguePositive),
        ((8, 15), VaguePositive),
    ];
    for (range, class) in expected {
        let got = classify_range(Some(range), 9);
        check(got == class, || format!("{range:?} classified {got:?}"))?;
    }
    check(classify_range(None, 9) == FalseNegative, || {
        "empty range".into()
    })?;

    // the distinct ranges of the three tables are exactly the ones above
    let tables = pattern_tables();
    let seen: HashSet<(usize, usize)> = tables
        .iter()
        .flat_map(|(t, _, _)| t.records().iter().filter_map(|r| r.genome_range()))
        .collect();
    let listed: HashSet<(usize, usize)> = expected.iter().map(|e| e.0).collect();
    check(seen == listed, || format!("table ranges {seen:?}"))?;

    let reads: Vec<bool> = tables.iter().map(|(t, _, _)| classify_read(t, 9)).collect();
    check(reads == [true, false, false], || {
        format!("read classes {reads:?}")
    })?;
    Ok("1 TP, 6 FP, 4 VP, empty is FN; reads raw/kernel/digest = true/false/false".into())
}

fn criterion_9() -> Outcome {
    let t0 = Instant::now();
    let synth = synthetic_collection(&SynthConfig {
        genomes: 50,
        genome_length: 10_000,
        seed: 9,
        ..Default::default()
    })
    .map_err(|e| e.to_string())?;
    let cfg = ReadSimConfig {
        read_length: 200,
        mutation_rate: 0.01,
        reads_per_genome: 100,
        seed: 9,
    };
    let variants = [
        Variant::Raw,
        Variant::Kernel { k_max: 100 },
        Variant::Kernel { k_max: 50 },
        Variant::Kernel { k_max: 20 },
    ];
    let first = run_experiment(&synth.collection, &variants, &cfg).map_err(|e| e.to_string())?;
    let second = run_experiment(&synth.collection, &variants, &cfg).map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed();
    let v = &first.variants;
    let sizes: Vec<u64> = v.iter().map(|r| r.size_bytes).collect();
    let summary = format!(
        "raw tp {:.4}, sizes raw/k100/k50/k20 = {sizes:?}, tp {:?}, {elapsed:.1?}",
        v[0].tp_rate,
        v.iter()
            .map(|r| (r.tp_rate * 1e4).round() / 1e4)
            .collect::<Vec<_>>()
    );
    check(v.iter().all(|r| r.error.is_none()), || {
        format!("variant error: {summary}")
    })?;
    check(v[0].tp_rate >= 0.95, || {
        format!("raw TP rate too low: {summary}")
    })?;
    check(sizes[1] < sizes[0], || {
        format!("kernel(100) not smaller: {summary}")
    })?;
    check(sizes[2] <= sizes[1] && sizes[3] <= sizes[2], || {
        format!("sizes not monotone: {summary}")
    })?;
    check(first.without_timing() == second.without_timing(), || {
        "reports differ between runs".into()
    })?;
    check(elapsed.as_secs() < 600, || format!("too slow: {summary}"))?;
    Ok(summary)
}

fn naive_suffix_array(text: &[Symbol]) -> Vec<u32> {
    let mut t = text.to_vec();
    t.push(0);
    let mut sa: Vec<u32> = (0..t.len() as u32).collect();
    sa.sort_by(|&a, &b| t[a as usize..].cmp(&t[b as usize..]));
    sa
}

fn naive_lcp(text: &[Symbol], sa: &[u32]) -> Vec<u32> {
    let mut t = text.to_vec();
    t.push(0);
    let mut lcp = vec![0; sa.len()];
    for i in 1..sa.len() {
        let (a, b) = (&t[sa[i - 1] as usize..], &t[sa[i] as usize..]);
        lcp[i] = a.iter().zip(b).take_while(|(x, y)| x == y).count() as u32;
    }
    lcp
}

fn random_tree(rng: &mut ChaCha8Rng, lo: usize, hi: usize, out: &mut String) {
    if hi - lo == 1 {
        out.push_str(&format!("g{lo}"));
        return;
    }
    let parts = rng.random_range(2..=3).min(hi - lo);
    let mut cuts: Vec<usize> = (0..parts - 1)
        .map(|_| rng.random_range(lo + 1..hi))
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort();
    cuts.dedup();
    out.push('(');
    for (i, w) in cuts.windows(2).enumerate() {
        if i > 0 {
            out.push(',');
        }
        random_tree(rng, w[0], w[1], out);
    }
    out.push(')');
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    // suffix array, LCP, BWT and backward search
    let cases = 10_000;
    for case in 0..cases {
        let st = random_text(&mut rng, case);
        let text = st.symbols();
        let sa = build_suffix_array(text);
        let want_sa = naive_suffix_array(text);
        check(sa == want_sa, || format!("SA case {case}"))?;
        check(build_lcp_array(text, &sa) == naive_lcp(text, &sa), || {
            format!("LCP case {case}")
        })?;
        let bwt = derive_bwt(text, &sa);
        let want_bwt: Vec<Symbol> = want_sa
            .iter()
            .map(|&p| if p == 0 { 0 } else { text[p as usize - 1] })
            .collect();
        check(bwt == want_bwt, || format!("BWT case {case}"))?;
        if case % 10 == 0 {
            let ix = FmIndex::build(&st).unwrap();
            let pat = random_read(&mut rng, &st);
            let pat = &pat[..pat.len().min(4)];
            if pat.iter().all(|&s| st.alphabet().is_query_symbol(s)) {
                let iv = ix.interval_of(pat).unwrap();
                let mut t = text.to_vec();
                t.push(0);
                let want: Vec<usize> = (0..sa.len())
                    .filter(|&i| t[sa[i] as usize..].starts_with(pat))
                    .collect();
                check(iv.rows().collect::<Vec<_>>() == want, || {
                    format!("interval case {case}")
                })?;
            }
        }
    }

    // rank/select inverse laws
    for _ in 0..200 {
        let n = rng.random_range(0..3000);
        let density = rng.random_range(0.0..1.0);
        let bits: Vec<bool> = (0..n).map(|_| rng.random_bool(density)).collect();
        let bv = BitVector::from_bits(bits.iter().copied());
        let mut ones = 0;
        for (i, &b) in bits.iter().enumerate() {
            check(bv.rank1(i) == ones, || "rank1".into())?;
            if b {
                check(bv.select1(ones) == Some(i), || {
                    "select1(rank1(i)) != i".into()
                })?;
                ones += 1;
            } else {
                check(bv.select0(i - ones) == Some(i), || {
                    "select0(rank0(i)) != i".into()
                })?;
            }
        }
        check(bv.select1(ones).is_none() && bv.rank1(n) == ones, || {
            "bit vector end".into()
        })?;

        let sigma = rng.random_range(1..70);
        let seq: Vec<Symbol> = (0..n / 4).map(|_| rng.random_range(0..sigma)).collect();
        let wm = WaveletMatrix::new(&seq);
        let mut counts = vec![0usize; sigma as usize];
        for (i, &c) in seq.iter().enumerate() {
            check(wm.access(i) == c, || "wavelet access".into())?;
            check(wm.rank(c, i) == counts[c as usize], || {
                "wavelet rank".into()
            })?;
            check(wm.select(c, counts[c as usize]) == Some(i), || {
                "wavelet select".into()
            })?;
            counts[c as usize] += 1;
        }
    }

    // range extremes and nearest smaller values
    for _ in 0..200 {
        let n = rng.random_range(1..500);
        let data: Vec<u32> = (0..n).map(|_| rng.random_range(0..20)).collect();
        let min = Rmq::new(&data, Extreme::Min);
        let max = Rmq::new(&data, Extreme::Max);
        for _ in 0..50 {
            let lo = rng.random_range(0..n);
            let hi = rng.random_range(lo..n);
            let slice = &data[lo..=hi];
            let want_min = lo
                + slice
                    .iter()
                    .position(|x| x == slice.iter().min().unwrap())
                    .unwrap();
            let want_max = lo
                + slice
                    .iter()
                    .position(|x| x == slice.iter().max().unwrap())
                    .unwrap();
            check(min.query(&data, lo, hi).unwrap() == want_min, || {
                "range min".into()
            })?;
            check(max.query(&data, lo, hi).unwrap() == want_max, || {
                "range max".into()
            })?;
        }
        let sv = SmallerValues::new(&data);
        for i in 0..n {
            let psv = (0..i).rev().find(|&j| data[j] < data[i]);
            let nsv = (i + 1..n).find(|&j| data[j] < data[i]);
            check(sv.psv(i) == psv && sv.nsv(i) == nsv, || "psv/nsv".into())?;
        }
    }

    // LCA against ancestor sets
    for _ in 0..100 {
        let leaves = rng.random_range(1..=64);
        let mut newick = String::new();
        random_tree(&mut rng, 0, leaves, &mut newick);
        newick.push(';');
        let tree = PhyloTree::parse_newick(&newick).map_err(|e| e.to_string())?;
        check(tree.leaf_count() == leaves, || "leaf count".into())?;
        let ancestors = |mut v: usize| {
            let mut a = vec![v];
            while let Some(p) = tree.node(v).parent {
                a.push(p);
                v = p;
            }
            a
        };
        let n = tree.nodes().len();
        for a in 0..n {
            let up: HashSet<usize> = ancestors(a).into_iter().collect();
            for b in 0..n {
                let naive = ancestors(b).into_iter().find(|x| up.contains(x)).unwrap();
                check(tree.lca(a, b) == naive, || {
                    format!("lca({a},{b}) in {newick}")
                })?;
            }
        }
        for _ in 0..20 {
            let first = rng.random_range(0..leaves);
            let last = rng.random_range(first..leaves);
            let (lo, hi) = tree.leaf_span(tree.subtree_for_range(first, last).unwrap());
            check(lo <= first && last <= hi, || "subtree span".into())?;
        }
    }

    // serialization round trip
    let mut queries = 0;
    while queries < 1000 {
        let st = random_text(&mut rng, queries);
        let ix = FmIndex::build(&st).unwrap();
        let back = from_bytes(&to_bytes(&ix)).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let read = random_read(&mut rng, &st);
            let a = compute_mem_table(&ix, &read).unwrap();
            let b = compute_mem_table(&back, &read).unwrap();
            check(a == b, || format!("round trip differs on query {queries}"))?;
            queries += 1;
        }
    }
    Ok(format!("{cases} SA/LCP/BWT cases, rank/select, RMQ, PSV/NSV, LCA on trees up to 64 leaves, {queries} round-trip queries"))
}

/// Golden checks beyond the numbered criteria.
fn golden_texts() -> Outcome {
    let c = toy16();
    let k4 = build_katka_kernel(&c.separate(), KernelParams { k_max: 4 }).unwrap();
    check(
        k4.text().render() == data("toy16_kernel4.txt").trim(),
        || "kernel(4) text".into(),
    )?;
    let digest = digest_collection(&c, &DigestParams::default()).unwrap();
    let dk = build_katka_kernel(digest.text(), KernelParams { k_max: 2 }).unwrap();
    check(
        dk.text().render() == data("toy16_digest_kernel2.txt").trim(),
        || "digest kernel(2) text".into(),
    )?;

    let head_tail = |st: &SeparatedText| {
        let sa = FmIndex::build(st).unwrap().sa().to_vec();
        (sa[..6].to_vec(), sa[sa.len() - 6..].to_vec())
    };
    let want = [
        (
            vec![815, 321, 354, 550, 209, 167],
            vec![477, 23, 390, 22, 389, 21],
        ),
        (
            vec![303, 302, 102, 210, 156, 174],
            vec![15, 268, 230, 286, 249, 67],
        ),
        (
            vec![236, 38, 137, 211, 185, 82],
            vec![5, 29, 15, 175, 219, 45],
        ),
    ];
    for (st, want) in [k4.text(), digest.text(), dk.text()].into_iter().zip(want) {
        let got = head_tail(st);
        check(got == want, || format!("suffix array rows {got:?}"))?;
    }
    check(
        !k4.text().symbols().contains(&0) && k4.text().symbols().contains(&HASH),
        || "kernel symbols".into(),
    )?;
    Ok("kernel(4) and digest kernel(2) texts match; suffix array head/tail rows match for all three".into())
}

type Check = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Check; 11] = [
        ("criterion 1 (MEM tables of the pattern)", criterion_1),
        ("criterion 2 (ACATA worked example)", criterion_2),
        ("criterion 3 (toy size ledger)", criterion_3),
        ("criterion 4 (digest fidelity)", criterion_4),
        ("criterion 5 (kernel properties)", criterion_5),
        ("criterion 6 (MEM oracle equivalence)", criterion_6),
        ("criterion 7 (kernel fidelity)", criterion_7),
        ("criterion 8 (range classification)", criterion_8),
        ("criterion 9 (synthetic evaluation)", criterion_9),
        ("criterion 10 (structure properties)", criterion_10),
        ("golden texts", golden_texts),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t0 = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1?}]", t0.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{:.1?}]", t0.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
