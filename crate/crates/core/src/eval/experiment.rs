use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::classify::{classify_read, ClassCounts};
use super::reads::{simulate_reads, ReadSimConfig, SimulatedRead};
use crate::collection::{GenomeCollection, Provenance, SeparatedText};
use crate::digest::{digest_collection, DigestParams};
use crate::error::{Error, Result};
use crate::fm_index::FmIndex;
use crate::format::serialized_size;
use crate::kernel::{build_katka_kernel, KernelParams};
use crate::mem::query_read;

/// One index configuration to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Raw,
    Kernel { k_max: u32 },
    Digest { digest: DigestParams },
    DigestKernel { digest: DigestParams, k_max: u32 },
}

impl Variant {
    /// Parse `raw`, `kernel:K`, `digest:k:w` or `digest-kernel:k:w:K`, taking
    /// the hash constants from `hash`.
    pub fn parse_with(s: &str, hash: DigestParams) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognised variant {s:?}"));
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let nums = parts
            .map(|p| p.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let digest = |k, w| DigestParams { k, w, ..hash };
        let v = match (kind, nums.as_slice()) {
            ("raw", []) => Variant::Raw,
            ("kernel", &[k_max]) => Variant::Kernel { k_max },
            ("digest", &[k, w]) => Variant::Digest {
                digest: digest(k, w),
            },
            ("digest-kernel", &[k, w, k_max]) => Variant::DigestKernel {
                digest: digest(k, w),
                k_max,
            },
            _ => return Err(bad()),
        };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Variant::Raw => Ok(()),
            Variant::Kernel { k_max } => check_k_max(*k_max),
            Variant::Digest { digest } => digest.validate(),
            Variant::DigestKernel { digest, k_max } => {
                digest.validate()?;
                check_k_max(*k_max)
            }
        }
    }

    /// The text this variant indexes.
    pub fn build_text(&self, c: &GenomeCollection) -> Result<SeparatedText> {
        self.validate()?;
        Ok(match self {
            Variant::Raw => c.separate(),
            Variant::Kernel { k_max } => {
                build_katka_kernel(&c.separate(), KernelParams { k_max: *k_max })?.into_text()
            }
            Variant::Digest { digest } => digest_collection(c, digest)?.into_text(),
            Variant::DigestKernel { digest, k_max } => {
                let d = digest_collection(c, digest)?;
                build_katka_kernel(d.text(), KernelParams { k_max: *k_max })?.into_text()
            }
        })
    }

    pub fn build_index(&self, c: &GenomeCollection) -> Result<FmIndex> {
        FmIndex::build(&self.build_text(c)?)?.with_names(c.names().to_vec())
    }

    pub fn provenance(&self) -> Provenance {
        match *self {
            Variant::Raw => Provenance::Raw,
            Variant::Kernel { k_max } => Provenance::Kernel { k_max },
            Variant::Digest { digest } => Provenance::Digest { digest },
            Variant::DigestKernel { digest, k_max } => Provenance::DigestKernel { digest, k_max },
        }
    }
}

fn check_k_max(k_max: u32) -> Result<()> {
    if k_max == 0 {
        Err(Error::InvalidParameter("k_max must be at least 1".into()))
    } else {
        Ok(())
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Raw => write!(f, "raw"),
            Variant::Kernel { k_max } => write!(f, "kernel:{k_max}"),
            Variant::Digest { digest } => write!(f, "digest:{}:{}", digest.k, digest.w),
            Variant::DigestKernel { digest, k_max } => {
                write!(f, "digest-kernel:{}:{}:{k_max}", digest.k, digest.w)
            }
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, DigestParams::default())
    }
}

pub const GRID_K_MAX: [u32; 11] = [5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 100];
pub const GRID_W: [u32; 10] = [5, 10, 15, 20, 25, 30, 35, 40, 45, 50];

/// Raw, every kernel order in [`GRID_K_MAX`], and 3-mer digests and their
/// kernels over [`GRID_W`] x [`GRID_K_MAX`].
pub fn default_grid(hash: DigestParams) -> Vec<Variant> {
    let mut v = vec![Variant::Raw];
    v.extend(GRID_K_MAX.iter().map(|&k_max| Variant::Kernel { k_max }));
    for &w in &GRID_W {
        let digest = DigestParams { k: 3, w, ..hash };
        v.push(Variant::Digest { digest });
        v.extend(
            GRID_K_MAX
                .iter()
                .map(|&k_max| Variant::DigestKernel { digest, k_max }),
        );
    }
    v
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantReport {
    pub variant: String,
    pub params: Provenance,
    pub size_bytes: u64,
    pub tp_rate: f64,
    pub mean_query_us: f64,
    pub class_counts: ClassCounts,
    pub reads: u64,
    pub true_positive_reads: u64,
    /// Reads too short to digest, or whose MEM table is empty. Counted as
    /// non-true-positive.
    pub empty_reads: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// Per-read outcome, in read order.
    #[serde(skip)]
    pub read_outcomes: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub reads: ReadSimConfig,
    pub read_count: usize,
    pub variants: Vec<VariantReport>,
}

impl EvalReport {
    /// The report with timing fields zeroed, for determinism checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for v in &mut r.variants {
            v.mean_query_us = 0.0;
        }
        r
    }
}

/// Aggregate results of [`evaluate_index`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IndexTally {
    pub true_positive_reads: u64,
    pub empty_reads: u64,
    pub class_counts: ClassCounts,
    pub total_query_us: f64,
}

/// Classify labelled reads against one index. Also returns each read's outcome.
pub fn evaluate_index(ix: &FmIndex, reads: &[SimulatedRead]) -> Result<(IndexTally, Vec<bool>)> {
    let outcomes: Vec<(bool, bool, ClassCounts, f64)> = reads
        .par_iter()
        .map(|r| {
            let t0 = Instant::now();
            let q = query_read(ix, &r.bases)?;
            let micros = t0.elapsed().as_secs_f64() * 1e6;
            Ok(match q {
                None => (false, true, ClassCounts::default(), micros),
                Some(q) => (
                    classify_read(&q.table, r.genome),
                    q.table.is_empty(),
                    ClassCounts::of_table(&q.table, r.genome),
                    micros,
                ),
            })
        })
        .collect::<Result<_>>()?;
    let mut t = IndexTally::default();
    for &(tp, empty, counts, micros) in &outcomes {
        t.true_positive_reads += tp as u64;
        t.empty_reads += empty as u64;
        t.class_counts = t.class_counts.merge(counts);
        t.total_query_us += micros;
    }
    Ok((t, outcomes.into_iter().map(|o| o.0).collect()))
}

/// Build every variant once and classify all simulated reads against it.
/// Errors in one variant are reported in its entry without stopping the rest.
pub fn run_experiment(
    c: &GenomeCollection,
    variants: &[Variant],
    cfg: &ReadSimConfig,
) -> Result<EvalReport> {
    let reads = simulate_reads(c, cfg)?;
    log::info!("simulated {} reads", reads.len());
    let n = reads.len() as u64;
    let reports = variants
        .iter()
        .map(|v| {
            let run = || -> Result<(u64, IndexTally, Vec<bool>)> {
                let ix = v.build_index(c)?;
                let size = serialized_size(&ix) as u64;
                let (tally, outcomes) = evaluate_index(&ix, &reads)?;
                Ok((size, tally, outcomes))
            };
            let mut report = VariantReport {
                variant: v.to_string(),
                params: v.provenance(),
                size_bytes: 0,
                tp_rate: 0.0,
                mean_query_us: 0.0,
                class_counts: ClassCounts::default(),
                reads: n,
                true_positive_reads: 0,
                empty_reads: 0,
                error: None,
                read_outcomes: Vec::new(),
            };
            match run() {
                Ok((size, t, outcomes)) => {
                    report.size_bytes = size;
                    report.true_positive_reads = t.true_positive_reads;
                    report.tp_rate = if n == 0 {
                        0.0
                    } else {
                        t.true_positive_reads as f64 / n as f64
                    };
                    report.mean_query_us = if n == 0 {
                        0.0
                    } else {
                        t.total_query_us / n as f64
                    };
                    report.class_counts = t.class_counts;
                    report.empty_reads = t.empty_reads;
                    report.read_outcomes = outcomes;
                    log::info!(
                        "{v}: {} bytes, tp rate {:.4}",
                        report.size_bytes,
                        report.tp_rate
                    );
                }
                Err(e) => {
                    log::warn!("{v}: {e}");
                    report.error = Some(e.to_string());
                }
            }
            report
        })
        .collect();
    Ok(EvalReport {
        reads: *cfg,
        read_count: reads.len(),
        variants: reports,
    })
}
