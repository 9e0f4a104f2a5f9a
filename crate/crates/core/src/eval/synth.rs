//! Seeded synthetic pan-genomes: genomes evolved down a balanced binary tree
//! from one random ancestor, with periodic blocks that never mutate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::{Symbol, BASE_A};
use crate::collection::GenomeCollection;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SynthConfig {
    pub genomes: usize,
    pub genome_length: usize,
    /// Length of each conserved block.
    pub conserved_length: usize,
    /// A conserved block starts every `conserved_period` bases.
    pub conserved_period: usize,
    /// Substitution rate along each internal edge.
    pub internal_rate: f64,
    /// Substitution rate along each edge into a leaf.
    pub leaf_rate: f64,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            genomes: 50,
            genome_length: 10_000,
            conserved_length: 250,
            conserved_period: 5_000,
            internal_rate: 0.01,
            leaf_rate: 0.04,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticCollection {
    pub collection: GenomeCollection,
    /// The generating tree, leaves in genome order.
    pub newick: String,
}

pub fn synthetic_collection(cfg: &SynthConfig) -> Result<SyntheticCollection> {
    if cfg.genomes == 0 || cfg.genome_length == 0 {
        return Err(Error::InvalidParameter(
            "need at least one genome of at least one base".into(),
        ));
    }
    if cfg.conserved_period == 0 {
        return Err(Error::InvalidParameter(
            "conserved period must be positive".into(),
        ));
    }
    for rate in [cfg.internal_rate, cfg.leaf_rate] {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::InvalidParameter(format!(
                "rate {rate} is not in [0, 1]"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let root: Vec<Symbol> = (0..cfg.genome_length)
        .map(|_| BASE_A + rng.random_range(0..4))
        .collect();
    let mutable: Vec<bool> = (0..cfg.genome_length)
        .map(|i| i % cfg.conserved_period >= cfg.conserved_length)
        .collect();
    let mut genomes = Vec::with_capacity(cfg.genomes);
    let mut newick = String::new();
    descend(
        &root,
        0,
        cfg.genomes,
        cfg,
        &mutable,
        &mut rng,
        &mut genomes,
        &mut newick,
    );
    newick.push(';');
    let names = (0..cfg.genomes).map(|g| format!("g{g}")).collect();
    Ok(SyntheticCollection {
        collection: GenomeCollection::new(genomes, names)?,
        newick,
    })
}

#[allow(clippy::too_many_arguments)]
fn descend(
    seq: &[Symbol],
    lo: usize,
    hi: usize,
    cfg: &SynthConfig,
    mutable: &[bool],
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<Symbol>>,
    newick: &mut String,
) {
    if hi - lo == 1 {
        out.push(mutate(seq, cfg.leaf_rate, mutable, rng));
        newick.push_str(&format!("g{lo}"));
        return;
    }
    let mid = lo + (hi - lo) / 2;
    newick.push('(');
    let left = mutate(seq, cfg.internal_rate, mutable, rng);
    descend(&left, lo, mid, cfg, mutable, rng, out, newick);
    newick.push(',');
    let right = mutate(seq, cfg.internal_rate, mutable, rng);
    descend(&right, mid, hi, cfg, mutable, rng, out, newick);
    newick.push(')');
}

fn mutate(seq: &[Symbol], rate: f64, mutable: &[bool], rng: &mut ChaCha8Rng) -> Vec<Symbol> {
    seq.iter()
        .zip(mutable)
        .map(|(&s, &m)| {
            if m && rng.random_bool(rate) {
                BASE_A + (s - BASE_A + rng.random_range(1..4)) % 4
            } else {
                s
            }
        })
        .collect()
}
