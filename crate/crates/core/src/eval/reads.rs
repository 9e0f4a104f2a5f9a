use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::{base_digit, Symbol, BASE_A};
use crate::collection::GenomeCollection;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReadSimConfig {
    pub read_length: usize,
    /// Per-base probability of substituting a different base.
    pub mutation_rate: f64,
    pub reads_per_genome: usize,
    /// Seed for ChaCha8.
    pub seed: u64,
}

impl Default for ReadSimConfig {
    fn default() -> Self {
        Self {
            read_length: 200,
            mutation_rate: 0.01,
            reads_per_genome: 500,
            seed: 0,
        }
    }
}

impl ReadSimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.read_length == 0 {
            return Err(Error::InvalidParameter(
                "read length must be at least 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::InvalidParameter(format!(
                "mutation rate {} is not in [0, 1]",
                self.mutation_rate
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulatedRead {
    pub genome: usize,
    pub start: usize,
    pub bases: Vec<Symbol>,
}

/// Uniformly placed reads from every genome at least `read_length` long,
/// with independent substitutions. Deterministic for a given seed.
pub fn simulate_reads(c: &GenomeCollection, cfg: &ReadSimConfig) -> Result<Vec<SimulatedRead>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut reads = Vec::with_capacity(c.len() * cfg.reads_per_genome);
    let mut usable = 0;
    for (g, genome) in c.genomes().iter().enumerate() {
        if genome.len() < cfg.read_length {
            log::warn!(
                "skipping genome {} ({} bases, shorter than the {}-base reads)",
                c.names()[g],
                genome.len(),
                cfg.read_length
            );
            continue;
        }
        usable += 1;
        for _ in 0..cfg.reads_per_genome {
            let start = rng.random_range(0..=genome.len() - cfg.read_length);
            let mut bases = genome[start..start + cfg.read_length].to_vec();
            for b in &mut bases {
                if rng.random_bool(cfg.mutation_rate) {
                    if let Some(d) = base_digit(*b) {
                        let shift = rng.random_range(1..4u64);
                        *b = BASE_A + ((d + shift) % 4) as Symbol;
                    }
                }
            }
            reads.push(SimulatedRead {
                genome: g,
                start,
                bases,
            });
        }
    }
    if usable == 0 {
        return Err(Error::GenomesTooShort(cfg.read_length));
    }
    Ok(reads)
}
