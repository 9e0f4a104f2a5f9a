//! Read simulation, MEM-range classification and the size/accuracy/time
//! comparison of index variants.

mod classify;
mod experiment;
mod reads;
mod synth;

pub use classify::{classify_range, classify_read, ClassCounts, RangeClass};
pub use experiment::{
    default_grid, evaluate_index, run_experiment, EvalReport, IndexTally, Variant, VariantReport,
    GRID_K_MAX, GRID_W,
};
pub use reads::{simulate_reads, ReadSimConfig, SimulatedRead};
pub use synth::{synthetic_collection, SynthConfig, SyntheticCollection};
