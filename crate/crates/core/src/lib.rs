//! Pan-genome read classification with augmented FM-indexes.
//!
//! A genome collection is turned into a `$`-separated text, optionally shrunk
//! into a KATKA kernel, a minimizer digest, or a kernel of a digest, and indexed
//! by an [`FmIndex`]. [`compute_mem_table`] then lists every maximal exact
//! match of a read with the genomes holding its first and last occurrences,
//! which a [`PhyloTree`] turns into a taxonomic classification.

pub mod alphabet;
pub mod collection;
pub mod digest;
pub mod error;
pub mod eval;
pub mod fm_index;
pub mod format;
pub mod kernel;
pub mod mem;
pub mod suffix;
pub mod taxonomy;

pub use alphabet::{Alphabet, Symbol};
pub use collection::{GenomeCollection, InputFormat, ParseOptions, Provenance, SeparatedText};
pub use digest::{digest_collection, Digest, DigestParams};
pub use error::{Error, Result};
pub use fm_index::{FmIndex, Occurrences, SaInterval};
pub use kernel::{build_katka_kernel, Kernel, KernelParams, KernelSize};
pub use mem::{compute_mem_table, query_read, MemRecord, MemTable, ReadQuery};
pub use taxonomy::{NodeId, PhyloTree};
