use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use katka_core::alphabet::encode_read;
use katka_core::eval::{
    default_grid, run_experiment, simulate_reads, synthetic_collection, ReadSimConfig, SynthConfig,
    Variant,
};
use katka_core::format;
use katka_core::mem::TSV_HEADER;
use katka_core::{
    query_read, Alphabet, DigestParams, Error as CoreError, FmIndex, GenomeCollection, InputFormat,
    ParseOptions, PhyloTree,
};

mod reads;

use reads::{read_records, Record};

const EXIT_VALIDATION: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_FORMAT: u8 = 4;

/// Lossy pan-genome indexes (KATKA kernels, minimizer digests) with MEM-based
/// read classification.
#[derive(Parser)]
#[command(name = "katka", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index over a genome collection.
    Build(BuildArgs),
    /// Write the MEM table of every read as TSV.
    Query(QueryArgs),
    /// Assign every read to the subtree covering its longest MEMs.
    Classify(ClassifyArgs),
    /// Compare index variants on simulated reads and write a JSON report.
    Eval(EvalArgs),
    /// Print an index's header, and optionally its text.
    Dump(DumpArgs),
    /// Generate a seeded synthetic collection and its tree.
    Synth(SynthArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Raw,
    Kernel,
    Digest,
    DigestKernel,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    Fasta,
    Lines,
}

#[derive(Args)]
struct CollectionArgs {
    /// Genome collection: FASTA, or one genome per line.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: Format,
    /// Treat IUPAC ambiguity codes as a never-matching wildcard instead of failing.
    #[arg(long)]
    allow_n: bool,
}

#[derive(Args)]
struct DigestArgs {
    /// Minimizer length.
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Window length, in k-mers.
    #[arg(long, default_value_t = 10)]
    w: u32,
    #[arg(long, default_value_t = 2544)]
    hash_a: u64,
    #[arg(long, default_value_t = 3937)]
    hash_b: u64,
    #[arg(long, default_value_t = 8863)]
    hash_m: u64,
}

impl DigestArgs {
    fn params(&self) -> DigestParams {
        DigestParams {
            k: self.k,
            w: self.w,
            a: self.hash_a,
            b: self.hash_b,
            m: self.hash_m,
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    #[command(flatten)]
    collection: CollectionArgs,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "raw")]
    mode: Mode,
    /// Kernel order, required for the kernel modes.
    #[arg(long)]
    kmax: Option<u32>,
    #[command(flatten)]
    digest: DigestArgs,
    /// Newick tree to check against the collection's genome order.
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    /// Reads: FASTA, or one read per line.
    #[arg(long)]
    reads: PathBuf,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Drop MEMs shorter than this.
    #[arg(long, default_value_t = 1)]
    min_mem: usize,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    reads: PathBuf,
    /// Newick tree with leaves in genome order. Without it only genome ranges are reported.
    #[arg(long)]
    tree: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    min_mem: usize,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value_t = 500)]
    reads_per_genome: usize,
    #[arg(long, default_value_t = 200)]
    read_len: usize,
    #[arg(long, default_value_t = 0.01)]
    mut_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SimArgs {
    fn config(&self) -> ReadSimConfig {
        ReadSimConfig {
            read_length: self.read_len,
            mutation_rate: self.mut_rate,
            reads_per_genome: self.reads_per_genome,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    collection: CollectionArgs,
    /// Variant to evaluate: raw, kernel:K, digest:k:w or digest-kernel:k:w:K.
    /// Repeatable; defaults to the full parameter grid.
    #[arg(long = "variant")]
    variants: Vec<String>,
    #[command(flatten)]
    sim: SimArgs,
    #[command(flatten)]
    digest: DigestArgs,
    /// JSON report; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write one TSV row per read and variant.
    #[arg(long)]
    per_read: Option<PathBuf>,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    index: PathBuf,
    /// Also print the indexed text.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct SynthArgs {
    /// FASTA output.
    #[arg(short, long)]
    output: PathBuf,
    /// Newick output.
    #[arg(long)]
    newick: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    genomes: usize,
    #[arg(long, default_value_t = 10_000)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => build(a),
        Command::Query(a) => query(a),
        Command::Classify(a) => classify(a),
        Command::Eval(a) => eval(a),
        Command::Dump(a) => dump(a),
        Command::Synth(a) => synth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<CoreError>() {
            return match core {
                CoreError::Io(_) => EXIT_IO,
                CoreError::BadMagic
                | CoreError::UnsupportedVersion(_)
                | CoreError::Truncated
                | CoreError::ChecksumMismatch { .. }
                | CoreError::Corrupt(_) => EXIT_FORMAT,
                _ => EXIT_VALIDATION,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return EXIT_IO;
        }
    }
    EXIT_VALIDATION
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path)
        .map_err(CoreError::Io)
        .with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path)
        .map_err(CoreError::Io)
        .with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn detect_format(path: &Path, format: Format) -> Result<InputFormat> {
    Ok(match format {
        Format::Fasta => InputFormat::Fasta,
        Format::Lines => InputFormat::Lines,
        Format::Auto => {
            let mut r = open(path)?;
            let mut buf = Vec::new();
            loop {
                buf.clear();
                if r.read_until(b'\n', &mut buf).map_err(CoreError::Io)? == 0 {
                    break InputFormat::Lines;
                }
                if let Some(&b) = buf.iter().find(|b| !b.is_ascii_whitespace()) {
                    break if b == b'>' {
                        InputFormat::Fasta
                    } else {
                        InputFormat::Lines
                    };
                }
            }
        }
    })
}

fn load_collection(a: &CollectionArgs) -> Result<GenomeCollection> {
    let format = detect_format(&a.input, a.format)?;
    let opts = ParseOptions { allow_n: a.allow_n };
    GenomeCollection::parse(open(&a.input)?, format, opts)
        .with_context(|| format!("reading {}", a.input.display()))
}

fn load_tree(path: &Path) -> Result<PhyloTree> {
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .map_err(CoreError::Io)?;
    PhyloTree::parse_newick(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_index(path: &Path) -> Result<FmIndex> {
    format::load(path).with_context(|| format!("loading index {}", path.display()))
}

fn build(a: BuildArgs) -> Result<()> {
    let c = load_collection(&a.collection)?;
    if let Some(tree) = &a.tree {
        load_tree(tree)?.check_against(c.names())?;
    }
    let digest = a.digest.params();
    let need_kmax = || {
        a.kmax
            .ok_or_else(|| CoreError::InvalidParameter("--kmax is required for this mode".into()))
    };
    let variant = match a.mode {
        Mode::Raw => Variant::Raw,
        Mode::Kernel => Variant::Kernel {
            k_max: need_kmax()?,
        },
        Mode::Digest => Variant::Digest { digest },
        Mode::DigestKernel => Variant::DigestKernel {
            digest,
            k_max: need_kmax()?,
        },
    };
    let ix = variant.build_index(&c)?;
    let bytes = format::to_bytes(&ix);
    let mut out = create(&a.output)?;
    out.write_all(&bytes).map_err(CoreError::Io)?;
    out.flush().map_err(CoreError::Io)?;
    println!(
        "{}: {} genomes, {} input symbols, {} indexed symbols ({} excluding separators), {} bytes",
        ix.provenance().label(),
        c.len(),
        c.total_len() - c.len(),
        ix.text_len(),
        ix.text_len() - ix.genome_count(),
        bytes.len()
    );
    Ok(())
}

fn query(a: QueryArgs) -> Result<()> {
    let ix = load_index(&a.index)?;
    let records = read_records(open(&a.reads)?)?;
    let mut out = output(a.output.as_deref())?;
    writeln!(out, "{TSV_HEADER}").map_err(CoreError::Io)?;
    for Record { id, seq } in records {
        let read = encode_read(&seq).with_context(|| format!("read {id}"))?;
        match query_read(&ix, &read).with_context(|| format!("read {id}"))? {
            None => log::warn!("read {id} is too short to digest"),
            Some(mut q) => {
                q.table.retain_min_length(a.min_mem);
                q.table
                    .write_tsv(&mut out, &id, &q.symbols, ix.alphabet())
                    .map_err(CoreError::Io)?;
            }
        }
    }
    out.flush().map_err(CoreError::Io)?;
    Ok(())
}

fn classify(a: ClassifyArgs) -> Result<()> {
    let ix = load_index(&a.index)?;
    let tree = match &a.tree {
        Some(p) => {
            let t = load_tree(p)?;
            t.check_against(ix.names())?;
            Some(t)
        }
        None => None,
    };
    let records = read_records(open(&a.reads)?)?;
    let mut out = output(a.output.as_deref())?;
    writeln!(out, "read_id\tlongest_mem\tgenome_ranges\tnodes").map_err(CoreError::Io)?;
    for Record { id, seq } in records {
        let read = encode_read(&seq).with_context(|| format!("read {id}"))?;
        let table = query_read(&ix, &read)
            .with_context(|| format!("read {id}"))?
            .map(|mut q| {
                q.table.retain_min_length(a.min_mem);
                q.table
            });
        let longest = table.as_ref().and_then(|t| t.longest_mems().ok());
        let Some(longest) = longest else {
            writeln!(out, "{id}\t0\t-\t-").map_err(CoreError::Io)?;
            continue;
        };
        let mut ranges = Vec::new();
        let mut nodes = Vec::new();
        for r in &longest {
            match r.genome_range() {
                None => {
                    ranges.push("-".to_string());
                    nodes.push("-".to_string());
                }
                Some((first, last)) => {
                    ranges.push(format!("{first}-{last}"));
                    nodes.push(match &tree {
                        Some(t) => t.node_label(t.subtree_for_range(first, last)?),
                        None => "-".into(),
                    });
                }
            }
        }
        writeln!(
            out,
            "{id}\t{}\t{}\t{}",
            longest[0].length,
            ranges.join(","),
            nodes.join(",")
        )
        .map_err(CoreError::Io)?;
    }
    out.flush().map_err(CoreError::Io)?;
    Ok(())
}

fn eval(a: EvalArgs) -> Result<()> {
    let c = load_collection(&a.collection)?;
    let hash = a.digest.params();
    let variants = if a.variants.is_empty() {
        default_grid(hash)
    } else {
        a.variants
            .iter()
            .map(|v| Variant::parse_with(v, hash))
            .collect::<katka_core::Result<Vec<_>>>()?
    };
    let cfg = a.sim.config();
    let report = run_experiment(&c, &variants, &cfg)?;
    let mut out = output(a.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out).map_err(CoreError::Io)?;
    out.flush().map_err(CoreError::Io)?;

    if let Some(path) = &a.per_read {
        let reads = simulate_reads(&c, &cfg)?;
        let mut w = create(path)?;
        writeln!(w, "read\tgenome\tstart\tvariant\ttrue_positive").map_err(CoreError::Io)?;
        for v in &report.variants {
            for (i, (r, tp)) in reads.iter().zip(&v.read_outcomes).enumerate() {
                writeln!(
                    w,
                    "{i}\t{}\t{}\t{}\t{}",
                    r.genome, r.start, v.variant, *tp as u8
                )
                .map_err(CoreError::Io)?;
            }
        }
        w.flush().map_err(CoreError::Io)?;
    }
    Ok(())
}

fn dump(a: DumpArgs) -> Result<()> {
    let ix = load_index(&a.index)?;
    let out = io::stdout();
    let mut out = out.lock();
    let write = |out: &mut io::StdoutLock, s: String| writeln!(out, "{s}").map_err(CoreError::Io);
    write(
        &mut out,
        format!("format\tKTK2 v{}", format::FORMAT_VERSION),
    )?;
    write(&mut out, format!("provenance\t{}", ix.provenance().label()))?;
    write(&mut out, format!("genomes\t{}", ix.genome_count()))?;
    write(&mut out, format!("text_length\t{}", ix.text_len()))?;
    write(
        &mut out,
        format!("size_bytes\t{}", format::serialized_size(&ix)),
    )?;
    write(&mut out, format!("names\t{}", ix.names().join(",")))?;
    if a.text {
        write(&mut out, ix.alphabet().render(&ix.recover_text()))?;
    }
    Ok(())
}

fn synth(a: SynthArgs) -> Result<()> {
    let cfg = SynthConfig {
        genomes: a.genomes,
        genome_length: a.length,
        seed: a.seed,
        ..Default::default()
    };
    let s = synthetic_collection(&cfg)?;
    let mut out = create(&a.output)?;
    for (name, g) in s.collection.names().iter().zip(s.collection.genomes()) {
        writeln!(out, ">{name}").map_err(CoreError::Io)?;
        for chunk in g.chunks(80) {
            writeln!(out, "{}", Alphabet::Dna.render(chunk)).map_err(CoreError::Io)?;
        }
    }
    out.flush().map_err(CoreError::Io)?;
    if let Some(path) = &a.newick {
        let mut w = create(path)?;
        writeln!(w, "{}", s.newick).map_err(CoreError::Io)?;
        w.flush().map_err(CoreError::Io)?;
    }
    Ok(())
}
