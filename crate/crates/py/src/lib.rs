//! Python bindings for `katka-core`.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use katka_core::alphabet::{encode_read, FIRST_PAYLOAD};
use katka_core::digest::digest_sequence;
use katka_core::eval::{classify_range as classify, RangeClass, Variant};
use katka_core::{
    build_katka_kernel, format, query_read, DigestParams, Error, FmIndex, GenomeCollection,
    InputFormat, KernelParams, ParseOptions, PhyloTree,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn collection(
    genomes: &[String],
    names: Option<Vec<String>>,
    allow_n: bool,
) -> PyResult<GenomeCollection> {
    if let Some(i) = genomes
        .iter()
        .position(|g| g.trim().is_empty() || g.contains(['\n', '\r']))
    {
        return Err(PyValueError::new_err(format!(
            "genome {i} is empty or contains a line break"
        )));
    }
    let text = genomes.join("\n");
    let c = GenomeCollection::parse(
        text.as_bytes(),
        InputFormat::Lines,
        ParseOptions { allow_n },
    )
    .map_err(py_err)?;
    match names {
        Some(names) => GenomeCollection::new(c.genomes().to_vec(), names).map_err(py_err),
        None => Ok(c),
    }
}

fn hash_params(k: u32, w: u32, a: u64, b: u64, m: u64) -> DigestParams {
    DigestParams { k, w, a, b, m }
}

/// An FM-index over a raw, kernel, digest or digest-kernel text.
#[pyclass(name = "Index", module = "katka", frozen)]
struct PyIndex {
    inner: FmIndex,
}

#[pymethods]
impl PyIndex {
    /// Build from genome strings. `variant` is `raw`, `kernel:K`,
    /// `digest:k:w` or `digest-kernel:k:w:K`.
    #[staticmethod]
    #[pyo3(signature = (genomes, variant="raw", names=None, allow_n=false, hash_a=2544, hash_b=3937, hash_m=8863))]
    #[allow(clippy::too_many_arguments)]
    fn build(
        genomes: Vec<String>,
        variant: &str,
        names: Option<Vec<String>>,
        allow_n: bool,
        hash_a: u64,
        hash_b: u64,
        hash_m: u64,
    ) -> PyResult<Self> {
        let c = collection(&genomes, names, allow_n)?;
        let v = Variant::parse_with(variant, hash_params(3, 10, hash_a, hash_b, hash_m))
            .map_err(py_err)?;
        Ok(Self {
            inner: v.build_index(&c).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: format::load(path).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        Ok(Self {
            inner: format::from_bytes(data).map_err(py_err)?,
        })
    }

    fn save(&self, path: &str) -> PyResult<()> {
        format::save(&self.inner, path).map_err(py_err)
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &format::to_bytes(&self.inner))
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn provenance(&self) -> String {
        self.inner.provenance().label()
    }

    #[getter]
    fn genome_count(&self) -> usize {
        self.inner.genome_count()
    }

    /// Indexed symbols, separators included.
    #[getter]
    fn text_len(&self) -> usize {
        self.inner.text_len()
    }

    /// Serialized size in bytes.
    #[getter]
    fn size_bytes(&self) -> usize {
        format::serialized_size(&self.inner)
    }

    /// The indexed text, rendered as characters.
    fn text(&self) -> String {
        self.inner.alphabet().render(&self.inner.recover_text())
    }

    /// MEM table of a DNA read, as a list of dicts. Digest indexes digest the
    /// read first; `None` if it is too short to yield a single minimizer.
    fn mem_table<'py>(
        &self,
        py: Python<'py>,
        read: &str,
    ) -> PyResult<Option<Vec<Bound<'py, PyDict>>>> {
        let symbols = encode_read(read.as_bytes()).map_err(py_err)?;
        let Some(q) = query_read(&self.inner, &symbols).map_err(py_err)? else {
            return Ok(None);
        };
        let alphabet = self.inner.alphabet();
        q.table
            .records()
            .iter()
            .map(|r| {
                let d = PyDict::new(py);
                d.set_item("read_start", r.read_start)?;
                d.set_item("length", r.length)?;
                d.set_item("mem", alphabet.render(&q.symbols[r.read_start..r.end()]))?;
                let occ = r.occurrences;
                d.set_item("first_pos", occ.map(|o| o.first_pos))?;
                d.set_item("last_pos", occ.map(|o| o.last_pos))?;
                d.set_item("first_genome", occ.map(|o| o.first_genome))?;
                d.set_item("last_genome", occ.map(|o| o.last_genome))?;
                Ok(d)
            })
            .collect::<PyResult<_>>()
            .map(Some)
    }

    /// Genome ranges `(first, last)` of the longest MEMs, `None` for empty
    /// records. Empty list if the read has no MEMs.
    fn longest_ranges(&self, read: &str) -> PyResult<Vec<Option<(usize, usize)>>> {
        let symbols = encode_read(read.as_bytes()).map_err(py_err)?;
        let Some(q) = query_read(&self.inner, &symbols).map_err(py_err)? else {
            return Ok(Vec::new());
        };
        Ok(match q.table.longest_mems() {
            Ok(longest) => longest.iter().map(|r| r.genome_range()).collect(),
            Err(_) => Vec::new(),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.text_len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Index({}, genomes={}, symbols={})",
            self.inner.provenance().label(),
            self.inner.genome_count(),
            self.inner.text_len()
        )
    }
}

/// A rooted tree whose leaves are the genomes, in order.
#[pyclass(name = "Tree", module = "katka", frozen)]
struct PyTree {
    inner: PhyloTree,
}

#[pymethods]
impl PyTree {
    #[new]
    fn new(newick: &str) -> PyResult<Self> {
        Ok(Self {
            inner: PhyloTree::parse_newick(newick).map_err(py_err)?,
        })
    }

    #[getter]
    fn leaf_count(&self) -> usize {
        self.inner.leaf_count()
    }

    fn check_against(&self, names: Vec<String>) -> PyResult<()> {
        self.inner.check_against(&names).map_err(py_err)
    }

    /// Label of the smallest subtree holding genomes `first..=last`.
    fn subtree_for_range(&self, first: usize, last: usize) -> PyResult<String> {
        let v = self.inner.subtree_for_range(first, last).map_err(py_err)?;
        Ok(self.inner.node_label(v))
    }
}

/// KATKA kernel of genome strings, rendered with `#` and `$`.
#[pyfunction]
#[pyo3(signature = (genomes, k_max, allow_n=false))]
fn kernel(genomes: Vec<String>, k_max: u32, allow_n: bool) -> PyResult<String> {
    let c = collection(&genomes, None, allow_n)?;
    let k = build_katka_kernel(&c.separate(), KernelParams { k_max }).map_err(py_err)?;
    Ok(k.text().render())
}

/// Minimizer digest of one DNA sequence, as k-mer values.
#[pyfunction]
#[pyo3(signature = (sequence, k=3, w=10, hash_a=2544, hash_b=3937, hash_m=8863))]
fn digest(
    sequence: &str,
    k: u32,
    w: u32,
    hash_a: u64,
    hash_b: u64,
    hash_m: u64,
) -> PyResult<Vec<u32>> {
    let p = hash_params(k, w, hash_a, hash_b, hash_m);
    p.validate().map_err(py_err)?;
    let s = encode_read(sequence.as_bytes()).map_err(py_err)?;
    let d = digest_sequence(&s, &p).map_err(py_err)?;
    Ok(d.into_iter().map(|x| x - FIRST_PAYLOAD).collect())
}

/// Classify a MEM's genome range against the read's source genome:
/// `true_positive`, `vague_positive`, `false_positive` or `false_negative`.
#[pyfunction]
fn classify_range(range: Option<(usize, usize)>, genome: usize) -> &'static str {
    match classify(range, genome) {
        RangeClass::TruePositive => "true_positive",
        RangeClass::VaguePositive => "vague_positive",
        RangeClass::FalsePositive => "false_positive",
        RangeClass::FalseNegative => "false_negative",
    }
}

#[pymodule]
fn katka(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIndex>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(digest, m)?)?;
    m.add_function(wrap_pyfunction!(classify_range, m)?)?;
    Ok(())
}
