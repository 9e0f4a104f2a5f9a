//! Phylogenetic trees in Newick format, with LCA queries that map a
//! `[first, last]` genome range to the smallest subtree covering it.
//!
//! Leaves, read left to right, must be the genomes in collection order.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::suffix::{Extreme, Rmq};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub label: Option<String>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub branch_length: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    root: NodeId,
    /// Leaf node of each genome, in left-to-right order.
    leaves: Vec<NodeId>,
    euler: Vec<NodeId>,
    depths: Vec<u32>,
    first_visit: Vec<usize>,
    /// Leftmost and rightmost genome under each node.
    spans: Vec<(usize, usize)>,
    rmq: Rmq,
}

impl PhyloTree {
    pub fn parse_newick(text: &str) -> Result<Self> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            nodes: Vec::new(),
        };
        p.skip_space()?;
        let root = p.subtree(None)?;
        p.skip_space()?;
        if !p.eat(b';') {
            return Err(p.error("expected ';' after the tree"));
        }
        p.skip_space()?;
        if p.pos != p.src.len() {
            return Err(p.error("trailing input after ';'"));
        }
        Self::from_nodes(p.nodes, root)
    }

    fn from_nodes(nodes: Vec<Node>, root: NodeId) -> Result<Self> {
        let n = nodes.len();
        let mut leaves = Vec::new();
        let mut euler = Vec::with_capacity(2 * n);
        let mut depths = Vec::with_capacity(2 * n);
        let mut first_visit = vec![0; n];
        let mut enter = |v: NodeId, d: u32, euler: &mut Vec<NodeId>, depths: &mut Vec<u32>| {
            first_visit[v] = euler.len();
            euler.push(v);
            depths.push(d);
            if nodes[v].children.is_empty() {
                leaves.push(v);
            }
        };
        enter(root, 0, &mut euler, &mut depths);
        // (node, next child index)
        let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
        while let Some((v, next)) = stack.last_mut() {
            let v = *v;
            if let Some(&c) = nodes[v].children.get(*next) {
                *next += 1;
                enter(c, stack.len() as u32, &mut euler, &mut depths);
                stack.push((c, 0));
            } else {
                stack.pop();
                if let Some(&(parent, _)) = stack.last() {
                    euler.push(parent);
                    depths.push(stack.len() as u32 - 1);
                }
            }
        }
        // parents are numbered before their children
        let mut spans = vec![(usize::MAX, 0); n];
        for (g, &leaf) in leaves.iter().enumerate() {
            spans[leaf] = (g, g);
        }
        for v in (0..n).rev() {
            if let Some(p) = nodes[v].parent {
                let (lo, hi) = spans[v];
                spans[p] = (spans[p].0.min(lo), spans[p].1.max(hi));
            }
        }

        let mut seen = HashSet::new();
        for &leaf in &leaves {
            if let Some(label) = &nodes[leaf].label {
                if !seen.insert(label.as_str()) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
        }
        let rmq = Rmq::new(&depths, Extreme::Min);
        Ok(Self {
            nodes,
            root,
            leaves,
            euler,
            depths,
            first_visit,
            spans,
            rmq,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Leaf node of genome `g`.
    pub fn leaf(&self, g: usize) -> Result<NodeId> {
        self.leaves.get(g).copied().ok_or(Error::GenomeOutOfRange {
            genome: g,
            leaves: self.leaves.len(),
        })
    }

    pub fn leaf_labels(&self) -> Vec<Option<&str>> {
        self.leaves
            .iter()
            .map(|&v| self.nodes[v].label.as_deref())
            .collect()
    }

    /// Check that the leaves are exactly `names`, in order. Unlabelled leaves
    /// match positionally.
    pub fn check_against<S: AsRef<str>>(&self, names: &[S]) -> Result<()> {
        if self.leaves.len() != names.len() {
            return Err(Error::LeafCount {
                leaves: self.leaves.len(),
                genomes: names.len(),
            });
        }
        for (position, (label, name)) in self.leaf_labels().into_iter().zip(names).enumerate() {
            if let Some(label) = label {
                if label != name.as_ref() {
                    return Err(Error::LeafOrder {
                        position,
                        found: label.to_string(),
                        expected: name.as_ref().to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn depth(&self, v: NodeId) -> u32 {
        self.depths[self.first_visit[v]]
    }

    /// Genomes `[first, last]` under `v`.
    pub fn leaf_span(&self, v: NodeId) -> (usize, usize) {
        self.spans[v]
    }

    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let (i, j) = (self.first_visit[a], self.first_visit[b]);
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let m = self
            .rmq
            .query(&self.depths, lo, hi)
            .expect("lo <= hi within the tour");
        self.euler[m]
    }

    /// Smallest subtree holding every genome in `[first, last]`.
    pub fn subtree_for_range(&self, first: usize, last: usize) -> Result<NodeId> {
        if first > last {
            return Err(Error::EmptyRange {
                lo: first,
                hi: last,
            });
        }
        Ok(self.lca(self.leaf(first)?, self.leaf(last)?))
    }

    /// The node's label, or `node<id>` if it has none.
    pub fn node_label(&self, v: NodeId) -> String {
        match &self.nodes[v].label {
            Some(l) => l.clone(),
            None => format!("node{v}"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::Newick {
            offset: self.pos,
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Skip whitespace and `[...]` comments.
    fn skip_space(&mut self) -> Result<()> {
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_whitespace() => self.pos += 1,
                Some(b'[') => {
                    let close = self.src[self.pos..]
                        .iter()
                        .position(|&b| b == b']')
                        .ok_or_else(|| self.error("unterminated comment"))?;
                    self.pos += close + 1;
                }
                _ => return Ok(()),
            }
        }
    }

    fn subtree(&mut self, parent: Option<NodeId>) -> Result<NodeId> {
        let id = self.nodes.len();
        self.nodes.push(Node {
            label: None,
            parent,
            children: Vec::new(),
            branch_length: None,
        });
        if self.eat(b'(') {
            loop {
                self.skip_space()?;
                let child = self.subtree(Some(id))?;
                self.nodes[id].children.push(child);
                self.skip_space()?;
                if self.eat(b',') {
                    continue;
                }
                if self.eat(b')') {
                    break;
                }
                return Err(self.error("expected ',' or ')'"));
            }
            self.skip_space()?;
        }
        let label = self.label()?;
        let is_leaf = self.nodes[id].children.is_empty();
        if is_leaf && label.is_none() {
            return Err(self.error("leaf without a label"));
        }
        self.nodes[id].label = label;
        self.skip_space()?;
        if self.eat(b':') {
            self.skip_space()?;
            let start = self.pos;
            while matches!(self.peek(), Some(b) if b.is_ascii_digit() || b"+-.eE".contains(&b)) {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let len = text
                .parse::<f64>()
                .map_err(|_| self.error("invalid branch length"))?;
            self.nodes[id].branch_length = Some(len);
        }
        Ok(id)
    }

    fn label(&mut self) -> Result<Option<String>> {
        if self.eat(b'\'') {
            let mut out = Vec::new();
            loop {
                match self.peek() {
                    None => return Err(self.error("unterminated quoted label")),
                    Some(b'\'') => {
                        self.pos += 1;
                        if self.eat(b'\'') {
                            out.push(b'\'');
                        } else {
                            break;
                        }
                    }
                    Some(b) => {
                        out.push(b);
                        self.pos += 1;
                    }
                }
            }
            return String::from_utf8(out)
                .map(Some)
                .map_err(|_| self.error("label is not UTF-8"));
        }
        let start = self.pos;
        while matches!(self.peek(), Some(b) if !b.is_ascii_whitespace() && !b"()[]',;:".contains(&b))
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        let raw = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.error("label is not UTF-8"))?;
        Ok(Some(raw.replace('_', " ")))
    }
}
