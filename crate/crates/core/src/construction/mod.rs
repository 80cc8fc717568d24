//! Gadget graphs built from an OV instance.
//!
//! The weighted graph has four layers:
//!
//! | layer | label            | exists when                                  |
//! |-------|------------------|----------------------------------------------|
//! | `T`   | `(a,b,c)`        | `a,b,c` pairwise distinct, ordered           |
//! | `C`   | `(a,b,i,j,k)`    | `a != b`, `a` is 1 on `i,j,k`, `maj(b[i],b[j],b[k]) = 1` |
//! | `P`   | `({a,b},i,j,k)`  | `a` and `b` (possibly equal) are 1 on `i,j,k` |
//! | `I`   | `(p1,p2,i,j,k)`  | always                                       |
//!
//! `I` is a clique, `C` is a union of cliques (one per ordered vector pair),
//! and `T`-`I` edges weigh 3. The unweighted graph drops the heavy edges and
//! adds two copies `Tp`, `Tpp` of `T` joined by perfect matchings, plus a
//! layer `Ip` of single indices forming a clique with `I`.
//!
//! Vertex ids are assigned layer by layer in the order `T, C, P, I, Tp, Tpp,
//! Ip`, lexicographically by `(vector ids, index tuple)` within a layer.

mod build;
mod format;
mod index;
pub mod predicates;
mod summary;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Csr, GraphError};

pub use build::{build, build_unweighted, build_weighted, predict_counts, BuildOptions};
pub use index::LabelIndex;
pub use summary::{count_summary, CountSummary, EdgeClass, Identity};

/// Hard ceiling on `l`: index fields are stored in a byte and vectors as one
/// machine word.
pub const MAX_SUPPORTED_DIM: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("the gadget needs at least 3 vectors, got {0}")]
    TooFewVectors(usize),
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error(
        "predicted size {vertices} vertices / {edges} edges exceeds the edge budget of {budget}"
    )]
    EdgeBudget {
        vertices: u64,
        edges: u64,
        budget: u64,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Weighted,
    Unweighted,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Weighted => "weighted",
            Flavor::Unweighted => "unweighted",
        })
    }
}

impl FromStr for Flavor {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weighted" => Ok(Flavor::Weighted),
            "unweighted" => Ok(Flavor::Unweighted),
            other => Err(format!("unknown flavor {other:?}")),
        }
    }
}

/// Vertex layers, in id order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Layer {
    T,
    C,
    P,
    I,
    Tp,
    Tpp,
    Ip,
}

impl Layer {
    pub const ALL: [Layer; 7] = [
        Layer::T,
        Layer::C,
        Layer::P,
        Layer::I,
        Layer::Tp,
        Layer::Tpp,
        Layer::Ip,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Layer::T => "T",
            Layer::C => "C",
            Layer::P => "P",
            Layer::I => "I",
            Layer::Tp => "Tp",
            Layer::Tpp => "Tpp",
            Layer::Ip => "Ip",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Layer> {
        Layer::ALL.into_iter().find(|l| l.tag() == tag)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Ordered triple of pairwise-distinct vector ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

/// A `C` vertex: ordered vector pair plus index triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Couple {
    pub a: u32,
    pub b: u32,
    pub idx: [u8; 3],
}

/// A `P` vertex: vector multiset `{a, b}` (stored with `a <= b`) plus index
/// triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    a: u32,
    b: u32,
    pub idx: [u8; 3],
}

impl Pair {
    pub fn new(x: u32, y: u32, idx: [u8; 3]) -> Self {
        Pair {
            a: x.min(y),
            b: x.max(y),
            idx,
        }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn contains(&self, v: u32) -> bool {
        self.a == v || self.b == v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexLabel {
    T(Triple),
    Tp(Triple),
    Tpp(Triple),
    C(Couple),
    P(Pair),
    /// `(p1, p2, i, j, k)`
    I([u8; 5]),
    Ip(u8),
}

impl VertexLabel {
    pub fn layer(&self) -> Layer {
        match self {
            VertexLabel::T(_) => Layer::T,
            VertexLabel::Tp(_) => Layer::Tp,
            VertexLabel::Tpp(_) => Layer::Tpp,
            VertexLabel::C(_) => Layer::C,
            VertexLabel::P(_) => Layer::P,
            VertexLabel::I(_) => Layer::I,
            VertexLabel::Ip(_) => Layer::Ip,
        }
    }

    /// The vector tuple, in field order.
    pub fn vector_fields(&self) -> Vec<u32> {
        match *self {
            VertexLabel::T(t) | VertexLabel::Tp(t) | VertexLabel::Tpp(t) => vec![t.a, t.b, t.c],
            VertexLabel::C(c) => vec![c.a, c.b],
            VertexLabel::P(p) => vec![p.a, p.b],
            VertexLabel::I(_) | VertexLabel::Ip(_) => vec![],
        }
    }

    /// The index tuple, in field order.
    pub fn index_fields(&self) -> Vec<u8> {
        match *self {
            VertexLabel::T(_) | VertexLabel::Tp(_) | VertexLabel::Tpp(_) => vec![],
            VertexLabel::C(c) => c.idx.to_vec(),
            VertexLabel::P(p) => p.idx.to_vec(),
            VertexLabel::I(x) => x.to_vec(),
            VertexLabel::Ip(i) => vec![i],
        }
    }

    /// First two vector fields of `T`-like and `C` vertices.
    pub fn leading_pair(&self) -> Option<(u32, u32)> {
        match *self {
            VertexLabel::T(t) | VertexLabel::Tp(t) | VertexLabel::Tpp(t) => Some((t.a, t.b)),
            VertexLabel::C(c) => Some((c.a, c.b)),
            _ => None,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.layer().tag())?;
        for v in self.vector_fields() {
            write!(f, " {v}")?;
        }
        for i in self.index_fields() {
            write!(f, " {i}")?;
        }
        Ok(())
    }
}

/// An immutable labeled gadget graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetGraph {
    flavor: Flavor,
    num_vectors: usize,
    dim: usize,
    labels: Vec<VertexLabel>,
    layers: [Range<u32>; 7],
    csr: Csr,
}

impl GadgetGraph {
    /// Assembles a graph from labels in canonical layer order and an edge
    /// list, checking the structural rules that do not need the instance.
    pub fn from_parts(
        flavor: Flavor,
        labels: Vec<VertexLabel>,
        edges: &[(u32, u32, u8)],
    ) -> Result<Self, ConstructionError> {
        let bad = |msg: String| Err(ConstructionError::Malformed(msg));
        let mut layers: [Range<u32>; 7] = Default::default();
        let mut prev: Option<Layer> = None;
        for (id, label) in labels.iter().enumerate() {
            let layer = label.layer();
            if let Some(p) = prev {
                if layer < p {
                    return bad(format!("vertex {id}: layer {layer} after {p}"));
                }
            }
            if prev != Some(layer) {
                layers[layer.slot()] = id as u32..id as u32;
            }
            layers[layer.slot()].end = id as u32 + 1;
            prev = Some(layer);
            if let Some(w) = labels.get(id + 1) {
                if w.layer() == layer && w <= label {
                    return bad(format!("vertex {}: labels out of order", id + 1));
                }
            }
            match *label {
                VertexLabel::T(t) | VertexLabel::Tp(t) | VertexLabel::Tpp(t)
                    if t.a == t.b || t.b == t.c || t.a == t.c =>
                {
                    return bad(format!("vertex {id}: triple fields must be distinct"));
                }
                VertexLabel::C(c) if c.a == c.b => {
                    return bad(format!("vertex {id}: couple fields must differ"));
                }
                _ => {}
            }
            if flavor == Flavor::Weighted && layer > Layer::I {
                return bad(format!("vertex {id}: layer {layer} in a weighted graph"));
            }
        }
        for &(u, v, w) in edges {
            let allowed = match flavor {
                Flavor::Weighted => w == 1 || w == 3,
                Flavor::Unweighted => w == 1,
            };
            if !allowed {
                return bad(format!(
                    "edge {u}-{v}: weight {w} not allowed in a {flavor} graph"
                ));
            }
        }
        let num_vectors = labels
            .iter()
            .flat_map(|l| l.vector_fields())
            .max()
            .map_or(0, |m| m as usize + 1);
        let dim = labels
            .iter()
            .flat_map(|l| l.index_fields())
            .max()
            .map_or(0, |m| m as usize + 1);
        let csr = Csr::from_edges(labels.len(), edges)?;
        Ok(GadgetGraph {
            flavor,
            num_vectors,
            dim,
            labels,
            layers,
            csr,
        })
    }

    pub(crate) fn assemble(
        flavor: Flavor,
        num_vectors: usize,
        dim: usize,
        labels: Vec<VertexLabel>,
        layers: [Range<u32>; 7],
        csr: Csr,
    ) -> Self {
        GadgetGraph {
            flavor,
            num_vectors,
            dim,
            labels,
            layers,
            csr,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Number of source vectors (inferred from the labels for parsed graphs).
    pub fn num_vectors(&self) -> usize {
        self.num_vectors
    }

    /// Source dimension `l`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.csr.num_edges()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &VertexLabel {
        &self.labels[v as usize]
    }

    pub fn layer_of(&self, v: u32) -> Layer {
        self.labels[v as usize].layer()
    }

    /// Contiguous id range of a layer (empty if absent).
    pub fn layer_range(&self, layer: Layer) -> Range<u32> {
        self.layers[layer.slot()].clone()
    }

    pub fn layer_ids(&self, layer: Layer) -> Vec<u32> {
        self.layer_range(layer).collect()
    }

    pub fn csr(&self) -> &Csr {
        &self.csr
    }

    /// Id of a label, by binary search inside its layer.
    pub fn find(&self, label: &VertexLabel) -> Option<u32> {
        let range = self.layer_range(label.layer());
        let slice = &self.labels[range.start as usize..range.end as usize];
        slice
            .binary_search(label)
            .ok()
            .map(|k| range.start + k as u32)
    }
}

impl AsRef<Csr> for GadgetGraph {
    fn as_ref(&self) -> &Csr {
        &self.csr
    }
}
