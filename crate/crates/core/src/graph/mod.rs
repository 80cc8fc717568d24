//! Shortest paths and diameters on undirected graphs with small positive
//! integer weights.

mod diameter;
mod sssp;

use thiserror::Error;

pub use diameter::{
    all_eccentricities, approx2_diameter, eccentricity, exact_diameter, Approx2, Diameter,
};
pub use sssp::{bfs, bucket_queue, distance, multi_source_distances, shortest_paths_from};

/// Largest edge weight the bucket queue accepts.
pub const MAX_WEIGHT: u8 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    InvalidVertex(u32),
    #[error("graph is disconnected: {to} is unreachable from {from}")]
    Disconnected { from: u32, to: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(u32, u32),
    #[error("edge weight {0} outside 1..={MAX_WEIGHT}")]
    Weight(u8),
    #[error("breadth-first search needs unit weights")]
    NonUnitWeights,
    #[error("graph has no vertices")]
    Empty,
}

/// Undirected graph in compressed sparse row form. Every edge is stored in
/// both endpoint rows, and rows are sorted by neighbor id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<u8>,
    max_weight: u8,
}

impl Csr {
    pub fn from_edges(num_vertices: usize, edges: &[(u32, u32, u8)]) -> Result<Self, GraphError> {
        let mut degree = vec![0usize; num_vertices + 1];
        let mut max_weight = 1;
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x as usize >= num_vertices {
                    return Err(GraphError::InvalidVertex(x));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if w == 0 || w > MAX_WEIGHT {
                return Err(GraphError::Weight(w));
            }
            max_weight = max_weight.max(w);
            degree[u as usize + 1] += 1;
            degree[v as usize + 1] += 1;
        }
        for i in 1..degree.len() {
            degree[i] += degree[i - 1];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut arcs = vec![(0u32, 0u8); 2 * edges.len()];
        for &(u, v, w) in edges {
            arcs[fill[u as usize]] = (v, w);
            fill[u as usize] += 1;
            arcs[fill[v as usize]] = (u, w);
            fill[v as usize] += 1;
        }
        for v in 0..num_vertices {
            let row = &mut arcs[offsets[v]..offsets[v + 1]];
            row.sort_unstable_by_key(|&(t, _)| t);
            if let Some(pair) = row.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(GraphError::ParallelEdge(v as u32, pair[0].0));
            }
        }
        let (targets, weights) = arcs.into_iter().unzip();
        Ok(Csr {
            offsets,
            targets,
            weights,
            max_weight,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn max_weight(&self) -> u8 {
        self.max_weight
    }

    pub fn is_unit_weight(&self) -> bool {
        self.max_weight == 1
    }

    #[inline]
    pub fn targets(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    pub fn weights(&self, v: u32) -> &[u8] {
        &self.weights[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.targets(v)
            .iter()
            .copied()
            .zip(self.weights(v).iter().copied())
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn edge_weight(&self, u: u32, v: u32) -> Option<u8> {
        let row = self.targets(u);
        row.binary_search(&v).ok().map(|k| self.weights(u)[k])
    }

    /// Every edge once, as `(u, v, w)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u8)> + '_ {
        (0..self.num_vertices() as u32).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, w)| (u, v, w))
        })
    }

    pub(crate) fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.num_vertices() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }
}

pub(crate) const UNREACHABLE: u32 = u32::MAX;

/// Exact distances from one source (or a set of sources).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceVector {
    source: u32,
    dist: Vec<u32>,
}

impl DistanceVector {
    pub(crate) fn new(source: u32, dist: Vec<u32>) -> Self {
        DistanceVector { source, dist }
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// `None` when `v` is unreachable.
    #[inline]
    pub fn get(&self, v: u32) -> Option<u32> {
        let d = self.dist[v as usize];
        (d != UNREACHABLE).then_some(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        self.dist.iter().map(|&d| (d != UNREACHABLE).then_some(d))
    }

    /// Largest distance, or the first unreachable vertex.
    pub fn max_or_unreachable(&self) -> Result<u32, u32> {
        let mut best = 0;
        for (v, &d) in self.dist.iter().enumerate() {
            if d == UNREACHABLE {
                return Err(v as u32);
            }
            best = best.max(d);
        }
        Ok(best)
    }
}
