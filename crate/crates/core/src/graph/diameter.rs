use rayon::prelude::*;
use serde::Serialize;

use super::{shortest_paths_from, Csr, GraphError};

/// `max_u d(v, u)`; fails if some vertex is unreachable from `v`.
pub fn eccentricity(graph: &Csr, v: u32) -> Result<u32, GraphError> {
    shortest_paths_from(graph, v)?
        .max_or_unreachable()
        .map_err(|to| GraphError::Disconnected { from: v, to })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diameter {
    pub value: u32,
    /// Lexicographically smallest pair `(u, v)` with `d(u, v) = value`.
    pub witness: (u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Approx2 {
    pub start: u32,
    pub estimate: u32,
    /// The true diameter lies in `[lower, upper] = [estimate, 2 * estimate]`.
    pub lower: u32,
    pub upper: u32,
}

/// One shortest-path tree from `start` (vertex 0 if `None`).
pub fn approx2_diameter(graph: &Csr, start: Option<u32>) -> Result<Approx2, GraphError> {
    if graph.num_vertices() == 0 {
        return Err(GraphError::Empty);
    }
    let start = start.unwrap_or(0);
    let estimate = eccentricity(graph, start)?;
    Ok(Approx2 {
        start,
        estimate,
        lower: estimate,
        upper: 2 * estimate,
    })
}

/// Exact diameter from the eccentricities of all vertices.
pub fn exact_diameter(graph: &Csr) -> Result<Diameter, GraphError> {
    let ecc = all_eccentricities(graph)?;
    let value = *ecc.iter().max().ok_or(GraphError::Empty)?;
    let u = ecc.iter().position(|&e| e == value).unwrap() as u32;
    let dist = shortest_paths_from(graph, u)?;
    let v = (0..graph.num_vertices() as u32)
        .find(|&v| dist.get(v) == Some(value))
        .expect("eccentricity is attained");
    Ok(Diameter {
        value,
        witness: (u, v),
    })
}

const LANES: usize = 4;
const BATCH: usize = 64 * LANES;
type Lane = [u64; LANES];

/// Eccentricity of every vertex.
///
/// Sources are processed in batches of 256 with one bit per source. Each
/// round computes, for every vertex, the set of batch sources first reaching
/// it at the current distance `d`, from the frontiers at `d - w` of its
/// neighbors. Batches are independent and run on the rayon pool.
pub fn all_eccentricities(graph: &Csr) -> Result<Vec<u32>, GraphError> {
    let n = graph.num_vertices();
    let batches: Vec<usize> = (0..n).step_by(BATCH).collect();
    let per_batch: Vec<Vec<u32>> = batches
        .par_iter()
        .map(|&first| sweep(graph, first, BATCH.min(n - first)))
        .collect::<Result<_, _>>()?;
    Ok(per_batch.concat())
}

#[inline]
fn or_into(acc: &mut Lane, x: &Lane) {
    for k in 0..LANES {
        acc[k] |= x[k];
    }
}

fn sweep(graph: &Csr, first: usize, count: usize) -> Result<Vec<u32>, GraphError> {
    let n = graph.num_vertices();
    let ring_len = graph.max_weight() as usize;
    let mut full: Lane = [0; LANES];
    for s in 0..count {
        full[s / 64] |= 1 << (s % 64);
    }
    let mut seen: Vec<Lane> = vec![[0; LANES]; n];
    // ring[t % ring_len] holds the sources first reaching each vertex at distance t.
    let mut ring: Vec<Vec<Lane>> = vec![vec![[0; LANES]; n]; ring_len];
    let mut next: Vec<Lane> = vec![[0; LANES]; n];
    for s in 0..count {
        seen[first + s][s / 64] |= 1 << (s % 64);
        ring[0][first + s][s / 64] |= 1 << (s % 64);
    }
    let mut ecc = vec![0u32; count];
    let mut done: Vec<bool> = seen.iter().map(|l| *l == full).collect();
    let mut quiet_rounds = 0;
    let mut d = 0usize;
    while quiet_rounds < ring_len {
        d += 1;
        let mut reached: Lane = [0; LANES];
        for v in 0..n {
            if done[v] {
                next[v] = [0; LANES];
                continue;
            }
            let sv = seen[v];
            let mut acc: Lane = [0; LANES];
            let targets = graph.targets(v as u32);
            let weights = graph.weights(v as u32);
            for (&u, &w) in targets.iter().zip(weights) {
                if (w as usize) <= d {
                    or_into(&mut acc, &ring[(d - w as usize) % ring_len][u as usize]);
                }
            }
            let mut fresh: Lane = [0; LANES];
            for k in 0..LANES {
                fresh[k] = acc[k] & !sv[k];
            }
            or_into(&mut reached, &fresh);
            next[v] = fresh;
        }
        for v in 0..n {
            if !done[v] {
                or_into(&mut seen[v], &next[v]);
                done[v] = seen[v] == full;
            }
        }
        std::mem::swap(&mut ring[d % ring_len], &mut next);
        if reached == [0; LANES] {
            quiet_rounds += 1;
        } else {
            quiet_rounds = 0;
            for (s, e) in ecc.iter_mut().enumerate() {
                if reached[s / 64] >> (s % 64) & 1 == 1 {
                    *e = d as u32;
                }
            }
        }
    }
    if let Some(v) = (0..n).find(|&v| seen[v] != full) {
        let s = (0..count)
            .find(|&s| seen[v][s / 64] >> (s % 64) & 1 == 0)
            .unwrap();
        return Err(GraphError::Disconnected {
            from: (first + s) as u32,
            to: v as u32,
        });
    }
    Ok(ecc)
}
