use std::collections::VecDeque;

use super::{Csr, DistanceVector, GraphError, UNREACHABLE};

/// Breadth-first search from `sources`; the graph must have unit weights.
pub fn bfs(graph: &Csr, sources: &[u32]) -> Result<Vec<u32>, GraphError> {
    if !graph.is_unit_weight() {
        return Err(GraphError::NonUnitWeights);
    }
    let mut dist = vec![UNREACHABLE; graph.num_vertices()];
    let mut queue = VecDeque::new();
    for &s in sources {
        graph.check_vertex(s)?;
        if dist[s as usize] != 0 {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = dist[u as usize] + 1;
        for &v in graph.targets(u) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = next;
                queue.push_back(v);
            }
        }
    }
    Ok(dist)
}

/// Label-setting search with a rotating bucket queue of `max_weight + 1`
/// slots. Pending labels never exceed the current distance by more than
/// `max_weight`, so slot `d mod (max_weight + 1)` holds exactly the labels
/// equal to `d` when it is drained.
pub fn bucket_queue(graph: &Csr, sources: &[u32]) -> Result<Vec<u32>, GraphError> {
    let slots = graph.max_weight() as usize + 1;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); slots];
    let mut dist = vec![UNREACHABLE; graph.num_vertices()];
    let mut pending = 0usize;
    for &s in sources {
        graph.check_vertex(s)?;
        if dist[s as usize] != 0 {
            dist[s as usize] = 0;
            buckets[0].push(s);
            pending += 1;
        }
    }
    let mut current = 0u32;
    while pending > 0 {
        let slot = current as usize % slots;
        let batch = std::mem::take(&mut buckets[slot]);
        pending -= batch.len();
        for u in batch.iter().copied() {
            if dist[u as usize] != current {
                continue;
            }
            for (v, w) in graph.neighbors(u) {
                let candidate = current + w as u32;
                if candidate < dist[v as usize] {
                    dist[v as usize] = candidate;
                    buckets[candidate as usize % slots].push(v);
                    pending += 1;
                }
            }
        }
        // Reuse the allocation of the drained slot.
        let mut batch = batch;
        batch.clear();
        if buckets[slot].is_empty() {
            buckets[slot] = batch;
        }
        current += 1;
    }
    Ok(dist)
}

/// Exact distances from every vertex of `sources` (distance to the nearest).
pub fn multi_source_distances(graph: &Csr, sources: &[u32]) -> Result<Vec<u32>, GraphError> {
    if graph.is_unit_weight() {
        bfs(graph, sources)
    } else {
        bucket_queue(graph, sources)
    }
}

pub fn shortest_paths_from(graph: &Csr, source: u32) -> Result<DistanceVector, GraphError> {
    Ok(DistanceVector::new(
        source,
        multi_source_distances(graph, &[source])?,
    ))
}

/// `d(u, v)`, or `None` when `v` is unreachable from `u`.
pub fn distance(graph: &Csr, u: u32, v: u32) -> Result<Option<u32>, GraphError> {
    graph.check_vertex(v)?;
    Ok(shortest_paths_from(graph, u)?.get(v))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{clique, path};
    use super::*;

    #[test]
    fn path_distances() {
        let d = shortest_paths_from(&path(3), 0).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), [Some(0), Some(1), Some(2)]);
        assert_eq!(d.source(), 0);
    }

    #[test]
    fn heavy_edge() {
        let g = Csr::from_edges(2, &[(0, 1, 3)]).unwrap();
        let d = shortest_paths_from(&g, 0).unwrap();
        assert_eq!(d.iter().collect::<Vec<_>>(), [Some(0), Some(3)]);
    }

    #[test]
    fn disconnected_pair() {
        let g = Csr::from_edges(2, &[]).unwrap();
        let d = shortest_paths_from(&g, 0).unwrap();
        assert_eq!(d.get(1), None);
        assert_eq!(d.max_or_unreachable(), Err(1));
    }

    #[test]
    fn distance_basics() {
        let tri = clique(3);
        for u in 0..3 {
            assert_eq!(distance(&tri, u, u).unwrap(), Some(0));
            for v in 0..3 {
                if u != v {
                    assert_eq!(distance(&tri, u, v).unwrap(), Some(1));
                }
            }
        }
        assert_eq!(distance(&tri, 0, 7), Err(GraphError::InvalidVertex(7)));
        assert_eq!(distance(&tri, 9, 0), Err(GraphError::InvalidVertex(9)));
    }

    #[test]
    fn heavy_shortcut_is_not_taken() {
        // 0 -3- 1, 0 -1- 2 -1- 1: the two-hop route is shorter.
        let g = Csr::from_edges(3, &[(0, 1, 3), (0, 2, 1), (2, 1, 1)]).unwrap();
        assert_eq!(distance(&g, 0, 1).unwrap(), Some(2));
        // Weight 3 beats four unit hops.
        let g =
            Csr::from_edges(5, &[(0, 4, 3), (0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]).unwrap();
        assert_eq!(distance(&g, 0, 4).unwrap(), Some(3));
    }

    #[test]
    fn bfs_refuses_weights() {
        let g = Csr::from_edges(2, &[(0, 1, 3)]).unwrap();
        assert_eq!(bfs(&g, &[0]), Err(GraphError::NonUnitWeights));
    }

    #[test]
    fn multi_source() {
        let d = multi_source_distances(&path(5), &[0, 4]).unwrap();
        assert_eq!(d, [0, 1, 2, 1, 0]);
    }
}
