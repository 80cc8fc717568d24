use serde::Serialize;

use super::{require_none_class, require_same_source, VerifyError};
use crate::construction::{Flavor, GadgetGraph, Layer};
use crate::graph::multi_source_distances;
use crate::ov::OvInstance;

/// One inclusion `N^radius[center] ⊇ required`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaResult {
    pub name: String,
    pub center: Vec<Layer>,
    pub radius: u32,
    pub required: Vec<Layer>,
    pub missing: usize,
    /// Label of the first vertex outside the ball, if any.
    pub first_missing: Option<String>,
    pub holds: bool,
}

fn ball_check(
    graph: &GadgetGraph,
    dist: &[u32],
    center: &[Layer],
    radius: u32,
    required: &[Layer],
) -> LemmaResult {
    let mut missing = 0;
    let mut first_missing = None;
    for &layer in required {
        for v in graph.layer_range(layer) {
            if dist[v as usize] > radius {
                missing += 1;
                first_missing.get_or_insert_with(|| graph.label(v).to_string());
            }
        }
    }
    let names = |ls: &[Layer]| ls.iter().map(|l| l.tag()).collect::<Vec<_>>().join(" ∪ ");
    LemmaResult {
        name: format!("N^{radius}[{}] ⊇ {}", names(center), names(required)),
        center: center.to_vec(),
        radius,
        required: required.to_vec(),
        missing,
        first_missing,
        holds: missing == 0,
    }
}

/// Neighborhood inclusions around the index layers. Distances are total
/// weights, so a weight-3 edge never contributes to a radius-1 ball.
pub fn check_neighborhood_lemmas(
    graph: &GadgetGraph,
    instance: &OvInstance,
) -> Result<Vec<LemmaResult>, VerifyError> {
    require_same_source(graph, instance)?;
    require_none_class(instance)?;
    use Layer::*;
    let mut out = Vec::new();
    let from = |layers: &[Layer]| -> Result<Vec<u32>, VerifyError> {
        let sources: Vec<u32> = layers.iter().flat_map(|&l| graph.layer_range(l)).collect();
        Ok(multi_source_distances(graph.csr(), &sources)?)
    };
    match graph.flavor() {
        Flavor::Weighted => {
            let d = from(&[I])?;
            out.push(ball_check(graph, &d, &[I], 1, &[I, P]));
            out.push(ball_check(graph, &d, &[I], 2, &[I, P, C]));
            out.push(ball_check(graph, &d, &[I], 3, &[T, C, P, I]));
        }
        Flavor::Unweighted => {
            let d = from(&[Ip])?;
            out.push(ball_check(graph, &d, &[Ip], 1, &[Ip, I, Tpp]));
            out.push(ball_check(graph, &d, &[Ip], 2, &[Ip, I, Tpp, P, Tp]));
            out.push(ball_check(graph, &d, &[Ip], 3, &Layer::ALL));
            let d = from(&[I])?;
            out.push(ball_check(graph, &d, &[I], 1, &[P, Tpp]));
            out.push(ball_check(graph, &d, &[I], 2, &[P, C, Tpp, Tp]));
        }
    }
    Ok(out)
}
