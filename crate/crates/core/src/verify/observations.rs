use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::VerifyError;
use crate::construction::{Flavor, GadgetGraph, Layer, VertexLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObservationOptions {
    /// Exhaustive enumeration when `n <= exhaustive_max_n` and
    /// `l <= exhaustive_max_l`; sampling otherwise.
    pub exhaustive_max_n: usize,
    pub exhaustive_max_l: usize,
    /// Sampled `T` vertices, and random walks inside `T ∪ C`.
    pub sample_budget: usize,
    pub seed: u64,
}

impl Default for ObservationOptions {
    fn default() -> Self {
        ObservationOptions {
            exhaustive_max_n: 4,
            exhaustive_max_l: 3,
            sample_budget: 2_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservationCheck {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    pub first_violation: Option<String>,
    pub holds: bool,
}

impl ObservationCheck {
    fn new(name: &str) -> Self {
        ObservationCheck {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            first_violation: None,
            holds: true,
        }
    }

    fn violate(&mut self, what: impl FnOnce() -> String) {
        self.violations += 1;
        self.holds = false;
        if self.first_violation.is_none() {
            self.first_violation = Some(what());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObservationReport {
    pub exhaustive: bool,
    pub p_to_t: ObservationCheck,
    pub within_tc: ObservationCheck,
    pub holds: bool,
}

/// Checks, on a weighted gadget, that
///
/// * a `P` vertex `({d,e},i,j,k)` and a `T` vertex `(a,b,c)` are joined by at
///   most one path of length 2, and only through `(a,b,i,j,k)` with
///   `a ∈ {d,e}`;
/// * every path inside `T ∪ C` keeps its first two vector fields.
pub fn check_structural_observations(
    graph: &GadgetGraph,
    options: &ObservationOptions,
) -> Result<ObservationReport, VerifyError> {
    if graph.flavor() != Flavor::Weighted {
        return Err(VerifyError::Precondition(
            "structural observations concern the weighted gadget".into(),
        ));
    }
    let exhaustive =
        graph.num_vectors() <= options.exhaustive_max_n && graph.dim() <= options.exhaustive_max_l;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let t_range = graph.layer_range(Layer::T);
    let t_ids: Vec<u32> = if exhaustive || t_range.is_empty() {
        t_range.collect()
    } else {
        (0..options.sample_budget)
            .map(|_| rng.gen_range(t_range.clone()))
            .collect()
    };

    let csr = graph.csr();
    let p_range = graph.layer_range(Layer::P);
    let mut p_to_t = ObservationCheck::new("at most one length-2 path between P and T");
    let mut via: Vec<Vec<u32>> = vec![Vec::new(); p_range.len()];
    for &t in &t_ids {
        let VertexLabel::T(tl) = *graph.label(t) else {
            unreachable!()
        };
        for (x, wx) in csr.neighbors(t) {
            if wx != 1 {
                continue;
            }
            for (p, wp) in csr.neighbors(x) {
                if wp == 1 && p_range.contains(&p) {
                    via[(p - p_range.start) as usize].push(x);
                }
            }
        }
        p_to_t.checked += p_range.len() as u64;
        for (k, mids) in via.iter_mut().enumerate() {
            if mids.is_empty() {
                continue;
            }
            let p = p_range.start + k as u32;
            let VertexLabel::P(pl) = *graph.label(p) else {
                unreachable!()
            };
            let expected = VertexLabel::C(crate::construction::Couple {
                a: tl.a,
                b: tl.b,
                idx: pl.idx,
            });
            let shaped = mids.len() == 1 && *graph.label(mids[0]) == expected && pl.contains(tl.a);
            if !shaped {
                p_to_t.violate(|| {
                    let names: Vec<String> =
                        mids.iter().map(|&m| graph.label(m).to_string()).collect();
                    format!(
                        "{} and {} meet via [{}]",
                        graph.label(p),
                        graph.label(t),
                        names.join(", ")
                    )
                });
            }
            mids.clear();
        }
    }

    let mut within_tc =
        ObservationCheck::new("paths inside T ∪ C keep the first two vector fields");
    let in_tc = |v: u32| matches!(graph.layer_of(v), Layer::T | Layer::C);
    let tc: Vec<u32> = graph
        .layer_range(Layer::T)
        .chain(graph.layer_range(Layer::C))
        .collect();
    if exhaustive {
        for &u in &tc {
            for v in csr
                .targets(u)
                .iter()
                .copied()
                .filter(|&v| v > u && in_tc(v))
            {
                within_tc.checked += 1;
                if graph.label(u).leading_pair() != graph.label(v).leading_pair() {
                    within_tc.violate(|| format!("edge {} -- {}", graph.label(u), graph.label(v)));
                }
            }
        }
    }
    if !tc.is_empty() {
        for _ in 0..options.sample_budget {
            let start = tc[rng.gen_range(0..tc.len())];
            let key = graph.label(start).leading_pair();
            let mut walk = vec![start];
            for _ in 0..4 {
                let here = *walk.last().unwrap();
                let options: Vec<u32> = csr
                    .targets(here)
                    .iter()
                    .copied()
                    .filter(|&v| in_tc(v))
                    .collect();
                if options.is_empty() {
                    break;
                }
                walk.push(options[rng.gen_range(0..options.len())]);
            }
            within_tc.checked += 1;
            if walk.iter().any(|&v| graph.label(v).leading_pair() != key) {
                within_tc.violate(|| {
                    let names: Vec<String> =
                        walk.iter().map(|&v| graph.label(v).to_string()).collect();
                    format!("walk {}", names.join(" / "))
                });
            }
        }
    }

    let holds = p_to_t.holds && within_tc.holds;
    Ok(ObservationReport {
        exhaustive,
        p_to_t,
        within_tc,
        holds,
    })
}
