mod common;

use common::Reference;
use ovgap::construction::{
    build, count_summary, predict_counts, BuildOptions, EdgeClass, Flavor, GadgetGraph, Layer,
};
use ovgap::ov::{gen_random, OvInstance};
use proptest::prelude::*;

fn graph_edge_texts(g: &GadgetGraph) -> Vec<(String, String, u8)> {
    let mut out: Vec<_> = g
        .csr()
        .edges()
        .map(|(u, v, w)| {
            let (x, y) = (g.label(u).to_string(), g.label(v).to_string());
            if x < y {
                (x, y, w)
            } else {
                (y, x, w)
            }
        })
        .collect();
    out.sort();
    out
}

fn small_instance() -> impl Strategy<Value = OvInstance> {
    (3usize..=4, 2usize..=3).prop_flat_map(|(n, l)| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), l), n..=n + 1)
            .prop_filter_map("need 3 distinct vectors", |rows| {
                let vs: Vec<String> = rows
                    .iter()
                    .map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect())
                    .collect();
                OvInstance::from_strs(&vs).ok().filter(|s| s.len() >= 3)
            })
    })
}

#[test]
fn reference_counts_for_the_three_vector_example() {
    let s = OvInstance::from_strs(&["111", "110", "101"]).unwrap();
    let r = Reference::new(&s, true);
    let counts = r.vertex_counts();
    assert_eq!(counts["T"], 6);
    assert_eq!(counts["I"], 243);
    let g = build(&s, Flavor::Weighted, &BuildOptions::default()).unwrap();
    let sum = count_summary(&g);
    assert_eq!(sum.vertices[&Layer::C], counts["C"]);
    assert_eq!(sum.vertices[&Layer::P], counts["P"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn builder_equals_reference_gadget(s in small_instance(), weighted in any::<bool>()) {
        let flavor = if weighted { Flavor::Weighted } else { Flavor::Unweighted };
        let g = build(&s, flavor, &BuildOptions::default()).unwrap();
        let r = Reference::new(&s, weighted);
        let mut want: Vec<String> = r.nodes.iter().map(|v| v.text()).collect();
        let mut got: Vec<String> = g.labels().iter().map(|v| v.to_string()).collect();
        want.sort();
        got.sort();
        prop_assert_eq!(got, want);
        prop_assert_eq!(graph_edge_texts(&g), r.edge_texts());
    }

    #[test]
    fn predicted_counts_match_materialized(s in small_instance(), weighted in any::<bool>()) {
        let flavor = if weighted { Flavor::Weighted } else { Flavor::Unweighted };
        let g = build(&s, flavor, &BuildOptions::default()).unwrap();
        let sum = count_summary(&g);
        prop_assert!(sum.identities_hold());
        prop_assert_eq!(&sum, &predict_counts(&s, flavor).unwrap());
    }

    #[test]
    fn structural_invariants(s in small_instance(), weighted in any::<bool>()) {
        let flavor = if weighted { Flavor::Weighted } else { Flavor::Unweighted };
        let g = build(&s, flavor, &BuildOptions::default()).unwrap();
        let csr = g.csr();
        let allowed: Vec<EdgeClass> = EdgeClass::all(flavor);
        for (u, v, w) in csr.edges() {
            prop_assert_eq!(csr.edge_weight(v, u), Some(w));
            let (lu, lv) = (g.layer_of(u), g.layer_of(v));
            let class = EdgeClass::new(lu, lv);
            prop_assert!(allowed.contains(&class), "edge class {}", class);
            let heavy = flavor == Flavor::Weighted && class == EdgeClass::new(Layer::T, Layer::I);
            prop_assert_eq!(w, if heavy { 3 } else { 1 });
        }
        // Cliques on I (and I ∪ Ip), blocks on C, independent T and P.
        let hub: Vec<u32> = g.layer_range(Layer::I).chain(g.layer_range(Layer::Ip)).collect();
        for (k, &u) in hub.iter().enumerate() {
            for &v in &hub[k + 1..] {
                prop_assert_eq!(csr.edge_weight(u, v), Some(1));
            }
        }
        let c = g.layer_ids(Layer::C);
        for (k, &u) in c.iter().enumerate() {
            for &v in &c[k + 1..] {
                let same = g.label(u).leading_pair() == g.label(v).leading_pair();
                prop_assert_eq!(csr.edge_weight(u, v).is_some(), same);
            }
        }
        for layer in [Layer::T, Layer::P] {
            for u in g.layer_range(layer) {
                prop_assert!(csr.targets(u).iter().all(|&v| g.layer_of(v) != layer));
            }
        }
        let blocks: std::collections::BTreeSet<_> =
            c.iter().map(|&v| g.label(v).leading_pair()).collect();
        let n = s.len();
        prop_assert!(blocks.len() <= n * (n - 1));
    }

    #[test]
    fn text_round_trip(s in small_instance(), weighted in any::<bool>()) {
        let flavor = if weighted { Flavor::Weighted } else { Flavor::Unweighted };
        let g = build(&s, flavor, &BuildOptions::default()).unwrap();
        let text = g.to_text();
        let back = GadgetGraph::parse(&text).unwrap();
        prop_assert_eq!(&back.to_text(), &text);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn builds_are_deterministic(seed in any::<u64>()) {
        let s = gen_random(4, 3, 0.7, seed).unwrap();
        prop_assume!(s.len() >= 3);
        for flavor in [Flavor::Weighted, Flavor::Unweighted] {
            let a = build(&s, flavor, &BuildOptions::default()).unwrap();
            let b = build(&s, flavor, &BuildOptions::default()).unwrap();
            prop_assert_eq!(a.to_text(), b.to_text());
        }
    }
}

#[test]
fn per_class_counts_match_reference_at_l4() {
    for seed in 0..3 {
        let s = gen_random(4, 4, 0.75, seed).unwrap();
        if s.len() < 3 {
            continue;
        }
        for weighted in [true, false] {
            let flavor = if weighted {
                Flavor::Weighted
            } else {
                Flavor::Unweighted
            };
            let r = Reference::new(&s, weighted);
            let want = r.edge_counts();
            let sum = predict_counts(&s, flavor).unwrap();
            for (class, &count) in &sum.edges {
                assert_eq!(
                    want.get(&class.to_string()).copied().unwrap_or(0),
                    count,
                    "{class}"
                );
            }
            for (layer, &count) in &sum.vertices {
                assert_eq!(r.vertex_counts()[layer.tag()], count, "{layer}");
            }
        }
    }
}
