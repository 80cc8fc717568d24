mod common;

use common::{adjacency, dijkstra, has_orthogonal_quadruple, random_cnf};
use ovgap::construction::{build, BuildOptions, Flavor};
use ovgap::graph::{
    all_eccentricities, approx2_diameter, bfs, bucket_queue, exact_diameter, shortest_paths_from,
    Csr,
};
use ovgap::ov::{
    classify, find_orthogonal_tuple, gen_no_instance, gen_planted_distinct, gen_random, ind_min,
    is_orthogonal, BitVector, ClassTag, NoInstanceMode, OvInstance,
};
use ovgap::sat::{brute_force_sat, formula_to_ov, group_sizes, split_and_list, GROUPS};
use ovgap::verify::{
    certify_completeness_paths, check_neighborhood_lemmas, decide_4ov_via_reduction,
};
use proptest::prelude::*;

fn bitvec(l: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), l).prop_map(BitVector::from_bits)
}

fn instance(max_n: usize, l: usize) -> impl Strategy<Value = OvInstance> {
    proptest::collection::vec(bitvec(l), 1..=max_n).prop_map(|vs| OvInstance::new(vs).unwrap())
}

/// Connected graphs with weights in {1, 3}: a random spanning tree plus
/// extra edges.
fn connected_graph(unit: bool) -> impl Strategy<Value = Csr> {
    (2usize..40).prop_flat_map(move |n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..2 * n);
        let weights = proptest::collection::vec(any::<bool>(), 3 * n);
        (Just(n), parents, extra, weights).prop_map(move |(n, parents, extra, weights)| {
            let mut seen = std::collections::BTreeSet::new();
            let mut edges = Vec::new();
            let mut w = weights.into_iter().cycle();
            let mut add = |u: usize, v: usize, w: u8| {
                let key = (u.min(v), u.max(v));
                if u != v && seen.insert(key) {
                    edges.push((key.0 as u32, key.1 as u32, w));
                }
            };
            for (v, p) in parents.iter().enumerate() {
                let v = v + 1;
                add(p.index(v), v, if unit || w.next().unwrap() { 1 } else { 3 });
            }
            for (u, v) in extra {
                add(u, v, if unit || w.next().unwrap() { 1 } else { 3 });
            }
            Csr::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthogonality_matches_undefined_ind(vs in proptest::collection::vec(bitvec(5), 1..=4)) {
        let refs: Vec<&BitVector> = vs.iter().collect();
        let last = *refs.last().unwrap();
        let pad: Vec<&BitVector> = (0..4).map(|k| *refs.get(k).unwrap_or(&last)).collect();
        let ind = ind_min(pad[0], pad[1], pad[2], pad[3]);
        prop_assert_eq!(is_orthogonal(&refs).unwrap(), ind.is_err());
        if let Ok(i) = ind {
            prop_assert!(refs.iter().all(|v| v.get(i)));
            prop_assert!((0..i).all(|j| !refs.iter().all(|v| v.get(j))));
        }
    }

    #[test]
    fn classify_agrees_with_tuple_search(s in instance(7, 4)) {
        let c = classify(&s);
        let any4 = find_orthogonal_tuple(&s, 4, false).unwrap();
        prop_assert_eq!(any4.is_none(), c.tag == ClassTag::None);
        prop_assert_eq!(has_orthogonal_quadruple(&s), c.tag != ClassTag::None);
        if let Some(w) = c.witness {
            prop_assert!(s.ids_orthogonal(&w));
            if c.tag == ClassTag::Distinct {
                prop_assert!((0..4).all(|i| (i + 1..4).all(|j| w[i] != w[j])));
            }
        }
    }

    #[test]
    fn classify_is_monotone(s in instance(7, 4), extra in bitvec(4), drop in any::<prop::sample::Index>()) {
        let c = classify(&s).tag;
        if c == ClassTag::None && s.len() > 1 {
            let k = drop.index(s.len());
            let rest: Vec<BitVector> = s.vectors().iter().enumerate()
                .filter(|&(i, _)| i != k).map(|(_, v)| v.clone()).collect();
            prop_assert_eq!(classify(&OvInstance::new(rest).unwrap()).tag, ClassTag::None);
        }
        if c == ClassTag::Distinct {
            let mut more = s.vectors().to_vec();
            more.push(extra);
            prop_assert_eq!(classify(&OvInstance::new(more).unwrap()).tag, ClassTag::Distinct);
        }
    }

    #[test]
    fn generators_are_deterministic_and_classified(seed in any::<u64>(), n in 3usize..=6) {
        let a = gen_random(n, 5, 0.6, seed).unwrap();
        prop_assert_eq!(a.to_text(), gen_random(n, 5, 0.6, seed).unwrap().to_text());
        for mode in [NoInstanceMode::ForcedOne, NoInstanceMode::rejection()] {
            let s = gen_no_instance(n, 4, mode, seed).unwrap();
            prop_assert_eq!(s.len(), n);
            prop_assert_eq!(classify(&s).tag, ClassTag::None);
            prop_assert_eq!(s.to_text(), gen_no_instance(n, 4, mode, seed).unwrap().to_text());
        }
        let p = gen_planted_distinct(4 + n % 3, 5, seed).unwrap();
        let planted: Vec<&BitVector> = p.vectors()[..4].iter().collect();
        prop_assert!(is_orthogonal(&planted).unwrap());
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assert!(!is_orthogonal(&[planted[i], planted[j]]).unwrap());
                for k in j + 1..4 {
                    prop_assert!(!is_orthogonal(&[planted[i], planted[j], planted[k]]).unwrap());
                }
            }
        }
        prop_assert_eq!(classify(&p).tag, ClassTag::Distinct);
    }

    #[test]
    fn sat_chain(vars in 1usize..=10, clauses in 1usize..=12, seed in any::<u64>()) {
        let f = random_cnf(vars, clauses, seed);
        let s = formula_to_ov(&f).unwrap();
        prop_assert_eq!(brute_force_sat(&f).unwrap(), classify(&s).tag == ClassTag::Distinct);
        prop_assert_eq!(s.dim(), clauses + GROUPS);
        let bound: usize = group_sizes(vars).iter().map(|&g| 1usize << g).sum();
        prop_assert!(s.len() <= bound);
        // Two vectors of one group share a 1 on the other groups' gadget coordinates.
        let lists = split_and_list(&f).unwrap();
        prop_assert_eq!(lists.iter().map(Vec::len).sum::<usize>(), bound);
        let m = clauses;
        for a in s.vectors() {
            for b in s.vectors() {
                let group = |v: &BitVector| (0..GROUPS).find(|&g| !v.get(m + g)).unwrap();
                if group(a) == group(b) {
                    let g = group(a);
                    let other = (0..GROUPS).find(|&h| h != g).unwrap();
                    prop_assert!(a.get(m + other) && b.get(m + other));
                }
            }
        }
    }

    #[test]
    fn bfs_and_bucket_queue_agree_on_unit_graphs(g in connected_graph(true), src in any::<prop::sample::Index>()) {
        let s = src.index(g.num_vertices()) as u32;
        prop_assert_eq!(bfs(&g, &[s]).unwrap(), bucket_queue(&g, &[s]).unwrap());
    }

    #[test]
    fn distances_match_dijkstra_and_are_symmetric(g in connected_graph(false)) {
        let edges: Vec<_> = g.edges().collect();
        let adj = adjacency(g.num_vertices(), &edges);
        let n = g.num_vertices() as u32;
        let rows: Vec<Vec<Option<u32>>> = (0..n)
            .map(|v| shortest_paths_from(&g, v).unwrap().iter().collect())
            .collect();
        for (u, row) in rows.iter().enumerate() {
            prop_assert_eq!(row, &dijkstra(&adj, u));
            for (v, &d) in row.iter().enumerate() {
                prop_assert_eq!(d, rows[v][u]);
            }
        }
        let ecc = all_eccentricities(&g).unwrap();
        let want: Vec<u32> = rows.iter().map(|r| r.iter().map(|d| d.unwrap()).max().unwrap()).collect();
        prop_assert_eq!(&ecc, &want);
        let d = exact_diameter(&g).unwrap();
        prop_assert_eq!(d.value, *want.iter().max().unwrap());
        prop_assert_eq!(rows[d.witness.0 as usize][d.witness.1 as usize], Some(d.value));
        let a = approx2_diameter(&g, None).unwrap();
        prop_assert!(a.estimate <= d.value && d.value <= 2 * a.estimate);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reduction_decides_4ov(s in instance(6, 3)) {
        prop_assume!(s.len() >= 3);
        let truth = has_orthogonal_quadruple(&s);
        for flavor in [Flavor::Weighted, Flavor::Unweighted] {
            prop_assert_eq!(decide_4ov_via_reduction(&s, flavor, &BuildOptions::default()).unwrap(), truth);
        }
    }

    #[test]
    fn none_instances_certify_and_satisfy_lemmas(seed in any::<u64>(), n in 3usize..=5, l in 3usize..=4) {
        // Forced-one instances at l = 3 hold at most 4 distinct vectors.
        let n = if l == 3 { n.min(4) } else { n };
        let s = gen_no_instance(n, l, NoInstanceMode::ForcedOne, seed).unwrap();
        for flavor in [Flavor::Weighted, Flavor::Unweighted] {
            let g = build(&s, flavor, &BuildOptions::default()).unwrap();
            let cert = certify_completeness_paths(&g, &s).unwrap();
            prop_assert!(cert.holds(), "{:?}", cert.failures);
            let diam = exact_diameter(g.csr()).unwrap().value;
            prop_assert!(diam <= 4);
            prop_assert!(cert.max_certified_length >= diam);
            prop_assert!(check_neighborhood_lemmas(&g, &s).unwrap().iter().all(|r| r.holds));
        }
    }
}
