//! Independent reference implementations used as oracles by the
//! integration tests. Nothing here calls into the builder, the predicate
//! module or the graph algorithms of the library.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use ovgap::ov::OvInstance;
use ovgap::sat::CnfFormula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    T(usize, usize, usize),
    Tp(usize, usize, usize),
    Tpp(usize, usize, usize),
    C(usize, usize, [usize; 3]),
    P(usize, usize, [usize; 3]),
    I([usize; 5]),
    Ip(usize),
}

impl Node {
    pub fn layer(&self) -> &'static str {
        match self {
            Node::T(..) => "T",
            Node::Tp(..) => "Tp",
            Node::Tpp(..) => "Tpp",
            Node::C(..) => "C",
            Node::P(..) => "P",
            Node::I(..) => "I",
            Node::Ip(..) => "Ip",
        }
    }

    /// Same text as the library's label display.
    pub fn text(&self) -> String {
        let nums: Vec<usize> = match *self {
            Node::T(a, b, c) | Node::Tp(a, b, c) | Node::Tpp(a, b, c) => vec![a, b, c],
            Node::C(a, b, x) | Node::P(a, b, x) => vec![a, b, x[0], x[1], x[2]],
            Node::I(x) => x.to_vec(),
            Node::Ip(i) => vec![i],
        };
        let mut s = self.layer().to_string();
        for k in nums {
            s.push(' ');
            s.push_str(&k.to_string());
        }
        s
    }
}

/// Gadget defined straight from the vertex and edge rules.
pub struct Reference {
    pub rows: Vec<Vec<bool>>,
    pub weighted: bool,
    pub nodes: Vec<Node>,
}

fn tuples(l: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..l).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

impl Reference {
    pub fn new(instance: &OvInstance, weighted: bool) -> Self {
        let rows: Vec<Vec<bool>> = instance
            .vectors()
            .iter()
            .map(|v| v.to_string().chars().map(|c| c == '1').collect())
            .collect();
        let n = rows.len();
        let l = rows[0].len();
        let mut nodes = Vec::new();
        let trip = tuples(l, 3);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && a != c {
                        nodes.push(Node::T(a, b, c));
                        if !weighted {
                            nodes.push(Node::Tp(a, b, c));
                            nodes.push(Node::Tpp(a, b, c));
                        }
                    }
                }
                for t in &trip {
                    let x = [t[0], t[1], t[2]];
                    let a_ones = x.iter().all(|&h| rows[a][h]);
                    let b_hits = x.iter().filter(|&&h| rows[b][h]).count();
                    if a != b && a_ones && b_hits >= 2 {
                        nodes.push(Node::C(a, b, x));
                    }
                    if a <= b && x.iter().all(|&h| rows[a][h] && rows[b][h]) {
                        nodes.push(Node::P(a, b, x));
                    }
                }
            }
        }
        for t in tuples(l, 5) {
            nodes.push(Node::I([t[0], t[1], t[2], t[3], t[4]]));
        }
        if !weighted {
            nodes.extend((0..l).map(Node::Ip));
        }
        Reference {
            rows,
            weighted,
            nodes,
        }
    }

    fn one(&self, v: usize, i: usize) -> bool {
        self.rows[v][i]
    }

    fn tc(&self, t: (usize, usize, usize), a: usize, b: usize, x: [usize; 3]) -> bool {
        t.0 == a && t.1 == b && x.iter().any(|&h| self.one(t.1, h) && self.one(t.2, h))
    }

    fn ti(&self, t: (usize, usize, usize), x: [usize; 5]) -> bool {
        [x[0], x[1]]
            .iter()
            .all(|&p| self.one(t.0, p) && self.one(t.1, p) && self.one(t.2, p))
    }

    /// Weight of the edge between `x` and `y`, if any.
    pub fn edge(&self, x: &Node, y: &Node) -> Option<u8> {
        use Node::*;
        if x == y {
            return None;
        }
        let some = |b: bool| if b { Some(1) } else { None };
        match (*x, *y) {
            (I(_), I(_)) | (Ip(_), Ip(_)) | (I(_), Ip(_)) | (Ip(_), I(_)) => Some(1),
            (C(a, b, _), C(c, d, _)) => some(a == c && b == d),
            (T(p, q, r), C(a, b, s)) | (C(a, b, s), T(p, q, r)) => {
                some(self.tc((p, q, r), a, b, s))
            }
            (Tp(p, q, r), C(a, b, s)) | (C(a, b, s), Tp(p, q, r)) => {
                some(self.tc((p, q, r), a, b, s))
            }
            (C(a, _, s), P(d, e, t)) | (P(d, e, t), C(a, _, s)) => {
                some(s == t && (a == d || a == e))
            }
            (T(p, q, r), I(s)) | (I(s), T(p, q, r)) if self.weighted => {
                if self.ti((p, q, r), s) {
                    Some(3)
                } else {
                    None
                }
            }
            (Tpp(p, q, r), I(s)) | (I(s), Tpp(p, q, r)) => some(self.ti((p, q, r), s)),
            (I(s), P(d, e, t)) | (P(d, e, t), I(s)) => some(
                s[2..] == t[..]
                    && ((self.one(d, s[0]) && self.one(e, s[1]))
                        || (self.one(d, s[1]) && self.one(e, s[0]))),
            ),
            (T(a, b, c), Tp(d, e, f))
            | (Tp(d, e, f), T(a, b, c))
            | (Tp(a, b, c), Tpp(d, e, f))
            | (Tpp(d, e, f), Tp(a, b, c)) => some((a, b, c) == (d, e, f)),
            (Ip(i), Tpp(a, b, _)) | (Tpp(a, b, _), Ip(i)) => some(self.one(a, i) && self.one(b, i)),
            _ => None,
        }
    }

    /// All edges as `(text u, text v, w)` with `text u < text v`.
    pub fn edge_texts(&self) -> Vec<(String, String, u8)> {
        let texts: Vec<String> = self.nodes.iter().map(Node::text).collect();
        let mut out = Vec::new();
        for i in 0..self.nodes.len() {
            for j in i + 1..self.nodes.len() {
                if let Some(w) = self.edge(&self.nodes[i], &self.nodes[j]) {
                    let (x, y) = if texts[i] < texts[j] { (i, j) } else { (j, i) };
                    out.push((texts[x].clone(), texts[y].clone(), w));
                }
            }
        }
        out.sort();
        out
    }

    pub fn vertex_counts(&self) -> BTreeMap<&'static str, u64> {
        let mut m = BTreeMap::new();
        for v in &self.nodes {
            *m.entry(v.layer()).or_insert(0) += 1;
        }
        m
    }

    /// Edge counts per unordered layer pair, keyed `"X-Y"` with `X <= Y` in
    /// id order of the layers.
    pub fn edge_counts(&self) -> BTreeMap<String, u64> {
        let order = ["T", "C", "P", "I", "Tp", "Tpp", "Ip"];
        let rank = |s: &str| order.iter().position(|&o| o == s).unwrap();
        let mut m = BTreeMap::new();
        for i in 0..self.nodes.len() {
            for j in i + 1..self.nodes.len() {
                if self.edge(&self.nodes[i], &self.nodes[j]).is_some() {
                    let (x, y) = (self.nodes[i].layer(), self.nodes[j].layer());
                    let (x, y) = if rank(x) <= rank(y) { (x, y) } else { (y, x) };
                    *m.entry(format!("{x}-{y}")).or_insert(0) += 1;
                }
            }
        }
        m
    }
}

/// Dijkstra with a binary heap over an explicit adjacency list.
pub fn dijkstra(adj: &[Vec<(usize, u32)>], src: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u32, src)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u].is_some() {
            continue;
        }
        dist[u] = Some(d);
        for &(v, w) in &adj[u] {
            if dist[v].is_none() {
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    dist
}

pub fn adjacency(n: usize, edges: &[(u32, u32, u8)]) -> Vec<Vec<(usize, u32)>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        adj[u as usize].push((v as usize, w as u32));
        adj[v as usize].push((u as usize, w as u32));
    }
    adj
}

/// Random CNF with `vars` variables and `clauses` clauses of width 1..=3.
pub fn random_cnf(vars: usize, clauses: usize, seed: u64) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cls = (0..clauses)
        .map(|_| {
            let width = rng.gen_range(1..=3usize.min(vars));
            (0..width)
                .map(|_| {
                    let v = rng.gen_range(1..=vars) as i32;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, cls).unwrap()
}

/// Brute-force 4-OV with repetition on raw rows.
pub fn has_orthogonal_quadruple(instance: &OvInstance) -> bool {
    let rows: Vec<String> = instance.vectors().iter().map(|v| v.to_string()).collect();
    let n = rows.len();
    let l = rows[0].len();
    let bits: Vec<Vec<bool>> = rows
        .iter()
        .map(|r| r.chars().map(|c| c == '1').collect())
        .collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (0..l).all(|i| !(bits[a][i] && bits[b][i] && bits[c][i] && bits[d][i])) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
