use std::collections::BTreeMap;
use std::ops::Range;

use super::{
    ConstructionError, CountSummary, Couple, EdgeClass, Flavor, GadgetGraph, LabelIndex, Layer,
    Pair, Triple, VertexLabel, MAX_SUPPORTED_DIM,
};
use crate::graph::Csr;
use crate::ov::OvInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest admissible `l`; `I` alone has `l^5` vertices.
    pub max_dim: usize,
    /// Refuse builds whose predicted edge count exceeds this.
    pub max_edges: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_dim: 6,
            max_edges: 5_000_000,
        }
    }
}

impl BuildOptions {
    pub fn unlimited() -> Self {
        BuildOptions {
            max_dim: MAX_SUPPORTED_DIM,
            max_edges: u64::MAX,
        }
    }
}

#[inline]
fn bit(mask: u64, i: u8) -> bool {
    mask >> i & 1 == 1
}

/// Per-instance tables shared by the builder and the size predictor.
struct Tables {
    n: u32,
    dim: usize,
    l3: usize,
    masks: Vec<u64>,
    /// Bitmask `{i, j, k}` of each index-triple code.
    tri: Vec<u64>,
    idx: Vec<[u8; 3]>,
}

impl Tables {
    fn new(instance: &OvInstance, opts: &BuildOptions) -> Result<Self, ConstructionError> {
        let n = instance.len();
        if n < 3 {
            return Err(ConstructionError::TooFewVectors(n));
        }
        let cap = opts.max_dim.min(MAX_SUPPORTED_DIM);
        let dim = instance.dim();
        if dim > cap {
            return Err(ConstructionError::DimensionCap { dim, cap });
        }
        let l3 = dim * dim * dim;
        let idx: Vec<[u8; 3]> = (0..l3)
            .map(|code| {
                [
                    (code / (dim * dim)) as u8,
                    (code / dim % dim) as u8,
                    (code % dim) as u8,
                ]
            })
            .collect();
        let tri = idx
            .iter()
            .map(|t| t.iter().fold(0u64, |m, &h| m | 1 << h))
            .collect();
        Ok(Tables {
            n: n as u32,
            dim,
            l3,
            masks: instance.masks().expect("dim <= 64"),
            tri,
            idx,
        })
    }

    fn m(&self, v: u32) -> u64 {
        self.masks[v as usize]
    }

    fn c_exists(&self, a: u32, b: u32, code: usize) -> bool {
        let t = self.idx[code];
        let (ma, mb) = (self.m(a), self.m(b));
        a != b
            && ma & self.tri[code] == self.tri[code]
            && (bit(mb, t[0]) as u8 + bit(mb, t[1]) as u8 + bit(mb, t[2]) as u8) >= 2
    }

    fn p_exists(&self, a: u32, b: u32, code: usize) -> bool {
        self.m(a) & self.m(b) & self.tri[code] == self.tri[code]
    }

    fn triples(&self) -> impl Iterator<Item = Triple> + '_ {
        let n = self.n;
        (0..n).flat_map(move |a| {
            (0..n).flat_map(move |b| {
                (0..n)
                    .filter(move |&c| a != b && b != c && a != c)
                    .map(move |c| Triple { a, b, c })
            })
        })
    }

    fn ip_count(&self, a: u32, b: u32) -> u64 {
        let (ma, mb) = (self.m(a), self.m(b));
        let l = self.dim as u8;
        let mut count = 0;
        for p1 in 0..l {
            for p2 in 0..l {
                if (bit(ma, p1) && bit(mb, p2)) || (bit(ma, p2) && bit(mb, p1)) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Exact vertex and edge counts of the gadget, by counting rather than
/// materializing. Used as the size guard before any allocation.
pub fn predict_counts(
    instance: &OvInstance,
    flavor: Flavor,
) -> Result<CountSummary, ConstructionError> {
    let tb = Tables::new(instance, &BuildOptions::unlimited())?;
    let (n, l, l3) = (tb.n as u64, tb.dim as u64, tb.l3 as u64);
    let mut vertices = BTreeMap::new();
    let mut edges = BTreeMap::new();
    let t_count = n * (n - 1) * (n - 2);
    let i_count = l.pow(5);

    let mut c_total = 0;
    let mut p_total = 0;
    let mut e_cc = 0;
    let mut e_cp = 0;
    let mut e_ip = 0;
    for a in 0..tb.n {
        for b in 0..tb.n {
            let c_here = (0..tb.l3).filter(|&code| tb.c_exists(a, b, code)).count() as u64;
            c_total += c_here;
            e_cc += c_here * c_here.saturating_sub(1) / 2;
            for code in (0..tb.l3).filter(|&code| tb.c_exists(a, b, code)) {
                e_cp += (0..tb.n).filter(|&x| tb.p_exists(a, x, code)).count() as u64;
            }
            if a <= b {
                let p_here = (0..tb.l3).filter(|&code| tb.p_exists(a, b, code)).count() as u64;
                p_total += p_here;
                e_ip += p_here * tb.ip_count(a, b);
            }
        }
    }
    let mut e_tc = 0;
    let mut e_ti = 0;
    let mut e_ip_tpp = 0;
    for t in tb.triples() {
        let bc = tb.m(t.b) & tb.m(t.c);
        e_tc += (0..tb.l3)
            .filter(|&code| tb.c_exists(t.a, t.b, code) && bc & tb.tri[code] != 0)
            .count() as u64;
        let common = (tb.m(t.a) & bc).count_ones() as u64;
        e_ti += common * common * l3;
        e_ip_tpp += (tb.m(t.a) & tb.m(t.b)).count_ones() as u64;
    }

    vertices.insert(Layer::T, t_count);
    vertices.insert(Layer::C, c_total);
    vertices.insert(Layer::P, p_total);
    vertices.insert(Layer::I, i_count);
    edges.insert(
        EdgeClass::new(Layer::I, Layer::I),
        i_count * (i_count - 1) / 2,
    );
    edges.insert(EdgeClass::new(Layer::C, Layer::C), e_cc);
    edges.insert(EdgeClass::new(Layer::T, Layer::C), e_tc);
    edges.insert(EdgeClass::new(Layer::C, Layer::P), e_cp);
    edges.insert(EdgeClass::new(Layer::I, Layer::P), e_ip);
    match flavor {
        Flavor::Weighted => {
            edges.insert(EdgeClass::new(Layer::T, Layer::I), e_ti);
        }
        Flavor::Unweighted => {
            vertices.insert(Layer::Tp, t_count);
            vertices.insert(Layer::Tpp, t_count);
            vertices.insert(Layer::Ip, l);
            edges.insert(EdgeClass::new(Layer::T, Layer::Tp), t_count);
            edges.insert(EdgeClass::new(Layer::Tp, Layer::Tpp), t_count);
            edges.insert(EdgeClass::new(Layer::C, Layer::Tp), e_tc);
            edges.insert(EdgeClass::new(Layer::I, Layer::Tpp), e_ti);
            edges.insert(EdgeClass::new(Layer::Tpp, Layer::Ip), e_ip_tpp);
            edges.insert(EdgeClass::new(Layer::Ip, Layer::Ip), l * (l - 1) / 2);
            edges.insert(EdgeClass::new(Layer::I, Layer::Ip), i_count * l);
        }
    }
    Ok(CountSummary::from_maps(
        flavor,
        tb.n as usize,
        tb.dim,
        vertices,
        edges,
    ))
}

pub fn build_weighted(
    instance: &OvInstance,
    opts: &BuildOptions,
) -> Result<GadgetGraph, ConstructionError> {
    build(instance, Flavor::Weighted, opts)
}

pub fn build_unweighted(
    instance: &OvInstance,
    opts: &BuildOptions,
) -> Result<GadgetGraph, ConstructionError> {
    build(instance, Flavor::Unweighted, opts)
}

/// Builds the weighted or unweighted gadget graph of `instance`.
pub fn build(
    instance: &OvInstance,
    flavor: Flavor,
    opts: &BuildOptions,
) -> Result<GadgetGraph, ConstructionError> {
    let tb = Tables::new(instance, opts)?;
    let predicted = predict_counts(instance, flavor)?;
    if predicted.total_edges > opts.max_edges {
        return Err(ConstructionError::EdgeBudget {
            vertices: predicted.total_vertices,
            edges: predicted.total_edges,
            budget: opts.max_edges,
        });
    }

    let n = tb.n;
    let l = tb.dim as u8;
    let mut labels: Vec<VertexLabel> = Vec::with_capacity(predicted.total_vertices as usize);
    let mut layers: [Range<u32>; 7] = Default::default();
    let mut open = |labels: &Vec<VertexLabel>, layer: Layer| {
        let at = labels.len() as u32;
        layers[layer as usize] = at..at;
    };

    open(&labels, Layer::T);
    let triples: Vec<Triple> = tb.triples().collect();
    labels.extend(triples.iter().map(|&t| VertexLabel::T(t)));
    open(&labels, Layer::C);
    for a in 0..n {
        for b in 0..n {
            for code in 0..tb.l3 {
                if tb.c_exists(a, b, code) {
                    labels.push(VertexLabel::C(Couple {
                        a,
                        b,
                        idx: tb.idx[code],
                    }));
                }
            }
        }
    }
    open(&labels, Layer::P);
    for a in 0..n {
        for b in a..n {
            for code in 0..tb.l3 {
                if tb.p_exists(a, b, code) {
                    labels.push(VertexLabel::P(Pair::new(a, b, tb.idx[code])));
                }
            }
        }
    }
    open(&labels, Layer::I);
    for p1 in 0..l {
        for p2 in 0..l {
            for t in &tb.idx {
                labels.push(VertexLabel::I([p1, p2, t[0], t[1], t[2]]));
            }
        }
    }
    if flavor == Flavor::Unweighted {
        open(&labels, Layer::Tp);
        labels.extend(triples.iter().map(|&t| VertexLabel::Tp(t)));
        open(&labels, Layer::Tpp);
        labels.extend(triples.iter().map(|&t| VertexLabel::Tpp(t)));
        open(&labels, Layer::Ip);
        labels.extend((0..l).map(VertexLabel::Ip));
    }
    // Close the ranges: each open layer runs to the start of the next one.
    let mut starts: Vec<(usize, u32)> = Layer::ALL
        .iter()
        .filter(|&&ly| flavor == Flavor::Unweighted || ly <= Layer::I)
        .map(|&ly| (ly as usize, layers[ly as usize].start))
        .collect();
    starts.push((usize::MAX, labels.len() as u32));
    for w in starts.windows(2) {
        layers[w[0].0].end = w[1].1;
    }
    for r in layers.iter_mut().filter(|r| r.start == r.end) {
        *r = 0..0;
    }

    let mut index = LabelIndex::new(n as usize, tb.dim);
    for (id, label) in labels.iter().enumerate() {
        index.insert(label, id as u32);
    }

    let mut edges: Vec<(u32, u32, u8)> = Vec::with_capacity(predicted.total_edges as usize);
    let heavy = match flavor {
        Flavor::Weighted => 3,
        Flavor::Unweighted => 1,
    };

    // Index-switching cliques: all of I, and each (a, b) block of C.
    let i_range = layers[Layer::I as usize].clone();
    for u in i_range.clone() {
        for v in u + 1..i_range.end {
            edges.push((u, v, 1));
        }
    }
    let c_range = layers[Layer::C as usize].clone();
    let mut block_start = c_range.start;
    while block_start < c_range.end {
        let key = labels[block_start as usize].leading_pair();
        let mut block_end = block_start;
        while block_end < c_range.end && labels[block_end as usize].leading_pair() == key {
            block_end += 1;
        }
        for u in block_start..block_end {
            for v in u + 1..block_end {
                edges.push((u, v, 1));
            }
        }
        block_start = block_end;
    }

    let t_like: &[Layer] = match flavor {
        Flavor::Weighted => &[Layer::T],
        Flavor::Unweighted => &[Layer::T, Layer::Tp],
    };
    let ti_layer = match flavor {
        Flavor::Weighted => Layer::T,
        Flavor::Unweighted => Layer::Tpp,
    };
    for t in &triples {
        let bc = tb.m(t.b) & tb.m(t.c);
        let common = tb.m(t.a) & bc;
        // E(T, C) and its mirror E(Tp, C).
        for code in 0..tb.l3 {
            if bc & tb.tri[code] == 0 {
                continue;
            }
            if let Some(cv) = index.c(t.a, t.b, code) {
                for &layer in t_like {
                    let tv = index.triple(layer, t.a, t.b, t.c).unwrap();
                    edges.push((tv.min(cv), tv.max(cv), 1));
                }
            }
        }
        // E(T, I) with weight 3, or E(Tpp, I) with weight 1.
        let tv = index.triple(ti_layer, t.a, t.b, t.c).unwrap();
        for p1 in (0..l).filter(|&p| bit(common, p)) {
            for p2 in (0..l).filter(|&p| bit(common, p)) {
                for code in 0..tb.l3 {
                    edges.push((tv, index.i(p1, p2, code).unwrap(), heavy));
                }
            }
        }
        if flavor == Flavor::Unweighted {
            let t0 = index.triple(Layer::T, t.a, t.b, t.c).unwrap();
            let t1 = index.triple(Layer::Tp, t.a, t.b, t.c).unwrap();
            let t2 = index.triple(Layer::Tpp, t.a, t.b, t.c).unwrap();
            edges.push((t0, t1, 1));
            edges.push((t1, t2, 1));
            let ab = tb.m(t.a) & tb.m(t.b);
            for i in (0..l).filter(|&i| bit(ab, i)) {
                edges.push((t2, index.ip(i).unwrap(), 1));
            }
        }
    }

    // E(C, P): same index triple, first vector of the couple in the pair.
    for cv in c_range.clone() {
        let VertexLabel::C(c) = labels[cv as usize] else {
            unreachable!()
        };
        let code = index.code3(c.idx);
        for x in 0..n {
            if let Some(pv) = index.p(c.a, x, code) {
                edges.push((cv, pv, 1));
            }
        }
    }

    // E(I, P): same trailing triple, a[p1] = b[p2] = 1 or a[p2] = b[p1] = 1.
    for pv in layers[Layer::P as usize].clone() {
        let VertexLabel::P(p) = labels[pv as usize] else {
            unreachable!()
        };
        let (ma, mb) = (tb.m(p.a()), tb.m(p.b()));
        let code = index.code3(p.idx);
        for p1 in 0..l {
            for p2 in 0..l {
                if (bit(ma, p1) && bit(mb, p2)) || (bit(ma, p2) && bit(mb, p1)) {
                    let iv = index.i(p1, p2, code).unwrap();
                    edges.push((iv.min(pv), iv.max(pv), 1));
                }
            }
        }
    }

    if flavor == Flavor::Unweighted {
        let ip_range = layers[Layer::Ip as usize].clone();
        for u in ip_range.clone() {
            for v in u + 1..ip_range.end {
                edges.push((u, v, 1));
            }
            for iv in i_range.clone() {
                edges.push((iv, u, 1));
            }
        }
    }

    debug_assert_eq!(edges.len() as u64, predicted.total_edges);
    let csr = Csr::from_edges(labels.len(), &edges)?;
    Ok(GadgetGraph::assemble(
        flavor, n as usize, tb.dim, labels, layers, csr,
    ))
}
