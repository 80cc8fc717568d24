//! Explicit paths of length at most 4 between every pair of vertices of a
//! gadget graph built from an instance without orthogonal quadruples.
//!
//! Every path is assembled from labels alone, following the case split of
//! the upper-bound argument with `ind` taken as the smallest common index,
//! and then checked edge by edge against the built graph.

use rayon::prelude::*;
use serde::Serialize;

use super::{require_none_class, require_same_source, VerifyError};
use crate::construction::{
    Couple, Flavor, GadgetGraph, LabelIndex, Layer, Pair, Triple, VertexLabel,
};
use crate::ov::OvInstance;

const MAX_LEN: u32 = 4;
const KEPT_FAILURES: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub flavor: Flavor,
    /// Ordered pairs `(u, v)`, `u != v`, covered by a valid path of length
    /// at most 4. A path certifies both orientations.
    pub certified_pairs: u64,
    pub total_pairs: u64,
    pub max_certified_length: u32,
    /// `length_histogram[d]` counts unordered pairs certified at length `d`.
    pub length_histogram: Vec<u64>,
    pub failed_pairs: u64,
    pub failures: Vec<String>,
}

impl CertificateReport {
    pub fn holds(&self) -> bool {
        self.failed_pairs == 0 && self.certified_pairs == self.total_pairs
    }
}

#[derive(Clone, Debug)]
struct Fail {
    case: &'static str,
    step: String,
}

/// At most 9 vertices: two hub paths of length 3 plus a joining edge.
#[derive(Clone, Copy, Debug)]
struct Path {
    v: [u32; 9],
    len: usize,
}

impl Path {
    fn new(start: u32) -> Self {
        let mut v = [0; 9];
        v[0] = start;
        Path { v, len: 1 }
    }

    fn push(&mut self, x: u32) {
        self.v[self.len] = x;
        self.len += 1;
    }

    fn last(&self) -> u32 {
        self.v[self.len - 1]
    }

    fn as_slice(&self) -> &[u32] {
        &self.v[..self.len]
    }

    /// Drops repeated consecutive vertices, starts at the last visit of the
    /// first vertex and stops at the first visit of the last one.
    fn normalized(&self) -> Path {
        let (u, w) = (self.v[0], self.last());
        let s = self.as_slice();
        let from = s.iter().rposition(|&x| x == u).unwrap();
        let to = from + s[from..].iter().position(|&x| x == w).unwrap();
        let mut out = Path::new(u);
        for &x in &s[from + 1..=to] {
            if x != out.last() {
                out.push(x);
            }
        }
        out
    }
}

struct Bits {
    words_per_row: usize,
    words: Vec<u64>,
}

impl Bits {
    fn get(&self, u: u32, v: u32) -> bool {
        let w = self.words[u as usize * self.words_per_row + v as usize / 64];
        w >> (v % 64) & 1 == 1
    }
}

struct Ctx<'a> {
    g: &'a GadgetGraph,
    index: LabelIndex,
    masks: Vec<u64>,
    unit: Bits,
    /// Path from each vertex into `I` (weighted) or `I ∪ Ip` (unweighted).
    hub_outer: Vec<Result<Path, Fail>>,
    /// Path from each vertex of `P ∪ C ∪ Tpp ∪ Tp` into `I` (unweighted).
    hub_inner: Vec<Result<Path, Fail>>,
}

pub fn certify_completeness_paths(
    graph: &GadgetGraph,
    instance: &OvInstance,
) -> Result<CertificateReport, VerifyError> {
    require_same_source(graph, instance)?;
    require_none_class(instance)?;
    let masks = instance
        .masks()
        .ok_or_else(|| VerifyError::Precondition("dimension above 64".into()))?;
    let nv = graph.num_vertices();
    let words_per_row = nv.div_ceil(64);
    let mut words = vec![0u64; nv * words_per_row];
    for (u, v, w) in graph.csr().edges() {
        if w == 1 {
            words[u as usize * words_per_row + v as usize / 64] |= 1 << (v % 64);
            words[v as usize * words_per_row + u as usize / 64] |= 1 << (u % 64);
        }
    }
    let mut ctx = Ctx {
        g: graph,
        index: LabelIndex::from_graph(graph),
        masks,
        unit: Bits {
            words_per_row,
            words,
        },
        hub_outer: Vec::new(),
        hub_inner: Vec::new(),
    };
    ctx.hub_outer = (0..nv as u32).map(|v| ctx.hub_path(v, false)).collect();
    ctx.hub_inner = (0..nv as u32).map(|v| ctx.hub_path(v, true)).collect();

    let per_vertex: Vec<Tally> = (0..nv as u32)
        .into_par_iter()
        .map(|u| {
            let mut t = Tally::default();
            for v in u + 1..nv as u32 {
                match ctx.certify_pair(u, v) {
                    Ok(len) => {
                        t.ok += 1;
                        t.hist[len as usize] += 1;
                    }
                    Err(f) => {
                        t.failed += 1;
                        if t.failures.len() < KEPT_FAILURES {
                            t.failures.push(format!(
                                "{} -- {}: {}: {}",
                                graph.label(u),
                                graph.label(v),
                                f.case,
                                f.step
                            ));
                        }
                    }
                }
            }
            t
        })
        .collect();

    let mut total = Tally::default();
    for t in per_vertex {
        total.ok += t.ok;
        total.failed += t.failed;
        for d in 0..=MAX_LEN as usize {
            total.hist[d] += t.hist[d];
        }
        for f in t.failures {
            if total.failures.len() < KEPT_FAILURES {
                total.failures.push(f);
            }
        }
    }
    let nv = nv as u64;
    Ok(CertificateReport {
        flavor: graph.flavor(),
        certified_pairs: 2 * total.ok,
        total_pairs: nv * nv.saturating_sub(1),
        max_certified_length: (0..=MAX_LEN)
            .rev()
            .find(|&d| total.hist[d as usize] > 0)
            .unwrap_or(0),
        length_histogram: total.hist.to_vec(),
        failed_pairs: 2 * total.failed,
        failures: total.failures,
    })
}

#[derive(Default)]
struct Tally {
    ok: u64,
    failed: u64,
    hist: [u64; MAX_LEN as usize + 1],
    failures: Vec<String>,
}

fn missing(case: &'static str, label: VertexLabel) -> Fail {
    Fail {
        case,
        step: format!("vertex {label} does not exist"),
    }
}

impl Ctx<'_> {
    fn weighted(&self) -> bool {
        self.g.flavor() == Flavor::Weighted
    }

    /// Smallest index where all listed vectors are 1.
    fn ind(&self, case: &'static str, vs: &[u32]) -> Result<u8, Fail> {
        let m = vs.iter().fold(u64::MAX, |m, &v| m & self.masks[v as usize]);
        if m == 0 {
            return Err(Fail {
                case,
                step: format!("vectors {vs:?} have no common 1"),
            });
        }
        Ok(m.trailing_zeros() as u8)
    }

    fn id(&self, case: &'static str, label: VertexLabel) -> Result<u32, Fail> {
        let ix = &self.index;
        let found = match label {
            VertexLabel::T(t) => ix.triple(Layer::T, t.a, t.b, t.c),
            VertexLabel::Tp(t) => ix.triple(Layer::Tp, t.a, t.b, t.c),
            VertexLabel::Tpp(t) => ix.triple(Layer::Tpp, t.a, t.b, t.c),
            VertexLabel::C(c) => ix.c(c.a, c.b, ix.code3(c.idx)),
            VertexLabel::P(p) => ix.p(p.a(), p.b(), ix.code3(p.idx)),
            VertexLabel::I(x) => ix.i(x[0], x[1], ix.code3([x[2], x[3], x[4]])),
            VertexLabel::Ip(i) => ix.ip(i),
        };
        found.ok_or_else(|| missing(case, label))
    }

    fn expected_weight(&self, x: u32, y: u32) -> u8 {
        let (lx, ly) = (self.g.layer_of(x), self.g.layer_of(y));
        if self.weighted() && matches!((lx, ly), (Layer::T, Layer::I) | (Layer::I, Layer::T)) {
            3
        } else {
            1
        }
    }

    /// Total weight of `path` after checking each of its edges.
    fn check(&self, case: &'static str, path: &Path) -> Result<u32, Fail> {
        let mut len = 0u32;
        for e in path.as_slice().windows(2) {
            let (x, y) = (e[0], e[1]);
            let w = self.expected_weight(x, y);
            let present = if w == 1 {
                self.unit.get(x, y)
            } else {
                self.g.csr().edge_weight(x, y) == Some(w)
            };
            if !present {
                return Err(Fail {
                    case,
                    step: format!(
                        "edge {} -- {} of weight {w} does not exist",
                        self.g.label(x),
                        self.g.label(y)
                    ),
                });
            }
            len += w as u32;
        }
        Ok(len)
    }

    /// Path from `v` to the hub clique, following the neighborhood
    /// inclusions around the index layers. With `inner`, the unweighted hub
    /// is `I` and only `P`, `C`, `Tpp`, `Tp` are served.
    fn hub_path(&self, v: u32, inner: bool) -> Result<Path, Fail> {
        const CASE: &str = "path to the index hub";
        let mut p = Path::new(v);
        let diag = |q: u8, j: u8, k: u8| VertexLabel::I([q, q, q, j, k]);
        match (*self.g.label(v), self.weighted(), inner) {
            (VertexLabel::I(_), _, _) => {}
            (VertexLabel::Ip(_), false, false) => {}
            (VertexLabel::P(x), _, _) => {
                p.push(self.id(CASE, diag(x.idx[0], x.idx[1], x.idx[2]))?);
            }
            (VertexLabel::C(c), _, _) => {
                p.push(self.id(CASE, VertexLabel::P(Pair::new(c.a, c.a, c.idx)))?);
                p.push(self.id(CASE, diag(c.idx[0], c.idx[1], c.idx[2]))?);
            }
            (VertexLabel::T(t), true, _) => {
                let q = self.ind(CASE, &[t.a, t.b, t.c])?;
                p.push(self.id(
                    CASE,
                    VertexLabel::C(Couple {
                        a: t.a,
                        b: t.b,
                        idx: [q; 3],
                    }),
                )?);
                p.push(self.id(CASE, VertexLabel::P(Pair::new(t.a, t.a, [q; 3])))?);
                p.push(self.id(CASE, VertexLabel::I([q; 5]))?);
            }
            (VertexLabel::T(t), false, false) => {
                p.push(self.id(CASE, VertexLabel::Tp(t))?);
                p.push(self.id(CASE, VertexLabel::Tpp(t))?);
                p.push(self.id(CASE, VertexLabel::Ip(self.ind(CASE, &[t.a, t.b])?))?);
            }
            (VertexLabel::Tp(t), false, _) => {
                p.push(self.id(CASE, VertexLabel::Tpp(t))?);
                p = self.extend_tpp(p, t, inner)?;
            }
            (VertexLabel::Tpp(t), false, _) => {
                p = self.extend_tpp(p, t, inner)?;
            }
            (label, _, _) => {
                return Err(Fail {
                    case: CASE,
                    step: format!("no hub path defined for {label}"),
                })
            }
        }
        self.check(CASE, &p)?;
        Ok(p)
    }

    fn extend_tpp(&self, mut p: Path, t: Triple, inner: bool) -> Result<Path, Fail> {
        const CASE: &str = "path to the index hub";
        if inner {
            let q = self.ind(CASE, &[t.a, t.b, t.c])?;
            p.push(self.id(CASE, VertexLabel::I([q; 5]))?);
        } else {
            p.push(self.id(CASE, VertexLabel::Ip(self.ind(CASE, &[t.a, t.b])?))?);
        }
        Ok(p)
    }

    fn via_hub(&self, u: u32, v: u32, inner: bool) -> Result<Path, Fail> {
        let hubs = if inner {
            &self.hub_inner
        } else {
            &self.hub_outer
        };
        let hu = hubs[u as usize].as_ref().map_err(|f| f.clone())?;
        let hv = hubs[v as usize].as_ref().map_err(|f| f.clone())?;
        let mut p = *hu;
        for &x in hv.as_slice().iter().rev() {
            p.push(x);
        }
        Ok(p)
    }

    fn c_case(&self, u: Couple, v: u32) -> Result<Path, Fail> {
        const CASE: &str = "C to T or C";
        let (a, b) = (u.a, u.b);
        let label_v = *self.g.label(v);
        let (c, d) = label_v.leading_pair().expect("T-like or C vertex");
        let i = self.ind(CASE, &[a, b, c, d])?;
        let j = match label_v {
            VertexLabel::C(_) => i,
            VertexLabel::T(t) | VertexLabel::Tp(t) => self.ind(CASE, &[a, c, d, t.c])?,
            _ => unreachable!(),
        };
        let idx = [i, i, j];
        let mut p = Path::new(self.id(CASE, VertexLabel::C(u))?);
        p.push(self.id(CASE, VertexLabel::C(Couple { a, b, idx }))?);
        p.push(self.id(CASE, VertexLabel::P(Pair::new(a, c, idx)))?);
        p.push(self.id(CASE, VertexLabel::C(Couple { a: c, b: d, idx }))?);
        p.push(v);
        Ok(p)
    }

    fn tt_case(&self, u: u32, v: u32) -> Result<Path, Fail> {
        const CASE: &str = "T to T";
        let t = triple_of(self.g.label(u));
        let s = triple_of(self.g.label(v));
        let (a, b, c) = (t.a, t.b, t.c);
        let (d, e, f) = (s.a, s.b, s.c);
        let idx = [
            self.ind(CASE, &[a, b, c, d])?,
            self.ind(CASE, &[a, b, d, e])?,
            self.ind(CASE, &[a, d, e, f])?,
        ];
        let mut p = Path::new(u);
        p.push(self.id(CASE, VertexLabel::C(Couple { a, b, idx }))?);
        p.push(self.id(CASE, VertexLabel::P(Pair::new(a, d, idx)))?);
        p.push(self.id(CASE, VertexLabel::C(Couple { a: d, b: e, idx }))?);
        p.push(v);
        Ok(p)
    }

    fn tp_case(&self, u: u32, v: u32) -> Result<Path, Fail> {
        const CASE: &str = "T to P";
        let t = triple_of(self.g.label(u));
        let VertexLabel::P(x) = *self.g.label(v) else {
            unreachable!()
        };
        let p1 = self.ind(CASE, &[t.a, t.b, t.c, x.a()])?;
        let p2 = self.ind(CASE, &[t.a, t.b, t.c, x.b()])?;
        let mut p = Path::new(u);
        if !self.weighted() {
            p.push(self.id(CASE, VertexLabel::Tp(t))?);
            p.push(self.id(CASE, VertexLabel::Tpp(t))?);
        }
        p.push(self.id(CASE, VertexLabel::I([p1, p2, x.idx[0], x.idx[1], x.idx[2]]))?);
        p.push(v);
        Ok(p)
    }

    fn t_tpp_case(&self, u: u32, v: u32) -> Result<Path, Fail> {
        const CASE: &str = "T to Tpp";
        let t = triple_of(self.g.label(u));
        let s = triple_of(self.g.label(v));
        let i = self.ind(CASE, &[t.a, t.b, s.a, s.b])?;
        let mut p = Path::new(u);
        p.push(self.id(CASE, VertexLabel::Tp(t))?);
        p.push(self.id(CASE, VertexLabel::Tpp(t))?);
        p.push(self.id(CASE, VertexLabel::Ip(i))?);
        p.push(v);
        Ok(p)
    }

    /// Length of the certified path between `u` and `v`.
    fn certify_pair(&self, u: u32, v: u32) -> Result<u32, Fail> {
        use Layer::*;
        let (lu, lv) = (self.g.layer_of(u), self.g.layer_of(v));
        let either = |x: &[Layer], y: &[Layer]| {
            if x.contains(&lu) && y.contains(&lv) {
                Some((u, v))
            } else if x.contains(&lv) && y.contains(&lu) {
                Some((v, u))
            } else {
                None
            }
        };
        let all = &Layer::ALL[..];
        let (case, path) = if self.weighted() {
            if either(&[I], all).is_some() {
                ("I to any", self.via_hub(u, v, false)?)
            } else if either(&[P], &[P, C]).is_some() {
                ("P to P or C", self.via_hub(u, v, false)?)
            } else if let Some((x, y)) = either(&[C], &[T, C]) {
                let VertexLabel::C(c) = *self.g.label(x) else {
                    unreachable!()
                };
                ("C to T or C", self.c_case(c, y)?)
            } else if let Some((x, y)) = either(&[T], &[T]) {
                ("T to T", self.tt_case(x, y)?)
            } else if let Some((x, y)) = either(&[T], &[P]) {
                ("T to P", self.tp_case(x, y)?)
            } else {
                return Err(uncovered(lu, lv));
            }
        } else if either(&[I, Ip], all).is_some() {
            ("I or Ip to any", self.via_hub(u, v, false)?)
        } else if either(&[P, Tpp], &[P, C, Tpp, Tp]).is_some() {
            ("P or Tpp to P, C, Tpp or Tp", self.via_hub(u, v, true)?)
        } else if let Some((x, y)) = either(&[C], &[T, Tp, C]) {
            let VertexLabel::C(c) = *self.g.label(x) else {
                unreachable!()
            };
            ("C to T, Tp or C", self.c_case(c, y)?)
        } else if let Some((x, y)) = either(&[T, Tp], &[T, Tp]) {
            ("T or Tp to T or Tp", self.tt_case(x, y)?)
        } else if let Some((x, y)) = either(&[T], &[P]) {
            ("T to P", self.tp_case(x, y)?)
        } else if let Some((x, y)) = either(&[T], &[Tpp]) {
            ("T to Tpp", self.t_tpp_case(x, y)?)
        } else {
            return Err(uncovered(lu, lv));
        };
        let path = path.normalized();
        let len = self.check(case, &path)?;
        if len > MAX_LEN {
            return Err(Fail {
                case,
                step: format!("path has length {len}"),
            });
        }
        Ok(len)
    }
}

fn triple_of(label: &VertexLabel) -> Triple {
    match *label {
        VertexLabel::T(t) | VertexLabel::Tp(t) | VertexLabel::Tpp(t) => t,
        _ => unreachable!("not a triple layer"),
    }
}

fn uncovered(lu: Layer, lv: Layer) -> Fail {
    Fail {
        case: "dispatch",
        step: format!("no case covers the layer pair {lu}/{lv}"),
    }
}
