use super::{GadgetGraph, Layer, VertexLabel};

const ABSENT: u32 = u32::MAX;

/// Dense label-to-id tables for one gadget graph.
///
/// Index triples `(i, j, k)` are addressed by their code `(i*l + j)*l + k`.
#[derive(Clone, Debug)]
pub struct LabelIndex {
    n: usize,
    dim: usize,
    l3: usize,
    t: Vec<u32>,
    tp: Vec<u32>,
    tpp: Vec<u32>,
    c: Vec<u32>,
    p: Vec<u32>,
    i: Vec<u32>,
    ip: Vec<u32>,
}

impl LabelIndex {
    pub fn new(n: usize, dim: usize) -> Self {
        let l3 = dim * dim * dim;
        LabelIndex {
            n,
            dim,
            l3,
            t: vec![ABSENT; n * n * n],
            tp: vec![ABSENT; n * n * n],
            tpp: vec![ABSENT; n * n * n],
            c: vec![ABSENT; n * n * l3],
            p: vec![ABSENT; n * n * l3],
            i: vec![ABSENT; l3 * dim * dim],
            ip: vec![ABSENT; dim],
        }
    }

    /// Tables for the vertices actually present in `graph`.
    pub fn from_graph(graph: &GadgetGraph) -> Self {
        let mut index = LabelIndex::new(graph.num_vectors(), graph.dim());
        for (id, label) in graph.labels().iter().enumerate() {
            index.insert(label, id as u32);
        }
        index
    }

    pub fn num_vectors(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn code3(&self, idx: [u8; 3]) -> usize {
        (idx[0] as usize * self.dim + idx[1] as usize) * self.dim + idx[2] as usize
    }

    pub fn decode3(&self, code: usize) -> [u8; 3] {
        let l = self.dim;
        [
            (code / (l * l)) as u8,
            (code / l % l) as u8,
            (code % l) as u8,
        ]
    }

    #[inline]
    fn tri(&self, a: u32, b: u32, c: u32) -> usize {
        (a as usize * self.n + b as usize) * self.n + c as usize
    }

    #[inline]
    fn duo(&self, a: u32, b: u32, code: usize) -> usize {
        (a as usize * self.n + b as usize) * self.l3 + code
    }

    pub fn insert(&mut self, label: &VertexLabel, id: u32) {
        match *label {
            VertexLabel::T(t) => {
                let k = self.tri(t.a, t.b, t.c);
                self.t[k] = id;
            }
            VertexLabel::Tp(t) => {
                let k = self.tri(t.a, t.b, t.c);
                self.tp[k] = id;
            }
            VertexLabel::Tpp(t) => {
                let k = self.tri(t.a, t.b, t.c);
                self.tpp[k] = id;
            }
            VertexLabel::C(c) => {
                let k = self.duo(c.a, c.b, self.code3(c.idx));
                self.c[k] = id;
            }
            VertexLabel::P(p) => {
                let k = self.duo(p.a(), p.b(), self.code3(p.idx));
                self.p[k] = id;
            }
            VertexLabel::I(x) => {
                let k = self.i_slot(x[0], x[1], self.code3([x[2], x[3], x[4]]));
                self.i[k] = id;
            }
            VertexLabel::Ip(i) => self.ip[i as usize] = id,
        }
    }

    #[inline]
    fn i_slot(&self, p1: u8, p2: u8, code: usize) -> usize {
        (p1 as usize * self.dim + p2 as usize) * self.l3 + code
    }

    #[inline]
    fn get(v: u32) -> Option<u32> {
        (v != ABSENT).then_some(v)
    }

    pub fn triple(&self, layer: Layer, a: u32, b: u32, c: u32) -> Option<u32> {
        let k = self.tri(a, b, c);
        match layer {
            Layer::T => Self::get(self.t[k]),
            Layer::Tp => Self::get(self.tp[k]),
            Layer::Tpp => Self::get(self.tpp[k]),
            _ => None,
        }
    }

    #[inline]
    pub fn c(&self, a: u32, b: u32, code: usize) -> Option<u32> {
        Self::get(self.c[self.duo(a, b, code)])
    }

    /// `P` vertex for the multiset `{x, y}`, in either order.
    #[inline]
    pub fn p(&self, x: u32, y: u32, code: usize) -> Option<u32> {
        Self::get(self.p[self.duo(x.min(y), x.max(y), code)])
    }

    #[inline]
    pub fn i(&self, p1: u8, p2: u8, code: usize) -> Option<u32> {
        Self::get(self.i[self.i_slot(p1, p2, code)])
    }

    #[inline]
    pub fn ip(&self, i: u8) -> Option<u32> {
        Self::get(self.ip[i as usize])
    }
}
