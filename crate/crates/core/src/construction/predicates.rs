//! Vertex-existence and edge predicates, one per vertex or edge class,
//! evaluated directly on the instance's vectors.

use super::{Couple, Flavor, Pair, Triple, VertexLabel};
use crate::ov::{maj3, OvInstance};

fn bit(s: &OvInstance, v: u32, i: u8) -> bool {
    s.vector(v as usize).get(i as usize)
}

/// `a` is 1 on `i, j, k` and `maj(b[i], b[j], b[k]) = 1`, with `a != b`.
pub fn exists_c(s: &OvInstance, a: u32, b: u32, idx: [u8; 3]) -> bool {
    a != b
        && idx.iter().all(|&h| bit(s, a, h))
        && maj3(bit(s, b, idx[0]), bit(s, b, idx[1]), bit(s, b, idx[2]))
}

/// Both vectors of the multiset are 1 on `i, j, k`.
pub fn exists_p(s: &OvInstance, a: u32, b: u32, idx: [u8; 3]) -> bool {
    idx.iter().all(|&h| bit(s, a, h) && bit(s, b, h))
}

/// `(a,b,c)` (in `T` or `Tp`) and `(a',b',i,j,k)` agree on `a, b`, and some
/// `h` in `{i, j, k}` has `b[h] = c[h] = 1`.
pub fn edge_tc(s: &OvInstance, t: &Triple, c: &Couple) -> bool {
    t.a == c.a && t.b == c.b && c.idx.iter().any(|&h| bit(s, t.b, h) && bit(s, t.c, h))
}

/// Same index triple, and the couple's first vector is in the pair.
pub fn edge_cp(c: &Couple, p: &Pair) -> bool {
    c.idx == p.idx && p.contains(c.a)
}

/// All three vectors of `t` are 1 at both `p1` and `p2`. Weight 3 in the
/// weighted graph (from `T`), weight 1 in the unweighted one (from `Tpp`).
pub fn edge_ti(s: &OvInstance, t: &Triple, i: &[u8; 5]) -> bool {
    [i[0], i[1]]
        .iter()
        .all(|&p| bit(s, t.a, p) && bit(s, t.b, p) && bit(s, t.c, p))
}

/// Same trailing index triple, and `a[p1] = b[p2] = 1` or `a[p2] = b[p1] = 1`.
pub fn edge_ip(s: &OvInstance, i: &[u8; 5], p: &Pair) -> bool {
    let (p1, p2) = (i[0], i[1]);
    i[2..] == p.idx
        && ((bit(s, p.a(), p1) && bit(s, p.b(), p2)) || (bit(s, p.a(), p2) && bit(s, p.b(), p1)))
}

/// The first two vectors of the `Tpp` vertex are 1 at the single index.
pub fn edge_ip_tpp(s: &OvInstance, ip: u8, t: &Triple) -> bool {
    bit(s, t.a, ip) && bit(s, t.b, ip)
}

/// Whether `u` exists as a vertex of the gadget for `s`.
pub fn vertex_exists(s: &OvInstance, flavor: Flavor, u: &VertexLabel) -> bool {
    let n = s.len() as u32;
    let l = s.dim() as u8;
    let in_dim = |idx: &[u8]| idx.iter().all(|&i| i < l);
    match *u {
        VertexLabel::T(t) => {
            t.a < n && t.b < n && t.c < n && t.a != t.b && t.b != t.c && t.a != t.c
        }
        VertexLabel::Tp(t) | VertexLabel::Tpp(t) => {
            flavor == Flavor::Unweighted && vertex_exists(s, flavor, &VertexLabel::T(t))
        }
        VertexLabel::C(c) => c.a < n && c.b < n && in_dim(&c.idx) && exists_c(s, c.a, c.b, c.idx),
        VertexLabel::P(p) => p.b() < n && in_dim(&p.idx) && exists_p(s, p.a(), p.b(), p.idx),
        VertexLabel::I(x) => in_dim(&x),
        VertexLabel::Ip(i) => flavor == Flavor::Unweighted && i < l,
    }
}

/// Weight of the edge `uv` prescribed by the construction, if any. Both
/// labels are assumed to exist.
pub fn edge_between(
    s: &OvInstance,
    flavor: Flavor,
    u: &VertexLabel,
    v: &VertexLabel,
) -> Option<u8> {
    use VertexLabel::*;
    if u == v {
        return None;
    }
    let unit = |cond: bool| cond.then_some(1);
    match (*u, *v) {
        (I(_), I(_)) | (Ip(_), Ip(_)) | (I(_), Ip(_)) | (Ip(_), I(_)) => Some(1),
        (C(x), C(y)) => unit(x.a == y.a && x.b == y.b),
        (T(t), C(c)) | (C(c), T(t)) | (Tp(t), C(c)) | (C(c), Tp(t)) => unit(edge_tc(s, &t, &c)),
        (C(c), P(p)) | (P(p), C(c)) => unit(edge_cp(&c, &p)),
        (T(t), I(i)) | (I(i), T(t)) if flavor == Flavor::Weighted => {
            edge_ti(s, &t, &i).then_some(3)
        }
        (Tpp(t), I(i)) | (I(i), Tpp(t)) => unit(edge_ti(s, &t, &i)),
        (I(i), P(p)) | (P(p), I(i)) => unit(edge_ip(s, &i, &p)),
        (T(x), Tp(y)) | (Tp(y), T(x)) | (Tp(y), Tpp(x)) | (Tpp(x), Tp(y)) => unit(x == y),
        (Ip(i), Tpp(t)) | (Tpp(t), Ip(i)) => unit(edge_ip_tpp(s, i, &t)),
        _ => None,
    }
}
