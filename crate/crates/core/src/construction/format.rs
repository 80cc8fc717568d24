//! Gadget graph text format.
//!
//! ```text
//! p gadget <flavor> <n> <l> <vertices> <edges>
//! v <id> <layer> <vector fields> <index fields>   (one per vertex, ids 0..)
//! e <u> <v> <w>                                   (u < v, sorted)
//! ```
//!
//! Lines starting with `#` are comments. Writer output round-trips exactly.

use std::io::{self, Write};

use super::{ConstructionError, Couple, Flavor, GadgetGraph, Layer, Pair, Triple, VertexLabel};

impl GadgetGraph {
    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(
            out,
            "p gadget {} {} {} {} {}",
            self.flavor,
            self.num_vectors,
            self.dim,
            self.num_vertices(),
            self.num_edges()
        )?;
        for (id, label) in self.labels.iter().enumerate() {
            writeln!(out, "v {id} {label}")?;
        }
        for (u, v, w) in self.csr.edges() {
            writeln!(out, "e {u} {v} {w}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.write_text(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }

    pub fn parse(text: &str) -> Result<Self, ConstructionError> {
        let err = |line: usize, msg: String| ConstructionError::Parse { line, msg };
        let mut header: Option<(Flavor, usize, usize, usize, usize)> = None;
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| -> Result<u64, ConstructionError> {
                s.parse::<u64>()
                    .map_err(|_| err(line_no, format!("bad number {s:?}")))
            };
            match fields[0] {
                "p" => {
                    if header.is_some() {
                        return Err(err(line_no, "duplicate header".into()));
                    }
                    let [_, "gadget", flavor, n, l, nv, ne] = fields.as_slice() else {
                        return Err(err(
                            line_no,
                            "expected \"p gadget <flavor> <n> <l> <vertices> <edges>\"".into(),
                        ));
                    };
                    let flavor = flavor.parse().map_err(|e| err(line_no, e))?;
                    header = Some((
                        flavor,
                        num(n)? as usize,
                        num(l)? as usize,
                        num(nv)? as usize,
                        num(ne)? as usize,
                    ));
                }
                "v" => {
                    let Some((_, _, _, nv, _)) = header else {
                        return Err(err(line_no, "vertex before header".into()));
                    };
                    if fields.len() < 3 {
                        return Err(err(line_no, "expected \"v <id> <layer> ...\"".into()));
                    }
                    let id = num(fields[1])? as usize;
                    if id != labels.len() || id >= nv {
                        return Err(err(line_no, format!("unexpected vertex id {id}")));
                    }
                    let layer = Layer::from_tag(fields[2])
                        .ok_or_else(|| err(line_no, format!("unknown layer {:?}", fields[2])))?;
                    let rest = fields[3..]
                        .iter()
                        .map(|s| num(s))
                        .collect::<Result<Vec<u64>, _>>()?;
                    labels.push(label_from_fields(layer, &rest).map_err(|m| err(line_no, m))?);
                }
                "e" => {
                    if header.is_none() {
                        return Err(err(line_no, "edge before header".into()));
                    }
                    let [_, u, v, w] = fields.as_slice() else {
                        return Err(err(line_no, "expected \"e <u> <v> <w>\"".into()));
                    };
                    let (u, v, w) = (num(u)?, num(v)?, num(w)?);
                    if u >= v || w > u8::MAX as u64 {
                        return Err(err(line_no, format!("bad edge {u} {v} {w}")));
                    }
                    edges.push((u as u32, v as u32, w as u8));
                }
                other => return Err(err(line_no, format!("unknown record {other:?}"))),
            }
        }
        let (flavor, n, l, nv, ne) = header.ok_or_else(|| err(0, "missing header".into()))?;
        if labels.len() != nv || edges.len() != ne {
            return Err(ConstructionError::Malformed(format!(
                "header declares {nv} vertices / {ne} edges, found {} / {}",
                labels.len(),
                edges.len()
            )));
        }
        let mut graph = GadgetGraph::from_parts(flavor, labels, &edges)?;
        if graph.num_vectors > n || graph.dim > l {
            return Err(ConstructionError::Malformed(format!(
                "labels use {} vectors and dimension {}, header says {n} and {l}",
                graph.num_vectors, graph.dim
            )));
        }
        graph.num_vectors = n;
        graph.dim = l;
        Ok(graph)
    }
}

fn label_from_fields(layer: Layer, f: &[u64]) -> Result<VertexLabel, String> {
    let want = match layer {
        Layer::T | Layer::Tp | Layer::Tpp => 3,
        Layer::C | Layer::P | Layer::I => 5,
        Layer::Ip => 1,
    };
    if f.len() != want {
        return Err(format!("{layer} takes {want} fields, got {}", f.len()));
    }
    let vid = |x: u64| u32::try_from(x).map_err(|_| format!("vector id {x} out of range"));
    let ix = |x: u64| u8::try_from(x).map_err(|_| format!("index {x} out of range"));
    Ok(match layer {
        Layer::T | Layer::Tp | Layer::Tpp => {
            let t = Triple {
                a: vid(f[0])?,
                b: vid(f[1])?,
                c: vid(f[2])?,
            };
            match layer {
                Layer::T => VertexLabel::T(t),
                Layer::Tp => VertexLabel::Tp(t),
                _ => VertexLabel::Tpp(t),
            }
        }
        Layer::C => VertexLabel::C(Couple {
            a: vid(f[0])?,
            b: vid(f[1])?,
            idx: [ix(f[2])?, ix(f[3])?, ix(f[4])?],
        }),
        Layer::P => {
            if f[0] > f[1] {
                return Err("pair fields must be written in increasing order".into());
            }
            VertexLabel::P(Pair::new(
                vid(f[0])?,
                vid(f[1])?,
                [ix(f[2])?, ix(f[3])?, ix(f[4])?],
            ))
        }
        Layer::I => VertexLabel::I([ix(f[0])?, ix(f[1])?, ix(f[2])?, ix(f[3])?, ix(f[4])?]),
        Layer::Ip => VertexLabel::Ip(ix(f[0])?),
    })
}
