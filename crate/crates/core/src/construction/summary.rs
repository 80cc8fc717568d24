use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Flavor, GadgetGraph, Layer};

/// An unordered pair of layers, stored with the smaller layer first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeClass(Layer, Layer);

impl EdgeClass {
    pub fn new(x: Layer, y: Layer) -> Self {
        EdgeClass(x.min(y), x.max(y))
    }

    pub fn layers(self) -> (Layer, Layer) {
        (self.0, self.1)
    }

    /// Every edge class a graph of this flavor can contain.
    pub fn all(flavor: Flavor) -> Vec<EdgeClass> {
        use Layer::*;
        let mut v = vec![
            EdgeClass::new(I, I),
            EdgeClass::new(C, C),
            EdgeClass::new(T, C),
            EdgeClass::new(C, P),
            EdgeClass::new(I, P),
        ];
        match flavor {
            Flavor::Weighted => v.push(EdgeClass::new(T, I)),
            Flavor::Unweighted => v.extend([
                EdgeClass::new(T, Tp),
                EdgeClass::new(Tp, Tpp),
                EdgeClass::new(C, Tp),
                EdgeClass::new(I, Tpp),
                EdgeClass::new(Tpp, Ip),
                EdgeClass::new(Ip, Ip),
                EdgeClass::new(I, Ip),
            ]),
        }
        v.sort();
        v
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl Serialize for EdgeClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn layers_of(flavor: Flavor) -> &'static [Layer] {
    match flavor {
        Flavor::Weighted => &Layer::ALL[..4],
        Flavor::Unweighted => &Layer::ALL,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identity {
    pub name: String,
    pub expected: u64,
    pub actual: u64,
    pub holds: bool,
}

impl Identity {
    fn new(name: &str, expected: u64, actual: u64) -> Self {
        Identity {
            name: name.to_string(),
            expected,
            actual,
            holds: expected == actual,
        }
    }
}

/// Per-layer vertex counts and per-class edge counts, with the closed-form
/// size identities checked against them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountSummary {
    pub flavor: Flavor,
    pub n: usize,
    pub l: usize,
    pub vertices: BTreeMap<Layer, u64>,
    pub edges: BTreeMap<EdgeClass, u64>,
    pub total_vertices: u64,
    pub total_edges: u64,
    pub identities: Vec<Identity>,
}

impl CountSummary {
    /// Fills absent layers and edge classes of `flavor` with zero.
    pub(crate) fn from_maps(
        flavor: Flavor,
        n: usize,
        l: usize,
        mut vertices: BTreeMap<Layer, u64>,
        mut edges: BTreeMap<EdgeClass, u64>,
    ) -> Self {
        for &layer in layers_of(flavor) {
            vertices.entry(layer).or_insert(0);
        }
        for class in EdgeClass::all(flavor) {
            edges.entry(class).or_insert(0);
        }
        let (nn, ll) = (n as u64, l as u64);
        let t = vertices[&Layer::T];
        let mut identities = vec![
            Identity::new(
                "|T| = n(n-1)(n-2)",
                nn * nn.saturating_sub(1) * nn.saturating_sub(2),
                t,
            ),
            Identity::new("|I| = l^5", ll.pow(5), vertices[&Layer::I]),
        ];
        if flavor == Flavor::Unweighted {
            identities.push(Identity::new("|Tp| = |T|", t, vertices[&Layer::Tp]));
            identities.push(Identity::new("|Tpp| = |T|", t, vertices[&Layer::Tpp]));
            identities.push(Identity::new("|Ip| = l", ll, vertices[&Layer::Ip]));
        }
        CountSummary {
            flavor,
            n,
            l,
            total_vertices: vertices.values().sum(),
            total_edges: edges.values().sum(),
            vertices,
            edges,
            identities,
        }
    }

    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

impl fmt::Display for CountSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "flavor {}  n {}  l {}", self.flavor, self.n, self.l)?;
        for (layer, count) in &self.vertices {
            writeln!(f, "|{layer}| {count}")?;
        }
        for (class, count) in &self.edges {
            writeln!(f, "E({class}) {count}")?;
        }
        writeln!(
            f,
            "vertices {}  edges {}",
            self.total_vertices, self.total_edges
        )?;
        for id in &self.identities {
            writeln!(
                f,
                "{}: {} vs {} {}",
                id.name,
                id.expected,
                id.actual,
                if id.holds { "ok" } else { "MISMATCH" }
            )?;
        }
        Ok(())
    }
}

/// Counts taken from the materialized graph.
pub fn count_summary(graph: &GadgetGraph) -> CountSummary {
    let mut vertices = BTreeMap::new();
    for &layer in layers_of(graph.flavor()) {
        vertices.insert(layer, graph.layer_range(layer).len() as u64);
    }
    let mut edges: BTreeMap<EdgeClass, u64> = BTreeMap::new();
    for (u, v, _) in graph.csr().edges() {
        *edges
            .entry(EdgeClass::new(graph.layer_of(u), graph.layer_of(v)))
            .or_insert(0) += 1;
    }
    CountSummary::from_maps(
        graph.flavor(),
        graph.num_vectors(),
        graph.dim(),
        vertices,
        edges,
    )
}
