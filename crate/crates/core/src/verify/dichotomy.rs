use std::fmt;

use serde::Serialize;

use super::{
    certify_completeness_paths, check_neighborhood_lemmas, check_structural_observations,
    require_same_source, Distance, LemmaResult, ObservationOptions, ObservationReport, Verdict,
    VerifyError,
};
use crate::construction::{build, BuildOptions, Flavor, GadgetGraph, Triple, VertexLabel};
use crate::graph::{distance, exact_diameter};
use crate::ov::{classify, find_orthogonal_tuple, ClassTag, OvInstance};

/// Diameter bound on instances without an orthogonal quadruple.
pub const UPPER: u32 = 4;
/// Distance bound across a distinct orthogonal quadruple.
pub const LOWER: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub build: BuildOptions,
    pub certify: bool,
    pub lemmas: bool,
    /// Structural observations on the weighted gadget; `None` skips them.
    pub observations: Option<ObservationOptions>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            build: BuildOptions::default(),
            certify: true,
            lemmas: true,
            observations: Some(ObservationOptions::default()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlavorReport {
    pub instance_class: ClassTag,
    pub flavor: Flavor,
    pub vertices: usize,
    pub edges: usize,
    pub diameter: Option<u32>,
    pub witness_pair: Option<[String; 2]>,
    pub witness_distance: Option<Distance>,
    pub lemmas: Vec<LemmaResult>,
    pub certified_pairs: Option<u64>,
    pub max_certified_length: Option<u32>,
    pub certification_failures: Vec<String>,
    pub observations: Option<ObservationReport>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport {
    pub instance_class: ClassTag,
    pub witness: Option<[usize; 4]>,
    pub n: usize,
    pub l: usize,
    pub note: Option<String>,
    pub reports: Vec<FlavorReport>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HardnessResult {
    pub witness: [usize; 4],
    pub from: String,
    pub to: String,
    pub distance: Distance,
    pub holds: bool,
}

const DEGENERATE_NOTE: &str = "orthogonal tuples exist only with repeated vectors; \
     they are found by the cubic search for an orthogonal triple, so no graph property is asserted";

/// Builds the requested gadgets and checks the claim that applies to the
/// instance's class: diameter at most 4 without an orthogonal quadruple,
/// distance at least 7 across a distinct one.
pub fn check_dichotomy(
    instance: &OvInstance,
    flavors: &[Flavor],
    options: &VerifyOptions,
) -> Result<DichotomyReport, VerifyError> {
    if instance.len() < 3 {
        return Err(VerifyError::Precondition(format!(
            "the gadget needs at least 3 vectors, got {}",
            instance.len()
        )));
    }
    let class = classify(instance);
    let mut report = DichotomyReport {
        instance_class: class.tag,
        witness: class.witness,
        n: instance.len(),
        l: instance.dim(),
        note: None,
        reports: Vec::new(),
        verdict: Verdict::Pass,
    };
    if class.tag == ClassTag::Degenerate {
        report.note = Some(DEGENERATE_NOTE.to_string());
        return Ok(report);
    }
    for &flavor in flavors {
        let graph = build(instance, flavor, &options.build)?;
        let fr = match class.tag {
            ClassTag::None => none_report(&graph, instance, options)?,
            ClassTag::Distinct => {
                let h = check_hardness_witness(&graph, instance, class.witness.unwrap())?;
                FlavorReport {
                    witness_pair: Some([h.from, h.to]),
                    witness_distance: Some(h.distance),
                    verdict: Verdict::from_bool(h.holds),
                    ..empty_report(&graph, class.tag)
                }
            }
            ClassTag::Degenerate => unreachable!(),
        };
        report.reports.push(fr);
    }
    report.verdict = Verdict::from_bool(report.reports.iter().all(|r| r.verdict.is_pass()));
    Ok(report)
}

fn empty_report(graph: &GadgetGraph, tag: ClassTag) -> FlavorReport {
    FlavorReport {
        instance_class: tag,
        flavor: graph.flavor(),
        vertices: graph.num_vertices(),
        edges: graph.num_edges(),
        diameter: None,
        witness_pair: None,
        witness_distance: None,
        lemmas: Vec::new(),
        certified_pairs: None,
        max_certified_length: None,
        certification_failures: Vec::new(),
        observations: None,
        verdict: Verdict::Pass,
    }
}

fn none_report(
    graph: &GadgetGraph,
    instance: &OvInstance,
    options: &VerifyOptions,
) -> Result<FlavorReport, VerifyError> {
    let mut r = empty_report(graph, ClassTag::None);
    let diam = exact_diameter(graph.csr())?;
    let (u, v) = diam.witness;
    r.diameter = Some(diam.value);
    r.witness_pair = Some([graph.label(u).to_string(), graph.label(v).to_string()]);
    r.witness_distance = Some(Distance::Finite(diam.value));
    let mut ok = diam.value <= UPPER;
    if options.lemmas {
        r.lemmas = check_neighborhood_lemmas(graph, instance)?;
        ok &= r.lemmas.iter().all(|l| l.holds);
    }
    if options.certify {
        let cert = certify_completeness_paths(graph, instance)?;
        ok &= cert.holds() && cert.max_certified_length <= UPPER;
        r.certified_pairs = Some(cert.certified_pairs);
        r.max_certified_length = Some(cert.max_certified_length);
        r.certification_failures = cert.failures;
    }
    if let (Some(obs), Flavor::Weighted) = (options.observations, graph.flavor()) {
        let o = check_structural_observations(graph, &obs)?;
        ok &= o.holds;
        r.observations = Some(o);
    }
    r.verdict = Verdict::from_bool(ok);
    Ok(r)
}

/// Distance between `(a,b,c)` and `(d,c,b)` in `T` for a distinct
/// orthogonal quadruple `(a,b,c,d)`; it must be at least 7.
pub fn check_hardness_witness(
    graph: &GadgetGraph,
    instance: &OvInstance,
    witness: [usize; 4],
) -> Result<HardnessResult, VerifyError> {
    require_same_source(graph, instance)?;
    let [a, b, c, d] = witness;
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| witness[i] != witness[j]));
    if !distinct || witness.iter().any(|&x| x >= instance.len()) {
        return Err(VerifyError::Precondition(format!(
            "{witness:?} is not a quadruple of distinct vector ids"
        )));
    }
    if !instance.ids_orthogonal(&witness) {
        return Err(VerifyError::Precondition(format!(
            "vectors {witness:?} are not orthogonal"
        )));
    }
    let (a, b, c, d) = (a as u32, b as u32, c as u32, d as u32);
    let from = VertexLabel::T(Triple { a, b, c });
    let to = VertexLabel::T(Triple { a: d, b: c, c: b });
    let missing = |l: &VertexLabel| VerifyError::Precondition(format!("{l} is not in the graph"));
    let u = graph.find(&from).ok_or_else(|| missing(&from))?;
    let v = graph.find(&to).ok_or_else(|| missing(&to))?;
    let dist = Distance::from_option(distance(graph.csr(), u, v)?);
    Ok(HardnessResult {
        witness,
        from: from.to_string(),
        to: to.to_string(),
        distance: dist,
        holds: dist.at_least(LOWER),
    })
}

/// Decides 4-OV with repetition: an orthogonal pair or triple (repetition
/// allowed) is found by brute force; otherwise the answer is whether the
/// gadget's diameter exceeds 4.
pub fn decide_4ov_via_reduction(
    instance: &OvInstance,
    flavor: Flavor,
    options: &BuildOptions,
) -> Result<bool, VerifyError> {
    if find_orthogonal_tuple(instance, 3, false)?.is_some() {
        return Ok(true);
    }
    // Without an orthogonal triple, a quadruple needs 4 distinct vectors.
    if instance.len() < 4 {
        return Ok(false);
    }
    let graph = build(instance, flavor, options)?;
    Ok(exact_diameter(graph.csr())?.value > UPPER)
}

impl fmt::Display for DichotomyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class {}", self.instance_class)?;
        if let Some(w) = self.witness {
            write!(f, "  witness {w:?}")?;
        }
        writeln!(f, "  n {}  l {}", self.n, self.l)?;
        if let Some(note) = &self.note {
            writeln!(f, "note: {note}")?;
        }
        for r in &self.reports {
            writeln!(
                f,
                "[{}] {} vertices, {} edges",
                r.flavor, r.vertices, r.edges
            )?;
            if let Some(d) = r.diameter {
                writeln!(f, "  diameter {d} (bound {UPPER})")?;
            }
            if let (Some([x, y]), Some(d)) = (&r.witness_pair, r.witness_distance) {
                writeln!(f, "  d({x}, {y}) = {d}")?;
            }
            for l in &r.lemmas {
                writeln!(
                    f,
                    "  {}: {}",
                    l.name,
                    if l.holds { "holds" } else { "FAILS" }
                )?;
            }
            if let (Some(pairs), Some(len)) = (r.certified_pairs, r.max_certified_length) {
                writeln!(f, "  certified pairs {pairs}, longest certified path {len}")?;
            }
            for msg in &r.certification_failures {
                writeln!(f, "  certification failure: {msg}")?;
            }
            if let Some(o) = &r.observations {
                for c in [&o.p_to_t, &o.within_tc] {
                    writeln!(
                        f,
                        "  {}: {} ({} checked{})",
                        c.name,
                        if c.holds { "holds" } else { "FAILS" },
                        c.checked,
                        if o.exhaustive {
                            ", exhaustive"
                        } else {
                            ", sampled"
                        }
                    )?;
                }
            }
            writeln!(f, "  verdict {}", r.verdict)?;
        }
        write!(f, "verdict {}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: &[&str]) -> OvInstance {
        OvInstance::from_strs(rows).unwrap()
    }

    const BOTH: [Flavor; 2] = [Flavor::Weighted, Flavor::Unweighted];

    #[test]
    fn none_instance_passes_with_small_diameter() {
        let r = check_dichotomy(
            &inst(&["111", "110", "101"]),
            &BOTH,
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(r.instance_class, ClassTag::None);
        assert_eq!(r.reports.len(), 2);
        for fr in &r.reports {
            assert!(fr.diameter.unwrap() <= 4);
            assert_eq!(fr.max_certified_length, Some(4));
        }
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn distinct_instance_has_far_witness() {
        let s = inst(&["0111", "1011", "1101", "1110"]);
        let r = check_dichotomy(&s, &BOTH, &VerifyOptions::default()).unwrap();
        assert_eq!(r.instance_class, ClassTag::Distinct);
        for fr in &r.reports {
            assert!(fr.witness_distance.unwrap().at_least(7), "{fr:?}");
        }
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn degenerate_instance_gets_a_note() {
        let r = check_dichotomy(
            &inst(&["110", "101", "011"]),
            &BOTH,
            &VerifyOptions::default(),
        )
        .unwrap();
        assert_eq!(r.instance_class, ClassTag::Degenerate);
        assert!(r.note.is_some());
        assert!(r.reports.is_empty());
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn hardness_preconditions() {
        let s = inst(&["111", "110", "101", "100"]);
        let g = build(&s, Flavor::Weighted, &BuildOptions::default()).unwrap();
        assert!(matches!(
            check_hardness_witness(&g, &s, [0, 1, 2, 3]),
            Err(VerifyError::Precondition(_))
        ));
        assert!(check_hardness_witness(&g, &s, [0, 0, 1, 2]).is_err());
    }

    #[test]
    fn decide_examples() {
        let opts = BuildOptions::default();
        for flavor in BOTH {
            assert!(
                !decide_4ov_via_reduction(&inst(&["111", "110", "101"]), flavor, &opts).unwrap()
            );
            assert!(decide_4ov_via_reduction(
                &inst(&["0111", "1011", "1101", "1110"]),
                flavor,
                &opts
            )
            .unwrap());
            assert!(decide_4ov_via_reduction(&inst(&["10", "01"]), flavor, &opts).unwrap());
        }
    }

    #[test]
    fn report_serializes_in_declared_order() {
        let r = check_dichotomy(
            &inst(&["111", "110", "101"]),
            &[Flavor::Weighted],
            &VerifyOptions::default(),
        )
        .unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let keys = [
            "\"instance_class\"",
            "\"witness\"",
            "\"n\"",
            "\"l\"",
            "\"note\"",
            "\"reports\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{json}");
    }
}
