//! Executable checks of the gap behaviour of the gadget graphs: the
//! diameter dichotomy, explicit short-path certificates, neighborhood
//! inclusions around the index layers, and structural observations used by
//! the lower-bound argument.

mod certify;
mod dichotomy;
mod lemmas;
mod observations;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::construction::ConstructionError;
use crate::graph::GraphError;
use crate::ov::{classify, ClassTag, OvError, OvInstance};

pub use certify::{certify_completeness_paths, CertificateReport};
pub use dichotomy::{
    check_dichotomy, check_hardness_witness, decide_4ov_via_reduction, DichotomyReport,
    FlavorReport, HardnessResult, VerifyOptions, LOWER, UPPER,
};
pub use lemmas::{check_neighborhood_lemmas, LemmaResult};
pub use observations::{
    check_structural_observations, ObservationCheck, ObservationOptions, ObservationReport,
};

/// JSON schema of [`DichotomyReport`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/dichotomy_report.schema.json");

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ov(#[from] OvError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        })
    }
}

/// A shortest-path distance; serialized as a number or `"unreachable"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn from_option(d: Option<u32>) -> Self {
        d.map_or(Distance::Unreachable, Distance::Finite)
    }

    /// Unreachable counts as larger than every finite bound.
    pub fn at_least(self, bound: u32) -> bool {
        match self {
            Distance::Finite(d) => d >= bound,
            Distance::Unreachable => true,
        }
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("unreachable"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Unreachable => s.serialize_str("unreachable"),
        }
    }
}

pub(crate) fn require_none_class(instance: &OvInstance) -> Result<(), VerifyError> {
    let class = classify(instance);
    if class.tag != ClassTag::None {
        return Err(VerifyError::Precondition(format!(
            "instance is {}, these checks need an instance without orthogonal quadruples",
            class.tag
        )));
    }
    Ok(())
}

pub(crate) fn require_same_source(
    graph: &crate::construction::GadgetGraph,
    instance: &OvInstance,
) -> Result<(), VerifyError> {
    if graph.num_vectors() != instance.len() || graph.dim() != instance.dim() {
        return Err(VerifyError::Precondition(format!(
            "graph was built from {} vectors of dimension {}, instance has {} of dimension {}",
            graph.num_vectors(),
            graph.dim(),
            instance.len(),
            instance.dim()
        )));
    }
    Ok(())
}
