//! Combines the odd-cycle and polytope conditions into a verdict on the
//! H-property, and assembles the full report printed by `check`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ext::{analyze_resolutions, ExtVerdict, DEFAULT_RESOLUTIONS, DEFAULT_SUBSAMPLES};
use crate::matrix::Matrix;
use crate::model::GeneralGraphon;
use crate::polytope::{step_membership, MembershipVerdict, Status};
use crate::scalar::Scalar;
use crate::skeleton::SkeletonGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// Odd cycle present and the concentration vector is interior.
    HProperty,
    /// No odd cycle, or the concentration vector lies outside the polytope.
    NoHProperty,
    /// Odd cycle present but the concentration vector is on the boundary.
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    StepExact,
    GeneralApproximate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub condition_a: bool,
    pub condition_b_status: Status,
    pub classification: Classification,
    pub basis: Basis,
}

impl TheoremVerdict {
    pub fn new(condition_a: bool, condition_b_status: Status, basis: Basis) -> Self {
        let classification = match (condition_a, condition_b_status) {
            (false, _) | (_, Status::Outside) => Classification::NoHProperty,
            (true, Status::Interior) => Classification::HProperty,
            (true, Status::Boundary) => Classification::Undetermined,
        };
        Self {
            condition_a,
            condition_b_status,
            classification,
            basis,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::HProperty => "YES",
            Classification::NoHProperty => "NO",
            Classification::Undetermined => "UNDETERMINED (boundary)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub resolutions: Vec<usize>,
    pub subsamples: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            resolutions: DEFAULT_RESOLUTIONS.to_vec(),
            subsamples: DEFAULT_SUBSAMPLES,
        }
    }
}

/// Skeleton-level facts of a step-graphon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct StepReport<T: Scalar> {
    /// Canonical skeleton edges, 1-indexed.
    pub skeleton_edges: Vec<(usize, usize)>,
    /// Incidence matrix columns, as display strings.
    pub incidence_columns: Vec<Vec<String>>,
    pub concentration_vector: Vec<String>,
    pub has_odd_cycle: bool,
    pub all_components_nonbipartite: bool,
    pub membership: MembershipVerdict<T>,
}

impl<T: Scalar> StepReport<T> {
    /// The two odd-cycle readings can only differ on disconnected skeletons.
    pub fn readings_disagree(&self) -> bool {
        self.has_odd_cycle != self.all_components_nonbipartite
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CheckReport<T: Scalar> {
    pub graphon_kind: String,
    pub step: Option<StepReport<T>>,
    /// Grid verdicts, always computed in floating point.
    pub extended: Vec<ExtVerdict<f64>>,
    pub verdict: TheoremVerdict,
}

pub fn step_report<T: Scalar>(g: &crate::model::StepGraphon) -> StepReport<T> {
    let s = SkeletonGraph::from_step_graphon(g);
    let b: Matrix<T> = s.incidence_matrix();
    StepReport {
        skeleton_edges: s.edges().iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
        incidence_columns: (0..b.cols())
            .map(|j| b.column(j).iter().map(ToString::to_string).collect())
            .collect(),
        concentration_vector: g
            .concentration_vector()
            .entries()
            .iter()
            .map(|v| T::from_rational(v).to_string())
            .collect(),
        has_odd_cycle: s.has_odd_cycle(),
        all_components_nonbipartite: s.all_components_nonbipartite(),
        membership: step_membership(g),
    }
}

/// Exact step verdict when the graphon is piecewise constant, otherwise the
/// finest-resolution grid verdict labelled approximate.
pub fn classify_graphon<T: Scalar>(
    g: &GeneralGraphon,
    options: &ClassifyOptions,
) -> TheoremVerdict {
    match g.as_step() {
        Some(s) => {
            let odd = SkeletonGraph::from_step_graphon(&s).has_odd_cycle();
            TheoremVerdict::new(odd, step_membership::<T>(&s).status, Basis::StepExact)
        }
        None => general_verdict(&analyze_resolutions::<f64>(
            g,
            &options.resolutions,
            options.subsamples,
        )),
    }
}

fn general_verdict(extended: &[ExtVerdict<f64>]) -> TheoremVerdict {
    let finest = extended
        .iter()
        .max_by_key(|v| v.resolution)
        .expect("at least one resolution is required for general graphons");
    TheoremVerdict::new(finest.a_ext, finest.b_ext_status, Basis::GeneralApproximate)
}

/// Everything `check` reports. `T` is the scalar of the step-graphon
/// certificate. The grid conditions are evaluated at every requested
/// resolution in `f64` (the grid LPs have up to `N (N + 1) / 2` columns), also
/// for step inputs, where they serve as a cross-check.
pub fn run_check<T: Scalar>(g: &GeneralGraphon, options: &ClassifyOptions) -> CheckReport<T> {
    let extended: Vec<ExtVerdict<f64>> =
        analyze_resolutions(g, &options.resolutions, options.subsamples);
    let step = g.as_step().map(|s| step_report::<T>(&s));
    let verdict = match &step {
        Some(r) => TheoremVerdict::new(r.has_odd_cycle, r.membership.status, Basis::StepExact),
        None => general_verdict(&extended),
    };
    CheckReport {
        graphon_kind: g.kind().to_owned(),
        step,
        extended,
        verdict,
    }
}
