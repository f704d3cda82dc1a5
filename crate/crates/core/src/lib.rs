//! Deciding, certifying and simulating the Hamiltonian-decomposition
//! property (H-property) of graphons.
//!
//! A graphon has the H-property when the directed version of an `n`-node
//! sample admits, with probability tending to one, a set of vertex-disjoint
//! directed cycles covering every vertex. For step-graphons this is governed by
//! two checkable conditions: the skeleton graph has an odd cycle, and the
//! concentration vector lies in the relative interior of the edge polytope.
//! General graphons are handled through grid discretizations of the same
//! conditions, and every claim can be probed empirically by sampling.
//!
//! The linear-algebra layer is generic over [`Scalar`]; [`Rational`] gives
//! exact certificates, `f64` a fast tolerance-based mode.

pub mod classify;
pub mod error;
pub mod ext;
pub mod graph;
pub mod hamdec;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod model;
pub mod montecarlo;
pub mod polytope;
pub mod random;
pub mod sampler;
pub mod scalar;
pub mod skeleton;

pub use classify::{
    classify_graphon, run_check, Basis, CheckReport, Classification, ClassifyOptions,
    TheoremVerdict,
};
pub use error::{Error, Result};
pub use ext::{
    analyze_resolution, analyze_resolutions, check_a_ext, check_b_ext, discretize_support,
    mu_sigma, phi_discrete, ExtVerdict, SupportPattern,
};
pub use graph::{directify_edges, parse_graph, DirectedGraph, GraphFile, SampledGraph};
pub use hamdec::{
    brute_force_hd, decide, has_hamiltonian_decomposition, max_bipartite_matching,
    validate_decomposition, Decision, HamiltonianDecomposition, Matching,
};
pub use lp::{lp_max_min_coefficient, LpOutcome};
pub use matrix::Matrix;
pub use model::{
    validate_step_graphon, ConcentrationVector, Family, GeneralGraphon, Partition, StepGraphon,
};
pub use montecarlo::{run_experiment, wilson_interval, ExperimentReport, ExperimentRow};
pub use polytope::{polytope_membership, step_membership, MembershipVerdict, Status};
pub use sampler::sample_graph;
pub use scalar::Scalar;
pub use skeleton::SkeletonGraph;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type ExactMatrix = Matrix<Rational>;
pub type FloatMatrix = Matrix<f64>;
pub type ExactVerdict = MembershipVerdict<Rational>;
pub type FloatVerdict = MembershipVerdict<f64>;
pub type ExactExtVerdict = ExtVerdict<Rational>;
pub type FloatExtVerdict = ExtVerdict<f64>;
pub type ExactCheckReport = CheckReport<Rational>;
pub type FloatCheckReport = CheckReport<f64>;
pub type ExactLpOutcome = LpOutcome<Rational>;
