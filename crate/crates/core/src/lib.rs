//! Network reliability assessment.
//!
//! Exact all-terminal reliability for small graphs, bond-percolation
//! thresholds for degree-distribution models, and the threshold-based
//! reliability assessment `Rel_c(t)` with lifetime estimates, backed by
//! Monte Carlo oracles.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run -p netrel --example k4_exact
//! cargo run -p netrel --example inhomogeneous_lifetime
//! ```

pub mod assessment;
pub mod cli;
pub mod degree;
pub mod error;
pub mod exact;
pub mod graph;
pub mod lifetime;
pub mod percolation;
pub mod scenario;
pub mod simulation;
pub mod special;

pub use assessment::{
    critical_edge_count, le_cam_bound, node_voting_reliability, poisson_binomial_pmf, rel_c_heterogeneous,
    rel_c_homogeneous, rel_c_poisson_approx, AssessmentConfig, PoissonApproximation,
};
pub use degree::{DegreeDistribution, Moments};
pub use error::{Error, Result};
pub use exact::{
    f_coefficients, reliability_factoring, reliability_heterogeneous, reliability_homogeneous, FCoefficients,
};
pub use graph::{parse_edge_list, EdgeList, EdgeSubset, Graph};
pub use lifetime::{
    evaluate_profile, failure_density, lifetime_integral, lifetime_threshold_crossing, reliability_curve, EdgeLaw,
    EdgeReliabilityProfile, ReliabilityCurve, TimeGrid,
};
pub use percolation::{
    bond_threshold, solve_fixed_point, threshold_power_cutoff, threshold_truncated, threshold_zeta,
    ThresholdReport, ThresholdRule,
};
pub use special::{polylog, zeta};

/// Version of the JSON output layout, echoed in every emitted document.
pub const SCHEMA_VERSION: &str = "1";
