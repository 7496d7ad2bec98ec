//! Bond-percolation thresholds and the giant-component fixed point.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::exact::check_probability;
use crate::special::{polylog, zeta};

/// Outcome of a threshold computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdReport {
    /// Critical edge-occupation probability.
    pub p_c: f64,
    /// Critical removed fraction `1 - p_c`.
    pub g_c: f64,
    /// True when `p_c = 0` because `<k^2>` diverges.
    pub vanishing_threshold: bool,
    /// `<k^2> / <k> > 2`.
    pub molloy_reed_satisfied: bool,
    pub second_moment_divergent: bool,
    /// `0 < p_c < 1`.
    pub meaningful: bool,
}

impl ThresholdReport {
    /// Report for a finite `p_c = 1 / (ratio - 1)` with `ratio = <k^2>/<k>`.
    fn finite(p_c: f64, ratio: f64) -> Self {
        ThresholdReport {
            p_c,
            g_c: 1.0 - p_c,
            vanishing_threshold: false,
            molloy_reed_satisfied: ratio > 2.0,
            second_moment_divergent: false,
            meaningful: p_c > 0.0 && p_c < 1.0,
        }
    }

    fn vanishing() -> Self {
        ThresholdReport {
            p_c: 0.0,
            g_c: 1.0,
            vanishing_threshold: true,
            molloy_reed_satisfied: true,
            second_moment_divergent: true,
            meaningful: false,
        }
    }

    /// A user-supplied threshold value.
    pub fn explicit(p_c: f64) -> Result<Self> {
        check_probability("p_c", p_c)?;
        Ok(ThresholdReport::finite(p_c, 1.0 / p_c + 1.0))
    }
}

/// `p_c = <k> / (<k^2> - <k>)`, or zero when `<k^2>` diverges.
pub fn bond_threshold(d: &DegreeDistribution) -> Result<ThresholdReport> {
    let m = d.moments()?;
    if m.mean_divergent {
        return Err(Error::Divergent("mean degree diverges".into()));
    }
    if m.mean <= 0.0 {
        return Err(Error::ZeroMean);
    }
    if m.second_moment_divergent {
        return Ok(ThresholdReport::vanishing());
    }
    if m.second_moment <= m.mean {
        return Err(Error::NoGiantComponent { mean: m.mean, second: m.second_moment });
    }
    let p_c = m.mean / (m.second_moment - m.mean);
    Ok(ThresholdReport::finite(p_c, m.second_moment / m.mean))
}

/// Closed form for the exponentially cut-off power law:
/// `Li_{g-1}(y) / (Li_{g-2}(y) - Li_{g-1}(y))` with `y = e^(-1/kappa)`.
pub fn threshold_power_cutoff(gamma: f64, kappa: f64) -> Result<ThresholdReport> {
    DegreeDistribution::power_law_cutoff(gamma, kappa)?;
    let y = (-1.0 / kappa).exp();
    let first = polylog(gamma - 1.0, y)?;
    let second = polylog(gamma - 2.0, y)?;
    if second <= first {
        return Err(Error::NoGiantComponent { mean: first, second });
    }
    Ok(ThresholdReport::finite(first / (second - first), second / first))
}

/// `zeta(g-1) / (zeta(g-2) - zeta(g-1))` for `gamma > 3`; zero for `2 < gamma <= 3`.
pub fn threshold_zeta(gamma: f64) -> Result<ThresholdReport> {
    if gamma.is_nan() || gamma <= 2.0 {
        return Err(Error::Divergent(format!("mean degree diverges for gamma = {gamma} <= 2")));
    }
    if gamma <= 3.0 {
        return Ok(ThresholdReport::vanishing());
    }
    let first = zeta(gamma - 1.0)?;
    let second = zeta(gamma - 2.0)?;
    Ok(ThresholdReport::finite(first / (second - first), second / first))
}

/// Continuum threshold for `p_k = c k^-gamma` on `[k_min, k_max]`:
///
/// * `2 < gamma < 3`: `1 / ((g-2)/(3-g) k_min^(g-2) k_max^(3-g) - 1)`
/// * `gamma > 3`: `1 / ((g-2)/(g-3) k_min - 1)`
pub fn threshold_truncated(gamma: f64, k_min: usize, k_max: usize) -> Result<ThresholdReport> {
    DegreeDistribution::truncated_power_law(gamma, k_min, k_max)?;
    if gamma <= 2.0 || gamma == 3.0 {
        return Err(Error::InvalidParameter(format!(
            "no truncated power-law threshold formula for gamma = {gamma}; need 2 < gamma < 3 or gamma > 3"
        )));
    }
    let (kmin, kmax) = (k_min as f64, k_max as f64);
    let ratio = if gamma < 3.0 {
        (gamma - 2.0) / (3.0 - gamma) * kmin.powf(gamma - 2.0) * kmax.powf(3.0 - gamma)
    } else {
        (gamma - 2.0) / (gamma - 3.0) * kmin
    };
    let denom = ratio - 1.0;
    if denom <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "degenerate support: threshold denominator {denom} is not positive"
        )));
    }
    Ok(ThresholdReport::finite(1.0 / denom, ratio))
}

/// The family-specific closed form where one exists, else [`bond_threshold`].
pub fn closed_form_threshold(d: &DegreeDistribution) -> Result<ThresholdReport> {
    match *d {
        DegreeDistribution::PowerLawCutoff { gamma, kappa } => threshold_power_cutoff(gamma, kappa),
        DegreeDistribution::Zeta { gamma } => threshold_zeta(gamma),
        DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max } => {
            threshold_truncated(gamma, k_min, k_max)
        }
        _ => bond_threshold(d),
    }
}

/// How `p_c` is chosen for a reliability assessment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdRule {
    /// `<k> / (<k^2> - <k>)` from the degree moments.
    Moment,
    /// `1 / <k>`, the rule for binomial random graphs.
    MeanInverse,
    /// Family-specific closed form of the supplied distribution.
    Formula,
    /// A fixed value.
    Value(f64),
}

impl ThresholdRule {
    pub fn resolve(&self, d: &DegreeDistribution) -> Result<ThresholdReport> {
        match *self {
            ThresholdRule::Moment => bond_threshold(d),
            ThresholdRule::MeanInverse => {
                let mean = d.mean()?;
                let p_c = 1.0 / mean;
                let m = d.moments()?;
                let mut report = ThresholdReport::finite(p_c, m.second_moment / m.mean);
                report.second_moment_divergent = m.second_moment_divergent;
                Ok(report)
            }
            ThresholdRule::Formula => closed_form_threshold(d),
            ThresholdRule::Value(v) => ThresholdReport::explicit(v),
        }
    }
}

impl FromStr for ThresholdRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "moment" => Ok(ThresholdRule::Moment),
            "mean-inverse" => Ok(ThresholdRule::MeanInverse),
            "formula" => Ok(ThresholdRule::Formula),
            _ => {
                let value = s.strip_prefix("value:").ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "unknown threshold rule '{s}'; expected moment, mean-inverse, formula or value:<x>"
                    ))
                })?;
                let v: f64 = value
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("threshold value '{value}' is not a number")))?;
                check_probability("p_c", v)?;
                Ok(ThresholdRule::Value(v))
            }
        }
    }
}

impl fmt::Display for ThresholdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdRule::Moment => f.write_str("moment"),
            ThresholdRule::MeanInverse => f.write_str("mean-inverse"),
            ThresholdRule::Formula => f.write_str("formula"),
            ThresholdRule::Value(v) => write!(f, "value:{v}"),
        }
    }
}

impl Serialize for ThresholdRule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Iteration stops when a step changes the root by less than this (relative).
pub const FIXED_POINT_TOLERANCE: f64 = 1e-12;
pub const FIXED_POINT_MAX_ITERATIONS: usize = 1_000_000;

// Distances from 1 below these are treated as the trivial root.
const TRIVIAL_FLOOR: f64 = 1e-14;
const BISECTION_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPoint {
    /// Smallest solution of `x = h(x)` in `[0, 1]`.
    pub root: f64,
    /// `root < 1`: a giant component exists.
    pub nontrivial: bool,
    pub iterations: usize,
    /// True when the bisection fallback produced the root.
    pub bisection: bool,
}

/// `h(x) = 1 - p_e + p_e G1(x)`, with `G1` the excess-degree generating function.
pub fn fixed_point_map(d: &DegreeDistribution, p_e: f64, x: f64) -> Result<f64> {
    check_probability("p_e", p_e)?;
    Ok(1.0 - p_e + p_e * d.excess_generating(x)?)
}

/// Smallest fixed point of `h`, by iteration from `x = 0`.
///
/// The iteration runs on `u = 1 - x`, where `u -> p_e (1 - G1(1 - u))`
/// keeps full relative precision near the trivial root `x = 1`. If it has
/// not settled after [`FIXED_POINT_MAX_ITERATIONS`] steps (critical slowing
/// down), the root is located by bisection instead.
pub fn solve_fixed_point(d: &DegreeDistribution, p_e: f64) -> Result<FixedPoint> {
    check_probability("p_e", p_e)?;
    d.mean()?;
    let phi = |u: f64| -> Result<f64> { Ok(p_e * d.excess_generating_complement(u)?) };

    let mut u = 1.0;
    for iteration in 1..=FIXED_POINT_MAX_ITERATIONS {
        let next = phi(u)?;
        if !next.is_finite() {
            return Err(Error::NoConvergence { iterations: iteration, residual: f64::NAN });
        }
        let settled = (next - u).abs() <= FIXED_POINT_TOLERANCE * next;
        u = next;
        if u < TRIVIAL_FLOOR {
            return Ok(FixedPoint { root: 1.0, nontrivial: false, iterations: iteration, bisection: false });
        }
        if settled {
            return Ok(FixedPoint {
                root: 1.0 - u,
                nontrivial: u > BISECTION_FLOOR,
                iterations: iteration,
                bisection: false,
            });
        }
    }

    // psi(u) = phi(u) - u is concave with psi(0) = 0; the wanted root is its
    // largest zero. Iterates approach it from above, so psi(u) < 0 here.
    let psi = |u: f64| -> Result<f64> { Ok(phi(u)? - u) };
    let iterations = FIXED_POINT_MAX_ITERATIONS;
    let mut hi = u;
    let psi_hi = psi(hi)?;
    if psi(BISECTION_FLOOR)? <= 0.0 {
        return Ok(FixedPoint { root: 1.0, nontrivial: false, iterations, bisection: true });
    }
    if psi_hi > 0.0 {
        return Err(Error::NoConvergence { iterations, residual: psi_hi });
    }
    let mut lo = BISECTION_FLOOR;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if psi(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let root_u = 0.5 * (lo + hi);
    Ok(FixedPoint { root: 1.0 - root_u, nontrivial: true, iterations, bisection: true })
}
