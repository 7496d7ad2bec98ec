//! Degree distributions, their moments and the excess-degree law.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{polylog, zeta};

/// Largest support materialised by [`DegreeDistribution::truncated_pmf`].
pub const MAX_SUPPORT: usize = 1 << 22;

/// Default tail tolerance for adaptive truncation of infinite supports.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;

/// A node-degree distribution `p_k`.
///
/// Parameters are checked by every operation, so a value built directly from
/// the variants is still safe to use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", try_from = "DistributionSpec")]
pub enum DegreeDistribution {
    /// Finite pmf `p_0..p_kmax`.
    Empirical { pmf: Vec<f64> },
    Poisson { lambda: f64 },
    /// `p_k = k^-gamma e^(-k/kappa) / Li_gamma(e^(-1/kappa))` for `k >= 1`, `p_0 = 0`.
    #[serde(rename = "power_cutoff")]
    PowerLawCutoff { gamma: f64, kappa: f64 },
    /// `p_k = k^-gamma / zeta(gamma)` for `k >= 1`.
    Zeta { gamma: f64 },
    /// `p_k = c k^-gamma` on `k_min..=k_max`.
    #[serde(rename = "truncated_power")]
    TruncatedPowerLaw { gamma: f64, k_min: usize, k_max: usize },
}

/// JSON form accepted on input. `empirical` takes either a `pmf` or a list of node `degrees`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionSpec {
    Empirical {
        #[serde(default)]
        pmf: Option<Vec<f64>>,
        #[serde(default)]
        degrees: Option<Vec<usize>>,
    },
    Poisson {
        lambda: f64,
    },
    PowerCutoff {
        gamma: f64,
        kappa: f64,
    },
    Zeta {
        gamma: f64,
    },
    TruncatedPower {
        gamma: f64,
        k_min: usize,
        k_max: usize,
    },
}

impl TryFrom<DistributionSpec> for DegreeDistribution {
    type Error = Error;

    fn try_from(spec: DistributionSpec) -> Result<Self> {
        let d = match spec {
            DistributionSpec::Empirical { pmf: Some(pmf), degrees: None } => {
                DegreeDistribution::Empirical { pmf }
            }
            DistributionSpec::Empirical { pmf: None, degrees: Some(degrees) } => {
                return DegreeDistribution::from_degrees(&degrees)
            }
            DistributionSpec::Empirical { .. } => {
                return Err(Error::InvalidParameter(
                    "empirical distribution needs exactly one of 'pmf' or 'degrees'".into(),
                ))
            }
            DistributionSpec::Poisson { lambda } => DegreeDistribution::Poisson { lambda },
            DistributionSpec::PowerCutoff { gamma, kappa } => {
                DegreeDistribution::PowerLawCutoff { gamma, kappa }
            }
            DistributionSpec::Zeta { gamma } => DegreeDistribution::Zeta { gamma },
            DistributionSpec::TruncatedPower { gamma, k_min, k_max } => {
                DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max }
            }
        };
        d.validate()?;
        Ok(d)
    }
}

impl std::str::FromStr for DegreeDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("distribution JSON: {e}")))
    }
}

/// First and second moments of a degree distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    /// `<k>`, infinite when divergent.
    pub mean: f64,
    /// `<k^2>`, infinite when divergent.
    pub second_moment: f64,
    pub mean_divergent: bool,
    pub second_moment_divergent: bool,
}

impl Moments {
    pub fn finite(mean: f64, second_moment: f64) -> Self {
        Moments { mean, second_moment, mean_divergent: false, second_moment_divergent: false }
    }
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

impl DegreeDistribution {
    pub fn poisson(lambda: f64) -> Result<Self> {
        let d = DegreeDistribution::Poisson { lambda };
        d.validate()?;
        Ok(d)
    }

    pub fn power_law_cutoff(gamma: f64, kappa: f64) -> Result<Self> {
        let d = DegreeDistribution::PowerLawCutoff { gamma, kappa };
        d.validate()?;
        Ok(d)
    }

    pub fn zeta(gamma: f64) -> Result<Self> {
        let d = DegreeDistribution::Zeta { gamma };
        d.validate()?;
        Ok(d)
    }

    pub fn truncated_power_law(gamma: f64, k_min: usize, k_max: usize) -> Result<Self> {
        let d = DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max };
        d.validate()?;
        Ok(d)
    }

    pub fn empirical(pmf: Vec<f64>) -> Result<Self> {
        let d = DegreeDistribution::Empirical { pmf };
        d.validate()?;
        Ok(d)
    }

    /// Empirical distribution of a degree sequence.
    pub fn from_degrees(degrees: &[usize]) -> Result<Self> {
        if degrees.is_empty() {
            return Err(invalid("degree sequence is empty".into()));
        }
        let kmax = *degrees.iter().max().unwrap();
        let mut pmf = vec![0.0; kmax + 1];
        for &k in degrees {
            pmf[k] += 1.0;
        }
        let n = degrees.len() as f64;
        pmf.iter_mut().for_each(|p| *p /= n);
        Ok(DegreeDistribution::Empirical { pmf })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DegreeDistribution::Empirical { ref pmf } => {
                if pmf.is_empty() {
                    return Err(invalid("empirical pmf is empty".into()));
                }
                if let Some((k, p)) = pmf.iter().enumerate().find(|(_, p)| !(**p >= 0.0 && p.is_finite())) {
                    return Err(invalid(format!("pmf entry p_{k} = {p} is not a finite nonnegative number")));
                }
                let total: f64 = pmf.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(invalid(format!("pmf sums to {total}, not 1")));
                }
            }
            DegreeDistribution::Poisson { lambda } => {
                if !(lambda > 0.0 && lambda.is_finite()) {
                    return Err(invalid(format!("Poisson lambda = {lambda} must be positive")));
                }
            }
            DegreeDistribution::PowerLawCutoff { gamma, kappa } => {
                if !gamma.is_finite() {
                    return Err(invalid(format!("gamma = {gamma} must be finite")));
                }
                if !(kappa > 0.0 && kappa.is_finite()) {
                    return Err(invalid(format!("kappa = {kappa} must be positive and finite")));
                }
            }
            DegreeDistribution::Zeta { gamma } => {
                if !(gamma > 1.0 && gamma.is_finite()) {
                    return Err(invalid(format!(
                        "zeta distribution needs gamma > 1 to be normalizable, got {gamma}"
                    )));
                }
            }
            DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max } => {
                if !gamma.is_finite() {
                    return Err(invalid(format!("gamma = {gamma} must be finite")));
                }
                if k_min < 1 {
                    return Err(invalid("k_min must be at least 1".into()));
                }
                if k_max < k_min {
                    return Err(invalid(format!("k_max = {k_max} < k_min = {k_min}")));
                }
            }
        }
        Ok(())
    }

    fn cutoff_base(kappa: f64) -> f64 {
        (-1.0 / kappa).exp()
    }

    fn truncated_norm(gamma: f64, k_min: usize, k_max: usize) -> f64 {
        1.0 / (k_min..=k_max).map(|k| (k as f64).powf(-gamma)).sum::<f64>()
    }

    /// `p_k`; zero outside the support.
    pub fn pmf(&self, k: usize) -> Result<f64> {
        Ok(self.pmf_evaluator()?(k))
    }

    /// Validates once and returns `k -> p_k` with normalizers precomputed.
    fn pmf_evaluator(&self) -> Result<Box<dyn Fn(usize) -> f64 + '_>> {
        self.validate()?;
        Ok(match *self {
            DegreeDistribution::Empirical { ref pmf } => {
                Box::new(move |k| pmf.get(k).copied().unwrap_or(0.0))
            }
            DegreeDistribution::Poisson { lambda } => {
                let log_lambda = lambda.ln();
                Box::new(move |k| {
                    let kf = k as f64;
                    (kf * log_lambda - lambda - statrs::function::gamma::ln_gamma(kf + 1.0)).exp()
                })
            }
            DegreeDistribution::PowerLawCutoff { gamma, kappa } => {
                let norm = polylog(gamma, Self::cutoff_base(kappa))?;
                Box::new(move |k| {
                    if k == 0 {
                        0.0
                    } else {
                        let kf = k as f64;
                        (-gamma * kf.ln() - kf / kappa).exp() / norm
                    }
                })
            }
            DegreeDistribution::Zeta { gamma } => {
                let norm = zeta(gamma)?;
                Box::new(move |k| if k == 0 { 0.0 } else { (k as f64).powf(-gamma) / norm })
            }
            DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max } => {
                let c = Self::truncated_norm(gamma, k_min, k_max);
                Box::new(move |k| {
                    if k < k_min || k > k_max {
                        0.0
                    } else {
                        c * (k as f64).powf(-gamma)
                    }
                })
            }
        })
    }

    pub fn moments(&self) -> Result<Moments> {
        self.validate()?;
        Ok(match *self {
            DegreeDistribution::Empirical { ref pmf } => finite_moments(pmf, 0),
            DegreeDistribution::Poisson { lambda } => Moments::finite(lambda, lambda * lambda + lambda),
            DegreeDistribution::PowerLawCutoff { gamma, kappa } => {
                let y = Self::cutoff_base(kappa);
                let norm = polylog(gamma, y)?;
                Moments::finite(polylog(gamma - 1.0, y)? / norm, polylog(gamma - 2.0, y)? / norm)
            }
            DegreeDistribution::Zeta { gamma } => {
                let norm = zeta(gamma)?;
                let mean_divergent = gamma <= 2.0;
                let second_moment_divergent = gamma <= 3.0;
                Moments {
                    mean: if mean_divergent { f64::INFINITY } else { zeta(gamma - 1.0)? / norm },
                    second_moment: if second_moment_divergent {
                        f64::INFINITY
                    } else {
                        zeta(gamma - 2.0)? / norm
                    },
                    mean_divergent,
                    second_moment_divergent,
                }
            }
            DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max } => {
                let c = Self::truncated_norm(gamma, k_min, k_max);
                let pmf: Vec<f64> = (k_min..=k_max).map(|k| c * (k as f64).powf(-gamma)).collect();
                finite_moments(&pmf, k_min)
            }
        })
    }

    /// Finite mean, or the appropriate error.
    pub fn mean(&self) -> Result<f64> {
        let m = self.moments()?;
        if m.mean_divergent {
            return Err(Error::Divergent("mean degree diverges".into()));
        }
        if m.mean <= 0.0 {
            return Err(Error::ZeroMean);
        }
        Ok(m.mean)
    }

    /// Excess-degree law `p'_k = k p_k / <k>`.
    pub fn excess_pmf(&self, k: usize) -> Result<f64> {
        let mean = self.mean()?;
        Ok(k as f64 * self.pmf(k)? / mean)
    }

    /// Generating function of the excess law, `G1(x) = sum_k p'_k x^(k-1)` on `[0, 1]`.
    pub fn excess_generating(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(invalid(format!("generating-function argument {x} outside [0, 1]")));
        }
        let mean = self.mean()?;
        Ok(match *self {
            DegreeDistribution::Poisson { lambda } => (lambda * (x - 1.0)).exp(),
            DegreeDistribution::PowerLawCutoff { gamma, kappa } => {
                let y = Self::cutoff_base(kappa);
                let norm = polylog(gamma - 1.0, y)?;
                if x == 0.0 {
                    y / norm
                } else {
                    polylog(gamma - 1.0, x * y)? / (x * norm)
                }
            }
            DegreeDistribution::Zeta { gamma } => {
                let norm = zeta(gamma - 1.0)?;
                if x == 0.0 {
                    1.0 / norm
                } else if x == 1.0 {
                    1.0
                } else {
                    polylog(gamma - 1.0, x)? / (x * norm)
                }
            }
            DegreeDistribution::Empirical { .. } | DegreeDistribution::TruncatedPowerLaw { .. } => {
                let (start, pmf) = self.finite_pmf()?;
                pmf.iter()
                    .enumerate()
                    .map(|(i, &p)| (start + i, p))
                    .filter(|&(k, p)| k >= 1 && p > 0.0)
                    .map(|(k, p)| k as f64 * p / mean * x.powi(k as i32 - 1))
                    .sum()
            }
        })
    }

    /// `1 - G1(1 - u)`, evaluated without cancellation where a closed form allows.
    pub fn excess_generating_complement(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(invalid(format!("complement argument {u} outside [0, 1]")));
        }
        let mean = self.mean()?;
        Ok(match *self {
            DegreeDistribution::Poisson { lambda } => -(-lambda * u).exp_m1(),
            DegreeDistribution::Empirical { .. } | DegreeDistribution::TruncatedPowerLaw { .. } => {
                let (start, pmf) = self.finite_pmf()?;
                let log_keep = (-u).ln_1p();
                pmf.iter()
                    .enumerate()
                    .map(|(i, &p)| (start + i, p))
                    .filter(|&(k, p)| k >= 2 && p > 0.0)
                    .map(|(k, p)| k as f64 * p / mean * -((k - 1) as f64 * log_keep).exp_m1())
                    .sum()
            }
            _ => 1.0 - self.excess_generating(1.0 - u)?,
        })
    }

    /// Finite pmf as `(first k, values)` for the finite-support variants.
    fn finite_pmf(&self) -> Result<(usize, Vec<f64>)> {
        match *self {
            DegreeDistribution::Empirical { ref pmf } => Ok((0, pmf.clone())),
            DegreeDistribution::TruncatedPowerLaw { gamma, k_min, k_max } => {
                let c = Self::truncated_norm(gamma, k_min, k_max);
                Ok((k_min, (k_min..=k_max).map(|k| c * (k as f64).powf(-gamma)).collect()))
            }
            _ => Err(invalid("distribution has infinite support".into())),
        }
    }

    /// Largest degree with positive probability, if the support is finite.
    pub fn max_degree(&self) -> Option<usize> {
        match *self {
            DegreeDistribution::Empirical { ref pmf } => pmf.iter().rposition(|&p| p > 0.0),
            DegreeDistribution::TruncatedPowerLaw { k_max, .. } => Some(k_max),
            _ => None,
        }
    }

    /// `p_0..p_K`, with `K` extended until both the remaining pmf mass and
    /// the remaining `k^2`-weighted mass are below `tol`. When `<k^2>`
    /// diverges only the pmf tail is controlled.
    pub fn truncated_pmf(&self, tol: f64) -> Result<Vec<f64>> {
        self.truncate(tol, true)
    }

    /// Like [`truncated_pmf`](Self::truncated_pmf) but only the pmf mass
    /// beyond `K` is controlled. Suited to sampling degrees.
    pub fn truncated_pmf_mass(&self, tol: f64) -> Result<Vec<f64>> {
        self.truncate(tol, false)
    }

    fn truncate(&self, tol: f64, weighted: bool) -> Result<Vec<f64>> {
        if let Ok((start, values)) = self.finite_pmf() {
            let mut out = vec![0.0; start];
            out.extend(values);
            return Ok(out);
        }
        let eval = self.pmf_evaluator()?;
        let weighted = weighted && !self.moments()?.second_moment_divergent;
        let mut out = Vec::new();
        for k in 0..MAX_SUPPORT {
            let p = eval(k);
            out.push(p);
            if k >= 2 && self.tail_below(k, p, tol, !weighted)? {
                return Ok(out);
            }
        }
        Err(Error::Divergent(format!(
            "support needed for tail tolerance {tol:e} exceeds {MAX_SUPPORT} degrees"
        )))
    }

    /// Bounds the mass beyond `k` given `p = p_k`.
    fn tail_below(&self, k: usize, p: f64, tol: f64, mass_only: bool) -> Result<bool> {
        let kf = k as f64;
        let geometric = |ratio: f64, term: f64| ratio < 1.0 && term * ratio / (1.0 - ratio) < tol;
        Ok(match *self {
            DegreeDistribution::Poisson { lambda } => {
                if kf + 1.0 <= lambda {
                    return Ok(false);
                }
                // Ratios of successive terms only decrease from here on.
                let r = lambda / (kf + 1.0);
                let r2 = lambda * (kf + 1.0) / (kf * kf);
                geometric(r, p) && (mass_only || geometric(r2, p * kf * kf))
            }
            DegreeDistribution::PowerLawCutoff { gamma, kappa } => {
                let y = Self::cutoff_base(kappa);
                let step = (kf + 1.0) / kf;
                let r = step.powf(-gamma).max(1.0) * y;
                let r2 = step.powf(2.0 - gamma).max(1.0) * y;
                geometric(r, p) && (mass_only || geometric(r2, p * kf * kf))
            }
            DegreeDistribution::Zeta { gamma } => {
                // sum_{j>k} j^-a <= k^(1-a) / (a - 1) for a > 1; p = k^-gamma / zeta(gamma).
                let inv_norm = p * kf.powf(gamma);
                let tail = |a: f64| kf.powf(1.0 - a) / (a - 1.0) * inv_norm;
                tail(gamma) < tol && (mass_only || tail(gamma - 2.0) < tol)
            }
            _ => true,
        })
    }
}

fn finite_moments(pmf: &[f64], start: usize) -> Moments {
    let (mut m1, mut m2) = (0.0, 0.0);
    for (i, &p) in pmf.iter().enumerate() {
        let k = (start + i) as f64;
        m1 += k * p;
        m2 += k * k * p;
    }
    Moments::finite(m1, m2)
}
