//! Percolation-based reliability assessment.
//!
//! The network is judged operational while more than `M_c = floor(p_c N)`
//! of its `N` edges work. For independent edges the count of working edges
//! is Poisson-binomial, so the assessment is an upper tail of that law.

use serde::Serialize;
use statrs::function::factorial::ln_binomial;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::exact::check_probability;

/// Edge count, threshold and the derived critical edge count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssessmentConfig {
    pub n_edges: usize,
    pub p_c: f64,
    pub m_c: usize,
}

impl AssessmentConfig {
    pub fn new(n_edges: usize, p_c: f64) -> Result<Self> {
        let m_c = critical_edge_count(n_edges, p_c)?;
        Ok(AssessmentConfig { n_edges, p_c, m_c })
    }
}

/// `M_c = floor(p_c N)`.
///
/// The product is nudged up by a few ulps so that values such as
/// `(1/3) * 6` land on the intended integer.
pub fn critical_edge_count(n_edges: usize, p_c: f64) -> Result<usize> {
    check_probability("p_c", p_c)?;
    let raw = p_c * n_edges as f64;
    let m = (raw * (1.0 + 4.0 * f64::EPSILON)).floor() as usize;
    Ok(m.min(n_edges))
}

fn check_vector(probs: &[f64]) -> Result<()> {
    probs.iter().try_for_each(|&p| check_probability("edge probability", p))
}

fn check_cutoff(n: usize, m_c: usize) -> Result<()> {
    if m_c > n {
        return Err(Error::InvalidParameter(format!("M_c = {m_c} exceeds N = {n}")));
    }
    Ok(())
}

/// `sum_{i=M_c+1}^{N} C(N,i) p^i (1-p)^(N-i)`, summed term by term in log space.
pub fn rel_c_homogeneous(n: usize, m_c: usize, p: f64) -> Result<f64> {
    check_probability("p", p)?;
    check_cutoff(n, m_c)?;
    if m_c == n || p == 0.0 {
        return Ok(0.0);
    }
    if p == 1.0 {
        return Ok(1.0);
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let sum: f64 = (m_c + 1..=n)
        .map(|i| (ln_binomial(n as u64, i as u64) + i as f64 * lp + (n - i) as f64 * lq).exp())
        .sum();
    Ok(sum.clamp(0.0, 1.0))
}

/// Distribution of the number of working edges, `P(X = k)` for `k = 0..=N`.
///
/// Built edge by edge: each step mixes the current law with its shift by
/// one, so every entry stays a convex combination.
pub fn poisson_binomial_pmf(probs: &[f64]) -> Result<Vec<f64>> {
    check_vector(probs)?;
    let mut pmf = vec![0.0; probs.len() + 1];
    pmf[0] = 1.0;
    for (j, &p) in probs.iter().enumerate() {
        let q = 1.0 - p;
        for k in (1..=j + 1).rev() {
            pmf[k] = pmf[k] * q + pmf[k - 1] * p;
        }
        pmf[0] *= q;
    }
    Ok(pmf)
}

/// Exact `P(X > M_c)` for independent, non-identical edges.
pub fn rel_c_heterogeneous(probs: &[f64], m_c: usize) -> Result<f64> {
    check_cutoff(probs.len(), m_c)?;
    let pmf = poisson_binomial_pmf(probs)?;
    Ok(pmf[m_c + 1..].iter().sum::<f64>().clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonApproximation {
    pub approx: f64,
    pub mu: f64,
}

/// `sum_{i=M_c+1}^{N} mu^i e^-mu / i!` with `mu = sum p_e`.
pub fn rel_c_poisson_approx(probs: &[f64], m_c: usize) -> Result<PoissonApproximation> {
    check_vector(probs)?;
    let n = probs.len();
    check_cutoff(n, m_c)?;
    let mu: f64 = probs.iter().sum();
    if mu == 0.0 {
        return Ok(PoissonApproximation { approx: 0.0, mu });
    }
    let approx: f64 = (m_c + 1..=n).map(|i| poisson_pmf(mu, i)).sum();
    Ok(PoissonApproximation { approx: approx.clamp(0.0, 1.0), mu })
}

/// `mu^k e^-mu / k!`, computed in log space.
pub fn poisson_pmf(mu: f64, k: usize) -> f64 {
    if mu == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let kf = k as f64;
    (kf * mu.ln() - mu - ln_gamma(kf + 1.0)).exp()
}

/// Le Cam: `sum_k |P(X = k) - Poi_mu(k)| < 2 sum p_e^2`.
pub fn le_cam_bound(probs: &[f64]) -> f64 {
    2.0 * probs.iter().map(|p| p * p).sum::<f64>()
}

/// Node-voting reliability `sum_{i=floor(n p_c)+1}^{n} C(n,i) R^i (1-R)^(n-i)`:
/// each of `n` nodes works with probability `R`.
pub fn node_voting_reliability(n: usize, p_c: f64, r: f64) -> Result<f64> {
    let cutoff = critical_edge_count(n, p_c)?;
    rel_c_homogeneous(n, cutoff, r)
}
