//! Time-dependent reliability curves and network lifetime.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assessment::{rel_c_heterogeneous, rel_c_homogeneous, AssessmentConfig};
use crate::error::{Error, Result};
use crate::exact::check_probability;

/// Probabilities below this count as "failed" when choosing a horizon.
pub const HORIZON_PROBABILITY: f64 = 1e-4;
pub const MAX_HORIZON: f64 = 1e4;
pub const DEFAULT_STEP: f64 = 0.1;

/// Working probability of one edge as a function of time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeLaw {
    /// `p(t) = e^(-rate t)`.
    Exponential { rate: f64 },
    Constant { p: f64 },
}

impl EdgeLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EdgeLaw::Exponential { rate } if !(rate >= 0.0 && rate.is_finite()) => Err(
                Error::InvalidParameter(format!("decay rate {rate} must be finite and nonnegative")),
            ),
            EdgeLaw::Constant { p } => check_probability("constant edge probability", p),
            _ => Ok(()),
        }
    }

    pub fn at(&self, t: f64) -> f64 {
        match *self {
            EdgeLaw::Exponential { rate } => (-rate * t).exp(),
            EdgeLaw::Constant { p } => p,
        }
    }

    /// First time with `p(t) < level`, if the law ever gets there.
    fn time_below(&self, level: f64) -> Option<f64> {
        match *self {
            EdgeLaw::Exponential { rate } if rate > 0.0 => Some((1.0 / level).ln() / rate),
            EdgeLaw::Constant { p } if p < level => Some(0.0),
            _ => None,
        }
    }
}

/// Per-edge reliability laws for a network of `N` edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeReliabilityProfile {
    /// Every edge follows the same law.
    Shared { n_edges: usize, law: EdgeLaw },
    PerEdge(Vec<EdgeLaw>),
}

impl EdgeReliabilityProfile {
    pub fn shared_exponential(n_edges: usize, rate: f64) -> Result<Self> {
        let law = EdgeLaw::Exponential { rate };
        law.validate()?;
        Ok(EdgeReliabilityProfile::Shared { n_edges, law })
    }

    pub fn exponential_rates(rates: &[f64]) -> Result<Self> {
        let laws: Vec<EdgeLaw> = rates.iter().map(|&rate| EdgeLaw::Exponential { rate }).collect();
        laws.iter().try_for_each(EdgeLaw::validate)?;
        Ok(EdgeReliabilityProfile::PerEdge(laws))
    }

    pub fn n_edges(&self) -> usize {
        match self {
            EdgeReliabilityProfile::Shared { n_edges, .. } => *n_edges,
            EdgeReliabilityProfile::PerEdge(laws) => laws.len(),
        }
    }

    fn laws(&self) -> &[EdgeLaw] {
        match self {
            EdgeReliabilityProfile::Shared { law, .. } => std::slice::from_ref(law),
            EdgeReliabilityProfile::PerEdge(laws) => laws,
        }
    }

    /// Per-edge probabilities at time `t`.
    pub fn evaluate(&self, t: f64) -> Result<Vec<f64>> {
        check_time(t)?;
        Ok(match self {
            EdgeReliabilityProfile::Shared { n_edges, law } => vec![law.at(t); *n_edges],
            EdgeReliabilityProfile::PerEdge(laws) => laws.iter().map(|l| l.at(t)).collect(),
        })
    }

    /// `Rel_c` at time `t`.
    pub fn rel_c(&self, config: &AssessmentConfig, t: f64) -> Result<f64> {
        check_time(t)?;
        self.check_config(config)?;
        match self {
            EdgeReliabilityProfile::Shared { n_edges, law } => rel_c_homogeneous(*n_edges, config.m_c, law.at(t)),
            EdgeReliabilityProfile::PerEdge(laws) => {
                let probs: Vec<f64> = laws.iter().map(|l| l.at(t)).collect();
                rel_c_heterogeneous(&probs, config.m_c)
            }
        }
    }

    /// Smallest `t` with every `p_e(t)` below [`HORIZON_PROBABILITY`], capped at [`MAX_HORIZON`].
    pub fn default_horizon(&self) -> f64 {
        self.laws()
            .iter()
            .map(|l| l.time_below(HORIZON_PROBABILITY).unwrap_or(MAX_HORIZON))
            .fold(0.0, f64::max)
            .min(MAX_HORIZON)
    }

    fn check_config(&self, config: &AssessmentConfig) -> Result<()> {
        if config.n_edges != self.n_edges() {
            return Err(Error::InvalidParameter(format!(
                "assessment is for N = {} edges but the profile has {}",
                config.n_edges,
                self.n_edges()
            )));
        }
        Ok(())
    }
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("time {t} must be finite and nonnegative")))
    }
}

/// `p_e(t)` for every edge.
pub fn evaluate_profile(profile: &EdgeReliabilityProfile, t: f64) -> Result<Vec<f64>> {
    profile.evaluate(t)
}

/// Evenly spaced times `start, start + step, ...` up to `end` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl Default for TimeGrid {
    fn default() -> Self {
        TimeGrid { start: 0.0, end: 15.0, step: DEFAULT_STEP }
    }
}

impl TimeGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        let g = TimeGrid { start, end, step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidParameter(format!("grid step {} must be positive", self.step)));
        }
        if !(self.start >= 0.0 && self.end >= self.start && self.end.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "grid [{}, {}] must satisfy 0 <= start <= end",
                self.start, self.end
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

/// `Rel_c` sampled on a strictly increasing time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl ReliabilityCurve {
    pub fn new(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidParameter("curve times and values differ in length".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("curve times must be strictly increasing".into()));
        }
        values.iter().try_for_each(|&v| check_probability("curve value", v))?;
        Ok(ReliabilityCurve { times, values })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// CSV with header `t,rel_c`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,rel_c\n");
        for (t, v) in self.times.iter().zip(&self.values) {
            out.push_str(&format!("{t},{v}\n"));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "t,rel_c")) => {}
            _ => return Err(Error::Parse { line: 1, message: "expected header 't,rel_c'".into() }),
        }
        let (mut times, mut values) = (Vec::new(), Vec::new());
        for (i, line) in lines.filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || Error::Parse { line: i + 1, message: format!("malformed row '{line}'") };
            let (t, v) = line.split_once(',').ok_or_else(bad)?;
            times.push(t.trim().parse().map_err(|_| bad())?);
            values.push(v.trim().parse().map_err(|_| bad())?);
        }
        ReliabilityCurve::new(times, values)
    }
}

/// `Rel_c` at every grid time. Points are evaluated in parallel and
/// assembled in grid order.
pub fn reliability_curve(
    profile: &EdgeReliabilityProfile,
    config: &AssessmentConfig,
    grid: &[f64],
) -> Result<ReliabilityCurve> {
    let values = grid
        .par_iter()
        .map(|&t| profile.rel_c(config, t))
        .collect::<Result<Vec<f64>>>()?;
    ReliabilityCurve::new(grid.to_vec(), values)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    /// First time with `Rel_c(t) = p_c`.
    pub time: f64,
    /// For a shared exponential law: the time with `p(t) = p_c`.
    pub edge_level_time: Option<f64>,
}

const SCAN_POINTS: usize = 4096;
const CROSSING_TOLERANCE: f64 = 1e-9;

pub fn lifetime_threshold_crossing(
    profile: &EdgeReliabilityProfile,
    config: &AssessmentConfig,
) -> Result<Crossing> {
    lifetime_threshold_crossing_within(profile, config, profile.default_horizon())
}

/// Brackets the first downward crossing of `p_c` on a uniform scan of
/// `[0, horizon]`, then bisects to within [`CROSSING_TOLERANCE`].
pub fn lifetime_threshold_crossing_within(
    profile: &EdgeReliabilityProfile,
    config: &AssessmentConfig,
    horizon: f64,
) -> Result<Crossing> {
    let p_c = config.p_c;
    let edge_level_time = match profile {
        EdgeReliabilityProfile::Shared { law: EdgeLaw::Exponential { rate }, .. } if *rate > 0.0 && p_c > 0.0 => {
            Some((1.0 / p_c).ln() / rate)
        }
        _ => None,
    };
    let above = |t: f64| -> Result<bool> { Ok(profile.rel_c(config, t)? > p_c) };
    if !above(0.0)? {
        return Ok(Crossing { time: 0.0, edge_level_time });
    }
    let h = horizon / SCAN_POINTS as f64;
    let mut lo = 0.0;
    let mut hi = None;
    for i in 1..=SCAN_POINTS {
        let t = i as f64 * h;
        if !above(t)? {
            hi = Some(t);
            break;
        }
        lo = t;
    }
    let mut hi = hi.ok_or(Error::NoCrossing { p_c, horizon })?;
    while hi - lo > CROSSING_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if above(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Crossing { time: 0.5 * (lo + hi), edge_level_time })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifetimeIntegral {
    /// Trapezoid estimate of the integral of `Rel_c` over the grid.
    pub value: f64,
    /// Estimated mass beyond the last sample, from an exponential fit of
    /// the final two points; infinite if the curve has stopped decaying.
    pub tail_estimate: f64,
    /// False when the last value is still above the tolerance.
    pub decayed: bool,
}

pub fn lifetime_integral(curve: &ReliabilityCurve, tolerance: f64) -> Result<LifetimeIntegral> {
    if curve.len() < 2 {
        return Err(Error::InvalidParameter("need at least two curve points to integrate".into()));
    }
    let (t, v) = (&curve.times, &curve.values);
    let value: f64 = (1..t.len()).map(|i| 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1])).sum();
    let m = t.len() - 1;
    let last = v[m];
    let tail_estimate = if last == 0.0 {
        0.0
    } else if v[m - 1] > last {
        let rate = (v[m - 1] / last).ln() / (t[m] - t[m - 1]);
        last / rate
    } else {
        f64::INFINITY
    };
    Ok(LifetimeIntegral { value, tail_estimate, decayed: last <= tolerance })
}

/// `f(t) = d(1 - Rel_c)/dt`: central differences inside, one-sided at the ends.
pub fn failure_density(curve: &ReliabilityCurve) -> Result<Vec<f64>> {
    let (t, v) = (&curve.times, &curve.values);
    let n = t.len();
    if n < 3 {
        return Err(Error::InvalidParameter("failure density needs at least three grid points".into()));
    }
    let mut f = Vec::with_capacity(n);
    f.push(-(v[1] - v[0]) / (t[1] - t[0]));
    for i in 1..n - 1 {
        f.push(-(v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1]));
    }
    f.push(-(v[n - 1] - v[n - 2]) / (t[n - 1] - t[n - 2]));
    Ok(f)
}

/// Both lifetime notions side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifetimeSummary {
    pub p_c: f64,
    pub m_c: usize,
    pub n_edges: usize,
    pub lifetime_crossing: f64,
    pub edge_level_crossing: Option<f64>,
    pub lifetime_integral: f64,
    pub integral_tail_estimate: f64,
    pub integral_decayed: bool,
    /// `Rel_c` evaluated at the integral lifetime.
    pub rel_c_at_t: f64,
    pub horizon: f64,
    pub step: f64,
}

/// Tolerance for declaring the integrated curve fully decayed.
pub const DECAY_TOLERANCE: f64 = 1e-6;

pub fn lifetime_summary(
    profile: &EdgeReliabilityProfile,
    config: &AssessmentConfig,
    step: f64,
) -> Result<LifetimeSummary> {
    let horizon = profile.default_horizon();
    let crossing = lifetime_threshold_crossing_within(profile, config, horizon)?;
    let grid = TimeGrid::new(0.0, horizon, step)?;
    let curve = reliability_curve(profile, config, &grid.points())?;
    let integral = lifetime_integral(&curve, DECAY_TOLERANCE)?;
    let rel_c_at_t = profile.rel_c(config, integral.value)?;
    Ok(LifetimeSummary {
        p_c: config.p_c,
        m_c: config.m_c,
        n_edges: config.n_edges,
        lifetime_crossing: crossing.time,
        edge_level_crossing: crossing.edge_level_time,
        lifetime_integral: integral.value,
        integral_tail_estimate: integral.tail_estimate,
        integral_decayed: integral.decayed,
        rel_c_at_t,
        horizon,
        step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let p = EdgeReliabilityProfile::exponential_rates(&[0.25]).unwrap();
        assert_eq!(p.evaluate(0.0).unwrap(), vec![1.0]);
        let target = 1.0 / (11f64.sqrt() - 1.0);
        let t = 4.0 * (1.0 / target).ln();
        assert!((p.evaluate(t).unwrap()[0] - target).abs() < 1e-14);
        assert!(p.evaluate(-1.0).is_err());
        let fig = EdgeReliabilityProfile::exponential_rates(&[0.0379, 0.8795, 0.01045]).unwrap();
        assert!(fig.evaluate(0.0).unwrap().iter().all(|&x| x == 1.0));
        assert!(EdgeReliabilityProfile::exponential_rates(&[-0.1]).is_err());
    }

    #[test]
    fn k4_curve_starts_at_one() {
        let profile = EdgeReliabilityProfile::shared_exponential(6, 0.3).unwrap();
        let cfg = AssessmentConfig::new(6, 1.0 / 3.0).unwrap();
        let curve = reliability_curve(&profile, &cfg, &[0.0]).unwrap();
        assert_eq!(curve.values, vec![1.0]);
        let wrong = AssessmentConfig::new(5, 0.3).unwrap();
        assert!(reliability_curve(&profile, &wrong, &[0.0]).is_err());
    }

    #[test]
    fn crossing_edge_cases() {
        let profile = EdgeReliabilityProfile::shared_exponential(10, 0.5).unwrap();
        let cfg = AssessmentConfig::new(10, 1.0).unwrap();
        assert_eq!(lifetime_threshold_crossing(&profile, &cfg).unwrap().time, 0.0);
        // Constant probabilities never decay.
        let flat = EdgeReliabilityProfile::Shared { n_edges: 10, law: EdgeLaw::Constant { p: 0.9 } };
        let cfg = AssessmentConfig::new(10, 0.5).unwrap();
        assert!(matches!(lifetime_threshold_crossing(&flat, &cfg), Err(Error::NoCrossing { .. })));
    }

    #[test]
    fn edge_level_crossing() {
        let p_c = 1.0 / (11f64.sqrt() - 1.0);
        let profile = EdgeReliabilityProfile::shared_exponential(250, 0.25).unwrap();
        let cfg = AssessmentConfig::new(250, p_c).unwrap();
        let c = lifetime_threshold_crossing(&profile, &cfg).unwrap();
        assert!((c.edge_level_time.unwrap() - 3.360_445_178_558_534).abs() < 1e-12);
    }

    #[test]
    fn integral_examples() {
        let grid: Vec<f64> = (0..=50).map(|i| i as f64 * 0.1).collect();
        let flat = ReliabilityCurve::new(grid.clone(), vec![1.0; grid.len()]).unwrap();
        let r = lifetime_integral(&flat, 1e-6).unwrap();
        assert!((r.value - 5.0).abs() < 1e-12);
        assert!(!r.decayed && r.tail_estimate.is_infinite());

        // N = 1, M_c = 0, p(t) = e^-t: the integral is 1.
        let profile = EdgeReliabilityProfile::shared_exponential(1, 1.0).unwrap();
        let cfg = AssessmentConfig { n_edges: 1, p_c: 0.0, m_c: 0 };
        let h = 0.01;
        let times = TimeGrid::new(0.0, 40.0, h).unwrap().points();
        let curve = reliability_curve(&profile, &cfg, &times).unwrap();
        let r = lifetime_integral(&curve, 1e-6).unwrap();
        // Trapezoid error for e^-t is h^2/12.
        assert!((r.value - 1.0).abs() < h * h / 12.0 * 1.01);
        assert!(r.decayed);
    }

    #[test]
    fn density_examples() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64).collect();
        let flat = ReliabilityCurve::new(grid, vec![0.7; 11]).unwrap();
        assert!(failure_density(&flat).unwrap().iter().all(|&f| f == 0.0));

        let h = 0.01;
        let times = TimeGrid::new(0.0, 5.0, h).unwrap().points();
        let values: Vec<f64> = times.iter().map(|t| (-t).exp()).collect();
        let curve = ReliabilityCurve::new(times.clone(), values).unwrap();
        let f = failure_density(&curve).unwrap();
        for i in 1..times.len() - 1 {
            assert!((f[i] - (-times[i]).exp()).abs() < h * h);
        }
        let short = ReliabilityCurve::new(vec![0.0, 1.0], vec![1.0, 0.5]).unwrap();
        assert!(failure_density(&short).is_err());
    }

    #[test]
    fn grid_points() {
        let g = TimeGrid::new(0.0, 15.0, 0.1).unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 151);
        assert!((pts[150] - 15.0).abs() < 1e-12);
        assert!(TimeGrid::new(0.0, 1.0, 0.0).is_err());
        assert!(TimeGrid::new(2.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let c = ReliabilityCurve::new(vec![0.0, 0.5, 1.0], vec![1.0, 0.75, 0.125]).unwrap();
        let back = ReliabilityCurve::from_csv(&c.to_csv()).unwrap();
        assert_eq!(back, c);
        assert!(ReliabilityCurve::from_csv("x,y\n").is_err());
        assert!(ReliabilityCurve::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn horizon_rule() {
        let p = EdgeReliabilityProfile::exponential_rates(&[0.5, 0.1]).unwrap();
        assert!((p.default_horizon() - (1e4f64).ln() / 0.1).abs() < 1e-9);
        let z = EdgeReliabilityProfile::exponential_rates(&[0.0]).unwrap();
        assert_eq!(z.default_horizon(), MAX_HORIZON);
    }
}
