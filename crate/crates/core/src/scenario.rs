//! Scenario documents: one JSON file describing a full lifetime analysis.
//!
//! ```json
//! {
//!   "graph": {"edge_list": "five_node.edges"},
//!   "rates_file": "five_node.rates",
//!   "threshold": "value:0.421053",
//!   "grid": {"start": 0, "end": 15, "step": 0.01},
//!   "output": "csv"
//! }
//! ```
//!
//! `graph` holds exactly one of `edge_list` (path, relative to the scenario
//! file) or `generator` (`{"distribution": {...}, "target_edges": n}`).
//! The edge profile is one of `shared_rate`, `rates` (inline array) or
//! `rates_file`; it may be omitted when the edge list carries a rate column.
//! Defaults: `threshold` = `"moment"`, `grid` = `{0, 15, 0.1}`,
//! `output` = `"json"`, `seed` = 0.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assessment::AssessmentConfig;
use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::graph::{parse_edge_list, parse_number_list, Graph};
use crate::lifetime::{EdgeReliabilityProfile, TimeGrid};
use crate::percolation::{ThresholdReport, ThresholdRule};
use crate::simulation::configuration_graph_with_edges;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    EdgeList(PathBuf),
    Generator { distribution: DegreeDistribution, target_edges: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RateSource {
    Shared(f64),
    PerEdge(Vec<f64>),
    /// Rate column of the edge list.
    FromGraph,
}

/// A validated scenario with every default filled in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub graph: GraphSource,
    pub rates: RateSource,
    pub threshold: ThresholdRule,
    pub grid: TimeGrid,
    pub output: OutputFormat,
    pub seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    graph: GraphDoc,
    shared_rate: Option<f64>,
    rates: Option<Vec<f64>>,
    rates_file: Option<PathBuf>,
    threshold: Option<String>,
    grid: Option<TimeGrid>,
    output: Option<OutputFormat>,
    seed: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    edge_list: Option<PathBuf>,
    generator: Option<GeneratorDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    distribution: DegreeDistribution,
    target_edges: usize,
}

fn field_error(field: &str, message: impl std::fmt::Display) -> Error {
    Error::InvalidParameter(format!("scenario field `{field}`: {message}"))
}

/// Parses and validates a scenario. Relative paths are kept as written;
/// [`parse_scenario_file`] resolves them against the file's directory.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("scenario: {e}")))?;

    let graph = match (doc.graph.edge_list, doc.graph.generator) {
        (Some(path), None) => GraphSource::EdgeList(path),
        (None, Some(g)) => {
            if g.target_edges == 0 {
                return Err(field_error("graph.generator.target_edges", "must be positive"));
            }
            GraphSource::Generator { distribution: g.distribution, target_edges: g.target_edges }
        }
        _ => return Err(field_error("graph", "give exactly one of `edge_list` or `generator`")),
    };

    let rates = match (doc.shared_rate, doc.rates, doc.rates_file) {
        (Some(r), None, None) => {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(field_error("shared_rate", format!("{r} must be finite and nonnegative")));
            }
            RateSource::Shared(r)
        }
        (None, Some(rates), None) => RateSource::PerEdge(rates),
        (None, None, Some(path)) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| field_error("rates_file", format!("{}: {e}", path.display())))?;
            RateSource::PerEdge(parse_number_list(&text).map_err(|e| field_error("rates_file", e))?)
        }
        (None, None, None) => RateSource::FromGraph,
        _ => return Err(field_error("shared_rate", "give at most one of `shared_rate`, `rates`, `rates_file`")),
    };
    if let RateSource::PerEdge(r) = &rates {
        if let Some(bad) = r.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
            return Err(field_error("rates", format!("{bad} must be finite and nonnegative")));
        }
    }

    let threshold = match doc.threshold.as_deref() {
        None => ThresholdRule::Moment,
        Some(s) => s.parse().map_err(|e| field_error("threshold", e))?,
    };
    let grid = doc.grid.unwrap_or_default();
    grid.validate().map_err(|e| field_error("grid", e))?;

    Ok(Scenario {
        graph,
        rates,
        threshold,
        grid,
        output: doc.output.unwrap_or_default(),
        seed: doc.seed.unwrap_or(0),
    })
}

/// Reads a scenario file, resolving relative paths against its directory.
pub fn parse_scenario_file(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read scenario {}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let text = relative_rates_file(&text, base)?;
    let mut scenario = parse_scenario(&text)?;
    if let GraphSource::EdgeList(p) = &mut scenario.graph {
        if p.is_relative() {
            *p = base.join(&*p);
        }
    }
    Ok(scenario)
}

// `rates_file` is read during parsing, so it is rewritten before that.
fn relative_rates_file(text: &str, base: &Path) -> Result<String> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("scenario: {e}")))?;
    if let Some(serde_json::Value::String(p)) = value.get_mut("rates_file") {
        if Path::new(p.as_str()).is_relative() {
            *p = base.join(&*p).to_string_lossy().into_owned();
        }
    }
    Ok(value.to_string())
}

/// Everything needed to evaluate `Rel_c(t)` for a scenario.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub graph: Graph,
    pub profile: EdgeReliabilityProfile,
    pub threshold: ThresholdReport,
    pub config: AssessmentConfig,
}

impl Scenario {
    /// Builds the graph, edge profile and threshold.
    pub fn load(&self) -> Result<LoadedScenario> {
        let (graph, distribution, graph_rates) = match &self.graph {
            GraphSource::EdgeList(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| field_error("graph.edge_list", format!("{}: {e}", path.display())))?;
                let list = parse_edge_list(&text)?;
                let d = DegreeDistribution::from_degrees(&list.graph.degree_sequence())?;
                (list.graph, d, list.rates)
            }
            GraphSource::Generator { distribution, target_edges } => {
                let (g, _) = configuration_graph_with_edges(distribution, *target_edges, self.seed)?;
                (g, distribution.clone(), None)
            }
        };
        let n = graph.edge_count();
        let profile = match &self.rates {
            RateSource::Shared(r) => EdgeReliabilityProfile::shared_exponential(n, *r)?,
            RateSource::PerEdge(rates) => {
                if rates.len() != n {
                    return Err(field_error("rates", format!("{} rates for {n} edges", rates.len())));
                }
                EdgeReliabilityProfile::exponential_rates(rates)?
            }
            RateSource::FromGraph => {
                let rates = graph_rates.ok_or_else(|| {
                    field_error("shared_rate", "no edge profile given and the edge list has no rate column")
                })?;
                EdgeReliabilityProfile::exponential_rates(&rates)?
            }
        };
        let threshold = self.threshold.resolve(&distribution)?;
        let config = AssessmentConfig::new(n, threshold.p_c)?;
        Ok(LoadedScenario { graph, profile, threshold, config })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scenario_gets_defaults() {
        let s = parse_scenario(r#"{"graph":{"edge_list":"g.edges"},"shared_rate":0.25}"#).unwrap();
        assert_eq!(s.grid, TimeGrid { start: 0.0, end: 15.0, step: 0.1 });
        assert_eq!(s.threshold, ThresholdRule::Moment);
        assert_eq!(s.output, OutputFormat::Json);
        assert_eq!(s.rates, RateSource::Shared(0.25));
        assert_eq!(s.seed, 0);
    }

    #[test]
    fn explicit_value_out_of_range_is_rejected() {
        let e = parse_scenario(r#"{"graph":{"edge_list":"g"},"shared_rate":1,"threshold":"value:1.5"}"#)
            .unwrap_err();
        assert!(e.to_string().contains("threshold"), "{e}");
    }

    #[test]
    fn errors_name_the_field() {
        let cases = [
            (r#"{"shared_rate":1}"#, "graph"),
            (r#"{"graph":{},"shared_rate":1}"#, "graph"),
            (r#"{"graph":{"edge_list":"g"},"shared_rate":-1}"#, "shared_rate"),
            (r#"{"graph":{"edge_list":"g"},"grid":{"start":0,"end":1,"step":0}}"#, "grid"),
            (r#"{"graph":{"edge_list":"g"},"output":"xml"}"#, "xml"),
            (r#"{"graph":{"edge_list":"g"},"colour":1}"#, "colour"),
        ];
        for (doc, field) in cases {
            let e = parse_scenario(doc).unwrap_err().to_string();
            assert!(e.contains(field), "{doc}: {e}");
        }
    }

    #[test]
    fn generator_scenario() {
        let s = parse_scenario(
            r#"{"graph":{"generator":{"distribution":{"kind":"truncated_power","gamma":2.5,"k_min":1,"k_max":11},
                "target_edges":250}},"shared_rate":0.25,"threshold":"formula"}"#,
        )
        .unwrap();
        let loaded = s.load().unwrap();
        let e = loaded.graph.edge_count();
        assert!((240..=260).contains(&e), "{e}");
        assert!((loaded.threshold.p_c - 1.0 / (11f64.sqrt() - 1.0)).abs() < 1e-12);
        assert_eq!(loaded.profile.n_edges(), e);
    }
}
