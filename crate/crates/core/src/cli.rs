//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage errors (bad flags, unreadable or
//! malformed inputs), 1 when the computation itself fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::assessment::{le_cam_bound, rel_c_heterogeneous, rel_c_poisson_approx, AssessmentConfig};
use crate::degree::DegreeDistribution;
use crate::error::Error;
use crate::exact::{
    f_coefficients_with_cap, reliability_factoring, reliability_heterogeneous_with_cap, reliability_homogeneous,
    DEFAULT_ENUMERATION_CAP,
};
use crate::graph::{parse_edge_list, parse_number_list, write_edge_list, EdgeList, Graph};
use crate::lifetime::{
    lifetime_integral, lifetime_summary, reliability_curve, EdgeReliabilityProfile, TimeGrid, DECAY_TOLERANCE,
};
use crate::percolation::{solve_fixed_point, threshold_zeta, ThresholdReport, ThresholdRule};
use crate::scenario::{parse_scenario_file, OutputFormat};
use crate::simulation::{
    configuration_graph_with_edges, estimate_reliability, generate_binomial, generate_configuration_model,
    inverse_percolation_sweep_with, sample_degree_sequence, DEFAULT_GIANT_FRACTION, RNG_ALGORITHM,
};
use crate::SCHEMA_VERSION;

#[derive(Parser, Debug)]
#[command(name = "netrel", version, about = "Network reliability from exact enumeration and percolation thresholds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact all-terminal reliability and F-coefficients of a small graph.
    Exact(ExactArgs),
    /// Percolation threshold of a degree distribution or graph.
    Threshold(ThresholdArgs),
    /// Rel_c, its Poisson approximation and the Le Cam bound at one time.
    Assess(AssessArgs),
    /// Rel_c(t) over a time grid (CSV "t,rel_c").
    Curve(CurveArgs),
    /// Threshold-crossing and integral lifetimes.
    Lifetime(LifetimeArgs),
    /// Monte Carlo all-terminal reliability.
    Simulate(SimulateArgs),
    /// Inverse percolation: random edge removal sweep.
    Sweep(SweepArgs),
    /// Emit a random graph as an edge list.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Enumerate,
    Factor,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("prob").required(true).args(["p", "probs"])))]
struct ExactArgs {
    /// Edge list file ("u v" per line).
    #[arg(long)]
    graph: PathBuf,
    /// Common edge probability.
    #[arg(long, value_parser = probability)]
    p: Option<f64>,
    /// Per-edge probabilities: a JSON array, or a file holding one.
    #[arg(long)]
    probs: Option<String>,
    #[arg(long, value_enum, default_value = "enumerate")]
    method: Method,
    /// Largest edge count accepted for state enumeration.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    /// Distribution JSON, e.g. '{"kind":"poisson","lambda":4}'.
    #[arg(long, conflicts_with = "graph")]
    dist: Option<String>,
    /// Edge list whose degree sequence defines an empirical distribution.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// moment | mean-inverse | formula | value:<x>
    #[arg(long, default_value = "moment")]
    pc_rule: ThresholdRule,
    /// Edge count N used to report M_c (defaults to the graph's).
    #[arg(long)]
    edges: Option<usize>,
    /// Also solve the giant-component fixed point at this edge probability.
    #[arg(long, value_parser = probability)]
    fixed_point: Option<f64>,
    /// CSV scan "a:b:step" of the zeta-family threshold over gamma.
    #[arg(long, conflicts_with_all = ["graph", "fixed_point", "edges"])]
    scan_gamma: Option<String>,
    #[command(flatten)]
    out: OutArg,
}

/// Where N, the edge profile and the threshold come from.
#[derive(Args, Debug)]
struct ProfileArgs {
    /// Scenario JSON file; replaces the other profile flags.
    #[arg(long, conflicts_with_all = ["graph", "rates", "shared_rate", "edges", "dist", "pc_rule"])]
    scenario: Option<PathBuf>,
    /// Edge list, optionally with a third column of decay rates.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// File with one exponential decay rate per edge.
    #[arg(long, conflicts_with = "shared_rate")]
    rates: Option<PathBuf>,
    /// One decay rate shared by every edge.
    #[arg(long)]
    shared_rate: Option<f64>,
    /// Edge count N when no graph is given.
    #[arg(long)]
    edges: Option<usize>,
    /// Distribution JSON used to resolve the threshold rule.
    #[arg(long)]
    dist: Option<String>,
    /// moment | mean-inverse | formula | value:<x> (default moment)
    #[arg(long)]
    pc_rule: Option<ThresholdRule>,
}

#[derive(Args, Debug)]
struct AssessArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Per-edge probabilities: a JSON array, or a file holding one.
    #[arg(long, conflicts_with_all = ["p", "time"])]
    probs: Option<String>,
    /// Common edge probability.
    #[arg(long, value_parser = probability, conflicts_with = "time")]
    p: Option<f64>,
    /// Evaluate the decay profile at this time.
    #[arg(long)]
    time: Option<f64>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Time grid "start:end:step" (default 0:15:0.1).
    #[arg(long)]
    grid: Option<String>,
    /// Output format (default csv, or the scenario's).
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
struct LifetimeArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Integration grid "start:end:step"; only the step is used, the
    /// horizon is where every edge has decayed.
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("prob").required(true).args(["p", "probs"])))]
struct SimulateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_parser = probability)]
    p: Option<f64>,
    #[arg(long)]
    probs: Option<String>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["graph", "dist"])))]
struct SweepArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Build a configuration-model graph from this distribution.
    #[arg(long, requires = "nodes")]
    dist: Option<String>,
    #[arg(long)]
    nodes: Option<usize>,
    /// Removal fractions "a:b:step".
    #[arg(long, default_value = "0:1:0.01")]
    fractions: String,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest-component fraction below which the giant is gone.
    #[arg(long, default_value_t = DEFAULT_GIANT_FRACTION)]
    giant: f64,
    /// Rule for the predicted g_c = 1 - p_c.
    #[arg(long, default_value = "moment")]
    pc_rule: ThresholdRule,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Configuration,
    Binomial,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "configuration")]
    model: Model,
    /// Degree distribution JSON (configuration model).
    #[arg(long, conflicts_with = "degrees")]
    dist: Option<String>,
    /// Explicit degree sequence, comma separated.
    #[arg(long)]
    degrees: Option<String>,
    #[arg(long)]
    nodes: Option<usize>,
    /// Target edge count when sampling degrees.
    #[arg(long, conflicts_with = "nodes")]
    edges: Option<usize>,
    /// Pair probability (binomial model).
    #[arg(long, value_parser = probability)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutArg,
}

fn probability(s: &str) -> std::result::Result<f64, String> {
    let p: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(format!("{p} is outside [0, 1]"))
    }
}

enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(r: crate::error::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<EdgeList> {
    usage(parse_edge_list(&read(path)?))
}

/// A JSON array given inline or as a file path.
fn load_probs(arg: &str) -> CliResult<Vec<f64>> {
    let text = if arg.trim_start().starts_with('[') { arg.to_string() } else { read(Path::new(arg))? };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--probs: {e}")))
}

/// Distribution JSON given inline or as a file path.
fn load_dist(arg: &str) -> CliResult<DegreeDistribution> {
    let path = Path::new(arg);
    let text = if !arg.trim_start().starts_with('{') && path.is_file() { read(path)? } else { arg.to_string() };
    usage(text.parse()).map_err(|e| match e {
        CliError::Usage(m) => CliError::Usage(format!("--dist: {m}")),
        other => other,
    })
}

/// "a:b:step" with a strictly positive step.
fn parse_range(flag: &str, s: &str) -> CliResult<(f64, f64, f64)> {
    let bad = || CliError::Usage(format!("--{flag} expects start:end:step, got '{s}'"));
    let parts: Vec<f64> = s.split(':').map(|x| x.trim().parse().map_err(|_| bad())).collect::<CliResult<_>>()?;
    match parts[..] {
        [a, b, step] if step > 0.0 && b >= a => Ok((a, b, step)),
        _ => Err(bad()),
    }
}

fn range_points(a: f64, b: f64, step: f64) -> Vec<f64> {
    let count = ((b - a) / step + 1e-9).floor() as usize;
    // Rounded so decimal steps print cleanly.
    (0..=count).map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12).collect()
}

fn parse_grid(arg: Option<&str>) -> CliResult<Option<TimeGrid>> {
    arg.map(|s| {
        let (a, b, step) = parse_range("grid", s)?;
        usage(TimeGrid::new(a, b, step))
    })
    .transpose()
}

fn metadata(command: &str, seed: Option<u64>, rule: Option<&ThresholdRule>, m_c: Option<usize>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("seed".into(), json!(seed));
    if seed.is_some() {
        m.insert("rng".into(), json!(RNG_ALGORITHM));
    }
    m.insert("threshold_rule".into(), json!(rule.map(|r| r.to_string())));
    m.insert("m_c".into(), json!(m_c));
    m
}

fn document(mut meta: Map<String, Value>, body: Value) -> String {
    if let Value::Object(fields) = body {
        meta.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(meta)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Graph-independent inputs of an assessment after resolving every source.
struct Setup {
    n_edges: usize,
    rule: ThresholdRule,
    report: ThresholdReport,
    config: AssessmentConfig,
    profile: Option<EdgeReliabilityProfile>,
    grid: Option<TimeGrid>,
    format: Option<OutputFormat>,
    seed: Option<u64>,
    scenario: Option<Value>,
}

fn resolve(args: &ProfileArgs, n_override: Option<usize>) -> CliResult<Setup> {
    if let Some(path) = &args.scenario {
        let scenario = usage(parse_scenario_file(path))?;
        let loaded = scenario.load()?;
        return Ok(Setup {
            n_edges: loaded.config.n_edges,
            rule: scenario.threshold,
            report: loaded.threshold,
            config: loaded.config,
            profile: Some(loaded.profile),
            grid: Some(scenario.grid),
            format: Some(scenario.output),
            seed: Some(scenario.seed),
            scenario: Some(serde_json::to_value(&scenario).expect("scenario serializes")),
        });
    }
    let graph = args.graph.as_deref().map(load_graph).transpose()?;
    let file_rates = args
        .rates
        .as_deref()
        .map(|p| usage(parse_number_list(&read(p)?)))
        .transpose()?;
    let n_edges = n_override
        .or(graph.as_ref().map(|g| g.graph.edge_count()))
        .or(args.edges)
        .or(file_rates.as_ref().map(Vec::len))
        .ok_or_else(|| CliError::Usage("give --graph, --edges, --rates or --probs to fix N".into()))?;
    if let (Some(e), Some(g)) = (args.edges, &graph) {
        if e != g.graph.edge_count() {
            return Err(CliError::Usage(format!("--edges {e} disagrees with the graph's {}", g.graph.edge_count())));
        }
    }

    let rule = args.pc_rule.unwrap_or(ThresholdRule::Moment);
    let distribution = match (&args.dist, &graph) {
        (Some(d), _) => Some(load_dist(d)?),
        (None, Some(g)) => Some(DegreeDistribution::from_degrees(&g.graph.degree_sequence())?),
        (None, None) => None,
    };
    let report = match (rule, distribution) {
        (ThresholdRule::Value(v), _) => ThresholdReport::explicit(v)?,
        (_, Some(d)) => rule.resolve(&d)?,
        (_, None) => {
            return Err(CliError::Usage(format!("--pc-rule {rule} needs --graph or --dist")));
        }
    };
    let config = AssessmentConfig::new(n_edges, report.p_c)?;

    let rates = file_rates.or(graph.and_then(|g| g.rates));
    let profile = match (args.shared_rate, rates) {
        (Some(r), _) => Some(usage(EdgeReliabilityProfile::shared_exponential(n_edges, r))?),
        (None, Some(rates)) => {
            if rates.len() != n_edges {
                return Err(CliError::Usage(format!("{} rates for {n_edges} edges", rates.len())));
            }
            Some(usage(EdgeReliabilityProfile::exponential_rates(&rates))?)
        }
        (None, None) => None,
    };
    Ok(Setup { n_edges, rule, report, config, profile, grid: None, format: None, seed: None, scenario: None })
}

fn require_profile(setup: &Setup) -> CliResult<&EdgeReliabilityProfile> {
    setup
        .profile
        .as_ref()
        .ok_or_else(|| CliError::Usage("no edge profile: give --shared-rate, --rates or a rate column".into()))
}

fn setup_meta(command: &str, s: &Setup) -> Map<String, Value> {
    let mut m = metadata(command, s.seed, Some(&s.rule), Some(s.config.m_c));
    if let Some(sc) = &s.scenario {
        m.insert("scenario".into(), sc.clone());
    }
    m
}

fn cmd_exact(a: &ExactArgs) -> CliResult<String> {
    let g = load_graph(&a.graph)?.graph;
    let m = g.edge_count();
    let probs = match (&a.p, &a.probs) {
        (Some(p), _) => vec![*p; m],
        (None, Some(s)) => load_probs(s)?,
        (None, None) => unreachable!("clap requires one of --p, --probs"),
    };
    if probs.len() != m {
        return Err(CliError::Usage(format!("{} probabilities for {m} edges", probs.len())));
    }
    let mut body = json!({
        "nodes": g.node_count(),
        "edges": m,
        "method": format!("{:?}", a.method).to_lowercase(),
    });
    let reliability = match (a.method, a.p) {
        (Method::Enumerate, Some(p)) => {
            let f = f_coefficients_with_cap(&g, a.cap)?;
            body["f_coefficients"] = json!(f.as_slice());
            body["p"] = json!(p);
            reliability_homogeneous(&f, p)?
        }
        (Method::Enumerate, None) => reliability_heterogeneous_with_cap(&g, &probs, a.cap)?,
        (Method::Factor, _) => reliability_factoring(&g, &probs)?,
    };
    if a.p.is_none() {
        body["probs"] = json!(probs);
    }
    body["reliability"] = json!(reliability);
    Ok(document(metadata("exact", None, None, None), body))
}

fn cmd_threshold(a: &ThresholdArgs) -> CliResult<String> {
    if let Some(scan) = &a.scan_gamma {
        match a.dist.as_deref().map(str::trim) {
            None | Some("zeta") => {}
            Some(d) if matches!(load_dist(d)?, DegreeDistribution::Zeta { .. }) => {}
            Some(_) => return Err(CliError::Usage("--scan-gamma applies to the zeta family only".into())),
        }
        let (lo, hi, step) = parse_range("scan-gamma", scan)?;
        let mut csv = String::from("gamma,p_c\n");
        for gamma in range_points(lo, hi, step) {
            csv.push_str(&format!("{gamma},{}\n", threshold_zeta(gamma)?.p_c));
        }
        return Ok(csv);
    }
    let (distribution, graph_edges) = match (&a.dist, &a.graph) {
        (Some(d), _) => (load_dist(d)?, None),
        (None, Some(path)) => {
            let g = load_graph(path)?.graph;
            (usage(DegreeDistribution::from_degrees(&g.degree_sequence()))?, Some(g.edge_count()))
        }
        (None, None) => return Err(CliError::Usage("give --dist or --graph".into())),
    };
    let report = a.pc_rule.resolve(&distribution)?;
    let n_edges = a.edges.or(graph_edges);
    let m_c = match n_edges {
        Some(n) if report.p_c <= 1.0 => Some(AssessmentConfig::new(n, report.p_c)?.m_c),
        _ => None,
    };
    let mut body = serde_json::to_value(report).expect("report serializes");
    body["distribution"] = serde_json::to_value(&distribution).expect("distribution serializes");
    body["n_edges"] = json!(n_edges);
    if let Ok(m) = distribution.moments() {
        body["mean_degree"] = json!(m.mean);
        body["second_moment"] = json!(m.second_moment);
    }
    if let Some(p_e) = a.fixed_point {
        body["fixed_point"] = serde_json::to_value(solve_fixed_point(&distribution, p_e)?).expect("serializes");
    }
    Ok(document(metadata("threshold", None, Some(&a.pc_rule), m_c), body))
}

fn cmd_assess(a: &AssessArgs) -> CliResult<String> {
    let probs_arg = a.probs.as_deref().map(load_probs).transpose()?;
    let setup = resolve(&a.profile, probs_arg.as_ref().map(Vec::len))?;
    let n = setup.n_edges;
    let probs = match (probs_arg, a.p, a.time) {
        (Some(p), _, _) => p,
        (None, Some(p), _) => vec![p; n],
        (None, None, Some(t)) => usage(require_profile(&setup)?.evaluate(t))?,
        (None, None, None) => return Err(CliError::Usage("give --probs, --p or --time".into())),
    };
    if probs.len() != n {
        return Err(CliError::Usage(format!("{} probabilities for {n} edges", probs.len())));
    }
    let m_c = setup.config.m_c;
    let exact = rel_c_heterogeneous(&probs, m_c)?;
    let approx = rel_c_poisson_approx(&probs, m_c)?;
    let body = json!({
        "p_c": setup.report.p_c,
        "n_edges": n,
        "time": a.time,
        "rel_c_exact": exact,
        "rel_c_poisson": approx.approx,
        "mu": approx.mu,
        "le_cam_bound": le_cam_bound(&probs),
    });
    Ok(document(setup_meta("assess", &setup), body))
}

fn cmd_curve(a: &CurveArgs) -> CliResult<String> {
    let setup = resolve(&a.profile, None)?;
    let profile = require_profile(&setup)?;
    let grid = parse_grid(a.grid.as_deref())?.or(setup.grid).unwrap_or_default();
    let curve = reliability_curve(profile, &setup.config, &grid.points())?;
    let format = match (a.format, setup.format) {
        (Some(f), _) => f,
        (None, Some(OutputFormat::Json)) => Format::Json,
        _ => Format::Csv,
    };
    Ok(match format {
        Format::Csv => curve.to_csv(),
        Format::Json => {
            let integral = lifetime_integral(&curve, DECAY_TOLERANCE)?;
            let body = json!({
                "p_c": setup.report.p_c,
                "n_edges": setup.n_edges,
                "grid": grid,
                "times": curve.times,
                "rel_c": curve.values,
                "lifetime_integral": integral.value,
            });
            document(setup_meta("curve", &setup), body)
        }
    })
}

fn cmd_lifetime(a: &LifetimeArgs) -> CliResult<String> {
    let setup = resolve(&a.profile, None)?;
    let profile = require_profile(&setup)?;
    let grid = parse_grid(a.grid.as_deref())?.or(setup.grid).unwrap_or_default();
    let s = lifetime_summary(profile, &setup.config, grid.step)?;
    let body = json!({
        "p_c": s.p_c,
        "n_edges": s.n_edges,
        "lifetime_crossing": s.lifetime_crossing,
        "edge_level_crossing": s.edge_level_crossing,
        "lifetime_integral": s.lifetime_integral,
        "integral_tail_estimate": s.integral_tail_estimate,
        "integral_decayed": s.integral_decayed,
        "rel_c_at_T": s.rel_c_at_t,
        "horizon": s.horizon,
        "step": s.step,
    });
    Ok(document(setup_meta("lifetime", &setup), body))
}

fn cmd_simulate(a: &SimulateArgs) -> CliResult<String> {
    let g = load_graph(&a.graph)?.graph;
    let probs = match (&a.p, &a.probs) {
        (Some(p), _) => vec![*p; g.edge_count()],
        (_, Some(s)) => load_probs(s)?,
        _ => unreachable!("clap requires one of --p, --probs"),
    };
    if probs.len() != g.edge_count() {
        return Err(CliError::Usage(format!("{} probabilities for {} edges", probs.len(), g.edge_count())));
    }
    let r = estimate_reliability(&g, &probs, a.trials, a.seed)?;
    let body = json!({
        "nodes": g.node_count(),
        "edges": g.edge_count(),
        "estimate": r.estimate,
        "standard_error": r.standard_error,
        "trials": r.trials,
    });
    Ok(document(metadata("simulate", Some(a.seed), None, None), body))
}

fn cmd_sweep(a: &SweepArgs) -> CliResult<String> {
    let graph = match (&a.graph, &a.dist) {
        (Some(path), _) => load_graph(path)?.graph,
        (None, Some(d)) => {
            let d = load_dist(d)?;
            let n = a.nodes.expect("clap requires --nodes with --dist");
            let degrees = sample_degree_sequence(&d, n, a.seed)?;
            generate_configuration_model(&degrees, a.seed)?.0
        }
        _ => unreachable!("clap requires --graph or --dist"),
    };
    let (lo, hi, step) = parse_range("fractions", &a.fractions)?;
    let fractions = range_points(lo, hi, step);
    let sweep = inverse_percolation_sweep_with(&graph, &fractions, a.trials, a.seed, a.giant)?;
    let predicted = DegreeDistribution::from_degrees(&graph.degree_sequence())
        .and_then(|d| a.pc_rule.resolve(&d))
        .map(|r| r.g_c)
        .ok();
    let body = json!({
        "nodes": graph.node_count(),
        "edges": graph.edge_count(),
        "fractions": sweep.fractions,
        "mean_largest_fraction": sweep.mean_largest_fraction,
        "g_c": sweep.g_c,
        "giant_fraction": sweep.giant_fraction,
        "predicted_g_c": predicted,
        "trials": sweep.trials,
    });
    Ok(document(metadata("sweep", Some(a.seed), Some(&a.pc_rule), None), body))
}

fn cmd_generate(a: &GenerateArgs) -> CliResult<String> {
    let (graph, note): (Graph, String) = match a.model {
        Model::Binomial => {
            let (Some(n), Some(p)) = (a.nodes, a.p) else {
                return Err(CliError::Usage("binomial model needs --nodes and --p".into()));
            };
            (generate_binomial(n, p, a.seed)?, format!("binomial n={n} p={p}"))
        }
        Model::Configuration => {
            let (g, stats) = match (&a.degrees, &a.dist, a.nodes, a.edges) {
                (Some(list), _, _, _) => {
                    let degrees: Vec<usize> = list
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad degree '{x}'"))))
                        .collect::<CliResult<_>>()?;
                    usage(generate_configuration_model(&degrees, a.seed))?
                }
                (None, Some(d), Some(n), _) => {
                    let degrees = sample_degree_sequence(&load_dist(d)?, n, a.seed)?;
                    generate_configuration_model(&degrees, a.seed)?
                }
                (None, Some(d), None, Some(e)) => configuration_graph_with_edges(&load_dist(d)?, e, a.seed)?,
                _ => {
                    return Err(CliError::Usage(
                        "configuration model needs --degrees, or --dist with --nodes or --edges".into(),
                    ))
                }
            };
            let note = format!(
                "configuration model, {} stub pairs, {} self-loops and {} multi-edges erased",
                stats.stub_pairs, stats.self_loops, stats.multi_edges
            );
            (g, note)
        }
    };
    Ok(format!(
        "# netrel generate: {note}\n# seed={} rng={RNG_ALGORITHM}\n# nodes={} edges={}\n{}",
        a.seed,
        graph.node_count(),
        graph.edge_count(),
        write_edge_list(&graph, None)
    ))
}

fn dispatch(command: &Command) -> CliResult<(String, Option<&Path>)> {
    Ok(match command {
        Command::Exact(a) => (cmd_exact(a)?, a.out.out.as_deref()),
        Command::Threshold(a) => (cmd_threshold(a)?, a.out.out.as_deref()),
        Command::Assess(a) => (cmd_assess(a)?, a.out.out.as_deref()),
        Command::Curve(a) => (cmd_curve(a)?, a.out.out.as_deref()),
        Command::Lifetime(a) => (cmd_lifetime(a)?, a.out.out.as_deref()),
        Command::Simulate(a) => (cmd_simulate(a)?, a.out.out.as_deref()),
        Command::Sweep(a) => (cmd_sweep(a)?, a.out.out.as_deref()),
        Command::Generate(a) => (cmd_generate(a)?, a.out.out.as_deref()),
    })
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with_io<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((text, None)) => match out.write_all(text.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                1
            }
        },
        Ok((text, Some(path))) => match fs::write(path, text) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                1
            }
        },
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs the CLI with process arguments and standard streams.
pub fn run() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run_with_io(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["netrel"];
        full.extend_from_slice(args);
        let code = run_with_io(&full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn threshold_poisson() {
        let (code, out, _) = run(&["threshold", "--dist", r#"{"kind":"poisson","lambda":4}"#]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["p_c"].as_f64().unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(v["threshold_rule"], "moment");
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["threshold", "--bogus"]).0, 2);
        assert_eq!(run(&["threshold", "--dist", "{"]).0, 2);
        assert_eq!(run(&["threshold", "--dist", "no/such/file.json"]).0, 2);
        assert_eq!(run(&["threshold", "--dist", "{}", "--pc-rule", "value:1.5"]).0, 2);
        assert_eq!(run(&["exact", "--graph", "/nonexistent.edges", "--p", "0.5"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn divergence_exits_one() {
        let (code, _, err) = run(&["threshold", "--dist", r#"{"kind":"zeta","gamma":1.5}"#]);
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn scan_gamma_csv() {
        let (code, out, _) = run(&["threshold", "--dist", "zeta", "--scan-gamma", "3.1:3.5:0.1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "gamma,p_c");
        assert_eq!(lines.len(), 6);
    }

    #[test]
    fn ranges() {
        assert!(parse_range("grid", "0:1:0").is_err());
        assert!(parse_range("grid", "0:1").is_err());
        assert_eq!(range_points(0.0, 1.0, 0.25).len(), 5);
    }
}
