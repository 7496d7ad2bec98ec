//! A 250-link network with a truncated power-law degree distribution and a
//! common exponential link decay.

use netrel::lifetime::{lifetime_threshold_crossing, reliability_curve, EdgeReliabilityProfile, TimeGrid};
use netrel::percolation::{bond_threshold, threshold_truncated};
use netrel::simulation::configuration_graph_with_edges;
use netrel::{AssessmentConfig, DegreeDistribution};

fn main() -> netrel::Result<()> {
    let p_c = threshold_truncated(2.5, 1, 11)?.p_c;
    let discrete = bond_threshold(&DegreeDistribution::truncated_power_law(2.5, 1, 11)?)?.p_c;
    println!("closed form p_c = {p_c:.6} (discrete moments give {discrete:.6})");

    let dist = DegreeDistribution::truncated_power_law(2.5, 1, 11)?;
    let (graph, erased) = configuration_graph_with_edges(&dist, 250, 7)?;
    println!(
        "sampled graph: {} nodes, {} edges ({} loops, {} repeats erased)",
        graph.node_count(),
        graph.edge_count(),
        erased.self_loops,
        erased.multi_edges
    );

    let config = AssessmentConfig::new(250, p_c)?;
    let profile = EdgeReliabilityProfile::shared_exponential(250, 0.25)?;
    let crossing = lifetime_threshold_crossing(&profile, &config)?;
    println!("M_c = {}", config.m_c);
    println!("edge-level crossing p(t) = p_c at t = {:.4}", crossing.edge_level_time.unwrap_or(f64::NAN));
    println!("Rel_c crossing at t = {:.4}", crossing.time);

    let curve = reliability_curve(&profile, &config, &TimeGrid::new(0.0, 8.0, 0.5)?.points())?;
    print!("{}", curve.to_csv());
    Ok(())
}
