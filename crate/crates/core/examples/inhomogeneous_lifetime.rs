//! Lifetime of a five-node network whose eight links decay at different rates.

use netrel::assessment::{le_cam_bound, rel_c_poisson_approx};
use netrel::lifetime::{lifetime_summary, reliability_curve, EdgeReliabilityProfile, TimeGrid};
use netrel::percolation::bond_threshold;
use netrel::{parse_edge_list, AssessmentConfig, DegreeDistribution};

const EDGES: &str = include_str!("data/five_node.edges");
const RATES: [f64; 8] = [0.0379, 0.8795, 0.7818, 0.6949, 0.6841, 0.0732, 0.1629, 0.01045];

fn main() -> netrel::Result<()> {
    let graph = parse_edge_list(EDGES)?.graph;
    let degrees = DegreeDistribution::from_degrees(&graph.degree_sequence())?;
    let p_c = bond_threshold(&degrees)?.p_c;
    let config = AssessmentConfig::new(graph.edge_count(), p_c)?;
    println!("p_c = {p_c:.6}, N = {}, M_c = {}", config.n_edges, config.m_c);

    let profile = EdgeReliabilityProfile::exponential_rates(&RATES)?;
    let curve = reliability_curve(&profile, &config, &TimeGrid::new(0.0, 10.0, 0.5)?.points())?;
    println!("{:>5} {:>10} {:>10} {:>10}", "t", "Rel_c", "Poisson", "Le Cam");
    for (&t, &v) in curve.times.iter().zip(&curve.values) {
        let probs = profile.evaluate(t)?;
        let approx = rel_c_poisson_approx(&probs, config.m_c)?;
        println!("{t:>5.1} {v:>10.6} {:>10.6} {:>10.6}", approx.approx, le_cam_bound(&probs));
    }

    let summary = lifetime_summary(&profile, &config, 0.01)?;
    println!("Rel_c crosses p_c at t = {:.4}", summary.lifetime_crossing);
    println!("integral lifetime T = {:.4}, Rel_c(T) = {:.4}", summary.lifetime_integral, summary.rel_c_at_t);
    Ok(())
}
