//! Random link removal on a Poisson configuration-model graph.

use netrel::percolation::bond_threshold;
use netrel::simulation::{generate_configuration_model, inverse_percolation_sweep, sample_degree_sequence};
use netrel::DegreeDistribution;

fn main() -> netrel::Result<()> {
    let dist = DegreeDistribution::poisson(4.0)?;
    let degrees = sample_degree_sequence(&dist, 10_000, 1)?;
    let (graph, _) = generate_configuration_model(&degrees, 1)?;
    let predicted = bond_threshold(&dist)?.g_c;

    let fractions: Vec<f64> = (0..=19).map(|i| i as f64 * 0.05).collect();
    let sweep = inverse_percolation_sweep(&graph, &fractions, 5, 1)?;
    println!("removed,largest_component_fraction");
    for (g, s) in sweep.fractions.iter().zip(&sweep.mean_largest_fraction) {
        println!("{g:.2},{s:.4}");
    }
    println!("predicted g_c = {predicted:.3}, observed g_c = {:?}", sweep.g_c);
    Ok(())
}
