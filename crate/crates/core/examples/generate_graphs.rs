//! Random graph generators: configuration model and binomial graphs.

use netrel::graph::write_edge_list;
use netrel::simulation::{generate_binomial, generate_configuration_model, sample_degree_sequence};
use netrel::DegreeDistribution;

fn main() -> netrel::Result<()> {
    let dist = DegreeDistribution::truncated_power_law(2.5, 1, 11)?;
    let degrees = sample_degree_sequence(&dist, 1000, 3)?;
    let (graph, stats) = generate_configuration_model(&degrees, 3)?;
    let max_degree = graph.degree_sequence().into_iter().max().unwrap_or(0);
    println!(
        "configuration model: {} nodes, {} edges, max degree {max_degree}, {} self-loops and {} multi-edges erased",
        graph.node_count(),
        graph.edge_count(),
        stats.self_loops,
        stats.multi_edges
    );

    let er = generate_binomial(12, 0.3, 3)?;
    println!("binomial graph G(12, 0.3) as an edge list:");
    print!("{}", write_edge_list(&er, None));
    Ok(())
}
