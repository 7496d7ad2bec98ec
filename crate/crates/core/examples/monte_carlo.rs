//! Monte Carlo reliability estimates checked against exact values.

use netrel::exact::reliability_heterogeneous;
use netrel::simulation::estimate_reliability;
use netrel::Graph;

fn main() -> netrel::Result<()> {
    let cases = [
        ("K4, p = 0.5", Graph::complete(4), vec![0.5; 6]),
        ("5-cycle, p = 0.8", Graph::cycle(5), vec![0.8; 5]),
        ("K5, mixed", Graph::complete(5), (0..10).map(|i| 0.4 + 0.05 * i as f64).collect()),
    ];
    for (label, graph, probs) in cases {
        let exact = reliability_heterogeneous(&graph, &probs)?;
        let mc = estimate_reliability(&graph, &probs, 200_000, 42)?;
        println!(
            "{label:>16}: exact {exact:.6}, estimate {:.6} +/- {:.6} ({:.2} SE)",
            mc.estimate,
            mc.standard_error,
            (mc.estimate - exact).abs() / mc.standard_error
        );
    }
    Ok(())
}
