//! Exact Poisson-binomial tail against its Poisson approximation and the Le Cam bound.

use netrel::assessment::{critical_edge_count, le_cam_bound, rel_c_heterogeneous, rel_c_poisson_approx};

fn main() -> netrel::Result<()> {
    for (label, probs) in [
        ("small probabilities", vec![0.02, 0.05, 0.01, 0.03, 0.04, 0.02, 0.06, 0.01]),
        ("mixed probabilities", vec![0.9, 0.5, 0.2, 0.7, 0.35, 0.6]),
        ("fifty links at 0.2", vec![0.2; 50]),
    ] {
        let m_c = critical_edge_count(probs.len(), 0.3)?;
        let exact = rel_c_heterogeneous(&probs, m_c)?;
        let approx = rel_c_poisson_approx(&probs, m_c)?;
        println!(
            "{label:>20}: N = {:>3}, M_c = {m_c:>2}, exact {exact:.6}, Poisson {:.6}, |diff| {:.2e} <= {:.2e}",
            probs.len(),
            approx.approx,
            (exact - approx.approx).abs(),
            le_cam_bound(&probs)
        );
    }
    Ok(())
}
