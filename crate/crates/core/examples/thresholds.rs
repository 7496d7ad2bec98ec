//! Percolation thresholds for several degree-distribution families, and the
//! zeta-family threshold scanned over the exponent.

use netrel::percolation::{bond_threshold, threshold_power_cutoff, threshold_truncated, threshold_zeta, ThresholdRule};
use netrel::DegreeDistribution;

fn main() -> netrel::Result<()> {
    let poisson = DegreeDistribution::poisson(4.0)?;
    println!("Poisson(4): p_c = {}", bond_threshold(&poisson)?.p_c);

    let five_node = DegreeDistribution::from_degrees(&[4, 4, 3, 3, 2])?;
    println!("degrees (4,4,3,3,2): p_c = {:.6}", bond_threshold(&five_node)?.p_c);

    let k4 = DegreeDistribution::from_degrees(&[3, 3, 3, 3])?;
    for rule in [ThresholdRule::Moment, ThresholdRule::MeanInverse] {
        println!("K4 with rule {rule}: p_c = {:.6}", rule.resolve(&k4)?.p_c);
    }

    let cutoff = threshold_power_cutoff(2.5, 100.0)?;
    println!("power law with cutoff (2.5, 100): p_c = {:.6}", cutoff.p_c);
    println!("truncated power law (2.5, 1, 11): p_c = {:.6}", threshold_truncated(2.5, 1, 11)?.p_c);
    println!("zeta(2.5): vanishing threshold = {}", threshold_zeta(2.5)?.vanishing_threshold);

    println!("\ngamma,p_c");
    for i in 1..=20 {
        let gamma = 3.0 + 0.05 * i as f64;
        println!("{gamma:.2},{:.6}", threshold_zeta(gamma)?.p_c);
    }
    Ok(())
}
