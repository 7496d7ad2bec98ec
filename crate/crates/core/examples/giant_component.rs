//! Giant-component size from the excess-degree fixed point across edge probabilities.

use netrel::percolation::{bond_threshold, solve_fixed_point};
use netrel::DegreeDistribution;

fn main() -> netrel::Result<()> {
    for dist in [DegreeDistribution::poisson(2.0)?, DegreeDistribution::power_law_cutoff(2.5, 20.0)?] {
        let p_c = bond_threshold(&dist)?.p_c;
        println!("{dist:?}: p_c = {p_c:.4}");
        println!("{:>6} {:>10} {:>12}", "p_e", "root x", "nontrivial");
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let fp = solve_fixed_point(&dist, p)?;
            println!("{p:>6.1} {:>10.6} {:>12}", fp.root, fp.nontrivial);
        }
    }
    Ok(())
}
