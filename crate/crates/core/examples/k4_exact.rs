//! Exact all-terminal reliability of the complete graph on four nodes.

use netrel::exact::{f_coefficients, reliability_factoring, reliability_heterogeneous, reliability_homogeneous};
use netrel::Graph;

fn main() -> netrel::Result<()> {
    let k4 = Graph::complete(4);
    let f = f_coefficients(&k4)?;
    println!("F-coefficients of K4: {:?}", f.as_slice());
    println!("spanning trees: {}", f.spanning_trees(4));

    println!("{:>5} {:>12}", "p", "Rel(K4, p)");
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        println!("{p:>5.1} {:>12.8}", reliability_homogeneous(&f, p)?);
    }

    let probs = [0.9, 0.8, 0.7, 0.95, 0.6, 0.85];
    let enumerated = reliability_heterogeneous(&k4, &probs)?;
    let factored = reliability_factoring(&k4, &probs)?;
    println!("unequal edges: enumeration {enumerated:.12}, factoring {factored:.12}");
    Ok(())
}
