use netrel::degree::DegreeDistribution;
use netrel::percolation::{
    bond_threshold, fixed_point_map, solve_fixed_point, threshold_power_cutoff, threshold_truncated, threshold_zeta,
    ThresholdRule,
};
use proptest::prelude::*;

/// `<k> / (<k^2> - <k>)` from direct sums over a truncated pmf.
fn direct_threshold(d: &DegreeDistribution) -> f64 {
    let pmf = d.truncated_pmf(1e-13).unwrap();
    let (m1, m2) = pmf.iter().enumerate().fold((0.0, 0.0), |(a, b), (k, &p)| {
        let k = k as f64;
        (a + k * p, b + k * k * p)
    });
    m1 / (m2 - m1)
}

proptest! {
    #[test]
    fn cutoff_closed_form_matches_moments(gamma in 0.5..4.0f64, kappa in 2.0..200.0f64) {
        let closed = threshold_power_cutoff(gamma, kappa).unwrap().p_c;
        let d = DegreeDistribution::power_law_cutoff(gamma, kappa).unwrap();
        prop_assert!((closed - bond_threshold(&d).unwrap().p_c).abs() < 1e-8);
        prop_assert!((closed - direct_threshold(&d)).abs() < 1e-8);
    }

    #[test]
    fn zeta_closed_form_matches_moments(gamma in 5.0..7.0f64) {
        let closed = threshold_zeta(gamma).unwrap().p_c;
        let d = DegreeDistribution::zeta(gamma).unwrap();
        prop_assert!((closed - bond_threshold(&d).unwrap().p_c).abs() < 1e-8);
        prop_assert!((closed - direct_threshold(&d)).abs() < 1e-8);
    }

    #[test]
    fn h_of_one_is_one(lambda in 0.1..20.0f64, gamma in 0.5..4.0f64, kappa in 2.0..100.0f64, p in 0.0..=1.0f64) {
        for d in [
            DegreeDistribution::poisson(lambda).unwrap(),
            DegreeDistribution::power_law_cutoff(gamma, kappa).unwrap(),
            DegreeDistribution::truncated_power_law(gamma + 1.0, 1, 20).unwrap(),
        ] {
            prop_assert!((fixed_point_map(&d, p, 1.0).unwrap() - 1.0).abs() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn reports_use_g_c_equals_one_minus_p_c(lambda in 0.5..20.0f64, gamma in 0.5..4.0f64, kappa in 2.0..100.0f64) {
        let poisson = DegreeDistribution::poisson(lambda).unwrap();
        for r in [
            bond_threshold(&poisson).unwrap(),
            ThresholdRule::MeanInverse.resolve(&poisson).unwrap(),
            threshold_power_cutoff(gamma, kappa).unwrap(),
        ] {
            prop_assert_eq!(r.g_c, 1.0 - r.p_c);
        }
    }
}

#[test]
fn truncated_closed_form_values() {
    let r = threshold_truncated(2.5, 1, 11).unwrap();
    assert!((r.p_c - 1.0 / (11f64.sqrt() - 1.0)).abs() < 1e-12);
    // gamma = 2.5 reduces to 1 / (sqrt(k_min k_max) - 1).
    let r = threshold_truncated(2.5, 4, 25).unwrap();
    assert!((r.p_c - 1.0 / (10.0 - 1.0)).abs() < 1e-12);
    // gamma > 3: 1 / ((gamma - 2) / (gamma - 3) k_min - 1).
    let r = threshold_truncated(4.0, 3, 100).unwrap();
    assert!((r.p_c - 1.0 / 5.0).abs() < 1e-12);
}

#[test]
fn truncated_closed_form_is_the_wide_support_limit() {
    // Continuum <k^2>/<k> on [a, b] for density ~ k^-gamma.
    let ratio = |g: f64, a: f64, b: f64| {
        let mom = |j: f64| (b.powf(j + 1.0 - g) - a.powf(j + 1.0 - g)) / (j + 1.0 - g);
        mom(2.0) / mom(1.0)
    };
    for &gamma in &[2.3, 2.5, 2.8, 3.5, 4.5] {
        let mut last_gap = f64::INFINITY;
        for &k_max in &[1e2, 1e4, 1e6, 1e8] {
            let exact = 1.0 / (ratio(gamma, 1.0, k_max) - 1.0);
            let formula = threshold_truncated(gamma, 1, k_max as usize).unwrap().p_c;
            let gap = ((exact - formula) / formula).abs();
            assert!(gap <= last_gap + 1e-15, "gamma {gamma}, k_max {k_max}: gap {gap} grew");
            last_gap = gap;
        }
        assert!(last_gap < 0.05, "gamma {gamma}: final relative gap {last_gap}");
    }
}

/// Largest `p_e` in the bracket where the solver still reports the trivial root.
fn locate_flip(d: &DegreeDistribution, mut lo: f64, mut hi: f64) -> f64 {
    assert!(!solve_fixed_point(d, lo).unwrap().nontrivial);
    assert!(solve_fixed_point(d, hi).unwrap().nontrivial);
    while hi - lo > 2e-7 {
        let mid = 0.5 * (lo + hi);
        if solve_fixed_point(d, mid).unwrap().nontrivial {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn nontrivial_root_appears_at_the_threshold() {
    for d in [
        DegreeDistribution::poisson(2.0).unwrap(),
        DegreeDistribution::poisson(4.0).unwrap(),
        DegreeDistribution::from_degrees(&[4, 4, 3, 3, 2]).unwrap(),
        DegreeDistribution::truncated_power_law(2.5, 1, 11).unwrap(),
    ] {
        let p_c = bond_threshold(&d).unwrap().p_c;
        let flip = locate_flip(&d, p_c - 0.05, (p_c + 0.05).min(1.0));
        assert!((flip - p_c).abs() < 1e-6, "{d:?}: flip {flip} vs p_c {p_c}");
    }
}
