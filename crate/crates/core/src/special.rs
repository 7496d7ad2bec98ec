//! Riemann zeta and polylogarithm on the real line.

use std::f64::consts::{LN_2, PI};

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

// Terms in the alternating-series acceleration; error ~ 3 / (3 + sqrt 8)^n.
const ETA_TERMS: usize = 32;

/// Dirichlet eta `sum (-1)^(k+1) / k^s` for real `s > 0`, via the
/// Cohen-Rodriguez Villegas-Zagier acceleration of the alternating series.
fn eta(s: f64) -> f64 {
    let n = ETA_TERMS;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 1.0;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = 0.0;
    for (k, dk) in d.iter().take(n).enumerate() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dk - dn) / ((k + 1) as f64).powf(s);
    }
    -sum / dn
}

/// Zeta on the whole real line except the pole at 1.
pub(crate) fn zeta_real(s: f64) -> f64 {
    if s == 1.0 {
        return f64::INFINITY;
    }
    if s >= 0.5 {
        // 1 - 2^(1-s), computed without cancellation near s = 1.
        let denom = -((1.0 - s) * LN_2).exp_m1();
        eta(s) / denom
    } else {
        // Reflection: zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s).
        if s == s.floor() && (s as i64) % 2 == 0 {
            return if s == 0.0 { -0.5 } else { 0.0 };
        }
        2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(1.0 - s) * zeta_real(1.0 - s)
    }
}

/// Riemann zeta `sum_{k>=1} k^-s` for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    if s.is_nan() {
        return Err(Error::InvalidParameter("zeta argument is NaN".into()));
    }
    if s <= 1.0 {
        return Err(Error::Divergent(format!("zeta({s}) diverges for s <= 1")));
    }
    Ok(zeta_real(s))
}

/// Polylogarithm `Li_s(x) = sum_{i>=1} x^i / i^s` for `x` in `[0, 1]`.
///
/// `x = 1` requires `s > 1` and returns `zeta(s)`.
pub fn polylog(s: f64, x: f64) -> Result<f64> {
    if s.is_nan() || x.is_nan() {
        return Err(Error::InvalidParameter("polylog argument is NaN".into()));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidParameter(format!("polylog argument x = {x} outside [0, 1]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        if s <= 1.0 {
            return Err(Error::Divergent(format!("Li_{s}(1) diverges for s <= 1")));
        }
        return Ok(zeta_real(s));
    }
    if x <= 0.5 {
        Ok(polylog_series(s, x))
    } else {
        Ok(polylog_near_one(s, x.ln()))
    }
}

fn polylog_series(s: f64, x: f64) -> f64 {
    // Terms i^-s x^i peak near i = -s / ln x when s < 0.
    let peak = if s < 0.0 { (-s / -x.ln()).ceil() as usize } else { 0 };
    let mut sum = 0.0;
    let mut xi = 1.0;
    for i in 1.. {
        xi *= x;
        let term = xi * (i as f64).powf(-s);
        sum += term;
        if i > peak && term <= 1e-17 * sum.abs() {
            break;
        }
        if i > 100_000 {
            break;
        }
    }
    sum
}

/// Expansion in `mu = ln x`, valid for `|mu| < 2 pi`:
/// `Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!`,
/// with the logarithmic form when `s` is a positive integer.
fn polylog_near_one(s: f64, mu: f64) -> f64 {
    let rounded = s.round();
    // Within 1e-8 of a positive integer the two singular terms cancel
    // catastrophically; the integer form is then accurate to ~1e-8.
    let integer = rounded >= 1.0 && (s - rounded).abs() < 1e-8;
    let s = if integer { rounded } else { s };

    let mut sum = 0.0;
    let mut power = 1.0; // mu^k / k!
    let mut previous = f64::INFINITY;
    let singular_k = if integer { Some(rounded as usize - 1) } else { None };
    for k in 0..80usize {
        if k > 0 {
            power *= mu / k as f64;
        }
        let term = if Some(k) == singular_k {
            let harmonic: f64 = (1..=k).map(|j| 1.0 / j as f64).sum();
            power * (harmonic - (-mu).ln())
        } else {
            zeta_real(s - k as f64) * power
        };
        sum += term;
        // zeta vanishes at negative even integers, so require two small terms in a row.
        let small = term.abs() <= 1e-17 * sum.abs().max(1e-300);
        if k > 4 && small && previous <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        previous = term.abs();
    }
    if !integer {
        sum += gamma(1.0 - s) * (-mu).powf(s - 1.0);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn zeta_known_values() {
        assert!(close(zeta(2.0).unwrap(), PI * PI / 6.0, 1e-14));
        assert!(close(zeta(3.0).unwrap(), 1.202_056_903_159_594_3, 1e-14));
        assert!(close(zeta(4.0).unwrap(), PI.powi(4) / 90.0, 1e-14));
        // Reference values from 30-digit arithmetic.
        assert!(close(zeta(2.5).unwrap(), 1.341_487_257_250_917_2, 1e-13));
        assert!(close(zeta(1.5).unwrap(), 2.612_375_348_685_488_3, 1e-13));
        assert!(close(zeta(1.0001).unwrap(), 10_000.577_222_947_539, 1e-8));
    }

    #[test]
    fn zeta_domain() {
        assert!(matches!(zeta(1.0), Err(Error::Divergent(_))));
        assert!(matches!(zeta(0.5), Err(Error::Divergent(_))));
        assert!(zeta(f64::NAN).is_err());
    }

    #[test]
    fn zeta_reflection() {
        assert!(close(zeta_real(0.0), -0.5, 1e-15));
        assert!(close(zeta_real(-1.0), -1.0 / 12.0, 1e-14));
        assert!(close(zeta_real(-3.0), 1.0 / 120.0, 1e-14));
        assert_eq!(zeta_real(-2.0), 0.0);
        assert!(close(zeta_real(0.5), -1.460_354_508_809_586_8, 1e-13));
    }

    #[test]
    fn polylog_examples() {
        assert!(close(polylog(2.0, 1.0).unwrap(), PI * PI / 6.0, 1e-14));
        assert!(close(polylog(1.0, 0.5).unwrap(), LN_2, 1e-15));
        assert!(close(polylog(3.7, 1.0).unwrap(), zeta(3.7).unwrap(), 0.0));
        assert!(matches!(polylog(1.0, 1.0), Err(Error::Divergent(_))));
        assert!(polylog(2.0, 1.5).is_err());
        assert_eq!(polylog(-3.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn polylog_closed_forms() {
        for &x in &[0.1, 0.3, 0.5, 0.6, 0.9, 0.99, 0.999_999] {
            let li1 = -(-x as f64).ln_1p();
            assert!(close(polylog(1.0, x).unwrap(), li1, 1e-13 * li1.max(1.0)), "Li_1({x})");
            let li0 = x / (1.0 - x);
            assert!(close(polylog(0.0, x).unwrap(), li0, 1e-12 * li0.max(1.0)), "Li_0({x})");
            let lim1 = x / (1.0 - x).powi(2);
            assert!(close(polylog(-1.0, x).unwrap(), lim1, 1e-12 * lim1.max(1.0)), "Li_-1({x})");
        }
        let li2_half = PI * PI / 12.0 - LN_2 * LN_2 / 2.0;
        assert!(close(polylog(2.0, 0.5).unwrap(), li2_half, 1e-15));
    }

    #[test]
    fn polylog_reference_values() {
        // Reference values from 30-digit arithmetic.
        let cases = [
            (0.5, 0.9, 4.021_950_427_473_361_3),
            (1.5, 0.999, 2.501_708_465_341_355_6),
            (-1.5, 0.5, 3.293_143_919_512_913_7),
            (3.0, 0.7, 0.780_063_934_257_661_5),
            (2.0, 0.99999, 1.644_808_936_992_927),
            (-0.7, 0.95, 141.527_790_361_234_28),
            (2.5, (-0.1f64).exp(), 1.147_715_706_869_265_8),
            (1.5, (-0.1f64).exp(), 1.636_377_407_808_501_5),
            (0.5, (-0.1f64).exp(), 4.165_296_503_346_587_5),
            (1.5, (-1e-6f64).exp(), 2.608_831_901_338_082_2),
            (2.5, (-1e-6f64).exp(), 1.341_484_647_238_110_1),
        ];
        for (s, x, want) in cases {
            let got = polylog(s, x).unwrap();
            assert!(close(got, want, 1e-12 * want.abs().max(1.0)), "Li_{s}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn near_integer_order() {
        let got = polylog(1.000_000_1, 0.5).unwrap();
        assert!(close(got, 0.693_147_163_270_266_1, 1e-9));
    }
}
