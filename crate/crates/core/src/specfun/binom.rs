use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// `ln C(n, j)` via log-gamma.
pub fn ln_choose(n: u64, j: u64) -> f64 {
    debug_assert!(j <= n);
    if j == 0 || j == n {
        return 0.0;
    }
    ln_gamma(n as f64 + 1.0) - ln_gamma(j as f64 + 1.0) - ln_gamma((n - j) as f64 + 1.0)
}

/// Log-probability of `j` successes in `n` Bernoulli(`q`) trials.
///
/// Returns `-inf` for impossible outcomes at `q ∈ {0, 1}`.
pub fn binomial_log_pmf(n: u64, j: u64, q: f64) -> Result<f64> {
    if j > n {
        return Err(Error::domain(
            "binomial_log_pmf",
            format!("j = {j} exceeds n = {n}"),
        ));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(
            "binomial_log_pmf",
            format!("q must lie in [0, 1], got {q}"),
        ));
    }
    let failures = n - j;
    if q == 0.0 {
        return Ok(if j == 0 { 0.0 } else { f64::NEG_INFINITY });
    }
    if q == 1.0 {
        return Ok(if failures == 0 {
            0.0
        } else {
            f64::NEG_INFINITY
        });
    }
    Ok(ln_choose(n, j) + j as f64 * q.ln() + failures as f64 * (-q).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((binomial_log_pmf(1, 1, 0.3).unwrap() - 0.3f64.ln()).abs() < 1e-15);
        let lp = binomial_log_pmf(500, 0, 0.04).unwrap();
        assert!((lp - 500.0 * 0.96f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_probabilities() {
        assert_eq!(binomial_log_pmf(5, 0, 0.0).unwrap(), 0.0);
        assert_eq!(binomial_log_pmf(5, 1, 0.0).unwrap(), f64::NEG_INFINITY);
        assert_eq!(binomial_log_pmf(5, 5, 1.0).unwrap(), 0.0);
        assert_eq!(binomial_log_pmf(5, 4, 1.0).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(binomial_log_pmf(5, 6, 0.5).is_err());
        assert!(binomial_log_pmf(5, 2, -0.1).is_err());
        assert!(binomial_log_pmf(5, 2, 1.1).is_err());
        assert!(binomial_log_pmf(5, 2, f64::NAN).is_err());
    }

    #[test]
    fn mass_sums_to_one() {
        for &n in &[10u64, 500, 5000] {
            for &q in &[0.01, 0.04, 0.5] {
                let total: f64 = (0..=n)
                    .map(|j| binomial_log_pmf(n, j, q).unwrap().exp())
                    .sum();
                assert!((total - 1.0).abs() < 1e-10, "n={n} q={q} total={total}");
            }
        }
    }
}
