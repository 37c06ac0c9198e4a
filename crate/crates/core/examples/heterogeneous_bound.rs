//! Sensors with different survival probabilities but the same mean. Identical
//! sensors give the largest variance, so their tail bounds the mixed one from
//! above when 1 - beta - mu > 0 and from below otherwise. The normal formula
//! follows the identical-sensor tail up to its lattice error, about
//! 1/sqrt(2 pi N var), so the ordering shows clearly only for large N.

use lifespan::network::{
    hetero_bound_direction, network_ccdf, survivor_threshold, LifetimeQuery, SurvivalMoments,
};
use lifespan::specfun::binomial_log_pmf;

// P(at least `need` of the sensors alive), by dynamic programming over sensors
fn poisson_binomial_tail(ps: &[f64], need: usize) -> f64 {
    let mut dist = vec![1.0];
    for &p in ps {
        let mut next = vec![0.0; dist.len() + 1];
        for (k, &w) in dist.iter().enumerate() {
            next[k] += w * (1.0 - p);
            next[k + 1] += w * p;
        }
        dist = next;
    }
    dist[need..].iter().sum()
}

fn main() -> lifespan::Result<()> {
    let n = 2000;
    let beta = 0.3;
    let need = survivor_threshold(n as u64, beta) as usize;
    for (lo, hi) in [(0.54, 0.84), (0.56, 0.86)] {
        let ps: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { lo } else { hi }).collect();
        let mu = ps.iter().sum::<f64>() / n as f64;
        let q = LifetimeQuery::new(1.0, beta, n as u64)?;
        let formula = network_ccdf(&q, &SurvivalMoments::new(mu, 1.0)?);
        let hetero = poisson_binomial_tail(&ps, need);
        let homog: f64 = (need as u64..=n as u64)
            .map(|j| binomial_log_pmf(n as u64, j, mu).unwrap().exp())
            .sum();
        println!(
            "mu={mu:.2}: formula {formula:.4} ({:?}), identical sensors {homog:.4}, mixed sensors {hetero:.4}",
            hetero_bound_direction(&q, mu)
        );
    }
    Ok(())
}
