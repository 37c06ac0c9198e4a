//! Large-N verdicts: the sign of 1 - beta - mu decides whether the ccdf
//! goes to 0 or 1, and the error exponent says how fast.

use lifespan::network::{
    asymptotic_error_exponent, asymptotic_predict, network_ccdf, LifetimeQuery, SurvivalMoments,
};

fn main() -> lifespan::Result<()> {
    let beta = 0.3;
    for mu in [0.6, 0.68, 0.7, 0.72, 0.8] {
        let verdict = asymptotic_predict(beta, mu);
        let rate = asymptotic_error_exponent(beta, mu);
        print!("mu={mu:<5} {:<9} exponent={rate:<10.3e}", verdict.label());
        let m = SurvivalMoments::new(mu, 100.0)?;
        for n in [10, 100, 1_000, 10_000] {
            let q = LifetimeQuery::new(100.0, beta, n)?;
            print!(" N={n}: {:.4}", network_ccdf(&q, &m));
        }
        println!();
    }
    Ok(())
}
