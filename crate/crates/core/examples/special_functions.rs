//! Special functions with full relative precision in the far tails.

use lifespan::specfun::{
    erfc, gaussian_ccdf, gaussian_ccdf_inv, ln_gamma, regularized_lower_gamma,
    regularized_upper_gamma,
};

fn main() -> lifespan::Result<()> {
    for x in [0.5, 5.0, 20.0] {
        println!("erfc({x}) = {:e}", erfc(x));
    }
    for x in [1.0, 8.0, 30.0] {
        let q = gaussian_ccdf(x)?;
        println!("Q({x}) = {q:e}, Q^-1 = {}", gaussian_ccdf_inv(q)?);
    }
    println!("ln Gamma(220) = {}", ln_gamma(220.0));
    for (a, x) in [(220.0, 100.0), (220.0, 220.0), (1991.7, 3983.4)] {
        println!(
            "P({a}, {x}) = {:e}, Q({a}, {x}) = {:e}",
            regularized_lower_gamma(a, x)?,
            regularized_upper_gamma(a, x)?
        );
    }
    Ok(())
}
