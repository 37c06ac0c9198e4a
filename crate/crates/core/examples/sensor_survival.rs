//! Survival of one sensor with a fixed packet budget: exact gamma tail, the
//! integer-budget version the simulator uses, and the normal approximation.

use lifespan::sensor::{survival_clt, survival_exact, survival_floor};

fn main() -> lifespan::Result<()> {
    let rate = 1.0;
    println!(
        "{:>6} {:>8} {:>12} {:>12} {:>12}",
        "p", "tau_h", "exact", "floor", "clt"
    );
    for p in [20.5, 220.0, 219.97] {
        for tau in [0.8 * p, p, 1.2 * p] {
            println!(
                "{p:>6} {tau:>8.2} {:>12.6} {:>12.6} {:>12.6}",
                survival_exact(p, rate, tau)?,
                survival_floor(p, rate, tau)?,
                survival_clt(p, rate, tau)?,
            );
        }
    }
    Ok(())
}
