//! Probability that a 500-node single-hop network is still alive at tau,
//! for several dead-node ratios.

use lifespan::geometry::AreaShape;
use lifespan::models::{EnergyModel, TrafficModel, FIRST_ORDER_RADIO_C, FIRST_ORDER_RADIO_K};
use lifespan::network::{network_ccdf, survival_moments, LifetimeQuery};

fn main() -> lifespan::Result<()> {
    let shape = AreaShape::circle(10.0)?;
    let energy = EnergyModel::adjustable(FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 0.011)?;
    let traffic = TrafficModel::poisson(1.0)?;
    let betas = [0.1, 0.3, 0.5, 0.7, 0.9];

    print!("{:>6} {:>8}", "tau_h", "mu");
    for b in betas {
        print!(" {:>9}", format!("b={b}"));
    }
    println!();
    for tau in (190..=250).step_by(5).map(f64::from) {
        let m = survival_moments(&shape, &energy, &traffic, tau)?;
        print!("{tau:>6} {:>8.5}", m.mu());
        for beta in betas {
            let q = LifetimeQuery::new(tau, beta, 500)?;
            print!(" {:>9.5}", network_ccdf(&q, &m));
        }
        println!();
    }
    Ok(())
}
