//! Density of the network lifetime and where it peaks.

use lifespan::geometry::AreaShape;
use lifespan::models::{EnergyModel, TrafficModel, FIRST_ORDER_RADIO_C, FIRST_ORDER_RADIO_K};
use lifespan::network::{
    network_pdf, survival_moments, tau_for_mean_survival, LifetimeQuery, MomentOptions,
};

fn main() -> lifespan::Result<()> {
    let shape = AreaShape::circle(10.0)?;
    let energy = EnergyModel::adjustable(FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 0.011)?;
    let traffic = TrafficModel::poisson(1.0)?;
    let beta = 0.3;

    // the density peaks where the mean survival crosses 1 - beta
    let peak = tau_for_mean_survival(
        &shape,
        &energy,
        &traffic,
        1.0 - beta,
        &MomentOptions::default(),
    )?;
    println!("mu(tau) = {} at tau = {peak:.4} h", 1.0 - beta);

    let mut best = (0.0, 0.0);
    for i in 0..=40 {
        let tau = peak - 4.0 + 0.2 * i as f64;
        let q = LifetimeQuery::new(tau, beta, 500)?;
        let pdf = network_pdf(tau, &q, &shape, &energy, &traffic)?;
        let mu = survival_moments(&shape, &energy, &traffic, tau)?.mu();
        if pdf > best.1 {
            best = (tau, pdf);
        }
        println!("{tau:>9.3} mu={mu:.5} pdf={pdf:.6}");
    }
    println!("grid maximum at tau = {:.3} h", best.0);
    Ok(())
}
