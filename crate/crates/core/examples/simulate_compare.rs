//! Monte Carlo lifetimes against the analytic ccdf with Wilson intervals.
//!
//! Thread count: `RAYON_NUM_THREADS`; results do not depend on it.

use lifespan::geometry::AreaShape;
use lifespan::models::{EnergyModel, TrafficModel, FIRST_ORDER_RADIO_C, FIRST_ORDER_RADIO_K};
use lifespan::montecarlo::{empirical_vs_analytic, simulate_single_hop, SimulationPlan};
use lifespan::network::{lifetime_ccdf, LifetimeQuery, MomentOptions};

fn main() -> lifespan::Result<()> {
    let shape = AreaShape::circle(10.0)?;
    let energy = EnergyModel::adjustable(FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 0.011)?;
    let traffic = TrafficModel::poisson(1.0)?;
    let plan = SimulationPlan::new(500, 0.3, 2000, 20240601)?;

    let emp = simulate_single_hop(&shape, &energy, &traffic, &plan)?;
    // the simulator spends floor(p) packets, so compare with floored budgets
    let opts = MomentOptions::floor();
    let grid: Vec<f64> = (0..13).map(|i| 205.0 + i as f64).collect();
    let report = empirical_vs_analytic(
        &emp,
        |tau| {
            lifetime_ccdf(
                &shape,
                &energy,
                &traffic,
                &LifetimeQuery::new(tau, plan.beta, plan.nodes)?,
                &opts,
            )
        },
        &grid,
        0.99,
    )?;
    for r in &report.rows {
        println!(
            "tau={:>5} analytic={:.4} empirical={:.4} [{:.4}, {:.4}]{}",
            r.tau,
            r.analytic,
            r.empirical,
            r.ci_low,
            r.ci_high,
            if r.within_ci { "" } else { "  *" }
        );
    }
    println!(
        "max |analytic - empirical| = {:.4} over {} trials",
        report.max_abs_deviation, report.trials
    );
    Ok(())
}
