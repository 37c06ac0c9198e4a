//! Same area, different shape: corners push sensors away from the sink,
//! which lowers their budgets and the network lifetime.

use lifespan::geometry::{distance_cdf, AreaShape};
use lifespan::models::{EnergyModel, TrafficModel, FIRST_ORDER_RADIO_C, FIRST_ORDER_RADIO_K};
use lifespan::network::{lifetime_ccdf, LifetimeQuery, MomentOptions};

fn main() -> lifespan::Result<()> {
    let area = std::f64::consts::PI * 50.0 * 50.0;
    let shapes = [
        ("circle", AreaShape::circle_with_area(area)?),
        ("hexagon", AreaShape::polygon_with_area(6, area)?),
        ("square", AreaShape::polygon_with_area(4, area)?),
        ("triangle", AreaShape::polygon_with_area(3, area)?),
    ];
    let energy = EnergyModel::adjustable(FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 0.011)?;
    let traffic = TrafficModel::poisson(1.0)?;
    for (name, shape) in &shapes {
        print!(
            "{name:<9} R_c={:>6.2} P(d<=40)={:.3}",
            shape.circumradius(),
            distance_cdf(shape, 40.0)
        );
        for tau in [190.0, 196.0, 200.0] {
            let q = LifetimeQuery::new(tau, 0.3, 500)?;
            print!(
                " P(L>={tau})={:.4}",
                lifetime_ccdf(shape, &energy, &traffic, &q, &MomentOptions::default())?
            );
        }
        println!();
    }
    Ok(())
}
