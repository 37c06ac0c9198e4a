//! First-ring lifetime of a multi-hop network for several radio ranges.
//! Relays near the sink carry everyone's traffic, so they die first.

use lifespan::geometry::AreaShape;
use lifespan::models::{EnergyModel, FIRST_ORDER_RADIO_C, FIRST_ORDER_RADIO_K};
use lifespan::multihop::{multihop_ccdf, ring_probability, RingConfig};

fn main() -> lifespan::Result<()> {
    let shape = AreaShape::circle(100.0)?;
    let beta = 0.3;
    for range in [10.0, 20.0, 25.0, 50.0] {
        let cfg = RingConfig::new(shape, range, 500, 1.0)?;
        let energy =
            EnergyModel::fixed_range(range, FIRST_ORDER_RADIO_K, FIRST_ORDER_RADIO_C, 4.0, 0.1)?;
        print!(
            "r={range:>4} m, {} rings, q1={:.4}:",
            cfg.ring_count(),
            ring_probability(&cfg, 1)?
        );
        for tau in [50.0, 100.0, 200.0, 400.0] {
            print!(
                " P(L>={tau})={:.4}",
                multihop_ccdf(&cfg, &energy, tau, beta)?
            );
        }
        println!();
    }
    Ok(())
}
