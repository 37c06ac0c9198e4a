//! Packet budget as a function of distance and its density over a circle.

use lifespan::geometry::{capacity_pdf, capacity_support, AreaShape};
use lifespan::models::{packet_capacity, packet_energy, EnergyModel, PowerControl};

fn main() -> lifespan::Result<()> {
    // 1.3 fJ/bit/m^4 amplifier, 50 nJ/bit electronics, 1000-bit packets, 11 mJ
    let energy =
        EnergyModel::from_bit_level(1.3e-15, 5e-8, 1000.0, 4.0, 0.011, PowerControl::Adjustable)?;
    for d in [0.0, 5.0, 10.0, 20.0, 40.0] {
        println!(
            "d = {d:>4} m: e(d) = {:.4e} J, p = {:.3}",
            packet_energy(&energy, d)?,
            packet_capacity(&energy, d)?
        );
    }

    let shape = AreaShape::circle(40.0)?;
    let s = capacity_support(&shape, &energy)?;
    println!("budget support over R = 40 m: [{:.3}, {:.3})", s.lo, s.hi);
    for i in 0..8 {
        let x = s.lo + (s.hi - s.lo) * (i as f64 + 0.5) / 8.0;
        println!("  f_p({x:.2}) = {:.5}", capacity_pdf(&shape, &energy, x)?);
    }
    Ok(())
}
