//! Lifetime of a single sensor with a known packet budget.
//!
//! A sensor able to send `p` packets under Poisson(λ) traffic dies at the sum
//! of `⌊p⌋` exponential gaps, a gamma variate. The analytic path treats `p` as
//! continuous; [`survival_floor`] keeps the integer budget the simulator uses.

use crate::error::{Error, Result};
use crate::models::{packet_capacity, EnergyModel, PowerControl};
use crate::specfun::{gaussian_ccdf_unchecked, upper_gamma_unchecked};

fn check(op: &'static str, p: f64, rate: f64, tau: f64) -> Result<()> {
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::domain(
            op,
            format!("packet budget must be > 0, got {p}"),
        ));
    }
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::domain(op, format!("rate must be > 0, got {rate}")));
    }
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::domain(
            op,
            format!("threshold must be >= 0, got {tau}"),
        ));
    }
    Ok(())
}

/// `P(t ≥ τ) = 1 - γ(p, λτ)/Γ(p)` for a continuous budget `p`.
pub fn survival_exact(p: f64, rate: f64, tau: f64) -> Result<f64> {
    check("survival_exact", p, rate, tau)?;
    Ok(upper_gamma_unchecked(p, rate * tau))
}

/// Survival with the integer budget `⌊p⌋`. A sensor that cannot send a
/// single packet is dead at time zero.
pub fn survival_floor(p: f64, rate: f64, tau: f64) -> Result<f64> {
    check("survival_floor", p, rate, tau)?;
    Ok(survival_floor_unchecked(p, rate * tau))
}

pub(crate) fn survival_floor_unchecked(p: f64, load: f64) -> f64 {
    let packets = p.floor();
    if load == 0.0 {
        1.0
    } else if packets < 1.0 {
        0.0
    } else {
        upper_gamma_unchecked(packets, load)
    }
}

/// Central-limit approximation `Q((τ - p/λ) / (√p/λ))` to [`survival_exact`].
pub fn survival_clt(p: f64, rate: f64, tau: f64) -> Result<f64> {
    check("survival_clt", p, rate, tau)?;
    Ok(survival_clt_unchecked(p, rate * tau))
}

pub(crate) fn survival_clt_unchecked(p: f64, load: f64) -> f64 {
    gaussian_ccdf_unchecked((load - p) / p.sqrt())
}

/// CLT survival for a renewal process whose gaps have the given mean and
/// variance: the death time is approximately normal with mean `p·m` and
/// variance `p·v`.
pub fn survival_renewal_clt(p: f64, gap_mean: f64, gap_variance: f64, tau: f64) -> Result<f64> {
    check("survival_renewal_clt", p, 1.0 / gap_mean, tau)?;
    if !(gap_variance.is_finite() && gap_variance > 0.0) {
        return Err(Error::domain(
            "survival_renewal_clt",
            "gap variance must be > 0",
        ));
    }
    Ok(gaussian_ccdf_unchecked(
        (tau - p * gap_mean) / (p * gap_variance).sqrt(),
    ))
}

/// Survival of a fixed-range sensor, whose budget `p_f = E_i/(k r^α + c)` is
/// the same wherever it sits.
pub fn survival_fixed_range(energy: &EnergyModel, rate: f64, tau: f64) -> Result<f64> {
    match energy.power {
        PowerControl::FixedRange { .. } => survival_exact(packet_capacity(energy, 0.0)?, rate, tau),
        PowerControl::Adjustable => Err(Error::invalid_model(
            "survival_fixed_range",
            "requires a fixed-range energy model",
        )),
    }
}

/// Lifetime of a sensor sending one packet every `period` hours: `⌊p⌋·T`.
pub fn lifetime_time_driven(p: f64, period: f64) -> f64 {
    p.floor().max(0.0) * period
}
