//! Per-packet energy dissipation and packet-generation processes.
//!
//! Units are SI for energy and distance (joules, meters) and hours for time.
//! Rates are packets per hour.

use rand::Rng;

use crate::error::{Error, Result};

/// Path-loss coefficient `k` of a first-order radio sending 1000-bit packets
/// (0.0013 pJ/bit/m⁴), in J/m⁴.
pub const FIRST_ORDER_RADIO_K: f64 = 1.3e-12;
/// Per-packet overhead `c` of the same radio (50 nJ/bit), in J.
pub const FIRST_ORDER_RADIO_C: f64 = 5e-5;

/// How a sensor sets its transmit power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerControl {
    /// Power is tuned to the distance `d` of the receiver; a packet costs `k·d^α + c`.
    Adjustable,
    /// Every packet is sent with enough power to reach `range` meters.
    FixedRange { range: f64 },
}

/// Per-packet energy model `e(d) = k·d^α + c` and the battery it drains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyModel {
    /// Loss coefficient per packet, J/m^α.
    pub k: f64,
    /// Distance-independent overhead per packet, J.
    pub c: f64,
    /// Path-loss exponent.
    pub alpha: f64,
    /// Initial battery energy, J.
    pub initial_energy: f64,
    pub power: PowerControl,
}

impl EnergyModel {
    pub fn adjustable(k: f64, c: f64, alpha: f64, initial_energy: f64) -> Result<Self> {
        let model = Self {
            k,
            c,
            alpha,
            initial_energy,
            power: PowerControl::Adjustable,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn fixed_range(
        range: f64,
        k: f64,
        c: f64,
        alpha: f64,
        initial_energy: f64,
    ) -> Result<Self> {
        let model = Self {
            k,
            c,
            alpha,
            initial_energy,
            power: PowerControl::FixedRange { range },
        };
        model.validate()?;
        Ok(model)
    }

    /// Builds the packet-level model from per-bit constants: `k = l·e_t`, `c = l·e_o`.
    pub fn from_bit_level(
        e_t: f64,
        e_o: f64,
        packet_bits: f64,
        alpha: f64,
        initial_energy: f64,
        power: PowerControl,
    ) -> Result<Self> {
        let model = Self {
            k: packet_bits * e_t,
            c: packet_bits * e_o,
            alpha,
            initial_energy,
            power,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_initial_energy(self, initial_energy: f64) -> Result<Self> {
        let model = Self {
            initial_energy,
            ..self
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_power(self, power: PowerControl) -> Result<Self> {
        let model = Self { power, ..self };
        model.validate()?;
        Ok(model)
    }

    pub fn fixed_range_m(&self) -> Option<f64> {
        match self.power {
            PowerControl::FixedRange { range } => Some(range),
            PowerControl::Adjustable => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::domain(
                    "EnergyModel",
                    format!("{name} must be finite and > 0, got {v}"),
                ))
            }
        };
        positive("k", self.k)?;
        positive("c", self.c)?;
        positive("alpha", self.alpha)?;
        positive("initial_energy", self.initial_energy)?;
        if let PowerControl::FixedRange { range } = self.power {
            positive("range", range)?;
        }
        if !(2.0..=4.0).contains(&self.alpha) {
            log::warn!(
                "path-loss exponent {} lies outside the usual range [2, 4]",
                self.alpha
            );
        }
        Ok(())
    }
}

/// Energy to transmit one packet to a receiver `d` meters away.
///
/// Fixed-range radios ignore `d` and always pay for their configured range.
pub fn packet_energy(energy: &EnergyModel, d: f64) -> Result<f64> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(Error::domain(
            "packet_energy",
            format!("distance must be finite and >= 0, got {d}"),
        ));
    }
    Ok(packet_energy_unchecked(energy, d))
}

pub(crate) fn packet_energy_unchecked(energy: &EnergyModel, d: f64) -> f64 {
    let reach = match energy.power {
        PowerControl::Adjustable => d,
        PowerControl::FixedRange { range } => range,
    };
    energy.k * reach.powf(energy.alpha) + energy.c
}

/// Real-valued packet budget `E_i / e(d)`; the integer number of packets a
/// sensor can actually send is its floor.
pub fn packet_capacity(energy: &EnergyModel, d: f64) -> Result<f64> {
    Ok(energy.initial_energy / packet_energy(energy, d)?)
}

/// Inverse of the adjustable-power capacity map: the distance at which the
/// packet budget equals `capacity`. `None` if no distance achieves it.
pub fn distance_for_capacity(energy: &EnergyModel, capacity: f64) -> Option<f64> {
    let spare = energy.initial_energy - energy.c * capacity;
    if !(capacity > 0.0) || spare < 0.0 {
        return None;
    }
    Some((spare / (energy.k * capacity)).powf(1.0 / energy.alpha))
}

/// Piecewise-linear packet rate as a function of distance to the sink.
/// Values outside the table are held at the nearest endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct RateProfile {
    points: Vec<(f64, f64)>,
}

impl RateProfile {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("RateProfile", "table must not be empty"));
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::domain(
                    "RateProfile",
                    "distances must be strictly increasing",
                ));
            }
        }
        for &(d, rate) in &points {
            if !d.is_finite() || d < 0.0 {
                return Err(Error::domain("RateProfile", format!("bad distance {d}")));
            }
            if !rate.is_finite() || rate <= 0.0 {
                return Err(Error::domain(
                    "RateProfile",
                    format!("rate must be > 0, got {rate}"),
                ));
            }
        }
        Ok(Self { points })
    }

    pub fn constant(rate: f64) -> Result<Self> {
        Self::new(vec![(0.0, rate)])
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn rate_at(&self, d: f64) -> f64 {
        let pts = &self.points;
        if d <= pts[0].0 {
            return pts[0].1;
        }
        let last = pts[pts.len() - 1];
        if d >= last.0 {
            return last.1;
        }
        let i = pts.partition_point(|p| p.0 <= d);
        let (d0, r0) = pts[i - 1];
        let (d1, r1) = pts[i];
        r0 + (r1 - r0) * (d - d0) / (d1 - d0)
    }

    /// Distances where the interpolant has kinks.
    pub(crate) fn knots(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }
}

/// Packet-generation process of a sensor.
#[derive(Debug, Clone, PartialEq)]
pub enum TrafficModel {
    /// Poisson arrivals at `rate` packets per hour.
    Poisson { rate: f64 },
    /// Poisson arrivals whose rate depends on the sensor's distance to the sink.
    PositionPoisson(RateProfile),
    /// One packet every `period` hours.
    TimeDriven { period: f64 },
}

impl TrafficModel {
    pub fn poisson(rate: f64) -> Result<Self> {
        let t = TrafficModel::Poisson { rate };
        t.validate()?;
        Ok(t)
    }

    pub fn time_driven(period: f64) -> Result<Self> {
        let t = TrafficModel::TimeDriven { period };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            TrafficModel::Poisson { rate } if !(rate.is_finite() && *rate > 0.0) => Err(
                Error::domain("TrafficModel", format!("rate must be > 0, got {rate}")),
            ),
            TrafficModel::TimeDriven { period } if !(period.is_finite() && *period > 0.0) => Err(
                Error::domain("TrafficModel", format!("period must be > 0, got {period}")),
            ),
            _ => Ok(()),
        }
    }

    /// Mean packet rate of a sensor at distance `d`; `None` for time-driven traffic.
    pub fn rate_at(&self, d: f64) -> Option<f64> {
        match self {
            TrafficModel::Poisson { rate } => Some(*rate),
            TrafficModel::PositionPoisson(profile) => Some(profile.rate_at(d)),
            TrafficModel::TimeDriven { .. } => None,
        }
    }
}

/// Draws an exponential variate with the given rate by inverting its CDF.
#[inline]
pub(crate) fn sample_exponential<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    -(-u).ln_1p() / rate
}

/// Time until the next packet of a sensor at distance `d`.
pub fn sample_interarrival<R: Rng + ?Sized>(traffic: &TrafficModel, d: f64, rng: &mut R) -> f64 {
    match traffic {
        TrafficModel::Poisson { rate } => sample_exponential(*rate, rng),
        TrafficModel::PositionPoisson(profile) => sample_exponential(profile.rate_at(d), rng),
        TrafficModel::TimeDriven { period } => *period,
    }
}
