//! Multi-hop rings around the sink.
//!
//! Sensors transmit over a fixed range `r`, so the area splits into
//! `n = ⌈R/r⌉` concentric rings and every packet reaches the sink through the
//! first ring. Traffic is shared equally inside a ring, giving first-ring
//! nodes the rate `λ N / N₁`. The network is declared dead once a fraction
//! `β` of the first ring has died.

use crate::error::{Error, Result};
use crate::geometry::{distance_cdf, AreaShape};
use crate::models::{packet_capacity, EnergyModel, PowerControl};
use crate::network::{kernel, network_ccdf, LifetimeQuery, MomentOptions, SurvivalMoments};
use crate::specfun::binomial_log_pmf;

/// Deployment seen as rings of width `range` around the sink.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConfig {
    pub shape: AreaShape,
    /// Transmission range in meters.
    pub range: f64,
    pub nodes: u64,
    /// Packets per hour generated by each node.
    pub rate: f64,
}

impl RingConfig {
    pub fn new(shape: AreaShape, range: f64, nodes: u64, rate: f64) -> Result<Self> {
        let cfg = Self {
            shape,
            range,
            nodes,
            rate,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.shape.validate()?;
        if !(self.range.is_finite() && self.range > 0.0) {
            return Err(Error::domain(
                "RingConfig",
                format!("range must be > 0, got {}", self.range),
            ));
        }
        if self.nodes == 0 {
            return Err(Error::domain("RingConfig", "need at least one node"));
        }
        if !(self.rate.is_finite() && self.rate > 0.0) {
            return Err(Error::domain(
                "RingConfig",
                format!("rate must be > 0, got {}", self.rate),
            ));
        }
        Ok(())
    }

    /// `⌈R_c / r⌉`, with `R_c` the circumradius (the radius for a circle).
    pub fn ring_count(&self) -> u32 {
        let ratio = self.shape.circumradius() / self.range;
        ((ratio - 1e-12 * ratio).ceil() as u32).max(1)
    }
}

/// Probability that a uniformly placed sensor lands in ring `i` (1-based).
///
/// For a circle this is `r²(2i - 1)/R²`, with the outer ring truncated at
/// `R`. Polygons use differences of the exact distance cdf, which reduce to
/// `πr²/S` for the first ring when the disc of radius `r` fits inside.
pub fn ring_probability(cfg: &RingConfig, i: u32) -> Result<f64> {
    cfg.validate()?;
    let n = cfg.ring_count();
    if i == 0 || i > n {
        return Err(Error::domain(
            "ring_probability",
            format!("ring {i} outside 1..={n}"),
        ));
    }
    let r = cfg.range;
    let q = match cfg.shape {
        AreaShape::Circle { radius } => {
            if i < n {
                r * r * (2.0 * i as f64 - 1.0) / (radius * radius)
            } else {
                let inner = (i - 1) as f64 * r;
                1.0 - inner * inner / (radius * radius)
            }
        }
        AreaShape::RegularPolygon { .. } => {
            let outer = if i == n {
                1.0
            } else {
                distance_cdf(&cfg.shape, i as f64 * r)
            };
            outer - distance_cdf(&cfg.shape, (i - 1) as f64 * r)
        }
    };
    Ok(q.clamp(0.0, 1.0))
}

/// Per-node packet rate in ring `i`: `λ (N - Σ_{j<i} N_j) / N_i`.
pub fn ring_rate(cfg: &RingConfig, i: u32, counts: &[u64]) -> Result<f64> {
    cfg.validate()?;
    let n = cfg.ring_count() as usize;
    if counts.len() != n {
        return Err(Error::domain(
            "ring_rate",
            format!("expected {n} ring counts, got {}", counts.len()),
        ));
    }
    if i == 0 || i as usize > n {
        return Err(Error::domain(
            "ring_rate",
            format!("ring {i} outside 1..={n}"),
        ));
    }
    let total: u64 = counts.iter().sum();
    if total != cfg.nodes {
        return Err(Error::domain(
            "ring_rate",
            format!("counts sum to {total}, expected {}", cfg.nodes),
        ));
    }
    let own = counts[i as usize - 1];
    if own == 0 {
        return Err(Error::domain(
            "ring_rate",
            format!("ring {i} is empty, so its rate is undefined"),
        ));
    }
    let inner: u64 = counts[..i as usize - 1].iter().sum();
    Ok(cfg.rate * (cfg.nodes - inner) as f64 / own as f64)
}

/// Budget of a fixed-range sensor whose range matches the ring width.
pub(crate) fn ring_capacity(cfg: &RingConfig, energy: &EnergyModel) -> Result<f64> {
    energy.validate()?;
    match energy.power {
        PowerControl::FixedRange { range } => {
            if (range - cfg.range).abs() > 1e-9 * cfg.range {
                return Err(Error::invalid_model(
                    "multihop",
                    format!(
                        "energy model range {range} m differs from ring width {} m",
                        cfg.range
                    ),
                ));
            }
            packet_capacity(energy, 0.0)
        }
        PowerControl::Adjustable => Err(Error::invalid_model(
            "multihop",
            "rings need a fixed transmit range",
        )),
    }
}

/// `P(L ≥ τ)` for the first ring with the gamma survival kernel.
pub fn multihop_ccdf(cfg: &RingConfig, energy: &EnergyModel, tau: f64, beta: f64) -> Result<f64> {
    multihop_ccdf_with(cfg, energy, tau, beta, &MomentOptions::default())
}

/// `P(L ≥ τ) = Σ_j P(N₁ = j) Q(√j (1 - β - μ_j) / σ_j)` with `N₁` binomial
/// and `μ_j` the survival of one first-ring sensor at rate `λN/j`.
///
/// An empty first ring means the sink is unreachable, so that term is 0 for
/// `τ > 0`. Terms are accumulated with compensated summation.
pub fn multihop_ccdf_with(
    cfg: &RingConfig,
    energy: &EnergyModel,
    tau: f64,
    beta: f64,
    opts: &MomentOptions,
) -> Result<f64> {
    let query = LifetimeQuery::new(tau, beta, cfg.nodes)?;
    let p = ring_capacity(cfg, energy)?;
    if tau == 0.0 {
        return Ok(1.0);
    }
    let q1 = ring_probability(cfg, 1)?;
    ccdf_over(cfg, p, q1, &query, opts, 1, cfg.nodes)
}

fn ccdf_over(
    cfg: &RingConfig,
    p: f64,
    q1: f64,
    query: &LifetimeQuery,
    opts: &MomentOptions,
    first: u64,
    last: u64,
) -> Result<f64> {
    let mut sum = Neumaier::default();
    for j in first.max(1)..=last {
        let log_w = binomial_log_pmf(cfg.nodes, j, q1)?;
        if log_w < -745.0 {
            continue;
        }
        let load = cfg.rate * cfg.nodes as f64 / j as f64 * query.tau;
        let mu = kernel(opts, p, load).clamp(0.0, 1.0);
        let moments = SurvivalMoments::new(mu, query.tau)?;
        let term = network_ccdf(&LifetimeQuery { nodes: j, ..*query }, &moments);
        sum.add(log_w.exp() * term);
    }
    Ok(sum.total().clamp(0.0, 1.0))
}

#[derive(Debug, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
