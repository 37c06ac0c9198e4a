//! Single-hop network lifetime.
//!
//! Each of `N` nodes survives past `τ` independently with the same
//! probability `μ(τ)`; the network lives while at least `(1 - β)N` of them do.
//! The count of survivors is approximated as normal, giving
//! `P(L ≥ τ) = Q(√N (1 - β - μ) / σ)` with `σ = √(μ - μ²)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    capacity_breakpoints, capacity_pdf_in_support, capacity_support, distance_pdf, AreaShape,
};
use crate::models::{
    distance_for_capacity, packet_capacity, EnergyModel, PowerControl, TrafficModel,
};
use crate::sensor::{survival_clt_unchecked, survival_floor_unchecked};
use crate::specfun::{
    gamma_log_density, gaussian_ccdf_unchecked, integrate_pieces, upper_gamma_unchecked,
    QuadratureSpec,
};

/// Tolerance under which `1 - β - μ` counts as zero.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Mean and standard deviation of the indicator that a randomly placed
/// sensor is still alive at `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalMoments {
    mu: f64,
    sigma: f64,
    tau: f64,
}

impl SurvivalMoments {
    pub fn new(mu: f64, tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) {
            return Err(Error::domain(
                "SurvivalMoments",
                format!("mean must lie in [0, 1], got {mu}"),
            ));
        }
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::domain(
                "SurvivalMoments",
                format!("threshold must be >= 0, got {tau}"),
            ));
        }
        Ok(Self {
            mu,
            sigma: (mu - mu * mu).sqrt(),
            tau,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `μ - μ²`, computed without going through `σ`.
    pub fn variance(&self) -> f64 {
        self.mu - self.mu * self.mu
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// The event "the network is still operational at `tau`", with `beta` the
/// fraction of dead nodes that ends its life.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifetimeQuery {
    pub tau: f64,
    pub beta: f64,
    pub nodes: u64,
}

impl LifetimeQuery {
    pub fn new(tau: f64, beta: f64, nodes: u64) -> Result<Self> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(Error::domain(
                "LifetimeQuery",
                format!("threshold must be >= 0, got {tau}"),
            ));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::domain(
                "LifetimeQuery",
                format!("dead-node ratio must lie in (0, 1], got {beta}"),
            ));
        }
        if nodes == 0 {
            return Err(Error::domain("LifetimeQuery", "need at least one node"));
        }
        Ok(Self { tau, beta, nodes })
    }

    /// Lifetime ends with the first death: `β = 1/N`.
    pub fn first_node_death(tau: f64, nodes: u64) -> Result<Self> {
        Self::new(tau, 1.0 / nodes.max(1) as f64, nodes)
    }

    /// `1 - β - μ`; its sign decides where the ccdf goes as `N` grows.
    pub fn margin(&self, mu: f64) -> f64 {
        1.0 - self.beta - mu
    }
}

fn ceil_tolerant(x: f64) -> u64 {
    (x - 1e-9 * x.abs().max(1.0)).ceil().max(0.0) as u64
}

/// Rank of the death that ends the network: `⌈βN⌉`, at least 1.
pub fn death_rank(nodes: u64, beta: f64) -> u64 {
    ceil_tolerant(beta * nodes as f64).clamp(1, nodes.max(1))
}

/// Smallest survivor count treated as "at least `(1 - β)N` alive": `⌈(1 - β)N⌉`.
pub fn survivor_threshold(nodes: u64, beta: f64) -> u64 {
    ceil_tolerant((1.0 - beta) * nodes as f64)
}

/// How a real-valued packet budget enters the survival kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CapacityRounding {
    /// Use `p` itself; the gamma shape is continuous.
    #[default]
    Continuous,
    /// Use `⌊p⌋`, the number of packets the battery actually pays for.
    Floor,
}

/// Per-sensor survival law inside the mean-survival integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SurvivalKernel {
    /// Regularized upper incomplete gamma.
    #[default]
    Gamma,
    /// Normal approximation of the gamma death time.
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MomentOptions {
    pub rounding: CapacityRounding,
    pub kernel: SurvivalKernel,
    pub quadrature: QuadratureSpec,
}

impl MomentOptions {
    pub fn floor() -> Self {
        Self {
            rounding: CapacityRounding::Floor,
            ..Self::default()
        }
    }
}

pub(crate) fn kernel(opts: &MomentOptions, p: f64, load: f64) -> f64 {
    match (opts.kernel, opts.rounding) {
        (SurvivalKernel::Gamma, CapacityRounding::Continuous) => upper_gamma_unchecked(p, load),
        (SurvivalKernel::Gamma, CapacityRounding::Floor) => survival_floor_unchecked(p, load),
        (SurvivalKernel::Gaussian, CapacityRounding::Continuous) => survival_clt_unchecked(p, load),
        (SurvivalKernel::Gaussian, CapacityRounding::Floor) => {
            let packets = p.floor();
            if load == 0.0 {
                1.0
            } else if packets < 1.0 {
                0.0
            } else {
                survival_clt_unchecked(packets, load)
            }
        }
    }
}

/// Integer budgets strictly inside `(lo, hi)`, where a floored kernel jumps.
fn integer_points(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let first = lo.floor() + 1.0;
    let last = hi.ceil() - 1.0;
    let count = if last >= first {
        (last - first) as usize + 1
    } else {
        0
    };
    (0..count)
        .map(move |i| first + i as f64)
        .filter(move |&x| x > lo && x < hi)
}

fn sorted_points(mut pts: Vec<f64>, lo: f64, hi: f64) -> Vec<f64> {
    pts.retain(|&x| x >= lo && x <= hi);
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Breakpoints in distance for integrals over `f_d`.
fn distance_breakpoints(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    opts: &MomentOptions,
) -> Vec<f64> {
    let rc = shape.circumradius();
    let mut pts = vec![shape.inradius()];
    if let TrafficModel::PositionPoisson(profile) = traffic {
        pts.extend(profile.knots());
    }
    if opts.rounding == CapacityRounding::Floor && energy.power == PowerControl::Adjustable {
        let lo = energy.initial_energy / (energy.k * rc.powf(energy.alpha) + energy.c);
        let hi = energy.initial_energy / energy.c;
        pts.extend(integer_points(lo, hi).filter_map(|n| distance_for_capacity(energy, n)));
    }
    sorted_points(pts, 0.0, rc)
}

/// Mean survival `μ(τ)` of a uniformly placed sensor, with default options.
pub fn survival_moments(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    tau: f64,
) -> Result<SurvivalMoments> {
    survival_moments_with(shape, energy, traffic, tau, &MomentOptions::default())
}

/// Mean survival `μ(τ)` of a uniformly placed sensor.
///
/// Adjustable power integrates the survival kernel of `p(d)` against the
/// distance density. This equals the integral against the packet-budget
/// density but avoids its `E/c` spike and the cancellation in `E - c x`
/// when the budget range is narrow. Time-driven sensors die at
/// `⌊p⌋T`, which turns `μ` into a tail probability of the budget.
pub fn survival_moments_with(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    tau: f64,
    opts: &MomentOptions,
) -> Result<SurvivalMoments> {
    if !(tau.is_finite() && tau >= 0.0) {
        return Err(Error::domain(
            "survival_moments",
            format!("threshold must be >= 0, got {tau}"),
        ));
    }
    shape.validate()?;
    energy.validate()?;
    traffic.validate()?;
    if tau == 0.0 {
        return SurvivalMoments::new(1.0, 0.0);
    }
    let q = &opts.quadrature;
    let context = |e: Error| e.context(format!("mean survival at tau = {tau} h"));

    let mu = match (energy.power, traffic) {
        (PowerControl::FixedRange { .. }, TrafficModel::Poisson { rate }) => {
            kernel(opts, packet_capacity(energy, 0.0)?, rate * tau)
        }
        (PowerControl::FixedRange { .. }, TrafficModel::PositionPoisson(profile)) => {
            let p = packet_capacity(energy, 0.0)?;
            let pts = distance_breakpoints(shape, energy, traffic, opts);
            integrate_pieces(
                |d| distance_pdf(shape, d) * kernel(opts, p, profile.rate_at(d) * tau),
                &pts,
                q,
            )
            .map_err(context)?
        }
        (PowerControl::FixedRange { .. }, TrafficModel::TimeDriven { period }) => {
            let p = packet_capacity(energy, 0.0)?;
            if p.floor() * period >= tau {
                1.0
            } else {
                0.0
            }
        }
        (PowerControl::Adjustable, TrafficModel::TimeDriven { period }) => {
            // alive at tau iff ⌊p⌋ ≥ ⌈tau / T⌉
            let needed = (tau / period).ceil();
            let support = capacity_support(shape, energy)?;
            if needed <= support.lo {
                1.0
            } else if needed >= support.hi {
                0.0
            } else {
                let mut pts = capacity_breakpoints(shape, energy)?;
                pts.push(needed);
                let pts = sorted_points(pts, needed, support.hi);
                integrate_pieces(|x| capacity_pdf_in_support(shape, energy, x), &pts, q)
                    .map_err(context)?
            }
        }
        (
            PowerControl::Adjustable,
            TrafficModel::Poisson { .. } | TrafficModel::PositionPoisson(_),
        ) => {
            let pts = distance_breakpoints(shape, energy, traffic, opts);
            integrate_pieces(
                |d| {
                    let p = energy.initial_energy / (energy.k * d.powf(energy.alpha) + energy.c);
                    let rate = traffic.rate_at(d).unwrap_or(0.0);
                    distance_pdf(shape, d) * kernel(opts, p, rate * tau)
                },
                &pts,
                q,
            )
            .map_err(context)?
        }
    };
    SurvivalMoments::new(mu.clamp(0.0, 1.0), tau)
}

/// `P(L ≥ τ) = Q(√N (1 - β - μ) / σ)`.
///
/// With `σ = 0` every sensor shares the same fate, so the answer is 1 when
/// `1 - β - μ < 0`, 0 when it is positive and 1/2 on the tie.
pub fn network_ccdf(query: &LifetimeQuery, moments: &SurvivalMoments) -> f64 {
    debug_assert!(
        (query.tau - moments.tau).abs() <= 1e-9 * query.tau.abs().max(1.0),
        "query and moments disagree on tau"
    );
    let margin = query.margin(moments.mu);
    if moments.sigma == 0.0 {
        return if margin < 0.0 {
            1.0
        } else if margin > 0.0 {
            0.0
        } else {
            0.5
        };
    }
    gaussian_ccdf_unchecked((query.nodes as f64).sqrt() * margin / moments.sigma)
}

/// Convenience wrapper computing `μ(τ)` and then [`network_ccdf`].
pub fn lifetime_ccdf(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    query: &LifetimeQuery,
    opts: &MomentOptions,
) -> Result<f64> {
    let m = survival_moments_with(shape, energy, traffic, query.tau, opts)?;
    Ok(network_ccdf(query, &m))
}

/// Density of the network lifetime at `tau`, `-d/dτ P(L ≥ τ)`.
///
/// Uses `dμ/dτ = -λ e^{-λτ} c(τ)` with
/// `c(τ) = ∫ f_p(x) (λτ)^{x-1} / Γ(x) dx`; the integrand is formed in log
/// space together with the `e^{-λτ}` factor. Only adjustable power with
/// homogeneous Poisson traffic is supported.
pub fn network_pdf(
    tau: f64,
    query: &LifetimeQuery,
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
) -> Result<f64> {
    let rate = match traffic {
        TrafficModel::Poisson { rate } => *rate,
        _ => {
            return Err(Error::invalid_model(
                "network_pdf",
                "requires homogeneous Poisson traffic",
            ));
        }
    };
    if energy.power != PowerControl::Adjustable {
        return Err(Error::invalid_model(
            "network_pdf",
            "requires adjustable transmit power",
        ));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::domain(
            "network_pdf",
            format!("threshold must be > 0, got {tau}"),
        ));
    }
    let opts = MomentOptions::default();
    let m = survival_moments_with(shape, energy, traffic, tau, &opts)?;
    let variance = m.variance();
    if !(variance > 0.0) {
        return Ok(0.0);
    }
    let load = rate * tau;
    let support = capacity_support(shape, energy)?;
    let pts = capacity_breakpoints(shape, energy)?;
    let scaled_c = integrate_pieces(
        |x| capacity_pdf_in_support(shape, energy, x) * gamma_log_density(x, load).exp(),
        &sorted_points(pts, support.lo, support.hi),
        &opts.quadrature,
    )
    .map_err(|e| e.context(format!("lifetime density at tau = {tau} h")))?;

    let n = query.nodes as f64;
    let mu = m.mu();
    let margin = query.margin(mu);
    let slope = 1.0 - mu - query.beta * (1.0 - 2.0 * mu);
    let log_gauss = -n * margin * margin / (2.0 * variance);
    let pdf = rate * n.sqrt() / (2.0 * (2.0 * PI).sqrt()) * slope / variance.powf(1.5)
        * scaled_c
        * log_gauss.exp();
    Ok(pdf.max(0.0))
}

/// Threshold `τ` at which the mean survival drops to `target`.
///
/// `μ(τ)` is nonincreasing, so the root is bracketed by doubling and then
/// bisected to a relative width of `1e-12`.
pub fn tau_for_mean_survival(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    target: f64,
    opts: &MomentOptions,
) -> Result<f64> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::domain(
            "tau_for_mean_survival",
            format!("target must lie in (0, 1), got {target}"),
        ));
    }
    let mu = |t: f64| survival_moments_with(shape, energy, traffic, t, opts).map(|m| m.mu());
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut doublings = 0;
    while mu(hi)? > target {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::domain(
                "tau_for_mean_survival",
                "mean survival never reaches the target",
            ));
        }
    }
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if mu(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Large-`N` fate of the event `L ≥ τ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `1 - β - μ < 0`: the ccdf tends to 1.
    AchievesAlmostSurely,
    /// `1 - β - μ > 0`: the ccdf tends to 0.
    FailsAlmostSurely,
    /// `1 - β - μ = 0`: the ccdf stays at 1/2.
    Critical,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::AchievesAlmostSurely => "ACHIEVES",
            Verdict::FailsAlmostSurely => "FAILS",
            Verdict::Critical => "CRITICAL",
        }
    }
}

pub fn asymptotic_predict(beta: f64, mu: f64) -> Verdict {
    let margin = 1.0 - beta - mu;
    if margin > TIE_TOLERANCE {
        Verdict::FailsAlmostSurely
    } else if margin < -TIE_TOLERANCE {
        Verdict::AchievesAlmostSurely
    } else {
        Verdict::Critical
    }
}

/// Per-node exponent `a² / (2σ²)` of the decay `e^{-N a²/(2σ²)}` of the
/// wrong-side probability. Infinite when `σ = 0` and `a ≠ 0`.
pub fn asymptotic_error_exponent(beta: f64, mu: f64) -> f64 {
    let margin = 1.0 - beta - mu;
    let variance = mu - mu * mu;
    if variance <= 0.0 {
        return if margin == 0.0 { 0.0 } else { f64::INFINITY };
    }
    margin * margin / (2.0 * variance)
}

/// Relation of the identical-sensor formula to the true probability when
/// sensors differ but their survival means average to `mean_mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundDirection {
    UpperBound,
    LowerBound,
    Exact,
}

/// The identical-sensor variance is the largest possible for a given mean
/// survival, so the formula overstates the ccdf when `1 - β - μ > 0` and
/// understates it when negative.
pub fn hetero_bound_direction(query: &LifetimeQuery, mean_mu: f64) -> BoundDirection {
    let margin = query.margin(mean_mu);
    if margin > TIE_TOLERANCE {
        BoundDirection::UpperBound
    } else if margin < -TIE_TOLERANCE {
        BoundDirection::LowerBound
    } else {
        BoundDirection::Exact
    }
}
