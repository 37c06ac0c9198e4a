//! Monte Carlo oracle for the lifetime laws.
//!
//! Every trial draws its own deployment and packet process from a ChaCha8
//! stream selected by the trial index, so results do not depend on how many
//! threads run them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Gamma};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{sample_distance, AreaShape};
use crate::models::{packet_energy_unchecked, EnergyModel, TrafficModel};
use crate::multihop::{ring_capacity, ring_probability, RingConfig};
use crate::network::death_rank;
use crate::specfun::gaussian_ccdf_inv;

/// Largest packet count whose death time is drawn as an explicit sum of gaps.
pub const DIRECT_SUM_MAX: u64 = 10_000;

/// One simulated network.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    /// Node death times in hours, sorted ascending.
    pub death_times: Vec<f64>,
    /// Time at which the dead fraction first reaches `β`.
    pub network_lifetime: f64,
}

/// `⌈βN⌉`-th smallest of the sorted `death_times`; 0 for an empty network.
pub fn lifetime_from_deaths(death_times: &[f64], beta: f64) -> f64 {
    if death_times.is_empty() {
        return 0.0;
    }
    death_times[death_rank(death_times.len() as u64, beta) as usize - 1]
}

/// Time to send `packets` packets at `rate` per hour.
///
/// Small counts add up the exponential gaps (as logs of products of
/// uniforms, 16 at a time); large counts draw the gamma law directly.
pub fn sample_death_time<R: Rng + ?Sized>(packets: u64, rate: f64, rng: &mut R) -> f64 {
    if packets == 0 {
        return 0.0;
    }
    if packets > DIRECT_SUM_MAX {
        return Gamma::new(packets as f64, 1.0 / rate)
            .expect("shape and scale are positive")
            .sample(rng);
    }
    let mut total = 0.0;
    let mut remaining = packets;
    while remaining > 0 {
        let chunk = remaining.min(16);
        let mut prod = 1.0;
        for _ in 0..chunk {
            prod *= 1.0 - rng.random::<f64>();
        }
        total -= prod.ln();
        remaining -= chunk;
    }
    total / rate
}

/// Runs `trials` independent trials, trial `i` on stream `i` of `seed`,
/// in parallel on the current rayon pool. Output order is trial order.
pub fn run_trials<T, F>(trials: u64, seed: u64, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> T + Sync,
{
    let base = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = base.clone();
            rng.set_stream(i);
            trial(i, &mut rng)
        })
        .collect()
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::domain("with_threads", e.to_string()))?;
    Ok(pool.install(f))
}

/// Population size, stopping rule and sampling budget of a simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationPlan {
    pub nodes: u64,
    pub beta: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationPlan {
    pub fn new(nodes: u64, beta: f64, trials: u64, seed: u64) -> Result<Self> {
        let plan = Self {
            nodes,
            beta,
            trials,
            seed,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::domain("SimulationPlan", "need at least one node"));
        }
        validate_beta(self.beta)?;
        if self.trials == 0 {
            return Err(Error::domain("SimulationPlan", "need at least one trial"));
        }
        Ok(())
    }
}

fn validate_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::domain(
            "simulation",
            format!("dead-node ratio must lie in (0, 1], got {beta}"),
        ));
    }
    Ok(())
}

fn single_hop_deaths<R: Rng + ?Sized>(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    nodes: u64,
    rng: &mut R,
) -> Vec<f64> {
    let mut deaths: Vec<f64> = (0..nodes)
        .map(|_| {
            let d = sample_distance(shape, rng);
            let capacity = energy.initial_energy / packet_energy_unchecked(energy, d);
            let packets = capacity.floor().min(u64::MAX as f64) as u64;
            match traffic {
                TrafficModel::Poisson { rate } => sample_death_time(packets, *rate, rng),
                TrafficModel::PositionPoisson(profile) => {
                    sample_death_time(packets, profile.rate_at(d), rng)
                }
                TrafficModel::TimeDriven { period } => packets as f64 * period,
            }
        })
        .collect();
    deaths.sort_by(f64::total_cmp);
    deaths
}

fn validate_single_hop(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
) -> Result<()> {
    shape.validate()?;
    energy.validate()?;
    traffic.validate()
}

/// Every trial of a single-hop simulation, death times included.
pub fn simulate_single_hop_trials(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    plan: &SimulationPlan,
) -> Result<Vec<TrialResult>> {
    validate_single_hop(shape, energy, traffic)?;
    plan.validate()?;
    Ok(run_trials(plan.trials, plan.seed, |_, rng| {
        let death_times = single_hop_deaths(shape, energy, traffic, plan.nodes, rng);
        let network_lifetime = lifetime_from_deaths(&death_times, plan.beta);
        TrialResult {
            death_times,
            network_lifetime,
        }
    }))
}

/// Empirical lifetime ccdf of a single-hop network.
pub fn simulate_single_hop(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    plan: &SimulationPlan,
) -> Result<EmpiricalCcdf> {
    let mut out = simulate_single_hop_betas(shape, energy, traffic, plan, &[plan.beta])?;
    Ok(out.remove(0))
}

/// One empirical ccdf per entry of `betas`, all from the same trials.
pub fn simulate_single_hop_betas(
    shape: &AreaShape,
    energy: &EnergyModel,
    traffic: &TrafficModel,
    plan: &SimulationPlan,
    betas: &[f64],
) -> Result<Vec<EmpiricalCcdf>> {
    validate_single_hop(shape, energy, traffic)?;
    plan.validate()?;
    betas.iter().try_for_each(|&b| validate_beta(b))?;
    let rows = run_trials(plan.trials, plan.seed, |_, rng| {
        let deaths = single_hop_deaths(shape, energy, traffic, plan.nodes, rng);
        betas
            .iter()
            .map(|&b| lifetime_from_deaths(&deaths, b))
            .collect::<Vec<_>>()
    });
    transpose(rows, betas.len())
}

fn transpose(rows: Vec<Vec<f64>>, columns: usize) -> Result<Vec<EmpiricalCcdf>> {
    (0..columns)
        .map(|k| EmpiricalCcdf::from_lifetimes(rows.iter().map(|r| r[k]).collect()))
        .collect()
}

/// Empirical ccdf of the first-ring lifetime in the multi-hop model.
pub fn simulate_multi_hop(
    cfg: &RingConfig,
    energy: &EnergyModel,
    beta: f64,
    trials: u64,
    seed: u64,
) -> Result<EmpiricalCcdf> {
    let mut out = simulate_multi_hop_betas(cfg, energy, &[beta], trials, seed)?;
    Ok(out.remove(0))
}

/// Multi-hop trials evaluated at several `β` at once.
///
/// Only first-ring nodes are simulated: `N₁` is binomial, each of them
/// relays at rate `λN/N₁` and an empty first ring gives lifetime 0.
pub fn simulate_multi_hop_betas(
    cfg: &RingConfig,
    energy: &EnergyModel,
    betas: &[f64],
    trials: u64,
    seed: u64,
) -> Result<Vec<EmpiricalCcdf>> {
    if trials == 0 {
        return Err(Error::domain(
            "simulate_multi_hop",
            "need at least one trial",
        ));
    }
    betas.iter().try_for_each(|&b| validate_beta(b))?;
    let packets = ring_capacity(cfg, energy)?.floor() as u64;
    let q1 = ring_probability(cfg, 1)?;
    let first_ring = Binomial::new(cfg.nodes, q1)
        .map_err(|e| Error::domain("simulate_multi_hop", e.to_string()))?;
    let rows = run_trials(trials, seed, |_, rng| {
        let n1 = first_ring.sample(rng);
        if n1 == 0 {
            return vec![0.0; betas.len()];
        }
        let rate = cfg.rate * cfg.nodes as f64 / n1 as f64;
        let mut deaths: Vec<f64> = (0..n1)
            .map(|_| sample_death_time(packets, rate, rng))
            .collect();
        deaths.sort_by(f64::total_cmp);
        betas
            .iter()
            .map(|&b| lifetime_from_deaths(&deaths, b))
            .collect()
    });
    transpose(rows, betas.len())
}

/// Empirical survival function of simulated lifetimes.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCcdf {
    samples: Vec<f64>,
}

impl EmpiricalCcdf {
    pub fn from_lifetimes(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("EmpiricalCcdf", "no samples"));
        }
        if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::domain(
                "EmpiricalCcdf",
                format!("lifetimes must be finite and >= 0, got {bad}"),
            ));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { samples })
    }

    /// Sorted lifetimes.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    fn count_at_least(&self, tau: f64) -> usize {
        self.samples.len() - self.samples.partition_point(|&x| x < tau)
    }

    /// Fraction of lifetimes `≥ tau`.
    pub fn eval(&self, tau: f64) -> f64 {
        self.count_at_least(tau) as f64 / self.samples.len() as f64
    }

    /// Wilson score interval for the ccdf at `tau`, at confidence `level`.
    pub fn ci(&self, tau: f64, level: f64) -> Result<(f64, f64)> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::domain(
                "EmpiricalCcdf::ci",
                format!("level must lie in (0, 1), got {level}"),
            ));
        }
        let z = gaussian_ccdf_inv(0.5 * (1.0 - level))?;
        Ok(wilson_interval(
            self.count_at_least(tau) as u64,
            self.samples.len() as u64,
            z,
        ))
    }
}

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let centre = (p + z2 / (2.0 * n_f)) / denom;
    let half = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt() / denom;
    (
        (centre - half).max(0.0).min(p),
        (centre + half).min(1.0).max(p),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub tau: f64,
    pub analytic: f64,
    pub empirical: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Largest distance from the empirical value to either CI end.
    pub ci_half_width: f64,
    /// `analytic - empirical`.
    pub deviation: f64,
    pub within_ci: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub level: f64,
    pub trials: usize,
    pub rows: Vec<ComparisonRow>,
    pub max_abs_deviation: f64,
}

/// Evaluates `analytic` on `grid` and lines it up against `emp`.
pub fn empirical_vs_analytic<F>(
    emp: &EmpiricalCcdf,
    mut analytic: F,
    grid: &[f64],
    level: f64,
) -> Result<ComparisonReport>
where
    F: FnMut(f64) -> Result<f64>,
{
    if grid.is_empty() {
        return Err(Error::domain(
            "empirical_vs_analytic",
            "empty threshold grid",
        ));
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &tau in grid {
        let a = analytic(tau)?;
        let e = emp.eval(tau);
        let (lo, hi) = emp.ci(tau, level)?;
        rows.push(ComparisonRow {
            tau,
            analytic: a,
            empirical: e,
            ci_low: lo,
            ci_high: hi,
            ci_half_width: (e - lo).max(hi - e),
            deviation: a - e,
            within_ci: (lo..=hi).contains(&a),
        });
    }
    let max_abs_deviation = rows.iter().map(|r| r.deviation.abs()).fold(0.0, f64::max);
    Ok(ComparisonReport {
        level,
        trials: emp.len(),
        rows,
        max_abs_deviation,
    })
}
