//! Command-line driver: `lifespan <subcommand> --config <file> [--set key=value ...] --out <dir>`.
//!
//! Every subcommand writes `<subcommand>.csv` (plus `simulate_samples.csv`
//! and `compare_summary.csv` where noted). The first line is a comment
//! `# config_sha256=<hex> seed=<n>`, the second the column names. Reals are
//! written in the shortest scientific notation that parses back to the same
//! `f64`.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{
    apply_override, config_hash, load_scenario, Mode, Scenario, ScenarioConfig, Sweep, TauGrid,
};

use crate::error::{Error, Result};
use crate::models::{packet_capacity, TrafficModel};
use crate::montecarlo::{
    empirical_vs_analytic, simulate_multi_hop_betas, simulate_single_hop_betas, with_threads,
    EmpiricalCcdf, SimulationPlan,
};
use crate::multihop::{multihop_ccdf_with, ring_probability, RingConfig};
use crate::network::{
    asymptotic_error_exponent, asymptotic_predict, network_ccdf, network_pdf,
    survival_moments_with, CapacityRounding, LifetimeQuery, SurvivalMoments,
};
use crate::sensor::{survival_clt, survival_exact, survival_floor};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lifespan",
    version,
    about = "Lifetime distribution of wireless sensor networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Override a config value by dotted path, e.g. `--set energy.alpha=2`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Single-sensor survival curves.
    ///
    /// Columns: [range_m,] distance_m, capacity, tau_h, survival_exact,
    /// survival_floor, survival_clt.
    SensorCcdf(RunArgs),
    /// Network lifetime ccdf over the tau, beta and N sweeps.
    ///
    /// Columns: [range_m,] nodes, beta, tau_h, mu, sigma, ccdf.
    NetworkCcdf(RunArgs),
    /// Network lifetime density (adjustable power, constant packet rate).
    ///
    /// Columns: nodes, beta, tau_h, mu, pdf.
    NetworkPdf(RunArgs),
    /// First-ring lifetime ccdf of the multi-hop model.
    ///
    /// Columns: range_m, nodes, beta, tau_h, ring_prob, ccdf.
    MultihopCcdf(RunArgs),
    /// Monte Carlo lifetimes and their empirical ccdf.
    ///
    /// simulate.csv columns: [range_m,] nodes, beta, tau_h, ccdf, ci_low, ci_high.
    /// simulate_samples.csv columns: [range_m,] nodes, beta, index, lifetime_h.
    Simulate(RunArgs),
    /// Analytic ccdf against simulation; capacities default to floor rounding.
    ///
    /// compare.csv columns: [range_m,] nodes, beta, tau_h, analytic, empirical,
    /// ci_low, ci_high, ci_half_width, deviation, within_ci.
    /// compare_summary.csv columns: [range_m,] nodes, beta, max_abs_deviation.
    Compare(RunArgs),
    /// Large-N verdict from the sign of 1 - beta - mu.
    ///
    /// Columns: [range_m,] nodes, beta, tau_h, mu, margin, verdict,
    /// error_exponent, ccdf.
    Predict(RunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SensorCcdf(_) => "sensor-ccdf",
            Command::NetworkCcdf(_) => "network-ccdf",
            Command::NetworkPdf(_) => "network-pdf",
            Command::MultihopCcdf(_) => "multihop-ccdf",
            Command::Simulate(_) => "simulate",
            Command::Compare(_) => "compare",
            Command::Predict(_) => "predict",
        }
    }

    pub fn args(&self) -> &RunArgs {
        match self {
            Command::SensorCcdf(a)
            | Command::NetworkCcdf(a)
            | Command::NetworkPdf(a)
            | Command::MultihopCcdf(a)
            | Command::Simulate(a)
            | Command::Compare(a)
            | Command::Predict(a) => a,
        }
    }
}

/// Exit status for a failed run.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_VALIDATION
    }
}

/// Parses the config, runs `command` on `threads` workers (all cores when
/// `None`) and returns the files written.
pub fn run(command: &Command, threads: Option<usize>) -> Result<Vec<PathBuf>> {
    let args = command.args();
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Error::config(args.config.display().to_string(), e.to_string()))?;
    let scenario = load_scenario(&text, &args.set)?;
    let tables = match threads {
        Some(n) => with_threads(n, || tables_for(command, &scenario))??,
        None => tables_for(command, &scenario)?,
    };
    std::fs::create_dir_all(&args.out)?;
    let mut written = Vec::new();
    for t in tables {
        let path = args.out.join(format!("{}.csv", t.name));
        std::fs::write(&path, t.render(&scenario))?;
        written.push(path);
    }
    Ok(written)
}

/// Runs a parsed command line and reports errors on stderr.
pub fn main_with(cli: Cli, threads: Option<usize>) -> i32 {
    match run(&cli.command, threads) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("lifespan {}: {e}", cli.command.name());
            exit_code(&e)
        }
    }
}

/// Builds the output tables of `command` without touching the filesystem.
pub fn tables_for(command: &Command, s: &Scenario) -> Result<Vec<Table>> {
    match command {
        Command::SensorCcdf(_) => sensor_ccdf(s),
        Command::NetworkCcdf(_) => network_ccdf_table(s),
        Command::NetworkPdf(_) => network_pdf_table(s),
        Command::MultihopCcdf(_) => multihop_table(s),
        Command::Simulate(_) => simulate(s),
        Command::Compare(_) => compare(s),
        Command::Predict(_) => predict(s),
    }
}

/// Named CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(name: &str, ranged: bool, columns: &[&str]) -> Self {
        let mut cols: Vec<String> = Vec::new();
        if ranged {
            cols.push("range_m".into());
        }
        cols.extend(columns.iter().map(|c| c.to_string()));
        Self {
            name: name.into(),
            columns: cols,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, range: Option<f64>, cells: Vec<String>) {
        let mut row = Vec::with_capacity(cells.len() + 1);
        if let Some(r) = range {
            row.push(num(r));
        }
        row.extend(cells);
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, s: &Scenario) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# config_sha256={} seed={}", s.hash, s.seed);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}

/// Shortest round-trip scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

fn int(x: u64) -> String {
    x.to_string()
}

fn single_hop_only(s: &Scenario, what: &str) -> Result<()> {
    if s.mode == Mode::MultiHop {
        return Err(Error::config(
            "mode",
            format!("{what} is single-hop; use multihop-ccdf for rings"),
        ));
    }
    Ok(())
}

fn sensor_ccdf(s: &Scenario) -> Result<Vec<Table>> {
    if matches!(s.traffic, TrafficModel::TimeDriven { .. }) {
        return Err(Error::config(
            "traffic",
            "sensor-ccdf needs Poisson traffic",
        ));
    }
    let mut t = Table::new(
        "sensor-ccdf",
        s.ranges.is_some(),
        &[
            "distance_m",
            "capacity",
            "tau_h",
            "survival_exact",
            "survival_floor",
            "survival_clt",
        ],
    );
    let distances = s
        .distances
        .clone()
        .unwrap_or_else(|| vec![0.0, s.shape.circumradius()]);
    for range in s.range_sweep() {
        let energy = s.energy_for(range)?;
        for &d in &distances {
            let p = packet_capacity(&energy, d)?;
            let rate = s.traffic.rate_at(d).expect("Poisson traffic has a rate");
            for &tau in &s.taus {
                t.push(
                    range,
                    vec![
                        num(d),
                        num(p),
                        num(tau),
                        num(survival_exact(p, rate, tau)?),
                        num(survival_floor(p, rate, tau)?),
                        num(survival_clt(p, rate, tau)?),
                    ],
                );
            }
        }
    }
    Ok(vec![t])
}

/// `μ(τ)` for every threshold of the sweep.
fn moments_over_taus(
    s: &Scenario,
    range: Option<f64>,
    rounding: CapacityRounding,
) -> Result<Vec<SurvivalMoments>> {
    let energy = s.energy_for(range)?;
    let opts = s.moment_options(rounding);
    s.taus
        .iter()
        .map(|&tau| survival_moments_with(&s.shape, &energy, &s.traffic, tau, &opts))
        .collect()
}

fn network_ccdf_table(s: &Scenario) -> Result<Vec<Table>> {
    single_hop_only(s, "network-ccdf")?;
    let mut t = Table::new(
        "network-ccdf",
        s.ranges.is_some(),
        &["nodes", "beta", "tau_h", "mu", "sigma", "ccdf"],
    );
    for range in s.range_sweep() {
        let moments = moments_over_taus(s, range, CapacityRounding::Continuous)?;
        for &n in &s.nodes {
            for &beta in &s.betas {
                for m in &moments {
                    let q = LifetimeQuery::new(m.tau(), beta, n)?;
                    t.push(
                        range,
                        vec![
                            int(n),
                            num(beta),
                            num(m.tau()),
                            num(m.mu()),
                            num(m.sigma()),
                            num(network_ccdf(&q, m)),
                        ],
                    );
                }
            }
        }
    }
    Ok(vec![t])
}

fn network_pdf_table(s: &Scenario) -> Result<Vec<Table>> {
    single_hop_only(s, "network-pdf")?;
    if s.ranges.is_some() {
        return Err(Error::config(
            "range",
            "network-pdf needs adjustable transmit power",
        ));
    }
    let mut t = Table::new(
        "network-pdf",
        false,
        &["nodes", "beta", "tau_h", "mu", "pdf"],
    );
    let moments = moments_over_taus(s, None, CapacityRounding::Continuous)?;
    for &n in &s.nodes {
        for &beta in &s.betas {
            for m in &moments {
                let tau = m.tau();
                let q = LifetimeQuery::new(tau, beta, n)?;
                // nobody has died yet at τ = 0, so there is no density there
                let pdf = if tau == 0.0 {
                    0.0
                } else {
                    network_pdf(tau, &q, &s.shape, &s.energy, &s.traffic)?
                };
                t.push(
                    None,
                    vec![int(n), num(beta), num(tau), num(m.mu()), num(pdf)],
                );
            }
        }
    }
    Ok(vec![t])
}

fn ring_config(s: &Scenario, range: f64, nodes: u64) -> Result<RingConfig> {
    let rate = match s.traffic {
        TrafficModel::Poisson { rate } => rate,
        _ => {
            return Err(Error::config(
                "traffic",
                "rings need a homogeneous packet rate",
            ))
        }
    };
    RingConfig::new(s.shape, range, nodes, rate)
}

fn ranges_required(s: &Scenario) -> Result<Vec<f64>> {
    s.ranges
        .clone()
        .ok_or_else(|| Error::config("range", "rings need a transmission range"))
}

fn multihop_table(s: &Scenario) -> Result<Vec<Table>> {
    let mut t = Table::new(
        "multihop-ccdf",
        true,
        &["nodes", "beta", "tau_h", "ring_prob", "ccdf"],
    );
    let opts = s.moment_options(CapacityRounding::Continuous);
    for range in ranges_required(s)? {
        let energy = s.energy_for(Some(range))?;
        for &n in &s.nodes {
            let cfg = ring_config(s, range, n)?;
            let q1 = ring_probability(&cfg, 1)?;
            for &beta in &s.betas {
                for &tau in &s.taus {
                    let v = multihop_ccdf_with(&cfg, &energy, tau, beta, &opts)?;
                    t.push(
                        Some(range),
                        vec![int(n), num(beta), num(tau), num(q1), num(v)],
                    );
                }
            }
        }
    }
    Ok(vec![t])
}

/// Empirical ccdfs for one (range, nodes) pair, one per β.
type SimulationBlock = (Option<f64>, u64, Vec<EmpiricalCcdf>);

fn simulations(s: &Scenario) -> Result<Vec<SimulationBlock>> {
    let mut out = Vec::new();
    match s.mode {
        Mode::SingleHop => {
            for range in s.range_sweep() {
                let energy = s.energy_for(range)?;
                for &n in &s.nodes {
                    let plan = SimulationPlan::new(n, s.betas[0], s.trials, s.seed)?;
                    let ccdfs =
                        simulate_single_hop_betas(&s.shape, &energy, &s.traffic, &plan, &s.betas)?;
                    out.push((range, n, ccdfs));
                }
            }
        }
        Mode::MultiHop => {
            for range in ranges_required(s)? {
                let energy = s.energy_for(Some(range))?;
                for &n in &s.nodes {
                    let cfg = ring_config(s, range, n)?;
                    let ccdfs =
                        simulate_multi_hop_betas(&cfg, &energy, &s.betas, s.trials, s.seed)?;
                    out.push((Some(range), n, ccdfs));
                }
            }
        }
    }
    Ok(out)
}

fn ranged(s: &Scenario) -> bool {
    s.ranges.is_some()
}

fn simulate(s: &Scenario) -> Result<Vec<Table>> {
    let mut curve = Table::new(
        "simulate",
        ranged(s),
        &["nodes", "beta", "tau_h", "ccdf", "ci_low", "ci_high"],
    );
    let mut samples = Table::new(
        "simulate_samples",
        ranged(s),
        &["nodes", "beta", "index", "lifetime_h"],
    );
    for (range, n, ccdfs) in simulations(s)? {
        for (&beta, emp) in s.betas.iter().zip(&ccdfs) {
            for &tau in &s.taus {
                let (lo, hi) = emp.ci(tau, s.confidence)?;
                curve.push(
                    range,
                    vec![
                        int(n),
                        num(beta),
                        num(tau),
                        num(emp.eval(tau)),
                        num(lo),
                        num(hi),
                    ],
                );
            }
            for (i, &x) in emp.samples().iter().enumerate() {
                samples.push(range, vec![int(n), num(beta), int(i as u64), num(x)]);
            }
        }
    }
    Ok(vec![curve, samples])
}

fn compare(s: &Scenario) -> Result<Vec<Table>> {
    let mut detail = Table::new(
        "compare",
        ranged(s),
        &[
            "nodes",
            "beta",
            "tau_h",
            "analytic",
            "empirical",
            "ci_low",
            "ci_high",
            "ci_half_width",
            "deviation",
            "within_ci",
        ],
    );
    let mut summary = Table::new(
        "compare_summary",
        ranged(s),
        &["nodes", "beta", "max_abs_deviation"],
    );
    let opts = s.moment_options(CapacityRounding::Floor);
    for (range, n, ccdfs) in simulations(s)? {
        let moments = match s.mode {
            Mode::SingleHop => Some(moments_over_taus(s, range, CapacityRounding::Floor)?),
            Mode::MultiHop => None,
        };
        for (&beta, emp) in s.betas.iter().zip(&ccdfs) {
            let analytic = |tau: f64| -> Result<f64> {
                match (&moments, range) {
                    (Some(ms), _) => {
                        let i = s.taus.partition_point(|&t| t < tau);
                        Ok(network_ccdf(&LifetimeQuery::new(tau, beta, n)?, &ms[i]))
                    }
                    (None, Some(r)) => {
                        let energy = s.energy_for(Some(r))?;
                        multihop_ccdf_with(&ring_config(s, r, n)?, &energy, tau, beta, &opts)
                    }
                    (None, None) => unreachable!("multi-hop mode always has a range"),
                }
            };
            let report = empirical_vs_analytic(emp, analytic, &s.taus, s.confidence)?;
            for row in &report.rows {
                detail.push(
                    range,
                    vec![
                        int(n),
                        num(beta),
                        num(row.tau),
                        num(row.analytic),
                        num(row.empirical),
                        num(row.ci_low),
                        num(row.ci_high),
                        num(row.ci_half_width),
                        num(row.deviation),
                        int(row.within_ci as u64),
                    ],
                );
            }
            summary.push(
                range,
                vec![int(n), num(beta), num(report.max_abs_deviation)],
            );
        }
    }
    Ok(vec![detail, summary])
}

fn predict(s: &Scenario) -> Result<Vec<Table>> {
    single_hop_only(s, "predict")?;
    let mut t = Table::new(
        "predict",
        ranged(s),
        &[
            "nodes",
            "beta",
            "tau_h",
            "mu",
            "margin",
            "verdict",
            "error_exponent",
            "ccdf",
        ],
    );
    for range in s.range_sweep() {
        let moments = moments_over_taus(s, range, CapacityRounding::Continuous)?;
        for &n in &s.nodes {
            for &beta in &s.betas {
                for m in &moments {
                    let q = LifetimeQuery::new(m.tau(), beta, n)?;
                    t.push(
                        range,
                        vec![
                            int(n),
                            num(beta),
                            num(m.tau()),
                            num(m.mu()),
                            num(q.margin(m.mu())),
                            asymptotic_predict(beta, m.mu()).label().to_string(),
                            num(asymptotic_error_exponent(beta, m.mu())),
                            num(network_ccdf(&q, m)),
                        ],
                    );
                }
            }
        }
    }
    Ok(vec![t])
}

/// Resolves the worker count from a `LIFESPAN_THREADS`-style value.
pub fn threads_from_env(value: Option<&str>) -> std::result::Result<Option<usize>, String> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(v) => match v.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "LIFESPAN_THREADS must be a positive integer, got '{v}'"
            )),
        },
    }
}
