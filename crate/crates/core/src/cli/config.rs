//! Scenario files: JSON, one scenario per file, with dotted-path overrides.

use serde::Deserialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::geometry::AreaShape;
use crate::models::{EnergyModel, PowerControl, RateProfile, TrafficModel};
use crate::network::{CapacityRounding, MomentOptions, SurvivalKernel};
use crate::specfun::QuadratureSpec;

/// A scalar or a list of values, swept in the order given.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Sweep<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Copy + PartialOrd + std::fmt::Debug> Sweep<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            Sweep::One(x) => vec![*x],
            Sweep::Many(xs) => xs.clone(),
        }
    }

    fn checked(&self, field: &str) -> Result<Vec<T>> {
        let v = self.values();
        if v.is_empty() {
            return Err(Error::config(field, "sweep is empty"));
        }
        if let Some(w) = v.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::config(
                field,
                format!(
                    "sweep must be strictly increasing, found {:?} before {:?}",
                    w[0], w[1]
                ),
            ));
        }
        Ok(v)
    }
}

/// Thresholds in hours: a scalar, a list or an evenly spaced grid.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum TauGrid {
    Values(Sweep<f64>),
    Linear { start: f64, stop: f64, count: usize },
}

impl TauGrid {
    fn checked(&self) -> Result<Vec<f64>> {
        let v = match self {
            TauGrid::Values(s) => s.checked("tau")?,
            TauGrid::Linear { start, stop, count } => {
                if *count < 2 || !(start < stop) {
                    return Err(Error::config(
                        "tau",
                        "grid needs start < stop and count >= 2",
                    ));
                }
                let step = (stop - start) / (*count - 1) as f64;
                (0..*count)
                    .map(|i| {
                        if i + 1 == *count {
                            *stop
                        } else {
                            start + step * i as f64
                        }
                    })
                    .collect()
            }
        };
        if let Some(t) = v.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(Error::config(
                "tau",
                format!("thresholds must be finite and >= 0, got {t}"),
            ));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    pub radius: Option<f64>,
    pub sides: Option<u32>,
    pub side: Option<f64>,
    pub area: Option<f64>,
}

/// Either bit-level radio constants or `k`, `c` directly.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergySpec {
    pub e_t: Option<f64>,
    pub e_o: Option<f64>,
    pub packet_bits: Option<f64>,
    pub k: Option<f64>,
    pub c: Option<f64>,
    pub alpha: f64,
    pub initial_energy: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrafficSpec {
    pub rate: Option<f64>,
    /// `[distance, rate]` pairs, linearly interpolated.
    pub profile: Option<Vec<(f64, f64)>>,
    pub period: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    SingleHop,
    MultiHop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundingSpec {
    Continuous,
    Floor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum KernelSpec {
    #[default]
    Gamma,
    Gaussian,
}

/// Quadrature tolerances; missing fields keep their defaults.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
}

fn default_trials() -> u64 {
    1000
}

fn default_confidence() -> f64 {
    0.99
}

/// Raw scenario as read from JSON.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub shape: ShapeSpec,
    pub energy: EnergySpec,
    pub traffic: TrafficSpec,
    pub nodes: Sweep<u64>,
    pub beta: Sweep<f64>,
    pub tau: TauGrid,
    #[serde(default)]
    pub mode: Mode,
    /// Fixed transmit range in meters; ring width in multi-hop mode.
    pub range: Option<Sweep<f64>>,
    /// Sensor distances for `sensor-ccdf`.
    pub distance: Option<Sweep<f64>>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    pub rounding: Option<RoundingSpec>,
    #[serde(default)]
    pub kernel: KernelSpec,
    #[serde(default = "default_confidence")]
    pub confidence: f64,
    pub quadrature: Option<QuadratureConfig>,
}

/// Validated scenario ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub shape: AreaShape,
    /// Adjustable-power model; fixed ranges come from `ranges`.
    pub energy: EnergyModel,
    pub traffic: TrafficModel,
    pub nodes: Vec<u64>,
    pub betas: Vec<f64>,
    pub taus: Vec<f64>,
    pub mode: Mode,
    pub ranges: Option<Vec<f64>>,
    pub distances: Option<Vec<f64>>,
    pub trials: u64,
    pub seed: u64,
    pub rounding: Option<CapacityRounding>,
    pub kernel: SurvivalKernel,
    pub confidence: f64,
    pub quadrature: QuadratureSpec,
    /// Hex SHA-256 of the canonical JSON after overrides.
    pub hash: String,
}

impl Scenario {
    /// Energy model for one entry of the range sweep, or the adjustable one.
    pub fn energy_for(&self, range: Option<f64>) -> Result<EnergyModel> {
        match range {
            Some(r) => self
                .energy
                .with_power(PowerControl::FixedRange { range: r }),
            None => Ok(self.energy),
        }
    }

    pub fn moment_options(&self, default_rounding: CapacityRounding) -> MomentOptions {
        MomentOptions {
            rounding: self.rounding.unwrap_or(default_rounding),
            kernel: self.kernel,
            quadrature: self.quadrature,
        }
    }

    /// Range sweep as options: `[None]` when power is adjustable.
    pub fn range_sweep(&self) -> Vec<Option<f64>> {
        match &self.ranges {
            Some(r) => r.iter().map(|&x| Some(x)).collect(),
            None => vec![None],
        }
    }
}

/// Parses `text`, applies `key=value` overrides and validates.
pub fn load_scenario(text: &str, overrides: &[String]) -> Result<Scenario> {
    let mut value: Value = serde_json::from_str(text).map_err(|e| {
        Error::config(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    for o in overrides {
        apply_override(&mut value, o)?;
    }
    let hash = config_hash(&value);
    let raw: ScenarioConfig =
        serde_json::from_value(value).map_err(|e| Error::config("config", e.to_string()))?;
    build(raw, hash)
}

/// SHA-256 of the compact JSON serialization, with object keys sorted.
pub fn config_hash(value: &Value) -> String {
    let digest = Sha256::digest(value.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Sets a dotted path such as `energy.initial_energy=0.02`.
///
/// The right-hand side is read as JSON when it parses, otherwise as a string.
pub fn apply_override(root: &mut Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::config(assignment, "override must look like key=value"))?;
    let new: Value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut node = root;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        if key.is_empty() {
            return Err(Error::config(path, "empty path segment"));
        }
        let map = match node {
            Value::Object(m) => m,
            _ => {
                return Err(Error::config(
                    path,
                    format!("'{}' is not an object", keys[..i].join(".")),
                ))
            }
        };
        if i + 1 == keys.len() {
            map.insert(key.to_string(), new);
            return Ok(());
        }
        node = map
            .entry(key.to_string())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    Ok(())
}

fn exactly_one(field: &str, present: &[(&str, bool)]) -> Result<()> {
    let count = present.iter().filter(|p| p.1).count();
    if count != 1 {
        let names: Vec<&str> = present.iter().map(|p| p.0).collect();
        return Err(Error::config(
            field,
            format!("give exactly one of {}", names.join(", ")),
        ));
    }
    Ok(())
}

fn field<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::config(name, e.to_string()))
}

fn build_shape(s: &ShapeSpec) -> Result<AreaShape> {
    match s.sides {
        None => {
            exactly_one(
                "shape",
                &[("radius", s.radius.is_some()), ("area", s.area.is_some())],
            )?;
            if s.side.is_some() {
                return Err(Error::config(
                    "shape.side",
                    "only polygons have a side length",
                ));
            }
            match (s.radius, s.area) {
                (Some(r), _) => field("shape.radius", AreaShape::circle(r)),
                (_, Some(a)) => field("shape.area", AreaShape::circle_with_area(a)),
                _ => unreachable!(),
            }
        }
        Some(n) => {
            exactly_one(
                "shape",
                &[("side", s.side.is_some()), ("area", s.area.is_some())],
            )?;
            if s.radius.is_some() {
                return Err(Error::config("shape.radius", "polygons take side or area"));
            }
            match (s.side, s.area) {
                (Some(a), _) => field("shape.side", AreaShape::regular_polygon(n, a)),
                (_, Some(area)) => field("shape.area", AreaShape::polygon_with_area(n, area)),
                _ => unreachable!(),
            }
        }
    }
}

fn build_energy(e: &EnergySpec) -> Result<EnergyModel> {
    let bit_level = e.e_t.is_some() || e.e_o.is_some() || e.packet_bits.is_some();
    let direct = e.k.is_some() || e.c.is_some();
    exactly_one(
        "energy",
        &[("e_t/e_o/packet_bits", bit_level), ("k/c", direct)],
    )?;
    if bit_level {
        let (Some(e_t), Some(e_o), Some(bits)) = (e.e_t, e.e_o, e.packet_bits) else {
            return Err(Error::config(
                "energy",
                "bit-level radio needs e_t, e_o and packet_bits",
            ));
        };
        field(
            "energy",
            EnergyModel::from_bit_level(
                e_t,
                e_o,
                bits,
                e.alpha,
                e.initial_energy,
                PowerControl::Adjustable,
            ),
        )
    } else {
        let (Some(k), Some(c)) = (e.k, e.c) else {
            return Err(Error::config("energy", "need both k and c"));
        };
        field(
            "energy",
            EnergyModel::adjustable(k, c, e.alpha, e.initial_energy),
        )
    }
}

fn build_traffic(t: &TrafficSpec) -> Result<TrafficModel> {
    exactly_one(
        "traffic",
        &[
            ("rate", t.rate.is_some()),
            ("profile", t.profile.is_some()),
            ("period", t.period.is_some()),
        ],
    )?;
    if let Some(rate) = t.rate {
        field("traffic.rate", TrafficModel::poisson(rate))
    } else if let Some(p) = &t.profile {
        field(
            "traffic.profile",
            RateProfile::new(p.clone()).map(TrafficModel::PositionPoisson),
        )
    } else {
        field(
            "traffic.period",
            TrafficModel::time_driven(t.period.unwrap_or_default()),
        )
    }
}

fn build(raw: ScenarioConfig, hash: String) -> Result<Scenario> {
    let shape = build_shape(&raw.shape)?;
    let energy = build_energy(&raw.energy)?;
    let traffic = build_traffic(&raw.traffic)?;
    let nodes = raw.nodes.checked("nodes")?;
    if nodes[0] == 0 {
        return Err(Error::config("nodes", "need at least one node"));
    }
    let betas = raw.beta.checked("beta")?;
    if let Some(b) = betas.iter().find(|b| !(**b > 0.0 && **b <= 1.0)) {
        return Err(Error::config(
            "beta",
            format!("must lie in (0, 1], got {b}"),
        ));
    }
    let taus = raw.tau.checked()?;
    let ranges = raw.range.as_ref().map(|r| r.checked("range")).transpose()?;
    if let Some(r) = ranges
        .iter()
        .flatten()
        .find(|r| !(r.is_finite() && **r > 0.0))
    {
        return Err(Error::config("range", format!("must be > 0, got {r}")));
    }
    if raw.mode == Mode::MultiHop {
        if ranges.is_none() {
            return Err(Error::config(
                "range",
                "multi-hop mode needs a transmission range",
            ));
        }
        if !matches!(traffic, TrafficModel::Poisson { .. }) {
            return Err(Error::config(
                "traffic",
                "multi-hop mode needs a homogeneous packet rate",
            ));
        }
    }
    let distances = raw
        .distance
        .as_ref()
        .map(|d| d.checked("distance"))
        .transpose()?;
    if let Some(d) = distances
        .iter()
        .flatten()
        .find(|d| !(d.is_finite() && **d >= 0.0))
    {
        return Err(Error::config("distance", format!("must be >= 0, got {d}")));
    }
    if raw.trials == 0 {
        return Err(Error::config("trials", "need at least one trial"));
    }
    if !(raw.confidence > 0.0 && raw.confidence < 1.0) {
        return Err(Error::config(
            "confidence",
            format!("must lie in (0, 1), got {}", raw.confidence),
        ));
    }
    let d = QuadratureSpec::default();
    let quadrature = match raw.quadrature {
        Some(q) => field(
            "quadrature",
            QuadratureSpec::new(
                q.rel_tol.unwrap_or(d.rel_tol),
                q.abs_tol.unwrap_or(d.abs_tol),
                q.max_subdivisions.unwrap_or(d.max_subdivisions),
            ),
        )?,
        None => d,
    };
    Ok(Scenario {
        shape,
        energy,
        traffic,
        nodes,
        betas,
        taus,
        mode: raw.mode,
        ranges,
        distances,
        trials: raw.trials,
        seed: raw.seed,
        rounding: raw.rounding.map(|r| match r {
            RoundingSpec::Continuous => CapacityRounding::Continuous,
            RoundingSpec::Floor => CapacityRounding::Floor,
        }),
        kernel: match raw.kernel {
            KernelSpec::Gamma => SurvivalKernel::Gamma,
            KernelSpec::Gaussian => SurvivalKernel::Gaussian,
        },
        confidence: raw.confidence,
        quadrature,
        hash,
    })
}
