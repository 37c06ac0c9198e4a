//! Deployment areas with the sink at their center.
//!
//! Nodes are placed uniformly at random. This module gives the law of a node's
//! distance to the sink, the induced law of its packet budget under
//! adjustable transmit power, and a sampler for the simulator.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::models::{EnergyModel, PowerControl};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AreaShape {
    Circle {
        radius: f64,
    },
    /// Regular polygon with `sides` edges of length `side`, centered on the sink.
    RegularPolygon {
        sides: u32,
        side: f64,
    },
}

impl AreaShape {
    pub fn circle(radius: f64) -> Result<Self> {
        let s = AreaShape::Circle { radius };
        s.validate()?;
        Ok(s)
    }

    pub fn regular_polygon(sides: u32, side: f64) -> Result<Self> {
        let s = AreaShape::RegularPolygon { sides, side };
        s.validate()?;
        Ok(s)
    }

    pub fn circle_with_area(area: f64) -> Result<Self> {
        Self::circle((area / PI).sqrt())
    }

    /// Regular polygon whose area is `area`.
    pub fn polygon_with_area(sides: u32, area: f64) -> Result<Self> {
        if sides < 3 {
            return Err(Error::domain(
                "AreaShape",
                format!("a polygon needs >= 3 sides, got {sides}"),
            ));
        }
        let cot = 1.0 / (PI / sides as f64).tan();
        Self::regular_polygon(sides, (4.0 * area / (sides as f64 * cot)).sqrt())
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AreaShape::Circle { radius } if !(radius.is_finite() && radius > 0.0) => Err(
                Error::domain("AreaShape", format!("radius must be > 0, got {radius}")),
            ),
            AreaShape::RegularPolygon { sides, .. } if sides < 3 => Err(Error::domain(
                "AreaShape",
                format!("a polygon needs >= 3 sides, got {sides}"),
            )),
            AreaShape::RegularPolygon { side, .. } if !(side.is_finite() && side > 0.0) => Err(
                Error::domain("AreaShape", format!("side must be > 0, got {side}")),
            ),
            _ => Ok(()),
        }
    }

    /// Radius of the largest sink-centered disk inside the area.
    pub fn inradius(&self) -> f64 {
        match *self {
            AreaShape::Circle { radius } => radius,
            AreaShape::RegularPolygon { sides, side } => 0.5 * side / (PI / sides as f64).tan(),
        }
    }

    /// Distance from the sink to the farthest point of the area.
    pub fn circumradius(&self) -> f64 {
        match *self {
            AreaShape::Circle { radius } => radius,
            AreaShape::RegularPolygon { sides, side } => side / (2.0 * (PI / sides as f64).sin()),
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            AreaShape::Circle { radius } => PI * radius * radius,
            AreaShape::RegularPolygon { sides, side } => {
                0.25 * sides as f64 * side * side / (PI / sides as f64).tan()
            }
        }
    }

    fn sides(&self) -> Option<f64> {
        match *self {
            AreaShape::Circle { .. } => None,
            AreaShape::RegularPolygon { sides, .. } => Some(sides as f64),
        }
    }
}

/// Angular measure (in units where the full circle is `2π`) of the circle of
/// radius `x` that lies inside the area, divided by 2.
fn inside_half_angle(shape: &AreaShape, x: f64) -> f64 {
    match shape.sides() {
        None => PI,
        Some(n) => {
            let ri = shape.inradius();
            if x <= ri {
                PI
            } else {
                (PI - n * (ri / x).min(1.0).acos()).max(0.0)
            }
        }
    }
}

/// Density of the distance from a uniformly placed node to the sink.
pub fn distance_pdf(shape: &AreaShape, x: f64) -> f64 {
    if !(x > 0.0) || x > shape.circumradius() {
        return 0.0;
    }
    2.0 * x * inside_half_angle(shape, x) / shape.area()
}

/// Distribution function of the node-to-sink distance.
pub fn distance_cdf(shape: &AreaShape, x: f64) -> f64 {
    if !(x > 0.0) {
        return 0.0;
    }
    if x >= shape.circumradius() {
        return 1.0;
    }
    let covered = match shape.sides() {
        None => PI * x * x,
        Some(n) => {
            let ri = shape.inradius();
            if x <= ri {
                PI * x * x
            } else {
                // disk minus the n circular segments beyond the edges
                let segment = x * x * (ri / x).acos() - ri * (x * x - ri * ri).sqrt();
                PI * x * x - n * segment
            }
        }
    };
    (covered / shape.area()).clamp(0.0, 1.0)
}

/// Range of the packet budget `p = E_i / (k d^α + c)` over the area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacitySupport {
    /// Budget of the farthest node, `E_i / (k R_c^α + c)`.
    pub lo: f64,
    /// Budget of a node at the sink, `E_i / c` (excluded).
    pub hi: f64,
}

impl CapacitySupport {
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x < self.hi
    }
}

fn require_adjustable(op: &'static str, energy: &EnergyModel) -> Result<()> {
    match energy.power {
        PowerControl::Adjustable => Ok(()),
        PowerControl::FixedRange { .. } => Err(Error::invalid_model(
            op,
            "a fixed-range radio has a deterministic packet budget",
        )),
    }
}

fn capacity_at_distance(energy: &EnergyModel, d: f64) -> f64 {
    energy.initial_energy / (energy.k * d.powf(energy.alpha) + energy.c)
}

pub fn capacity_support(shape: &AreaShape, energy: &EnergyModel) -> Result<CapacitySupport> {
    require_adjustable("capacity_support", energy)?;
    Ok(CapacitySupport {
        lo: capacity_at_distance(energy, shape.circumradius()),
        hi: energy.initial_energy / energy.c,
    })
}

/// Points where `capacity_pdf` is not smooth: the support ends and, for
/// polygons, the budget of a node on the inscribed circle.
pub fn capacity_breakpoints(shape: &AreaShape, energy: &EnergyModel) -> Result<Vec<f64>> {
    let support = capacity_support(shape, energy)?;
    let mut pts = vec![support.lo];
    if shape.sides().is_some() {
        let kink = capacity_at_distance(energy, shape.inradius());
        if kink > support.lo && kink < support.hi {
            pts.push(kink);
        }
    }
    pts.push(support.hi);
    Ok(pts)
}

/// Density of the packet budget of a uniformly placed adjustable-power node.
///
/// Evaluated from the closed forms for the circle and for regular polygons:
/// `2E/(kαS x²)·u^{(2-α)/α}·θ(u^{1/α})` with `u = (E - c x)/(k x)` and
/// `θ` the half-angle of the distance circle inside the area.
pub fn capacity_pdf(shape: &AreaShape, energy: &EnergyModel, x: f64) -> Result<f64> {
    let support = capacity_support(shape, energy)?;
    if !support.contains(x) {
        return Ok(0.0);
    }
    Ok(capacity_pdf_in_support(shape, energy, x))
}

pub(crate) fn capacity_pdf_in_support(shape: &AreaShape, energy: &EnergyModel, x: f64) -> f64 {
    let EnergyModel {
        k,
        c,
        alpha,
        initial_energy: e,
        ..
    } = *energy;
    let u = (e - c * x) / (k * x);
    if !(u > 0.0) {
        return 0.0;
    }
    let d = u.powf(1.0 / alpha);
    let angle = inside_half_angle(shape, d);
    2.0 * e / (k * alpha * shape.area() * x * x) * u.powf((2.0 - alpha) / alpha) * angle
}

/// Distance of a uniformly placed node to the sink.
///
/// Circles are sampled by inverting `F(x) = x²/R²`; polygons by rejection
/// from their circumscribed disk.
pub fn sample_distance<R: Rng + ?Sized>(shape: &AreaShape, rng: &mut R) -> f64 {
    match *shape {
        AreaShape::Circle { radius } => radius * rng.random::<f64>().sqrt(),
        AreaShape::RegularPolygon { sides, .. } => {
            let rc = shape.circumradius();
            let ri = shape.inradius();
            let wedge = 2.0 * PI / sides as f64;
            loop {
                let rho = rc * rng.random::<f64>().sqrt();
                if rho <= ri {
                    return rho;
                }
                // angle from the nearest edge normal; vertices sit at multiples of the wedge
                let theta = 2.0 * PI * rng.random::<f64>();
                let psi = theta % wedge - 0.5 * wedge;
                if rho * psi.cos() <= ri {
                    return rho;
                }
            }
        }
    }
}
