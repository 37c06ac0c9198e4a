use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::domain("QuadratureSpec", "rel_tol must be > 0"));
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::domain("QuadratureSpec", "abs_tol must be >= 0"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain(
                "QuadratureSpec",
                "max_subdivisions must be >= 1",
            ));
        }
        Ok(())
    }
}

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]. Nodes are
// interior, so integrands are never evaluated at a panel endpoint.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> f64>(g: &mut F, lo: f64, hi: f64) -> Result<Panel> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = g(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    let mut values = [0.0; 15];
    values[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = g(center - dx);
        let f2 = g(center + dx);
        values[j] = f1;
        values[14 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !kronrod.is_finite() {
        return Err(Error::domain(
            "integrate",
            format!("integrand is not finite on [{lo:e}, {hi:e}]"),
        ));
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((values[j] - mean).abs() + (values[14 - j] - mean).abs());
    }
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let abs_value = abs_sum * half.abs();
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        error,
    })
}

/// Adaptive integral of `f` over `[lo, hi]`.
///
/// The interval is first mapped through the cubic `x = lo + (hi - lo)·u²(3 - 2u)`,
/// whose derivative vanishes at both ends. That tames integrable power-law
/// endpoint singularities (`(hi - x)^{-1/2}` becomes smooth) before global
/// adaptive bisection with Gauss–Kronrod 7/15 panels runs in `u`.
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(Error::domain(
            "integrate",
            format!("need finite lo < hi, got [{lo}, {hi}]"),
        ));
    }
    let width = hi - lo;
    let mut g = |u: f64| {
        let x = lo + width * u * u * (3.0 - 2.0 * u);
        let jac = 6.0 * width * u * (1.0 - u);
        if jac == 0.0 {
            0.0
        } else {
            f(x.clamp(lo, hi)) * jac
        }
    };

    let first = kronrod(&mut g, 0.0, 1.0)?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;

    while total_err > spec.abs_tol.max(spec.rel_tol * total.abs()) {
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::Convergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // panel can no longer be split in floating point
            return Err(Error::Convergence {
                estimate: total,
                error_bound: total_err,
                subdivisions,
            });
        }
        let left = kronrod(&mut g, worst.lo, mid)?;
        let right = kronrod(&mut g, mid, worst.hi)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;

        if total_err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            // re-sum to shed accumulated rounding from the running updates
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    Ok(total)
}

/// Integrates over `[points[0], points[last]]`, splitting at every interior
/// point. Use this where the integrand has kinks or jumps at known locations.
pub fn integrate_pieces<F>(mut f: F, points: &[f64], spec: &QuadratureSpec) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if points.len() < 2 {
        return Err(Error::domain(
            "integrate_pieces",
            "need at least two points",
        ));
    }
    let pieces = points.windows(2).filter(|w| w[1] > w[0]).count().max(1);
    let piece_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / pieces as f64,
        ..*spec
    };
    let mut total = 0.0;
    for w in points.windows(2) {
        if w[1] < w[0] {
            return Err(Error::domain(
                "integrate_pieces",
                "points must be nondecreasing",
            ));
        }
        if w[1] > w[0] {
            total += integrate(&mut f, w[0], w[1], &piece_spec)?;
        }
    }
    Ok(total)
}
