//! The closed Beta family as a value type.
//!
//! Interior laws carry both their dome coordinates and their shape
//! parameters. On the closure boundary the law degenerates: `v = 0` gives
//! the Dirac mass `δ_m` and `v = m - m²` the two-point law
//! `(1 - m)δ₀ + mδ₁`. Neither boundary law has a density, so everything
//! downstream is written against the CDF and its integral.

use crate::dome::{parabola, DomeLocation, DomePoint};
use crate::error::{Error, Result};
use crate::math::{abs, exp, log, log1p, sqrt};
use crate::special_fn::{ln_beta_raw, reg_inc_beta_raw, ShapeParams};

/// An interior Beta law with cached normalizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteriorLaw {
    point: DomePoint,
    shape: ShapeParams,
    ln_beta: f64,
    // ln B(α + 1, β), for the first incomplete moment
    ln_beta_shifted: f64,
}

impl InteriorLaw {
    fn new(point: DomePoint, shape: ShapeParams) -> Self {
        let (a, b) = (shape.alpha(), shape.beta());
        Self { point, shape, ln_beta: ln_beta_raw(a, b), ln_beta_shifted: ln_beta_raw(a + 1.0, b) }
    }

    pub fn point(&self) -> DomePoint {
        self.point
    }

    pub fn shape(&self) -> ShapeParams {
        self.shape
    }

    pub fn mean(&self) -> f64 {
        self.point.m()
    }

    pub fn variance(&self) -> f64 {
        self.point.v()
    }

    /// `I_x(α, β)` for `x` already known to be in `[0, 1]`.
    pub(crate) fn cdf_unchecked(&self, x: f64) -> Result<f64> {
        reg_inc_beta_raw(x, self.shape.alpha(), self.shape.beta(), self.ln_beta)
    }

    /// `∫₀ˣ F(t) dt = x I_x(α, β) - m I_x(α + 1, β)`.
    pub(crate) fn integrated_cdf_unchecked(&self, x: f64) -> Result<f64> {
        let (a, b) = (self.shape.alpha(), self.shape.beta());
        let f = self.cdf_unchecked(x)?;
        let partial_mean = reg_inc_beta_raw(x, a + 1.0, b, self.ln_beta_shifted)?;
        Ok((x * f - self.mean() * partial_mean).max(0.0))
    }
}

/// A member of the closed Beta family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaLaw {
    Interior(InteriorLaw),
    /// Dirac mass at `m ∈ [0, 1]`.
    PointMass(f64),
    /// `(1 - m)δ₀ + mδ₁` with `m ∈ (0, 1)`.
    TwoPoint(f64),
}

/// Mean, variance and the third and fourth standardized central moments.
/// The latter two are `None` when the variance is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub skewness: Option<f64>,
    pub kurtosis: Option<f64>,
}

impl BetaLaw {
    /// The law at a point of the closed dome.
    pub fn from_point(pt: DomePoint) -> Self {
        match pt.location() {
            DomeLocation::Interior => {
                // interior points always have valid shape parameters
                let shape = pt.to_shape().expect("interior point has shape parameters");
                BetaLaw::Interior(InteriorLaw::new(pt, shape))
            }
            DomeLocation::BottomEdge | DomeLocation::CornerZero | DomeLocation::CornerOne => BetaLaw::PointMass(pt.m()),
            DomeLocation::Parabola => BetaLaw::TwoPoint(pt.m()),
        }
    }

    /// The law with mean `m` and variance `v`, boundary laws included.
    pub fn from_mean_variance(m: f64, v: f64) -> Result<Self> {
        Ok(Self::from_point(DomePoint::new(m, v)?))
    }

    /// An interior law; boundary coordinates are rejected.
    pub fn interior(m: f64, v: f64) -> Result<Self> {
        let pt = DomePoint::new(m, v)?;
        let shape = pt.to_shape()?;
        Ok(BetaLaw::Interior(InteriorLaw::new(pt, shape)))
    }

    pub fn from_shape(shape: ShapeParams) -> Self {
        BetaLaw::Interior(InteriorLaw::new(DomePoint::from_shape(shape), shape))
    }

    pub fn point_mass(m: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::Domain("point mass location must be in [0, 1]"));
        }
        Ok(BetaLaw::PointMass(m))
    }

    pub fn two_point(m: f64) -> Result<Self> {
        if !(m > 0.0 && m < 1.0) {
            return Err(Error::Domain("two-point law needs a mean strictly inside (0, 1)"));
        }
        Ok(BetaLaw::TwoPoint(m))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            BetaLaw::Interior(_) => "Interior",
            BetaLaw::PointMass(_) => "PointMass",
            BetaLaw::TwoPoint(_) => "TwoPoint",
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            BetaLaw::Interior(law) => law.mean(),
            BetaLaw::PointMass(m) | BetaLaw::TwoPoint(m) => *m,
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            BetaLaw::Interior(law) => law.variance(),
            BetaLaw::PointMass(_) => 0.0,
            BetaLaw::TwoPoint(m) => parabola(*m),
        }
    }

    /// Locations where the CDF jumps (none for interior laws).
    pub fn jump_points(&self) -> impl Iterator<Item = f64> {
        let (points, count) = match self {
            BetaLaw::Interior(_) => ([0.0; 2], 0),
            BetaLaw::PointMass(m) => ([*m, 0.0], 1),
            BetaLaw::TwoPoint(_) => ([0.0, 1.0], 2),
        };
        points.into_iter().take(count)
    }

    fn check_unit(x: f64) -> Result<()> {
        if (0.0..=1.0).contains(&x) {
            Ok(())
        } else {
            Err(Error::Domain("x must lie in [0, 1]"))
        }
    }

    /// Right-continuous distribution function on `[0, 1]`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Self::check_unit(x)?;
        self.cdf_unchecked(x)
    }

    pub(crate) fn cdf_unchecked(&self, x: f64) -> Result<f64> {
        Ok(match self {
            BetaLaw::Interior(law) => law.cdf_unchecked(x)?,
            BetaLaw::PointMass(m) => {
                if x < *m {
                    0.0
                } else {
                    1.0
                }
            }
            BetaLaw::TwoPoint(m) => {
                if x < 1.0 {
                    1.0 - m
                } else {
                    1.0
                }
            }
        })
    }

    /// Density of an interior law. At `x ∈ {0, 1}` the finite limit is
    /// returned when it exists; unbounded endpoints are an error.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        let law = match self {
            BetaLaw::Interior(law) => law,
            _ => return Err(Error::NoDensity),
        };
        Self::check_unit(x)?;
        let (a, b) = (law.shape.alpha(), law.shape.beta());
        let endpoint_exponent = if x == 0.0 {
            Some(a)
        } else if x == 1.0 {
            Some(b)
        } else {
            None
        };
        match endpoint_exponent {
            Some(e) if e < 1.0 => Err(Error::SingularEndpoint { x }),
            Some(e) if e > 1.0 => Ok(0.0),
            Some(_) => {
                // exponent exactly 1: density tends to 1/B(α, β) times the
                // other factor evaluated at the endpoint, which is 1
                Ok(exp(-law.ln_beta))
            }
            None => Ok(exp((a - 1.0) * log(x) + (b - 1.0) * log1p(-x) - law.ln_beta)),
        }
    }

    /// `Y(x) = ∫₀ˣ F(t) dt`, the quantity second-order dominance compares.
    pub fn integrated_cdf(&self, x: f64) -> Result<f64> {
        Self::check_unit(x)?;
        self.integrated_cdf_unchecked(x)
    }

    pub(crate) fn integrated_cdf_unchecked(&self, x: f64) -> Result<f64> {
        Ok(match self {
            BetaLaw::Interior(law) => law.integrated_cdf_unchecked(x)?,
            BetaLaw::PointMass(m) => (x - m).max(0.0),
            BetaLaw::TwoPoint(m) => (1.0 - m) * x,
        })
    }

    pub fn moments(&self) -> MomentSummary {
        let mean = self.mean();
        let variance = self.variance();
        let (skewness, kurtosis) = match self {
            BetaLaw::Interior(law) => {
                let (a, b) = (law.shape.alpha(), law.shape.beta());
                let s = a + b;
                let skew = 2.0 * (b - a) * sqrt(s + 1.0) / ((s + 2.0) * sqrt(a * b));
                let excess =
                    6.0 * ((a - b) * (a - b) * (s + 1.0) - a * b * (s + 2.0)) / (a * b * (s + 2.0) * (s + 3.0));
                (Some(skew), Some(3.0 + excess))
            }
            BetaLaw::PointMass(_) => (None, None),
            BetaLaw::TwoPoint(m) => {
                let pq = m * (1.0 - m);
                (Some((1.0 - 2.0 * m) / sqrt(pq)), Some((1.0 - 3.0 * pq) / pq))
            }
        };
        MomentSummary { mean, variance, skewness, kurtosis }
    }

    /// Mean and variance of `scale·X + shift`. Second-order dominance between
    /// two laws is unchanged when both go through the same map.
    pub fn affine_moments(&self, scale: f64, shift: f64) -> Result<(f64, f64)> {
        if !(scale > 0.0) {
            return Err(Error::Domain("affine scale must be positive"));
        }
        Ok((scale * self.mean() + shift, scale * scale * self.variance()))
    }
}

/// Largest deviation of `F_{m, f·D(m)}` from the two-point CDF `1 - m`
/// over the probe grid `{0.1, …, 0.9}`. Shrinks to zero as `f → 1`.
pub fn boundary_limit_check(m: f64, v_fraction: f64) -> Result<f64> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::Domain("mean must be in (0, 1)"));
    }
    if !(v_fraction > 0.0 && v_fraction < 1.0) {
        return Err(Error::Domain("variance fraction must be in (0, 1)"));
    }
    let law = BetaLaw::interior(m, v_fraction * parabola(m))?;
    let mut worst: f64 = 0.0;
    for k in 1..=9 {
        let x = k as f64 / 10.0;
        worst = worst.max(abs(law.cdf_unchecked(x)? - (1.0 - m)));
    }
    Ok(worst)
}
