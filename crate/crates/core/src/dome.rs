//! The MV-dome: mean/variance coordinates for Beta laws.
//!
//! Interior points `0 < m < 1, 0 < v < m - m²` are in one-to-one
//! correspondence with shape parameters `(α, β) ∈ (0, ∞)²`. The closure adds
//! the bottom edge `v = 0` (Dirac masses), the parabola `v = m - m²`
//! (two-point laws on `{0, 1}`) and the two corners.

use crate::error::{Error, Result};
use crate::math::abs;
use crate::special_fn::ShapeParams;

/// Points within this distance of `v = 0` or `v = D(m)` are snapped onto
/// the boundary.
pub const BOUNDARY_SNAP_TOL: f64 = 1e-13;

/// Distance to `C₁` or `C₂` at which a point is tagged as lying on the curve.
pub const CURVE_TOL: f64 = 1e-12;

/// Upper boundary of the dome, `D(m) = m - m²`: the largest variance of any
/// law on `[0, 1]` with mean `m`.
pub fn parabola(m: f64) -> f64 {
    m - m * m
}

/// Curve on which `α = 1`.
pub fn curve_c1(m: f64) -> f64 {
    m * m * (1.0 - m) / (1.0 + m)
}

/// Curve on which `β = 1`.
pub fn curve_c2(m: f64) -> f64 {
    m * (1.0 - m) * (1.0 - m) / (2.0 - m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomeLocation {
    Interior,
    BottomEdge,
    Parabola,
    CornerZero,
    CornerOne,
}

impl DomeLocation {
    pub fn name(self) -> &'static str {
        match self {
            DomeLocation::Interior => "Interior",
            DomeLocation::BottomEdge => "BottomEdge",
            DomeLocation::Parabola => "Parabola",
            DomeLocation::CornerZero => "CornerZero",
            DomeLocation::CornerOne => "CornerOne",
        }
    }
}

/// Shape class of an interior Beta density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomeRegion {
    /// `α > 1, β > 1`: single interior mode.
    Arched,
    /// `α < 1, β < 1`: unbounded at both ends.
    UShaped,
    /// `α < 1 < β`.
    Decreasing,
    /// `β < 1 < α`.
    Increasing,
    OnC1,
    OnC2,
    OnBoth,
}

impl DomeRegion {
    pub fn name(self) -> &'static str {
        match self {
            DomeRegion::Arched => "Arched",
            DomeRegion::UShaped => "UShaped",
            DomeRegion::Decreasing => "Decreasing",
            DomeRegion::Increasing => "Increasing",
            DomeRegion::OnC1 => "OnC1",
            DomeRegion::OnC2 => "OnC2",
            DomeRegion::OnBoth => "OnBoth",
        }
    }
}

/// A point of the closed dome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomePoint {
    m: f64,
    v: f64,
    location: DomeLocation,
}

impl DomePoint {
    /// Validates `(m, v)` against the closed dome and snaps near-boundary
    /// variances onto the boundary.
    pub fn new(m: f64, v: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::OutsideDome { m, v, constraint: "0 <= mean <= 1" });
        }
        if !v.is_finite() || v < -BOUNDARY_SNAP_TOL {
            return Err(Error::OutsideDome { m, v, constraint: "variance >= 0" });
        }
        let d = parabola(m);
        if v > d + BOUNDARY_SNAP_TOL {
            return Err(Error::OutsideDome { m, v, constraint: "variance <= mean - mean^2" });
        }
        let location = if m == 0.0 {
            DomeLocation::CornerZero
        } else if m == 1.0 {
            DomeLocation::CornerOne
        } else if v <= BOUNDARY_SNAP_TOL {
            DomeLocation::BottomEdge
        } else if v >= d - BOUNDARY_SNAP_TOL {
            DomeLocation::Parabola
        } else {
            DomeLocation::Interior
        };
        let v = match location {
            DomeLocation::CornerZero | DomeLocation::CornerOne | DomeLocation::BottomEdge => 0.0,
            DomeLocation::Parabola => d,
            DomeLocation::Interior => v,
        };
        Ok(Self { m, v, location })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn location(&self) -> DomeLocation {
        self.location
    }

    pub fn is_interior(&self) -> bool {
        self.location == DomeLocation::Interior
    }

    fn require_interior(&self) -> Result<()> {
        if self.is_interior() {
            Ok(())
        } else {
            Err(Error::DegeneratePoint { m: self.m, v: self.v })
        }
    }

    /// Shape parameters `α = m(D(m) - v)/v`, `β = (1 - m)(D(m) - v)/v`.
    pub fn to_shape(&self) -> Result<ShapeParams> {
        self.require_interior()?;
        let gap = parabola(self.m) - self.v;
        ShapeParams::new(self.m * gap / self.v, (1.0 - self.m) * gap / self.v)
    }

    /// Mean and variance of `Beta(α, β)`; always an interior point.
    pub fn from_shape(p: ShapeParams) -> Self {
        let (a, b) = (p.alpha(), p.beta());
        let s = a + b;
        let m = a / s;
        let v = a * b / (s * s * (s + 1.0));
        // no snapping: shape parameters always name an interior law, even
        // when v is within the snap tolerance of the boundary
        Self { m, v, location: DomeLocation::Interior }
    }

    /// Shape class of the density from the position of `v` relative to the
    /// curves `C₁` (α = 1) and `C₂` (β = 1).
    pub fn classify_region(&self) -> Result<DomeRegion> {
        self.require_interior()?;
        let c1 = curve_c1(self.m);
        let c2 = curve_c2(self.m);
        let on1 = abs(self.v - c1) <= CURVE_TOL;
        let on2 = abs(self.v - c2) <= CURVE_TOL;
        let region = match (on1, on2) {
            (true, true) => DomeRegion::OnBoth,
            (true, false) => DomeRegion::OnC1,
            (false, true) => DomeRegion::OnC2,
            (false, false) => {
                let above1 = self.v > c1; // α < 1
                let above2 = self.v > c2; // β < 1
                match (above1, above2) {
                    (false, false) => DomeRegion::Arched,
                    (true, true) => DomeRegion::UShaped,
                    (true, false) => DomeRegion::Decreasing,
                    (false, true) => DomeRegion::Increasing,
                }
            }
        };
        Ok(region)
    }
}
