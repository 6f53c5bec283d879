//! CARA expected utility for a one-period allocation between a risk-free
//! asset with rate `r` and a risky return `X` following a law of the closed
//! Beta family.
//!
//! Final wealth is `W(γ) = W₀ (1 + r + γ(X - r))` and utility is
//! `U(w) = -exp(-λw)`. Initial wealth only enters through the product
//! `λ W₀`, which is used as the effective risk aversion throughout.
//!
//! For interior laws expectations are taken without touching the density:
//! `E[φ(X)] = φ(1) - ∫₀¹ φ'(x) F(x) dx`, with the integral over a composite
//! Gauss–Legendre mesh adapted once to `F` and reused for every `γ`.

use crate::beta_law::BetaLaw;
use crate::dome::{parabola, BOUNDARY_SNAP_TOL};
use crate::error::{Error, Result};
use crate::math::{exp, log, sqrt};
use crate::quadrature::{MeshOptions, SampledMesh};

/// Width of the final golden-section bracket.
pub const GOLDEN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortfolioProblem {
    law: BetaLaw,
    lambda: f64,
    rate: f64,
    wealth: f64,
}

/// Which end of `[0, 1]` is optimal, if either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryActive {
    None,
    AtZero,
    AtOne,
}

impl BoundaryActive {
    pub fn name(self) -> &'static str {
        match self {
            BoundaryActive::None => "None",
            BoundaryActive::AtZero => "AtZero",
            BoundaryActive::AtOne => "AtOne",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalAllocation {
    pub gamma_star: f64,
    pub eu_at_optimum: f64,
    pub boundary_active: BoundaryActive,
}

impl PortfolioProblem {
    /// A problem with unit initial wealth.
    pub fn new(law: BetaLaw, lambda: f64, rate: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain("risk aversion lambda must be positive"));
        }
        if !(rate > 0.0 && rate < 1.0) {
            return Err(Error::Domain("risk-free rate must lie in (0, 1)"));
        }
        Ok(Self { law, lambda, rate, wealth: 1.0 })
    }

    pub fn with_wealth(mut self, wealth: f64) -> Result<Self> {
        if !(wealth > 0.0 && wealth.is_finite()) {
            return Err(Error::Domain("initial wealth must be positive"));
        }
        self.wealth = wealth;
        Ok(self)
    }

    pub fn law(&self) -> &BetaLaw {
        &self.law
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn wealth(&self) -> f64 {
        self.wealth
    }

    /// `λ W₀`.
    pub fn effective_aversion(&self) -> f64 {
        self.lambda * self.wealth
    }

    /// Builds the quadrature for the risky law once so that many values of
    /// `γ` can be evaluated cheaply.
    pub fn prepare(&self) -> Result<PreparedProblem> {
        Ok(PreparedProblem { problem: *self, expectation: LawExpectation::new(&self.law, self.effective_aversion())? })
    }

    /// `E[-exp(-λW₀(1 + r + γ(X - r)))]`.
    pub fn expected_utility(&self, gamma: f64) -> Result<f64> {
        self.prepare()?.expected_utility(gamma)
    }

    /// Derivative of [`expected_utility`](Self::expected_utility) in `γ`.
    pub fn marginal_expected_utility(&self, gamma: f64) -> Result<f64> {
        self.prepare()?.marginal_expected_utility(gamma)
    }

    pub fn optimal_gamma(&self) -> Result<OptimalAllocation> {
        self.prepare()?.optimal_gamma()
    }
}

/// A [`PortfolioProblem`] with its expectation machinery built.
#[derive(Debug, Clone)]
pub struct PreparedProblem {
    problem: PortfolioProblem,
    expectation: LawExpectation,
}

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::Domain("gamma must lie in [0, 1]"))
    }
}

impl PreparedProblem {
    pub fn problem(&self) -> &PortfolioProblem {
        &self.problem
    }

    pub fn expected_utility(&self, gamma: f64) -> Result<f64> {
        check_gamma(gamma)?;
        Ok(self.eu(gamma))
    }

    pub fn marginal_expected_utility(&self, gamma: f64) -> Result<f64> {
        check_gamma(gamma)?;
        Ok(self.marginal(gamma))
    }

    fn eu(&self, gamma: f64) -> f64 {
        let k = self.problem.effective_aversion();
        let r = self.problem.rate;
        let wealth = move |x: f64| 1.0 + r + gamma * (x - r);
        self.expectation.expect(|x| -exp(-k * wealth(x)), |x| k * gamma * exp(-k * wealth(x)))
    }

    fn marginal(&self, gamma: f64) -> f64 {
        let k = self.problem.effective_aversion();
        let r = self.problem.rate;
        let wealth = move |x: f64| 1.0 + r + gamma * (x - r);
        self.expectation
            .expect(|x| k * (x - r) * exp(-k * wealth(x)), |x| k * exp(-k * wealth(x)) * (1.0 - k * gamma * (x - r)))
    }

    /// Maximizes expected utility over `γ ∈ [0, 1]`.
    ///
    /// Expected utility is concave in `γ`, so the end points are settled by
    /// the sign of the derivative there and the interior case by golden
    /// section.
    pub fn optimal_gamma(&self) -> Result<OptimalAllocation> {
        let p = &self.problem;
        let k = p.effective_aversion();
        // at γ = 0 the marginal utility is k(E[X] - r)e^{-k(1+r)} for every law
        let slope_at_zero = k * (p.law.mean() - p.rate) * exp(-k * (1.0 + p.rate));
        if slope_at_zero <= 0.0 {
            return Ok(OptimalAllocation {
                gamma_star: 0.0,
                eu_at_optimum: self.eu(0.0),
                boundary_active: BoundaryActive::AtZero,
            });
        }
        if self.marginal(1.0) >= 0.0 {
            return Ok(OptimalAllocation {
                gamma_star: 1.0,
                eu_at_optimum: self.eu(1.0),
                boundary_active: BoundaryActive::AtOne,
            });
        }
        let gamma = golden_section_max(|g| self.eu(g), 0.0, 1.0, GOLDEN_TOL);
        Ok(OptimalAllocation {
            gamma_star: gamma,
            eu_at_optimum: self.eu(gamma),
            boundary_active: BoundaryActive::None,
        })
    }
}

/// Expectations `E[φ(X)]` for one law.
#[derive(Debug, Clone)]
enum LawExpectation {
    Point(f64),
    TwoPoint(f64),
    /// Mesh sampling the CDF on `(0, 1)`.
    Interior(SampledMesh),
}

impl LawExpectation {
    /// `aversion` bounds the exponential rate of the test functions, which
    /// sets the coarsest panel width.
    fn new(law: &BetaLaw, aversion: f64) -> Result<Self> {
        Ok(match law {
            BetaLaw::PointMass(m) => LawExpectation::Point(*m),
            BetaLaw::TwoPoint(m) => LawExpectation::TwoPoint(*m),
            BetaLaw::Interior(inner) => {
                let opts =
                    MeshOptions { initial_panels: 4usize.max((aversion / 2.0) as usize + 1), ..MeshOptions::default() };
                let mesh = SampledMesh::adaptive(|x| inner.cdf_unchecked(x).unwrap_or(f64::NAN), 0.0, 1.0, opts);
                if !mesh.samples_finite() {
                    return Err(Error::NotConverged { what: "incomplete beta continued fraction", iterations: 500 });
                }
                LawExpectation::Interior(mesh)
            }
        })
    }

    /// `phi` is the test function and `dphi` its derivative.
    fn expect<P, D>(&self, phi: P, dphi: D) -> f64
    where
        P: Fn(f64) -> f64,
        D: Fn(f64) -> f64,
    {
        match self {
            LawExpectation::Point(m) => phi(*m),
            LawExpectation::TwoPoint(m) => (1.0 - m) * phi(0.0) + m * phi(1.0),
            LawExpectation::Interior(mesh) => phi(1.0) - mesh.integrate_weighted(dphi),
        }
    }
}

/// `E[-exp(-λX)]`: CARA utility of the risky return on its own, as if the
/// whole wealth were the return.
pub fn expected_cara_utility(law: &BetaLaw, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain("risk aversion lambda must be positive"));
    }
    let expectation = LawExpectation::new(law, lambda)?;
    Ok(expectation.expect(|x| -exp(-lambda * x), |x| lambda * exp(-lambda * x)))
}

fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Optimal fraction for the two-point law of mean `m`, the worst case among
/// laws with that mean: `min{ln(m(1 - r)/(r(1 - m)))/λ, 1}`.
pub fn closed_form_boundary_gamma(m: f64, lambda: f64, rate: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain("risk aversion lambda must be positive"));
    }
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Domain("risk-free rate must lie in (0, 1)"));
    }
    if !(m > rate && m <= 1.0) {
        return Err(Error::Domain("closed form needs rate < m <= 1"));
    }
    if m == 1.0 {
        return Ok(1.0);
    }
    let odds = (m * (1.0 - rate)) / (rate * (1.0 - m));
    Ok((log(odds) / lambda).min(1.0))
}

/// Mean above which the optimal fraction is 1 whatever the variance:
/// `r e^λ / (r e^λ + 1 - r)`.
pub fn mean_threshold(lambda: f64, rate: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain("risk aversion lambda must be positive"));
    }
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Domain("risk-free rate must lie in (0, 1)"));
    }
    // divided through by r e^λ so that large λ does not overflow
    Ok(1.0 / (1.0 + (1.0 - rate) / rate * exp(-lambda)))
}

/// Whether `(m, v)` lies in the region where investing everything in the
/// risky asset is guaranteed optimal (a sufficient condition only).
pub fn in_full_risk_region(m: f64, v: f64, lambda: f64, rate: f64) -> Result<bool> {
    let threshold = mean_threshold(lambda, rate)?;
    Ok(m >= threshold && m <= 1.0 && v >= -BOUNDARY_SNAP_TOL && v <= parabola(m) + BOUNDARY_SNAP_TOL)
}
