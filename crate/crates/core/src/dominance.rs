//! First- and second-order stochastic dominance on the closed Beta family.
//!
//! Second-order dominance of `b` over `a` means `Y_b(x) <= Y_a(x)` for all
//! `x ∈ [0, 1]`, where `Y(x) = ∫₀ˣ F`. The comparator evaluates
//! `Δ(x) = Y_a(x) - Y_b(x)` in closed form on a fixed Chebyshev grid,
//! augmented with the jump locations of boundary laws and with the
//! stationary points of `Δ` (crossings of the two CDFs), which are located
//! by bisection between grid nodes.

use alloc::vec::Vec;

use crate::beta_law::BetaLaw;
use crate::error::{Error, Result};
use crate::math::{abs, cos, PI};

/// Nodes of the Chebyshev probe grid on `[0, 1]`.
pub const PROBE_POINTS: usize = 2049;
/// Tolerance on `Δ` for a dominance verdict.
pub const SSD_TOL: f64 = 1e-9;
/// Two laws are equal when `max |Δ|` is at most this and their means agree
/// to [`EQUAL_MEAN_TOL`].
pub const EQUAL_Y_TOL: f64 = 1e-10;
pub const EQUAL_MEAN_TOL: f64 = 1e-12;
/// Tolerance on pointwise CDF differences for first-order dominance.
pub const FSD_TOL: f64 = 1e-12;
/// Required `|F_a - F_b|` at a returned crossing point.
pub const CROSSING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The first law dominates the second.
    FirstDominates,
    /// The second law dominates the first.
    SecondDominates,
    Equal,
    Incomparable,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::FirstDominates => "FirstDominates",
            Verdict::SecondDominates => "SecondDominates",
            Verdict::Equal => "Equal",
            Verdict::Incomparable => "Incomparable",
        }
    }

    /// The verdict with the two arguments swapped.
    pub fn flipped(self) -> Self {
        match self {
            Verdict::FirstDominates => Verdict::SecondDominates,
            Verdict::SecondDominates => Verdict::FirstDominates,
            other => other,
        }
    }
}

/// Strongest order under which a dominance verdict holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominanceOrder {
    Fsd,
    Ssd,
    None,
}

impl DominanceOrder {
    pub fn name(self) -> &'static str {
        match self {
            DominanceOrder::Fsd => "FSD",
            DominanceOrder::Ssd => "SSD",
            DominanceOrder::None => "None",
        }
    }
}

/// Outcome of a comparison.
///
/// For [`ssd_compare`] the extremes are those of `Δ = Y_a - Y_b`; for
/// [`fsd_compare`] they are those of `F_a - F_b`. `witness_x` is set only for
/// incomparable pairs and marks where the second law fails to dominate
/// (the minimizer of the difference).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceResult {
    pub verdict: Verdict,
    pub order: DominanceOrder,
    pub delta_min: f64,
    pub delta_max: f64,
    pub witness_x: Option<f64>,
}

/// A chain `δ₀ → (1-m)δ₀ + mδ₁ → F_{m,v} → δ_m → δ₁`, each link checked.
#[derive(Debug, Clone, PartialEq)]
pub struct HassePath {
    nodes: Vec<BetaLaw>,
    edge_checks: Vec<DominanceResult>,
}

impl HassePath {
    pub fn nodes(&self) -> &[BetaLaw] {
        &self.nodes
    }

    pub fn edge_checks(&self) -> &[DominanceResult] {
        &self.edge_checks
    }

    /// `max Δ` per edge: how far each link is from equality.
    pub fn edge_margins(&self) -> Vec<f64> {
        self.edge_checks.iter().map(|r| r.delta_max).collect()
    }
}

fn chebyshev_unit(k: usize, n: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if k == n {
        return 1.0;
    }
    0.5 * (1.0 - cos(PI * k as f64 / n as f64))
}

fn probe_grid(a: &BetaLaw, b: &BetaLaw) -> Vec<f64> {
    let n = PROBE_POINTS - 1;
    let mut xs: Vec<f64> = (0..=n).map(|k| chebyshev_unit(k, n)).collect();
    for j in a.jump_points().chain(b.jump_points()) {
        xs.push(j);
        if j > 0.0 {
            // left limit of the CDF at the jump
            xs.push(j.next_down());
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

#[derive(Clone, Copy)]
struct Sample {
    x: f64,
    delta: f64,
    slope: f64,
}

fn sample(a: &BetaLaw, b: &BetaLaw, x: f64) -> Result<Sample> {
    let (fa, ya) = cdf_and_integral(a, x)?;
    let (fb, yb) = cdf_and_integral(b, x)?;
    Ok(Sample { x, delta: ya - yb, slope: fa - fb })
}

fn cdf_and_integral(law: &BetaLaw, x: f64) -> Result<(f64, f64)> {
    Ok((law.cdf_unchecked(x)?, law.integrated_cdf_unchecked(x)?))
}

struct Extremes {
    min: f64,
    argmin: f64,
    max: f64,
    slope_min: f64,
    slope_max: f64,
    slope_argmin: f64,
}

impl Extremes {
    fn new() -> Self {
        Self {
            min: f64::INFINITY,
            argmin: 0.0,
            max: f64::NEG_INFINITY,
            slope_min: f64::INFINITY,
            slope_max: f64::NEG_INFINITY,
            slope_argmin: 0.0,
        }
    }

    fn absorb(&mut self, s: Sample) {
        if s.delta < self.min {
            self.min = s.delta;
            self.argmin = s.x;
        }
        if s.delta > self.max {
            self.max = s.delta;
        }
        if s.slope < self.slope_min {
            self.slope_min = s.slope;
            self.slope_argmin = s.x;
        }
        self.slope_max = self.slope_max.max(s.slope);
    }
}

// below this the sign of F_a - F_b is not trusted for refinement
const SLOPE_NOISE: f64 = 1e-13;

fn scan(a: &BetaLaw, b: &BetaLaw) -> Result<Extremes> {
    let grid = probe_grid(a, b);
    let mut ext = Extremes::new();
    let mut prev: Option<Sample> = None;
    for &x in &grid {
        let s = sample(a, b, x)?;
        ext.absorb(s);
        if let Some(p) = prev {
            let changes =
                (p.slope > SLOPE_NOISE && s.slope < -SLOPE_NOISE) || (p.slope < -SLOPE_NOISE && s.slope > SLOPE_NOISE);
            if changes {
                // Δ is stationary where the CDFs cross
                let x_star = bisect_sign_change(|t| Ok(sample(a, b, t)?.slope), p.x, s.x, p.slope)?;
                ext.absorb(sample(a, b, x_star)?);
            }
        }
        prev = Some(s);
    }
    Ok(ext)
}

/// Bisection for a sign change of `g` on `[lo, hi]`, where `g(lo)` has the
/// sign of `g_lo`.
fn bisect_sign_change<G>(g: G, mut lo: f64, mut hi: f64, g_lo: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let positive_at_lo = g_lo > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid)?;
        if gm == 0.0 {
            return Ok(mid);
        }
        if (gm > 0.0) == positive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn means_agree(a: &BetaLaw, b: &BetaLaw) -> bool {
    abs(a.mean() - b.mean()) <= EQUAL_MEAN_TOL
}

/// Directional verdict from the extremes of a difference `d = (a-side) - (b-side)`
/// where `d >= 0` everywhere means the second law dominates.
fn directional(min: f64, max: f64, tol: f64) -> Verdict {
    let second = min >= -tol;
    let first = max <= tol;
    match (first, second) {
        (false, true) => Verdict::SecondDominates,
        (true, false) => Verdict::FirstDominates,
        (false, false) => Verdict::Incomparable,
        // both within tolerance but not equal: go with the larger excursion
        (true, true) => {
            if max + min >= 0.0 {
                Verdict::SecondDominates
            } else {
                Verdict::FirstDominates
            }
        }
    }
}

fn fsd_from(ext: &Extremes) -> Verdict {
    if ext.slope_max <= FSD_TOL && ext.slope_min >= -FSD_TOL {
        Verdict::Equal
    } else {
        directional(ext.slope_min, ext.slope_max, FSD_TOL)
    }
}

/// Second-order stochastic dominance between `a` and `b`.
pub fn ssd_compare(a: &BetaLaw, b: &BetaLaw) -> Result<DominanceResult> {
    let ext = scan(a, b)?;
    let equal = means_agree(a, b) && ext.max <= EQUAL_Y_TOL && ext.min >= -EQUAL_Y_TOL;
    let verdict = if equal { Verdict::Equal } else { directional(ext.min, ext.max, SSD_TOL) };
    let order = match verdict {
        Verdict::FirstDominates | Verdict::SecondDominates => {
            if fsd_from(&ext) == verdict {
                DominanceOrder::Fsd
            } else {
                DominanceOrder::Ssd
            }
        }
        _ => DominanceOrder::None,
    };
    Ok(DominanceResult {
        verdict,
        order,
        delta_min: ext.min,
        delta_max: ext.max,
        witness_x: (verdict == Verdict::Incomparable).then_some(ext.argmin),
    })
}

/// First-order stochastic dominance: pointwise ordering of the CDFs on the
/// probe grid, jump locations and their left limits.
pub fn fsd_compare(a: &BetaLaw, b: &BetaLaw) -> Result<DominanceResult> {
    let ext = scan(a, b)?;
    let verdict = fsd_from(&ext);
    let order = match verdict {
        Verdict::FirstDominates | Verdict::SecondDominates => DominanceOrder::Fsd,
        _ => DominanceOrder::None,
    };
    Ok(DominanceResult {
        verdict,
        order,
        delta_min: ext.slope_min,
        delta_max: ext.slope_max,
        witness_x: (verdict == Verdict::Incomparable).then_some(ext.slope_argmin),
    })
}

/// The unique point in `(0, 1)` where two interior laws with the same mean
/// and different variances have equal CDFs.
pub fn crossing_point(a: &BetaLaw, b: &BetaLaw) -> Result<f64> {
    let (la, lb) = match (a, b) {
        (BetaLaw::Interior(la), BetaLaw::Interior(lb)) => (la, lb),
        _ => return Err(Error::Domain("crossing point needs two interior laws")),
    };
    if !means_agree(a, b) {
        return Err(Error::MeanMismatch { first: a.mean(), second: b.mean() });
    }
    if la.variance() == lb.variance() {
        return Err(Error::Domain("laws with equal mean and variance coincide; no isolated crossing"));
    }
    let diff = |x: f64| -> Result<f64> { Ok(la.cdf_unchecked(x)? - lb.cdf_unchecked(x)?) };

    let n = 256;
    let mut prev: Option<(f64, f64)> = None;
    for k in 1..n {
        let x = chebyshev_unit(k, n);
        let d = diff(x)?;
        if d == 0.0 {
            if abs(diff(x.next_up())?) <= CROSSING_TOL {
                return Ok(x);
            }
            continue;
        }
        if let Some((px, pd)) = prev {
            if (pd > 0.0) != (d > 0.0) {
                let root = bisect_sign_change(diff, px, x, pd)?;
                if abs(diff(root)?) <= CROSSING_TOL {
                    return Ok(root);
                }
                return Err(Error::NoCrossing);
            }
        }
        prev = Some((x, d));
    }
    Err(Error::NoCrossing)
}

/// Size of the mean-preserving spread between two equal-mean laws: the
/// integrated CDF gap `∫₀^{x_c} (F_a - F_b)` of the dominated law `a` over
/// the dominating `b` up to their crossing.
pub fn mps_magnitude(a: &BetaLaw, b: &BetaLaw) -> Result<f64> {
    if !means_agree(a, b) {
        return Err(Error::MeanMismatch { first: a.mean(), second: b.mean() });
    }
    let cmp = ssd_compare(a, b)?;
    let (dominated, dominant) = match cmp.verdict {
        Verdict::Equal => return Ok(0.0),
        Verdict::Incomparable => return Err(Error::Incomparable),
        Verdict::SecondDominates => (a, b),
        Verdict::FirstDominates => (b, a),
    };
    if let (BetaLaw::Interior(_), BetaLaw::Interior(_)) = (a, b) {
        let x_c = crossing_point(dominated, dominant)?;
        let gap = dominated.integrated_cdf_unchecked(x_c)? - dominant.integrated_cdf_unchecked(x_c)?;
        return Ok(gap.max(0.0));
    }
    // With a boundary law the crossing sits at a jump or at a level set of
    // the interior CDF; the refined scan already evaluates Δ there.
    let gap = if cmp.verdict == Verdict::SecondDominates { cmp.delta_max } else { -cmp.delta_min };
    Ok(gap.max(0.0))
}

/// The symmetric law with `α = β` has mean 1/2 and variance `1/(4(1+2α))`.
fn symmetric_law(alpha: f64) -> Result<BetaLaw> {
    Ok(BetaLaw::from_shape(crate::special_fn::ShapeParams::new(alpha, alpha)?))
}

/// Compares the symmetric laws `Beta(α₁, α₁)` and `Beta(α₂, α₂)`. The larger
/// parameter dominates.
pub fn one_param_order(alpha1: f64, alpha2: f64) -> Result<DominanceResult> {
    ssd_compare(&symmetric_law(alpha1)?, &symmetric_law(alpha2)?)
}

/// MPS magnitude between `Beta(α₁, α₁)` and `Beta(α₂, α₂)`.
pub fn one_param_mps(alpha1: f64, alpha2: f64) -> Result<f64> {
    mps_magnitude(&symmetric_law(alpha1)?, &symmetric_law(alpha2)?)
}

/// Builds and verifies the five-node chain from `δ₀` to `δ₁` through the
/// interior law at `(m, v)`.
pub fn hasse_path(m: f64, v: f64) -> Result<HassePath> {
    let interior = BetaLaw::interior(m, v)?;
    let nodes = alloc::vec![
        BetaLaw::PointMass(0.0),
        BetaLaw::TwoPoint(m),
        interior,
        BetaLaw::PointMass(m),
        BetaLaw::PointMass(1.0),
    ];
    let mut edge_checks = Vec::with_capacity(4);
    for (edge, pair) in nodes.windows(2).enumerate() {
        let check = ssd_compare(&pair[0], &pair[1])?;
        if check.verdict != Verdict::SecondDominates {
            return Err(Error::PathVerification { edge });
        }
        edge_checks.push(check);
    }
    Ok(HassePath { nodes, edge_checks })
}
