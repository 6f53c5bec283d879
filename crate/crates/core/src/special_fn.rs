//! Log-gamma, digamma, the complete beta function and the regularized
//! incomplete beta function `I_x(α, β)`.

use crate::error::{Error, Result};
use crate::math::{abs, exp, log, log1p};

/// Classical Beta shape parameters, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams {
    alpha: f64,
    beta: f64,
}

impl ShapeParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        // written so that NaN is rejected as well
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Domain("alpha must be a finite positive number"));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::Domain("beta must be a finite positive number"));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Below this the Stirling series is not used directly; the argument is
/// shifted up by the recurrence `Γ(x+1) = xΓ(x)` first.
const STIRLING_MIN: f64 = 10.0;

// B_{2k} / (2k (2k-1)), k = 1..8
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn stirling_ln_gamma(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += c * power;
        power *= inv2;
    }
    (x - 0.5) * log(x) - x + HALF_LN_TWO_PI + series
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::Domain("log_gamma requires a finite x > 0"));
    }
    if x >= STIRLING_MIN {
        return Ok(stirling_ln_gamma(x));
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < STIRLING_MIN {
        product *= shifted;
        shifted += 1.0;
    }
    Ok(stirling_ln_gamma(shifted) - log(product))
}

/// `Ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::Domain("digamma requires a finite x > 0"));
    }
    let mut y = x;
    let mut acc = 0.0;
    while y < STIRLING_MIN {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    // -B_{2k} / (2k y^{2k}), k = 1..7, in Horner form over y^{-2}
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32_760.0 - inv2 / 12.0))))));
    Ok(acc + log(y) - 0.5 / y - tail)
}

/// `ln B(α, β)`.
pub fn ln_beta(p: ShapeParams) -> f64 {
    ln_beta_raw(p.alpha, p.beta)
}

pub(crate) fn ln_beta_raw(a: f64, b: f64) -> f64 {
    // a, b > 0 is guaranteed by every caller, so the kernels cannot fail
    let lg = |x: f64| log_gamma(x).unwrap_or(f64::NAN);
    lg(a) + lg(b) - lg(a + b)
}

/// The complete beta function `B(α, β) = Γ(α)Γ(β)/Γ(α+β)`.
pub fn beta_fn(p: ShapeParams) -> f64 {
    exp(ln_beta(p))
}

const CF_MAX_ITER: usize = 500;
const CF_TOL: f64 = 1e-15;
const CF_TINY: f64 = 1e-300;

/// Regularized incomplete beta function `I_x(α, β)`, the Beta CDF.
pub fn reg_inc_beta(x: f64, p: ShapeParams) -> Result<f64> {
    reg_inc_beta_raw(x, p.alpha, p.beta, ln_beta_raw(p.alpha, p.beta))
}

/// `I_x(a, b)` with a precomputed `ln B(a, b)`.
pub(crate) fn reg_inc_beta_raw(x: f64, a: f64, b: f64, ln_beta_ab: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain("incomplete beta requires 0 <= x <= 1"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        let y = 1.0 - x;
        let prefix = exp(b * log(y) + a * log1p(-y) - ln_beta_ab) / b;
        Ok(1.0 - prefix * continued_fraction(y, b, a)?)
    } else {
        let prefix = exp(a * log(x) + b * log1p(-x) - ln_beta_ab) / a;
        Ok(prefix * continued_fraction(x, a, b)?)
    }
}

/// Continued fraction for `I_x(a, b)` by the modified Lentz method.
fn continued_fraction(x: f64, a: f64, b: f64) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let guard = |v: f64| if abs(v) < CF_TINY { CF_TINY } else { v };

    let mut c = 1.0;
    let mut d = 1.0 / guard(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        let even = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / guard(1.0 + even * d);
        c = guard(1.0 + even / c);
        h *= d * c;

        let odd = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / guard(1.0 + odd * d);
        c = guard(1.0 + odd / c);
        let delta = d * c;
        h *= delta;

        if abs(delta - 1.0) <= CF_TOL {
            return Ok(h);
        }
    }
    Err(Error::NotConverged { what: "incomplete beta continued fraction", iterations: CF_MAX_ITER })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn shape(a: f64, b: f64) -> ShapeParams {
        ShapeParams::new(a, b).unwrap()
    }

    #[test]
    fn shape_params_reject_non_positive() {
        assert!(ShapeParams::new(0.0, 1.0).is_err());
        assert!(ShapeParams::new(1.0, -2.0).is_err());
        assert!(ShapeParams::new(f64::NAN, 1.0).is_err());
        assert!(ShapeParams::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn log_gamma_closed_forms() {
        assert!(abs(log_gamma(1.0).unwrap()) < 1e-14);
        assert!(abs(log_gamma(2.0).unwrap()) < 1e-14);
        let half = 0.5 * log(crate::math::PI);
        assert!(abs(log_gamma(0.5).unwrap() - half) < 1e-14);
        assert!(abs(log_gamma(10.0).unwrap() - log(362_880.0)) < 1e-13);
        // ln Γ(1e-6) = -ln(1e-6) - γ·1e-6 + O(1e-12)
        let tiny = 1e-6;
        assert!(abs(log_gamma(tiny).unwrap() - (-log(tiny) - EULER_GAMMA * tiny)) < 1e-11);
    }

    #[test]
    fn log_gamma_recurrence_over_range() {
        // ln Γ(x+1) - ln Γ(x) = ln x
        let mut x = 1e-6;
        while x < 1e6 {
            let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
            let scale = 1.0f64.max(abs(log_gamma(x).unwrap()));
            assert!(abs(lhs - log(x)) < 1e-13 * scale, "x={x}");
            x *= 1.7;
        }
    }

    #[test]
    fn log_gamma_domain() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn digamma_closed_forms() {
        assert!(abs(digamma(1.0).unwrap() + EULER_GAMMA) < 1e-12);
        assert!(abs(digamma(2.0).unwrap() - (1.0 - EULER_GAMMA)) < 1e-12);
        let ln2 = log(2.0);
        assert!(abs(digamma(0.5).unwrap() - (-EULER_GAMMA - 2.0 * ln2)) < 1e-12);
        assert!(digamma(0.0).is_err());
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        for &x in &[1e-4, 0.01, 0.3, 1.5, 7.0, 42.0, 1e3, 1e6] {
            let h = 1e-5 * x;
            let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
            let d = digamma(x).unwrap();
            assert!(abs(fd - d) < 1e-6 * (1.0 + abs(d)), "x={x}: {fd} vs {d}");
        }
        // recurrence Ψ(x+1) = Ψ(x) + 1/x
        for &x in &[1e-4, 0.2, 3.3, 5.9, 6.1, 250.0] {
            let diff = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
            assert!(abs(diff - 1.0 / x) < 1e-10 * (1.0 / x).max(1.0), "x={x}");
        }
    }

    #[test]
    fn beta_fn_closed_forms() {
        assert!(abs(beta_fn(shape(1.0, 1.0)) - 1.0) < 1e-14);
        assert!(abs(beta_fn(shape(2.0, 2.0)) - 1.0 / 6.0) < 1e-15);
        assert!(abs(beta_fn(shape(0.5, 0.5)) / crate::math::PI - 1.0) < 1e-12);
    }

    #[test]
    fn reg_inc_beta_closed_forms() {
        assert!(abs(reg_inc_beta(0.5, shape(3.0, 3.0)).unwrap() - 0.5) < 1e-14);
        assert!(abs(reg_inc_beta(0.25, shape(1.0, 1.0)).unwrap() - 0.25) < 1e-14);
        assert_eq!(reg_inc_beta(0.0, shape(0.3, 4.0)).unwrap(), 0.0);
        assert_eq!(reg_inc_beta(1.0, shape(0.3, 4.0)).unwrap(), 1.0);
        assert!(reg_inc_beta(-0.1, shape(1.0, 1.0)).is_err());
        assert!(reg_inc_beta(1.1, shape(1.0, 1.0)).is_err());
        // arcsine CDF (2/π) asin(√x)
        let x: f64 = 0.2;
        let expected = 2.0 / crate::math::PI * libm::asin(x.sqrt());
        assert!(abs(reg_inc_beta(x, shape(0.5, 0.5)).unwrap() - expected) < 1e-13);
    }

    /// Composite Simpson on the density `x^(a-1)(1-x)^(b-1)/B(a,b)`.
    fn simpson_cdf(x: f64, a: f64, b: f64, n: usize) -> f64 {
        let norm = beta_fn(shape(a, b));
        let f = |t: f64| libm::pow(t, a - 1.0) * libm::pow(1.0 - t, b - 1.0) / norm;
        let h = x / n as f64;
        let mut s = f(0.0) + f(x);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn reg_inc_beta_matches_simpson_oracle() {
        let oracle = simpson_cdf(0.3, 2.0, 5.0, 2000);
        let value = reg_inc_beta(0.3, shape(2.0, 5.0)).unwrap();
        assert!(abs(value - oracle) < 1e-9, "{value} vs {oracle}");
        // frozen from the oracle above: 1 - 0.7^6 - 6 * 0.3 * 0.7^5
        assert!(abs(value - 0.579_825) < 1e-12);
        for &(x, a, b) in &[(0.1, 3.0, 1.5), (0.8, 4.0, 2.5), (0.55, 7.0, 7.5)] {
            let oracle = simpson_cdf(x, a, b, 4000);
            assert!(abs(reg_inc_beta(x, shape(a, b)).unwrap() - oracle) < 1e-9);
        }
    }

    #[test]
    fn reg_inc_beta_reflection() {
        for &(a, b) in &[(0.01, 0.02), (0.5, 3.0), (2.0, 5.0), (40.0, 0.3), (900.0, 1100.0)] {
            for i in 0..=40 {
                let x = i as f64 / 40.0;
                let lhs = reg_inc_beta(x, shape(a, b)).unwrap();
                let rhs = 1.0 - reg_inc_beta(1.0 - x, shape(b, a)).unwrap();
                assert!(abs(lhs - rhs) < 1e-12, "a={a} b={b} x={x}");
            }
        }
    }

    #[test]
    fn reg_inc_beta_monotone_in_x() {
        for &(a, b) in &[(0.05, 0.05), (0.3, 8.0), (1.0, 1.0), (12.0, 3.0), (3000.0, 2000.0)] {
            let values: Vec<f64> = (0..=500).map(|i| reg_inc_beta(i as f64 / 500.0, shape(a, b)).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[1] >= w[0] - 1e-15), "a={a} b={b}");
            assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
        }
    }

    fn binomial(a: f64, b: f64) -> f64 {
        exp(log_gamma(a + b + 1.0).unwrap() - log_gamma(a + 1.0).unwrap() - log_gamma(b + 1.0).unwrap())
    }

    #[test]
    fn reg_inc_beta_integer_recurrence() {
        // I_x(a,b) = I_x(a+1,b+1) + C(a+b, b) x^a (1-x)^b (b/(a+b) - x)
        for a in 1..=12u32 {
            for b in 1..=12u32 {
                let (af, bf) = (a as f64, b as f64);
                let binom = binomial(af, bf);
                for i in 1..20 {
                    let x = i as f64 / 20.0;
                    let lhs = reg_inc_beta(x, shape(af, bf)).unwrap();
                    let rhs = reg_inc_beta(x, shape(af + 1.0, bf + 1.0)).unwrap()
                        + binom * libm::pow(x, af) * libm::pow(1.0 - x, bf) * (bf / (af + bf) - x);
                    assert!(abs(lhs - rhs) < 1e-10, "a={a} b={b} x={x}");
                }
            }
        }
    }

    #[test]
    fn symmetric_recurrence_step() {
        // with a = b the factor is 1/2 - x: I_x(a) = I_x(a+1) + C (1/2 - x), C > 0
        for a in 1..=12u32 {
            let af = a as f64;
            for i in 1..20 {
                let x = i as f64 / 20.0;
                let c = binomial(af, af) * libm::pow(x * (1.0 - x), af);
                let lhs = reg_inc_beta(x, shape(af, af)).unwrap();
                let rhs = reg_inc_beta(x, shape(af + 1.0, af + 1.0)).unwrap() + c * (0.5 - x);
                assert!(abs(lhs - rhs) < 1e-10, "a={a} x={x}");
            }
        }
    }

    #[test]
    fn reg_inc_beta_symmetric_family() {
        for &a in &[0.05, 0.5, 1.0, 2.0, 17.0, 250.0] {
            for i in 0..=50 {
                let z = 0.5 * i as f64 / 50.0;
                let s = reg_inc_beta(0.5 - z, shape(a, a)).unwrap() + reg_inc_beta(0.5 + z, shape(a, a)).unwrap();
                assert!(abs(s - 1.0) < 1e-12, "a={a} z={z}");
            }
        }
    }
}
