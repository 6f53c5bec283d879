use betadome::dome::{curve_c1, curve_c2, parabola};
use betadome::dominance::{fsd_compare, ssd_compare};
use betadome::portfolio::closed_form_boundary_gamma;
use betadome::special_fn::{reg_inc_beta, ShapeParams};
use betadome::{BetaLaw, DomePoint, DomeRegion, PortfolioProblem, Verdict};
use proptest::prelude::*;

/// Mean and variance fraction kept away from the corners of the dome.
fn interior_point() -> impl Strategy<Value = (f64, f64)> {
    (0.02f64..0.98, 0.02f64..0.98).prop_map(|(m, f)| (m, f * parabola(m)))
}

fn interior(m: f64, v: f64) -> BetaLaw {
    BetaLaw::interior(m, v).unwrap()
}

fn any_law() -> impl Strategy<Value = BetaLaw> {
    prop_oneof![
        6 => interior_point().prop_map(|(m, v)| interior(m, v)),
        1 => (0.0f64..=1.0).prop_map(BetaLaw::PointMass),
        1 => (0.01f64..0.99).prop_map(BetaLaw::TwoPoint),
    ]
}

/// Adaptive Simpson on `[a, b]`.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 50)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reflection(x in 0.0f64..=1.0, a in 0.05f64..40.0, b in 0.05f64..40.0) {
        let p = ShapeParams::new(a, b).unwrap();
        let q = ShapeParams::new(b, a).unwrap();
        let lhs = reg_inc_beta(x, p).unwrap();
        let rhs = 1.0 - reg_inc_beta(1.0 - x, q).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn symmetric_family_is_symmetric(z in 0.0f64..=0.5, a in 0.05f64..60.0) {
        let p = ShapeParams::new(a, a).unwrap();
        let s = reg_inc_beta(0.5 - z, p).unwrap() + reg_inc_beta(0.5 + z, p).unwrap();
        prop_assert!((s - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn bijection_round_trip((m, v) in interior_point()) {
        let pt = DomePoint::new(m, v).unwrap();
        let back = DomePoint::from_shape(pt.to_shape().unwrap());
        prop_assert!((back.m() - m).abs() <= 1e-12);
        prop_assert!((back.v() - v).abs() <= 1e-12);
    }

    #[test]
    fn shape_round_trip(a in 0.01f64..100.0, b in 0.01f64..100.0) {
        let shape = DomePoint::from_shape(ShapeParams::new(a, b).unwrap()).to_shape().unwrap();
        prop_assert!((shape.alpha() - a).abs() <= 1e-12 * a);
        prop_assert!((shape.beta() - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn region_matches_density_slopes((m, v) in interior_point()) {
        let pt = DomePoint::new(m, v).unwrap();
        let shape = pt.to_shape().unwrap();
        prop_assume!((shape.alpha() - 1.0).abs() > 0.01 && (shape.beta() - 1.0).abs() > 0.01);
        let law = BetaLaw::from_point(pt);
        let pdf = |x: f64| law.pdf(x).unwrap();
        let (x0, h) = (1e-4, 1e-6);
        let rising_at_zero = pdf(x0 + h) > pdf(x0);
        let rising_at_one = pdf(1.0 - x0) > pdf(1.0 - x0 - h);
        let expected = match (rising_at_zero, rising_at_one) {
            (true, false) => DomeRegion::Arched,
            (false, true) => DomeRegion::UShaped,
            (false, false) => DomeRegion::Decreasing,
            (true, true) => DomeRegion::Increasing,
        };
        prop_assert_eq!(pt.classify_region().unwrap(), expected);
    }

    #[test]
    fn region_curves_sit_inside_the_dome(m in 1e-6f64..(1.0 - 1e-6)) {
        let d = parabola(m);
        prop_assert!(curve_c1(m) > 0.0 && curve_c1(m) < d);
        prop_assert!(curve_c2(m) > 0.0 && curve_c2(m) < d);
        if (m - 0.5).abs() > 1e-9 {
            prop_assert!((curve_c1(m) - curve_c2(m)).abs() > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cdf_is_monotone((m, v) in interior_point()) {
        let law = interior(m, v);
        let mut prev = 0.0;
        for k in 0..=200 {
            let f = law.cdf(k as f64 / 200.0).unwrap();
            prop_assert!(f >= prev);
            prev = f;
        }
    }

    #[test]
    fn mean_is_integral_of_survival(law in any_law()) {
        let survival = |x: f64| 1.0 - law.cdf(x).unwrap();
        let integral = match law {
            BetaLaw::Interior(_) => simpson(&survival, 0.0, 1.0, 1e-12),
            // the integrand jumps; split at the jump
            BetaLaw::PointMass(m) => m * survival(0.5 * m) + (1.0 - m) * survival(0.5 * (1.0 + m)),
            BetaLaw::TwoPoint(_) => survival(0.5),
        };
        prop_assert!((integral - law.mean()).abs() <= 1e-9, "{} vs {}", integral, law.mean());
    }

    #[test]
    fn integrated_cdf_matches_quadrature(law in any_law(), x in 0.0f64..=1.0) {
        let cdf = |t: f64| law.cdf(t).unwrap();
        let oracle = match law {
            BetaLaw::Interior(_) => simpson(&cdf, 0.0, x, 1e-12),
            BetaLaw::PointMass(m) => if x > m { x - m } else { 0.0 },
            BetaLaw::TwoPoint(m) => (1.0 - m) * x,
        };
        prop_assert!((law.integrated_cdf(x).unwrap() - oracle).abs() <= 1e-9);
    }

    #[test]
    fn integrated_cdf_is_convex((m, v) in interior_point()) {
        let law = interior(m, v);
        let n = 100;
        let y: Vec<f64> = (0..=n).map(|k| law.integrated_cdf(k as f64 / n as f64).unwrap()).collect();
        for w in y.windows(3) {
            prop_assert!(w[2] - 2.0 * w[1] + w[0] >= -1e-13);
        }
    }

    #[test]
    fn variance_bound(law in any_law()) {
        let (m, v) = (law.mean(), law.variance());
        match law {
            BetaLaw::Interior(_) => prop_assert!(v < parabola(m)),
            BetaLaw::TwoPoint(_) => prop_assert!((v - parabola(m)).abs() <= 1e-15),
            BetaLaw::PointMass(_) => prop_assert_eq!(v, 0.0),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ssd_is_antisymmetric(a in any_law(), b in any_law()) {
        let ab = ssd_compare(&a, &b).unwrap().verdict;
        let ba = ssd_compare(&b, &a).unwrap().verdict;
        prop_assert_eq!(ab, ba.flipped());
    }

    #[test]
    fn equal_mean_pairs_follow_variance(m in 0.02f64..0.98, f1 in 0.02f64..0.98, f2 in 0.02f64..0.98) {
        prop_assume!((f1 - f2).abs() > 1e-3);
        let (v1, v2) = (f1 * parabola(m), f2 * parabola(m));
        let verdict = ssd_compare(&interior(m, v1), &interior(m, v2)).unwrap().verdict;
        let expected = if v1 < v2 { Verdict::FirstDominates } else { Verdict::SecondDominates };
        prop_assert_eq!(verdict, expected);
    }

    #[test]
    fn fsd_implies_ssd(a in any_law(), b in any_law()) {
        let fsd = fsd_compare(&a, &b).unwrap().verdict;
        if matches!(fsd, Verdict::FirstDominates | Verdict::SecondDominates) {
            let ssd = ssd_compare(&a, &b).unwrap().verdict;
            prop_assert!(ssd == fsd || ssd == Verdict::Equal);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn equal_mean_chain(m in 0.02f64..0.98, mut fs in proptest::array::uniform2(0.02f64..0.98)) {
        fs.sort_by(f64::total_cmp);
        prop_assume!(fs[1] - fs[0] > 1e-3);
        // two-point law, then decreasing variance, then the point mass
        let chain = [
            BetaLaw::TwoPoint(m),
            interior(m, fs[1] * parabola(m)),
            interior(m, fs[0] * parabola(m)),
            BetaLaw::PointMass(m),
        ];
        for i in 0..chain.len() {
            for j in (i + 1)..chain.len() {
                prop_assert_eq!(ssd_compare(&chain[i], &chain[j]).unwrap().verdict, Verdict::SecondDominates);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn boundary_chains_are_ordered(m1 in 0.0f64..1.0, gap in 1e-3f64..1.0) {
        let m2 = (m1 + gap).min(1.0);
        prop_assume!(m2 > m1);
        let r = ssd_compare(&BetaLaw::PointMass(m1), &BetaLaw::PointMass(m2)).unwrap();
        prop_assert_eq!(r.verdict, Verdict::SecondDominates);
        if m1 > 0.0 && m2 < 1.0 {
            let r = ssd_compare(&BetaLaw::TwoPoint(m1), &BetaLaw::TwoPoint(m2)).unwrap();
            prop_assert_eq!(r.verdict, Verdict::SecondDominates);
        }
    }

    #[test]
    fn kurtosis_order_matches_dominance(a1 in 0.05f64..50.0, a2 in 0.05f64..50.0) {
        prop_assume!((a1 - a2).abs() > 1e-3);
        let law = |a: f64| BetaLaw::from_shape(ShapeParams::new(a, a).unwrap());
        let (l1, l2) = (law(a1), law(a2));
        let (k1, k2) = (l1.moments().kurtosis.unwrap(), l2.moments().kurtosis.unwrap());
        let verdict = ssd_compare(&l1, &l2).unwrap().verdict;
        if k1 < k2 {
            prop_assert_eq!(verdict, Verdict::SecondDominates);
        } else {
            prop_assert_eq!(verdict, Verdict::FirstDominates);
        }
    }
}

#[test]
fn raising_the_mean_at_fixed_variance_ends_incomparable() {
    let base = interior(0.35, 0.07);
    // largest M with D(M) >= 0.07
    let top = 0.5 + (0.25f64 - 0.07).sqrt();
    let mut saw_dominance = false;
    let mut saw_incomparable = false;
    let mut mean = 0.36;
    while mean < top {
        match ssd_compare(&base, &BetaLaw::interior(mean, 0.07).unwrap()).unwrap().verdict {
            Verdict::SecondDominates => saw_dominance = true,
            Verdict::Incomparable => saw_incomparable = true,
            other => panic!("unexpected verdict {other:?} at M={mean}"),
        }
        mean += 0.005;
    }
    assert!(saw_dominance && saw_incomparable);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sandwich_between_worst_case_and_one(
        (m, v) in interior_point(),
        lambda in 0.5f64..20.0,
        rate in 0.01f64..0.5,
    ) {
        prop_assume!(m > rate + 1e-3);
        let lower = closed_form_boundary_gamma(m, lambda, rate).unwrap();
        let best = PortfolioProblem::new(interior(m, v), lambda, rate).unwrap().optimal_gamma().unwrap();
        prop_assert!(best.gamma_star >= lower - 1e-7, "{} < {}", best.gamma_star, lower);
        prop_assert!(best.gamma_star <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dominance_raises_expected_utility(
        a in any_law(),
        b in any_law(),
        lambda in 0.5f64..15.0,
        rate in 0.01f64..0.5,
    ) {
        let verdict = ssd_compare(&a, &b).unwrap().verdict;
        let (worse, better) = match verdict {
            Verdict::SecondDominates => (a, b),
            Verdict::FirstDominates => (b, a),
            _ => return Ok(()),
        };
        let pw = PortfolioProblem::new(worse, lambda, rate).unwrap().prepare().unwrap();
        let pb = PortfolioProblem::new(better, lambda, rate).unwrap().prepare().unwrap();
        for gamma in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let (ew, eb) = (pw.expected_utility(gamma).unwrap(), pb.expected_utility(gamma).unwrap());
            prop_assert!(eb >= ew - 1e-12 * ew.abs().max(1.0), "gamma={} {} < {}", gamma, eb, ew);
        }
    }

    #[test]
    fn expected_utility_is_concave(law in any_law(), lambda in 0.5f64..15.0, rate in 0.01f64..0.5) {
        let p = PortfolioProblem::new(law, lambda, rate).unwrap().prepare().unwrap();
        let eu: Vec<f64> = (0..33).map(|k| p.expected_utility(k as f64 / 32.0).unwrap()).collect();
        let scale = eu.iter().fold(0.0f64, |s, e| s.max(e.abs()));
        for w in eu.windows(3) {
            prop_assert!(w[2] - 2.0 * w[1] + w[0] <= 1e-13 * scale);
        }
    }

    #[test]
    fn optimum_is_continuous(
        (m, v) in interior_point(),
        lambda in 0.5f64..15.0,
        rate in 0.01f64..0.5,
        d in proptest::array::uniform4(-1e-4f64..1e-4),
    ) {
        let solve = |m: f64, v: f64, l: f64, r: f64| {
            PortfolioProblem::new(interior(m, v), l, r).unwrap().optimal_gamma().unwrap().gamma_star
        };
        let (m2, l2, r2) = (m + d[0], lambda + d[2], rate + d[3]);
        let v2 = (v + d[1]).clamp(1e-3 * parabola(m2), 0.99 * parabola(m2));
        let delta = (solve(m, v, lambda, rate) - solve(m2, v2, l2, r2)).abs();
        prop_assert!(delta < 0.02, "{}", delta);
    }
}

#[test]
fn two_point_marginal_sign_follows_closed_bracket() {
    for &m in &[0.05, 0.2, 0.4, 0.6, 0.8, 0.95] {
        for &r in &[0.01, 0.05, 0.2, 0.5] {
            for &lambda in &[0.5, 2.0, 4.0, 10.0, 25.0] {
                let p = PortfolioProblem::new(BetaLaw::TwoPoint(m), lambda, r).unwrap();
                for k in 0..=10 {
                    let gamma = k as f64 / 10.0;
                    let bracket = m * (1.0 - r) * (-lambda * gamma).exp() - (1.0 - m) * r;
                    if bracket.abs() < 1e-12 {
                        continue;
                    }
                    let slope = p.marginal_expected_utility(gamma).unwrap();
                    assert_eq!(slope > 0.0, bracket > 0.0, "m={m} r={r} lambda={lambda} gamma={gamma}");
                }
            }
        }
    }
}
