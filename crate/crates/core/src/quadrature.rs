//! Gauss–Legendre rules and an adaptive composite mesh.
//!
//! The mesh is built once for a bounded integrand (in practice a Beta CDF,
//! which is smooth inside `(0, 1)` but may behave like `x^α` with small `α`
//! at the endpoints) and then reused for many weight functions. Keeping the
//! nodes fixed makes repeated integrals vary smoothly with the parameters of
//! the weight, which is what a one-dimensional optimizer needs.

use alloc::vec::Vec;

use crate::math::{abs, cos, PI};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = alloc::vec![0.0; n];
    let mut weights = alloc::vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n
        let mut x = cos(PI * (i as f64 + 0.75) / (nf + 0.5));
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if abs(step) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre nodes over `[lo, hi]` with the integrand sampled
/// at every node.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledMesh {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    samples: Vec<f64>,
}

/// Settings for [`SampledMesh::adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct MeshOptions {
    /// Points per panel.
    pub order: usize,
    /// Uniform panels before any refinement.
    pub initial_panels: usize,
    /// Accepted absolute discrepancy between a panel and its two halves.
    pub panel_tol: f64,
    pub max_depth: u32,
}

impl Default for MeshOptions {
    fn default() -> Self {
        Self { order: 16, initial_panels: 4, panel_tol: 1e-15, max_depth: 60 }
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    depth: u32,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    samples: Vec<f64>,
    integral: f64,
}

impl SampledMesh {
    /// Refines panels until the `order`-point rule on each panel agrees with
    /// the sum over its halves to `panel_tol`. `f` must be infallible and
    /// finite on `(lo, hi)`; it is never evaluated at the endpoints.
    pub fn adaptive<F>(f: F, lo: f64, hi: f64, opts: MeshOptions) -> Self
    where
        F: Fn(f64) -> f64,
    {
        let (ref_nodes, ref_weights) = gauss_legendre(opts.order);
        let make = |a: f64, b: f64, depth: u32| -> Panel {
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            let nodes: Vec<f64> = ref_nodes.iter().map(|t| mid + half * t).collect();
            let weights: Vec<f64> = ref_weights.iter().map(|w| half * w).collect();
            let samples: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
            let integral = weights.iter().zip(&samples).map(|(w, s)| w * s).sum();
            Panel { lo: a, hi: b, depth, nodes, weights, samples, integral }
        };

        let panels = opts.initial_panels.max(1);
        let width = (hi - lo) / panels as f64;
        // stack is processed back to front so push right-most first
        let mut stack: Vec<Panel> = (0..panels)
            .rev()
            .map(|k| {
                let a = lo + k as f64 * width;
                let b = if k + 1 == panels { hi } else { a + width };
                make(a, b, 0)
            })
            .collect();

        let mut mesh = SampledMesh { nodes: Vec::new(), weights: Vec::new(), samples: Vec::new() };
        while let Some(panel) = stack.pop() {
            let mid = 0.5 * (panel.lo + panel.hi);
            let left = make(panel.lo, mid, panel.depth + 1);
            let right = make(mid, panel.hi, panel.depth + 1);
            let refined = left.integral + right.integral;
            let settled = abs(refined - panel.integral) <= opts.panel_tol
                || panel.depth >= opts.max_depth
                || !refined.is_finite();
            if settled {
                for p in [left, right] {
                    mesh.nodes.extend_from_slice(&p.nodes);
                    mesh.weights.extend_from_slice(&p.weights);
                    mesh.samples.extend_from_slice(&p.samples);
                }
            } else {
                stack.push(right);
                stack.push(left);
            }
        }
        mesh
    }

    /// False if the integrand produced a non-finite sample anywhere.
    pub fn samples_finite(&self) -> bool {
        self.samples.iter().all(|s| s.is_finite())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫ f(x) g(x) dx` where `f` is the sampled integrand.
    pub fn integrate_weighted<G>(&self, g: G) -> f64
    where
        G: Fn(f64) -> f64,
    {
        self.nodes.iter().zip(&self.weights).zip(&self.samples).map(|((&x, &w), &s)| w * s * g(x)).sum()
    }

    /// `∫ f(x) dx`.
    pub fn integral(&self) -> f64 {
        self.weights.iter().zip(&self.samples).map(|(w, s)| w * s).sum()
    }
}
