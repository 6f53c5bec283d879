//! Exhaustive sweep of the optimal fraction over a rectangular mesh of the
//! closed dome, and interpolation between mesh nodes.

use alloc::vec::Vec;

use crate::beta_law::BetaLaw;
use crate::dome::{parabola, DomePoint, BOUNDARY_SNAP_TOL};
use crate::error::{Error, Result};
use crate::math::{floor, sqrt};
use crate::portfolio::{closed_form_boundary_gamma, PortfolioProblem};

/// Largest allowed increase of `γ*` when moving up a column.
pub const COLUMN_MONOTONICITY_TOL: f64 = 1e-6;

pub const DEFAULT_GRID_MEAN: usize = 201;
pub const DEFAULT_GRID_VAR: usize = 101;

/// Variance range of the mesh: `[0, 1/4]`, the top of the parabola.
pub const MAX_VARIANCE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepCell {
    pub m: f64,
    pub v: f64,
    pub gamma_star: f64,
}

/// Optimal fractions on the nodes `m_i = i/(n_mean - 1)`,
/// `v_j = j/(4(n_var - 1))` that lie inside the closed dome.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    n_mean: usize,
    n_var: usize,
    lambda: f64,
    rate: f64,
    // index i * n_var + j
    cells: Vec<Option<SweepCell>>,
}

/// Checks the sweep arguments.
pub fn validate_sweep(n_mean: usize, n_var: usize, lambda: f64, rate: f64) -> Result<()> {
    if n_mean < 2 || n_var < 2 {
        return Err(Error::Domain("grid needs at least 2 nodes per axis"));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain("risk aversion lambda must be positive"));
    }
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::Domain("risk-free rate must lie in (0, 1)"));
    }
    Ok(())
}

/// Coordinates of node `(i, j)`.
pub fn node_coordinates(n_mean: usize, n_var: usize, i: usize, j: usize) -> (f64, f64) {
    let m = i as f64 / (n_mean - 1) as f64;
    let v = j as f64 * MAX_VARIANCE / (n_var - 1) as f64;
    (m, v)
}

/// Solves the portfolio problem at one node. Nodes above the parabola give
/// `None`; nodes on the boundary use the corresponding discrete law.
pub fn solve_node(m: f64, v: f64, lambda: f64, rate: f64) -> Result<Option<SweepCell>> {
    if v > parabola(m) + BOUNDARY_SNAP_TOL {
        return Ok(None);
    }
    let point = DomePoint::new(m, v)?;
    let law = BetaLaw::from_point(point);
    let allocation = PortfolioProblem::new(law, lambda, rate)?.optimal_gamma()?;
    Ok(Some(SweepCell { m: point.m(), v: point.v(), gamma_star: allocation.gamma_star }))
}

/// Serial sweep over the whole mesh.
pub fn run_sweep(n_mean: usize, n_var: usize, lambda: f64, rate: f64) -> Result<SweepGrid> {
    validate_sweep(n_mean, n_var, lambda, rate)?;
    let mut cells = Vec::with_capacity(n_mean * n_var);
    for i in 0..n_mean {
        for j in 0..n_var {
            let (m, v) = node_coordinates(n_mean, n_var, i, j);
            cells.push(solve_node(m, v, lambda, rate)?);
        }
    }
    SweepGrid::from_cells(n_mean, n_var, lambda, rate, cells)
}

/// The worst-case fraction `γ_min(m)` sampled at `points` means spread
/// evenly over the open interval `(r, 1)`.
pub fn boundary_curve(lambda: f64, rate: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    (0..points)
        .map(|k| {
            let m = rate + (1.0 - rate) * (k + 1) as f64 / (points + 1) as f64;
            Ok((m, closed_form_boundary_gamma(m, lambda, rate)?))
        })
        .collect()
}

impl SweepGrid {
    /// Assembles a grid from per-node results in `(i, j)` row-major order and
    /// checks that every column is nonincreasing in the variance.
    pub fn from_cells(
        n_mean: usize,
        n_var: usize,
        lambda: f64,
        rate: f64,
        cells: Vec<Option<SweepCell>>,
    ) -> Result<Self> {
        validate_sweep(n_mean, n_var, lambda, rate)?;
        if cells.len() != n_mean * n_var {
            return Err(Error::Domain("cell count does not match the grid size"));
        }
        let grid = Self { n_mean, n_var, lambda, rate, cells };
        grid.check_column_monotonicity()?;
        Ok(grid)
    }

    pub fn n_mean(&self) -> usize {
        self.n_mean
    }

    pub fn n_var(&self) -> usize {
        self.n_var
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn cell(&self, i: usize, j: usize) -> Option<&SweepCell> {
        if i >= self.n_mean || j >= self.n_var {
            return None;
        }
        self.cells[i * self.n_var + j].as_ref()
    }

    /// Stored cells by increasing `m`, then increasing `v`.
    pub fn cells(&self) -> impl Iterator<Item = &SweepCell> {
        self.cells.iter().flatten()
    }

    pub fn check_column_monotonicity(&self) -> Result<()> {
        for i in 0..self.n_mean {
            let mut previous: Option<f64> = None;
            for j in 0..self.n_var {
                let Some(cell) = self.cell(i, j) else { continue };
                if let Some(prev) = previous {
                    if cell.gamma_star > prev + COLUMN_MONOTONICITY_TOL {
                        return Err(Error::ColumnMonotonicity {
                            m: cell.m,
                            v: cell.v,
                            previous: prev,
                            current: cell.gamma_star,
                        });
                    }
                }
                previous = Some(cell.gamma_star);
            }
        }
        Ok(())
    }

    /// Bilinear interpolation of `γ*` at `(m, v)`. Where a corner of the
    /// enclosing mesh square is above the parabola, a triangle of present
    /// corners containing the point is used instead, and failing that the
    /// nearest stored node.
    pub fn interpolate(&self, m: f64, v: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::OutsideDome { m, v, constraint: "0 <= mean <= 1" });
        }
        if !(v >= -BOUNDARY_SNAP_TOL) {
            return Err(Error::OutsideDome { m, v, constraint: "variance >= 0" });
        }
        if v > parabola(m) + BOUNDARY_SNAP_TOL {
            return Err(Error::OutsideDome { m, v, constraint: "variance <= mean - mean^2" });
        }
        let dm = 1.0 / (self.n_mean - 1) as f64;
        let dv = MAX_VARIANCE / (self.n_var - 1) as f64;
        let i = (floor(m / dm) as usize).min(self.n_mean - 2);
        let j = (floor(v.max(0.0) / dv) as usize).min(self.n_var - 2);
        let (m0, v0) = node_coordinates(self.n_mean, self.n_var, i, j);
        let tm = ((m - m0) / dm).clamp(0.0, 1.0);
        let tv = ((v - v0) / dv).clamp(0.0, 1.0);

        let g = |di: usize, dj: usize| self.cell(i + di, j + dj).map(|c| c.gamma_star);
        let (g00, g10, g01, g11) = (g(0, 0), g(1, 0), g(0, 1), g(1, 1));

        let value = if let (Some(a), Some(b), Some(c), Some(d)) = (g00, g10, g01, g11) {
            a * (1.0 - tm) * (1.0 - tv) + b * tm * (1.0 - tv) + c * (1.0 - tm) * tv + d * tm * tv
        } else {
            // triangles of the unit square as (corner offsets, values)
            let corners = [((0.0, 0.0), g00), ((1.0, 0.0), g10), ((0.0, 1.0), g01), ((1.0, 1.0), g11)];
            let triangles = [[0usize, 1, 2], [1, 3, 2], [0, 1, 3], [0, 3, 2]];
            triangles
                .iter()
                .find_map(|t| {
                    let p: Vec<((f64, f64), f64)> =
                        t.iter().map(|&k| corners[k].1.map(|val| (corners[k].0, val))).collect::<Option<_>>()?;
                    barycentric(p[0], p[1], p[2], (tm, tv))
                })
                .unwrap_or_else(|| self.nearest(m, v))
        };
        Ok(value.clamp(0.0, 1.0))
    }

    fn nearest(&self, m: f64, v: f64) -> f64 {
        // distances in mesh units so both axes weigh alike
        let dm = 1.0 / (self.n_mean - 1) as f64;
        let dv = MAX_VARIANCE / (self.n_var - 1) as f64;
        self.cells()
            .map(|c| {
                let (a, b) = ((c.m - m) / dm, (c.v - v) / dv);
                (sqrt(a * a + b * b), c.gamma_star)
            })
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .map(|(_, g)| g)
            .unwrap_or(0.0)
    }
}

/// Linear interpolation on a triangle if `q` lies inside it.
fn barycentric(
    (p0, g0): ((f64, f64), f64),
    (p1, g1): ((f64, f64), f64),
    (p2, g2): ((f64, f64), f64),
    q: (f64, f64),
) -> Option<f64> {
    let det = (p1.1 - p2.1) * (p0.0 - p2.0) + (p2.0 - p1.0) * (p0.1 - p2.1);
    let w0 = ((p1.1 - p2.1) * (q.0 - p2.0) + (p2.0 - p1.0) * (q.1 - p2.1)) / det;
    let w1 = ((p2.1 - p0.1) * (q.0 - p2.0) + (p0.0 - p2.0) * (q.1 - p2.1)) / det;
    let w2 = 1.0 - w0 - w1;
    let eps = 1e-12;
    (w0 >= -eps && w1 >= -eps && w2 >= -eps).then_some(w0 * g0 + w1 * g1 + w2 * g2)
}
