//! CSV and binary PPM renderings of a sweep grid.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use betadome::SweepGrid;

use crate::error::CliError;
use crate::format::sig9;

pub const CSV_HEADER: &str = "m,v,gamma_star";

const WHITE: [u8; 3] = [255, 255, 255];

/// Color of one optimal fraction: red for all-in, blue for all-safe.
pub fn gamma_color(gamma: f64) -> [u8; 3] {
    let g = gamma.clamp(0.0, 1.0);
    [(255.0 * g).round() as u8, 0, (255.0 * (1.0 - g)).round() as u8]
}

/// Writes the stored cells, by increasing `m` then increasing `v`.
pub fn csv_bytes(grid: &SweepGrid) -> Vec<u8> {
    let mut out = String::with_capacity(40 * grid.n_mean() * grid.n_var());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for cell in grid.cells() {
        out.push_str(&sig9(cell.m));
        out.push(',');
        out.push_str(&sig9(cell.v));
        out.push(',');
        out.push_str(&sig9(cell.gamma_star));
        out.push('\n');
    }
    out.into_bytes()
}

/// P6 image, one pixel per node, largest variance on the top row.
pub fn ppm_bytes(grid: &SweepGrid) -> Vec<u8> {
    let (w, h) = (grid.n_mean(), grid.n_var());
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(3 * w * h);
    for j in (0..h).rev() {
        for i in 0..w {
            let rgb = grid.cell(i, j).map_or(WHITE, |c| gamma_color(c.gamma_star));
            out.extend_from_slice(&rgb);
        }
    }
    out
}

pub fn write_csv(grid: &SweepGrid, path: &Path) -> Result<(), CliError> {
    write_file(path, &csv_bytes(grid))
}

pub fn write_heatmap(grid: &SweepGrid, path: &Path) -> Result<(), CliError> {
    write_file(path, &ppm_bytes(grid))
}

/// Two-column CSV of `(m, γ_min(m))` pairs.
pub fn write_frontier(points: &[(f64, f64)], path: &Path) -> Result<(), CliError> {
    let mut out = String::from("m,gamma_min\n");
    for &(m, g) in points {
        out.push_str(&format!("{},{}\n", sig9(m), sig9(g)));
    }
    write_file(path, out.as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut writer = BufWriter::new(file);
    writer.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    writer.flush().map_err(|e| CliError::io(path, e))
}
