//! Float routines that `core` does not provide.

pub(crate) use libm::{cos, exp, fabs as abs, floor, log, log1p, sqrt};

pub(crate) const PI: f64 = core::f64::consts::PI;
