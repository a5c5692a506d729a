//! Validation tolerances shared by every module.
//!
//! All checks are absolute on quantities normalized to order one.

/// Unit cross-products of polygon vertices.
pub const EPS_POLY: f64 = 1e-9;
/// Unit Wronskian of sampled curves.
pub const EPS_WRON: f64 = 1e-8;
/// Determinant of `SL(2, R)` matrices.
pub const EPS_DET: f64 = 1e-12;
/// Closure residuals of cross-product sequences.
pub const EPS_CLOSE: f64 = 1e-9;
/// Gradient norm at which the polygon minimizer stops.
pub const EPS_GRAD: f64 = 1e-8;
/// Slack allowed below the lower bound of the polygon functional.
pub const EPS_OPT: f64 = 1e-7;
/// Angular margin for star-shapedness (radians).
pub const STAR_MARGIN: f64 = 1e-10;
/// Minimum of `f'` admitted for circle diffeomorphisms.
pub const DELTA_DIFFEO: f64 = 0.05;
/// Kepler rate of far-field curves.
pub const EPS_KEPLER: f64 = 1e-7;
/// Default sample count for smooth curves.
pub const DEFAULT_GRID: usize = 1024;
