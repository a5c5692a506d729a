//! Star polygons modulo `SL(2, R)`: cross-product coordinates, frieze
//! determinants, reconstruction from the discrete Hill recurrence, ray
//! normalization, and minimization of the sum of cross-products.

mod minimize;
mod rays;
mod sequence;

pub use minimize::{minimize_f_n, InitialPoint, MinimizationResult, MinimizeOptions};
pub use rays::{even_image_residual, normalize, polygon_over_rays, rays_of, RayConfiguration};
pub use sequence::{
    closure_residual, cross_products, f_n, frieze_determinant, frieze_relation_check, reconstruct,
    CrossProductSequence,
};

use crate::planar::{Sl2Action, Sl2Matrix, StarPolygon};
use crate::scalar::Scalar;

/// Lower bound `2n cos(pi/n)` of the sum of cross-products over `n`-gons.
pub fn f_n_lower_bound(n: usize) -> f64 {
    2.0 * n as f64 * (std::f64::consts::PI / n as f64).cos()
}

/// Cross-product of each vertex's neighbours on the centro-affine regular
/// polygon, `2 cos(pi/n)`.
pub fn regular_cross_product(n: usize) -> f64 {
    2.0 * (std::f64::consts::PI / n as f64).cos()
}

/// Moves a polygon into the gauge `V_0 = (1, 0)`, `V_{n-1} = (0, 1)`.
pub fn canonical_gauge<T: Scalar>(p: &StarPolygon<T>) -> StarPolygon<T> {
    // [V_0, V_{n-1}] = [V_{n-1}, -V_0] = 1, so the column matrix is unimodular.
    let frame = Sl2Matrix::from_columns(p.vertex(0), p.vertex(p.n() as i64 - 1))
        .unwrap_or_else(|_| Sl2Matrix::identity());
    p.sl2_apply(&frame.inverse())
}
