//! Centro-affine geometry of star polygons and closed curves: polygon
//! functionals and their optimizers, polar duality, Schwarzian and Hill
//! checks, the `I(alpha)` functional, and outer billiards in the far field.
//!
//! Most types are generic over the scalar; the aliases below fix `f64`
//! (and exact rationals where the construction is algebraic).

pub mod billiards;
pub mod duality;
pub mod error;
pub mod functionals;
pub mod planar;
pub mod polygon_space;
pub mod random;
pub mod scalar;
pub mod spectral;
pub mod tolerance;

pub use error::{Error, Result};
pub use rustfft::num_complex::Complex;
pub use scalar::{Real, Scalar};

pub type Rational = num_rational::Ratio<i64>;
pub type Point = planar::Vec2<f64>;
pub type Polygon = planar::StarPolygon<f64>;
pub type ExactPolygon = planar::StarPolygon<Rational>;
pub type Curve = planar::SampledCurve<f64>;
pub type Diffeo = functionals::DiffeoCurve<f64>;
pub type Body = planar::SupportBody<f64>;
pub type Convex = planar::ConvexPolygon<f64>;
pub type Dual = duality::DualPolygon<f64>;
