//! Planar linear algebra and the containers every other module builds on.

mod convex;
mod curve;
mod polygon;
mod support;

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};
use crate::tolerance::EPS_DET;

pub use convex::ConvexPolygon;
pub use curve::SampledCurve;
pub use polygon::{is_star_shaped, StarPolygon};
pub use support::SupportBody;

/// A vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Vec2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite_val() && self.y.is_finite_val()
    }
}

impl<T: Real> Vec2<T> {
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn arg(self) -> T {
        self.y.atan2(self.x)
    }

    /// Unit vector at angle `t`.
    pub fn polar(t: T) -> Self {
        let (s, c) = t.sin_cos();
        Self::new(c, s)
    }
}

impl<T: Scalar> Add for Vec2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Vec2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Neg for Vec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<T: Scalar> Mul<T> for Vec2<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T> From<(T, T)> for Vec2<T> {
    fn from((x, y): (T, T)) -> Self {
        Self { x, y }
    }
}

/// The area form `[u, v]`, i.e. the determinant of the two vectors.
#[inline]
pub fn area_form<T: Scalar>(u: Vec2<T>, v: Vec2<T>) -> T {
    u.x * v.y - u.y * v.x
}

/// Signed shoelace area of a closed vertex list.
///
/// Self-intersecting fronts are allowed; lobes traversed clockwise
/// contribute negatively.
pub fn signed_area<T: Scalar>(points: &[Vec2<T>]) -> Result<T> {
    if points.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "signed area needs at least 3 points, got {}",
            points.len()
        )));
    }
    Ok(cyclic_area(points))
}

pub(crate) fn cyclic_area<T: Scalar>(points: &[Vec2<T>]) -> T {
    let n = points.len();
    let twice = (0..n).fold(T::zero(), |acc, i| acc + area_form(points[i], points[(i + 1) % n]));
    twice / (T::one() + T::one())
}

/// A 2x2 matrix of determinant one, acting by `(x, y) -> (a x + b y, c x + d y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2Matrix<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Scalar> Sl2Matrix<T> {
    /// Rejects matrices with `|ad - bc - 1| > EPS_DET`.
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let excess = a * d - b * c - T::one();
        if !(excess.abs_val() <= T::tol(EPS_DET)) {
            return Err(Error::NonUnimodular(excess.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    /// `diag(s, 1/s)`.
    pub fn diagonal(s: T) -> Result<Self> {
        Self::new(s, T::zero(), T::zero(), T::one() / s)
    }

    pub fn entries(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn apply(&self, v: Vec2<T>) -> Vec2<T> {
        Vec2::new(self.a * v.x + self.b * v.y, self.c * v.x + self.d * v.y)
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// The unique matrix with `e0 -> u` and `e1 -> v`, when `[u, v] = 1`.
    pub fn from_columns(u: Vec2<T>, v: Vec2<T>) -> Result<Self> {
        Self::new(u.x, v.x, u.y, v.y)
    }
}

impl<T: Real> Sl2Matrix<T> {
    pub fn rotation(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: -s, c: s, d: c }
    }
}

/// Linear action of `SL(2, R)` on planar objects.
pub trait Sl2Action<T: Scalar>: Sized {
    fn sl2_apply(&self, m: &Sl2Matrix<T>) -> Self;
}

impl<T: Scalar> Sl2Action<T> for Vec2<T> {
    fn sl2_apply(&self, m: &Sl2Matrix<T>) -> Self {
        m.apply(*self)
    }
}

impl<T: Scalar> Sl2Action<T> for Vec<Vec2<T>> {
    fn sl2_apply(&self, m: &Sl2Matrix<T>) -> Self {
        self.iter().map(|&v| m.apply(v)).collect()
    }
}

/// Free-function form of [`Sl2Action::sl2_apply`].
pub fn sl2_apply<T: Scalar, P: Sl2Action<T>>(m: &Sl2Matrix<T>, p: &P) -> P {
    p.sl2_apply(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    #[test]
    fn area_form_examples() {
        assert_eq!(area_form(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)), 1.0);
        assert_eq!(area_form(Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0)), 0.0);
        assert_eq!(area_form(Vec2::new(2.0, 1.0), Vec2::new(1.0, 3.0)), 5.0);
    }

    #[test]
    fn shoelace_examples() {
        let sq = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)].map(Vec2::from);
        assert_eq!(signed_area(&sq).unwrap(), 1.0);
        let big = [(1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0)].map(Vec2::from);
        assert_eq!(signed_area(&big).unwrap(), 4.0);
        let eight = [(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)].map(Vec2::from);
        assert_eq!(signed_area(&eight).unwrap(), 0.0);
        assert!(signed_area(&sq[..2]).is_err());
    }

    #[test]
    fn exact_rational_area() {
        let h = Ratio::new(1i64, 2);
        let tri = [Vec2::new(Ratio::from(0), Ratio::from(0)), Vec2::new(h, Ratio::from(0)), Vec2::new(Ratio::from(0), h)];
        assert_eq!(signed_area(&tri).unwrap(), Ratio::new(1, 8));
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(Sl2Matrix::new(2.0, 0.0, 0.0, 1.0), Err(Error::NonUnimodular(_))));
        assert!(Sl2Matrix::new(2.0, 0.0, 0.0, 0.5).is_ok());
    }

    #[test]
    fn quarter_turn_permutes_square() {
        let sq: Vec<Vec2<f64>> = [(1.0, -1.0), (1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0)].map(Vec2::from).to_vec();
        let rot = sl2_apply(&Sl2Matrix::rotation(std::f64::consts::FRAC_PI_2), &sq);
        for (i, v) in rot.iter().enumerate() {
            let w = sq[(i + 1) % 4];
            assert!((*v - w).norm() < 1e-15);
        }
        assert_eq!(sl2_apply(&Sl2Matrix::identity(), &sq), sq);
    }
}
