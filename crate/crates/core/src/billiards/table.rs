use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::planar::{area_form, ConvexPolygon, SupportBody, Vec2};

/// Minimum distance from the table for a point to count as exterior.
pub const EXTERIOR_MARGIN: f64 = 1e-9;
/// Target for the smooth tangency residual.
pub const TANGENCY_TOL: f64 = 1e-12;

/// A convex outer-billiard table, oriented counterclockwise.
#[derive(Debug, Clone)]
pub enum ConvexTable {
    Polygon(ConvexPolygon<f64>),
    Smooth(SupportBody<f64>),
}

impl ConvexTable {
    pub fn unit_circle(grid: usize) -> Result<Self> {
        Ok(Self::Smooth(SupportBody::circle(grid, 1.0)?))
    }

    /// The square with vertices `(+/-1, +/-1)`.
    pub fn square() -> Self {
        let v = vec![Vec2::new(1.0, -1.0), Vec2::new(1.0, 1.0), Vec2::new(-1.0, 1.0), Vec2::new(-1.0, -1.0)];
        Self::Polygon(ConvexPolygon::new(v).expect("the square is convex"))
    }

    /// Equilateral triangle inscribed in the unit circle, apex up.
    pub fn equilateral_triangle() -> Self {
        Self::Polygon(ConvexPolygon::regular(3, PI / 2.0).expect("regular polygons are convex"))
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Self::Polygon(p) => p.diameter(),
            Self::Smooth(b) => b.widths().into_iter().fold(0.0, f64::max),
        }
    }

    /// `max_v <v, u>` over the table.
    pub fn support(&self, u: Vec2<f64>) -> f64 {
        match self {
            Self::Polygon(p) => p.support(u),
            Self::Smooth(b) => u.norm() * b.support_at(u.arg()),
        }
    }

    /// Lower bound on the distance from `x` to the table, zero inside.
    pub fn exterior_distance(&self, x: Vec2<f64>) -> f64 {
        match self {
            Self::Polygon(p) => {
                if p.contains(x) {
                    return 0.0;
                }
                (0..p.n()).fold(f64::INFINITY, |m, i| m.min(segment_distance(x, p.vertices()[i], p.vertices()[(i + 1) % p.n()])))
            }
            // distance to a convex body is max_u (<x, u> - p(u)) when positive
            Self::Smooth(b) => b
                .angles()
                .into_iter()
                .zip(b.support())
                .fold(0.0, |m, (t, &p)| m.max(x.dot(Vec2::polar(t)) - p)),
        }
    }
}

fn segment_distance(x: Vec2<f64>, a: Vec2<f64>, b: Vec2<f64>) -> f64 {
    let e = b - a;
    let s = ((x - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
    (x - (a + e * s)).norm()
}

/// Tangency point and image of one outer-billiard step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub tangency: Vec2<f64>,
    pub image: Vec2<f64>,
    /// Outer-normal angle of the tangency point (smooth tables only).
    pub normal_angle: Option<f64>,
}

/// `F(x) = 2P - x`, where `P` is the tangency point of the support line
/// through `x` along which the table lies to the left when looking from `x`
/// towards `P`.
pub fn outer_billiard_step(table: &ConvexTable, x: Vec2<f64>) -> Result<Vec2<f64>> {
    Ok(outer_billiard_step_detailed(table, x)?.image)
}

pub fn outer_billiard_step_detailed(table: &ConvexTable, x: Vec2<f64>) -> Result<Step> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument("point is not finite".into()));
    }
    let polygon_inside = matches!(table, ConvexTable::Polygon(p) if p.contains(x));
    if polygon_inside || !(table.exterior_distance(x) > EXTERIOR_MARGIN) {
        return Err(Error::InteriorPoint);
    }
    match table {
        ConvexTable::Polygon(p) => polygon_step(p, x),
        ConvexTable::Smooth(b) => smooth_step(b, x),
    }
}

fn polygon_step(p: &ConvexPolygon<f64>, x: Vec2<f64>) -> Result<Step> {
    let v = p.vertices();
    'candidates: for (i, &cand) in v.iter().enumerate() {
        let d = cand - x;
        let mut tie = false;
        for (j, &other) in v.iter().enumerate() {
            if j == i {
                continue;
            }
            let w = other - x;
            let c = area_form(d, w);
            if c.abs() <= 1e-12 * d.norm() * w.norm() {
                tie = true;
            } else if c < 0.0 {
                continue 'candidates;
            }
        }
        if tie {
            return Err(Error::UndefinedOnSingularSet);
        }
        return Ok(Step { tangency: cand, image: cand * 2.0 - x, normal_angle: None });
    }
    Err(Error::UndefinedOnSingularSet)
}

/// `h(t) = <x, u(t)> - p(t)`; it vanishes where the support line at normal
/// `u(t)` passes through `x`.
fn tangency_function(b: &SupportBody<f64>, x: Vec2<f64>, t: f64) -> f64 {
    x.dot(Vec2::polar(t)) - b.support_at(t)
}

fn smooth_step(b: &SupportBody<f64>, x: Vec2<f64>) -> Result<Step> {
    let mut scan = 64;
    loop {
        let h = 2.0 * PI / scan as f64;
        let values: Vec<f64> = (0..scan).map(|j| tangency_function(b, x, h * j as f64)).collect();
        for j in 0..scan {
            let (a, c) = (values[j], values[(j + 1) % scan]);
            if !(a >= 0.0 && c < 0.0 || a < 0.0 && c >= 0.0) {
                continue;
            }
            let t = bisect(|t| tangency_function(b, x, t), h * j as f64, h * (j + 1) as f64, a);
            let point = b.boundary_point(t);
            let u = Vec2::polar(t);
            // x - P must point against the counterclockwise tangent u_perp
            if (x - point).dot(u.perp()) < 0.0 {
                return Ok(Step { tangency: point, image: point * 2.0 - x, normal_angle: Some(t) });
            }
        }
        if scan >= 1 << 16 {
            return Err(Error::InteriorPoint);
        }
        scan *= 4;
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_positive = f_lo >= 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v.abs() < TANGENCY_TOL || hi - lo < 1e-15 {
            return mid;
        }
        if (v >= 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `|[gamma'(t), x - gamma(t)]|` at the tangency used for `x`.
pub fn tangency_residual(table: &ConvexTable, x: Vec2<f64>) -> Result<f64> {
    let step = outer_billiard_step_detailed(table, x)?;
    Ok(match (table, step.normal_angle) {
        (ConvexTable::Smooth(b), Some(t)) => {
            let tangent = Vec2::polar(t).perp() * (b.support_at(t) + b.support_derivative_at(t, 2));
            area_form(tangent, x - step.tangency).abs()
        }
        _ => 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_step() {
        let c = ConvexTable::unit_circle(64).unwrap();
        let y = outer_billiard_step(&c, Vec2::new(2.0, 0.0)).unwrap();
        assert!((y - Vec2::new(-1.0, 3f64.sqrt())).norm() < 1e-11);
        let x = Vec2::new(-1.3, 2.2);
        assert!((outer_billiard_step(&c, x).unwrap().norm() - x.norm()).abs() < 1e-11);
        assert!(tangency_residual(&c, x).unwrap() < 1e-9);
    }

    #[test]
    fn square_step() {
        let y = outer_billiard_step(&ConvexTable::square(), Vec2::new(3.0, 0.0)).unwrap();
        assert_eq!(y, Vec2::new(-1.0, 2.0));
    }

    #[test]
    fn singular_and_interior_points() {
        let s = ConvexTable::square();
        assert!(matches!(outer_billiard_step(&s, Vec2::new(3.0, 1.0)), Err(Error::UndefinedOnSingularSet)));
        assert!(matches!(outer_billiard_step(&s, Vec2::new(0.2, 0.1)), Err(Error::InteriorPoint)));
        assert!(matches!(outer_billiard_step(&s, Vec2::new(1.0, 0.0)), Err(Error::InteriorPoint)));
        let c = ConvexTable::unit_circle(64).unwrap();
        assert!(matches!(outer_billiard_step(&c, Vec2::new(0.5, 0.0)), Err(Error::InteriorPoint)));
    }
}
