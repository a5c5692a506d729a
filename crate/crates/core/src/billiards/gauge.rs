use std::f64::consts::PI;

use crate::duality::WaveFront;
use crate::error::{Error, Result};
use crate::planar::{ConvexPolygon, SupportBody, Vec2};
use crate::spectral;

use super::table::ConvexTable;

/// A centrally symmetric convex body used as the unit ball of a norm.
#[derive(Debug, Clone)]
pub enum UnitBall {
    Polygon(ConvexPolygon<f64>),
    Smooth(SupportBody<f64>),
}

impl UnitBall {
    pub fn new(table: ConvexTable) -> Result<Self> {
        let symmetric = match &table {
            ConvexTable::Polygon(p) => p.is_centrally_symmetric(1e-9),
            ConvexTable::Smooth(b) => {
                let n = b.len();
                let p = b.support();
                (0..n / 2).all(|j| (p[j] - p[j + n / 2]).abs() <= 1e-9 * p[j].abs().max(1.0))
            }
        };
        if !symmetric {
            return Err(Error::InvariantViolation("a unit ball must be centrally symmetric".into()));
        }
        Ok(match table {
            ConvexTable::Polygon(p) => Self::Polygon(p),
            ConvexTable::Smooth(b) => Self::Smooth(b),
        })
    }

    /// `||v||_B = inf { l > 0 : v / l in B } = max_u <v, u> / p(u)`.
    pub fn gauge(&self, v: Vec2<f64>) -> f64 {
        match self {
            Self::Polygon(q) => (0..q.n()).fold(0.0, |m, k| {
                let normal = q.edge_normal(k);
                m.max(v.dot(normal) / q.vertices()[k].dot(normal))
            }),
            Self::Smooth(b) => {
                let ratio = |t: f64| v.dot(Vec2::polar(t)) / b.support_at(t);
                let angles = b.angles();
                let (t0, best) = angles
                    .iter()
                    .zip(b.support())
                    .map(|(&t, &p)| (t, v.dot(Vec2::polar(t)) / p))
                    .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
                let h = 2.0 * PI / b.len() as f64;
                best.max(golden_max(ratio, t0 - h, t0 + h))
            }
        }
    }
}

/// Maximum of a unimodal function on `[a, b]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// Length of a closed curve in the norm with unit ball `ball`: the sum of
/// edge gauges for a polygon, `int ||curve'(t)||_B dt` for uniform samples.
pub fn minkowski_length(ball: &UnitBall, curve: &WaveFront<f64>) -> Result<f64> {
    match curve {
        WaveFront::Polygonal(v) => {
            if v.len() < 2 {
                return Err(Error::InvalidArgument("a closed polygon needs at least two vertices".into()));
            }
            Ok((0..v.len()).map(|i| ball.gauge(v[(i + 1) % v.len()] - v[i])).sum())
        }
        WaveFront::Sampled { period, points } => {
            let d = spectral::derivative_vec(points, *period, 1)?;
            let norms: Vec<f64> = d.into_iter().map(|v| ball.gauge(v)).collect();
            Ok(spectral::trapezoid(&norms, *period))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_circle_length() {
        let ball = UnitBall::new(ConvexTable::unit_circle(64).unwrap()).unwrap();
        assert!((ball.gauge(Vec2::new(3.0, -4.0)) - 5.0).abs() < 1e-12);
        let points = (0..128).map(|j| Vec2::polar(2.0 * PI * j as f64 / 128.0)).collect();
        let len = minkowski_length(&ball, &WaveFront::Sampled { period: 2.0 * PI, points }).unwrap();
        assert!((len - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn diamond_in_square_norm() {
        let ball = UnitBall::new(ConvexTable::square()).unwrap();
        let diamond = vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0), Vec2::new(0.0, -1.0)];
        assert!((minkowski_length(&ball, &WaveFront::Polygonal(diamond)).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_asymmetric_ball() {
        assert!(UnitBall::new(ConvexTable::equilateral_triangle()).is_err());
    }
}
