use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

use super::{area_form, cyclic_area, Sl2Action, Sl2Matrix, Vec2};

/// A strictly convex polygon with counterclockwise vertices.
///
/// The origin need not be inside.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Vec2<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Checks that every vertex not on an edge lies strictly to its left.
    pub fn new(vertices: Vec<Vec2<T>>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::NotConvex(format!("a convex polygon needs at least 3 vertices, got {n}")));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::NotConvex(format!("vertex {i} is not finite")));
        }
        for i in 0..n {
            let a = vertices[i];
            let e = vertices[(i + 1) % n] - a;
            for (j, &v) in vertices.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                if !(area_form(e, v - a) > T::zero()) {
                    return Err(Error::NotConvex(format!("vertex {j} is not strictly left of edge {i}")));
                }
            }
        }
        Ok(Self { vertices })
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    /// Edge vector from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Vec2<T> {
        let n = self.n();
        self.vertices[(i + 1) % n] - self.vertices[i % n]
    }

    /// Outer normal of edge `i`, scaled by the edge length.
    pub fn edge_normal(&self, i: usize) -> Vec2<T> {
        let e = self.edge(i);
        Vec2::new(e.y, -e.x)
    }

    /// `max_v <v, u>`.
    pub fn support(&self, u: Vec2<T>) -> T {
        let mut best = self.vertices[0].dot(u);
        for v in &self.vertices[1..] {
            let d = v.dot(u);
            if d > best {
                best = d;
            }
        }
        best
    }

    pub fn area(&self) -> T {
        cyclic_area(&self.vertices)
    }

    /// Whether `x` lies strictly inside.
    pub fn contains(&self, x: Vec2<T>) -> bool {
        (0..self.n()).all(|i| area_form(self.edge(i), x - self.vertices[i]) > T::zero())
    }

    /// Whether `-v` is a vertex for every vertex `v`, up to `tol`.
    pub fn is_centrally_symmetric(&self, tol: T) -> bool {
        let n = self.n();
        if n % 2 == 1 {
            return false;
        }
        (0..n / 2).all(|i| {
            let s = self.vertices[i] + self.vertices[i + n / 2];
            s.x.abs_val() <= tol && s.y.abs_val() <= tol
        })
    }

    /// Intersection of the half-planes `<x, u_k> <= h_k`, with the `u_k`
    /// sorted counterclockwise and consecutive ones turning by less than `pi`.
    pub fn from_half_planes(normals: &[Vec2<T>], offsets: &[T]) -> Result<Self> {
        let m = normals.len();
        if m != offsets.len() || m < 3 {
            return Err(Error::InvalidArgument("need at least 3 half-planes with matching offsets".into()));
        }
        let mut vertices = Vec::with_capacity(m);
        for k in 0..m {
            let (a, b) = (normals[k], normals[(k + 1) % m]);
            let (ha, hb) = (offsets[k], offsets[(k + 1) % m]);
            let det = area_form(a, b);
            if !(det > T::zero()) {
                return Err(Error::NotConvex(format!("normals {k} and {} are not in counterclockwise order", (k + 1) % m)));
            }
            // Cramer's rule for <x, a> = ha, <x, b> = hb.
            vertices.push(Vec2::new((ha * b.y - hb * a.y) / det, (a.x * hb - b.x * ha) / det));
        }
        Self::new(vertices)
    }
}

impl<T: Real> ConvexPolygon<T> {
    /// The regular polygon inscribed in the unit circle with a vertex at angle `phase`.
    pub fn regular(n: usize, phase: T) -> Result<Self> {
        let step = T::TAU() / T::lit(n as f64);
        Self::new((0..n).map(|k| Vec2::polar(phase + step * T::lit(k as f64))).collect())
    }

    pub fn perimeter(&self) -> T {
        (0..self.n()).fold(T::zero(), |acc, i| acc + self.edge(i).norm())
    }

    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for (i, &a) in self.vertices.iter().enumerate() {
            for &b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }
}

impl<T: Scalar> Sl2Action<T> for ConvexPolygon<T> {
    fn sl2_apply(&self, m: &Sl2Matrix<T>) -> Self {
        Self { vertices: self.vertices.iter().map(|&v| m.apply(v)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn square() -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_basics() {
        let s = square();
        assert_eq!(s.area(), 4.0);
        assert_eq!(s.support(Vec2::new(1.0, 0.0)), 1.0);
        assert!(s.contains(Vec2::zero()));
        assert!(!s.contains(Vec2::new(1.0, 0.0)));
        assert!(s.is_centrally_symmetric(0.0));
    }

    #[test]
    fn rejects_clockwise_and_pentagram() {
        let mut v = square().vertices().to_vec();
        v.reverse();
        assert!(ConvexPolygon::new(v).is_err());
        let star: Vec<_> = (0..5).map(|k| Vec2::polar(4.0 * std::f64::consts::PI * k as f64 / 5.0)).collect();
        assert!(ConvexPolygon::new(star).is_err());
    }

    #[test]
    fn half_planes_rebuild_rational_square() {
        let one = Ratio::from_integer(1i64);
        let z = Ratio::from_integer(0i64);
        let normals = [Vec2::new(one, z), Vec2::new(z, one), Vec2::new(-one, z), Vec2::new(z, -one)];
        let p = ConvexPolygon::from_half_planes(&normals, &[one; 4]).unwrap();
        assert_eq!(p.vertices()[0], Vec2::new(one, one));
        assert_eq!(p.area(), Ratio::from_integer(4));
    }
}
