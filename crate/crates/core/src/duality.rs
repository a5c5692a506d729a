//! Polar duality for star polygons and curves, wave fronts, central
//! symmetrization and the Blaschke-Santalo products.
//!
//! The plane is identified with its dual through the area form, so a dual
//! vector `w` of a point `v` with tangent `v'` satisfies `[v, w] = 1` and
//! `[v', w] = 0`.

use crate::error::{Error, Result};
use crate::functionals::hill_potential;
use crate::planar::{area_form, cyclic_area, ConvexPolygon, SampledCurve, StarPolygon, SupportBody, Vec2};
use crate::polygon_space::{cross_products, f_n};
use crate::scalar::{Real, Scalar};
use crate::spectral;

/// Smallest `|[gamma, gamma']|` accepted by [`polar_dual_curve`].
pub const SINGULAR_RADIAL: f64 = 1e-10;

/// The difference polygon `V*_i = V_{i+1} - V_i` of a star polygon.
///
/// Only `V*_0 .. V*_{n-1}` are stored; the other half is antipodal.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPolygon<T> {
    vertices: Vec<Vec2<T>>,
}

impl<T: Scalar> DualPolygon<T> {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    pub fn full_cycle(&self) -> Vec<Vec2<T>> {
        self.vertices.iter().copied().chain(self.vertices.iter().map(|&v| -v)).collect()
    }

    /// Signed shoelace area of the `2n`-gon.
    pub fn area(&self) -> T {
        cyclic_area(&self.full_cycle())
    }

    /// Largest of `|[V_i, V*_i] - 1|` and `|[V_{i+1} - V_i, V*_i]|`.
    pub fn pairing_residual(&self, p: &StarPolygon<T>) -> T {
        let mut worst = T::zero();
        for (i, &w) in self.vertices.iter().enumerate() {
            let v = p.vertex(i as i64);
            let dv = p.vertex(i as i64 + 1) - v;
            for r in [area_form(v, w) - T::one(), area_form(dv, w)] {
                let r = r.abs_val();
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    pub fn to_wave_front(&self) -> WaveFront<T> {
        WaveFront::Polygonal(self.full_cycle())
    }
}

/// A closed front that may self-intersect and carry cusps.
#[derive(Debug, Clone, PartialEq)]
pub enum WaveFront<T> {
    /// Vertices in traversal order; the last connects back to the first.
    Polygonal(Vec<Vec2<T>>),
    /// Uniform samples over one full period.
    Sampled { period: T, points: Vec<Vec2<T>> },
}

impl<T: Scalar> WaveFront<T> {
    pub fn points(&self) -> &[Vec2<T>] {
        match self {
            WaveFront::Polygonal(p) => p,
            WaveFront::Sampled { points, .. } => points,
        }
    }
}

pub fn dual_polygon<T: Scalar>(p: &StarPolygon<T>) -> DualPolygon<T> {
    let n = p.n() as i64;
    DualPolygon { vertices: (0..n).map(|i| p.vertex(i + 1) - p.vertex(i)).collect() }
}

/// `gamma* = gamma' / [gamma, gamma']` on the curve's grid, as an
/// antiperiodic curve with the same half period.
pub fn polar_dual_sampled<T: Real>(gamma: &SampledCurve<T>) -> Result<SampledCurve<T>> {
    let d = gamma.derivative(1)?;
    let mut out = Vec::with_capacity(d.len());
    for (&g, &dg) in gamma.samples().iter().zip(&d) {
        let w = area_form(g, dg);
        if !(w.abs() >= T::lit(SINGULAR_RADIAL)) {
            return Err(Error::SingularRadial(w.to_f64().unwrap_or(f64::NAN)));
        }
        out.push(dg * (T::one() / w));
    }
    SampledCurve::new(gamma.half_period(), out)
}

/// The dual front over the full period `2T`.
pub fn polar_dual_curve<T: Real>(gamma: &SampledCurve<T>) -> Result<WaveFront<T>> {
    let dual = polar_dual_sampled(gamma)?;
    Ok(WaveFront::Sampled { period: dual.half_period() * T::lit(2.0), points: dual.full_period_samples() })
}

/// `oint x dy`: shoelace for polygonal fronts, spectral quadrature for
/// sampled ones.
pub fn wavefront_area<T: Real>(front: &WaveFront<T>) -> Result<T> {
    match front {
        WaveFront::Polygonal(v) => crate::planar::signed_area(v),
        WaveFront::Sampled { period, points } => {
            let (xs, ys) = spectral::split(points);
            let dy = spectral::derivative(&ys, *period, 1)?;
            let integrand: Vec<T> = xs.iter().zip(&dy).map(|(&x, &y)| x * y).collect();
            Ok(spectral::trapezoid(&integrand, *period))
        }
    }
}

/// `A(V) A(V*)`, which equals `n (2n - F_n)`.
pub fn bs_product_polygon<T: Scalar>(p: &StarPolygon<T>) -> T {
    cyclic_area(&p.full_cycle()) * dual_polygon(p).area()
}

/// `4 n^2 sin^2(pi / 2n)`.
pub fn bs_bound_polygon(n: usize) -> f64 {
    let s = (std::f64::consts::PI / (2 * n) as f64).sin();
    4.0 * (n * n) as f64 * s * s
}

/// `2n - F_n`, the dual area predicted by the cross-products.
pub fn dual_area_from_cross_products<T: Scalar>(p: &StarPolygon<T>) -> T {
    T::lit((2 * p.n()) as f64) - f_n(&cross_products(p))
}

/// `T int_0^T k dt` for a Wronskian-normalized curve; equals `A(gamma) A(gamma*)`
/// when `k > 0`.
pub fn bs_product_curve<T: Real>(gamma: &SampledCurve<T>) -> Result<T> {
    let k = hill_potential(gamma)?;
    Ok(k.period() * k.integral())
}

/// Central symmetrization: the Minkowski half-sum of a body and its reflection.
pub trait CentralSymmetrize: Sized {
    fn central_symmetrize(&self) -> Result<Self>;
}

impl<T: Real> CentralSymmetrize for SupportBody<T> {
    /// `(p(t) + p(t + pi)) / 2` on the grid.
    fn central_symmetrize(&self) -> Result<Self> {
        let p = self.support();
        let n = p.len();
        let half = T::lit(0.5);
        SupportBody::new((0..n).map(|j| (p[j] + p[(j + n / 2) % n]) * half).collect())
    }
}

impl<T: Scalar> CentralSymmetrize for ConvexPolygon<T> {
    /// Exact half-sum: the edge normals of `P` and `-P` are the only facet
    /// directions, with support `(h(u) + h(-u)) / 2`.
    fn central_symmetrize(&self) -> Result<Self> {
        let mut normals: Vec<Vec2<T>> = (0..self.n()).map(|i| self.edge_normal(i)).collect();
        normals.extend((0..self.n()).map(|i| -self.edge_normal(i)));
        normals.sort_by(|&a, &b| angular_order(a, b));
        let mut unique: Vec<Vec2<T>> = Vec::with_capacity(normals.len());
        for u in normals {
            match unique.last() {
                Some(&last) if same_direction(last, u) => {}
                _ => unique.push(u),
            }
        }
        if unique.len() > 1 && same_direction(unique[0], *unique.last().unwrap()) {
            unique.pop();
        }
        let half = T::one() / (T::one() + T::one());
        let offsets: Vec<T> = unique.iter().map(|&u| (self.support(u) + self.support(-u)) * half).collect();
        ConvexPolygon::from_half_planes(&unique, &offsets)
    }
}

pub fn central_symmetrize<B: CentralSymmetrize>(body: &B) -> Result<B> {
    body.central_symmetrize()
}

/// Counterclockwise order of directions starting from the positive x-axis.
fn angular_order<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> std::cmp::Ordering {
    let upper = |v: Vec2<T>| v.y > T::zero() || (v.y == T::zero() && v.x > T::zero());
    match (upper(a), upper(b)) {
        (true, false) => std::cmp::Ordering::Less,
        (false, true) => std::cmp::Ordering::Greater,
        _ => {
            let c = area_form(a, b);
            if c > T::zero() {
                std::cmp::Ordering::Less
            } else if c < T::zero() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Equal
            }
        }
    }
}

fn same_direction<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> bool {
    let c = area_form(a, b);
    let tol = T::tol(1e-12);
    c * c <= tol * tol * a.norm_sq() * b.norm_sq() && a.dot(b) > T::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{Sl2Action, Sl2Matrix};
    use crate::polygon_space::{reconstruct, CrossProductSequence};
    use num_rational::Ratio;
    use std::f64::consts::PI;

    fn from_c(c: Vec<f64>) -> StarPolygon<f64> {
        let seq = CrossProductSequence::closed(c).unwrap();
        reconstruct(&seq, Vec2::new(0.0, -1.0), Vec2::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn hexagon_dual_area() {
        let p = from_c(vec![1.0; 3]);
        let d = dual_polygon(&p);
        assert!((d.area() - 3.0).abs() < 1e-12);
        assert!(d.pairing_residual(&p) < 1e-12);
        assert!((bs_product_polygon(&p) - 9.0).abs() < 1e-12);
        assert!((bs_bound_polygon(3) - 9.0).abs() < 1e-12);
    }

    #[test]
    fn square_optimum_and_strict_case() {
        let r = 2f64.sqrt();
        let p = from_c(vec![r; 4]);
        assert!((dual_polygon(&p).area() - (8.0 - 4.0 * r)).abs() < 1e-12);
        assert!((bs_product_polygon(&p) - bs_bound_polygon(4)).abs() < 1e-12);
        let q = from_c(vec![1.0, 2.0, 1.0, 2.0]);
        assert!((bs_product_polygon(&q) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn rational_dual_area_is_exact() {
        let c: Vec<Ratio<i64>> = [1, 3, 1, 2, 2].iter().map(|&k| Ratio::from_integer(k)).collect();
        let seq = CrossProductSequence::closed(c).unwrap();
        let one = Ratio::from_integer(1);
        let z = Ratio::from_integer(0);
        let p = reconstruct(&seq, Vec2::new(z, -one), Vec2::new(one, z)).unwrap();
        assert_eq!(dual_polygon(&p).area(), Ratio::from_integer(1));
        assert_eq!(dual_polygon(&p).area(), dual_area_from_cross_products(&p));
    }

    #[test]
    fn circle_front_area() {
        let c = SampledCurve::<f64>::unit_circle(64).unwrap();
        let front = polar_dual_curve(&c).unwrap();
        assert!((wavefront_area(&front).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn astroid_area() {
        let n = 256;
        let points = (0..n)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / n as f64;
                Vec2::new(t.cos().powi(3), t.sin().powi(3))
            })
            .collect();
        let a = wavefront_area(&WaveFront::Sampled { period: 2.0 * PI, points }).unwrap();
        assert!((a - 3.0 * PI / 8.0).abs() < 1e-12);
    }

    #[test]
    fn singular_radial_rejected() {
        let c = SampledCurve::from_fn(PI, 16, |t: f64| Vec2::new(t.cos(), 0.0)).unwrap();
        assert!(matches!(polar_dual_sampled(&c), Err(Error::SingularRadial(_))));
    }

    #[test]
    fn ellipse_is_self_dual_as_a_set() {
        let m = Sl2Matrix::diagonal(2.0).unwrap();
        let e = SampledCurve::<f64>::unit_circle(64).unwrap().sl2_apply(&m);
        let d = polar_dual_sampled(&e).unwrap();
        for w in d.samples() {
            assert!((w.x * w.x / 4.0 + 4.0 * w.y * w.y - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn triangle_symmetrizes_to_regular_hexagon() {
        let tri = ConvexPolygon::regular(3, PI / 2.0).unwrap();
        let hex = tri.central_symmetrize().unwrap();
        assert_eq!(hex.n(), 6);
        assert!(hex.is_centrally_symmetric(1e-12));
        let r = hex.vertices()[0].norm();
        for k in 0..6 {
            assert!((hex.vertices()[k].norm() - r).abs() < 1e-12);
            assert!((hex.edge(k).norm() - r).abs() < 1e-12);
        }
        let again = hex.central_symmetrize().unwrap();
        for (a, b) in hex.vertices().iter().zip(again.vertices()) {
            assert!((*a - *b).norm() < 1e-12);
        }
    }

    #[test]
    fn support_symmetrization_keeps_widths() {
        let b = SupportBody::<f64>::from_fn(128, |t: f64| 1.0 + 0.05 * (3.0 * t).cos() + 0.02 * (2.0 * t).sin()).unwrap();
        let s = b.central_symmetrize().unwrap();
        for (w0, w1) in b.widths().iter().zip(s.widths()) {
            assert!((w0 - w1).abs() < 1e-14);
        }
        let cw = SupportBody::<f64>::from_fn(128, |t: f64| 1.0 + 0.1 * (3.0 * t).cos()).unwrap();
        for p in cw.central_symmetrize().unwrap().support() {
            assert!((p - 1.0).abs() < 1e-14);
        }
    }
}
