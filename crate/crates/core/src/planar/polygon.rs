use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance::{EPS_POLY, STAR_MARGIN};

use super::{area_form, Sl2Action, Sl2Matrix, Vec2};

/// An origin-symmetric star-shaped `2n`-gon with unit consecutive
/// cross-products.
///
/// Only `V_0 .. V_{n-1}` are stored; `V_{i+n} = -V_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarPolygon<T> {
    vertices: Vec<Vec2<T>>,
}

impl<T: Scalar> StarPolygon<T> {
    /// Validates finiteness, `[V_i, V_{i+1}] = 1` within `EPS_POLY`
    /// (including `[V_{n-1}, -V_0]`) and star-shapedness.
    pub fn new(vertices: Vec<Vec2<T>>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvariantViolation(format!("a star polygon needs n >= 3, got {n}")));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvariantViolation(format!("vertex {i} is not finite")));
        }
        let poly = Self { vertices };
        let tol = T::tol(EPS_POLY);
        for i in 0..n {
            let w = area_form(poly.vertex(i as i64), poly.vertex(i as i64 + 1));
            if !((w - T::one()).abs_val() <= tol) {
                return Err(Error::InvariantViolation(format!(
                    "[V_{i}, V_{}] = {:?} differs from 1 by more than eps_poly = {EPS_POLY:e}",
                    i + 1,
                    w
                )));
            }
        }
        if let Err(why) = star_check(&poly.vertices) {
            return Err(Error::NotStarShaped(why));
        }
        Ok(poly)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// `V_0 .. V_{n-1}`.
    pub fn vertices(&self) -> &[Vec2<T>] {
        &self.vertices
    }

    /// `V_i` for any integer `i`, using `V_{i+n} = -V_i`.
    pub fn vertex(&self, i: i64) -> Vec2<T> {
        let n = self.n() as i64;
        let q = i.div_euclid(n);
        let v = self.vertices[i.rem_euclid(n) as usize];
        if q % 2 == 0 {
            v
        } else {
            -v
        }
    }

    /// All `2n` vertices in cyclic order.
    pub fn full_cycle(&self) -> Vec<Vec2<T>> {
        self.vertices.iter().copied().chain(self.vertices.iter().map(|&v| -v)).collect()
    }
}

impl<T: Scalar> Sl2Action<T> for StarPolygon<T> {
    fn sl2_apply(&self, m: &Sl2Matrix<T>) -> Self {
        // det = 1 preserves both the unit cross-products and the orientation.
        Self { vertices: self.vertices.iter().map(|&v| m.apply(v)).collect() }
    }
}

/// Whether the arguments of `V_0 .. V_{n-1}, -V_0` strictly increase
/// through a total angle of `pi`, with margin `STAR_MARGIN`.
pub fn is_star_shaped<T: Scalar>(vertices: &[Vec2<T>]) -> bool {
    star_check(vertices).is_ok()
}

fn star_check<T: Scalar>(v: &[Vec2<T>]) -> std::result::Result<(), String> {
    let n = v.len();
    if n < 2 {
        return Err("fewer than two vertices".into());
    }
    let margin = T::tol(STAR_MARGIN);
    let margin_sq = margin * margin;
    // sin(angle(u, w)) > margin, compared without square roots.
    let ahead = |u: Vec2<T>, w: Vec2<T>| {
        let c = area_form(u, w);
        c > T::zero() && c * c > margin_sq * u.norm_sq() * w.norm_sq()
    };
    for i in 0..n {
        let next = if i + 1 < n { v[i + 1] } else { -v[0] };
        if !ahead(v[i], next) {
            return Err(format!("argument does not increase from V_{i} to V_{}", i + 1));
        }
    }
    for j in 1..n {
        if !ahead(v[0], v[j]) {
            return Err(format!("V_{j} is not within the half-turn after V_0"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_family(x: f64) -> Vec<Vec2<f64>> {
        let y = 2.0 / x;
        vec![Vec2::new(1.0, 0.0), Vec2::new(x, 1.0), Vec2::new(1.0, y), Vec2::new(0.0, 1.0)]
    }

    #[test]
    fn accepts_square_family() {
        let p = StarPolygon::new(square_family(1.0)).unwrap();
        assert_eq!(p.vertex(4), Vec2::new(-1.0, 0.0));
        assert_eq!(p.vertex(-1), Vec2::new(0.0, -1.0));
        assert_eq!(p.full_cycle().len(), 8);
        assert!((crate::planar::signed_area(&p.full_cycle()).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_unit_cross_product() {
        let mut v = square_family(1.0);
        v[1] = Vec2::new(1.0, 2.0);
        assert!(matches!(StarPolygon::new(v), Err(Error::InvariantViolation(m)) if m.contains("eps_poly")));
    }

    #[test]
    fn rejects_triple_winding() {
        // Unit cross-products, but the arguments advance by 3pi/4 each and wind three half-turns.
        let r = (1.0 / (0.75 * std::f64::consts::PI).sin()).sqrt();
        let v = (0..4).map(|i| Vec2::polar(0.75 * std::f64::consts::PI * i as f64) * r).collect();
        assert!(matches!(StarPolygon::new(v), Err(Error::NotStarShaped(_))));
    }
}
