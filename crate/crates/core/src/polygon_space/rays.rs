use crate::error::{Error, Result};
use crate::planar::{area_form, StarPolygon, Vec2};
use crate::scalar::Real;

const DEGENERATE: f64 = 1e-12;

/// `n` points of the projective line, as angles
/// `theta_0 < theta_1 < ... < theta_{n-1} < theta_0 + pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayConfiguration<T> {
    angles: Vec<T>,
}

impl<T: Real> RayConfiguration<T> {
    pub fn new(angles: Vec<T>) -> Result<Self> {
        let n = angles.len();
        if n < 3 {
            return Err(Error::InvariantViolation(format!("need at least 3 rays, got {n}")));
        }
        if angles.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvariantViolation("ray angles must be finite".into()));
        }
        if let Some(i) = angles.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvariantViolation(format!("ray angles not increasing at index {}", i + 1)));
        }
        if !(angles[n - 1] - angles[0] < T::PI()) {
            return Err(Error::InvariantViolation("rays span a half-turn or more".into()));
        }
        Ok(Self { angles })
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[T] {
        &self.angles
    }

    /// Unit lifts `U_i`; `[U_i, U_j] > 0` for `i < j`.
    pub fn lifts(&self) -> Vec<Vec2<T>> {
        self.angles.iter().map(|&a| Vec2::polar(a)).collect()
    }

    /// `[U_i, U_{i+1}]` for `i < n-1`, then `[U_{n-1}, -U_0]`.
    pub fn consecutive_cross_products(&self) -> Vec<T> {
        let u = self.lifts();
        let n = u.len();
        (0..n).map(|i| if i + 1 < n { area_form(u[i], u[i + 1]) } else { area_form(u[n - 1], -u[0]) }).collect()
    }
}

/// The unique star polygon over an odd ray configuration.
///
/// Solves `t_i t_{i+1} = 1 / [U_i, U_{i+1}]` cyclically (with the closing
/// pair `[U_{n-1}, -U_0]`) for positive scalings `t_i`.
pub fn normalize<T: Real>(rays: &RayConfiguration<T>) -> Result<StarPolygon<T>> {
    let n = rays.n();
    if n % 2 == 0 {
        return Err(Error::EvenN(n));
    }
    let a = rays.consecutive_cross_products();
    check_degenerate(&a)?;
    // t_k = P_k t_0^{(-1)^k} with P_0 = 1, P_{k+1} = b_k / P_k; closing at k = n-1 (even) fixes t_0.
    let b: Vec<T> = a.iter().map(|&x| T::one() / x).collect();
    let mut p = vec![T::one(); n];
    for k in 0..n - 1 {
        p[k + 1] = b[k] / p[k];
    }
    let t0 = (b[n - 1] / p[n - 1]).sqrt();
    let scales: Vec<T> = (0..n).map(|k| if k % 2 == 0 { p[k] * t0 } else { p[k] / t0 }).collect();
    let u = rays.lifts();
    StarPolygon::new(u.iter().zip(&scales).map(|(&v, &t)| v * t).collect())
}

/// `ln(prod_{i even} [U_i, U_{i+1}] / prod_{i odd} [U_i, U_{i+1}])`.
///
/// For even `n` a star polygon over the rays exists iff this vanishes; it
/// does not depend on the lifts. The fiber over such rays is the scaling
/// `V_{2i} -> s V_{2i}`, `V_{2i+1} -> V_{2i+1} / s`, which is left to the caller
/// (see [`polygon_over_rays`]).
pub fn even_image_residual<T: Real>(rays: &RayConfiguration<T>) -> T {
    rays.consecutive_cross_products()
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, &a)| if i % 2 == 0 { acc + a.ln() } else { acc - a.ln() })
}

/// The polygon `V_i = t_i U_i` with `t_0 = scale0`, solving the scaling
/// system forward. Closes up only when the rays admit a polygon (always
/// for odd `n` with the right `scale0`; for even `n` iff
/// [`even_image_residual`] vanishes).
pub fn polygon_over_rays<T: Real>(rays: &RayConfiguration<T>, scale0: T) -> Result<StarPolygon<T>> {
    let a = rays.consecutive_cross_products();
    check_degenerate(&a)?;
    let u = rays.lifts();
    let mut t = scale0;
    let mut v = Vec::with_capacity(u.len());
    for (i, &ui) in u.iter().enumerate() {
        v.push(ui * t);
        t = T::one() / (a[i] * t);
    }
    StarPolygon::new(v)
}

/// Angles of the vertices, unwrapped to increase from `arg V_0`.
pub fn rays_of<T: Real>(p: &StarPolygon<T>) -> RayConfiguration<T> {
    let base = p.vertex(0).arg();
    let mut angles = Vec::with_capacity(p.n());
    let mut prev = base;
    for v in p.vertices() {
        let mut a = v.arg();
        while a < prev {
            a = a + T::TAU();
        }
        angles.push(a);
        prev = a;
    }
    RayConfiguration { angles }
}

fn check_degenerate<T: Real>(a: &[T]) -> Result<()> {
    if let Some(&w) = a.iter().find(|&&x| !(x > T::lit(DEGENERATE))) {
        return Err(Error::DegenerateRays(w.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon_space::{closure_residual, cross_products};
    use std::f64::consts::PI;

    #[test]
    fn regular_triangle_rays() {
        let rays = RayConfiguration::<f64>::new(vec![0.0, PI / 3.0, 2.0 * PI / 3.0]).unwrap();
        let p = normalize(&rays).unwrap();
        let t = (2.0 / 3f64.sqrt()).sqrt();
        for v in p.vertices() {
            assert!((v.norm() - t).abs() < 1e-14);
        }
        for c in cross_products(&p).values() {
            assert!((c - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn regular_pentagon_rays_give_golden_ratio() {
        let rays = RayConfiguration::<f64>::new((0..5).map(|k| k as f64 * PI / 5.0).collect()).unwrap();
        let p = normalize(&rays).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        for c in cross_products(&p).values() {
            assert!((c - golden).abs() < 1e-14);
        }
    }

    #[test]
    fn generic_pentagon_closes() {
        let rays = RayConfiguration::<f64>::new(vec![0.1, 0.5, 1.4, 2.0, 2.9]).unwrap();
        let p = normalize(&rays).unwrap();
        let r = closure_residual(&cross_products(&p));
        assert!(r.iter().all(|x| x.abs() < 1e-9), "{r:?}");
        let back = rays_of(&p);
        for (a, b) in back.angles().iter().zip(rays.angles()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn even_and_degenerate_rejected() {
        let rays = RayConfiguration::<f64>::new(vec![0.0, 0.5, 1.0, 1.5]).unwrap();
        assert_eq!(normalize(&rays), Err(Error::EvenN(4)));
        let rays = RayConfiguration::<f64>::new(vec![0.0, 1e-14, 1.0]).unwrap();
        assert!(matches!(normalize(&rays), Err(Error::DegenerateRays(_))));
        assert!(RayConfiguration::<f64>::new(vec![0.0, 2.0, 1.0]).is_err());
        assert!(RayConfiguration::<f64>::new(vec![0.0, 1.0, 3.2]).is_err());
    }

    #[test]
    fn even_fiber() {
        // regular rays satisfy the image condition; every positive scale gives a polygon
        let rays = RayConfiguration::<f64>::new((0..6).map(|k| k as f64 * PI / 6.0).collect()).unwrap();
        assert!(even_image_residual(&rays).abs() < 1e-14);
        for s in [0.5, 1.0, 3.0] {
            let p = polygon_over_rays(&rays, s).unwrap();
            assert!((p.vertex(0).norm() - s).abs() < 1e-14);
        }
        let skew = RayConfiguration::<f64>::new(vec![0.0, 0.3, 1.0, 2.0]).unwrap();
        assert!(even_image_residual(&skew).abs() > 0.1);
        assert!(polygon_over_rays(&skew, 1.0).is_err());
    }
}
