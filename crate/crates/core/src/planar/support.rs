use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral::{self, TrigInterpolant};

use super::Vec2;

/// A smooth strictly convex body given by its support function `p` on a
/// uniform grid `t_j = 2 pi j / N`.
///
/// The boundary point with outer normal `u(t) = (cos t, sin t)` is
/// `p u + p' u_perp`, and the boundary runs counterclockwise in `t`.
#[derive(Debug, Clone)]
pub struct SupportBody<T> {
    support: Vec<T>,
    interp: TrigInterpolant<T>,
}

impl<T: Real> SupportBody<T> {
    /// Checks `p > 0` (origin inside) and `p + p'' > 0` (strict convexity).
    pub fn new(support: Vec<T>) -> Result<Self> {
        spectral::check_grid(support.len())?;
        if let Some(j) = support.iter().position(|p| !p.is_finite() || !(*p > T::zero())) {
            return Err(Error::InvariantViolation(format!("support value {j} must be finite and positive")));
        }
        let curvature_radius = radius_of_curvature(&support)?;
        if let Some(j) = curvature_radius.iter().position(|r| !(*r > T::zero())) {
            return Err(Error::NotConvex(format!("p + p'' <= 0 at sample {j}")));
        }
        let interp = TrigInterpolant::new(&support, T::TAU())?;
        Ok(Self { support, interp })
    }

    pub fn from_fn(n: usize, p: impl Fn(T) -> T) -> Result<Self> {
        let h = T::TAU() / T::lit(n as f64);
        Self::new((0..n).map(|j| p(h * T::lit(j as f64))).collect())
    }

    pub fn circle(n: usize, radius: T) -> Result<Self> {
        Self::new(vec![radius; n])
    }

    pub fn support(&self) -> &[T] {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn angles(&self) -> Vec<T> {
        let h = T::TAU() / T::lit(self.len() as f64);
        (0..self.len()).map(|j| h * T::lit(j as f64)).collect()
    }

    /// Support function at an arbitrary angle.
    pub fn support_at(&self, t: T) -> T {
        self.interp.eval(t)
    }

    pub fn support_derivative_at(&self, t: T, order: u32) -> T {
        self.interp.eval_derivative(t, order)
    }

    /// Boundary point with outer normal at angle `t`.
    pub fn boundary_point(&self, t: T) -> Vec2<T> {
        let u = Vec2::polar(t);
        u * self.support_at(t) + u.perp() * self.support_derivative_at(t, 1)
    }

    pub fn boundary_samples(&self) -> Result<Vec<Vec2<T>>> {
        let dp = spectral::derivative(&self.support, T::TAU(), 1)?;
        Ok(self
            .angles()
            .into_iter()
            .zip(self.support.iter().zip(&dp))
            .map(|(t, (&p, &q))| {
                let u = Vec2::polar(t);
                u * p + u.perp() * q
            })
            .collect())
    }

    /// `p + p''` at the grid.
    pub fn radius_of_curvature(&self) -> Result<Vec<T>> {
        radius_of_curvature(&self.support)
    }

    /// Enclosed area `(1/2) int (p^2 - p'^2) dt`.
    pub fn area(&self) -> Result<T> {
        let dp = spectral::derivative(&self.support, T::TAU(), 1)?;
        let integrand: Vec<T> = self.support.iter().zip(&dp).map(|(&p, &q)| p * p - q * q).collect();
        Ok(spectral::trapezoid(&integrand, T::TAU()) / T::lit(2.0))
    }

    /// Width `p(t) + p(t + pi)` at the grid.
    pub fn widths(&self) -> Vec<T> {
        let n = self.len();
        (0..n).map(|j| self.support[j] + self.support[(j + n / 2) % n]).collect()
    }
}

fn radius_of_curvature<T: Real>(support: &[T]) -> Result<Vec<T>> {
    let d2 = spectral::derivative(support, T::TAU(), 2)?;
    Ok(support.iter().zip(&d2).map(|(&p, &q)| p + q).collect())
}
