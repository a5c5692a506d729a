use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spectral;
use crate::tolerance::EPS_WRON;

use super::{area_form, Sl2Action, Sl2Matrix, Vec2};

/// A centrally symmetric closed curve sampled on a half period.
///
/// Samples sit at `t_j = j T / N` for `j = 0 .. N-1`, and
/// `gamma(t + T) = -gamma(t)` extends them to the full period `2T`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve<T> {
    half_period: T,
    samples: Vec<Vec2<T>>,
    wronskian_normalized: bool,
}

impl<T: Real> SampledCurve<T> {
    pub fn new(half_period: T, samples: Vec<Vec2<T>>) -> Result<Self> {
        spectral::check_grid(samples.len())?;
        if !(half_period > T::zero()) || !half_period.is_finite() {
            return Err(Error::InvariantViolation(format!("half period {half_period:?} must be positive")));
        }
        if let Some(j) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvariantViolation(format!("sample {j} is not finite")));
        }
        Ok(Self { half_period, samples, wronskian_normalized: false })
    }

    /// Builds the curve and checks `[gamma, gamma'] = 1` at every sample within `EPS_WRON`.
    pub fn wronskian_normalized(half_period: T, samples: Vec<Vec2<T>>) -> Result<Self> {
        let mut curve = Self::new(half_period, samples)?;
        let dev = curve
            .wronskian()?
            .into_iter()
            .fold(T::zero(), |m, w| m.max((w - T::one()).abs()));
        if !(dev <= T::tol(EPS_WRON)) {
            return Err(Error::InvariantViolation(format!(
                "max |[gamma, gamma'] - 1| = {dev:?} exceeds eps_wron = {EPS_WRON:e}"
            )));
        }
        curve.wronskian_normalized = true;
        Ok(curve)
    }

    /// For curves whose unit Wronskian holds analytically by construction.
    pub(crate) fn normalized_by_construction(half_period: T, samples: Vec<Vec2<T>>) -> Result<Self> {
        let mut curve = Self::new(half_period, samples)?;
        curve.wronskian_normalized = true;
        Ok(curve)
    }

    /// Samples `f` on the half-period grid.
    pub fn from_fn(half_period: T, n: usize, f: impl Fn(T) -> Vec2<T>) -> Result<Self> {
        let h = half_period / T::lit(n as f64);
        Self::new(half_period, (0..n).map(|j| f(h * T::lit(j as f64))).collect())
    }

    /// The unit circle `(cos t, sin t)` on `[0, pi)`, which is Wronskian-normalized.
    pub fn unit_circle(n: usize) -> Result<Self> {
        let c = Self::from_fn(T::PI(), n, Vec2::polar)?;
        Self::wronskian_normalized(T::PI(), c.samples)
    }

    pub fn half_period(&self) -> T {
        self.half_period
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Vec2<T>] {
        &self.samples
    }

    pub fn is_wronskian_normalized(&self) -> bool {
        self.wronskian_normalized
    }

    pub fn step(&self) -> T {
        self.half_period / T::lit(self.len() as f64)
    }

    pub fn times(&self) -> Vec<T> {
        let h = self.step();
        (0..self.len()).map(|j| h * T::lit(j as f64)).collect()
    }

    /// The `2N` samples over the full period.
    pub fn full_period_samples(&self) -> Vec<Vec2<T>> {
        self.samples.iter().copied().chain(self.samples.iter().map(|&v| -v)).collect()
    }

    pub fn derivative(&self, order: u32) -> Result<Vec<Vec2<T>>> {
        spectral::antiperiodic_derivative_vec(&self.samples, self.half_period, order)
    }

    /// `[gamma(t_j), gamma'(t_j)]`.
    pub fn wronskian(&self) -> Result<Vec<T>> {
        let d = self.derivative(1)?;
        Ok(self.samples.iter().zip(&d).map(|(&g, &dg)| area_form(g, dg)).collect())
    }

    /// Samples of `gamma(t_j + delta)`.
    ///
    /// Shifts commensurate with the grid are exact index shifts; others go
    /// through the trigonometric interpolant.
    pub fn shifted(&self, delta: T) -> Result<Vec<Vec2<T>>> {
        shift_antiperiodic(&self.samples, self.half_period, delta)
    }
}

/// Grid-snapping shift for antiperiodic sample lists.
pub(crate) fn shift_antiperiodic<T: Real>(samples: &[Vec2<T>], half_period: T, delta: T) -> Result<Vec<Vec2<T>>> {
    let n = samples.len();
    let h = half_period / T::lit(n as f64);
    let steps = delta / h;
    let m = steps.round();
    if (steps - m).abs() < T::lit(1e-9) {
        let m = m.to_i64().unwrap_or(0);
        return Ok((0..n as i64)
            .map(|j| {
                let idx = j + m;
                let v = samples[idx.rem_euclid(n as i64) as usize];
                if idx.div_euclid(n as i64) % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .collect());
    }
    spectral::antiperiodic_shift_vec(samples, half_period, delta)
}

impl<T: Real> Sl2Action<T> for SampledCurve<T> {
    fn sl2_apply(&self, m: &Sl2Matrix<T>) -> Self {
        Self {
            half_period: self.half_period,
            samples: self.samples.iter().map(|&v| m.apply(v)).collect(),
            wronskian_normalized: self.wronskian_normalized,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_circle_is_normalized() {
        let c = SampledCurve::<f64>::unit_circle(64).unwrap();
        assert!(c.is_wronskian_normalized());
        assert_eq!(c.full_period_samples()[64], Vec2::new(-1.0, -0.0));
    }

    #[test]
    fn scaled_ellipse_keeps_unit_wronskian() {
        let c = SampledCurve::<f64>::unit_circle(128).unwrap();
        let e = c.sl2_apply(&Sl2Matrix::diagonal(2.0).unwrap());
        let dev = e.wronskian().unwrap().iter().map(|w| (w - 1.0).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-12);
        assert!(SampledCurve::wronskian_normalized(PI, e.samples().to_vec()).is_ok());
    }

    #[test]
    fn rejects_non_unit_wronskian() {
        let c = SampledCurve::from_fn(PI, 64, |t| Vec2::polar(t) * 2.0).unwrap();
        assert!(SampledCurve::wronskian_normalized(PI, c.samples().to_vec()).is_err());
    }

    #[test]
    fn grid_shift_wraps_with_sign() {
        let c = SampledCurve::<f64>::unit_circle(16).unwrap();
        let s = c.shifted(PI * 3.0 / 16.0).unwrap();
        for (j, v) in s.iter().enumerate() {
            let t = PI * (j + 3) as f64 / 16.0;
            assert!((*v - Vec2::polar(t)).norm() < 1e-14);
        }
        let off = c.shifted(0.1).unwrap();
        assert!((off[0] - Vec2::polar(0.1)).norm() < 1e-13);
    }
}
