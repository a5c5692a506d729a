use crate::error::{Error, Result};
use crate::planar::Vec2;
use crate::scalar::Real;
use crate::spectral;

/// Unit-speed tolerance for [`chord_average`].
pub const EPS_UNIT_SPEED: f64 = 1e-6;

/// An average together with the bound it is compared to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordAverage<T> {
    pub value: T,
    pub bound: T,
}

impl<T: Real> ChordAverage<T> {
    pub fn satisfied(&self, slack: T) -> bool {
        self.value <= self.bound + slack
    }
}

/// `(1 / 2pi) int_0^{2pi} f(|gamma(t + c) - gamma(t)|^2) dt` for a closed
/// unit-speed curve of length `2 pi`, sampled uniformly on `[0, 2 pi)`.
/// The bound is `f(4 sin^2(c / 2))`.
pub fn chord_average<T: Real>(samples: &[Vec2<T>], c: T, f: impl Fn(T) -> T) -> Result<ChordAverage<T>> {
    let tau = T::TAU();
    if !(c > T::zero() && c < tau) {
        return Err(Error::InvalidArgument(format!("chord offset {c:?} must lie in (0, 2 pi)")));
    }
    let speed = spectral::derivative_vec(samples, tau, 1)?;
    let dev = speed.iter().fold(T::zero(), |m, v| m.max((v.norm() - T::one()).abs()));
    if !(dev <= T::lit(EPS_UNIT_SPEED)) {
        return Err(Error::NotUnitSpeed(dev.to_f64().unwrap_or(f64::NAN)));
    }
    let n = samples.len();
    let h = tau / T::lit(n as f64);
    let steps = c / h;
    let shifted = if (steps - steps.round()).abs() < T::lit(1e-9) {
        let m = steps.round().to_usize().unwrap_or(0);
        (0..n).map(|j| samples[(j + m) % n]).collect()
    } else {
        spectral::shift_vec(samples, tau, c)?
    };
    let values: Vec<T> = samples.iter().zip(&shifted).map(|(&a, &b)| f((b - a).norm_sq())).collect();
    let s = (c / T::lit(2.0)).sin();
    Ok(ChordAverage { value: spectral::trapezoid(&values, tau) / tau, bound: f(T::lit(4.0) * s * s) })
}

/// `(1/n) sum_i f(|V_i V_{i+k}|^2)` for a closed `n`-gon. The bound is
/// `f(C^2 sin^2(k pi / n) / sin^2(pi / n))` with `C` the longest side.
pub fn luko_average<T: Real>(vertices: &[Vec2<T>], k: usize, f: impl Fn(T) -> T) -> Result<ChordAverage<T>> {
    let n = vertices.len();
    if n < 4 || k <= 1 || k + 1 >= n {
        return Err(Error::InvalidArgument(format!("diagonal offset k = {k} must satisfy 1 < k < n - 1 for n = {n}")));
    }
    let side = (0..n).fold(T::zero(), |m, i| m.max((vertices[(i + 1) % n] - vertices[i]).norm()));
    let total = (0..n).fold(T::zero(), |acc, i| acc + f((vertices[(i + k) % n] - vertices[i]).norm_sq()));
    let nn = T::lit(n as f64);
    let ratio = (T::PI() * T::lit(k as f64) / nn).sin() / (T::PI() / nn).sin();
    Ok(ChordAverage { value: total / nn, bound: f(side * side * ratio * ratio) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize) -> Vec<Vec2<f64>> {
        (0..n).map(|j| Vec2::polar(2.0 * PI * j as f64 / n as f64)).collect()
    }

    #[test]
    fn circle_attains_bound() {
        for c in [0.5, PI / 2.0, 2.0] {
            let r = chord_average(&circle(128), c, |x| x).unwrap();
            assert!((r.value - r.bound).abs() < 1e-12);
            let r = chord_average(&circle(128), c, f64::sqrt).unwrap();
            assert!((r.value - r.bound).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unit_speed() {
        let big: Vec<_> = circle(64).into_iter().map(|v| v * 2.0).collect();
        assert!(matches!(chord_average(&big, 1.0, |x| x), Err(Error::NotUnitSpeed(_))));
    }

    #[test]
    fn regular_polygon_attains_discrete_bound() {
        let hept = circle(7);
        for k in 2..5 {
            let r = luko_average(&hept, k, |x| x).unwrap();
            assert!((r.value - r.bound).abs() < 1e-12);
            let side = (hept[1] - hept[0]).norm();
            let expected = side * side * (k as f64 * PI / 7.0).sin().powi(2) / (PI / 7.0).sin().powi(2);
            assert!((r.bound - expected).abs() < 1e-12);
        }
    }
}
