//! Spectral calculus for uniformly sampled periodic data.
//!
//! Everything works on the trigonometric interpolant of the samples, so
//! derivatives, shifts and trapezoid sums are exact for band-limited data
//! and spectrally accurate for analytic data.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::planar::Vec2;
use crate::scalar::Real;

pub const MAX_ORDER: u32 = 4;

pub fn check_grid(n: usize) -> Result<()> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(())
}

fn forward<T: Real>(samples: &[T]) -> Vec<Complex<T>> {
    let mut buf: Vec<Complex<T>> = samples.iter().map(|&x| Complex::new(x, T::zero())).collect();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    buf
}

fn inverse_real<T: Real>(mut spec: Vec<Complex<T>>) -> Vec<T> {
    let n = spec.len();
    FftPlanner::new().plan_fft_inverse(n).process(&mut spec);
    let scale = T::one() / T::lit(n as f64);
    spec.into_iter().map(|z| z.re * scale).collect()
}

/// Signed wavenumber of FFT bin `j`.
fn wavenumber(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// `(i k w)^order` as a complex number.
fn ik_pow<T: Real>(kw: T, order: u32) -> Complex<T> {
    let mag = kw.powi(order as i32);
    match order % 4 {
        0 => Complex::new(mag, T::zero()),
        1 => Complex::new(T::zero(), mag),
        2 => Complex::new(-mag, T::zero()),
        _ => Complex::new(T::zero(), -mag),
    }
}

/// Derivative of the given order of the trigonometric interpolant, at the grid.
pub fn derivative<T: Real>(samples: &[T], period: T, order: u32) -> Result<Vec<T>> {
    check_grid(samples.len())?;
    if order == 0 || order > MAX_ORDER {
        return Err(Error::UnsupportedOrder(order));
    }
    let n = samples.len();
    let omega = T::TAU() / period;
    let mut spec = forward(samples);
    for (j, z) in spec.iter_mut().enumerate() {
        let k = wavenumber(j, n);
        if 2 * k.unsigned_abs() as usize == n && order % 2 == 1 {
            *z = Complex::new(T::zero(), T::zero());
        } else {
            *z = *z * ik_pow(T::lit(k as f64) * omega, order);
        }
    }
    Ok(inverse_real(spec))
}

pub fn derivative_vec<T: Real>(samples: &[Vec2<T>], period: T, order: u32) -> Result<Vec<Vec2<T>>> {
    let (xs, ys) = split(samples);
    let dx = derivative(&xs, period, order)?;
    let dy = derivative(&ys, period, order)?;
    Ok(join(&dx, &dy))
}

/// Derivative of data with `u(t + T) = -u(t)`, given on `[0, T)`.
pub fn antiperiodic_derivative<T: Real>(samples: &[T], half_period: T, order: u32) -> Result<Vec<T>> {
    let full = antiperiodic_extend(samples);
    let mut d = derivative(&full, half_period + half_period, order)?;
    d.truncate(samples.len());
    Ok(d)
}

pub fn antiperiodic_derivative_vec<T: Real>(
    samples: &[Vec2<T>],
    half_period: T,
    order: u32,
) -> Result<Vec<Vec2<T>>> {
    let (xs, ys) = split(samples);
    let dx = antiperiodic_derivative(&xs, half_period, order)?;
    let dy = antiperiodic_derivative(&ys, half_period, order)?;
    Ok(join(&dx, &dy))
}

/// Values of the interpolant at `t_j + delta`.
pub fn shift<T: Real>(samples: &[T], period: T, delta: T) -> Result<Vec<T>> {
    check_grid(samples.len())?;
    let n = samples.len();
    let phase = T::TAU() * delta / period;
    let mut spec = forward(samples);
    for (j, z) in spec.iter_mut().enumerate() {
        let k = wavenumber(j, n);
        let theta = T::lit(k as f64) * phase;
        if 2 * k.unsigned_abs() as usize == n {
            // the Nyquist mode is a pure cosine
            *z = *z * theta.cos();
        } else {
            *z = *z * Complex::new(theta.cos(), theta.sin());
        }
    }
    Ok(inverse_real(spec))
}

pub fn antiperiodic_shift<T: Real>(samples: &[T], half_period: T, delta: T) -> Result<Vec<T>> {
    let full = antiperiodic_extend(samples);
    let mut s = shift(&full, half_period + half_period, delta)?;
    s.truncate(samples.len());
    Ok(s)
}

pub fn antiperiodic_shift_vec<T: Real>(samples: &[Vec2<T>], half_period: T, delta: T) -> Result<Vec<Vec2<T>>> {
    let (xs, ys) = split(samples);
    Ok(join(&antiperiodic_shift(&xs, half_period, delta)?, &antiperiodic_shift(&ys, half_period, delta)?))
}

pub fn shift_vec<T: Real>(samples: &[Vec2<T>], period: T, delta: T) -> Result<Vec<Vec2<T>>> {
    let (xs, ys) = split(samples);
    Ok(join(&shift(&xs, period, delta)?, &shift(&ys, period, delta)?))
}

/// Trapezoid rule over one period; spectrally accurate for periodic integrands.
pub fn trapezoid<T: Real>(samples: &[T], period: T) -> T {
    let sum = samples.iter().fold(T::zero(), |a, &b| a + b);
    sum * period / T::lit(samples.len() as f64)
}

/// `[u_0 .. u_{N-1}, -u_0 .. -u_{N-1}]`.
pub fn antiperiodic_extend<T: Real>(samples: &[T]) -> Vec<T> {
    samples.iter().copied().chain(samples.iter().map(|&x| -x)).collect()
}

pub(crate) fn split<T: Real>(v: &[Vec2<T>]) -> (Vec<T>, Vec<T>) {
    v.iter().map(|p| (p.x, p.y)).unzip()
}

pub(crate) fn join<T: Real>(xs: &[T], ys: &[T]) -> Vec<Vec2<T>> {
    xs.iter().zip(ys).map(|(&x, &y)| Vec2::new(x, y)).collect()
}

/// Continuous trigonometric interpolant of periodic samples.
///
/// Modes below a relative threshold of `1e-15` are dropped, so evaluating
/// a low-degree series stays cheap at arbitrary points.
#[derive(Debug, Clone)]
pub struct TrigInterpolant<T> {
    period: T,
    mean: T,
    /// `(k, c_k)` with `f(t) = mean + sum Re(c_k e^{i k w t})`.
    modes: Vec<(i64, Complex<T>)>,
}

impl<T: Real> TrigInterpolant<T> {
    pub fn new(samples: &[T], period: T) -> Result<Self> {
        check_grid(samples.len())?;
        let n = samples.len();
        let spec = forward(samples);
        let inv_n = T::one() / T::lit(n as f64);
        let two = T::lit(2.0);
        let mut modes = Vec::with_capacity(n / 2);
        for (k, z) in spec.iter().enumerate().take(n / 2 + 1).skip(1) {
            let c = if k == n / 2 { Complex::new(z.re * inv_n, T::zero()) } else { *z * (two * inv_n) };
            modes.push((k as i64, c));
        }
        let scale = modes.iter().fold(spec[0].re.abs() * inv_n, |m, (_, c)| m.max(c.norm()));
        let cutoff = scale * T::lit(1e-15);
        modes.retain(|(_, c)| c.norm() > cutoff);
        Ok(Self { period, mean: spec[0].re * inv_n, modes })
    }

    pub fn period(&self) -> T {
        self.period
    }

    pub fn eval(&self, t: T) -> T {
        self.eval_derivative(t, 0)
    }

    /// Derivative of order `order` (0 gives the value) at an arbitrary `t`.
    pub fn eval_derivative(&self, t: T, order: u32) -> T {
        let omega = T::TAU() / self.period;
        let base = if order == 0 { self.mean } else { T::zero() };
        self.modes.iter().fold(base, |acc, &(k, c)| {
            let kw = T::lit(k as f64) * omega;
            let (s, co) = (kw * t).sin_cos();
            acc + (c * ik_pow(kw, order) * Complex::new(co, s)).re
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize, period: f64) -> Vec<f64> {
        (0..n).map(|j| period * j as f64 / n as f64).collect()
    }

    #[test]
    fn sine_to_cosine() {
        let t = grid(256, 2.0 * PI);
        let s: Vec<f64> = t.iter().map(|x| x.sin()).collect();
        let d = derivative(&s, 2.0 * PI, 1).unwrap();
        let err = t.iter().zip(&d).map(|(x, v)| (x.cos() - v).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn constants_differentiate_to_zero() {
        for order in 1..=4 {
            let d = derivative(&[3.5f64; 64], 1.0, order).unwrap();
            assert!(d.iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn second_derivative_of_cos3t() {
        let t = grid(128, 2.0 * PI);
        let s: Vec<f64> = t.iter().map(|x| (3.0 * x).cos()).collect();
        let d = derivative(&s, 2.0 * PI, 2).unwrap();
        let err = t.iter().zip(&d).map(|(x, v)| (-9.0 * (3.0 * x).cos() - v).abs()).fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(derivative(&[0.0; 6], 1.0, 1), Err(Error::NotPowerOfTwo(6)));
        assert_eq!(derivative(&[0.0; 8], 1.0, 5), Err(Error::UnsupportedOrder(5)));
        assert_eq!(derivative(&[0.0; 8], 1.0, 0), Err(Error::UnsupportedOrder(0)));
    }

    #[test]
    fn spectral_convergence() {
        // exp(sin t) is entire; errors fall geometrically until roundoff.
        let mut prev = f64::INFINITY;
        for n in [8usize, 16, 32] {
            let t = grid(n, 2.0 * PI);
            let s: Vec<f64> = t.iter().map(|x: &f64| x.sin().exp()).collect();
            let d = derivative(&s, 2.0 * PI, 1).unwrap();
            let err = t.iter().zip(&d).map(|(x, v)| (x.cos() * x.sin().exp() - v).abs()).fold(0.0, f64::max);
            assert!(err < 1e-12 || err * 10.0 <= prev, "n = {n}: {err} vs {prev}");
            prev = err;
        }
    }

    #[test]
    fn antiperiodic_circle() {
        let n = 64;
        let t = grid(n, PI);
        let c: Vec<f64> = t.iter().map(|x| x.cos()).collect();
        let d = antiperiodic_derivative(&c, PI, 1).unwrap();
        let err = t.iter().zip(&d).map(|(x, v)| (x.sin() + v).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
        let sh = antiperiodic_shift(&c, PI, 0.3).unwrap();
        let err = t.iter().zip(&sh).map(|(x, v)| ((x + 0.3).cos() - v).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn interpolant_matches_analytic() {
        let t = grid(32, 2.0);
        let f = |x: f64| 1.0 + (PI * x).cos() - 0.5 * (3.0 * PI * x).sin();
        let s: Vec<f64> = t.iter().map(|&x| f(x)).collect();
        let ip = TrigInterpolant::new(&s, 2.0).unwrap();
        assert!((ip.eval(0.123) - f(0.123)).abs() < 1e-13);
        let d1 = -PI * (PI * 0.7f64).sin() - 1.5 * PI * (3.0 * PI * 0.7f64).cos();
        assert!((ip.eval_derivative(0.7, 1) - d1).abs() < 1e-12);
        assert!((trapezoid(&s, 2.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn works_in_single_precision() {
        let t: Vec<f32> = (0..64).map(|j| j as f32 * std::f32::consts::TAU / 64.0).collect();
        let s: Vec<f32> = t.iter().map(|x| x.sin()).collect();
        let d = derivative(&s, std::f32::consts::TAU, 1).unwrap();
        let err = t.iter().zip(&d).map(|(x, v)| (x.cos() - v).abs()).fold(0.0, f32::max);
        assert!(err < 1e-5);
    }
}
