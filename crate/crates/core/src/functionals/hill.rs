use crate::error::{Error, Result};
use crate::planar::{area_form, SampledCurve};
use crate::scalar::Real;
use crate::spectral;

use super::DiffeoCurve;

/// Samples of a periodic potential `k` of Hill's equation `x'' + k x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HillPotential<T> {
    period: T,
    samples: Vec<T>,
}

impl<T: Real> HillPotential<T> {
    pub fn new(period: T, samples: Vec<T>) -> Result<Self> {
        spectral::check_grid(samples.len())?;
        if let Some(j) = samples.iter().position(|k| !k.is_finite()) {
            return Err(Error::InvariantViolation(format!("potential sample {j} is not finite")));
        }
        Ok(Self { period, samples })
    }

    pub fn period(&self) -> T {
        self.period
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    /// `int_0^T k dt`.
    pub fn integral(&self) -> T {
        spectral::trapezoid(&self.samples, self.period)
    }

    /// The Lyapunov integral `T int_0^T k dt`.
    pub fn lyapunov(&self) -> T {
        self.period * self.integral()
    }
}

/// `k = [gamma', gamma'']` with spectral derivatives; the curve solves
/// `gamma'' + k gamma = 0` because its Wronskian is one.
pub fn hill_potential<T: Real>(gamma: &SampledCurve<T>) -> Result<HillPotential<T>> {
    if !gamma.is_wronskian_normalized() {
        return Err(Error::InvariantViolation("the Hill potential needs a Wronskian-normalized curve".into()));
    }
    let d1 = gamma.derivative(1)?;
    let d2 = gamma.derivative(2)?;
    HillPotential::new(gamma.half_period(), d1.iter().zip(&d2).map(|(&a, &b)| area_form(a, b)).collect())
}

/// `k = f'^2 + S(f) / 2` evaluated from the harmonics of `f`.
pub fn hill_potential_of_diffeo<T: Real>(d: &DiffeoCurve<T>) -> Result<HillPotential<T>> {
    let half = T::lit(0.5);
    let k = d
        .times()
        .into_iter()
        .map(|t| {
            let df = d.derivative_at(t, 1);
            df * df + half * d.schwarzian_at(t)
        })
        .collect();
    HillPotential::new(T::PI(), k)
}

/// `T int_0^T k dt`, at most `pi^2` with equality exactly for constant `k`.
pub fn petty_product<T: Real>(gamma: &SampledCurve<T>) -> Result<T> {
    Ok(hill_potential(gamma)?.lyapunov())
}

/// Schwarzian derivative of a lift with `f(t + P) = f(t) + P`, sampled
/// uniformly on one period `P`.
pub fn schwarzian<T: Real>(f_samples: &[T], period: T) -> Result<Vec<T>> {
    spectral::check_grid(f_samples.len())?;
    let n = f_samples.len();
    let h = period / T::lit(n as f64);
    let periodic: Vec<T> = f_samples.iter().enumerate().map(|(j, &f)| f - h * T::lit(j as f64)).collect();
    let d1 = spectral::derivative(&periodic, period, 1)?;
    let d2 = spectral::derivative(&periodic, period, 2)?;
    let d3 = spectral::derivative(&periodic, period, 3)?;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let df = T::one() + d1[j];
        if !(df > T::zero()) {
            return Err(Error::NotADiffeo(df.to_f64().unwrap_or(f64::NAN)));
        }
        let r = d2[j] / df;
        out.push(d3[j] / df - T::lit(1.5) * r * r);
    }
    Ok(out)
}

/// `int_0^{2 pi} S(F) dt` for the circle map `F = e^{i phi}`, using
/// `S(F) = phi'^2 / 2 + S(phi)`. Samples cover `[0, 2 pi)` and
/// `phi(t + 2 pi) = phi(t) + 2 pi`.
pub fn average_schwarzian_circle<T: Real>(phi: &[T]) -> Result<T> {
    let tau = T::TAU();
    let s = schwarzian(phi, tau)?;
    let n = phi.len();
    let h = tau / T::lit(n as f64);
    let periodic: Vec<T> = phi.iter().enumerate().map(|(j, &p)| p - h * T::lit(j as f64)).collect();
    let d1 = spectral::derivative(&periodic, tau, 1)?;
    let half = T::lit(0.5);
    let integrand: Vec<T> = s.iter().zip(&d1).map(|(&s, &d)| half * (T::one() + d) * (T::one() + d) + s).collect();
    Ok(spectral::trapezoid(&integrand, tau))
}

/// Average Schwarzian of the circle map obtained by doubling `f`:
/// `phi(s) = 2 f(s / 2)` on `[0, 2 pi)`, which equals `int_0^pi k dt` for the
/// curve of `f`.
pub fn average_schwarzian<T: Real>(d: &DiffeoCurve<T>) -> Result<T> {
    let n = 2 * d.grid();
    let h = T::TAU() / T::lit(n as f64);
    let two = T::lit(2.0);
    let phi: Vec<T> = (0..n).map(|j| two * d.value_at(h * T::lit(j as f64) / two)).collect();
    average_schwarzian_circle(&phi)
}
