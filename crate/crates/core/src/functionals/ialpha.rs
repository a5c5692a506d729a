use crate::error::{Error, Result};
use crate::planar::{area_form, SampledCurve, Vec2};
use crate::scalar::Real;
use crate::spectral;

use super::DiffeoCurve;

fn check_alpha<T: Real>(alpha: T, half_period: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < half_period) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// `I(alpha) = (1/T) int_0^T [gamma(t), gamma(t + alpha)] dt` from the samples.
pub fn i_alpha<T: Real>(gamma: &SampledCurve<T>, alpha: T) -> Result<T> {
    check_alpha(alpha, gamma.half_period())?;
    let shifted = gamma.shifted(alpha)?;
    let cross: Vec<T> = gamma.samples().iter().zip(&shifted).map(|(&a, &b)| area_form(a, b)).collect();
    Ok(spectral::trapezoid(&cross, gamma.half_period()) / gamma.half_period())
}

/// `I(alpha) = (1/pi) int_0^pi sin(f(t + alpha) - f(t)) / sqrt(f'(t + alpha) f'(t)) dt`,
/// with `f` evaluated from its harmonics.
pub fn i_alpha_formula<T: Real>(d: &DiffeoCurve<T>, alpha: T) -> Result<T> {
    check_alpha(alpha, T::PI())?;
    let integrand: Vec<T> = d
        .times()
        .into_iter()
        .zip(d.f_samples().iter().zip(d.df_samples()))
        .map(|(t, (&f0, &df0))| {
            let f1 = d.value_at(t + alpha);
            let df1 = d.derivative_at(t + alpha, 1);
            (f1 - f0).sin() / (df0 * df1).sqrt()
        })
        .collect();
    Ok(spectral::trapezoid(&integrand, T::PI()) / T::PI())
}

/// Pointwise `3 [gamma', gamma_+ - gamma_-] + [gamma, gamma'_+ - gamma'_-]`
/// with `gamma_(+/-)(t) = gamma(t +/- alpha)`; it vanishes on curves
/// critical for `I(alpha)`.
pub fn criticality_residual<T: Real>(gamma: &SampledCurve<T>, alpha: T) -> Result<Vec<T>> {
    check_alpha(alpha, gamma.half_period())?;
    let d1 = gamma.derivative(1)?;
    let plus = gamma.shifted(alpha)?;
    let minus = gamma.shifted(-alpha)?;
    let tangent = SampledCurve::new(gamma.half_period(), d1.clone())?;
    let d_plus = tangent.shifted(alpha)?;
    let d_minus = tangent.shifted(-alpha)?;
    let three = T::lit(3.0);
    Ok((0..gamma.len())
        .map(|j| {
            three * area_form(d1[j], plus[j] - minus[j]) + area_form(gamma.samples()[j], d_plus[j] - d_minus[j])
        })
        .collect())
}

/// `G[gamma] = int_0^T int_0^T g([gamma(t), gamma(t + alpha)], alpha) dt dalpha`.
///
/// The inner integral is a periodic trapezoid sum; the outer one is
/// Simpson's rule on the sample grid `alpha_m = m T / N`.
pub fn areal_energy<T: Real>(gamma: &SampledCurve<T>, g: impl Fn(T, T) -> T) -> Result<T> {
    if !gamma.is_wronskian_normalized() {
        return Err(Error::InvariantViolation("the areal energy needs a Wronskian-normalized curve".into()));
    }
    let n = gamma.len();
    let period = gamma.half_period();
    let h = period / T::lit(n as f64);
    let full: Vec<Vec2<T>> = gamma.full_period_samples();
    let inner = |m: usize| -> T {
        let alpha = h * T::lit(m as f64);
        let total = (0..n).fold(T::zero(), |acc, j| acc + g(area_form(full[j], full[j + m]), alpha));
        total * h
    };
    let mut sum = inner(0) + inner(n);
    for m in 1..n {
        let w = if m % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
        sum = sum + w * inner(m);
    }
    Ok(sum * h / T::lit(3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::curve_from_diffeo;
    use crate::planar::{Sl2Action, Sl2Matrix};
    use rustfft::num_complex::Complex;
    use std::f64::consts::PI;

    #[test]
    fn circle_and_ellipse_give_sine() {
        let c = SampledCurve::<f64>::unit_circle(128).unwrap();
        let e = c.sl2_apply(&Sl2Matrix::new(2.0, 1.0, 1.0, 1.0).unwrap());
        for alpha in [0.3, 1.0, PI / 3.0, 2.9] {
            assert!((i_alpha(&c, alpha).unwrap() - alpha.sin()).abs() < 1e-12);
            assert!((i_alpha(&e, alpha).unwrap() - alpha.sin()).abs() < 1e-12);
        }
        assert!(matches!(i_alpha(&c, 0.0), Err(Error::AlphaOutOfRange(_))));
        assert!(matches!(i_alpha(&c, PI), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn both_routes_agree() {
        let d = DiffeoCurve::new(vec![(2, Complex::new(0.04, 0.01)), (4, Complex::new(0.0, 0.05))], 512).unwrap();
        let c = curve_from_diffeo(&d).unwrap();
        for alpha in [0.2, 0.7, PI / 2.0, 2.5] {
            let a = i_alpha(&c, alpha).unwrap();
            let b = i_alpha_formula(&d, alpha).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} {b}");
        }
    }

    #[test]
    fn fourth_harmonic_raises_i() {
        let d = DiffeoCurve::new(vec![(4, Complex::new(0.05, 0.0))], 512).unwrap();
        let a = PI / 3.0;
        assert!(i_alpha_formula(&d, a).unwrap() > a.sin());
    }

    #[test]
    fn ellipse_is_critical() {
        let e = SampledCurve::<f64>::unit_circle(128).unwrap().sl2_apply(&Sl2Matrix::diagonal(1.7).unwrap());
        let r = criticality_residual(&e, 0.9).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-10));
        let d = DiffeoCurve::<f64>::new(vec![(4, Complex::new(0.1, 0.0))], 256).unwrap();
        let r = criticality_residual(&curve_from_diffeo(&d).unwrap(), 0.9).unwrap();
        assert!(r.iter().fold(0.0f64, |m, v| m.max(v.abs())) > 1e-3);
    }

    #[test]
    fn circle_areal_energy() {
        let c = SampledCurve::<f64>::unit_circle(256).unwrap();
        assert!((areal_energy(&c, |x, _| x).unwrap() - 2.0 * PI).abs() < 1e-9);
        assert!(areal_energy(&c, |x, a: f64| x - a.sin()).unwrap().abs() < 1e-12);
    }
}
