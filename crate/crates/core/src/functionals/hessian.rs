use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance::DEFAULT_GRID;

use super::{i_alpha_formula, DiffeoCurve};

/// One Fourier mode of the second variation of `I(alpha)` at the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianMode<T> {
    pub n: u32,
    pub alpha: T,
    pub value: T,
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha > T::zero() && alpha < T::PI()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// `f_n(alpha) = (3n^2 - 4) sin a + (n^2 + 4) sin a cos na - 4n cos a sin na`.
pub fn f_n_alpha<T: Real>(n: u32, alpha: T) -> T {
    let nn = T::lit(n as f64);
    let n2 = nn * nn;
    let four = T::lit(4.0);
    let (s, c) = alpha.sin_cos();
    let (sn, cn) = (nn * alpha).sin_cos();
    (T::lit(3.0) * n2 - four) * s + (n2 + four) * s * cn - four * nn * c * sn
}

pub fn hessian_mode_closed<T: Real>(n: u32, alpha: T) -> Result<HessianMode<T>> {
    if n % 2 != 0 {
        return Err(Error::OddHarmonic(n as i64));
    }
    check_alpha(alpha)?;
    Ok(HessianMode { n, alpha, value: f_n_alpha(n, alpha) })
}

/// `(I_{+eps}(alpha) + I_{-eps}(alpha) - 2 sin alpha) / eps^2` for the
/// perturbation `g = +/- eps cos nt` of the circle.
pub fn hessian_mode_numeric<T: Real>(n: u32, alpha: T, eps: T) -> Result<T> {
    if n % 2 != 0 {
        return Err(Error::OddHarmonic(n as i64));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("the numeric Hessian needs n >= 2".into()));
    }
    if !(eps >= T::lit(1e-4) && eps <= T::lit(1e-2)) {
        return Err(Error::InvalidArgument(format!("eps = {eps:?} must lie in [1e-4, 1e-2]")));
    }
    check_alpha(alpha)?;
    let half = T::lit(0.5);
    let side = |s: T| -> Result<T> {
        // cos nt = (e^{int} + e^{-int}) / 2, so z_n = s / 2
        let d = DiffeoCurve::new(vec![(n as i64, Complex::new(s * half, T::zero()))], DEFAULT_GRID)?;
        i_alpha_formula(&d, alpha)
    };
    let plus = side(eps)?;
    let minus = side(-eps)?;
    Ok((plus + minus - T::lit(2.0) * alpha.sin()) / (eps * eps))
}

/// Positivity data for one even `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityRow {
    pub n: u32,
    pub min_value: f64,
    pub argmin: f64,
    /// `sqrt((n^2 - 4) / 2) / cot(pi / 2n)`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityReport {
    pub rows: Vec<PositivityRow>,
}

impl PositivityReport {
    pub fn all_positive(&self) -> bool {
        self.rows.iter().all(|r| r.min_value > 0.0)
    }

    pub fn ratios_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].ratio > w[0].ratio)
    }
}

/// The ratio whose exceeding one makes `|cot alpha| < sqrt((n^2-4)/2)` cover
/// the whole range away from the endpoints.
pub fn cot_ratio(n: u32) -> f64 {
    let nn = n as f64;
    ((nn * nn - 4.0) / 2.0).sqrt() * (std::f64::consts::PI / (2.0 * nn)).tan()
}

/// Evaluates `f_n` at `alpha_k = k pi / (grid + 1)`, `k = 1 .. grid`, for every
/// even `4 <= n <= n_max`.
pub fn positivity_scan(n_max: u32, grid: usize) -> Result<PositivityReport> {
    if !(4..=256).contains(&n_max) {
        return Err(Error::InvalidArgument(format!("n_max = {n_max} must lie in [4, 256]")));
    }
    if grid == 0 {
        return Err(Error::InvalidArgument("the alpha grid needs at least one point".into()));
    }
    let step = std::f64::consts::PI / (grid + 1) as f64;
    let rows = (4..=n_max)
        .step_by(2)
        .map(|n| {
            let (argmin, min_value) = (1..=grid)
                .map(|k| {
                    let a = step * k as f64;
                    (a, f_n_alpha(n, a))
                })
                .fold((0.0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
            PositivityRow { n, min_value, argmin, ratio: cot_ratio(n) }
        })
        .collect();
    Ok(PositivityReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_form_values() {
        assert!(f_n_alpha(0, 0.7f64).abs() < 1e-14);
        assert!(f_n_alpha(2, 0.7f64).abs() < 1e-14);
        assert!((hessian_mode_closed(4, PI / 2.0).unwrap().value - 64.0).abs() < 1e-12);
        assert!((f_n_alpha(4, PI / 4.0) - 24.0 * (PI / 4.0).sin()).abs() < 1e-12);
        assert!(matches!(hessian_mode_closed(3, 1.0f64), Err(Error::OddHarmonic(3))));
    }

    #[test]
    fn symmetric_under_reflection() {
        for n in [4, 6, 10] {
            for a in [0.1, 0.8, 1.3] {
                assert!((f_n_alpha(n, a) - f_n_alpha(n, PI - a)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn square_ratio() {
        assert!((cot_ratio(4) - 1.014611872354).abs() < 1e-9);
        let r = positivity_scan(64, 400).unwrap();
        assert!(r.all_positive());
        assert!(r.ratios_increasing());
    }

    #[test]
    fn numeric_mode_is_flat_for_ellipses() {
        assert!(hessian_mode_numeric(2, 1.1f64, 1e-3).unwrap().abs() < 1e-5);
    }
}
