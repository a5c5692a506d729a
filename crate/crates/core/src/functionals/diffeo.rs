use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::planar::{SampledCurve, Vec2};
use crate::scalar::Real;
use crate::spectral;
use crate::tolerance::DELTA_DIFFEO;

/// A lift `f(t) = t + g(t)` of an orientation-preserving diffeomorphism of
/// the projective line, with `g(t) = sum_n z_n e^{int} + conj` over even
/// `n >= 2`.
///
/// `f` and `f'` are cached on the half-period grid `t_j = j pi / N`.
#[derive(Debug, Clone)]
pub struct DiffeoCurve<T> {
    harmonics: Vec<(u32, Complex<T>)>,
    f: Vec<T>,
    df: Vec<T>,
}

impl<T: Real> DiffeoCurve<T> {
    /// Validates the harmonics and `min f' >= DELTA_DIFFEO` on a grid fine
    /// enough to resolve the top harmonic.
    pub fn new(harmonics: Vec<(i64, Complex<T>)>, grid: usize) -> Result<Self> {
        spectral::check_grid(grid)?;
        let mut checked: Vec<(u32, Complex<T>)> = Vec::with_capacity(harmonics.len());
        for (n, z) in harmonics {
            if n % 2 != 0 {
                return Err(Error::OddHarmonic(n));
            }
            if n <= 0 {
                return Err(Error::InvalidArgument(format!("harmonic index {n} must be positive; z_0 is fixed to 0")));
            }
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidArgument(format!("harmonic z_{n} is not finite")));
            }
            if checked.iter().any(|&(m, _)| m as i64 == n) {
                return Err(Error::InvalidArgument(format!("harmonic z_{n} given twice")));
            }
            checked.push((n as u32, z));
        }
        let mut curve = Self { harmonics: checked, f: Vec::new(), df: Vec::new() };
        let top = curve.harmonics.iter().map(|&(n, _)| n as usize).max().unwrap_or(0);
        let dense = grid.max(64 * top).next_power_of_two();
        let h = T::PI() / T::lit(dense as f64);
        let df_at = |j: usize| curve.derivative_at(h * T::lit(j as f64), 1);
        // a coarse pass first, since rejected curves usually fail badly
        let coarse = (0..dense).step_by(16).map(df_at).find(|v| !(*v >= T::lit(DELTA_DIFFEO)));
        let min_df = coarse.unwrap_or_else(|| (0..dense).map(df_at).fold(T::infinity(), |m, v| m.min(v)));
        if !(min_df >= T::lit(DELTA_DIFFEO)) {
            return Err(Error::NotADiffeo(min_df.to_f64().unwrap_or(f64::NAN)));
        }
        let h = T::PI() / T::lit(grid as f64);
        curve.f = (0..grid).map(|j| curve.value_at(h * T::lit(j as f64))).collect();
        curve.df = (0..grid).map(|j| curve.derivative_at(h * T::lit(j as f64), 1)).collect();
        Ok(curve)
    }

    /// `f(t) = t`, whose curve is the unit circle.
    pub fn identity(grid: usize) -> Result<Self> {
        Self::new(Vec::new(), grid)
    }

    pub fn harmonics(&self) -> &[(u32, Complex<T>)] {
        &self.harmonics
    }

    pub fn grid(&self) -> usize {
        self.f.len()
    }

    pub fn times(&self) -> Vec<T> {
        let h = T::PI() / T::lit(self.grid() as f64);
        (0..self.grid()).map(|j| h * T::lit(j as f64)).collect()
    }

    /// Cached `f(t_j)`.
    pub fn f_samples(&self) -> &[T] {
        &self.f
    }

    /// Cached `f'(t_j)`.
    pub fn df_samples(&self) -> &[T] {
        &self.df
    }

    pub fn value_at(&self, t: T) -> T {
        t + self.g_derivative(t, 0)
    }

    /// `f^{(order)}(t)` for `order >= 1`.
    pub fn derivative_at(&self, t: T, order: u32) -> T {
        let g = self.g_derivative(t, order);
        if order == 1 {
            T::one() + g
        } else {
            g
        }
    }

    /// `2 Re(z_n (in)^m e^{int})` summed over the harmonics.
    fn g_derivative(&self, t: T, order: u32) -> T {
        let two = T::lit(2.0);
        self.harmonics.iter().fold(T::zero(), |acc, &(n, z)| {
            let nn = T::lit(n as f64);
            let (s, c) = (nn * t).sin_cos();
            let w = z * Complex::new(c, s);
            let mag = nn.powi(order as i32);
            // multiply by i^order
            let re = match order % 4 {
                0 => w.re,
                1 => -w.im,
                2 => -w.re,
                _ => w.im,
            };
            acc + two * mag * re
        })
    }

    /// Minimum of `f'` on the cached grid.
    pub fn min_derivative(&self) -> T {
        self.df.iter().fold(T::infinity(), |m, &v| m.min(v))
    }

    /// The Schwarzian `f'''/f' - (3/2)(f''/f')^2` at `t`, from the harmonics.
    pub fn schwarzian_at(&self, t: T) -> T {
        let d1 = self.derivative_at(t, 1);
        let d2 = self.derivative_at(t, 2);
        let d3 = self.derivative_at(t, 3);
        let r = d2 / d1;
        d3 / d1 - T::lit(1.5) * r * r
    }
}

/// `gamma(t) = f'(t)^{-1/2} (cos f(t), sin f(t))` on the half-period grid.
///
/// The unit Wronskian holds identically for this formula.
pub fn curve_from_diffeo<T: Real>(d: &DiffeoCurve<T>) -> Result<SampledCurve<T>> {
    let samples = d
        .f_samples()
        .iter()
        .zip(d.df_samples())
        .map(|(&f, &df)| Vec2::polar(f) * (T::one() / df.sqrt()))
        .collect();
    SampledCurve::normalized_by_construction(T::PI(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{Sl2Action, Sl2Matrix};

    fn single(n: i64, re: f64, im: f64) -> DiffeoCurve<f64> {
        DiffeoCurve::new(vec![(n, Complex::new(re, im))], 256).unwrap()
    }

    #[test]
    fn identity_gives_circle() {
        let c = curve_from_diffeo(&DiffeoCurve::<f64>::identity(64).unwrap()).unwrap();
        let circle = SampledCurve::<f64>::unit_circle(64).unwrap();
        for (a, b) in c.samples().iter().zip(circle.samples()) {
            assert!((*a - *b).norm() < 1e-15);
        }
    }

    #[test]
    fn perturbed_curve_has_unit_wronskian() {
        let c = curve_from_diffeo(&single(2, 0.05, 0.0)).unwrap();
        let dev = c.wronskian().unwrap().iter().map(|w| (w - 1.0).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-8, "{dev}");
        let e = c.sl2_apply(&Sl2Matrix::diagonal(2.0).unwrap());
        let dev = e.wronskian().unwrap().iter().map(|w| (w - 1.0).abs()).fold(0.0, f64::max);
        assert!(dev < 1e-8, "{dev}");
    }

    #[test]
    fn analytic_derivatives_match_spectral() {
        let d = DiffeoCurve::new(vec![(2, Complex::new(0.03, -0.02)), (6, Complex::new(0.01, 0.02))], 128).unwrap();
        let g: Vec<f64> = d.times().iter().map(|&t| d.value_at(t) - t).collect();
        for order in 1..=3 {
            let spec = spectral::derivative(&g, std::f64::consts::PI, order).unwrap();
            for (j, &t) in d.times().iter().enumerate() {
                let exact = d.derivative_at(t, order) - if order == 1 { 1.0 } else { 0.0 };
                assert!((spec[j] - exact).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_bad_harmonics() {
        assert!(matches!(DiffeoCurve::<f64>::new(vec![(3, Complex::new(0.1, 0.0))], 64), Err(Error::OddHarmonic(3))));
        // f' = 1 - 1.2 sin 2t dips to -0.2
        assert!(matches!(DiffeoCurve::<f64>::new(vec![(2, Complex::new(0.3, 0.0))], 64), Err(Error::NotADiffeo(_))));
    }
}
