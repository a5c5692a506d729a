//! Random admissible objects for property checks and experiments.
//!
//! Every generator takes the caller's `Rng`, so a single seeded generator
//! drives a whole experiment reproducibly.

use std::f64::consts::PI;

use rand::Rng;
use rustfft::num_complex::Complex;

use crate::billiards::ConvexTable;
use crate::error::Result;
use crate::functionals::DiffeoCurve;
use crate::planar::{ConvexPolygon, Sl2Action, Sl2Matrix, StarPolygon, SupportBody, Vec2};
use crate::polygon_space::{even_image_residual, normalize, polygon_over_rays, RayConfiguration};

/// Rotation * diag(s, 1/s) * shear with `s` in `[1/2, 2]` and shear in `[-1, 1]`.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Sl2Matrix<f64> {
    let rot = Sl2Matrix::rotation(rng.gen_range(0.0..2.0 * PI));
    let s = 2f64.powf(rng.gen_range(-1.0..1.0));
    let k = rng.gen_range(-1.0..1.0);
    let diag = Sl2Matrix::diagonal(s).expect("diag(s, 1/s) is unimodular");
    let shear = Sl2Matrix::new(1.0, k, 0.0, 1.0).expect("shears are unimodular");
    rot.compose(&diag).compose(&shear)
}

/// Gaps `pi * (w_i / sum w)` with `w_i` uniform in `[floor, floor + 1)`.
fn random_gaps<R: Rng + ?Sized>(n: usize, floor: f64, rng: &mut R) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| floor + rng.gen::<f64>()).collect();
    let total: f64 = w.iter().sum();
    w.iter().map(|x| PI * x / total).collect()
}

fn angles_from_gaps(start: f64, gaps: &[f64]) -> Vec<f64> {
    let mut acc = start;
    gaps.iter()
        .map(|g| {
            let a = acc;
            acc += g;
            a
        })
        .collect()
}

/// A random ray configuration; `floor` controls how unequal the gaps may be.
pub fn random_rays<R: Rng + ?Sized>(n: usize, floor: f64, rng: &mut R) -> RayConfiguration<f64> {
    let gaps = random_gaps(n, floor, rng);
    RayConfiguration::new(angles_from_gaps(rng.gen_range(0.0..PI), &gaps[..n])).expect("gaps sum to pi")
}

/// A random polygon in `P_n`, in a random `SL(2, R)` position.
///
/// Odd `n` normalizes random rays. Even `n` draws `n - 1` rays, places the
/// last one where the image condition holds (it is monotone in that
/// angle), and picks a random point of the scaling fiber.
pub fn random_star_polygon<R: Rng + ?Sized>(n: usize, floor: f64, rng: &mut R) -> StarPolygon<f64> {
    assert!(n >= 3, "polygons need n >= 3");
    let p = if n % 2 == 1 {
        normalize(&random_rays(n, floor, rng)).expect("random rays are admissible")
    } else {
        let gaps = random_gaps(n, floor, rng);
        let mut angles = angles_from_gaps(0.0, &gaps);
        let (mut lo, mut hi) = (angles[n - 2], PI);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            angles[n - 1] = mid;
            let rays = RayConfiguration::new(angles.clone()).expect("angles stay ordered");
            if even_image_residual(&rays) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-16 {
                break;
            }
        }
        angles[n - 1] = 0.5 * (lo + hi);
        let rays = RayConfiguration::new(angles).expect("angles stay ordered");
        let a0 = rays.consecutive_cross_products()[0];
        let scale = a0.recip().sqrt() * rng.gen_range(-0.5f64..0.5).exp();
        polygon_over_rays(&rays, scale).expect("image condition holds")
    };
    p.sl2_apply(&random_sl2(rng))
}

/// Uniform in the disc of radius `r`.
fn random_in_disc<R: Rng + ?Sized>(r: f64, rng: &mut R) -> Complex<f64> {
    Complex::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI))
}

/// A diffeomorphism `t + g` with harmonics `z_2 .. z_{2M}` drawn uniformly
/// from the disc `|z| <= amplitude`. When `min f'` falls below the
/// diffeomorphism margin all harmonics are halved until it does not.
pub fn random_diffeo<R: Rng + ?Sized>(cutoff: u32, amplitude: f64, grid: usize, rng: &mut R) -> Result<DiffeoCurve<f64>> {
    let mut harmonics: Vec<(i64, Complex<f64>)> =
        (1..=cutoff as i64).map(|m| (2 * m, random_in_disc(amplitude, rng))).collect();
    loop {
        match DiffeoCurve::new(harmonics.clone(), grid) {
            Err(crate::error::Error::NotADiffeo(_)) => harmonics.iter_mut().for_each(|(_, z)| *z *= 0.5),
            other => return other,
        }
    }
}

/// `1 + sum_{k=2}^{K} (a_k cos kt + b_k sin kt)` plus a translation of length
/// at most `0.2`, scaled so that `p + p'' >= 0.1`.
pub fn random_support_body<R: Rng + ?Sized>(harmonics: usize, grid: usize, rng: &mut R) -> Result<SupportBody<f64>> {
    let coeffs: Vec<(f64, f64)> = (0..harmonics.saturating_sub(1))
        .map(|i| {
            let k = (i + 2) as f64;
            let z = random_in_disc(1.0, rng) / (k * k);
            (z.re, z.im)
        })
        .collect();
    // sum (k^2 - 1)|z_k| bounds the dip of p + p'' below 1
    let dip: f64 = coeffs.iter().enumerate().map(|(i, (a, b))| (((i + 2) * (i + 2)) as f64 - 1.0) * a.hypot(*b)).sum();
    let scale = if dip > 0.0 { rng.gen_range(0.0..0.9) / dip } else { 0.0 };
    let shift = random_in_disc(0.2, rng);
    SupportBody::from_fn(grid, |t: f64| {
        let wave: f64 = coeffs.iter().enumerate().map(|(i, (a, b))| {
            let k = (i + 2) as f64;
            a * (k * t).cos() + b * (k * t).sin()
        }).sum();
        1.0 + scale * wave + shift.re * t.cos() + shift.im * t.sin()
    })
}

/// `n` points at sorted random angles of the unit circle (gaps at least a
/// fifth of the mean gap), mapped by a random `SL(2, R)` matrix and
/// translated by at most `0.2`.
pub fn random_convex_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ConvexPolygon<f64>> {
    let gaps = random_gaps(n, 0.25, rng);
    let angles = angles_from_gaps(rng.gen_range(0.0..2.0 * PI), &gaps);
    let m = random_sl2(rng);
    let shift = random_in_disc(0.2, rng);
    // gaps sum to pi, so doubling spreads the points over the full circle
    let vertices = angles.iter().map(|&a| m.apply(Vec2::polar(2.0 * a)) + Vec2::new(shift.re, shift.im)).collect();
    ConvexPolygon::new(vertices)
}

/// A random polygon or smooth body, with equal odds.
pub fn random_convex_table<R: Rng + ?Sized>(grid: usize, rng: &mut R) -> Result<ConvexTable> {
    if rng.gen_bool(0.5) {
        Ok(ConvexTable::Polygon(random_convex_polygon(rng.gen_range(3..=12), rng)?))
    } else {
        Ok(ConvexTable::Smooth(random_support_body(rng.gen_range(2..=6), grid, rng)?))
    }
}

/// A perturbed circle `e^{it} + sum_k a_k e^{ikt}` reparameterized by arc
/// length and scaled to length `2 pi`; `n` samples on `[0, 2 pi)`.
///
/// `amplitude` bounds `sum |k a_k|` and must stay below one so the speed is
/// positive.
pub fn random_unit_speed_curve<R: Rng + ?Sized>(n: usize, harmonics: i64, amplitude: f64, rng: &mut R) -> Vec<Vec2<f64>> {
    assert!((0.0..1.0).contains(&amplitude), "amplitude must lie in [0, 1)");
    let ks: Vec<i64> = (-harmonics..=harmonics).filter(|&k| k != 1 && k != 0).collect();
    let raw: Vec<Complex<f64>> = ks.iter().map(|&k| random_in_disc(1.0, rng) / (k * k) as f64).collect();
    let weight: f64 = ks.iter().zip(&raw).map(|(&k, a)| k.abs() as f64 * a.norm()).sum();
    let scale = if weight > 0.0 { amplitude / weight } else { 0.0 };
    let terms: Vec<(f64, Complex<f64>)> =
        std::iter::once((1.0, Complex::new(1.0, 0.0))).chain(ks.iter().zip(&raw).map(|(&k, a)| (k as f64, a * scale))).collect();
    let point = |t: f64| terms.iter().fold(Complex::new(0.0, 0.0), |acc, (k, a)| acc + a * Complex::from_polar(1.0, k * t));
    let speed = |t: f64| terms.iter().fold(Complex::new(0.0, 0.0), |acc, (k, a)| acc + a * Complex::new(0.0, *k) * Complex::from_polar(1.0, k * t)).norm();

    // cumulative arc length on panels by 5-point Gauss-Legendre
    const NODES: [f64; 5] = [0.0, -0.5384693101056831, 0.5384693101056831, -0.906179845938664, 0.906179845938664];
    const WEIGHTS: [f64; 5] = [0.5688888888888889, 0.47862867049936647, 0.47862867049936647, 0.23692688505618908, 0.23692688505618908];
    let gauss = |a: f64, b: f64| {
        let (c, r) = (0.5 * (a + b), 0.5 * (b - a));
        NODES.iter().zip(WEIGHTS).map(|(x, w)| w * speed(c + r * x)).sum::<f64>() * r
    };
    let panels = 4 * n.max(256);
    let h = 2.0 * PI / panels as f64;
    let mut cumulative = vec![0.0; panels + 1];
    for i in 0..panels {
        cumulative[i + 1] = cumulative[i] + gauss(h * i as f64, h * (i + 1) as f64);
    }
    let length = cumulative[panels];
    let arc = |t: f64| {
        let i = ((t / h).floor() as usize).min(panels - 1);
        cumulative[i] + gauss(h * i as f64, t)
    };
    (0..n)
        .map(|j| {
            let target = length * j as f64 / n as f64;
            let mut t = 2.0 * PI * j as f64 / n as f64;
            for _ in 0..50 {
                let step = (arc(t.clamp(0.0, 2.0 * PI)) - target) / speed(t);
                t -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let z = point(t) * (2.0 * PI / length);
            Vec2::new(z.re, z.im)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::chord_average;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_speed_curves_pass_the_speed_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let c = random_unit_speed_curve(256, 4, 0.3, &mut rng);
            assert!(chord_average(&c, 1.0, |x| x).is_ok());
        }
    }

    #[test]
    fn random_tables_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            random_convex_table(256, &mut rng).unwrap();
        }
        for _ in 0..20 {
            let d = random_diffeo(4, 0.3, 256, &mut rng).unwrap();
            assert!(d.min_derivative() >= crate::tolerance::DELTA_DIFFEO);
        }
    }
}
