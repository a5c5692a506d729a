use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::planar::{area_form, StarPolygon, Vec2};
use crate::tolerance::{EPS_GRAD, EPS_OPT};

use super::rays::{normalize, polygon_over_rays, rays_of, RayConfiguration};
use super::{canonical_gauge, cross_products, even_image_residual, f_n, f_n_lower_bound};

#[derive(Debug, Clone, Copy)]
pub struct MinimizeOptions {
    pub max_iterations: usize,
    pub grad_tol: f64,
    /// Central finite-difference step for the odd-`n` ray coordinates.
    pub fd_step: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { max_iterations: 20_000, grad_tol: EPS_GRAD, fd_step: 1e-5 }
    }
}

#[derive(Debug, Clone)]
pub enum InitialPoint {
    Rays(RayConfiguration<f64>),
    Polygon(StarPolygon<f64>),
}

#[derive(Debug, Clone)]
pub struct MinimizationResult {
    /// Best iterate, in the gauge `V_0 = (1, 0)`, `V_{n-1} = (0, 1)`.
    pub polygon: StarPolygon<f64>,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    /// `gradient_norm < grad_tol` was reached.
    pub converged: bool,
}

/// Local minimization of the cross-product sum over polygons modulo `SL(2, R)`.
///
/// Odd `n` descends in log-gap coordinates of the ray configuration (gaps
/// `pi * softmax(u)`), which cover the whole moduli space without
/// constraints. Even `n` works on `V_1 .. V_{n-2}` in the canonical gauge
/// with the unit cross-product constraints restored by a Newton projection
/// after every step. Steps use Barzilai-Borwein trial lengths with Armijo
/// backtracking; gradients are central differences.
pub fn minimize_f_n(n: usize, init: &InitialPoint, opts: &MinimizeOptions) -> Result<MinimizationResult> {
    let init_n = match init {
        InitialPoint::Rays(r) => r.n(),
        InitialPoint::Polygon(p) => p.n(),
    };
    if init_n != n {
        return Err(Error::InvalidArgument(format!("initial point has n = {init_n}, expected {n}")));
    }
    let result = if n % 2 == 1 { minimize_odd(init, opts)? } else { minimize_even(init, opts)? };
    debug_assert!(result.value >= f_n_lower_bound(n) - EPS_OPT);
    Ok(result)
}

/// Objective plus the descent loop shared by both parameterizations.
trait Descent {
    fn value(&self, x: &DVector<f64>) -> Option<f64>;
    fn gradient(&self, x: &DVector<f64>, f0: f64) -> DVector<f64>;
    /// Maps a trial point back onto the feasible set.
    fn retract(&self, x: DVector<f64>) -> Option<DVector<f64>> {
        Some(x)
    }
}

struct DescentOutcome {
    x: DVector<f64>,
    value: f64,
    gradient_norm: f64,
    iterations: usize,
    converged: bool,
}

fn descend<D: Descent>(problem: &D, x0: DVector<f64>, opts: &MinimizeOptions) -> Result<DescentOutcome> {
    let mut x = x0;
    let mut f = problem
        .value(&x)
        .ok_or_else(|| Error::InvalidArgument("initial point is not an admissible polygon".into()))?;
    let mut g = problem.gradient(&x, f);
    let mut step = 1.0 / g.norm().max(1.0);
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        let gnorm = g.norm();
        if gnorm < opts.grad_tol {
            return Ok(DescentOutcome { x, value: f, gradient_norm: gnorm, iterations, converged: true });
        }
        // Below this decrease the objective cannot resolve progress; fall back
        // to accepting steps that shrink the gradient instead.
        let noise = 64.0 * f64::EPSILON * f.abs().max(1.0);
        let mut accepted = None;
        let mut alpha = step;
        for _ in 0..80 {
            if let Some(trial) = problem.retract(&x - &g * alpha) {
                if let Some(ft) = problem.value(&trial) {
                    let wanted = 1e-4 * alpha * gnorm * gnorm;
                    if ft <= f - wanted {
                        let gt = problem.gradient(&trial, ft);
                        accepted = Some((trial, ft, gt));
                        break;
                    }
                    if wanted < noise && ft <= f + noise {
                        let gt = problem.gradient(&trial, ft);
                        if gt.norm() < gnorm {
                            accepted = Some((trial, ft, gt));
                            break;
                        }
                    }
                }
            }
            alpha *= 0.5;
        }
        let Some((x_new, f_new, g_new)) = accepted else {
            // Line search stalled at roundoff level.
            return Ok(DescentOutcome { x, value: f, gradient_norm: gnorm, iterations, converged: false });
        };
        let s = &x_new - &x;
        let y = &g_new - &g;
        let sy = s.dot(&y);
        step = if sy > 0.0 { (s.dot(&s) / sy).clamp(1e-10, 1e4) } else { (alpha * 2.0).min(1e4) };
        x = x_new;
        f = f_new;
        g = g_new;
        iterations += 1;
    }
    let gnorm = g.norm();
    Ok(DescentOutcome { x, value: f, gradient_norm: gnorm, iterations, converged: gnorm < opts.grad_tol })
}

fn central_gradient(x: &DVector<f64>, h: f64, value: impl Fn(&DVector<f64>) -> Option<f64>, fallback: f64) -> DVector<f64> {
    let mut g = DVector::zeros(x.len());
    let mut probe = x.clone();
    for i in 0..x.len() {
        let xi = x[i];
        probe[i] = xi + h;
        let fp = value(&probe);
        probe[i] = xi - h;
        let fm = value(&probe);
        probe[i] = xi;
        g[i] = match (fp, fm) {
            (Some(a), Some(b)) => (a - b) / (2.0 * h),
            (Some(a), None) => (a - fallback) / h,
            (None, Some(b)) => (fallback - b) / h,
            (None, None) => 0.0,
        };
    }
    g
}

// ---------------------------------------------------------------- odd n

struct RayProblem {
    n: usize,
    fd_step: f64,
}

impl RayProblem {
    fn rays(&self, u: &DVector<f64>) -> Option<RayConfiguration<f64>> {
        let m = u.max();
        let w: Vec<f64> = u.iter().map(|v| (v - m).exp()).collect();
        let total: f64 = w.iter().sum();
        let mut angles = Vec::with_capacity(self.n);
        let mut acc = 0.0;
        // the last gap closes the half-turn back to theta_0 + pi
        for wi in w.iter().take(self.n) {
            angles.push(acc);
            acc += std::f64::consts::PI * wi / total;
        }
        RayConfiguration::new(angles).ok()
    }

    fn polygon(&self, u: &DVector<f64>) -> Option<StarPolygon<f64>> {
        normalize(&self.rays(u)?).ok()
    }
}

impl Descent for RayProblem {
    fn value(&self, u: &DVector<f64>) -> Option<f64> {
        self.polygon(u).map(|p| f_n(&cross_products(&p)))
    }

    fn gradient(&self, u: &DVector<f64>, f0: f64) -> DVector<f64> {
        central_gradient(u, self.fd_step, |v| self.value(v), f0)
    }
}

fn minimize_odd(init: &InitialPoint, opts: &MinimizeOptions) -> Result<MinimizationResult> {
    let rays = match init {
        InitialPoint::Rays(r) => r.clone(),
        InitialPoint::Polygon(p) => rays_of(p),
    };
    let n = rays.n();
    let a = rays.angles();
    let gaps: Vec<f64> = (0..n).map(|i| if i + 1 < n { a[i + 1] - a[i] } else { a[0] + std::f64::consts::PI - a[n - 1] }).collect();
    let u0 = DVector::from_iterator(n, gaps.iter().map(|g| g.ln()));
    let problem = RayProblem { n, fd_step: opts.fd_step };
    let out = descend(&problem, u0, opts)?;
    let polygon = problem.polygon(&out.x).expect("descent keeps iterates admissible");
    Ok(MinimizationResult {
        polygon: canonical_gauge(&polygon),
        value: out.value,
        gradient_norm: out.gradient_norm,
        iterations: out.iterations,
        converged: out.converged,
    })
}

// ---------------------------------------------------------------- even n

/// Free variables `V_1 .. V_{n-2}` with `V_0 = (1, 0)`, `V_{n-1} = (0, 1)`.
struct GaugedProblem {
    n: usize,
}

/// The objective is quadratic in the gauged coordinates, so central
/// differences carry no truncation error and a wide step only cuts roundoff.
const GAUGED_FD_STEP: f64 = 1e-3;

impl GaugedProblem {
    fn vertices(&self, z: &DVector<f64>) -> Vec<Vec2<f64>> {
        let mut v = Vec::with_capacity(self.n);
        v.push(Vec2::new(1.0, 0.0));
        for k in 0..self.n - 2 {
            v.push(Vec2::new(z[2 * k], z[2 * k + 1]));
        }
        v.push(Vec2::new(0.0, 1.0));
        v
    }

    /// `[V_i, V_{i+1}] - 1` for `i = 0 .. n-2`.
    fn constraints(&self, z: &DVector<f64>) -> DVector<f64> {
        let v = self.vertices(z);
        DVector::from_iterator(self.n - 1, (0..self.n - 1).map(|i| area_form(v[i], v[i + 1]) - 1.0))
    }

    fn jacobian(&self, z: &DVector<f64>) -> DMatrix<f64> {
        let v = self.vertices(z);
        let m = self.n - 1;
        let mut j = DMatrix::zeros(m, 2 * (self.n - 2));
        for i in 0..m {
            // d[V_i, V_{i+1}] = [dV_i, V_{i+1}] + [V_i, dV_{i+1}]; V_k is variable k-1 for 1 <= k <= n-2.
            if i >= 1 {
                let c = 2 * (i - 1);
                j[(i, c)] = v[i + 1].y;
                j[(i, c + 1)] = -v[i + 1].x;
            }
            if i + 1 <= self.n - 2 {
                let c = 2 * i;
                j[(i, c)] = -v[i].y;
                j[(i, c + 1)] = v[i].x;
            }
        }
        j
    }

    fn project_tangent(&self, z: &DVector<f64>, g: DVector<f64>) -> DVector<f64> {
        let j = self.jacobian(z);
        let jjt = &j * j.transpose();
        match jjt.lu().solve(&(&j * &g)) {
            Some(lambda) => g - j.transpose() * lambda,
            None => g,
        }
    }

    fn polygon(&self, z: &DVector<f64>) -> Option<StarPolygon<f64>> {
        StarPolygon::new(self.vertices(z)).ok()
    }
}

impl Descent for GaugedProblem {
    fn value(&self, z: &DVector<f64>) -> Option<f64> {
        self.polygon(z).map(|p| f_n(&cross_products(&p)))
    }

    fn gradient(&self, z: &DVector<f64>, _f0: f64) -> DVector<f64> {
        // The cross-product sum is a quadratic polynomial of the free
        // coordinates, so central differences are exact up to roundoff and
        // need no admissibility check at the probes.
        let raw = central_gradient(
            z,
            GAUGED_FD_STEP,
            |w| {
                let v = self.vertices(w);
                let n = self.n as i64;
                let at = |i: i64| {
                    let q = i.div_euclid(n);
                    let p = v[i.rem_euclid(n) as usize];
                    if q % 2 == 0 { p } else { -p }
                };
                Some((0..n).map(|i| area_form(at(i - 1), at(i + 1))).sum())
            },
            0.0,
        );
        self.project_tangent(z, raw)
    }

    fn retract(&self, mut z: DVector<f64>) -> Option<DVector<f64>> {
        for _ in 0..30 {
            let h = self.constraints(&z);
            if h.amax() < 1e-14 {
                return Some(z);
            }
            let j = self.jacobian(&z);
            let lambda = (&j * j.transpose()).lu().solve(&h)?;
            z -= j.transpose() * lambda;
        }
        (self.constraints(&z).amax() < 1e-12).then_some(z)
    }
}

fn minimize_even(init: &InitialPoint, opts: &MinimizeOptions) -> Result<MinimizationResult> {
    let polygon = match init {
        InitialPoint::Polygon(p) => p.clone(),
        InitialPoint::Rays(r) => {
            let residual = even_image_residual(r);
            if residual.abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "even-n rays carry no polygon: image residual {residual:e}"
                )));
            }
            polygon_over_rays(r, 1.0)?
        }
    };
    let n = polygon.n();
    let gauged = canonical_gauge(&polygon);
    let z0 = DVector::from_iterator(2 * (n - 2), gauged.vertices()[1..n - 1].iter().flat_map(|v| [v.x, v.y]));
    let problem = GaugedProblem { n };
    let z0 = problem
        .retract(z0)
        .ok_or_else(|| Error::InvalidArgument("initial polygon could not be projected onto the constraints".into()))?;
    let out = descend(&problem, z0, opts)?;
    let polygon = problem.polygon(&out.x).expect("descent keeps iterates admissible");
    Ok(MinimizationResult {
        polygon,
        value: out.value,
        gradient_norm: out.gradient_norm,
        iterations: out.iterations,
        converged: out.converged,
    })
}
