use std::f64::consts::PI;

use crate::duality::CentralSymmetrize;
use crate::error::{Error, Result};
use crate::planar::{area_form, ConvexPolygon, SupportBody, Vec2};
use crate::spectral;

use super::gauge::UnitBall;
use super::table::{outer_billiard_step, ConvexTable};

/// The far-field curve `Gamma`, polar dual of the centrally symmetrized
/// table, with the velocity field `v = -2 gamma_bar`.
#[derive(Debug, Clone)]
pub struct FarFieldCurve {
    symmetrized: UnitBall,
    /// Smooth: `Gamma(t_j)` on the support grid. Polygonal: the vertices.
    points: Vec<Vec2<f64>>,
    /// Smooth: `v(t_j)`. Polygonal: `v` along the edge from vertex `k` to `k + 1`.
    velocity: Vec<Vec2<f64>>,
}

impl FarFieldCurve {
    pub fn points(&self) -> &[Vec2<f64>] {
        &self.points
    }

    pub fn velocity(&self) -> &[Vec2<f64>] {
        &self.velocity
    }

    pub fn is_polygonal(&self) -> bool {
        matches!(self.symmetrized, UnitBall::Polygon(_))
    }

    /// The centrally symmetrized table `gamma_bar`.
    pub fn symmetrized(&self) -> &UnitBall {
        &self.symmetrized
    }

    /// `A(Gamma)`: shoelace for polygons, `(1/2) int p_bar^{-2} dt` for smooth tables.
    pub fn area(&self) -> f64 {
        match &self.symmetrized {
            UnitBall::Polygon(_) => crate::planar::cyclic_area(&self.points),
            UnitBall::Smooth(b) => {
                let integrand: Vec<f64> = b.support().iter().map(|p| 1.0 / (p * p)).collect();
                0.5 * spectral::trapezoid(&integrand, 2.0 * PI)
            }
        }
    }

    /// `max |[Gamma, v] - 2|` over the samples (both ends of every edge for polygons).
    pub fn kepler_residual(&self) -> f64 {
        let n = self.points.len();
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let v = self.velocity[k];
            worst = worst.max((area_form(self.points[k], v) - 2.0).abs());
            if self.is_polygonal() {
                worst = worst.max((area_form(self.points[(k + 1) % n], v) - 2.0).abs());
            }
        }
        worst
    }

    /// The gauge of `Gamma`, so that `x` lies on the homothet `gauge(x) Gamma`.
    ///
    /// Since `Gamma = { w : [q, w] <= 1 for q in gamma_bar }`, the gauge is
    /// `max_q [q, x]`, the support of `gamma_bar` at the normal `arg x - pi/2`.
    pub fn gauge(&self, x: Vec2<f64>) -> f64 {
        match &self.symmetrized {
            UnitBall::Polygon(q) => q.vertices().iter().fold(0.0, |m, &v| m.max(area_form(v, x))),
            UnitBall::Smooth(b) => x.norm() * b.support_at(x.arg() - PI / 2.0),
        }
    }
}

/// Symmetrizes the table and returns the polar dual `Gamma` with `v = -2 gamma_bar`.
pub fn far_field_curve(table: &ConvexTable) -> Result<FarFieldCurve> {
    match table {
        ConvexTable::Smooth(b) => {
            let sym = b.central_symmetrize()?;
            smooth_far_field(sym)
        }
        ConvexTable::Polygon(p) => polygon_far_field(p.central_symmetrize()?),
    }
}

fn smooth_far_field(sym: SupportBody<f64>) -> Result<FarFieldCurve> {
    let boundary = sym.boundary_samples()?;
    let points = sym
        .angles()
        .into_iter()
        .zip(sym.support())
        .map(|(t, &p)| Vec2::polar(t).perp() * (1.0 / p))
        .collect();
    let velocity = boundary.into_iter().map(|g| g * -2.0).collect();
    Ok(FarFieldCurve { symmetrized: UnitBall::Smooth(sym), points, velocity })
}

fn polygon_far_field(sym: ConvexPolygon<f64>) -> Result<FarFieldCurve> {
    let n = sym.n();
    let mut points = Vec::with_capacity(n);
    let mut velocity = Vec::with_capacity(n);
    for k in 0..n {
        let normal = sym.edge_normal(k);
        let h = sym.vertices()[k].dot(normal);
        if !(h > 0.0) {
            return Err(Error::InvariantViolation("symmetrized table must contain the origin".into()));
        }
        // [q, w] = 1 along edge k
        points.push(normal.perp() * (1.0 / h));
        velocity.push(sym.vertices()[(k + 1) % n] * -2.0);
    }
    Ok(FarFieldCurve { symmetrized: UnitBall::Polygon(sym), points, velocity })
}

/// A far-field trajectory on the homothet `lambda Gamma`.
///
/// Time counts second iterates of the outer billiard map, so the position
/// moves with velocity `2 v = -4 gamma_bar`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowTrajectory {
    pub homothety: f64,
    pub times: Vec<f64>,
    pub points: Vec<Vec2<f64>>,
    /// Sectorial area swept since the start.
    pub swept_area: Vec<f64>,
    /// Time of one full revolution, `lambda A(Gamma) / 2`.
    pub period: f64,
    /// `max |swept_area - 2 lambda t|`.
    pub kepler_residual: f64,
}

/// Integrates the far-field motion from `x0` over one revolution in `steps`
/// equal time steps.
pub fn far_field_flow(curve: &FarFieldCurve, x0: Vec2<f64>, steps: usize) -> Result<FlowTrajectory> {
    if steps == 0 {
        return Err(Error::InvalidArgument("the flow needs at least one step".into()));
    }
    let lambda = curve.gauge(x0);
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidArgument("start point must differ from the origin".into()));
    }
    let period = 0.5 * lambda * curve.area();
    let dt = period / steps as f64;
    let mut times = vec![0.0];
    let mut points = vec![x0];
    let mut swept_area = vec![0.0];
    match &curve.symmetrized {
        UnitBall::Polygon(q) => {
            // constant velocity -4 q_{k+1} along edge k of lambda Gamma
            let n = curve.points.len();
            let start_edge = (0..n)
                .find(|&k| {
                    let (a, b) = (curve.points[k] * lambda, curve.points[(k + 1) % n] * lambda);
                    area_form(a, x0) >= -1e-12 * lambda * lambda && area_form(x0, b) > 0.0
                })
                .unwrap_or(0);
            let mut edge = start_edge;
            let mut pos = x0;
            let mut area = 0.0;
            let mut t = 0.0;
            for _ in 0..steps {
                let mut remaining = dt;
                while remaining > 0.0 {
                    let vel = q.vertices()[(edge + 1) % n] * -4.0;
                    let end = curve.points[(edge + 1) % n] * lambda;
                    let to_end = (end - pos).norm() / vel.norm();
                    let tau = remaining.min(to_end);
                    let next = pos + vel * tau;
                    area += 0.5 * area_form(pos, next);
                    pos = next;
                    remaining -= tau;
                    if tau >= to_end {
                        pos = end;
                        edge = (edge + 1) % n;
                        if remaining <= 1e-15 * period {
                            break;
                        }
                    }
                }
                t += dt;
                times.push(t);
                points.push(pos);
                swept_area.push(area);
            }
        }
        UnitBall::Smooth(b) => {
            // RK4 on the normal angle s of the current point lambda Gamma(s):
            // project the velocity -4 gamma_bar(s) onto lambda Gamma'(s).
            let gamma_prime = |s: f64| {
                let p = b.support_at(s);
                let dp = b.support_derivative_at(s, 1);
                let u = Vec2::polar(s);
                (u * p + u.perp() * dp) * (-1.0 / (p * p))
            };
            let rate = |s: f64| {
                let g = gamma_prime(s) * lambda;
                b.boundary_point(s).scale(-4.0).dot(g) / g.norm_sq()
            };
            let position = |s: f64| Vec2::polar(s).perp() * (lambda / b.support_at(s));
            let mut s = x0.arg() - PI / 2.0;
            let sectorial = |s: f64| {
                let p = b.support_at(s);
                0.5 * lambda * lambda / (p * p)
            };
            let mut t = 0.0;
            let mut area = 0.0;
            for _ in 0..steps {
                let k1 = rate(s);
                let k2 = rate(s + 0.5 * dt * k1);
                let k3 = rate(s + 0.5 * dt * k2);
                let k4 = rate(s + dt * k3);
                let s_next = s + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
                area += simpson(&sectorial, s, s_next);
                s = s_next;
                t += dt;
                times.push(t);
                points.push(position(s));
                swept_area.push(area);
            }
        }
    }
    let kepler_residual = times.iter().zip(&swept_area).fold(0.0f64, |m, (&t, &a)| m.max((a - 2.0 * lambda * t).abs()));
    Ok(FlowTrajectory { homothety: lambda, times, points, swept_area, period, kepler_residual })
}

/// Composite Simpson rule with 16 panels.
fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 16;
    let h = (b - a) / m as f64;
    let mut sum = f(a) + f(b);
    for i in 1..m {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + h * i as f64);
    }
    sum * h / 3.0
}

/// Scaling-invariant period of the far-field dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsoluteTimeReport {
    /// Period of the far-field flow on `Gamma`: `A(Gamma) / 2`.
    pub t_raw: f64,
    pub area_table_sym: f64,
    pub area_gamma: f64,
    /// `(1/2) sqrt(A(gamma_bar) A(Gamma))`.
    pub t_abs: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `n sin(pi / 2n)` for a symmetrized `2n`-gon.
    pub polygon_bound: Option<f64>,
}

impl AbsoluteTimeReport {
    pub fn within_bounds(&self, slack: f64) -> bool {
        self.t_abs >= self.lower_bound - slack
            && self.t_abs <= self.upper_bound + slack
            && self.polygon_bound.is_none_or(|b| self.t_abs <= b + slack)
    }

    pub fn lower_equality(&self, tol: f64) -> bool {
        (self.t_abs - self.lower_bound).abs() <= tol
    }

    pub fn upper_equality(&self, tol: f64) -> bool {
        (self.t_abs - self.upper_bound).abs() <= tol || self.polygon_bound.is_some_and(|b| (self.t_abs - b).abs() <= tol)
    }
}

pub fn absolute_time(table: &ConvexTable) -> Result<AbsoluteTimeReport> {
    let curve = far_field_curve(table)?;
    let area_gamma = curve.area();
    let (area_table_sym, polygon_bound) = match &curve.symmetrized {
        UnitBall::Polygon(q) => {
            let n = (q.n() / 2) as f64;
            (q.area(), Some(n * (PI / (2.0 * n)).sin()))
        }
        UnitBall::Smooth(b) => (b.area()?, None),
    };
    Ok(AbsoluteTimeReport {
        t_raw: 0.5 * area_gamma,
        area_table_sym,
        area_gamma,
        t_abs: 0.5 * (area_table_sym * area_gamma).sqrt(),
        lower_bound: 2f64.sqrt(),
        upper_bound: PI / 2.0,
        polygon_bound,
    })
}

/// Outcome of iterating `F^2` far from the table.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldError {
    /// `max_k |x_k - lambda Gamma| / R`, measured radially.
    pub error: f64,
    pub iterations: usize,
    pub revolutions: f64,
    /// Orbit points that could not be continued (singular set, interior).
    pub diagnostics: Vec<String>,
}

/// Iterates `F^2` from a point at distance `r` until the orbit has turned
/// `revolutions` times around the origin, and compares it with the
/// homothet of `Gamma` through the start.
pub fn far_field_error(table: &ConvexTable, r: f64, revolutions: f64) -> Result<FarFieldError> {
    let diam = table.diameter();
    if !(r >= 50.0 * diam) {
        return Err(Error::InvalidArgument(format!("R = {r} must be at least 50 times the diameter {diam}")));
    }
    if !(revolutions > 0.0) {
        return Err(Error::InvalidArgument("revolutions must be positive".into()));
    }
    let curve = far_field_curve(table)?;
    // a generic direction keeps the orbit off edge extensions
    let x0 = Vec2::polar(0.3183098861837907) * r;
    let lambda = curve.gauge(x0);
    let target = 2.0 * PI * revolutions;
    let mut x = x0;
    let mut turned: f64 = 0.0;
    let mut error: f64 = 0.0;
    let mut iterations = 0;
    let mut diagnostics = Vec::new();
    let cap = (1000.0 * revolutions * r).max(1e4) as usize;
    // F^2 turns clockwise under the step orientation; the revolution count is unsigned
    while turned.abs() < target && iterations < cap {
        let y = match outer_billiard_step(table, x).and_then(|y| outer_billiard_step(table, y)) {
            Ok(y) => y,
            Err(e) => {
                diagnostics.push(format!("iteration {iterations}: {e}"));
                break;
            }
        };
        turned += area_form(x, y).atan2(x.dot(y));
        x = y;
        iterations += 1;
        let g = curve.gauge(x);
        error = error.max(x.norm() * (1.0 - lambda / g).abs() / r);
    }
    if iterations >= cap {
        diagnostics.push(format!("stopped after {iterations} iterations without completing the revolutions"));
    }
    Ok(FarFieldError { error, iterations, revolutions: turned.abs() / (2.0 * PI), diagnostics })
}
