//! Randomized local search for curves violating `I(alpha) >= sin(alpha)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;

use crate::error::{Error, Result};
use crate::planar::{area_form, Vec2};

use super::DiffeoCurve;

/// Deficits below this count as a counterexample.
pub const COUNTEREXAMPLE_THRESHOLD: f64 = -1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    /// Harmonics `z_4 .. z_{2M}` are searched.
    pub cutoff: u32,
    pub trials: usize,
    /// Number of `alpha` values in `(0, pi)`.
    pub alpha_grid: usize,
    pub seed: u64,
    /// Samples on `[0, pi)`.
    pub grid: usize,
    /// Largest `|z_n|` of a random start.
    pub amplitude: f64,
    pub max_iterations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { cutoff: 4, trials: 50, alpha_grid: 64, seed: 0, grid: 256, amplitude: 0.3, max_iterations: 200 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub trial: usize,
    /// Starts discarded because `min f'` fell below the diffeomorphism margin.
    pub rejected_starts: usize,
    pub start_deficit: f64,
    pub best_deficit: f64,
    pub best_alpha: f64,
    /// `(n, re z_n, im z_n)` at the best point.
    pub harmonics: Vec<(u32, f64, f64)>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub trials: Vec<TrialResult>,
    pub best_deficit: f64,
    pub best_trial: Option<usize>,
}

impl SearchReport {
    pub fn counterexample(&self) -> bool {
        self.best_deficit < COUNTEREXAMPLE_THRESHOLD
    }
}

/// `alpha_k` snapped to the sample grid: `m_k pi / N` with
/// `m_k = round(k N / (G + 1))`, `k = 1 .. G`, duplicates removed.
pub fn snapped_alpha_indices(alpha_grid: usize, grid: usize) -> Vec<usize> {
    let mut m: Vec<usize> = (1..=alpha_grid)
        .map(|k| ((k * grid) as f64 / (alpha_grid + 1) as f64).round() as usize)
        .filter(|&m| m >= 1 && m < grid)
        .collect();
    m.dedup();
    m
}

/// `min_alpha (I(alpha) - sin alpha)` over grid-snapped `alpha`, with the
/// minimizing `alpha`.
pub fn min_deficit(d: &DiffeoCurve<f64>, alpha_indices: &[usize]) -> (f64, f64) {
    let n = d.grid();
    let gamma: Vec<Vec2<f64>> =
        d.f_samples().iter().zip(d.df_samples()).map(|(&f, &df)| Vec2::polar(f) * (1.0 / df.sqrt())).collect();
    let h = std::f64::consts::PI / n as f64;
    let mut best = (f64::INFINITY, 0.0);
    for &m in alpha_indices {
        let mut sum = 0.0;
        for j in 0..n {
            let k = j + m;
            // gamma(t + pi) = -gamma(t)
            let w = if k < n { area_form(gamma[j], gamma[k]) } else { -area_form(gamma[j], gamma[k - n]) };
            sum += w;
        }
        let alpha = h * m as f64;
        let deficit = sum / n as f64 - alpha.sin();
        if deficit < best.0 {
            best = (deficit, alpha);
        }
    }
    best
}

/// Search coordinates: `re z_4`, then `(re, im)` of `z_6 .. z_{2M}`. The
/// phase of `z_4` and `z_2 = 0` fix the parameter-shift and `SL(2, R)` gauges.
fn harmonics_of(x: &[f64]) -> Vec<(i64, Complex<f64>)> {
    let mut out = vec![(4, Complex::new(x[0], 0.0))];
    for (i, pair) in x[1..].chunks(2).enumerate() {
        out.push((6 + 2 * i as i64, Complex::new(pair[0], pair[1])));
    }
    out
}

struct Objective<'a> {
    grid: usize,
    alphas: &'a [usize],
}

impl Objective<'_> {
    fn eval(&self, x: &[f64]) -> Option<(f64, f64)> {
        let d = DiffeoCurve::new(harmonics_of(x), self.grid).ok()?;
        Some(min_deficit(&d, self.alphas))
    }

    /// Deficit at the fixed `alpha_m`; differentiable unlike the minimum.
    fn at_alpha(&self, x: &[f64], m: usize) -> Option<f64> {
        let d = DiffeoCurve::new(harmonics_of(x), self.grid).ok()?;
        Some(min_deficit(&d, &[m]).0)
    }
}

fn random_start<R: Rng>(cutoff: u32, amplitude: f64, rng: &mut R) -> Vec<f64> {
    let mut x = vec![rng.gen_range(-amplitude..amplitude)];
    for _ in 0..(cutoff as usize - 2) {
        // uniform in the disc of radius `amplitude`
        let r = amplitude * rng.gen::<f64>().sqrt();
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        x.push(r * phase.cos());
        x.push(r * phase.sin());
    }
    x
}

fn run_trial(trial: usize, start: Vec<f64>, rejected: usize, opts: &SearchOptions, objective: &Objective) -> TrialResult {
    let h_fd = 1e-6;
    let mut x = start;
    let (mut value, mut alpha) = objective.eval(&x).expect("start point is admissible");
    let start_deficit = value;
    let mut step = 0.1;
    let mut iterations = 0;
    while iterations < opts.max_iterations {
        let m = (alpha / std::f64::consts::PI * opts.grid as f64).round() as usize;
        let mut g = vec![0.0; x.len()];
        for i in 0..x.len() {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[i] += h_fd;
            xm[i] -= h_fd;
            g[i] = match (objective.at_alpha(&xp, m), objective.at_alpha(&xm, m)) {
                (Some(a), Some(b)) => (a - b) / (2.0 * h_fd),
                _ => 0.0,
            };
        }
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm < 1e-10 {
            break;
        }
        let mut moved = false;
        let mut s = step;
        while s > 1e-12 {
            let trial_x: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a - s * b / gnorm).collect();
            if let Some((v, a)) = objective.eval(&trial_x) {
                if v < value {
                    x = trial_x;
                    value = v;
                    alpha = a;
                    moved = true;
                    break;
                }
            }
            s *= 0.5;
        }
        iterations += 1;
        if !moved {
            break;
        }
        step = (2.0 * s).min(0.1);
    }
    TrialResult {
        trial,
        rejected_starts: rejected,
        start_deficit,
        best_deficit: value,
        best_alpha: alpha,
        harmonics: harmonics_of(&x).into_iter().map(|(n, z)| (n as u32, z.re, z.im)).collect(),
        iterations,
    }
}

/// Runs `trials` independent local searches. Trial `i` draws its start from
/// `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so results do not depend
/// on execution order.
pub fn conjecture_search(opts: &SearchOptions) -> Result<SearchReport> {
    if !(2..=16).contains(&opts.cutoff) {
        return Err(Error::InvalidArgument(format!("harmonic cutoff M = {} must lie in [2, 16]", opts.cutoff)));
    }
    crate::spectral::check_grid(opts.grid)?;
    if opts.alpha_grid == 0 {
        return Err(Error::InvalidArgument("the alpha grid needs at least one point".into()));
    }
    if !(opts.amplitude > 0.0 && opts.amplitude.is_finite()) {
        return Err(Error::InvalidArgument(format!("amplitude {} must be finite and positive", opts.amplitude)));
    }
    let alphas = snapped_alpha_indices(opts.alpha_grid, opts.grid);
    let objective = Objective { grid: opts.grid, alphas: &alphas };
    let mut trials = Vec::with_capacity(opts.trials);
    for trial in 0..opts.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(trial as u64);
        let mut rejected = 0;
        let start = loop {
            let x = random_start(opts.cutoff, opts.amplitude, &mut rng);
            if objective.eval(&x).is_some() {
                break x;
            }
            rejected += 1;
            if rejected > 100_000 {
                return Err(Error::InvalidArgument("no admissible random start found".into()));
            }
        };
        trials.push(run_trial(trial, start, rejected, opts, &objective));
    }
    let best = trials.iter().min_by(|a, b| a.best_deficit.total_cmp(&b.best_deficit));
    Ok(SearchReport {
        best_deficit: best.map_or(f64::INFINITY, |t| t.best_deficit),
        best_trial: best.map(|t| t.trial),
        trials,
    })
}

/// The deficit of a given point of the search space, used for the
/// all-zero start and for rays through the circle.
pub fn deficit_at(harmonics: Vec<(i64, Complex<f64>)>, alpha_grid: usize, grid: usize) -> Result<(f64, f64)> {
    let d = DiffeoCurve::new(harmonics, grid)?;
    Ok(min_deficit(&d, &snapped_alpha_indices(alpha_grid, grid)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_has_zero_deficit() {
        let (d, _) = deficit_at(Vec::new(), 64, 256).unwrap();
        assert!(d.abs() < 1e-14);
    }

    #[test]
    fn search_is_reproducible() {
        let opts = SearchOptions { trials: 3, max_iterations: 20, seed: 11, ..Default::default() };
        let a = conjecture_search(&opts).unwrap();
        let b = conjecture_search(&opts).unwrap();
        assert_eq!(a, b);
        assert!(!a.counterexample());
        for t in &a.trials {
            assert!(t.best_deficit <= t.start_deficit);
        }
    }
}
