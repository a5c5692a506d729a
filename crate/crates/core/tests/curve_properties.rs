use std::f64::consts::PI;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;

use centroaffine::duality::{polar_dual_sampled, wavefront_area, WaveFront};
use centroaffine::functionals::{
    areal_energy, average_schwarzian, chord_average, curve_from_diffeo, hill_potential, hill_potential_of_diffeo,
    i_alpha, i_alpha_formula, petty_product, DiffeoCurve,
};
use centroaffine::planar::{SampledCurve, Sl2Action};
use centroaffine::random::{random_diffeo, random_sl2, random_unit_speed_curve};

fn diffeo(seed: u64, cutoff: u32, amplitude: f64) -> DiffeoCurve<f64> {
    random_diffeo(cutoff, amplitude, 256, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cross_and_formula_routes_agree(seed in any::<u64>(), cutoff in 1u32..=4) {
        let d = diffeo(seed, cutoff, 0.2);
        let c = curve_from_diffeo(&d).unwrap();
        for k in 1..=20 {
            let a = k as f64 * PI / 21.0;
            prop_assert!((i_alpha(&c, a).unwrap() - i_alpha_formula(&d, a).unwrap()).abs() < 1e-8);
        }
    }

    #[test]
    fn i_alpha_is_sl2_invariant(seed in any::<u64>(), a in 0.05..3.0f64) {
        let c = curve_from_diffeo(&diffeo(seed, 3, 0.2)).unwrap();
        let e = c.sl2_apply(&random_sl2(&mut ChaCha8Rng::seed_from_u64(!seed)));
        prop_assert!((i_alpha(&c, a).unwrap() - i_alpha(&e, a).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn circle_is_critical_to_first_order(n in 2i64..=5, phase in 0.0..(2.0 * PI), a in 0.1..3.0f64) {
        let at = |eps: f64| {
            let d = DiffeoCurve::new(vec![(2 * n, Complex::from_polar(eps, phase))], 256).unwrap();
            i_alpha_formula(&d, a).unwrap()
        };
        let slope = |eps: f64| (at(eps) - at(-eps)) / (2.0 * eps);
        // Richardson removes the eps^2 term of the odd part
        let linear = (100.0 * slope(1e-3) - slope(1e-2)) / 99.0;
        prop_assert!(linear.abs() < 1e-9, "{}", linear);
    }

    #[test]
    fn average_schwarzian_and_petty_bounds(seed in any::<u64>(), cutoff in 1u32..=4) {
        let d = diffeo(seed, cutoff, 0.3);
        prop_assert!(average_schwarzian(&d).unwrap() <= PI + 1e-7);
        let c = curve_from_diffeo(&d).unwrap();
        prop_assert!(petty_product(&c).unwrap() <= PI * PI + 1e-7);
        let k1 = hill_potential(&c).unwrap();
        let k2 = hill_potential_of_diffeo(&d).unwrap();
        prop_assert!((k1.integral() - k2.integral()).abs() < 1e-6);
    }

    #[test]
    fn small_perturbations_keep_petty_below_pi_squared(seed in any::<u64>()) {
        let d = diffeo(seed, 4, 0.1);
        prop_assert!(petty_product(&curve_from_diffeo(&d).unwrap()).unwrap() <= PI * PI + 1e-7);
    }

    #[test]
    fn polar_dual_twice_is_the_antipodal_curve(seed in any::<u64>()) {
        let c = curve_from_diffeo(&diffeo(seed, 2, 0.03)).unwrap();
        // gamma** = gamma'' / [gamma', gamma''] = -k gamma / k needs k away from zero
        let k = hill_potential(&c).unwrap();
        prop_assume!(k.samples().iter().all(|&v| v > 0.2));
        let dd = polar_dual_sampled(&polar_dual_sampled(&c).unwrap()).unwrap();
        for (a, b) in c.samples().iter().zip(dd.samples()) {
            prop_assert!((*a + *b).norm() < 1e-8);
        }
    }

    #[test]
    fn chord_average_stays_below_bound(seed in any::<u64>(), c in 0.1..6.1f64, amplitude in 0.01..0.5f64) {
        let curve = random_unit_speed_curve(256, 4, amplitude, &mut ChaCha8Rng::seed_from_u64(seed));
        let r = chord_average(&curve, c, |x| x).unwrap();
        prop_assert!(r.value <= r.bound);
        let r = chord_average(&curve, c, f64::sqrt).unwrap();
        prop_assert!(r.value <= r.bound);
    }
}

#[test]
fn fourth_harmonic_raises_areal_energy() {
    let d = DiffeoCurve::new(vec![(4, Complex::new(0.05, 0.0))], 256).unwrap();
    let e = areal_energy(&curve_from_diffeo(&d).unwrap(), |x, _| x).unwrap();
    assert!(e > 2.0 * PI, "{e}");
}

#[test]
fn dual_of_circle_has_area_pi() {
    let c = SampledCurve::<f64>::unit_circle(128).unwrap();
    let dual = polar_dual_sampled(&c).unwrap();
    let front = WaveFront::Sampled { period: 2.0 * PI, points: dual.full_period_samples() };
    assert!((wavefront_area(&front).unwrap() - PI).abs() < 1e-12);
}
