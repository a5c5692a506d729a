use approx::assert_abs_diff_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use centroaffine::duality::{bs_bound_polygon, bs_product_polygon, dual_area_from_cross_products, dual_polygon};
use centroaffine::planar::{area_form, Sl2Action, StarPolygon, Vec2};
use centroaffine::polygon_space::{
    closure_residual, cross_products, f_n, f_n_lower_bound, frieze_determinant, reconstruct, CrossProductSequence,
};
use centroaffine::random::{random_sl2, random_star_polygon};
use centroaffine::Rational;

fn polygon(seed: u64, n: usize) -> StarPolygon<f64> {
    random_star_polygon(n, 0.2, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn area_form_is_bilinear_and_antisymmetric(a in -1e3..1e3f64, b in -1e3..1e3f64, c in -1e3..1e3f64,
                                               d in -1e3..1e3f64, s in -10.0..10.0f64) {
        let (u, v) = (Vec2::new(a, b), Vec2::new(c, d));
        prop_assert_eq!(area_form(u, v), -area_form(v, u));
        let w = Vec2::new(b, c);
        let lhs = area_form(u * s + w, v);
        let rhs = s * area_form(u, v) + area_form(w, v);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn cross_product_sum_is_bounded_below(seed in any::<u64>(), n in 3usize..=12) {
        let p = polygon(seed, n);
        prop_assert!(f_n(&cross_products(&p)) >= f_n_lower_bound(n) - 1e-9);
    }

    #[test]
    fn cross_products_are_sl2_invariant(seed in any::<u64>(), n in 3usize..=9) {
        let p = polygon(seed, n);
        let q = p.sl2_apply(&random_sl2(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed)));
        for (a, b) in cross_products(&p).values().iter().zip(cross_products(&q).values()) {
            prop_assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn reconstruction_round_trips(seed in any::<u64>(), n in 3usize..=10) {
        let p = polygon(seed, n);
        let c = cross_products(&p);
        let q = reconstruct(&c, p.vertex(-1), p.vertex(0)).unwrap();
        for (a, b) in c.values().iter().zip(cross_products(&q).values()) {
            prop_assert!((a - b).abs() < 1e-9);
        }
        for r in closure_residual(&c) {
            prop_assert!(r.abs() < 1e-8);
        }
    }

    #[test]
    fn frieze_entries_are_vertex_cross_products(seed in any::<u64>(), n in 3usize..=8) {
        let p = polygon(seed, n);
        let c = cross_products(&p);
        let n = n as i64;
        for i in 0..n {
            for j in i + 2..i + n {
                let f = frieze_determinant(&c, i, j).unwrap();
                prop_assert!((f - area_form(p.vertex(i), p.vertex(j))).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn dual_area_and_blaschke_santalo(seed in any::<u64>(), n in 3usize..=10) {
        let p = polygon(seed, n);
        let d = dual_polygon(&p);
        prop_assert!(d.pairing_residual(&p) < 1e-9);
        prop_assert!((d.area() - dual_area_from_cross_products(&p)).abs() < 1e-8);
        prop_assert!(bs_product_polygon(&p) <= bs_bound_polygon(n) + 1e-8);
    }

    #[test]
    fn rational_square_family_is_exact(num in 1i64..50, den in 1i64..50) {
        let x = Rational::new(num, den);
        let y = Rational::from_integer(2) / x;
        let c = CrossProductSequence::closed(vec![x, y, x, y]).unwrap();
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        let p = reconstruct(&c, Vec2::new(zero, -one), Vec2::new(one, zero)).unwrap();
        let back = cross_products(&p);
        prop_assert_eq!(back.values(), c.values());
        prop_assert_eq!(closure_residual(&c), [zero, zero, zero]);
        // A(V) A(V*) = n (2n - F_n) exactly
        prop_assert_eq!(bs_product_polygon(&p), Rational::from_integer(4) * (Rational::from_integer(8) - f_n(&c)));
    }
}

#[test]
fn regular_hexagon_attains_both_bounds() {
    let n = 6;
    let r = (std::f64::consts::PI / n as f64).sin().recip().sqrt();
    let p = StarPolygon::new((0..n).map(|i| Vec2::polar(i as f64 * std::f64::consts::PI / n as f64) * r).collect())
        .unwrap();
    assert_abs_diff_eq!(f_n(&cross_products(&p)), f_n_lower_bound(n), epsilon = 1e-12);
    assert_abs_diff_eq!(bs_product_polygon(&p), bs_bound_polygon(n), epsilon = 1e-12);
}
