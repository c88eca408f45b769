use abelia_core::arith::{factorize, DEFAULT_SIEVE_BUDGET};
use abelia_core::counting::{c3_count_for_a, on_ellipse_count};
use abelia_core::cubic::family_b_bound;
use abelia_core::cyclo::{elements_of, quadratic_of, Rational, SignConvention};
use abelia_core::dirichlet::{coefficient, coefficient_closed, sieve_coefficients};
use abelia_core::enumerate::brute_c3_count_for_a;
use abelia_core::{CycloElement, DoubleDouble, GaloisClass, TraceOneCubic};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-500i64..=500, 1i64..=40).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn element() -> impl Strategy<Value = CycloElement> {
    (rational(), rational()).prop_filter_map("nonzero", |(u, v)| CycloElement::new(u, v).ok())
}

fn family_cubic() -> impl Strategy<Value = TraceOneCubic> {
    (-1500i64..=0)
        .prop_map(|a| {
            let b = family_b_bound(a);
            (-b..=b).map(|b| TraceOneCubic::new(a, b)).filter(|f| f.family_class().is_some()).collect::<Vec<_>>()
        })
        .prop_filter("level has family members", |fs| !fs.is_empty())
        .prop_flat_map(prop::sample::select)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn norm_is_multiplicative(x in element(), y in element()) {
        prop_assert_eq!(x.multiply(&y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn element_to_cubic_inverts(e in element()) {
        for conv in [SignConvention::Table, SignConvention::AsPrinted] {
            let (a, b) = e.to_cubic(conv);
            let g = quadratic_of(&a, &b, conv).unwrap();
            prop_assert_eq!((g.trace, g.norm), (e.trace(), e.norm()));
        }
    }

    #[test]
    fn integral_images_are_integral(e in element()) {
        let (a, b) = e.to_cubic(SignConvention::Table);
        prop_assert_eq!(e.is_integral_image(), a.is_integer() && b.is_integer());
        if let Some(f) = e.to_integral_cubic() {
            prop_assert!(f.in_family());
        }
    }

    #[test]
    fn family_elements_round_trip(f in family_cubic()) {
        let es = elements_of(&f).unwrap();
        prop_assert_eq!(es.len() as u32, f.weight().unwrap());
        for e in es {
            prop_assert_eq!(e.to_integral_cubic(), Some(f));
            prop_assert_eq!(e.norm(), Rational::from_integer(BigInt::from(1 - 3 * f.a)));
        }
    }

    #[test]
    fn coefficient_routes_agree(n in 1u64..5_000_000_000) {
        prop_assert_eq!(coefficient(n).unwrap(), coefficient_closed(n).unwrap());
    }

    #[test]
    fn coefficient_multiplicative(m in 1u64..200_000, n in 1u64..200_000) {
        prop_assume!(num_gcd(m, n) == 1);
        prop_assert_eq!(
            u64::from(coefficient(m * n).unwrap()),
            u64::from(coefficient(m).unwrap()) * u64::from(coefficient(n).unwrap())
        );
    }

    #[test]
    fn factorization_reconstructs(n in 1u64..u64::MAX / 2) {
        let f = factorize(n).unwrap();
        let prod = f.factors().iter().fold(1u128, |acc, &(p, e)| acc * u128::from(p).pow(e));
        prop_assert_eq!(prod, u128::from(n));
    }

    #[test]
    fn c3_formula_matches_scan(a in -1200i64..=0) {
        prop_assert_eq!(c3_count_for_a(a).unwrap(), brute_c3_count_for_a(a).unwrap());
    }

    #[test]
    fn weighted_split_identity(k in 0u64..4000) {
        // d_n = 2·#C3 + #(lattice points)/3 at every height² n = 1 + 3k
        let n = 1 + 3 * k;
        let a = -(k as i64);
        let d = u64::from(coefficient(n).unwrap());
        prop_assert_eq!(d, 2 * c3_count_for_a(a).unwrap() + on_ellipse_count(n).unwrap() / 3);
    }

    #[test]
    fn double_double_field_ops(x in -1e6f64..1e6, y in 1e-3f64..1e6) {
        let (dx, dy) = (DoubleDouble::from_f64(x), DoubleDouble::from_f64(y));
        let back = (dx * dy) / dy;
        prop_assert!((back - dx).abs().to_f64() <= 1e-28 * x.abs().max(1.0));
        let s = dy.sqrt();
        prop_assert!((s * s - dy).abs().to_f64() <= 1e-28 * y);
        prop_assert!(((dx + dy) - dy - dx).abs().to_f64() <= 1e-28 * x.abs().max(y));
    }
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn no_c3_with_positive_a_small_box() {
    for a in 1..=20i64 {
        for b in -3000..=3000i64 {
            assert_ne!(TraceOneCubic::new(a, b).classify(), GaloisClass::C3Irreducible, "({a}, {b})");
        }
    }
}

#[test]
fn coefficients_vanish_off_one_mod_three() {
    let t = sieve_coefficients(300_000, DEFAULT_SIEVE_BUDGET).unwrap();
    for n in 1..=300_000u64 {
        if n % 3 != 1 {
            assert_eq!(t.get(n), Some(0), "n = {n}");
        }
    }
}
