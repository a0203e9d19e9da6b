use num_rational::BigRational;
use proptest::prelude::*;
use qgraph_core::series::frac;
use qgraph_core::{Comparison, Exponent, Series};

const N: i64 = 15;

fn series(order: i64) -> impl Strategy<Value = Series> {
    (
        -2i64..3,
        prop::collection::vec(-6i64..7, 0..10),
        1i64..4,
    )
        .prop_map(move |(start, coeffs, den)| {
            Series::from_coeffs(start, &coeffs, order).scale(&frac(1, den))
        })
}

fn unit(order: i64) -> impl Strategy<Value = Series> {
    (
        -2i64..3,
        prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5]),
        prop::collection::vec(-6i64..7, 0..10),
    )
        .prop_map(move |(start, lead, rest)| {
            let mut c = vec![lead];
            c.extend(rest);
            Series::from_coeffs(start, &c, order)
        })
}

fn same(a: &Series, b: &Series) -> bool {
    let order = a.order().min(b.order());
    Series::equal_to_order(a, b, order).unwrap() == Comparison::Equal
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn mul_commutes(a in series(N), b in series(N)) {
        prop_assert!(same(&(&a * &b), &(&b * &a)));
    }

    #[test]
    fn mul_associates(a in series(N), b in series(N), c in series(N)) {
        prop_assert!(same(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
    }

    #[test]
    fn mul_distributes(a in series(N), b in series(N), c in series(N)) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert!(same(&lhs, &rhs));
    }

    #[test]
    fn add_inverse_and_identities(a in series(N)) {
        prop_assert!((&a - &a).is_zero());
        prop_assert!(same(&(&a * &Series::one(N)), &a));
        prop_assert!(same(&(&a + &Series::zero(N)), &a));
    }

    #[test]
    fn invert_is_two_sided(a in unit(N)) {
        let inv = a.invert().unwrap();
        let p = &a * &inv;
        let q = &inv * &a;
        prop_assert!(p.order() >= Exponent::from_integer(0));
        prop_assert!(same(&p, &Series::one(N)));
        prop_assert!(same(&q, &Series::one(N)));
    }

    #[test]
    fn truncation_monotone(a in unit(20), b in series(20), m in 3i64..15) {
        let e = Exponent::from_integer(m);
        let full = &(&a * &b) + &a.invert().unwrap();
        let (at, bt) = (a.truncate(e), b.truncate(e));
        let direct = &(&at * &bt) + &at.invert().unwrap();
        let order = direct.order().min(full.order());
        prop_assert!(Series::equal_to_order(&full.truncate(order), &direct, order).unwrap().is_equal());
    }

    #[test]
    fn shift_round_trip(a in series(N), k in -5i64..6) {
        prop_assert_eq!(a.shift_int(k).shift_int(-k), a.clone());
        let monomial = Series::q_pow(k, N + k.abs() + 5);
        prop_assert!(same(&(&a * &monomial), &a.shift_int(k)));
    }

    #[test]
    fn pow_matches_repeated_product(a in unit(10), k in 0i64..4) {
        let mut p = Series::one(10);
        for _ in 0..k {
            p = &p * &a;
        }
        prop_assert!(same(&a.pow(k).unwrap(), &p));
        prop_assert!(same(&a.pow(-k).unwrap(), &p.invert().unwrap()));
    }

    #[test]
    fn scale_is_linear(a in series(N), b in series(N), n in -5i64..6, d in 1i64..5) {
        let c: BigRational = frac(n, d);
        prop_assert!(same(&(&a + &b).scale(&c), &(&a.scale(&c) + &b.scale(&c))));
    }
}

#[test]
fn partitions_from_euler_product() {
    let p = qgraph_core::catalog::qinf(9).invert().unwrap();
    assert_eq!(p.i64_coeffs(0, 9).unwrap(), [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
}

#[test]
fn fractional_lattice_products() {
    let half = Series::monomial(frac(1, 1), Exponent::new(1, 2), 6);
    let one_minus = &Series::one(6) - &half;
    let inv = one_minus.invert().unwrap();
    for k in 0..=12 {
        assert_eq!(inv.coeff(Exponent::new(k, 2)).unwrap(), frac(1, 1));
    }
    let sq = &half * &half;
    assert!(same(&sq, &Series::q_pow(1, 6)));
}
