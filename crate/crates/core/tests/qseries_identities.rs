use qgraph_core::catalog::{
    self, inverse_pochhammers, lambert_sum, named_series, poch, poch_inf, LambertKind, CATALOG,
};
use qgraph_core::{Comparison, Exponent, Series};

fn same(a: &Series, b: &Series, order: i64) -> bool {
    Series::equal_to_order(a, b, Exponent::from_integer(order)).unwrap() == Comparison::Equal
}

#[test]
fn euler_sum_at_integer_powers() {
    let n = 40;
    let ip = inverse_pochhammers(n as usize, n);
    for k in 1..=3i64 {
        let mut lhs = Series::zero(n);
        for j in 0..=n / k {
            lhs = &lhs + &ip[j as usize].shift_int(k * j);
        }
        let rhs = poch_inf(k, n).invert().unwrap();
        assert!(same(&lhs, &rhs, n), "zeta = q^{k}");
    }
}

#[test]
fn q_binomial_sum_at_integer_powers() {
    let n = 25;
    let ip = inverse_pochhammers(n as usize, n);
    for s in 1..=3i64 {
        for t in 1..=3i64 {
            let mut lhs = Series::zero(n);
            for j in 0..=n / t {
                let term = &poch(s + 1, j as u64, n) * &ip[j as usize];
                lhs = &lhs + &term.shift_int(t * j);
            }
            let rhs = &poch_inf(s + t + 1, n) * &poch_inf(t, n).invert().unwrap();
            assert!(same(&lhs, &rhs, n), "s = q^{s}, t = q^{t}");
        }
    }
}

#[test]
fn divisor_series_two_ways() {
    let a = lambert_sum(0, 1, LambertKind::Plain, 40).unwrap();
    let b = named_series("D", 40).unwrap();
    assert!(same(&a, &b, 40));
    assert_eq!(a.i64_coeffs(1, 8).unwrap(), [1, 2, 2, 3, 2, 4, 2, 4]);
}

#[test]
fn divisor_sums() {
    let s1 = lambert_sum(1, 1, LambertKind::Plain, 6).unwrap();
    assert_eq!(s1.i64_coeffs(1, 6).unwrap(), [1, 3, 4, 7, 6, 12]);
    let e2 = catalog::e2(4);
    assert_eq!(e2.i64_coeffs(0, 4).unwrap(), [1, -24, -72, -96, -168]);
    let l2 = lambert_sum(0, 2, LambertKind::Plain, 30).unwrap();
    let from_e2 = (&Series::one(30) - &catalog::e2(30)).scale(&qgraph_core::series::frac(1, 24));
    assert!(same(&l2, &from_e2, 30));
}

#[test]
fn u_one_direct() {
    let n = 10;
    let mut direct = Series::zero(n);
    for k in 0..=9 {
        let p = poch(1, k as u64, n);
        direct = &direct + &(&p * &p).shift_int(k + 1);
    }
    assert!(same(&catalog::u_one(n), &direct, n));
}

#[test]
fn catalog_truncation_monotone() {
    for e in CATALOG {
        let hi = (e.build)(30);
        let lo = (e.build)(15);
        let order = Exponent::from_integer(15);
        assert!(
            Series::equal_to_order(&hi.truncate(order), &lo, order).unwrap().is_equal(),
            "{}",
            e.name
        );
    }
}

#[test]
fn rogers_ramanujan_coefficients() {
    let rr = named_series("RR", 12).unwrap();
    assert_eq!(rr.i64_coeffs(0, 12).unwrap(), [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9]);
}

#[test]
fn framing_names() {
    let a = named_series("A(1,2)", 20).unwrap();
    assert!(same(&a, &catalog::framing_closed_form(1, 2, 20), 20));
    assert!(named_series("A(-1,2)", 5).is_err());
}
