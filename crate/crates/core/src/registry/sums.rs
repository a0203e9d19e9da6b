//! Small expansion helpers shared by the registry builders.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::catalog::{self, IntAcc};
use crate::series::{Exponent, Series};

pub(super) fn qi(n: i64) -> Series {
    catalog::qinf(n)
}

/// `(q)_inf^k` for any integer `k`.
pub(super) fn qi_pow(k: i64, n: i64) -> Series {
    qi(n).pow(k).expect("(q)_inf is a unit")
}

pub(super) fn x(e: i64, n: i64) -> Series {
    Series::q_pow(e, n)
}

pub(super) fn geo(k: i64, n: i64) -> Series {
    catalog::geometric(k, n)
}

pub(super) fn recip(s: &Series) -> Series {
    s.invert().expect("unit leading term")
}

/// `(q)_j` for `0 <= j <= kmax`.
pub(super) fn pochs(kmax: usize, n: i64) -> Vec<Series> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut cur = Series::one(n);
    out.push(cur.clone());
    for j in 1..=kmax as i64 {
        cur = &cur - &cur.shift_int(j);
        out.push(cur.clone());
    }
    out
}

pub(super) fn total(n: i64, terms: impl IntoIterator<Item = Series>) -> Series {
    terms.into_iter().fold(Series::zero(n), |a, t| &a + &t)
}

/// `(-1)^k`
pub(super) fn sgn(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(super) fn sigma1(n: i64) -> Series {
    catalog::lambert_sum(1, 1, catalog::LambertKind::Plain, n).expect("registered")
}

pub(super) fn sigma2(n: i64) -> Series {
    catalog::lambert_sum(2, 1, catalog::LambertKind::Plain, n).expect("registered")
}

/// Accumulator for sums of monomials with integer coefficients through `q^n`.
pub(super) struct Acc(IntAcc);

impl Acc {
    pub(super) fn new(n: i64) -> Acc {
        Acc(IntAcc::new(n))
    }

    pub(super) fn add(&mut self, e: i64, v: i64) {
        self.0.add(e, v);
    }

    pub(super) fn done(self) -> Series {
        self.0.into_series()
    }
}

/// Accumulator for rational exponents.
pub(super) struct FracAcc {
    terms: BTreeMap<Exponent, BigInt>,
    order: i64,
}

impl FracAcc {
    pub(super) fn new(order: i64) -> FracAcc {
        FracAcc {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub(super) fn add(&mut self, e: Exponent, v: i64) {
        if e <= Exponent::from_integer(self.order) {
            *self.terms.entry(e).or_default() += v;
        }
    }

    pub(super) fn done(self) -> Series {
        let denom = self.terms.keys().fold(1i64, |d, e| d.lcm(e.denom()));
        Series::from_terms(
            denom,
            self.terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(c))),
            Exponent::from_integer(self.order),
        )
        .expect("lattice contains every exponent")
    }
}
