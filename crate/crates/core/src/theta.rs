//! Cone-restricted sums of `q^{quadratic}` with polynomial and sign weights.
//!
//! A two-variable sum over a cone is reindexed to `n', m' >= 0` by an
//! affine substitution per coordinate ([`Ray`]). Truncation is only allowed
//! when the folded exponent is eventually increasing in both coordinates;
//! otherwise the sum is rejected instead of being cut at an arbitrary box.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{Exponent, Series};

/// Exact rational used for the quadratic-form coefficients.
pub type Q = Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThetaError {
    #[error("cone {cone}: exponent is not eventually increasing ({reason})")]
    NonMonotoneCone { cone: usize, reason: String },
    #[error("one-variable exponent needs a positive leading coefficient")]
    DivergentRange,
    #[error("exponent {0} is not a valid rational exponent")]
    BadExponent(String),
}

type Result<T> = std::result::Result<T, ThetaError>;

/// How an original coordinate is recovered from a folded one `k >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ray {
    /// `x = k`
    NonNeg,
    /// `x = k + 1`
    Pos,
    /// `x = -k - 1`
    Neg,
    /// `x = 0` (only `k = 0`)
    Zero,
}

impl Ray {
    /// `(slope, offset)` with `x = slope * k + offset`.
    fn affine(self) -> (i128, i128) {
        match self {
            Ray::NonNeg => (1, 0),
            Ray::Pos => (1, 1),
            Ray::Neg => (-1, -1),
            Ray::Zero => (0, 0),
        }
    }

    fn contains(self, x: i64) -> bool {
        match self {
            Ray::NonNeg => x >= 0,
            Ray::Pos => x >= 1,
            Ray::Neg => x <= -1,
            Ray::Zero => x == 0,
        }
    }
}

/// One summation cone with an overall integer multiplier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub n: Ray,
    pub m: Ray,
    pub sign: i64,
}

/// `sum_t c_t n^i m^j`, times `(-1)^{alpha n + beta m}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight {
    pub terms: Vec<(i64, u32, u32)>,
    pub alpha: u8,
    pub beta: u8,
}

impl Weight {
    pub fn constant(c: i64) -> Weight {
        Weight {
            terms: vec![(c, 0, 0)],
            alpha: 0,
            beta: 0,
        }
    }

    fn eval(&self, n: i64, m: i64) -> BigInt {
        let mut v = BigInt::zero();
        for &(c, i, j) in &self.terms {
            v += BigInt::from(c) * BigInt::from(n).pow(i) * BigInt::from(m).pow(j);
        }
        if (self.alpha as i64 * n + self.beta as i64 * m).rem_euclid(2) == 1 {
            -v
        } else {
            v
        }
    }
}

/// `a n^2 + h n m + c m^2 + d n + e m + k` summed over cones with a weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeThetaSpec {
    pub quad: (Q, Q, Q),
    pub lin: (Q, Q),
    pub const_exp: Q,
    pub weight: Weight,
    pub cones: Vec<Cone>,
}

/// Folded form `a k^2 + h k l + c l^2 + d k + e l + f` over `k, l >= 0`.
#[derive(Clone, Copy, Debug)]
struct Folded {
    a: Q,
    h: Q,
    c: Q,
    d: Q,
    e: Q,
    f: Q,
    n_free: bool,
    m_free: bool,
}

impl Folded {
    fn at(&self, k: i64, l: i64) -> Q {
        let (k, l) = (Q::from(k as i128), Q::from(l as i128));
        self.a * k * k + self.h * k * l + self.c * l * l + self.d * k + self.e * l + self.f
    }

    /// Smallest `k` from which the form strictly increases in `k`, for every `l >= 0`.
    fn n_threshold(&self) -> i64 {
        // f(k+1,l) - f(k,l) = a(2k+1) + h l + d >= a(2k+1) + d
        first_positive(self.a * 2, self.a + self.d)
    }

    fn m_threshold(&self) -> i64 {
        first_positive(self.c * 2, self.c + self.e)
    }
}

/// Smallest `x >= 0` with `s x + t > 0`, given `s > 0` or `t > 0`.
fn first_positive(s: Q, t: Q) -> i64 {
    if t > Q::zero() {
        return 0;
    }
    // s > 0 here
    let x = (-t / s).floor() + Q::from(1);
    x.to_integer().max(0) as i64
}

impl ConeThetaSpec {
    fn fold(&self, cone: &Cone) -> Folded {
        let (a, h, c) = self.quad;
        let (d, e) = self.lin;
        let (sn, tn) = cone.n.affine();
        let (sm, tm) = cone.m.affine();
        let (sn, tn, sm, tm) = (Q::from(sn), Q::from(tn), Q::from(sm), Q::from(tm));
        // n = sn k + tn, m = sm l + tm
        Folded {
            a: a * sn * sn,
            h: h * sn * sm,
            c: c * sm * sm,
            d: a * Q::from(2) * sn * tn + h * sn * tm + d * sn,
            e: c * Q::from(2) * sm * tm + h * tn * sm + e * sm,
            f: a * tn * tn + h * tn * tm + c * tm * tm + d * tn + e * tm + self.const_exp,
            n_free: cone.n != Ray::Zero,
            m_free: cone.m != Ray::Zero,
        }
    }

    fn check(&self, idx: usize, f: &Folded) -> Result<()> {
        let fail = |reason: &str| {
            Err(ThetaError::NonMonotoneCone {
                cone: idx,
                reason: reason.to_string(),
            })
        };
        let zero = Q::zero();
        if f.n_free && f.m_free && f.h < zero {
            return fail("negative mixed coefficient after folding");
        }
        if f.n_free && (f.a < zero || (f.a.is_zero() && f.d <= zero)) {
            return fail("first coordinate does not grow");
        }
        if f.m_free && (f.c < zero || (f.c.is_zero() && f.e <= zero)) {
            return fail("second coordinate does not grow");
        }
        Ok(())
    }

    /// Checks every cone without summing.
    pub fn validate(&self) -> Result<()> {
        for (i, cone) in self.cones.iter().enumerate() {
            self.check(i, &self.fold(cone))?;
        }
        Ok(())
    }
}

fn unfold(ray: Ray, k: i64) -> i64 {
    let (s, t) = ray.affine();
    s as i64 * k + t as i64
}

fn to_exponent(e: Q) -> Result<Exponent> {
    let (n, d) = (*e.numer(), *e.denom());
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => Ok(Exponent::new(n, d)),
        _ => Err(ThetaError::BadExponent(e.to_string())),
    }
}

fn collect(terms: BTreeMap<Exponent, BigInt>, order: i64) -> Series {
    let denom = terms.keys().fold(1i64, |d, e| d.lcm(e.denom()));
    let terms = terms
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e, BigRational::from_integer(c)));
    Series::from_terms(denom, terms, Exponent::from_integer(order)).expect("lattice holds all exponents")
}

/// Exact truncation of the cone sum through `q^order`.
pub fn cone_sum(spec: &ConeThetaSpec, order: i64) -> Result<Series> {
    let top = Q::from(order as i128);
    let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    for (idx, cone) in spec.cones.iter().enumerate() {
        let f = spec.fold(cone);
        spec.check(idx, &f)?;
        let n0 = if f.n_free { f.n_threshold() } else { 0 };
        let m0 = if f.m_free { f.m_threshold() } else { 0 };
        let mut l = 0i64;
        loop {
            if !f.m_free && l > 0 {
                break;
            }
            // beyond m0 the minimum over k increases with l
            let row_min = (0..=n0).map(|k| f.at(k, l)).min().expect("nonempty");
            if l >= m0 && row_min > top {
                break;
            }
            let mut k = 0i64;
            loop {
                if !f.n_free && k > 0 {
                    break;
                }
                let e = f.at(k, l);
                if k >= n0 && e > top {
                    break;
                }
                if e <= top {
                    let (n, m) = (unfold(cone.n, k), unfold(cone.m, l));
                    let w = spec.weight.eval(n, m) * cone.sign;
                    if !w.is_zero() {
                        *acc.entry(to_exponent(e)?).or_default() += w;
                    }
                }
                k += 1;
            }
            l += 1;
        }
    }
    Ok(collect(acc, order))
}

/// Direct summation over the box `|n|, |m| <= bound`, testing cone
/// membership in the original coordinates. Used to cross-check folding.
pub fn cone_sum_box(spec: &ConeThetaSpec, order: i64, bound: i64) -> Series {
    let (a, h, c) = spec.quad;
    let (d, e) = spec.lin;
    let top = Q::from(order as i128);
    let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    for n in -bound..=bound {
        for m in -bound..=bound {
            let sign: i64 = spec
                .cones
                .iter()
                .filter(|cn| cn.n.contains(n) && cn.m.contains(m))
                .map(|cn| cn.sign)
                .sum();
            if sign == 0 {
                continue;
            }
            let (qn, qm) = (Q::from(n as i128), Q::from(m as i128));
            let ex = a * qn * qn + h * qn * qm + c * qm * qm + d * qn + e * qm + spec.const_exp;
            if ex <= top {
                let w = spec.weight.eval(n, m) * sign;
                *acc.entry(to_exponent(ex).expect("small exponent")).or_default() += w;
            }
        }
    }
    collect(acc, order)
}

/// Summation range for [`theta_1d`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Range1D {
    From(i64),
    All,
}

/// `sum_n w(n) q^{a n^2 + b n + c}` with `w(n) = poly(n) (-1)^{alpha n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedTheta1D {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub poly: Vec<(i64, u32)>,
    pub alternating: bool,
    pub range: Range1D,
}

/// Exact truncation through `q^order`.
pub fn theta_1d(spec: &WeightedTheta1D, order: i64) -> Result<Series> {
    if spec.a <= Q::zero() {
        return Err(ThetaError::DivergentRange);
    }
    let top = Q::from(order as i128);
    let ex = |n: i64| {
        let q = Q::from(n as i128);
        spec.a * q * q + spec.b * q + spec.c
    };
    let weight = |n: i64| {
        let mut v = BigInt::zero();
        for &(c, i) in &spec.poly {
            v += BigInt::from(c) * BigInt::from(n).pow(i);
        }
        if spec.alternating && n.rem_euclid(2) == 1 {
            -v
        } else {
            v
        }
    };
    // vertex of the parabola; beyond it the exponent is monotone
    let vertex = (-spec.b / (spec.a * Q::from(2))).floor().to_integer() as i64;
    let mut acc: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    let mut add = |n: i64| -> Result<()> {
        let e = ex(n);
        if e <= top {
            let w = weight(n);
            if !w.is_zero() {
                *acc.entry(to_exponent(e)?).or_default() += w;
            }
        }
        Ok(())
    };
    let lo = match spec.range {
        Range1D::From(n0) => n0,
        Range1D::All => i64::MIN,
    };
    let start = vertex.max(lo);
    let mut n = start;
    while n <= vertex + 1 || ex(n) <= top {
        add(n)?;
        n += 1;
    }
    let mut n = start - 1;
    while n >= lo && (n >= vertex - 1 || ex(n) <= top) {
        add(n)?;
        n -= 1;
    }
    Ok(collect(acc, order))
}

/// Convenience for integer coefficients.
pub fn q(n: i128) -> Q {
    Q::from(n)
}

/// Convenience for `n/d`.
pub fn qf(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn first_cone() -> Cone {
        Cone {
            n: Ray::NonNeg,
            m: Ray::NonNeg,
            sign: 1,
        }
    }

    #[test]
    fn zero_weight_is_zero() {
        let spec = ConeThetaSpec {
            quad: (qf(1, 2), q(2), qf(3, 2)),
            lin: (qf(3, 2), qf(5, 2)),
            const_exp: q(0),
            weight: Weight::constant(0),
            cones: vec![first_cone()],
        };
        assert!(cone_sum(&spec, 10).unwrap().is_zero());
    }

    #[test]
    fn indefinite_direction_is_rejected() {
        // n^2 - m^2 + n + m on the positive quadrant: m-direction decreases
        let spec = ConeThetaSpec {
            quad: (q(1), q(0), q(-1)),
            lin: (q(1), q(1)),
            const_exp: q(0),
            weight: Weight::constant(1),
            cones: vec![first_cone()],
        };
        assert!(matches!(
            cone_sum(&spec, 5),
            Err(ThetaError::NonMonotoneCone { .. })
        ));
    }

    #[test]
    fn jacobi_triple_product_sum() {
        let spec = WeightedTheta1D {
            a: qf(1, 2),
            b: qf(1, 2),
            c: q(0),
            poly: vec![(2, 1), (1, 0)],
            alternating: true,
            range: Range1D::From(0),
        };
        let s = theta_1d(&spec, 15).unwrap();
        let want = catalog::qinf(15).pow(3).unwrap();
        assert!(Series::equal_to_order(&s, &want, 15.into()).unwrap().is_equal());
    }

    #[test]
    fn minimal_exponent_one() {
        let spec = WeightedTheta1D {
            a: q(1),
            b: q(0),
            c: q(0),
            poly: vec![(1, 0)],
            alternating: false,
            range: Range1D::From(1),
        };
        assert!(theta_1d(&spec, 0).unwrap().is_zero());
    }

    #[test]
    fn divergent_1d() {
        let spec = WeightedTheta1D {
            a: q(0),
            b: q(1),
            c: q(0),
            poly: vec![(1, 0)],
            alternating: false,
            range: Range1D::All,
        };
        assert_eq!(theta_1d(&spec, 3), Err(ThetaError::DivergentRange));
    }

    #[test]
    fn pentagonal_theorem_two_sided() {
        let spec = WeightedTheta1D {
            a: qf(3, 2),
            b: qf(-1, 2),
            c: q(0),
            poly: vec![(1, 0)],
            alternating: true,
            range: Range1D::All,
        };
        let s = theta_1d(&spec, 30).unwrap();
        assert!(Series::equal_to_order(&s, &catalog::qinf(30), 30.into()).unwrap().is_equal());
    }
}
