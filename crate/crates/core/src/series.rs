//! Exact truncated Laurent series in `q`.
//!
//! A [`Series`] stores rational coefficients on the exponent lattice
//! `(1/D)·Z` together with an explicit truncation order `N`: every
//! coefficient at an exponent `<= N` is exact, nothing beyond `N` is known.
//! Binary operations refine lattices to the lcm of the denominators and
//! compute the tightest order that the inputs justify.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exponents and truncation orders.
pub type Exponent = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("leading coefficient vanishes throughout the truncation window")]
    ZeroLeadingCoefficient,
    #[error("exponent {requested} exceeds the valid truncation order {order}")]
    OrderExceeded {
        requested: Exponent,
        order: Exponent,
    },
    #[error("exponent {exponent} is not on the lattice (1/{denom})Z")]
    OffLattice { exponent: Exponent, denom: i64 },
    #[error("lattice denominator must be positive, got {0}")]
    InvalidDenominator(i64),
}

/// Exact truncated Laurent series with rational coefficients.
///
/// Internally exponents are kept as scaled integer indices `e·D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    denom: i64,
    /// Scaled index of `coeffs[0]`; equals `order + 1` for the zero series.
    start: i64,
    /// Scaled truncation index, inclusive.
    order: i64,
    coeffs: Vec<BigRational>,
}

/// Outcome of comparing two series up to an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Mismatch {
        exponent: Exponent,
        left: BigRational,
        right: BigRational,
    },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal)
    }
}

fn scaled(e: Exponent, denom: i64) -> Result<i64, SeriesError> {
    let num = *e.numer() as i128 * denom as i128;
    let den = *e.denom() as i128;
    if num % den != 0 {
        return Err(SeriesError::OffLattice { exponent: e, denom });
    }
    Ok((num / den) as i64)
}

/// Largest lattice index not exceeding `e`.
fn scaled_floor(e: Exponent, denom: i64) -> i64 {
    let num = *e.numer() as i128 * denom as i128;
    let den = *e.denom() as i128;
    Integer::div_floor(&num, &den) as i64
}

impl Series {
    fn from_parts(denom: i64, start: i64, order: i64, coeffs: Vec<BigRational>) -> Series {
        let mut s = Series {
            denom,
            start,
            order,
            coeffs,
        };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.start + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.start += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.order + 1;
            }
        }
    }

    /// The zero series known through `order`.
    pub fn zero(order: i64) -> Series {
        Series::from_parts(1, order + 1, order, Vec::new())
    }

    pub fn one(order: i64) -> Series {
        Series::monomial(BigRational::one(), Exponent::from_integer(0), order)
    }

    /// `c·q^e + O(q^{order+1})`, placed on the coarsest lattice containing `e`.
    pub fn monomial(c: BigRational, e: Exponent, order: i64) -> Series {
        let denom = *e.denom();
        let idx = *e.numer();
        Series::from_parts(denom, idx, order * denom, vec![c])
    }

    /// `q^e` with integer exponent.
    pub fn q_pow(e: i64, order: i64) -> Series {
        Series::monomial(BigRational::one(), Exponent::from_integer(e), order)
    }

    /// Builds an integral-lattice series from dense coefficients starting at
    /// exponent `start`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(start: i64, coeffs: &[T], order: i64) -> Series {
        Series::from_parts(
            1,
            start,
            order,
            coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone().into()))
                .collect(),
        )
    }

    /// Builds a series on lattice `(1/denom)·Z` from dense coefficients
    /// indexed by scaled exponent, starting at scaled index `start`.
    /// `order_index` is the scaled truncation index.
    pub fn from_scaled(
        denom: i64,
        start: i64,
        order_index: i64,
        coeffs: Vec<BigRational>,
    ) -> Result<Series, SeriesError> {
        if denom <= 0 {
            return Err(SeriesError::InvalidDenominator(denom));
        }
        Ok(Series::from_parts(denom, start, order_index, coeffs))
    }

    /// Builds a series from `(exponent, coefficient)` terms. Terms above the
    /// order are dropped; off-lattice exponents are errors.
    pub fn from_terms<I>(denom: i64, terms: I, order: Exponent) -> Result<Series, SeriesError>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        if denom <= 0 {
            return Err(SeriesError::InvalidDenominator(denom));
        }
        let order_idx = scaled_floor(order, denom);
        let mut items = Vec::new();
        for (e, c) in terms {
            let idx = scaled(e, denom)?;
            if idx <= order_idx {
                items.push((idx, c));
            }
        }
        let start = items.iter().map(|(i, _)| *i).min().unwrap_or(order_idx + 1);
        let mut coeffs = vec![BigRational::zero(); (order_idx - start + 1).max(0) as usize];
        for (idx, c) in items {
            coeffs[(idx - start) as usize] += c;
        }
        Ok(Series::from_parts(denom, start, order_idx, coeffs))
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Truncation order: coefficients are exact for exponents `<= order()`.
    pub fn order(&self) -> Exponent {
        Exponent::new(self.order, self.denom)
    }

    /// Lowest exponent with a nonzero coefficient, `None` for the zero series.
    pub fn min_exp(&self) -> Option<Exponent> {
        (!self.is_zero()).then(|| Exponent::new(self.start, self.denom))
    }

    /// Guaranteed lower bound on the valuation: `min_exp` when nonzero,
    /// otherwise one lattice step above the order.
    pub fn valuation(&self) -> Exponent {
        Exponent::new(self.start, self.denom)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigRational)> + '_ {
        let (start, denom) = (self.start, self.denom);
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (Exponent::new(start + i as i64, denom), c))
    }

    /// Exact coefficient at `e`; zero below the support or off the lattice.
    pub fn coeff(&self, e: Exponent) -> Result<BigRational, SeriesError> {
        if e > self.order() {
            return Err(SeriesError::OrderExceeded {
                requested: e,
                order: self.order(),
            });
        }
        let Ok(idx) = scaled(e, self.denom) else {
            return Ok(BigRational::zero());
        };
        Ok(self.coeff_at_index(idx))
    }

    /// Coefficient at an integer exponent.
    pub fn coeff_int(&self, e: i64) -> Result<BigRational, SeriesError> {
        self.coeff(Exponent::from_integer(e))
    }

    fn coeff_at_index(&self, idx: i64) -> BigRational {
        if idx < self.start || idx > self.order {
            return BigRational::zero();
        }
        self.coeffs
            .get((idx - self.start) as usize)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Integer coefficients for exponents `from..=to`; panics if a
    /// coefficient is not integral. Intended for tests and display.
    pub fn int_coeffs(&self, from: i64, to: i64) -> Result<Vec<BigInt>, SeriesError> {
        (from..=to)
            .map(|e| {
                let c = self.coeff_int(e)?;
                assert!(c.is_integer(), "non-integral coefficient {c} at q^{e}");
                Ok(c.to_integer())
            })
            .collect()
    }

    /// Same as [`Series::int_coeffs`] but as `i64`.
    pub fn i64_coeffs(&self, from: i64, to: i64) -> Result<Vec<i64>, SeriesError> {
        Ok(self
            .int_coeffs(from, to)?
            .into_iter()
            .map(|c| c.to_i64().expect("coefficient fits in i64"))
            .collect())
    }

    /// Re-expresses the series on the finer lattice `(1/denom)·Z`.
    pub fn refine(&self, denom: i64) -> Series {
        assert!(
            denom % self.denom == 0,
            "lattice {denom} does not refine {}",
            self.denom
        );
        let k = denom / self.denom;
        if k == 1 {
            return self.clone();
        }
        let order = self.order * k;
        if self.is_zero() {
            return Series::from_parts(denom, order + 1, order, Vec::new());
        }
        let start = self.start * k;
        let mut coeffs = vec![BigRational::zero(); (order - start + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c.clone();
        }
        Series::from_parts(denom, start, order, coeffs)
    }

    /// Coarsest lattice carrying all nonzero terms. Keeps the order.
    pub fn coarsen(&self) -> Series {
        let mut g = self.denom;
        for (e, _) in self.terms() {
            g = g.gcd(&(*e.numer() * (self.denom / e.denom())));
        }
        g = g.gcd(&self.order);
        if g <= 1 {
            return self.clone();
        }
        let denom = self.denom / g;
        let order = self.order / g;
        let terms: Vec<_> = self.terms().map(|(e, c)| (e, c.clone())).collect();
        Series::from_terms(denom, terms, Exponent::new(order, denom))
            .expect("coarsened terms lie on the coarser lattice")
    }

    fn common(a: &Series, b: &Series) -> (Series, Series) {
        let l = a.denom.lcm(&b.denom);
        (a.refine(l), b.refine(l))
    }

    /// Restricts to a lower truncation order.
    pub fn truncate(&self, order: Exponent) -> Series {
        let idx = scaled_floor(order, self.denom).min(self.order);
        let mut s = self.clone();
        s.order = idx;
        s.normalize();
        s
    }

    /// Multiplies by the exact monomial `q^e`.
    pub fn shift(&self, e: Exponent) -> Series {
        let l = self.denom.lcm(e.denom());
        let s = self.refine(l);
        let k = scaled(e, l).expect("lcm lattice contains e");
        Series::from_parts(l, s.start + k, s.order + k, s.coeffs)
    }

    pub fn shift_int(&self, e: i64) -> Series {
        self.shift(Exponent::from_integer(e))
    }

    pub fn scale(&self, c: &BigRational) -> Series {
        Series::from_parts(
            self.denom,
            self.start,
            self.order,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    pub fn scale_int(&self, c: i64) -> Series {
        self.scale(&BigRational::from_integer(c.into()))
    }

    fn add_impl(a: &Series, b: &Series, negate_b: bool) -> Series {
        let (a, b) = Series::common(a, b);
        let order = a.order.min(b.order);
        let start = a.start.min(b.start).min(order + 1);
        let len = (order - start + 1).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, c) in a.coeffs.iter().enumerate() {
            let idx = a.start + i as i64;
            if idx > order {
                break;
            }
            coeffs[(idx - start) as usize] += c;
        }
        for (i, c) in b.coeffs.iter().enumerate() {
            let idx = b.start + i as i64;
            if idx > order {
                break;
            }
            if negate_b {
                coeffs[(idx - start) as usize] -= c;
            } else {
                coeffs[(idx - start) as usize] += c;
            }
        }
        Series::from_parts(a.denom, start, order, coeffs)
    }

    fn mul_impl(a: &Series, b: &Series) -> Series {
        let (a, b) = Series::common(a, b);
        // a = A + O(q^{Na+1}), b = B + O(q^{Nb+1}); each error term is
        // multiplied by something of valuation >= v(other).
        let order = (a.order + b.start).min(b.order + a.start);
        let start = a.start + b.start;
        if a.is_zero() || b.is_zero() || start > order {
            return Series::from_parts(a.denom, order + 1, order, Vec::new());
        }
        let len = (order - start + 1) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        let (sparse, dense) = if nnz(&a.coeffs) <= nnz(&b.coeffs) {
            (&a, &b)
        } else {
            (&b, &a)
        };
        for (i, x) in sparse.coeffs.iter().enumerate() {
            if x.is_zero() || i >= len {
                continue;
            }
            for (j, y) in dense.coeffs.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    coeffs[i + j] += x * y;
                }
            }
        }
        Series::from_parts(a.denom, start, order, coeffs)
    }

    /// Multiplicative inverse; the valuation flips sign and the order
    /// shrinks by twice the valuation.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroLeadingCoefficient);
        }
        let rel = (self.order - self.start) as usize;
        let u = &self.coeffs;
        let lead_inv = u[0].recip();
        let support: Vec<usize> = (1..u.len()).filter(|&j| !u[j].is_zero()).collect();
        let mut out: Vec<BigRational> = Vec::with_capacity(rel + 1);
        out.push(lead_inv.clone());
        for i in 1..=rel {
            let mut acc = BigRational::zero();
            for &j in &support {
                if j > i {
                    break;
                }
                if !out[i - j].is_zero() {
                    acc += &u[j] * &out[i - j];
                }
            }
            out.push(-(acc * &lead_inv));
        }
        Ok(Series::from_parts(
            self.denom,
            -self.start,
            self.order - 2 * self.start,
            out,
        ))
    }

    /// Integer power; negative powers go through [`Series::invert`].
    pub fn pow(&self, k: i64) -> Result<Series, SeriesError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        if e == 0 {
            return Ok(Series::one(self.order().floor().to_integer().max(0)));
        }
        let mut acc: Option<Series> = None;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => &a * &b,
                    None => b.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// Compares coefficients for all exponents `<= order`.
    pub fn equal_to_order(a: &Series, b: &Series, order: Exponent) -> Result<Comparison, SeriesError> {
        for s in [a, b] {
            if order > s.order() {
                return Err(SeriesError::OrderExceeded {
                    requested: order,
                    order: s.order(),
                });
            }
        }
        let (a, b) = Series::common(a, b);
        let top = scaled_floor(order, a.denom);
        let from = a.start.min(b.start);
        for idx in from..=top {
            let (x, y) = (a.coeff_at_index(idx), b.coeff_at_index(idx));
            if x != y {
                return Ok(Comparison::Mismatch {
                    exponent: Exponent::new(idx, a.denom),
                    left: x,
                    right: y,
                });
            }
        }
        Ok(Comparison::Equal)
    }

    /// Evaluates the truncated sum at a real point `0 < x < 1`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut terms: Vec<f64> = self
            .terms()
            .map(|(e, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                c * x.powf(*e.numer() as f64 / *e.denom() as f64)
            })
            .collect();
        terms.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap_or(Ordering::Equal));
        terms.into_iter().sum()
    }

    pub fn to_record(&self) -> SeriesRecord {
        let order = self.order();
        SeriesRecord {
            order: (*order.numer(), *order.denom()),
            terms: self
                .terms()
                .map(|(e, c)| {
                    (
                        *e.numer(),
                        *e.denom(),
                        c.numer().to_string(),
                        c.denom().to_string(),
                    )
                })
                .collect(),
        }
    }
}

fn nnz(v: &[BigRational]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

/// Structured form: `(exp_num, exp_den, coeff_num, coeff_den)` per nonzero
/// term, plus the truncation order as a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub order: (i64, i64),
    pub terms: Vec<(i64, i64, String, String)>,
}

impl SeriesRecord {
    pub fn to_series(&self) -> Result<Series, SeriesError> {
        let order = Exponent::new(self.order.0, self.order.1);
        let mut denom = *order.denom();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (en, ed, cn, cd) in &self.terms {
            let e = Exponent::new(*en, *ed);
            denom = denom.lcm(e.denom());
            let num: BigInt = cn.parse().map_err(|_| SeriesError::InvalidDenominator(0))?;
            let den: BigInt = cd.parse().map_err(|_| SeriesError::InvalidDenominator(0))?;
            terms.push((e, BigRational::new(num, den)));
        }
        Series::from_terms(denom, terms, order)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}*")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else if e.is_integer() && !e.is_negative() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "q^({e})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        let next = Exponent::new(self.order + 1, self.denom);
        if next.is_integer() && !next.is_negative() {
            write!(f, " + O(q^{next})")
        } else {
            write!(f, " + O(q^({next}))")
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                $body(self, rhs)
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $m(self, rhs: &Series) -> Series {
                $body(&self, rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $m(self, rhs: Series) -> Series {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| Series::add_impl(a, b, false));
binop!(Sub, sub, |a, b| Series::add_impl(a, b, true));
binop!(Mul, mul, Series::mul_impl);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series::from_parts(
            self.denom,
            self.start,
            self.order,
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

/// Convenience: `BigRational` from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Convenience: `BigRational` `n/d`.
pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(order: i64) -> Series {
        Series::from_coeffs(0, &vec![1; order as usize + 1], order)
    }

    fn one_minus_q(order: i64) -> Series {
        Series::from_coeffs(0, &[1, -1], order)
    }

    #[test]
    fn geometric_times_one_minus_q() {
        let p = &one_minus_q(10) * &geometric(10);
        // (1-q) has valuation 0, so the product is exact through order 10.
        assert_eq!(p.order(), Exponent::from_integer(10));
        assert!(Series::equal_to_order(&p, &Series::one(9), 9.into()).unwrap().is_equal());
    }

    #[test]
    fn laurent_cancellation() {
        let p = Series::q_pow(-1, 20) * Series::q_pow(1, 20);
        assert_eq!(p.coeff_int(0).unwrap(), rat(1));
        assert_eq!(p.min_exp(), Some(0.into()));
    }

    #[test]
    fn euler_product_to_twenty() {
        let mut p = Series::one(20);
        for k in 1..=20 {
            p = &p * &(Series::one(20) - Series::q_pow(k, 20));
        }
        let expected = [(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)];
        for e in 0..=20 {
            let want = expected.iter().find(|(x, _)| *x == e).map_or(0, |(_, c)| *c);
            assert_eq!(p.coeff_int(e).unwrap(), rat(want), "q^{e}");
        }
    }

    #[test]
    fn invert_one_minus_q() {
        let inv = one_minus_q(12).invert().unwrap();
        assert!(Series::equal_to_order(&inv, &geometric(12), 12.into()).unwrap().is_equal());
    }

    #[test]
    fn invert_laurent() {
        let a = Series::from_coeffs(1, &[1, -1], 12);
        let inv = a.invert().unwrap();
        assert_eq!(inv.min_exp(), Some((-1).into()));
        assert_eq!(inv.order(), Exponent::from_integer(10));
        for e in -1..=10 {
            assert_eq!(inv.coeff_int(e).unwrap(), rat(1));
        }
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            Series::zero(5).invert(),
            Err(SeriesError::ZeroLeadingCoefficient)
        );
        // 0 + O(q^3): cannot be normalized within the window.
        let s = Series::from_coeffs(0, &[0, 0, 0], 2);
        assert!(s.invert().is_err());
    }

    #[test]
    fn coeff_order_exceeded() {
        let g = geometric(7);
        assert_eq!(g.coeff_int(7).unwrap(), rat(1));
        assert!(matches!(
            g.coeff_int(8),
            Err(SeriesError::OrderExceeded { .. })
        ));
        assert!(matches!(
            Series::equal_to_order(&g, &g, 9.into()),
            Err(SeriesError::OrderExceeded { .. })
        ));
    }

    #[test]
    fn binomial_series() {
        let a = one_minus_q(30).pow(-2).unwrap();
        let b = Series::from_coeffs(0, &(1..=31).collect::<Vec<i64>>(), 30);
        assert!(Series::equal_to_order(&a, &b, 30.into()).unwrap().is_equal());
    }

    #[test]
    fn off_lattice_coefficients_are_zero() {
        let half = Series::monomial(rat(3), Exponent::new(1, 2), 4);
        assert_eq!(half.denom(), 2);
        assert_eq!(half.coeff(Exponent::new(1, 2)).unwrap(), rat(3));
        assert_eq!(half.coeff(Exponent::new(1, 3)).unwrap(), rat(0));
        let sum = &half + &Series::q_pow(1, 4);
        assert_eq!(sum.denom(), 2);
        assert_eq!(sum.coeff_int(1).unwrap(), rat(1));
    }

    #[test]
    fn from_terms_rejects_off_lattice() {
        let err = Series::from_terms(2, [(Exponent::new(1, 3), rat(1))], 3.into());
        assert!(matches!(err, Err(SeriesError::OffLattice { .. })));
    }

    #[test]
    fn mismatch_reports_first_exponent() {
        let a = Series::from_coeffs(0, &[1, 2, 3, 4], 3);
        let b = Series::from_coeffs(0, &[1, 2, 5, 4], 3);
        match Series::equal_to_order(&a, &b, 3.into()).unwrap() {
            Comparison::Mismatch { exponent, left, right } => {
                assert_eq!(exponent, 2.into());
                assert_eq!((left, right), (rat(3), rat(5)));
            }
            Comparison::Equal => panic!("expected mismatch"),
        }
    }

    #[test]
    fn display_and_record() {
        let s = Series::from_coeffs(-1, &[1, 0, -2, 3], 2);
        assert_eq!(s.to_string(), "q^(-1) - 2*q + 3*q^2 + O(q^3)");
        let rec = s.to_record();
        assert_eq!(rec.to_series().unwrap(), s);
    }

    #[test]
    fn coarsen_recovers_lattice() {
        let s = Series::q_pow(2, 6).refine(6);
        assert_eq!(s.denom(), 6);
        let c = s.coarsen();
        assert_eq!(c.denom(), 1);
        assert_eq!(c.coeff_int(2).unwrap(), rat(1));
    }
}
