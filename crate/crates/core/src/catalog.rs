//! Named q-series and the building blocks they are made of.
//!
//! Every builder takes a truncation order `n` and returns a [`Series`]
//! that is exact through `q^n`. Infinite sums and products are cut only
//! where each discarded term provably starts above `q^n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::series::{rat, Exponent, Series, SeriesError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("infinite product (q^{0};q)_inf does not converge")]
    DivergentProduct(Exponent),
    #[error("no Lambert sum registered for weight n^{weight}, pole order {pole}, kind {kind:?}")]
    UnknownVariant {
        weight: u32,
        pole: u32,
        kind: LambertKind,
    },
    #[error("unknown series name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

type Result<T> = std::result::Result<T, CatalogError>;

/// Dense integer accumulator on the integral lattice, exponents `0..=n`.
pub(crate) struct IntAcc {
    pub(crate) c: Vec<BigInt>,
}

impl IntAcc {
    pub(crate) fn new(n: i64) -> IntAcc {
        IntAcc {
            c: vec![BigInt::zero(); (n.max(-1) + 1) as usize],
        }
    }

    pub(crate) fn order(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub(crate) fn add(&mut self, e: i64, v: impl Into<BigInt>) {
        if e >= 0 && e <= self.order() {
            self.c[e as usize] += v.into();
        }
    }

    pub(crate) fn into_series(self) -> Series {
        let order = self.order();
        Series::from_coeffs(0, &self.c, order)
    }
}

/// `(q^r; q^s)_len`, with `len = None` for the infinite product.
pub fn pochhammer_step(r: Exponent, s: Exponent, len: Option<u64>, n: i64) -> Result<Series> {
    assert!(s > Exponent::zero(), "step must be positive");
    let mut p = Series::one(n);
    let order = Exponent::from_integer(n);
    let mut j = 0u64;
    loop {
        match len {
            Some(l) if j >= l => break,
            None if r <= Exponent::zero() => return Err(CatalogError::DivergentProduct(r)),
            _ => {}
        }
        let e = r + s * Exponent::from_integer(j as i64);
        if len.is_none() && e > order {
            break;
        }
        if e <= order {
            p = &p - &p.shift(e);
        } else if e.is_zero() {
            // 1 - q^0 annihilates the product
            return Ok(Series::zero(n));
        }
        j += 1;
    }
    Ok(p)
}

/// `(q^r; q)_len`, with `len = None` for the infinite product.
pub fn pochhammer(r: Exponent, len: Option<u64>, n: i64) -> Result<Series> {
    if r.is_zero() && len.is_some_and(|l| l > 0) {
        return Ok(Series::zero(n));
    }
    pochhammer_step(r, Exponent::one(), len, n)
}

/// `(q^r; q)_len` for integral `r`.
pub fn poch(r: i64, len: u64, n: i64) -> Series {
    pochhammer(r.into(), Some(len), n).expect("finite products always expand")
}

/// `(q^r; q)_inf` for integral `r >= 1`.
pub fn poch_inf(r: i64, n: i64) -> Series {
    pochhammer(r.into(), None, n).expect("r >= 1")
}

/// `(q)_inf`.
pub fn qinf(n: i64) -> Series {
    poch_inf(1, n)
}

/// `1/(q)_n` for all `0 <= k <= kmax`, each exact through `q^n`.
pub fn inverse_pochhammers(kmax: usize, n: i64) -> Vec<Series> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut cur = Series::one(n);
    out.push(cur.clone());
    for k in 1..=kmax as i64 {
        // 1/(1-q^k) = sum_m q^{km}
        let mut geo = IntAcc::new(n);
        let mut e = 0;
        while e <= n {
            geo.add(e, 1);
            e += k;
        }
        cur = &cur * &geo.into_series();
        out.push(cur.clone());
    }
    out
}

/// `1/(1 - q^k)` for `k >= 1`.
pub fn geometric(k: i64, n: i64) -> Series {
    assert!(k >= 1, "geometric series needs a positive step");
    let mut acc = IntAcc::new(n);
    let mut e = 0;
    while e <= n {
        acc.add(e, 1);
        e += k;
    }
    acc.into_series()
}

/// Sign and exponent pattern of a Lambert-type sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum LambertKind {
    /// `sum n^k q^n / (1-q^n)^p`
    Plain,
    /// `sum (-1)^{n+1} q^{n(n+1)/2} ...`; with `p = 2` carries a `(1+q^n)` numerator
    AltTriangular,
    /// `sum (-1)^{n+1} (1+q^n) q^{n(3n+1)/2} / (1-q^n)^2`
    AltPentagonal,
}

/// Lambert-type sums over `n >= 1`. Only `n <= order` contribute.
pub fn lambert_sum(weight: u32, pole: u32, kind: LambertKind, n: i64) -> Result<Series> {
    let unknown = || CatalogError::UnknownVariant { weight, pole, kind };
    let mut acc = IntAcc::new(n);
    match kind {
        LambertKind::Plain => {
            if !(1..=2).contains(&pole) {
                return Err(unknown());
            }
            for k in 1..=n.max(0) {
                let w = BigInt::from(k).pow(weight);
                let mut m = 0i64;
                while k + k * m <= n {
                    let mult = if pole == 1 { 1 } else { m + 1 };
                    acc.add(k + k * m, &w * mult);
                    m += 1;
                }
            }
        }
        LambertKind::AltTriangular | LambertKind::AltPentagonal => {
            let ok = matches!(
                (kind, weight, pole),
                (LambertKind::AltTriangular, 0, 2)
                    | (LambertKind::AltTriangular, 1, 1)
                    | (LambertKind::AltPentagonal, 0, 2)
            );
            if !ok {
                return Err(unknown());
            }
            for k in 1..=n.max(0) {
                let base = if kind == LambertKind::AltPentagonal {
                    k * (3 * k + 1) / 2
                } else {
                    k * (k + 1) / 2
                };
                if base > n {
                    break;
                }
                let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
                let mut m = 0i64;
                while base + k * m <= n {
                    let mult = if pole == 2 { 2 * m + 1 } else { k };
                    acc.add(base + k * m, sign * mult);
                    m += 1;
                }
            }
        }
    }
    Ok(acc.into_series())
}

/// Divisor-power sum `sigma_k(m)` by trial division.
pub fn sigma(k: u32, m: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            s += BigInt::from(d).pow(k);
            let e = m / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `E_2 = 1 - 24 sum sigma_1(m) q^m`.
pub fn e2(n: i64) -> Series {
    let mut acc = IntAcc::new(n);
    acc.add(0, 1);
    for m in 1..=n.max(0) {
        acc.add(m, sigma(1, m as u64) * -24);
    }
    acc.into_series()
}

/// `D(q) = sum_{n>=1} q^n/(1-q^n)`.
pub fn divisor_series(n: i64) -> Series {
    lambert_sum(0, 1, LambertKind::Plain, n).expect("registered")
}

/// Sum of tails `G(q) = sum_{k>=0} ((q)_k - (q)_inf)`; the `k`-th term
/// starts at `q^{k+1}`, so `k <= n` suffices.
pub fn sum_of_tails(n: i64) -> Series {
    let qi = qinf(n);
    let mut acc = Series::zero(n);
    let mut pk = Series::one(n);
    for k in 0..=n.max(0) {
        if k > 0 {
            pk = &pk - &pk.shift_int(k);
        }
        acc = &acc + &(&pk - &qi);
    }
    acc
}

/// `U(1;q) = sum_{k>=0} q^{k+1} (q)_k^2`.
pub fn u_one(n: i64) -> Series {
    let mut acc = Series::zero(n);
    let mut pk = Series::one(n);
    for k in 0..n.max(0) {
        if k > 0 {
            pk = &pk - &pk.shift_int(k);
        }
        acc = &acc + &(&pk * &pk).shift_int(k + 1);
    }
    acc
}

/// `sigma(q) = 1 + sum_{k>=0} (-1)^k q^{k+1} (q)_k`.
pub fn sigma_kz(n: i64) -> Series {
    let mut acc = Series::one(n);
    let mut pk = Series::one(n);
    for k in 0..n.max(0) {
        if k > 0 {
            pk = &pk - &pk.shift_int(k);
        }
        let t = pk.shift_int(k + 1);
        acc = if k % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn kronecker12(m: i64) -> i64 {
    match m.rem_euclid(12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// `sum_{m>=1} m (12/m) q^{(m^2-1)/24}`.
pub fn h_weight_three_halves(n: i64) -> Series {
    let mut acc = IntAcc::new(n);
    let mut m = 1i64;
    while (m * m - 1) / 24 <= n {
        let c = kronecker12(m);
        if c != 0 {
            acc.add((m * m - 1) / 24, m * c);
        }
        m += 1;
    }
    acc.into_series()
}

/// Ramanujan's fifth-order `chi_0 = sum q^k/(q^{k+1})_k`.
pub fn chi0(n: i64) -> Series {
    mock_chi(n, 0)
}

/// Ramanujan's fifth-order `chi_1 = sum q^k/(q^{k+1})_{k+1}`.
pub fn chi1(n: i64) -> Series {
    mock_chi(n, 1)
}

fn mock_chi(n: i64, extra: u64) -> Series {
    let mut acc = Series::zero(n);
    for k in 0..=n.max(0) {
        let den = poch(k + 1, k as u64 + extra, n);
        let term = den.invert().expect("unit constant term").shift_int(k);
        acc = &acc + &term.truncate(n.into());
    }
    acc
}

/// Characters supported on `m^2 = residue (mod 120)` with sign
/// `(-1)^floor(m/30)`.
fn chi_pm(m: i64, residue: i64) -> i64 {
    if (m * m) % 120 != residue {
        return 0;
    }
    if (m / 30) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn false_theta(n: i64, residue: i64) -> Series {
    let mut acc = IntAcc::new(n);
    let mut m = 1i64;
    while (m * m - residue) / 120 <= n {
        let c = chi_pm(m, residue);
        if c != 0 {
            acc.add((m * m - residue) / 120, c);
        }
        m += 1;
    }
    acc.into_series()
}

/// `sum_{m>=1} chi_+(m) q^{(m^2-1)/120}`.
pub fn theta_plus(n: i64) -> Series {
    false_theta(n, 1)
}

/// `sum_{m>=1} chi_-(m) q^{(m^2-49)/120}`.
pub fn theta_minus(n: i64) -> Series {
    false_theta(n, 49)
}

/// `I_1`, folded from `n in Z\{0}` to `n >= 1`.
pub fn i1(n: i64) -> Series {
    lambert_sum(0, 2, LambertKind::AltPentagonal, n).expect("registered")
}

/// `I_2`, folded from `n in Z\{0}` to `n >= 1`.
pub fn i2(n: i64) -> Series {
    lambert_sum(1, 1, LambertKind::AltTriangular, n)
        .expect("registered")
        .scale_int(2)
}

/// `sum_{m in Z\{0}} (-1)^{m+1} q^{3m(m+1)/2}/(1-q^m)^2`, folded by pairing
/// `m` with `-m`.
pub fn f_hol(n: i64) -> Series {
    let mut acc = IntAcc::new(n);
    for k in 1..=n.max(0) {
        let sign: i64 = if k % 2 == 1 { 1 } else { -1 };
        // m = k: q^{3k(k+1)/2}/(1-q^k)^2
        // m = -k: q^{3k(k-1)/2} q^{2k}/(1-q^k)^2
        for base in [3 * k * (k + 1) / 2, 3 * k * (k - 1) / 2 + 2 * k] {
            let mut j = 0i64;
            while base + k * j <= n {
                acc.add(base + k * j, sign * (j + 1));
                j += 1;
            }
        }
    }
    acc.into_series()
}

/// `1/((q;q^5)_inf (q^4;q^5)_inf)`.
pub fn rogers_ramanujan(n: i64) -> Series {
    let five = Exponent::from_integer(5);
    let a = pochhammer_step(1.into(), five, None, n).expect("convergent");
    let b = pochhammer_step(4.into(), five, None, n).expect("convergent");
    (&a * &b).invert().expect("unit constant term")
}

/// `1/((q^{b+1})_{a+1} (q^{a+1})_inf)`.
pub fn framing_closed_form(a: i64, b: i64, n: i64) -> Series {
    let den = &poch(b + 1, (a + 1) as u64, n) * &poch_inf(a + 1, n);
    den.invert().expect("unit constant term")
}

/// A catalog entry visible from the command line.
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn(i64) -> Series,
}

fn sigma1_series(n: i64) -> Series {
    lambert_sum(1, 1, LambertKind::Plain, n).expect("registered")
}

fn sigma2_series(n: i64) -> Series {
    lambert_sum(2, 1, LambertKind::Plain, n).expect("registered")
}

fn l2_series(n: i64) -> Series {
    lambert_sum(0, 2, LambertKind::Plain, n).expect("registered")
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "qinf", description: "(q)_inf", build: qinf },
    CatalogEntry { name: "D", description: "sum q^n/(1-q^n)", build: divisor_series },
    CatalogEntry { name: "sigma1", description: "sum n q^n/(1-q^n)", build: sigma1_series },
    CatalogEntry { name: "sigma2", description: "sum n^2 q^n/(1-q^n)", build: sigma2_series },
    CatalogEntry { name: "L2", description: "sum q^n/(1-q^n)^2", build: l2_series },
    CatalogEntry { name: "E2", description: "1 - 24 sum sigma_1(n) q^n", build: e2 },
    CatalogEntry { name: "G", description: "sum_{n>=0} ((q)_n - (q)_inf)", build: sum_of_tails },
    CatalogEntry { name: "U1", description: "sum q^{n+1} (q)_n^2", build: u_one },
    CatalogEntry { name: "sigmaKZ", description: "1 + sum (-1)^n q^{n+1} (q)_n", build: sigma_kz },
    CatalogEntry { name: "H32", description: "sum n (12/n) q^{(n^2-1)/24}", build: h_weight_three_halves },
    CatalogEntry { name: "chi0", description: "sum q^n/(q^{n+1})_n", build: chi0 },
    CatalogEntry { name: "chi1", description: "sum q^n/(q^{n+1})_{n+1}", build: chi1 },
    CatalogEntry { name: "thetaP", description: "sum chi_+(n) q^{(n^2-1)/120}", build: theta_plus },
    CatalogEntry { name: "thetaM", description: "sum chi_-(n) q^{(n^2-49)/120}", build: theta_minus },
    CatalogEntry { name: "I1", description: "sum_{n!=0} (-1)^{n+1} q^{n(3n+1)/2}/(1-q^n)^2", build: i1 },
    CatalogEntry { name: "I2", description: "sum_{n!=0} (-1)^{n+1} n q^{n(n+1)/2}/(1-q^n)", build: i2 },
    CatalogEntry { name: "Fhol", description: "sum_{n!=0} (-1)^{n+1} q^{3n(n+1)/2}/(1-q^n)^2", build: f_hol },
    CatalogEntry { name: "RR", description: "1/((q;q^5)_inf (q^4;q^5)_inf)", build: rogers_ramanujan },
];

/// Builds a catalog series by name. Besides the fixed table, accepts
/// `A(a,b)` for the two-node framing series closed form.
pub fn named_series(name: &str, n: i64) -> Result<Series> {
    if let Some(e) = CATALOG.iter().find(|e| e.name == name) {
        return Ok((e.build)(n));
    }
    if let Some((a, b)) = parse_framing(name) {
        return Ok(framing_closed_form(a, b, n));
    }
    Err(CatalogError::UnknownName(name.to_string()))
}

fn parse_framing(name: &str) -> Option<(i64, i64)> {
    let inner = name.strip_prefix("A(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a >= 0 && b >= 0).then_some((a, b))
}

/// Signed power `(-1)^k` as a rational.
pub fn sign(k: i64) -> BigRational {
    if k.rem_euclid(2) == 0 {
        rat(1)
    } else {
        -rat(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(s: &Series, from: i64, to: i64) -> Vec<i64> {
        s.i64_coeffs(from, to).unwrap()
    }

    #[test]
    fn empty_pochhammer_is_one() {
        assert_eq!(coeffs(&poch(1, 0, 5), 0, 5), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn euler_product_to_twelve() {
        let p = pochhammer(1.into(), None, 12).unwrap();
        assert_eq!(
            coeffs(&p, 0, 12),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
        );
    }

    #[test]
    fn divergent_product() {
        assert!(matches!(
            pochhammer(0.into(), None, 5),
            Err(CatalogError::DivergentProduct(_))
        ));
    }

    #[test]
    fn rogers_ramanujan_product() {
        assert_eq!(
            coeffs(&rogers_ramanujan(9), 0, 9),
            vec![1, 1, 1, 1, 2, 2, 3, 3, 4, 5]
        );
    }

    #[test]
    fn lambert_divisor_counts() {
        let d = lambert_sum(0, 1, LambertKind::Plain, 8).unwrap();
        assert_eq!(coeffs(&d, 1, 8), vec![1, 2, 2, 3, 2, 4, 2, 4]);
        let s1 = lambert_sum(1, 1, LambertKind::Plain, 6).unwrap();
        assert_eq!(coeffs(&s1, 1, 6), vec![1, 3, 4, 7, 6, 12]);
    }

    #[test]
    fn lambert_unknown_variant() {
        assert!(matches!(
            lambert_sum(2, 2, LambertKind::AltPentagonal, 5),
            Err(CatalogError::UnknownVariant { .. })
        ));
        assert!(lambert_sum(0, 3, LambertKind::Plain, 5).is_err());
    }

    #[test]
    fn eisenstein_leading_terms() {
        assert_eq!(coeffs(&e2(4), 0, 4), vec![1, -24, -72, -96, -168]);
    }

    #[test]
    fn u_one_expansion() {
        // direct finite sum of q^{k+1}(q)_k^2 for k <= 9
        let mut want = Series::zero(10);
        for k in 0..=9 {
            let p = poch(1, k, 10);
            want = &want + &(&p * &p).shift_int(k as i64 + 1);
        }
        let got = u_one(10);
        assert!(Series::equal_to_order(&got, &want, 10.into()).unwrap().is_equal());
        assert_eq!(coeffs(&got, 0, 3), vec![0, 1, 1, -1]);
    }

    #[test]
    fn false_theta_constant_terms() {
        assert_eq!(theta_plus(0).coeff_int(0).unwrap(), rat(1));
        assert_eq!(theta_minus(0).coeff_int(0).unwrap(), rat(1));
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            named_series("nope", 3),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(named_series("A(1,2)", 3).is_ok());
    }

    #[test]
    fn inverse_pochhammer_table() {
        let t = inverse_pochhammers(3, 6);
        let check = &t[3] * &poch(1, 3, 6);
        assert!(Series::equal_to_order(&check, &Series::one(6), 6.into()).unwrap().is_equal());
    }
}
