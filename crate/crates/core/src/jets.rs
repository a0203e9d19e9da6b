//! Graded dimensions of the arc algebra of a quadratic monomial ideal.
//!
//! Variables `x_{j,(-k)}` have weight `k >= 1`. The ideal is generated by
//! `T^s(x_i x_j)` for every relation and `s >= 0`, where `T` is the
//! derivation `x_{j,(-1-k)} -> (-1-k) x_{j,(-k-2)}`. In weight `d` the
//! quotient dimension is the number of monomials minus the rank of all
//! monomial multiples of generators landing in weight `d`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{evaluate, Graph, GraphError, GraphSeriesSpec, Method};
use crate::series::Exponent;

/// Largest weight the oracle will attempt.
pub const MAX_DEGREE: usize = 14;
/// Largest weight for elimination over the rationals.
pub const MAX_EXACT_DEGREE: usize = 8;
/// Cap on the number of monomials in a single weight.
pub const MAX_COLUMNS: usize = 250_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JetError {
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("primes {p1} and {p2} disagree in weight {degree}: {dim1} vs {dim2}")]
    PrimeDisagreement {
        degree: usize,
        p1: u64,
        p2: u64,
        dim1: u64,
        dim2: u64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

type Result<T> = std::result::Result<T, JetError>;

/// `ell` variables and relations `x_i x_j = 0` (0-indexed, `i == j` allowed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetPresentation {
    pub ell: usize,
    pub relations: Vec<(usize, usize)>,
    pub max_degree: usize,
}

impl JetPresentation {
    pub fn new(ell: usize, relations: &[(usize, usize)], max_degree: usize) -> Result<Self> {
        let mut rels = Vec::new();
        for &(i, j) in relations {
            if i >= ell || j >= ell {
                return Err(JetError::InvalidPresentation(format!(
                    "relation ({}, {}) uses a variable outside 1..={ell}",
                    i + 1,
                    j + 1
                )));
            }
            let r = (i.min(j), i.max(j));
            if rels.contains(&r) {
                return Err(JetError::InvalidPresentation(format!(
                    "relation ({}, {}) listed twice",
                    r.0 + 1,
                    r.1 + 1
                )));
            }
            rels.push(r);
        }
        if ell == 0 {
            return Err(JetError::InvalidPresentation("no variables".into()));
        }
        Ok(JetPresentation {
            ell,
            relations: rels,
            max_degree,
        })
    }

    /// Edge relations of a simple loopless graph.
    pub fn from_graph(graph: &Graph, max_degree: usize) -> Result<Self> {
        let r = graph.nodes();
        let mut rels = Vec::new();
        for i in 0..r {
            if graph.c(i, i) != 0 {
                return Err(JetError::InvalidPresentation(format!(
                    "node {} has a loop",
                    i + 1
                )));
            }
            for j in i + 1..r {
                match graph.c(i, j) {
                    0 => {}
                    1 => rels.push((i, j)),
                    m => {
                        return Err(JetError::InvalidPresentation(format!(
                            "edge ({}, {}) has multiplicity {m}",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        JetPresentation::new(r, &rels, max_degree)
    }
}

/// Sorted `(variable, weight)` factors, with repetition.
pub type Monomial = Vec<(usize, u32)>;

/// How the derivation enters the generator coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientRule {
    /// The true derivation.
    Leibniz,
    /// Every monomial of `T^s(x_i x_j)` with a nonzero coefficient gets `1`.
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    SinglePrime,
    DualPrime,
    ExactRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDimensionTable {
    pub dims: Vec<u64>,
    pub primes: Vec<u64>,
    pub certification: Mode,
}

/// All monomials of weight `d`, in a fixed order.
pub fn monomials(ell: usize, d: usize) -> Vec<Monomial> {
    fn rec(ell: usize, left: u32, min: (usize, u32), cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in min.0..ell {
            let k0 = if v == min.0 { min.1 } else { 1 };
            for k in k0..=left {
                cur.push((v, k));
                rec(ell, left - k, (v, k), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(ell, d as u32, (0, 1), &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `T^s(x_i x_j)` as quadratic monomials with integer coefficients.
fn derived_relation(i: usize, j: usize, s: u32, rule: CoefficientRule) -> Vec<(Monomial, i64)> {
    let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
    for a in 0..=s {
        let b = s - a;
        // T^a x_{i,(-1)} = (-1)^a a! x_{i,(-1-a)}
        let c = binomial(s, a) * (-1i64).pow(a) * factorial(a) * (-1i64).pow(b) * factorial(b);
        let mut m = vec![(i, a + 1), (j, b + 1)];
        m.sort();
        *acc.entry(m).or_default() += c;
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(m, c)| (m, if rule == CoefficientRule::Unit { 1 } else { c }))
        .collect()
}

fn merge(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = Vec::with_capacity(a.len() + b.len());
    m.extend_from_slice(a);
    m.extend_from_slice(b);
    m.sort();
    m
}

/// Basis of weight `d` and the generator rows as sparse `(column, coefficient)` lists.
pub fn jet_generators(
    pres: &JetPresentation,
    d: usize,
    rule: CoefficientRule,
) -> (Vec<Monomial>, Vec<Vec<(usize, i64)>>) {
    let basis = monomials(pres.ell, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    if d < 2 {
        return (basis, rows);
    }
    for s in 0..=(d - 2) as u32 {
        let cofactors = monomials(pres.ell, d - 2 - s as usize);
        for &(i, j) in &pres.relations {
            let rel = derived_relation(i, j, s, rule);
            for mu in &cofactors {
                let mut row: Vec<(usize, i64)> =
                    rel.iter().map(|(m, c)| (index[&merge(mu, m)], *c)).collect();
                row.sort();
                row.dedup_by(|b, a| {
                    if a.0 == b.0 {
                        a.1 += b.1;
                        true
                    } else {
                        false
                    }
                });
                row.retain(|e| e.1 != 0);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    (basis, rows)
}

trait Field {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn from_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b c`
    fn sub_mul(&self, a: &Self::E, b: &Self::E, c: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

struct Fp(u64);

impl Fp {
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, self.0);
            }
            a = mulmod(a, a, self.0);
            e >>= 1;
        }
        r
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.0)
    }
    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = mulmod(*b, *c, self.0);
        if *a >= bc {
            a - bc
        } else {
            a + (self.0 - bc)
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.0 - 2)
    }
}

struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Row rank by elimination against normalized sparse pivots, with a dense
/// scratch row.
fn rank<F: Field>(field: &F, cols: usize, rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, F::E)>>> = vec![None; cols];
    let mut acc: Vec<F::E> = vec![field.zero(); cols];
    let mut rank = 0;
    for row in rows {
        if rank == cols {
            break;
        }
        for &(c, v) in row {
            acc[c] = field.from_i64(v);
        }
        let mut c = row[0].0;
        while c < cols {
            if !field.is_zero(&acc[c]) {
                match &pivots[c] {
                    Some(p) => {
                        let f = acc[c].clone();
                        for (cc, v) in p {
                            acc[*cc] = field.sub_mul(&acc[*cc], &f, v);
                        }
                    }
                    None => {
                        let inv = field.inv(&acc[c]);
                        let mut p = Vec::new();
                        for (cc, slot) in acc.iter_mut().enumerate().skip(c) {
                            if !field.is_zero(slot) {
                                p.push((cc, field.mul(slot, &inv)));
                                *slot = field.zero();
                            }
                        }
                        pivots[c] = Some(p);
                        rank += 1;
                        break;
                    }
                }
            }
            c += 1;
        }
    }
    rank
}

fn is_probable_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let f = Fp(n);
    'outer: for a in BASES {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes in `[2^61, 2^62)` drawn from a seeded stream.
pub fn random_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let c = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_probable_prime(c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn check_budget(pres: &JetPresentation, mode: Mode) -> Result<()> {
    if pres.max_degree > MAX_DEGREE {
        return Err(JetError::BudgetExceeded(format!(
            "max degree {} exceeds {MAX_DEGREE}",
            pres.max_degree
        )));
    }
    if mode == Mode::ExactRational && pres.max_degree > MAX_EXACT_DEGREE {
        return Err(JetError::BudgetExceeded(format!(
            "exact mode is limited to degree {MAX_EXACT_DEGREE}"
        )));
    }
    // number of weight-d monomials is the q^d coefficient of 1/(q)_inf^ell
    let d = pres.max_degree;
    let mut count = vec![0u128; d + 1];
    count[0] = 1;
    for _ in 0..pres.ell {
        for k in 1..=d {
            for n in k..=d {
                count[n] = count[n].saturating_add(count[n - k]);
            }
        }
    }
    if count[d] > MAX_COLUMNS as u128 {
        return Err(JetError::BudgetExceeded(format!(
            "{} monomials in degree {d}",
            count[d]
        )));
    }
    Ok(())
}

/// Graded dimensions through `pres.max_degree`.
pub fn hilbert_series(pres: &JetPresentation, mode: Mode, seed: u64) -> Result<GradedDimensionTable> {
    hilbert_series_with(pres, mode, seed, CoefficientRule::Leibniz)
}

pub fn hilbert_series_with(
    pres: &JetPresentation,
    mode: Mode,
    seed: u64,
    rule: CoefficientRule,
) -> Result<GradedDimensionTable> {
    check_budget(pres, mode)?;
    let primes = match mode {
        Mode::SinglePrime => random_primes(seed, 1),
        Mode::DualPrime => random_primes(seed, 2),
        Mode::ExactRational => Vec::new(),
    };
    let dims = (0..=pres.max_degree)
        .into_par_iter()
        .map(|d| {
            let (basis, rows) = jet_generators(pres, d, rule);
            let cols = basis.len();
            let dims: Vec<u64> = if primes.is_empty() {
                vec![(cols - rank(&Rationals, cols, &rows)) as u64]
            } else {
                primes
                    .iter()
                    .map(|&p| (cols - rank(&Fp(p), cols, &rows)) as u64)
                    .collect()
            };
            if dims.len() == 2 && dims[0] != dims[1] {
                return Err(JetError::PrimeDisagreement {
                    degree: d,
                    p1: primes[0],
                    p2: primes[1],
                    dim1: dims[0],
                    dim2: dims[1],
                });
            }
            Ok(dims[0])
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(GradedDimensionTable {
        dims,
        primes,
        certification: mode,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetMismatch {
    pub degree: usize,
    pub jet: u64,
    pub graph: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetComparison {
    pub table: GradedDimensionTable,
    pub graph_coeffs: Vec<String>,
    pub mismatch: Option<JetMismatch>,
}

impl JetComparison {
    pub fn matches(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the oracle with the graph series of `graph` (linear term all ones).
pub fn compare_with_graph_series(
    graph: &Graph,
    max_degree: usize,
    mode: Mode,
    seed: u64,
) -> Result<JetComparison> {
    let pres = JetPresentation::from_graph(graph, max_degree)?;
    let table = hilbert_series(&pres, mode, seed)?;
    let series = evaluate(&GraphSeriesSpec::new(graph.clone()), max_degree as i64, Method::Auto)?;
    let mut graph_coeffs = Vec::new();
    let mut mismatch = None;
    for (d, &dim) in table.dims.iter().enumerate() {
        let c = series
            .coeff(Exponent::from_integer(d as i64))
            .expect("within order");
        let matches = c.is_integer() && !c.is_negative() && c.to_integer().to_u64() == Some(dim);
        let c = c.to_integer();
        if !matches && mismatch.is_none() {
            mismatch = Some(JetMismatch {
                degree: d,
                jet: dim,
                graph: c.to_string(),
            });
        }
        graph_coeffs.push(c.to_string());
    }
    Ok(JetComparison {
        table,
        graph_coeffs,
        mismatch,
    })
}

/// `1/(q)_inf^ell` coefficients, the free-ring answer.
pub fn free_dims(ell: usize, d: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); d + 1];
    c[0] = BigInt::one();
    for _ in 0..ell {
        for k in 1..=d {
            for n in k..=d {
                let add = c[n - k].clone();
                c[n] += add;
            }
        }
    }
    c
}
