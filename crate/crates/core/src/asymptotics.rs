//! Behaviour of the prefactored path series `(q)_inf^e H[A_k](q)` at
//! `q = e^{-t}` as `t -> 0+`.
//!
//! Evaluation uses the closed forms in `D`, `G` and `(q)_inf` with
//! double-double accumulation; each infinite sum or product is cut once its
//! terms drop below `CUTOFF` relative to the running value.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;
use twofloat::TwoFloat;

use crate::catalog;
use crate::series::Series;

/// Relative size below which a term of an infinite sum is dropped.
pub const CUTOFF: f64 = 1e-17;
/// Admissible range of `t`.
pub const T_MIN: f64 = 0.01;
pub const T_MAX: f64 = 0.5;
/// Cap on the number of terms an evaluator may use.
pub const MAX_TERMS: usize = 1_000_000;
/// Accepted window for `|r(t_{i+1})| / |r(t_i)|`.
pub const RATIO_WINDOW: (f64, f64) = (0.3, 0.8);
/// Residuals below this are accepted regardless of their decay.
pub const SMALL_RESIDUAL: f64 = 1e-3;

pub const DEFAULT_GRID: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

const GAMMA_HI: f64 = 0.5772156649015329;
const GAMMA_LO: f64 = -4.942915152430645e-18;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymptoticError {
    #[error("t = {0} outside [{T_MIN}, {T_MAX}]")]
    OutOfRange(f64),
    #[error("grid must be strictly decreasing")]
    UnorderedGrid,
    #[error("cutoff {CUTOFF:e} not reached at t = {t} within {MAX_TERMS} terms")]
    PrecisionLoss { t: f64 },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
}

/// Leading behaviour of the prefactored series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// `1/t`
    InverseT,
    /// `1`
    One,
    /// `m (gamma - log t)/t`
    Log(u32),
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::InverseT => write!(f, "1/t + O(1)"),
            Model::One => write!(f, "1 + O(t)"),
            Model::Log(1) => write!(f, "(gamma - log t)/t + O(1)"),
            Model::Log(m) => write!(f, "{m} (gamma - log t)/t + O(1)"),
        }
    }
}

/// Paths `A2` through `A8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AsymptoticCase {
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
}

impl AsymptoticCase {
    pub const ALL: [AsymptoticCase; 7] = [
        AsymptoticCase::A2,
        AsymptoticCase::A3,
        AsymptoticCase::A4,
        AsymptoticCase::A5,
        AsymptoticCase::A6,
        AsymptoticCase::A7,
        AsymptoticCase::A8,
    ];

    pub fn nodes(self) -> usize {
        self as usize + 2
    }

    /// Power of `(q)_inf` multiplying `H[A_k]`.
    pub fn prefactor(self) -> u32 {
        (self.nodes() as u32).div_ceil(2)
    }

    pub fn model(self) -> Model {
        match self {
            AsymptoticCase::A2 => Model::InverseT,
            AsymptoticCase::A3 | AsymptoticCase::A5 | AsymptoticCase::A7 => Model::One,
            AsymptoticCase::A4 => Model::Log(1),
            AsymptoticCase::A6 => Model::Log(2),
            AsymptoticCase::A8 => Model::Log(3),
        }
    }

    pub fn name(self) -> String {
        format!("A{}", self.nodes())
    }

    /// Exact expansion of the same closed form through `q^order`.
    pub fn series(self, order: i64) -> Series {
        let m = order + 2;
        let qi = catalog::qinf(m);
        let d = catalog::divisor_series(m);
        let g = catalog::sum_of_tails(m);
        let one = Series::one(m);
        let s = match self {
            AsymptoticCase::A2 => catalog::geometric(1, m).shift_int(1),
            AsymptoticCase::A3 => &one - &qi,
            AsymptoticCase::A4 => d,
            AsymptoticCase::A5 => g,
            AsymptoticCase::A6 => &(&d.scale_int(2) - &one) + &qi,
            AsymptoticCase::A7 => {
                let inner = &(&(&(&qi * &d) + &g) + &qi) - &one;
                &catalog::geometric(1, m) * &inner
            }
            AsymptoticCase::A8 => {
                let inner = &(&(&qi - &one) + &d.scale_int(3)) - &g.scale_int(2);
                inner.shift_int(-1)
            }
        };
        s.shift_int(-1).truncate(crate::Exponent::from_integer(order))
    }
}

impl fmt::Display for AsymptoticCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.nodes())
    }
}

impl FromStr for AsymptoticCase {
    type Err = AsymptoticError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AsymptoticCase::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| AsymptoticError::UnknownCase(s.to_string()))
    }
}

type Tf = TwoFloat;

fn tf(x: f64) -> Tf {
    Tf::from(x)
}

/// `e^{-t}` to double-double accuracy by Taylor expansion.
fn exp_neg(t: f64) -> Tf {
    let x = -tf(t);
    let mut term = tf(1.0);
    let mut sum = tf(1.0);
    for k in 1..60 {
        term = term * x / (k as f64);
        sum += term;
        if term.abs().hi() < 1e-34 {
            break;
        }
    }
    sum
}

struct Point {
    t: f64,
    q: Tf,
}

impl Point {
    fn new(t: f64) -> Result<Point, AsymptoticError> {
        if !(T_MIN..=T_MAX).contains(&t) {
            return Err(AsymptoticError::OutOfRange(t));
        }
        Ok(Point { t, q: exp_neg(t) })
    }

    fn loss(&self) -> AsymptoticError {
        AsymptoticError::PrecisionLoss { t: self.t }
    }

    /// `(q)_inf`
    fn qinf(&self) -> Result<Tf, AsymptoticError> {
        let mut p = tf(1.0);
        let mut qn = self.q;
        for _ in 0..MAX_TERMS {
            if qn.hi() < CUTOFF {
                return Ok(p);
            }
            p *= tf(1.0) - qn;
            qn *= self.q;
        }
        Err(self.loss())
    }

    /// `D(q) = sum q^n/(1-q^n)`, summed smallest term first.
    fn d(&self) -> Result<Tf, AsymptoticError> {
        let mut terms = Vec::new();
        let mut qn = self.q;
        let mut lead = None;
        for _ in 0..MAX_TERMS {
            let term = qn / (tf(1.0) - qn);
            let first = *lead.get_or_insert(term.hi());
            if term.hi() < CUTOFF * first {
                return Ok(ascending_sum(terms));
            }
            terms.push(term);
            qn *= self.q;
        }
        Err(self.loss())
    }

    /// `G(q) = sum_{n>=0} ((q)_n - (q)_inf)`
    fn g(&self, qinf: Tf) -> Result<Tf, AsymptoticError> {
        let mut terms = Vec::new();
        let mut pn = tf(1.0);
        let mut qn = self.q;
        for _ in 0..MAX_TERMS {
            let term = pn - qinf;
            if term.hi() < CUTOFF {
                return Ok(ascending_sum(terms));
            }
            terms.push(term);
            pn *= tf(1.0) - qn;
            qn *= self.q;
        }
        Err(self.loss())
    }
}

fn ascending_sum(mut terms: Vec<Tf>) -> Tf {
    terms.sort_by(|a, b| a.abs().hi().total_cmp(&b.abs().hi()));
    terms.into_iter().fold(tf(0.0), |a, b| a + b)
}

fn eval_tf(case: AsymptoticCase, p: &Point) -> Result<Tf, AsymptoticError> {
    use AsymptoticCase::*;
    let q = p.q;
    let one = tf(1.0);
    let qinf = p.qinf()?;
    let v = match case {
        A2 => one / (one - q),
        A3 => (one - qinf) / q,
        A4 => p.d()? / q,
        A5 => p.g(qinf)? / q,
        A6 => (tf(2.0) * p.d()? - one + qinf) / q,
        A7 => (qinf * p.d()? + p.g(qinf)? + qinf - one) / (q * (one - q)),
        A8 => (qinf - one + tf(3.0) * p.d()? - tf(2.0) * p.g(qinf)?) / (q * q),
    };
    Ok(v)
}

/// `(q)_inf^e H[A_k](e^{-t})`
pub fn eval_case(case: AsymptoticCase, t: f64) -> Result<f64, AsymptoticError> {
    Ok(eval_tf(case, &Point::new(t)?)?.into())
}

/// Normalized residual: `t Q - 1`, `Q - 1` or `t Q - m (gamma - log t)`.
fn residual(model: Model, t: f64, value: Tf) -> Tf {
    let gamma = Tf::new_add(GAMMA_HI, GAMMA_LO);
    match model {
        Model::InverseT => value * t - 1.0,
        Model::One => value - 1.0,
        Model::Log(m) => value * t - (gamma - t.ln()) * (m as f64),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualRow {
    pub t: f64,
    pub value: f64,
    pub residual: f64,
    /// `|r(t)| / |r(previous t)|`
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientGrid,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::InsufficientGrid => "insufficient-grid",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub prefactor: u32,
    pub model: Model,
    pub rows: Vec<ResidualRow>,
    pub verdict: Verdict,
}

fn check_grid(grid: &[f64]) -> Result<(), AsymptoticError> {
    if let Some(&t) = grid.iter().find(|t| !(T_MIN..=T_MAX).contains(*t)) {
        return Err(AsymptoticError::OutOfRange(t));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(AsymptoticError::UnorderedGrid);
    }
    Ok(())
}

/// Residual table and verdict over a decreasing grid.
pub fn check_case(case: AsymptoticCase, grid: &[f64]) -> Result<CaseReport, AsymptoticError> {
    check_grid(grid)?;
    let model = case.model();
    let values: Vec<(f64, Tf)> = grid
        .par_iter()
        .map(|&t| Ok((t, eval_tf(case, &Point::new(t)?)?)))
        .collect::<Result<_, AsymptoticError>>()?;
    let mut rows: Vec<ResidualRow> = Vec::with_capacity(values.len());
    for (t, v) in values {
        let r: f64 = residual(model, t, v).into();
        let ratio = rows.last().map(|p| r.abs() / p.residual.abs());
        rows.push(ResidualRow {
            t,
            value: v.into(),
            residual: r,
            ratio,
        });
    }
    let verdict = if rows.len() < 2 {
        Verdict::InsufficientGrid
    } else if rows.iter().all(|r| r.residual.abs() < SMALL_RESIDUAL)
        || rows
            .iter()
            .filter_map(|r| r.ratio)
            .all(|x| (RATIO_WINDOW.0..=RATIO_WINDOW.1).contains(&x))
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(CaseReport {
        case: case.name(),
        prefactor: case.prefactor(),
        model,
        rows,
        verdict,
    })
}

/// Least-squares constants for `Q ~ (a + c log t)/t` (even paths) or
/// `Q ~ b` (odd paths), with lower-order corrections absorbed when the grid
/// is long enough. Exploratory; carries no verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    pub case: String,
    pub form: String,
    pub constants: Vec<(String, f64)>,
}

pub fn fit_case(case: AsymptoticCase, grid: &[f64]) -> Result<Fit, AsymptoticError> {
    check_grid(grid)?;
    let pts: Vec<(f64, f64)> = grid
        .iter()
        .map(|&t| Ok((t, eval_case(case, t)?)))
        .collect::<Result<_, AsymptoticError>>()?;
    let even = case.nodes() % 2 == 0;
    let (names, basis): (&[&str], fn(f64) -> Vec<f64>) = match (even, pts.len()) {
        (true, n) if n >= 4 => (&["a", "c", "t", "t log t"], |t| vec![1.0, t.ln(), t, t * t.ln()]),
        (true, _) => (&["a", "c"], |t| vec![1.0, t.ln()]),
        (false, n) if n >= 3 => (&["b", "t", "t^2"], |t| vec![1.0, t, t * t]),
        (false, _) => (&["b"], |_| vec![1.0]),
    };
    let rows: Vec<(Vec<f64>, f64)> = pts
        .iter()
        .map(|&(t, v)| (basis(t), if even { t * v } else { v }))
        .collect();
    let coef = least_squares(&rows);
    let keep = if even { 2 } else { 1 };
    Ok(Fit {
        case: case.name(),
        form: if even { "(a + c log t)/t" } else { "b" }.to_string(),
        constants: names
            .iter()
            .zip(coef)
            .take(keep)
            .map(|(n, c)| (n.to_string(), c))
            .collect(),
    })
}

/// Normal equations solved by Gaussian elimination with partial pivoting.
fn least_squares(rows: &[(Vec<f64>, f64)]) -> Vec<f64> {
    let k = rows[0].0.len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for (x, y) in rows {
        for i in 0..k {
            for j in 0..k {
                a[i][j] += x[i] * x[j];
            }
            a[i][k] += x[i] * y;
        }
    }
    for c in 0..k {
        let p = (c..k)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap_or(c);
        a.swap(c, p);
        for r in 0..k {
            if r != c && a[c][c] != 0.0 {
                let f = a[r][c] / a[c][c];
                for j in c..=k {
                    a[r][j] -= f * a[c][j];
                }
            }
        }
    }
    (0..k).map(|i| a[i][k] / a[i][i]).collect()
}
