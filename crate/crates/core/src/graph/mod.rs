//! Graph series `sum_n q^{n C n^T / 2 + b.n} / prod (q)_{n_i}`.
//!
//! Two evaluators share one scaled-integer representation: exponents are
//! multiplied by the lcm `D` of the denominators in `b`, so every exponent
//! becomes an integer index and coefficients fit in `i128` (guarded by an
//! explicit bound computed up front).

mod builtins;
mod enumerate;
mod file;
mod tree_dp;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::series::{Exponent, Series};

pub use builtins::{builtin, builtin_names};
pub use file::{parse_graph_file, GraphFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("spec violation: {0}")]
    SpecViolation(String),
    #[error("unknown graph `{0}`")]
    UnknownGraph(String),
    #[error("tree DP supports forests and unicyclic graphs; this graph has {0} independent cycles")]
    UnsupportedTopology(usize),
    #[error("coefficients may exceed the 128-bit fast path at this order")]
    Overflow,
    #[error("graph file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// Undirected multigraph with loops, stored as its symmetric matrix.
/// A loop contributes `2` per multiplicity to the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    r: usize,
    c: Vec<u32>,
}

impl Graph {
    pub fn empty(r: usize) -> Graph {
        Graph { r, c: vec![0; r * r] }
    }

    /// From 0-indexed `(i, j, multiplicity)` triples.
    pub fn from_edges(r: usize, edges: &[(usize, usize, u32)]) -> Graph {
        let mut g = Graph::empty(r);
        for &(i, j, m) in edges {
            g.add_edge(i, j, m);
        }
        g
    }

    /// From a full matrix; must be symmetric with even diagonal.
    pub fn from_matrix(rows: Vec<Vec<u32>>) -> Result<Graph> {
        let r = rows.len();
        let mut c = Vec::with_capacity(r * r);
        for row in &rows {
            if row.len() != r {
                return Err(GraphError::SpecViolation("matrix is not square".into()));
            }
            c.extend_from_slice(row);
        }
        let g = Graph { r, c };
        for i in 0..r {
            if g.c(i, i) % 2 != 0 {
                return Err(GraphError::SpecViolation(format!(
                    "diagonal entry {} is odd",
                    i + 1
                )));
            }
            for j in 0..i {
                if g.c(i, j) != g.c(j, i) {
                    return Err(GraphError::SpecViolation("matrix is not symmetric".into()));
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize, m: u32) {
        let r = self.r;
        if i == j {
            self.c[i * r + i] += 2 * m;
        } else {
            self.c[i * r + j] += m;
            self.c[j * r + i] += m;
        }
    }

    pub fn nodes(&self) -> usize {
        self.r
    }

    pub fn c(&self, i: usize, j: usize) -> u32 {
        self.c[i * self.r + j]
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        (0..self.r)
            .map(|i| (0..self.r).map(|j| self.c(i, j)).collect())
            .collect()
    }

    pub fn path(k: usize) -> Graph {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i, 1)).collect();
        Graph::from_edges(k, &edges)
    }

    pub fn cycle(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k, 1)).collect();
        Graph::from_edges(k, &edges)
    }

    /// Star with `l` leaves around node 0.
    pub fn star(l: usize) -> Graph {
        let edges: Vec<_> = (1..=l).map(|i| (0, i, 1)).collect();
        Graph::from_edges(l + 1, &edges)
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.r);
        let mut g = Graph::empty(self.r);
        for i in 0..self.r {
            for j in 0..self.r {
                g.c[perm[i] * self.r + perm[j]] = self.c(i, j);
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let r = self.r + other.r;
        let mut g = Graph::empty(r);
        for i in 0..self.r {
            for j in 0..self.r {
                g.c[i * r + j] = self.c(i, j);
            }
        }
        for i in 0..other.r {
            for j in 0..other.r {
                g.c[(i + self.r) * r + j + self.r] = other.c(i, j);
            }
        }
        g
    }

    /// Neighbours (excluding the node itself) with their multiplicities.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        (0..self.r)
            .filter(move |&j| j != i && self.c(i, j) > 0)
            .map(move |j| (j, self.c(i, j)))
    }

    fn components(&self) -> usize {
        let mut seen = vec![false; self.r];
        let mut count = 0;
        for s in 0..self.r {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for (v, _) in self.neighbours(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    /// Number of independent cycles of the underlying simple graph
    /// (multi-edges count once, loops are ignored).
    pub fn cyclomatic_number(&self) -> usize {
        let edges = (0..self.r)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .filter(|&(i, j)| self.c(i, j) > 0)
            .count();
        edges + self.components() - self.r
    }
}

/// Graph plus linear shifts `b` and an overall `q^prefactor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSeriesSpec {
    pub graph: Graph,
    pub b: Vec<Exponent>,
    pub prefactor: Exponent,
}

impl GraphSeriesSpec {
    /// The plain graph series: `b = (1, ..., 1)`, no prefactor.
    pub fn new(graph: Graph) -> GraphSeriesSpec {
        let b = vec![Exponent::one(); graph.nodes()];
        GraphSeriesSpec {
            graph,
            b,
            prefactor: Exponent::zero(),
        }
    }

    pub fn with_b(graph: Graph, b: &[i64]) -> GraphSeriesSpec {
        GraphSeriesSpec {
            b: b.iter().map(|&x| Exponent::from_integer(x)).collect(),
            ..GraphSeriesSpec::new(graph)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.len() != self.graph.nodes() {
            return Err(GraphError::SpecViolation(format!(
                "b has {} entries for {} nodes",
                self.b.len(),
                self.graph.nodes()
            )));
        }
        if let Some((i, bi)) = self.b.iter().enumerate().find(|(_, b)| **b < Exponent::one()) {
            return Err(GraphError::SpecViolation(format!(
                "b_{} = {} is below 1",
                i + 1,
                bi
            )));
        }
        Ok(())
    }

    pub fn permute(&self, perm: &[usize]) -> GraphSeriesSpec {
        let mut b = vec![Exponent::zero(); self.b.len()];
        for (i, &p) in perm.iter().enumerate() {
            b[p] = self.b[i];
        }
        GraphSeriesSpec {
            graph: self.graph.permute(perm),
            b,
            prefactor: self.prefactor,
        }
    }

    pub fn disjoint_union(&self, other: &GraphSeriesSpec) -> GraphSeriesSpec {
        GraphSeriesSpec {
            graph: self.graph.disjoint_union(&other.graph),
            b: self.b.iter().chain(&other.b).copied().collect(),
            prefactor: self.prefactor + other.prefactor,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Tree DP when the topology allows it, otherwise enumeration.
    Auto,
    Enumerate,
    TreeDp,
}

/// Scaled-integer data shared by both evaluators.
pub(crate) struct Lattice {
    pub r: usize,
    pub denom: i64,
    /// Highest scaled exponent index needed.
    pub top: i64,
    /// `c_ij * D` off the diagonal, `c_ii / 2 * D` on it.
    pub coupling: Vec<i64>,
    /// `b_i * D`.
    pub lin: Vec<i64>,
    /// `1/(q)_k` on the scaled lattice, for `k <= top / D`, each of length `top + 1`.
    pub invp: Vec<Vec<i128>>,
}

impl Lattice {
    fn new(spec: &GraphSeriesSpec, order: i64) -> Result<Option<Lattice>> {
        spec.validate()?;
        let r = spec.graph.nodes();
        let denom = spec
            .b
            .iter()
            .chain(std::iter::once(&spec.prefactor))
            .fold(1i64, |d, b| d.lcm(b.denom()));
        let target = Exponent::from_integer(order) - spec.prefactor;
        let top = (target * denom).floor().to_integer();
        if top < 0 {
            return Ok(None);
        }
        check_bound(r, top / denom)?;
        let mut coupling = vec![0i64; r * r];
        for i in 0..r {
            for j in 0..r {
                let c = spec.graph.c(i, j) as i64;
                coupling[i * r + j] = if i == j { c / 2 * denom } else { c * denom };
            }
        }
        let lin = spec
            .b
            .iter()
            .map(|b| (*b * denom).to_integer())
            .collect();
        let kmax = (top / denom) as usize;
        let len = top as usize + 1;
        let mut invp = Vec::with_capacity(kmax + 1);
        let mut cur = vec![0i128; len];
        cur[0] = 1;
        invp.push(cur.clone());
        for k in 1..=kmax {
            // multiply by 1/(1 - q^k): running sum with stride k*D
            let stride = k * denom as usize;
            for i in stride..len {
                cur[i] += cur[i - stride];
            }
            invp.push(cur.clone());
        }
        Ok(Some(Lattice {
            r,
            denom,
            top,
            coupling,
            lin,
            invp,
        }))
    }

    pub fn coupling(&self, i: usize, j: usize) -> i64 {
        self.coupling[i * self.r + j]
    }

    fn into_series(self, coeffs: Vec<i128>, spec: &GraphSeriesSpec, order: i64) -> Series {
        let c: Vec<BigRational> = coeffs
            .into_iter()
            .map(|x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        let s = Series::from_scaled(self.denom, 0, self.top, c).expect("positive denominator");
        s.shift(spec.prefactor)
            .truncate(Exponent::from_integer(order))
            .coarsen()
    }
}

/// Every coefficient of every partial sum is bounded by the number of
/// monomials of `1/(q)_inf^r` up to `q^n`; refuse the `i128` path when that
/// count gets close to overflow.
fn check_bound(r: usize, n: i64) -> Result<()> {
    let n = n as usize;
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for _ in 0..r {
        for k in 1..=n {
            for i in k..=n {
                let add = p[i - k].clone();
                p[i] += add;
            }
        }
    }
    let total: BigInt = p.iter().sum();
    if total.bits() > 120 || total.to_i128().is_none() {
        return Err(GraphError::Overflow);
    }
    Ok(())
}

/// Adds `a * b` into `out`, truncating at `out.len()`. Skips zero entries of `a`.
pub(crate) fn mul_add(out: &mut [i128], a: &[i128], b: &[i128], shift: usize) {
    let len = out.len();
    if shift >= len {
        return;
    }
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if i + shift >= len {
            break;
        }
        let room = len - i - shift;
        for (o, &y) in out[i + shift..].iter_mut().zip(&b[..room.min(b.len())]) {
            *o += x * y;
        }
    }
}

/// Adds `a` shifted by `shift` into `out`.
pub(crate) fn add_shifted(out: &mut [i128], a: &[i128], shift: i64) {
    let shift = shift as usize;
    if shift >= out.len() {
        return;
    }
    for (o, &x) in out[shift..].iter_mut().zip(a) {
        *o += x;
    }
}

/// Evaluates the graph series exactly through `q^order`.
pub fn evaluate(spec: &GraphSeriesSpec, order: i64, method: Method) -> Result<Series> {
    let Some(lat) = Lattice::new(spec, order)? else {
        return Ok(Series::zero(order));
    };
    let coeffs = match method {
        Method::Enumerate => enumerate::run(&lat),
        Method::TreeDp => tree_dp::run(&lat, &spec.graph)?,
        Method::Auto => {
            if spec.graph.cyclomatic_number() <= 1 {
                tree_dp::run(&lat, &spec.graph)?
            } else {
                enumerate::run(&lat)
            }
        }
    };
    Ok(lat.into_series(coeffs, spec, order))
}

pub fn evaluate_enumerate(spec: &GraphSeriesSpec, order: i64) -> Result<Series> {
    evaluate(spec, order, Method::Enumerate)
}

pub fn evaluate_tree_dp(spec: &GraphSeriesSpec, order: i64) -> Result<Series> {
    evaluate(spec, order, Method::TreeDp)
}
