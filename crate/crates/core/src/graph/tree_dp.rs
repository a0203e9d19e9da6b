//! Message passing on forests; one cycle is broken by conditioning on the
//! value of a node that lies on it.
//!
//! For node `j` with parent `p`, the message is the table
//! `M_j(m) = sum_v q^{v (b_j + c_jp m) + c_jj v^2 / 2} / (q)_v * prod_children M_c(v)`
//! over parent values `m`.

use super::{add_shifted, mul_add, GraphError, Graph, Lattice, Result};

pub(super) fn run(lat: &Lattice, graph: &Graph) -> Result<Vec<i128>> {
    let cycles = graph.cyclomatic_number();
    if cycles > 1 {
        return Err(GraphError::UnsupportedTopology(cycles));
    }
    let len = lat.top as usize + 1;
    let mut alive = vec![true; lat.r];
    if cycles == 0 {
        return Ok(forest(lat, graph, &lat.lin, &alive));
    }
    let x = cycle_node(graph);
    alive[x] = false;
    let mut out = vec![0i128; len];
    let mut t = 0i64;
    loop {
        let base = t * lat.lin[x] + lat.coupling(x, x) * t * t;
        if base > lat.top {
            break;
        }
        let mut lin = lat.lin.clone();
        for (u, _) in graph.neighbours(x) {
            lin[u] += lat.coupling(u, x) * t;
        }
        let rest = forest(lat, graph, &lin, &alive);
        mul_add(&mut out, &lat.invp[t as usize], &rest, base as usize);
        t += 1;
    }
    Ok(out)
}

/// A node on the unique cycle: whatever survives repeatedly stripping
/// nodes of degree at most one.
fn cycle_node(graph: &Graph) -> usize {
    let r = graph.nodes();
    let mut deg: Vec<usize> = (0..r).map(|i| graph.neighbours(i).count()).collect();
    let mut removed = vec![false; r];
    let mut stack: Vec<usize> = (0..r).filter(|&i| deg[i] <= 1).collect();
    while let Some(u) = stack.pop() {
        if removed[u] {
            continue;
        }
        removed[u] = true;
        for (v, _) in graph.neighbours(u) {
            if !removed[v] {
                deg[v] -= 1;
                if deg[v] <= 1 {
                    stack.push(v);
                }
            }
        }
    }
    (0..r).find(|&i| !removed[i]).expect("a graph with a cycle has a 2-core")
}

fn forest(lat: &Lattice, graph: &Graph, lin: &[i64], alive: &[bool]) -> Vec<i128> {
    let len = lat.top as usize + 1;
    let mut out = vec![0i128; len];
    out[0] = 1;
    let mut seen: Vec<bool> = alive.iter().map(|a| !a).collect();
    for root in 0..lat.r {
        if seen[root] {
            continue;
        }
        // preorder with parents
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; lat.r];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for (v, _) in graph.neighbours(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    stack.push(v);
                }
            }
        }
        let mut messages: Vec<Option<Vec<Vec<i128>>>> = vec![None; lat.r];
        let mut comp = Vec::new();
        for &j in order.iter().rev() {
            let children: Vec<usize> = graph
                .neighbours(j)
                .map(|(v, _)| v)
                .filter(|&v| alive[v] && parent[v] == j)
                .collect();
            let weighted = local_tables(lat, lin[j], &children, &mut messages);
            if parent[j] == usize::MAX {
                comp = vec![0i128; len];
                for (v, c) in weighted.iter().enumerate() {
                    let v = v as i64;
                    add_shifted(&mut comp, c, v * lin[j] + lat.coupling(j, j) * v * v);
                }
            } else {
                let cp = lat.coupling(j, parent[j]);
                let mmax = lat.top / lat.denom;
                let table = (0..=mmax)
                    .map(|m| {
                        let mut t = vec![0i128; len];
                        for (v, c) in weighted.iter().enumerate() {
                            let v = v as i64;
                            let shift = v * (lin[j] + cp * m) + lat.coupling(j, j) * v * v;
                            if shift > lat.top {
                                break;
                            }
                            add_shifted(&mut t, c, shift);
                        }
                        t
                    })
                    .collect();
                messages[j] = Some(table);
            }
        }
        let mut next = vec![0i128; len];
        mul_add(&mut next, &out, &comp, 0);
        out = next;
    }
    out
}

/// `1/(q)_v * prod_children M_c(v)` for every admissible value `v` of node `j`.
fn local_tables(
    lat: &Lattice,
    lin_j: i64,
    children: &[usize],
    messages: &mut [Option<Vec<Vec<i128>>>],
) -> Vec<Vec<i128>> {
    let len = lat.top as usize + 1;
    let mut tables = Vec::new();
    let mut v = 0i64;
    while v * lin_j <= lat.top {
        let mut acc = lat.invp[v as usize].clone();
        for &c in children {
            let msg = messages[c].as_ref().expect("children are processed first");
            let mut next = vec![0i128; len];
            mul_add(&mut next, &acc, &msg[v as usize], 0);
            acc = next;
        }
        tables.push(acc);
        v += 1;
    }
    for &c in children {
        messages[c] = None;
    }
    tables
}
