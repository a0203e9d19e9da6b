//! Depth-first enumeration of the summation lattice with prefix products.
//!
//! Coordinates are assigned in order; every term of the exponent is
//! nonnegative, so the partial exponent is a lower bound and a branch is cut
//! as soon as it exceeds the target. The last coordinate is summed into a
//! single series before multiplying by the prefix, and the first coordinate
//! is split across threads.

use rayon::prelude::*;

use super::{add_shifted, mul_add, Lattice};

/// Exponent increment from setting coordinate `k` to `v`, given earlier values.
fn increment(lat: &Lattice, k: usize, v: i64, assigned: &[i64]) -> i64 {
    let mut lin = lat.lin[k];
    for (j, &nj) in assigned.iter().enumerate() {
        lin += lat.coupling(k, j) * nj;
    }
    v * lin + lat.coupling(k, k) * v * v
}

struct Walker<'a> {
    lat: &'a Lattice,
    out: Vec<i128>,
    assigned: Vec<i64>,
}

impl Walker<'_> {
    fn descend(&mut self, depth: usize, e: i64, prefix: &[i128]) {
        let lat = self.lat;
        let room = (lat.top - e + 1) as usize;
        if depth + 1 == lat.r {
            let mut last = vec![0i128; room];
            let mut v = 0i64;
            loop {
                let inc = increment(lat, depth, v, &self.assigned);
                if inc > lat.top - e {
                    break;
                }
                add_shifted(&mut last, &lat.invp[v as usize], inc);
                v += 1;
            }
            mul_add(&mut self.out[e as usize..], prefix, &last, 0);
            return;
        }
        let mut v = 0i64;
        loop {
            let inc = increment(lat, depth, v, &self.assigned);
            if inc > lat.top - e {
                break;
            }
            let ne = e + inc;
            let nroom = (lat.top - ne + 1) as usize;
            let mut next = vec![0i128; nroom];
            mul_add(&mut next, &prefix[..nroom], &lat.invp[v as usize], 0);
            self.assigned.push(v);
            self.descend(depth + 1, ne, &next);
            self.assigned.pop();
            v += 1;
        }
    }
}

pub(super) fn run(lat: &Lattice) -> Vec<i128> {
    let len = lat.top as usize + 1;
    if lat.r == 0 {
        let mut out = vec![0i128; len];
        out[0] = 1;
        return out;
    }
    let mut firsts = Vec::new();
    let mut v = 0i64;
    while increment(lat, 0, v, &[]) <= lat.top {
        firsts.push(v);
        v += 1;
    }
    if lat.r == 1 {
        let mut out = vec![0i128; len];
        for v in firsts {
            add_shifted(&mut out, &lat.invp[v as usize], increment(lat, 0, v, &[]));
        }
        return out;
    }
    firsts
        .into_par_iter()
        .map(|v| {
            let e = increment(lat, 0, v, &[]);
            let room = (lat.top - e + 1) as usize;
            let mut w = Walker {
                lat,
                out: vec![0i128; len],
                assigned: vec![v],
            };
            let prefix = lat.invp[v as usize][..room].to_vec();
            w.descend(1, e, &prefix);
            w.out
        })
        .reduce(
            || vec![0i128; len],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}
