use proptest::prelude::*;
use qgraph_core::graph::{
    builtin, builtin_names, evaluate, evaluate_enumerate, evaluate_tree_dp, Graph, GraphSeriesSpec,
    Method,
};
use qgraph_core::{Comparison, Exponent, Series};

fn graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (1..=max_nodes).prop_flat_map(|r| {
        let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
        prop::collection::vec(0u32..3, pairs.len()).prop_map(move |mults| {
            let edges: Vec<(usize, usize, u32)> = pairs
                .iter()
                .zip(&mults)
                .filter(|(_, &m)| m > 0)
                .map(|(&(i, j), &m)| (i, j, if i == j { 1 } else { m }))
                .collect();
            Graph::from_edges(r, &edges)
        })
    })
}

fn same(a: &Series, b: &Series, order: i64) -> bool {
    Series::equal_to_order(a, b, Exponent::from_integer(order)).unwrap() == Comparison::Equal
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_invariance(g in graph(4), seed in any::<u64>()) {
        let r = g.nodes();
        let mut perm: Vec<usize> = (0..r).collect();
        // Fisher-Yates driven by the seed
        let mut s = seed;
        for i in (1..r).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let spec = GraphSeriesSpec::new(g);
        let a = evaluate(&spec, 10, Method::Enumerate).unwrap();
        let b = evaluate(&spec.permute(&perm), 10, Method::Enumerate).unwrap();
        prop_assert!(same(&a, &b, 10));
    }

    #[test]
    fn disjoint_union_multiplies(g in graph(3), h in graph(3)) {
        let (sg, sh) = (GraphSeriesSpec::new(g), GraphSeriesSpec::new(h));
        let union = evaluate(&sg.disjoint_union(&sh), 10, Method::Enumerate).unwrap();
        let product = &evaluate(&sg, 10, Method::Auto).unwrap() * &evaluate(&sh, 10, Method::Auto).unwrap();
        prop_assert!(same(&union, &product, 10));
    }

    #[test]
    fn tree_dp_matches_enumeration_on_random_forests(g in graph(5)) {
        prop_assume!(g.cyclomatic_number() <= 1);
        let spec = GraphSeriesSpec::new(g);
        let a = evaluate_enumerate(&spec, 12).unwrap();
        let b = evaluate_tree_dp(&spec, 12).unwrap();
        prop_assert!(same(&a, &b, 12));
    }
}

#[test]
fn methods_agree_on_every_tree_and_unicyclic_builtin() {
    let mut checked = Vec::new();
    for name in builtin_names() {
        let spec = builtin(&name).unwrap();
        if spec.graph.cyclomatic_number() > 1 {
            continue;
        }
        let order = 20;
        let a = evaluate_enumerate(&spec, order).unwrap();
        let b = evaluate_tree_dp(&spec, order).unwrap();
        assert!(same(&a, &b, order), "{name}");
        checked.push(name);
    }
    for must in ["A8", "C5", "D4", "D5", "E6", "H", "T2", "T2-tree", "B3", "X5", "C3-coset"] {
        assert!(checked.iter().any(|n| n == must), "{must} not covered");
    }
}

#[test]
fn a2_coefficients() {
    let s = evaluate(&builtin("A2").unwrap(), 8, Method::TreeDp).unwrap();
    assert_eq!(s.i64_coeffs(0, 8).unwrap(), [1, 2, 4, 7, 12, 19, 30, 45, 67]);
}

#[test]
fn path_shift_relation() {
    // H[A_{k+4}] (q)_inf^2 against the end-weighted sum over k nodes
    use qgraph_core::catalog::{inverse_pochhammers, qinf};
    let n = 24;
    for k in [3usize, 4] {
        let ip = inverse_pochhammers(n as usize + 2, n);
        let mut rhs = Series::zero(n);
        let mut stack = vec![(Vec::<usize>::new(), 0i64)];
        while let Some((ns, e)) = stack.pop() {
            if ns.len() == k {
                let mut t = Series::q_pow(e, n);
                for (j, &v) in ns.iter().enumerate() {
                    let idx = if j == 0 || j == k - 1 { v + 1 } else { v };
                    t = &t * &ip[idx];
                }
                rhs = &rhs + &t;
                continue;
            }
            for v in 0.. {
                let add = (ns.last().map_or(0, |&p| p * v) + v) as i64;
                if e + add > n {
                    break;
                }
                let mut next = ns.clone();
                next.push(v);
                stack.push((next, e + add));
            }
        }
        let q2 = qinf(n).pow(2).unwrap();
        let lhs = &evaluate(&builtin(&format!("A{}", k + 4)).unwrap(), n, Method::Auto).unwrap() * &q2;
        assert!(same(&lhs, &rhs, n), "k = {k}");
    }
}
