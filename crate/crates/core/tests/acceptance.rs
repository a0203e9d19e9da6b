//! End-to-end acceptance: one line per criterion, then a single verdict.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qgraph_core::asymptotics::{check_case, AsymptoticCase, Verdict, DEFAULT_GRID};
use qgraph_core::catalog::{inverse_pochhammers, poch, poch_inf};
use qgraph_core::graph::{
    builtin, builtin_names, evaluate, evaluate_enumerate, evaluate_tree_dp, Graph,
    GraphSeriesSpec, Method,
};
use qgraph_core::jets::{compare_with_graph_series, hilbert_series, JetPresentation, Mode};
use qgraph_core::registry::{verify, verify_all, Status};
use qgraph_core::theta::{cone_sum, cone_sum_box, q, qf, Cone, ConeThetaSpec, Ray, Weight};
use qgraph_core::{Comparison, Exponent, Series};

fn same(a: &Series, b: &Series, order: i64) -> bool {
    Series::equal_to_order(a, b, Exponent::from_integer(order)).unwrap() == Comparison::Equal
}

fn identity_suite() -> String {
    let reports = verify_all(&[], None, false);
    let failed: Vec<_> = reports.iter().filter(|r| !r.status.is_pass()).map(|r| r.id.clone()).collect();
    assert!(failed.is_empty(), "failing: {failed:?}");
    let resolved = reports
        .iter()
        .filter(|r| matches!(r.status, Status::ResolvedVariant { .. }))
        .count();
    format!("{} entries, {resolved} resolved variants", reports.len())
}

fn prefactors() -> String {
    let mut out = Vec::new();
    for (id, want) in [("C5", "^-2"), ("GAMMA8", "^-3"), ("E6", "^-3")] {
        let r = verify(id, None).unwrap();
        let Status::ResolvedVariant { selected, rejected } = r.status else {
            panic!("{id} did not resolve: {:?}", r.status);
        };
        assert!(selected.contains(want), "{id} selected {selected}");
        assert_eq!(rejected.len(), 1);
        let m = rejected[0].failure.mismatch.clone().expect("rejected by a coefficient");
        let e: i64 = m.exponent.parse().unwrap();
        assert!(e <= 3, "{id} rejected only at q^{e}");
        if id == "C5" {
            assert_eq!((e, m.rhs.as_str(), m.lhs.as_str()), (1, "4", "5"));
        }
        out.push(format!("{id} {selected}, other fails at q^{e}"));
    }
    out.join("; ")
}

fn d4_four_way() -> String {
    for id in ["D4-U", "D4-LERCH", "D4-THETA"] {
        let r = verify(id, Some(40)).unwrap();
        assert!(r.status.is_pass(), "{id}: {:?}", r.status);
        assert_eq!(r.order, 40);
    }
    "graph = Lerch form = U form = cone sum through q^40".into()
}

fn jets() -> String {
    for name in ["A2", "A3", "C3"] {
        let cmp = compare_with_graph_series(&builtin(name).unwrap().graph, 10, Mode::DualPrime, 0).unwrap();
        assert!(cmp.matches(), "{name}: {:?}", cmp.mismatch);
    }
    let dims = |ell, rels: &[(usize, usize)], d| {
        hilbert_series(&JetPresentation::new(ell, rels, d).unwrap(), Mode::DualPrime, 0)
            .unwrap()
            .dims
    };
    assert_eq!(dims(2, &[], 6), [1, 2, 5, 10, 20, 36, 65]);
    assert_eq!(dims(2, &[(0, 1)], 10), [1, 2, 4, 7, 12, 19, 30, 45, 67, 97, 139]);
    assert_eq!(dims(1, &[(0, 0)], 12), [1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6, 7, 9]);
    "A2, A3, C3 to weight 10; free ring, two lines, fat point".into()
}

fn bailey() -> String {
    let r = verify("BAILEY-D5", None).unwrap();
    assert_eq!(r.status, Status::Pass);
    format!("{} cases", r.cases)
}

fn asymptotics() -> String {
    for case in AsymptoticCase::ALL {
        let r = check_case(case, &DEFAULT_GRID).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{case}: {:?}", r.rows);
    }
    "A2..A8 on 0.2, 0.1, 0.05, 0.025".into()
}

fn random_series(rng: &mut ChaCha8Rng, order: i64) -> Series {
    let start = rng.gen_range(-2..3);
    let len = rng.gen_range(0..10);
    let c: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..7)).collect();
    Series::from_coeffs(start, &c, order)
}

fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize) -> Graph {
    let r = rng.gen_range(1..=max_nodes);
    let mut edges = Vec::new();
    for i in 0..r {
        for j in i..r {
            let m = rng.gen_range(0..3u32);
            if m > 0 {
                edges.push((i, j, if i == j { 1 } else { m }));
            }
        }
    }
    Graph::from_edges(r, &edges)
}

fn properties() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut laws = 0;
    for _ in 0..100 {
        let (a, b, c) = (random_series(&mut rng, 15), random_series(&mut rng, 15), random_series(&mut rng, 15));
        let close = |x: &Series, y: &Series| {
            let o = x.order().min(y.order());
            Series::equal_to_order(x, y, o).unwrap().is_equal()
        };
        assert!(close(&(&a * &b), &(&b * &a)));
        assert!(close(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        assert!(close(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        laws += 1;
    }

    for _ in 0..20 {
        let g = random_graph(&mut rng, 4);
        let mut perm: Vec<usize> = (0..g.nodes()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let spec = GraphSeriesSpec::new(g);
        let a = evaluate(&spec, 10, Method::Enumerate).unwrap();
        let b = evaluate(&spec.permute(&perm), 10, Method::Enumerate).unwrap();
        assert!(same(&a, &b, 10));
        let h = GraphSeriesSpec::new(random_graph(&mut rng, 3));
        let u = evaluate(&spec.disjoint_union(&h), 10, Method::Enumerate).unwrap();
        let p = &a * &evaluate(&h, 10, Method::Auto).unwrap();
        assert!(same(&u, &p, 10));
    }

    let mut methods = 0;
    for name in builtin_names() {
        let spec = builtin(&name).unwrap();
        if spec.graph.cyclomatic_number() <= 1 {
            assert!(same(&evaluate_enumerate(&spec, 20).unwrap(), &evaluate_tree_dp(&spec, 20).unwrap(), 20), "{name}");
            methods += 1;
        }
    }

    let cone = |n, m, sign| Cone { n, m, sign };
    let specs = [
        ConeThetaSpec {
            quad: (qf(1, 2), q(2), qf(3, 2)),
            lin: (qf(3, 2), qf(5, 2)),
            const_exp: q(0),
            weight: Weight { terms: vec![(2, 1, 0), (1, 0, 0)], alpha: 1, beta: 1 },
            cones: vec![cone(Ray::NonNeg, Ray::NonNeg, 1)],
        },
        ConeThetaSpec {
            quad: (qf(1, 2), q(3), q(3)),
            lin: (qf(3, 2), q(4)),
            const_exp: q(0),
            weight: Weight { terms: vec![(1, 2, 0), (2, 1, 0), (1, 0, 0)], alpha: 1, beta: 0 },
            cones: vec![cone(Ray::NonNeg, Ray::NonNeg, 1), cone(Ray::Neg, Ray::Neg, -1)],
        },
    ];
    for s in &specs {
        assert!(same(&cone_sum(s, 12).unwrap(), &cone_sum_box(s, 12, 36), 12));
    }

    let n = 25;
    let ip = inverse_pochhammers(n as usize, n);
    for k in 1..=3i64 {
        let lhs = (0..=n / k).fold(Series::zero(n), |acc, j| &acc + &ip[j as usize].shift_int(k * j));
        assert!(same(&lhs, &poch_inf(k, n).invert().unwrap(), n));
        for t in 1..=3i64 {
            let lhs = (0..=n / t).fold(Series::zero(n), |acc, j| {
                &acc + &(&poch(k + 1, j as u64, n) * &ip[j as usize]).shift_int(t * j)
            });
            let rhs = &poch_inf(k + t + 1, n) * &poch_inf(t, n).invert().unwrap();
            assert!(same(&lhs, &rhs, n));
        }
    }
    format!("{laws} ring-law cases, 20 graph pairs, {methods} builtins by both methods, 2 cone sums, Euler and q-binomial at 3 + 9 points")
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> String); 7] = [
        ("identity suite at default orders", identity_suite),
        ("prefactor resolutions", prefactors),
        ("four-way D4 equality", d4_four_way),
        ("jet oracle", jets),
        ("Bailey pair", bailey),
        ("asymptotics", asymptotics),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {} FAIL {name} ({secs:.1}s): {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
