//! Named graphs and shifted variants.

use super::{Graph, GraphError, GraphSeriesSpec, Result};

fn one_indexed(r: usize, edges: &[(usize, usize)]) -> Graph {
    let e: Vec<_> = edges.iter().map(|&(i, j)| (i - 1, j - 1, 1)).collect();
    Graph::from_edges(r, &e)
}

fn gamma8() -> Graph {
    one_indexed(
        8,
        &[
            (1, 2),
            (1, 5),
            (1, 6),
            (2, 3),
            (2, 7),
            (3, 4),
            (3, 6),
            (4, 5),
            (6, 8),
            (7, 8),
        ],
    )
}

fn b2() -> Graph {
    Graph::from_edges(2, &[(0, 1, 2)])
}

fn b3() -> Graph {
    Graph::from_edges(3, &[(0, 1, 2), (1, 2, 1)])
}

fn indexed(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Looks up a builtin graph by name.
///
/// Families: `A<k>` paths, `C<k>` cycles (k >= 3), `X<l>` stars with `l`
/// leaves. Fixed names: `D4 D5 E6 G8 H T2 T2-tree B2 B2-F2 B2-F3 B3 B3-H1
/// C3-coset C5-b2 C5-b3`.
pub fn builtin(name: &str) -> Result<GraphSeriesSpec> {
    let plain = |g: Graph| Ok(GraphSeriesSpec::new(g));
    match name {
        "D4" => plain(Graph::star(3)),
        "D5" => plain(one_indexed(5, &[(1, 2), (1, 3), (1, 4), (4, 5)])),
        "E6" => plain(one_indexed(6, &[(1, 2), (1, 3), (1, 4), (2, 5), (3, 6)])),
        "G8" => plain(gamma8()),
        "H" => plain(one_indexed(6, &[(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)])),
        // exponent n1n6 + n2n4 + n2n5 + n2n6 + n3n4 + n3n5, node 7 isolated
        "T2" => plain(one_indexed(
            7,
            &[(1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5)],
        )),
        // center with three arms of length two
        "T2-tree" => plain(one_indexed(
            7,
            &[(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)],
        )),
        "B2" => plain(b2()),
        "B2-F2" => Ok(GraphSeriesSpec::with_b(b2(), &[1, 2])),
        "B2-F3" => Ok(GraphSeriesSpec::with_b(b2(), &[2, 2])),
        "B3" => plain(b3()),
        "B3-H1" => Ok(GraphSeriesSpec::with_b(b3(), &[1, 2, 1])),
        "C3-coset" => Ok(GraphSeriesSpec::with_b(Graph::cycle(3), &[2, 1, 1])),
        "C5-b2" => Ok(GraphSeriesSpec::with_b(Graph::cycle(5), &[2, 1, 1, 1, 1])),
        "C5-b3" => Ok(GraphSeriesSpec::with_b(Graph::cycle(5), &[1, 2, 1, 1, 2])),
        _ => {
            if let Some(k) = indexed(name, "A").filter(|k| (1..=16).contains(k)) {
                return plain(Graph::path(k));
            }
            if let Some(k) = indexed(name, "C").filter(|k| (3..=16).contains(k)) {
                return plain(Graph::cycle(k));
            }
            if let Some(l) = indexed(name, "X").filter(|l| (1..=15).contains(l)) {
                return plain(Graph::star(l));
            }
            Err(GraphError::UnknownGraph(name.to_string()))
        }
    }
}

/// Representative builtin names for listings.
pub fn builtin_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=8).map(|k| format!("A{k}")).collect();
    v.extend((3..=5).map(|k| format!("C{k}")));
    v.extend((3..=5).map(|l| format!("X{l}")));
    v.extend(
        [
            "D4", "D5", "E6", "G8", "H", "T2", "T2-tree", "B2", "B2-F2", "B2-F3", "B3", "B3-H1",
            "C3-coset", "C5-b2", "C5-b3",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_adjacency() {
        let g = builtin("A4").unwrap().graph;
        assert_eq!(
            g.matrix(),
            vec![
                vec![0, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![0, 1, 0, 1],
                vec![0, 0, 1, 0]
            ]
        );
    }

    #[test]
    fn double_edge() {
        assert_eq!(builtin("B2").unwrap().graph.matrix(), vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn printed_t2_has_isolated_node_and_a_cycle() {
        let g = builtin("T2").unwrap().graph;
        assert_eq!(g.neighbours(6).count(), 0);
        assert_eq!(g.cyclomatic_number(), 1);
        assert_eq!(builtin("T2-tree").unwrap().graph.cyclomatic_number(), 0);
    }

    #[test]
    fn all_listed_names_resolve() {
        for n in builtin_names() {
            builtin(&n).unwrap();
        }
        assert!(matches!(builtin("Z9"), Err(GraphError::UnknownGraph(_))));
        assert!(builtin("C2").is_err());
    }
}
