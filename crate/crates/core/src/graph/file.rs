//! JSON graph files: `{"r": 3, "edges": [[1, 2], [2, 3, 2]], "b": [1, "3/2", 1]}`.
//!
//! Nodes are 1-indexed, the multiplicity defaults to 1, `[i, i, m]` is a
//! loop. `b` entries may be integers or `"p/q"` strings and default to 1.
//! An optional `"prefactor"` shifts the whole series.

use serde::Deserialize;
use serde_json::Value;

use super::{Graph, GraphError, GraphSeriesSpec, Result};
use crate::series::Exponent;

#[derive(Debug, Deserialize)]
pub struct GraphFile {
    pub r: usize,
    #[serde(default)]
    pub edges: Vec<Vec<i64>>,
    #[serde(default)]
    pub b: Option<Vec<Value>>,
    #[serde(default)]
    pub prefactor: Option<Value>,
}

fn rational(v: &Value) -> Result<Exponent> {
    let bad = || GraphError::Parse(format!("not a rational: {v}"));
    match v {
        Value::Number(n) => n.as_i64().map(Exponent::from_integer).ok_or_else(bad),
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((p, q)) => {
                    let p: i64 = p.trim().parse().map_err(|_| bad())?;
                    let q: i64 = q.trim().parse().map_err(|_| bad())?;
                    if q == 0 {
                        return Err(bad());
                    }
                    Ok(Exponent::new(p, q))
                }
                None => s.parse().map(Exponent::from_integer).map_err(|_| bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Parses and validates a graph file.
pub fn parse_graph_file(text: &str) -> Result<GraphSeriesSpec> {
    let f: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    let mut g = Graph::empty(f.r);
    for e in &f.edges {
        let (i, j, m) = match e.as_slice() {
            [i, j] => (*i, *j, 1),
            [i, j, m] => (*i, *j, *m),
            _ => return Err(GraphError::Parse(format!("edge {e:?} needs 2 or 3 entries"))),
        };
        let in_range = |x: i64| x >= 1 && x as usize <= f.r;
        if !in_range(i) || !in_range(j) {
            return Err(GraphError::Parse(format!("edge {e:?} references a missing node")));
        }
        if m < 0 {
            return Err(GraphError::SpecViolation(format!(
                "edge {e:?} has negative multiplicity"
            )));
        }
        g.add_edge(i as usize - 1, j as usize - 1, m as u32);
    }
    let mut spec = GraphSeriesSpec::new(g);
    if let Some(b) = &f.b {
        if b.len() != f.r {
            return Err(GraphError::Parse(format!("b has {} entries, expected {}", b.len(), f.r)));
        }
        spec.b = b.iter().map(rational).collect::<Result<_>>()?;
    }
    if let Some(p) = &f.prefactor {
        spec.prefactor = rational(p)?;
    }
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_edges_loops_and_rationals() {
        let spec =
            parse_graph_file(r#"{"r": 3, "edges": [[1, 2], [2, 3, 2], [1, 1]], "b": [1, "3/2", 2]}"#)
                .unwrap();
        assert_eq!(
            spec.graph.matrix(),
            vec![vec![2, 1, 0], vec![1, 0, 2], vec![0, 2, 0]]
        );
        assert_eq!(spec.b[1], Exponent::new(3, 2));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_graph_file(r#"{"r": 2, "edges": [[1, 3]]}"#).is_err());
        assert!(parse_graph_file(r#"{"r": 2, "edges": [[1, 2, -1]]}"#).is_err());
        assert!(matches!(
            parse_graph_file(r#"{"r": 1, "b": ["1/2"]}"#),
            Err(GraphError::SpecViolation(_))
        ));
        assert!(parse_graph_file("not json").is_err());
    }
}
