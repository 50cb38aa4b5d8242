//! Line-oriented text formats: graphs and vertex lists.
//!
//! Graph files look like
//!
//! ```text
//! # comment
//! 4 3
//! 1 2 1 1
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! The header gives `n m`. The weight line is optional; it is present exactly
//! when the file has `m + 1` data lines after the header. Edge lines are
//! 0-based with `u < v`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_numbers(line_no: usize, body: &str) -> Result<Vec<u64>> {
    body.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| {
                Error::parse_line(line_no, format!("expected an integer, found {tok:?}"))
            })
        })
        .collect()
}

/// Parses the graph file format.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let lines: Vec<(usize, &str)> = data_lines(text).collect();
    let Some(&(header_line, header)) = lines.first() else {
        return Err(Error::parse_line(1, "missing `n m` header"));
    };
    let header = parse_numbers(header_line, header)?;
    let [n, m] = header[..] else {
        return Err(Error::parse_line(header_line, "header must be `n m`"));
    };
    let (n, m) = (n as usize, m as usize);
    let rest = &lines[1..];
    let (weights, edge_lines) = if rest.len() == m + 1 {
        let (line_no, body) = rest[0];
        let weights = parse_numbers(line_no, body)?;
        if weights.len() != n {
            return Err(Error::parse_line(
                line_no,
                format!("expected {n} weights, found {}", weights.len()),
            ));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::parse_line(line_no, "weights must be positive"));
        }
        (weights, &rest[1..])
    } else if rest.len() == m {
        (vec![1; n], rest)
    } else {
        let line_no = rest.last().map_or(header_line, |l| l.0);
        return Err(Error::parse_line(
            line_no,
            format!(
                "expected {m} edge lines (plus an optional weight line), found {} data lines",
                rest.len()
            ),
        ));
    };
    let mut edges = Vec::with_capacity(m);
    for &(line_no, body) in edge_lines {
        let nums = parse_numbers(line_no, body)?;
        let [u, v] = nums[..] else {
            return Err(Error::parse_line(line_no, "edge line must be `u v`"));
        };
        let (u, v) = (u as usize, v as usize);
        if u >= v {
            return Err(Error::parse_line(
                line_no,
                format!("edge endpoints must satisfy u < v, got {u} {v}"),
            ));
        }
        if v >= n {
            return Err(Error::parse_line(
                line_no,
                format!("vertex {v} out of range 0..{n}"),
            ));
        }
        edges.push((u, v));
    }
    WeightedGraph::new(n, &edges, weights).map_err(|e| match e {
        Error::InvalidGraph(msg) => Error::Parse {
            location: "graph".into(),
            message: msg,
        },
        other => other,
    })
}

/// Writes the graph file format. The weight line is omitted for unit-weight
/// graphs, so `write_graph(parse_graph(write_graph(g)))` is byte-identical.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.vertex_count(), g.edge_count());
    if !g.is_unit_weight() {
        let ws: Vec<String> = g.weights().iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", ws.join(" "));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses a whitespace- or comma-separated vertex list, checking ids
/// against `n`. The result is sorted and deduplicated.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<Vec<Vertex>> {
    let mut out = Vec::new();
    for (line_no, body) in data_lines(text) {
        for tok in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let v: usize = tok.parse().map_err(|_| {
                Error::parse_line(line_no, format!("expected a vertex id, found {tok:?}"))
            })?;
            if v >= n {
                return Err(Error::parse_line(
                    line_no,
                    format!("vertex {v} out of range 0..{n}"),
                ));
            }
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_with_and_without_weights() {
        let g = parse_graph("# path\n4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert!(g.is_unit_weight());
        assert_eq!(g.edge_count(), 3);
        let h = parse_graph("3 1\n5 6 7 # weights\n0 2\n").unwrap();
        assert_eq!(h.weights(), &[5, 6, 7]);
        assert!(h.has_edge(0, 2));
        // n = 2: the weight line and an edge line look alike; counting decides
        let k2 = parse_graph("2 1\n3 4\n0 1\n").unwrap();
        assert_eq!((k2.weights(), k2.edge_count()), (&[3u64, 4][..], 1));
        let empty = parse_graph("3 0\n").unwrap();
        assert_eq!(empty.vertex_count(), 3);
    }

    #[test]
    fn rejects_malformed_files() {
        for bad in [
            "",
            "3\n",
            "3 1\n",
            "3 1\n1 0\n",
            "3 1\n0 3\n",
            "3 1\n0 x\n",
            "3 1\n1 1\n0 1\n",
            "3 1\n0 1\n0 1\n",
            "3 2\n0 1\n0 1\n",
            "2 0\n0 1\n",
        ] {
            assert!(
                matches!(parse_graph(bad), Err(Error::Parse { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn vertex_sets() {
        assert_eq!(
            parse_vertex_set("3, 1\n# x\n1 0", 4).unwrap(),
            vec![0, 1, 3]
        );
        assert!(parse_vertex_set("4", 4).is_err());
        assert!(parse_vertex_set("", 4).unwrap().is_empty());
    }

    fn arb_graph() -> impl Strategy<Value = WeightedGraph> {
        (1usize..9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let np = pairs.len();
            (
                proptest::collection::vec(any::<bool>(), np),
                proptest::collection::vec(1u64..1_000_000, n),
                any::<bool>(),
            )
                .prop_map(move |(keep, ws, unit)| {
                    let edges: Vec<_> = pairs
                        .iter()
                        .zip(&keep)
                        .filter(|(_, &k)| k)
                        .map(|(&e, _)| e)
                        .collect();
                    let ws = if unit { vec![1; n] } else { ws };
                    WeightedGraph::new(n, &edges, ws).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(g in arb_graph()) {
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }
}
