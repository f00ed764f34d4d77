//! DIMACS edge format. Comment lines start with `c`, the header is
//! `p edge <n> <m>`, and each of the `m` following lines is `e <u> <v>`
//! with 1-based endpoints.

use crate::error::DimacsError;
use crate::graph::Graph;

pub fn read_dimacs_graph(text: &str) -> Result<Graph, DimacsError> {
    let mut n: Option<usize> = None;
    let mut m = 0usize;
    let mut edges: Vec<(usize, usize)> = vec![];
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_ascii_whitespace();
        match tok.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(DimacsError::new(lineno, "duplicate problem line"));
                }
                if tok.next() != Some("edge") {
                    return Err(DimacsError::new(lineno, "expected 'p edge <n> <m>'"));
                }
                let nn: usize = parse_num(tok.next(), lineno, "vertex count")?;
                let mm: usize = parse_num(tok.next(), lineno, "edge count")?;
                if tok.next().is_some() {
                    return Err(DimacsError::new(lineno, "trailing tokens on problem line"));
                }
                n = Some(nn);
                m = mm;
            }
            Some("e") => {
                let n =
                    n.ok_or_else(|| DimacsError::new(lineno, "edge line before 'p edge' header"))?;
                let u: usize = parse_num(tok.next(), lineno, "edge endpoint")?;
                let v: usize = parse_num(tok.next(), lineno, "edge endpoint")?;
                if tok.next().is_some() {
                    return Err(DimacsError::new(lineno, "trailing tokens on edge line"));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(DimacsError::new(
                        lineno,
                        format!("endpoint out of range 1..={n}"),
                    ));
                }
                if u == v {
                    return Err(DimacsError::new(lineno, format!("self-loop at {u}")));
                }
                if edges.len() == m {
                    return Err(DimacsError::new(
                        lineno,
                        format!("more than the declared {m} edges"),
                    ));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(DimacsError::new(
                    lineno,
                    format!("unexpected line kind '{other}'"),
                ));
            }
            None => unreachable!("trimmed non-empty line has a token"),
        }
    }
    let n =
        n.ok_or_else(|| DimacsError::new(text.lines().count() + 1, "missing 'p edge' header"))?;
    if edges.len() != m {
        return Err(DimacsError::new(
            text.lines().count() + 1,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, &edges, None)
        .map_err(|e| DimacsError::new(text.lines().count() + 1, e.to_string()))
}

/// Canonical writer: one comment line, the header, then edges sorted
/// lexicographically, 1-based, newline-terminated.
pub fn write_dimacs_graph(g: &Graph) -> String {
    let mut out = String::from("c polaritylab\n");
    out.push_str(&format!("p edge {} {}\n", g.n(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

fn parse_num(tok: Option<&str>, lineno: usize, what: &str) -> Result<usize, DimacsError> {
    let t = tok.ok_or_else(|| DimacsError::new(lineno, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| DimacsError::new(lineno, format!("bad {what} '{t}'")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, complete};

    #[test]
    fn reads_k2() {
        let g = read_dimacs_graph("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g, complete(2));
    }

    #[test]
    fn reads_edgeless() {
        let g = read_dimacs_graph("p edge 3 0\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_ignored() {
        let g = read_dimacs_graph("c hello\np edge 2 1\nc mid\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn error_line_numbers() {
        let err = read_dimacs_graph("c x\np edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = read_dimacs_graph("p edge 2 2\ne 1 2\n").unwrap_err();
        assert!(err.msg.contains("declared 2 edges"));
        let err = read_dimacs_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert!(err.msg.contains("self-loop"));
        let err = read_dimacs_graph("p foo 2 1\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn roundtrip_exhaustive_small() {
        for n in 0..=4 {
            for g in all_graphs(n) {
                let text = write_dimacs_graph(&g);
                let back = read_dimacs_graph(&text).unwrap();
                assert_eq!(back, g);
                // canonical output is a fixpoint
                assert_eq!(write_dimacs_graph(&back), text);
            }
        }
    }
}
