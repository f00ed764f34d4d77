//! Two-block vertex partitions and their kind-specific validity checks.
//!
//! A partition (A, B) is monopolar when A is independent and G[B] is a
//! union of disjoint cliques, polar when G[A] is a co-union and G[B] a
//! union of disjoint cliques, and unipolar when A is a clique and G[B] a
//! union of disjoint cliques. Either block may be empty.

use crate::error::PartitionError;
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum PartitionKind {
    Monopolar,
    Polar,
    Unipolar,
}

impl std::fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PartitionKind::Monopolar => "monopolar",
            PartitionKind::Polar => "polar",
            PartitionKind::Unipolar => "unipolar",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    pub kind: PartitionKind,
    pub a_side: VertexSet,
    pub b_side: VertexSet,
}

impl Partition {
    pub fn new(kind: PartitionKind, a_side: VertexSet, b_side: VertexSet) -> Partition {
        Partition {
            kind,
            a_side,
            b_side,
        }
    }

    /// Text form: a kind line, then the two blocks 1-based and sorted.
    pub fn to_text(&self) -> String {
        let fmt_side = |s: &VertexSet| {
            s.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let a = fmt_side(&self.a_side);
        let b = fmt_side(&self.b_side);
        let mut out = format!("kind: {}\n", self.kind);
        out.push_str(&format!("A:{}{}\n", if a.is_empty() { "" } else { " " }, a));
        out.push_str(&format!("B:{}{}\n", if b.is_empty() { "" } else { " " }, b));
        out
    }
}

/// Checks that `p` is a well-formed partition of `g`'s vertices and then
/// evaluates the kind-specific structural condition. Overlapping or
/// incomplete blocks are an error, distinct from a plain `false`.
pub fn validate(g: &Graph, p: &Partition) -> Result<bool, PartitionError> {
    for v in p.a_side.iter().chain(p.b_side.iter()) {
        if v >= g.n() {
            return Err(PartitionError::OutOfRange(v, g.n()));
        }
    }
    for v in p.a_side.iter() {
        if p.b_side.contains(v) {
            return Err(PartitionError::Overlap(v));
        }
    }
    for v in 0..g.n() {
        if !p.a_side.contains(v) && !p.b_side.contains(v) {
            return Err(PartitionError::Missing(v));
        }
    }
    let (gb, _) = g.induced(&p.b_side).expect("b_side checked in range");
    let b_ok = gb.is_cluster();
    let a_ok = match p.kind {
        PartitionKind::Monopolar => g.is_independent(&p.a_side),
        PartitionKind::Polar => {
            let (ga, _) = g.induced(&p.a_side).expect("a_side checked in range");
            ga.is_co_cluster()
        }
        PartitionKind::Unipolar => g.is_clique(&p.a_side),
    };
    Ok(a_ok && b_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    fn part(kind: PartitionKind, a: &[usize], b: &[usize]) -> Partition {
        Partition::new(kind, VertexSet::new(a.to_vec()), VertexSet::new(b.to_vec()))
    }

    #[test]
    fn monopolar_examples() {
        let k3 = complete(3);
        assert_eq!(
            validate(&k3, &part(PartitionKind::Monopolar, &[], &[0, 1, 2])),
            Ok(true)
        );
        let p3 = path(3);
        assert_eq!(
            validate(&p3, &part(PartitionKind::Monopolar, &[1], &[0, 2])),
            Ok(true)
        );
        assert_eq!(
            validate(&p3, &part(PartitionKind::Monopolar, &[0, 1], &[2])),
            Ok(false)
        );
    }

    #[test]
    fn polar_and_unipolar() {
        let k4 = complete(4);
        assert_eq!(
            validate(&k4, &part(PartitionKind::Polar, &[0, 1, 2, 3], &[])),
            Ok(true)
        );
        assert_eq!(
            validate(&k4, &part(PartitionKind::Unipolar, &[0, 1, 2, 3], &[])),
            Ok(true)
        );
        let p3 = path(3);
        assert_eq!(
            validate(&p3, &part(PartitionKind::Unipolar, &[0, 2], &[1])),
            Ok(false)
        );
    }

    #[test]
    fn malformed_blocks_are_errors() {
        let k3 = complete(3);
        assert_eq!(
            validate(&k3, &part(PartitionKind::Monopolar, &[0], &[0, 1, 2])),
            Err(PartitionError::Overlap(0))
        );
        assert_eq!(
            validate(&k3, &part(PartitionKind::Monopolar, &[0], &[1])),
            Err(PartitionError::Missing(2))
        );
        assert_eq!(
            validate(&k3, &part(PartitionKind::Monopolar, &[5], &[0, 1, 2])),
            Err(PartitionError::OutOfRange(5, 3))
        );
    }

    #[test]
    fn text_form() {
        let p = part(PartitionKind::Monopolar, &[2, 0], &[1]);
        assert_eq!(p.to_text(), "kind: monopolar\nA: 1 3\nB: 2\n");
        let empty_a = part(PartitionKind::Polar, &[], &[0]);
        assert_eq!(empty_a.to_text(), "kind: polar\nA:\nB: 1\n");
    }
}
