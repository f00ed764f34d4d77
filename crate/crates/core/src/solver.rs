//! Exact backtracking solvers for the three partition problems.
//!
//! All three branch on the lowest-index undecided vertex and try the left
//! block first, so results are deterministic. Assigning a vertex left in
//! the monopolar case forces its neighbours right; every right assignment
//! is checked against the growing cluster constraint (a right vertex with
//! two non-adjacent right neighbours is a dead end).

use crate::error::CapacityError;
use crate::graph::{Graph, VertexSet};
use crate::partition::{Partition, PartitionKind};

/// Vertex bound for the unipolar solver, which is oracle-grade only.
pub const DEFAULT_UNIPOLAR_BOUND: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Side {
    Unset,
    Left,
    Right,
}

struct Search<'a> {
    g: &'a Graph,
    kind: PartitionKind,
    side: Vec<Side>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, kind: PartitionKind) -> Self {
        Search {
            g,
            kind,
            side: vec![Side::Unset; g.n()],
            trail: vec![],
        }
    }

    /// Assigns `v` and runs propagation. Returns false on conflict; the
    /// caller rolls back via the trail mark either way.
    fn assign(&mut self, v: usize, s: Side) -> bool {
        let mut queue = vec![(v, s)];
        while let Some((v, s)) = queue.pop() {
            match self.side[v] {
                Side::Unset => {}
                cur if cur == s => continue,
                _ => return false,
            }
            self.side[v] = s;
            self.trail.push(v);
            match s {
                Side::Left => {
                    if !self.left_ok(v, &mut queue) {
                        return false;
                    }
                }
                Side::Right => {
                    if !self.right_ok(v) {
                        return false;
                    }
                }
                Side::Unset => unreachable!(),
            }
        }
        true
    }

    fn left_ok(&mut self, v: usize, queue: &mut Vec<(usize, Side)>) -> bool {
        match self.kind {
            PartitionKind::Monopolar => {
                // independence: neighbours of a left vertex go right
                for &u in self.g.neighbors(v) {
                    match self.side[u] {
                        Side::Left => return false,
                        Side::Unset => queue.push((u, Side::Right)),
                        Side::Right => {}
                    }
                }
                true
            }
            PartitionKind::Unipolar => {
                // the left block is one clique; non-neighbours go right
                for u in 0..self.g.n() {
                    if u == v {
                        continue;
                    }
                    if self.g.adjacent(u, v) {
                        continue;
                    }
                    match self.side[u] {
                        Side::Left => return false,
                        Side::Unset => queue.push((u, Side::Right)),
                        Side::Right => {}
                    }
                }
                true
            }
            PartitionKind::Polar => self.polar_left_ok(v),
        }
    }

    /// The left block must induce a complete multipartite graph: no left
    /// edge (a, b) may have a left vertex non-adjacent to both ends.
    fn polar_left_ok(&self, v: usize) -> bool {
        let lefts: Vec<usize> = (0..self.g.n())
            .filter(|&u| u != v && self.side[u] == Side::Left)
            .collect();
        // v as the isolated witness of an existing left edge
        for (i, &a) in lefts.iter().enumerate() {
            for &b in &lefts[i + 1..] {
                if self.g.adjacent(a, b) && !self.g.adjacent(v, a) && !self.g.adjacent(v, b) {
                    return false;
                }
            }
        }
        // v as an endpoint of a fresh left edge
        for &a in &lefts {
            if !self.g.adjacent(v, a) {
                continue;
            }
            for &c in &lefts {
                if c != a && !self.g.adjacent(c, v) && !self.g.adjacent(c, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Incremental cluster check on the right block: any induced P3 among
    /// right vertices must involve the newcomer.
    fn right_ok(&self, v: usize) -> bool {
        let right_nb: Vec<usize> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.side[u] == Side::Right)
            .collect();
        // v as the centre
        for (i, &a) in right_nb.iter().enumerate() {
            for &b in &right_nb[i + 1..] {
                if !self.g.adjacent(a, b) {
                    return false;
                }
            }
        }
        // v as a leaf: a right neighbour u with another right neighbour w
        // that v misses
        for &u in &right_nb {
            for &w in self.g.neighbors(u) {
                if w != v && self.side[w] == Side::Right && !self.g.adjacent(v, w) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.side[v] = Side::Unset;
        }
    }

    fn solve(&mut self) -> bool {
        let v = match self.side.iter().position(|&s| s == Side::Unset) {
            Some(v) => v,
            None => return true,
        };
        let mark = self.trail.len();
        for s in [Side::Left, Side::Right] {
            if self.assign(v, s) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn into_partition(self) -> Partition {
        let a: VertexSet = (0..self.g.n())
            .filter(|&v| self.side[v] == Side::Left)
            .collect();
        let b: VertexSet = (0..self.g.n())
            .filter(|&v| self.side[v] != Side::Left)
            .collect();
        Partition::new(self.kind, a, b)
    }
}

fn run(g: &Graph, kind: PartitionKind) -> Option<Partition> {
    let mut s = Search::new(g, kind);
    if s.solve() {
        Some(s.into_partition())
    } else {
        None
    }
}

/// First monopolar partition in the solver's deterministic search order,
/// or `None` when the graph is not monopolar.
pub fn solve_monopolar(g: &Graph) -> Option<Partition> {
    run(g, PartitionKind::Monopolar)
}

pub fn solve_polar(g: &Graph) -> Option<Partition> {
    run(g, PartitionKind::Polar)
}

pub fn solve_unipolar(g: &Graph) -> Result<Option<Partition>, CapacityError> {
    solve_unipolar_with_bound(g, DEFAULT_UNIPOLAR_BOUND)
}

pub fn solve_unipolar_with_bound(
    g: &Graph,
    bound: usize,
) -> Result<Option<Partition>, CapacityError> {
    if g.n() > bound {
        return Err(CapacityError { n: g.n(), bound });
    }
    Ok(run(g, PartitionKind::Unipolar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, complete, cycle, path, Graph};
    use crate::oracle;
    use crate::partition::validate;

    #[test]
    fn bipartite_graphs_are_monopolar() {
        for n in 2..7 {
            let p = solve_monopolar(&path(n)).unwrap();
            assert_eq!(validate(&path(n), &p), Ok(true));
        }
        let c4 = cycle(4);
        assert!(solve_monopolar(&c4).is_some());
    }

    #[test]
    fn c5_examples() {
        let c5 = cycle(5);
        let p = solve_monopolar(&c5).unwrap();
        assert_eq!(validate(&c5, &p), Ok(true));
        assert!(solve_polar(&c5).is_some());
        assert_eq!(solve_unipolar(&c5).unwrap(), None);
    }

    #[test]
    fn k4_is_polar() {
        let p = solve_polar(&complete(4)).unwrap();
        assert_eq!(validate(&complete(4), &p), Ok(true));
    }

    #[test]
    fn cluster_graphs_are_everything() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (1, 2), (3, 4)], None).unwrap();
        assert!(solve_monopolar(&g).is_some());
        assert!(solve_polar(&g).is_some());
        assert!(solve_unipolar(&g).unwrap().is_some());
    }

    #[test]
    fn unipolar_bound() {
        let g = Graph::new(21, &[], None).unwrap();
        assert!(solve_unipolar(&g).is_err());
        assert!(solve_unipolar_with_bound(&g, 21).unwrap().is_some());
    }

    #[test]
    fn agrees_with_oracles_exhaustively() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                assert_eq!(
                    solve_monopolar(&g).is_some(),
                    oracle::brute_monopolar(&g).unwrap().is_some(),
                    "monopolar {g:?}"
                );
                assert_eq!(
                    solve_polar(&g).is_some(),
                    oracle::brute_polar(&g).unwrap().is_some(),
                    "polar {g:?}"
                );
                assert_eq!(
                    solve_unipolar(&g).unwrap().is_some(),
                    oracle::brute_unipolar(&g).unwrap().is_some(),
                    "unipolar {g:?}"
                );
            }
        }
    }

    #[test]
    fn solutions_validate() {
        for g in all_graphs(5) {
            if let Some(p) = solve_monopolar(&g) {
                assert_eq!(validate(&g, &p), Ok(true));
            }
            if let Some(p) = solve_polar(&g) {
                assert_eq!(validate(&g, &p), Ok(true));
            }
        }
    }

    #[test]
    fn double_monotonicity() {
        for g in all_graphs(4) {
            if solve_monopolar(&g).is_some() {
                assert!(solve_monopolar(&g.double()).is_some());
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let g = cycle(5);
        assert_eq!(solve_monopolar(&g), solve_monopolar(&g));
        assert_eq!(solve_polar(&g), solve_polar(&g));
    }
}
