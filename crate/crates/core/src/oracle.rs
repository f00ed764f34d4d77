//! Brute-force partition oracles. Each one scans all `2^n` choices of the
//! A block with bitmask arithmetic, independently of the backtracking
//! solvers, and returns the lexicographically least valid partition.

use crate::error::CapacityError;
use crate::exec;
use crate::graph::{Graph, VertexSet};
use crate::partition::{Partition, PartitionKind};

/// Largest vertex count the exhaustive scans accept by default.
pub const DEFAULT_BRUTE_BOUND: usize = 22;

/// Neighbor bitmasks for graphs small enough to scan exhaustively.
pub(crate) struct MaskGraph {
    pub n: usize,
    pub nb: Vec<u32>,
}

impl MaskGraph {
    pub(crate) fn new(g: &Graph) -> MaskGraph {
        let mut nb = vec![0u32; g.n()];
        for &(u, v) in g.edges() {
            nb[u] |= 1 << v;
            nb[v] |= 1 << u;
        }
        MaskGraph { n: g.n(), nb }
    }

    fn full(&self) -> u32 {
        if self.n == 0 {
            0
        } else {
            (1u32 << self.n) - 1
        }
    }

    fn independent(&self, set: u32) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.nb[v] & set != 0 {
                return false;
            }
        }
        true
    }

    fn clique(&self, set: u32) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if set & !(1 << v) & !self.nb[v] != 0 {
                return false;
            }
        }
        true
    }

    /// Union of disjoint cliques inside `set`: adjacent members must have
    /// identical closed neighborhoods within `set`.
    fn cluster(&self, set: u32) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let nbv = self.nb[v] & set;
            let closed_v = nbv | (1 << v);
            let mut above = nbv & !((1u32 << v) - 1) & !(1u32 << v);
            while above != 0 {
                let u = above.trailing_zeros() as usize;
                above &= above - 1;
                if (self.nb[u] & set) | (1 << u) != closed_v {
                    return false;
                }
            }
        }
        true
    }

    /// Complete multipartite inside `set`: complement adjacency restricted
    /// to `set` must itself be a cluster.
    fn co_cluster(&self, set: u32) -> bool {
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let co_closed_v = set & !self.nb[v];
            let mut above = co_closed_v & !((1u32 << v) - 1) & !(1u32 << v);
            while above != 0 {
                let u = above.trailing_zeros() as usize;
                above &= above - 1;
                if set & !self.nb[u] != co_closed_v {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn valid(&self, kind: PartitionKind, a: u32) -> bool {
        let b = self.full() & !a;
        let a_ok = match kind {
            PartitionKind::Monopolar => self.independent(a),
            PartitionKind::Polar => self.co_cluster(a),
            PartitionKind::Unipolar => self.clique(a),
        };
        a_ok && self.cluster(b)
    }
}

fn mask_to_partition(g: &Graph, kind: PartitionKind, a: u32) -> Partition {
    let a_side: VertexSet = (0..g.n()).filter(|&v| a >> v & 1 == 1).collect();
    let b_side: VertexSet = (0..g.n()).filter(|&v| a >> v & 1 == 0).collect();
    Partition::new(kind, a_side, b_side)
}

fn check_bound(g: &Graph, bound: usize) -> Result<(), CapacityError> {
    // masks are u32, so 31 vertices is a hard ceiling however the bound
    // was configured
    let bound = bound.min(31);
    if g.n() > bound {
        return Err(CapacityError { n: g.n(), bound });
    }
    Ok(())
}

fn brute(g: &Graph, kind: PartitionKind, bound: usize) -> Result<Option<Partition>, CapacityError> {
    check_bound(g, bound)?;
    let mg = MaskGraph::new(g);
    let hit = exec::min_valid_mask(g.n(), |a| mg.valid(kind, a));
    Ok(hit.map(|a| mask_to_partition(g, kind, a)))
}

pub fn brute_monopolar(g: &Graph) -> Result<Option<Partition>, CapacityError> {
    brute(g, PartitionKind::Monopolar, DEFAULT_BRUTE_BOUND)
}

pub fn brute_polar(g: &Graph) -> Result<Option<Partition>, CapacityError> {
    brute(g, PartitionKind::Polar, DEFAULT_BRUTE_BOUND)
}

pub fn brute_unipolar(g: &Graph) -> Result<Option<Partition>, CapacityError> {
    brute(g, PartitionKind::Unipolar, DEFAULT_BRUTE_BOUND)
}

pub fn brute_monopolar_with_bound(
    g: &Graph,
    bound: usize,
) -> Result<Option<Partition>, CapacityError> {
    brute(g, PartitionKind::Monopolar, bound)
}

pub fn brute_polar_with_bound(g: &Graph, bound: usize) -> Result<Option<Partition>, CapacityError> {
    brute(g, PartitionKind::Polar, bound)
}

pub fn brute_unipolar_with_bound(
    g: &Graph,
    bound: usize,
) -> Result<Option<Partition>, CapacityError> {
    brute(g, PartitionKind::Unipolar, bound)
}

/// Every monopolar partition, sorted lexicographically by A membership.
pub fn enumerate_monopolar(g: &Graph) -> Result<Vec<Partition>, CapacityError> {
    enumerate_monopolar_with_bound(g, DEFAULT_BRUTE_BOUND)
}

pub fn enumerate_monopolar_with_bound(
    g: &Graph,
    bound: usize,
) -> Result<Vec<Partition>, CapacityError> {
    check_bound(g, bound)?;
    let mg = MaskGraph::new(g);
    let masks = exec::collect_valid_masks(g.n(), |a| mg.valid(PartitionKind::Monopolar, a));
    Ok(masks
        .into_iter()
        .map(|a| mask_to_partition(g, PartitionKind::Monopolar, a))
        .collect())
}

// sequential / parallel entry points kept public for the bench suite
pub fn brute_monopolar_scan_seq(g: &Graph) -> Option<u32> {
    let mg = MaskGraph::new(g);
    exec::min_valid_mask_seq(g.n(), |a| mg.valid(PartitionKind::Monopolar, a))
}

#[cfg(feature = "parallel")]
pub fn brute_monopolar_scan_par(g: &Graph) -> Option<u32> {
    let mg = MaskGraph::new(g);
    exec::min_valid_mask_par(g.n(), |a| mg.valid(PartitionKind::Monopolar, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, complete, cycle, Graph};
    use crate::partition::validate;

    #[test]
    fn empty_graph_has_empty_partition() {
        let g = Graph::new(0, &[], None).unwrap();
        let p = brute_monopolar(&g).unwrap().unwrap();
        assert!(p.a_side.is_empty() && p.b_side.is_empty());
    }

    #[test]
    fn capacity_error() {
        let g = Graph::new(23, &[], None).unwrap();
        assert!(brute_monopolar(&g).is_err());
        assert!(enumerate_monopolar(&g).is_err());
        assert!(brute_monopolar_with_bound(&g, 23).is_ok());
    }

    #[test]
    fn c5_has_no_unipolar_partition() {
        assert_eq!(brute_unipolar(&cycle(5)).unwrap(), None);
    }

    #[test]
    fn k4_plus_pendant_is_unipolar() {
        let g = Graph::new(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
            None,
        )
        .unwrap();
        let p = brute_unipolar(&g).unwrap().unwrap();
        assert_eq!(validate(&g, &p), Ok(true));
    }

    #[test]
    fn k2_enumeration_by_hand() {
        let k2 = complete(2);
        let parts = enumerate_monopolar(&k2).unwrap();
        let a_sides: Vec<Vec<usize>> = parts.iter().map(|p| p.a_side.members().to_vec()).collect();
        assert_eq!(a_sides, vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn returned_partitions_validate() {
        for g in all_graphs(4) {
            for (brute_fn, _) in [
                (brute_monopolar as fn(&Graph) -> _, "monopolar"),
                (brute_polar, "polar"),
                (brute_unipolar, "unipolar"),
            ] {
                if let Some(p) = brute_fn(&g).unwrap() {
                    assert_eq!(validate(&g, &p), Ok(true), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn c5_monopolar_exists() {
        let p = brute_monopolar(&cycle(5)).unwrap().unwrap();
        assert_eq!(validate(&cycle(5), &p), Ok(true));
    }

    #[test]
    fn enumeration_agrees_with_decision() {
        for g in all_graphs(5) {
            let parts = enumerate_monopolar(&g).unwrap();
            assert_eq!(!parts.is_empty(), brute_monopolar(&g).unwrap().is_some());
        }
    }
}
