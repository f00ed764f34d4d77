//! Transitive orientations and comparability recognition.
//!
//! Recognition works by implication-class forcing: orienting an edge (a, b)
//! forces (a, c) whenever c is a neighbour of a with bc a non-edge, and
//! (c, b) whenever c is a neighbour of b with ac a non-edge. Classes are
//! peeled off one at a time; a class containing an edge in both directions
//! rules the graph out. The final orientation is always re-verified with
//! `is_transitive` rather than trusted from the forcing theory.

use crate::error::{CapacityError, OrientationError};
use crate::graph::{Graph, VertexSet};

/// A direction for every edge of a graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orientation {
    graph: Graph,
    /// per edge of `graph.edges()`: true means u -> v for the edge (u, v)
    forward: Vec<bool>,
}

impl Orientation {
    /// Builds an orientation from an arc list, which must orient every
    /// edge of the graph exactly once.
    pub fn new(graph: Graph, arcs: &[(usize, usize)]) -> Result<Orientation, OrientationError> {
        let mut forward: Vec<Option<bool>> = vec![None; graph.edge_count()];
        for &(p, q) in arcs {
            let (u, v, fwd) = if p < q { (p, q, true) } else { (q, p, false) };
            let idx = graph
                .edges()
                .binary_search(&(u, v))
                .map_err(|_| OrientationError::NotAnEdge(p, q))?;
            if forward[idx].is_some() {
                return Err(OrientationError::DoubleOriented(u, v));
            }
            forward[idx] = Some(fwd);
        }
        let mut out = Vec::with_capacity(forward.len());
        for (idx, f) in forward.into_iter().enumerate() {
            match f {
                Some(f) => out.push(f),
                None => {
                    let (u, v) = graph.edges()[idx];
                    return Err(OrientationError::Unoriented(u, v));
                }
            }
        }
        Ok(Orientation {
            graph,
            forward: out,
        })
    }

    pub(crate) fn from_forward(graph: Graph, forward: Vec<bool>) -> Orientation {
        assert_eq!(graph.edge_count(), forward.len());
        Orientation { graph, forward }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Arcs as (tail, head), sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .zip(&self.forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_arc(&self, p: usize, q: usize) -> bool {
        let (u, v, fwd) = if p < q { (p, q, true) } else { (q, p, false) };
        match self.graph.edges().binary_search(&(u, v)) {
            Ok(idx) => self.forward[idx] == fwd,
            Err(_) => false,
        }
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.has_arc(v, u))
            .collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        self.graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.has_arc(u, v))
            .collect()
    }

    /// Vertices with no outgoing arc.
    pub fn sinks(&self) -> VertexSet {
        (0..self.graph.n())
            .filter(|&v| self.out_neighbors(v).is_empty())
            .collect()
    }

    /// Directed composition closes: a -> b and b -> c imply a -> c.
    pub fn is_transitive(&self) -> bool {
        self.first_violation().is_none()
    }

    fn first_violation(&self) -> Option<(usize, usize, usize)> {
        for (idx, &(u, v)) in self.graph.edges().iter().enumerate() {
            let (a, b) = if self.forward[idx] { (u, v) } else { (v, u) };
            for c in self.out_neighbors(b) {
                if c != a && !self.has_arc(a, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Serialized form: `p orient n m` then sorted `a <tail> <head>` lines,
    /// 1-based.
    pub fn to_text(&self) -> String {
        let mut out = format!("p orient {} {}\n", self.graph.n(), self.graph.edge_count());
        for (p, q) in self.arcs() {
            out.push_str(&format!("a {} {}\n", p + 1, q + 1));
        }
        out
    }
}

/// Proper coloring with consecutive color indices starting at 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Colors each vertex by the length of the longest directed path ending at
/// it. On a transitive orientation this is a proper coloring whose color
/// count equals the clique number.
pub fn chain_coloring(o: &Orientation) -> Result<Coloring, OrientationError> {
    if let Some((a, b, c)) = o.first_violation() {
        return Err(OrientationError::NotTransitive(a, b, c));
    }
    let n = o.graph().n();
    let mut colors = vec![usize::MAX; n];
    fn height(v: usize, o: &Orientation, colors: &mut Vec<usize>) -> usize {
        if colors[v] != usize::MAX {
            return colors[v];
        }
        let mut h = 0;
        for u in o.in_neighbors(v) {
            h = h.max(height(u, o, colors) + 1);
        }
        colors[v] = h;
        h
    }
    for v in 0..n {
        height(v, o, &mut colors);
    }
    Ok(Coloring { colors })
}

/// Finds a transitive orientation if one exists. Classes are peeled off
/// one at a time per the forcing scheme; the result is re-verified with
/// `is_transitive` before being returned.
pub fn find_transitive_orientation(g: &Graph) -> Option<Orientation> {
    let n = g.n();
    if n == 0 {
        return Some(Orientation::from_forward(g.clone(), vec![]));
    }
    let mut rem = vec![false; n * n];
    for &(u, v) in g.edges() {
        rem[u * n + v] = true;
        rem[v * n + u] = true;
    }
    let mut dir: Vec<Option<bool>> = vec![None; g.edge_count()];
    let edge_index = |u: usize, v: usize| -> usize {
        let key = if u < v { (u, v) } else { (v, u) };
        g.edges().binary_search(&key).expect("known edge")
    };

    // peel the implication class of the least remaining edge until done;
    // the class direction is arbitrary, so seed each as (u, v) with u < v
    while let Some(seed) = g.edges().iter().position(|&(u, v)| rem[u * n + v]) {
        let (a0, b0) = g.edges()[seed];
        let mut class: Vec<(usize, usize)> = vec![(a0, b0)];
        let mut in_class = std::collections::HashSet::new();
        in_class.insert((a0, b0));
        let mut qi = 0;
        while qi < class.len() {
            let (a, b) = class[qi];
            qi += 1;
            for c in 0..n {
                if c != b && rem[a * n + c] && !rem[b * n + c] {
                    if in_class.contains(&(c, a)) {
                        return None; // class meets its own reverse
                    }
                    if in_class.insert((a, c)) {
                        class.push((a, c));
                    }
                }
                if c != a && rem[b * n + c] && !rem[a * n + c] {
                    if in_class.contains(&(b, c)) {
                        return None;
                    }
                    if in_class.insert((c, b)) {
                        class.push((c, b));
                    }
                }
            }
        }
        for &(p, q) in &class {
            dir[edge_index(p, q)] = Some(p < q);
            rem[p * n + q] = false;
            rem[q * n + p] = false;
        }
    }

    let forward: Vec<bool> = dir
        .into_iter()
        .map(|d| d.expect("all edges oriented"))
        .collect();
    let o = Orientation::from_forward(g.clone(), forward);
    if o.is_transitive() {
        Some(o)
    } else {
        None
    }
}

/// Like [`find_transitive_orientation`] but every vertex in `sinks` must
/// end up with no outgoing arc. Sink arcs are pre-assigned and the rest is
/// backtracking with incremental closure checks, so the search is complete
/// on the small graphs it is meant for (a generous node cap guards against
/// pathological inputs).
pub fn find_transitive_orientation_with_sinks(g: &Graph, sinks: &[usize]) -> Option<Orientation> {
    let n = g.n();
    let mut arc = vec![false; n * n];
    let mut free: Vec<(usize, usize)> = vec![];

    // arc p->q is admissible iff every assigned composition through it closes
    fn ok(g: &Graph, arc: &[bool], n: usize, p: usize, q: usize) -> bool {
        for r in 0..n {
            if r != p && arc[q * n + r] && (!g.adjacent(p, r) || arc[r * n + p]) {
                return false;
            }
            if r != q && arc[r * n + p] && (!g.adjacent(r, q) || arc[q * n + r]) {
                return false;
            }
        }
        true
    }

    for &(u, v) in g.edges() {
        match (sinks.contains(&u), sinks.contains(&v)) {
            (true, true) => return None,
            (true, false) => {
                if !ok(g, &arc, n, v, u) {
                    return None;
                }
                arc[v * n + u] = true;
            }
            (false, true) => {
                if !ok(g, &arc, n, u, v) {
                    return None;
                }
                arc[u * n + v] = true;
            }
            (false, false) => free.push((u, v)),
        }
    }

    fn rec(
        g: &Graph,
        free: &[(usize, usize)],
        pos: usize,
        arc: &mut Vec<bool>,
        n: usize,
        budget: &mut usize,
    ) -> bool {
        if pos == free.len() {
            return true;
        }
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let (u, v) = free[pos];
        for (p, q) in [(u, v), (v, u)] {
            if ok(g, arc, n, p, q) {
                arc[p * n + q] = true;
                if rec(g, free, pos + 1, arc, n, budget) {
                    return true;
                }
                arc[p * n + q] = false;
            }
        }
        false
    }

    let mut budget = 5_000_000usize;
    if !rec(g, &free, 0, &mut arc, n, &mut budget) {
        return None;
    }
    let forward: Vec<bool> = g.edges().iter().map(|&(u, v)| arc[u * n + v]).collect();
    let o = Orientation::from_forward(g.clone(), forward);
    debug_assert!(o.is_transitive());
    if o.is_transitive() && sinks.iter().all(|&s| o.sinks().contains(s)) {
        Some(o)
    } else {
        None
    }
}

pub fn is_comparability(g: &Graph) -> bool {
    find_transitive_orientation(g).is_some()
}

/// K4-free comparability graph, which for comparability graphs is the same
/// as 3-colourable.
pub fn is_3col_comparability(g: &Graph) -> bool {
    !g.has_k4() && is_comparability(g)
}

/// Literal enumeration of all `2^m` orientations, capped at `m <= 18`.
/// Kept deliberately independent of the forcing implementation.
pub fn is_comparability_brute(g: &Graph) -> Result<bool, CapacityError> {
    let m = g.edge_count();
    if m > 18 {
        return Err(CapacityError { n: m, bound: 18 });
    }
    let n = g.n();
    let edges = g.edges();
    let mut arc = vec![false; n * n];
    'mask: for mask in 0u32..1 << m {
        for cell in arc.iter_mut() {
            *cell = false;
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                arc[u * n + v] = true;
            } else {
                arc[v * n + u] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !arc[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if c != a && arc[b * n + c] && !arc[a * n + c] {
                        continue 'mask;
                    }
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, complete, cycle, path, Graph};

    fn total_order(n: usize) -> Orientation {
        let g = complete(n);
        let arcs: Vec<(usize, usize)> = g.edges().to_vec();
        Orientation::new(g, &arcs).unwrap()
    }

    #[test]
    fn total_order_is_transitive() {
        assert!(total_order(4).is_transitive());
    }

    #[test]
    fn directed_triangle_is_not() {
        let g = complete(3);
        let o = Orientation::new(g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!o.is_transitive());
    }

    #[test]
    fn malformed_orientations_rejected() {
        let g = complete(3);
        assert_eq!(
            Orientation::new(g.clone(), &[(0, 1), (1, 0), (1, 2)]).unwrap_err(),
            OrientationError::DoubleOriented(0, 1)
        );
        assert_eq!(
            Orientation::new(g.clone(), &[(0, 1), (1, 2)]).unwrap_err(),
            OrientationError::Unoriented(0, 2)
        );
        assert_eq!(
            Orientation::new(path(3), &[(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            OrientationError::NotAnEdge(0, 2)
        );
    }

    #[test]
    fn sinks_and_serialization() {
        let o = total_order(3);
        assert_eq!(o.sinks(), VertexSet::new([2]));
        assert_eq!(o.to_text(), "p orient 3 3\na 1 2\na 1 3\na 2 3\n");
        let star = Graph::new(4, &[(0, 3), (1, 3), (2, 3)], None).unwrap();
        let so = Orientation::new(star, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(so.sinks(), VertexSet::new([3]));
        assert!(so.is_transitive());
    }

    #[test]
    fn q_orientation_into_u_is_transitive() {
        // v3 and v4 point at everything they touch, v1 at v2
        let q = crate::gadget::build_q();
        let o =
            Orientation::new(q, &[(2, 0), (2, 1), (3, 0), (3, 1), (0, 1), (2, 4), (3, 4)]).unwrap();
        assert!(o.is_transitive());
        assert_eq!(o.sinks(), VertexSet::new([1, 4]));
    }

    #[test]
    fn recognition_examples() {
        assert!(!is_comparability(&cycle(5)));
        assert!(is_comparability(&complete(4)));
        assert!(is_comparability(&cycle(4)));
        assert!(is_comparability(&cycle(6)));
        assert!(!is_comparability(&cycle(7)));
        for n in 1..7 {
            assert!(is_comparability(&path(n)));
        }
    }

    #[test]
    fn three_col_comparability() {
        assert!(!is_3col_comparability(&complete(4)));
        assert!(!is_3col_comparability(&cycle(5)));
        assert!(is_3col_comparability(&complete(3)));
    }

    #[test]
    fn agrees_with_brute_exhaustively() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                assert_eq!(
                    is_comparability(&g),
                    is_comparability_brute(&g).unwrap(),
                    "{g:?}"
                );
            }
        }
    }

    #[test]
    fn returned_orientations_verify() {
        for g in all_graphs(5) {
            if let Some(o) = find_transitive_orientation(&g) {
                assert!(o.is_transitive());
                assert_eq!(o.graph(), &g);
            }
        }
    }

    #[test]
    fn chain_coloring_examples() {
        let col = chain_coloring(&total_order(4)).unwrap();
        assert_eq!(col.colors(), &[0, 1, 2, 3]);
        assert_eq!(col.num_colors(), 4);

        let edgeless = Graph::new(3, &[], None).unwrap();
        let o = Orientation::new(edgeless, &[]).unwrap();
        let col = chain_coloring(&o).unwrap();
        assert_eq!(col.colors(), &[0, 0, 0]);
        assert_eq!(col.num_colors(), 1);

        let g = complete(3);
        let bad = Orientation::new(g, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(chain_coloring(&bad).is_err());
    }

    #[test]
    fn chain_coloring_matches_clique_number() {
        let mut rng = crate::rng::SplitMix64::new(11);
        let mut tested = 0;
        while tested < 60 {
            let n = 5 + (tested % 4);
            let g = crate::graph::random_graph(n, 2, 5, &mut rng);
            if let Some(o) = find_transitive_orientation(&g) {
                let col = chain_coloring(&o).unwrap();
                assert!(col.is_proper(&g));
                assert_eq!(
                    col.num_colors(),
                    g.max_clique_size().max(usize::from(g.n() > 0))
                );
                tested += 1;
            }
        }
    }

    #[test]
    fn double_preserves_comparability() {
        for n in 0..=4 {
            for g in all_graphs(n) {
                assert_eq!(is_comparability(&g), is_comparability(&g.double()));
            }
        }
    }

    #[test]
    fn sink_constrained_orientation() {
        // star into the centre
        let star = Graph::new(4, &[(0, 3), (1, 3), (2, 3)], None).unwrap();
        let o = find_transitive_orientation_with_sinks(&star, &[3]).unwrap();
        assert_eq!(o.sinks(), VertexSet::new([3]));
        // a path cannot have both endpoints' neighbours as sinks
        assert!(find_transitive_orientation_with_sinks(&path(3), &[1]).is_some());
        // adjacent sinks are impossible
        assert!(find_transitive_orientation_with_sinks(&complete(2), &[0, 1]).is_none());
    }
}
