//! The 5-vertex gadget Q and the clause gadget built from two copies of it.
//!
//! Q is rigid: it has exactly one monopolar partition. Two disjoint copies
//! of Q anchor the clause gadget, whose contract is checked exhaustively:
//!
//! * G1: every monopolar partition has exactly one terminal on the right;
//! * G2: there are exactly three monopolar partitions and the right
//!   terminal determines each one;
//! * G3: the stored orientation is transitive with all terminals as sinks;
//! * G4: the graph is K4-free;
//! * G5: the hub is adjacent to all terminals and right in every
//!   partition (external vertices only ever attach to terminals, so the
//!   hub never sees them).
//!
//! The shipped default gadget was produced by `synthesize_clause_gadget`
//! with the default seed and is re-certified by the test suite instead of
//! being trusted.

use crate::comparability::{find_transitive_orientation_with_sinks, Orientation};
use crate::error::{CapacityError, ContractCheck, GadgetError};
use crate::exec;
use crate::graph::{Graph, VertexSet};
use crate::oracle::{self, MaskGraph};
use crate::partition::{Partition, PartitionKind};
use crate::rng::SplitMix64;

/// Builds Q: five vertices v1, v2, v3, v4, u with v1 and v2 adjacent to
/// everything except u, and u adjacent to exactly v3 and v4.
pub fn build_q() -> Graph {
    let labels = ["v1", "v2", "v3", "v4", "u"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let g = Graph::new(
        5,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (4, 2), (4, 3)],
        Some(labels),
    )
    .expect("Q edge list is valid");
    assert_eq!(verify_q(&g), Ok(true), "Q reconstruction failed its check");
    g
}

/// True iff `g` has exactly one monopolar partition, namely the one with
/// v3 and v4 left, and is a K4-free comparability graph. Vertex roles are
/// read from labels when present; without labels only the uniqueness and
/// structural checks apply.
pub fn verify_q(g: &Graph) -> Result<bool, GadgetError> {
    if g.n() != 5 {
        return Err(GadgetError::WrongVertexCount(g.n()));
    }
    let parts = oracle::enumerate_monopolar(g).expect("5 vertices is enumerable");
    if parts.len() != 1 {
        return Ok(false);
    }
    if let Some(labels) = g.labels() {
        let index_of = |name: &str| labels.iter().position(|l| l == name);
        match (index_of("v3"), index_of("v4")) {
            (Some(a), Some(b)) => {
                if parts[0].a_side != VertexSet::new([a, b]) {
                    return Ok(false);
                }
            }
            _ => return Ok(false),
        }
    }
    Ok(!g.has_k4() && crate::comparability::is_comparability(g))
}

/// A clause gadget: a graph with three designated terminals, a hub, and a
/// transitive orientation in which the terminals are sinks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClauseGadget {
    pub graph: Graph,
    pub terminals: [usize; 3],
    pub hub: usize,
    pub orientation: Orientation,
}

/// Materialized evidence that a gadget satisfies its contract.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetCertificate {
    /// The three monopolar partitions, in enumeration order.
    pub partitions: Vec<Partition>,
    /// For each partition, the terminal found on its right side.
    pub right_terminal_of: Vec<usize>,
    pub orientation_check: bool,
    pub k4_check: bool,
    pub hub_check: bool,
}

impl GadgetCertificate {
    /// The partition whose right side holds the given terminal.
    pub fn partition_for_terminal(&self, terminal: usize) -> Option<&Partition> {
        self.right_terminal_of
            .iter()
            .position(|&t| t == terminal)
            .map(|i| &self.partitions[i])
    }
}

fn violation(check: ContractCheck, detail: impl Into<String>) -> GadgetError {
    GadgetError::ContractViolation {
        check,
        detail: detail.into(),
    }
}

/// Evaluates the G1..G5 contract by exhaustive enumeration, failing fast
/// at the first violated check.
pub fn verify_clause_gadget(candidate: &ClauseGadget) -> Result<GadgetCertificate, GadgetError> {
    let g = &candidate.graph;
    if g.n() > oracle::DEFAULT_BRUTE_BOUND {
        return Err(GadgetError::Capacity(CapacityError {
            n: g.n(),
            bound: oracle::DEFAULT_BRUTE_BOUND,
        }));
    }
    for &t in &candidate.terminals {
        if t >= g.n() {
            return Err(violation(
                ContractCheck::G1,
                format!("terminal {t} out of range"),
            ));
        }
    }
    if candidate.hub >= g.n() {
        return Err(violation(ContractCheck::G5, "hub out of range"));
    }

    let parts = oracle::enumerate_monopolar(g)?;

    // G1: one right terminal per partition
    let mut right_terminal_of = vec![];
    for p in &parts {
        let right: Vec<usize> = candidate
            .terminals
            .iter()
            .copied()
            .filter(|&t| p.b_side.contains(t))
            .collect();
        if right.len() != 1 {
            return Err(violation(
                ContractCheck::G1,
                format!(
                    "a monopolar partition has {} right terminals (A = {:?})",
                    right.len(),
                    p.a_side
                ),
            ));
        }
        right_terminal_of.push(right[0]);
    }

    // G2: exactly three partitions, distinct right terminals
    if parts.len() != 3 {
        return Err(violation(
            ContractCheck::G2,
            format!("{} monopolar partitions, expected 3", parts.len()),
        ));
    }
    {
        let mut seen = right_terminal_of.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != 3 {
            return Err(violation(
                ContractCheck::G2,
                "two partitions share a right terminal",
            ));
        }
    }

    // G3: stored orientation is transitive with terminal sinks
    if candidate.orientation.graph() != g {
        return Err(violation(
            ContractCheck::G3,
            "orientation is for a different graph",
        ));
    }
    if !candidate.orientation.is_transitive() {
        return Err(violation(
            ContractCheck::G3,
            "orientation is not transitive",
        ));
    }
    let sinks = candidate.orientation.sinks();
    for &t in &candidate.terminals {
        if !sinks.contains(t) {
            return Err(violation(
                ContractCheck::G3,
                format!("terminal {t} has an outgoing arc"),
            ));
        }
    }

    // G4: K4-free
    if g.has_k4() {
        return Err(violation(ContractCheck::G4, "graph contains a K4"));
    }

    // G5: hub adjacency and side
    for &t in &candidate.terminals {
        if !g.adjacent(candidate.hub, t) {
            return Err(violation(
                ContractCheck::G5,
                format!("hub {} is not adjacent to terminal {t}", candidate.hub),
            ));
        }
    }
    for p in &parts {
        if !p.b_side.contains(candidate.hub) {
            return Err(violation(
                ContractCheck::G5,
                "hub is left in some monopolar partition",
            ));
        }
    }

    Ok(GadgetCertificate {
        partitions: parts,
        right_terminal_of,
        orientation_check: true,
        k4_check: true,
        hub_check: true,
    })
}

// ---------------------------------------------------------------------
// synthesis
// ---------------------------------------------------------------------

// candidate layout: 0..5 first Q copy (4 = hub u-role), 5..10 second copy
// (9 = its u-role), 10..13 terminals, 13.. connectors
const HUB: usize = 4;
const U2: usize = 9;
const TERMINALS: [usize; 3] = [10, 11, 12];
const BASE_N: usize = 13;

const RESTARTS: u64 = 24;
const MAX_STEPS: u32 = 2000;

fn q_edges(offset: usize) -> [(usize, usize); 7] {
    [
        (offset, offset + 1),
        (offset, offset + 2),
        (offset, offset + 3),
        (offset + 1, offset + 2),
        (offset + 1, offset + 3),
        (offset + 4, offset + 2),
        (offset + 4, offset + 3),
    ]
}

fn base_edges() -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = q_edges(0).into_iter().collect();
    e.extend(q_edges(5));
    for t in TERMINALS {
        e.push((HUB, t));
    }
    e
}

/// Searchable wiring: hub to hub, terminals to the second u-role vertex,
/// and each connector to the terminals, both u-role vertices and earlier
/// connectors. Lexicographic order fixes the move order of the search.
fn candidate_pool(n: usize) -> Vec<(usize, usize)> {
    let mut pool = vec![(HUB, U2)];
    for t in TERMINALS {
        pool.push((U2, t));
    }
    for c in BASE_N..n {
        for t in TERMINALS {
            pool.push((t, c));
        }
        pool.push((HUB, c));
        pool.push((U2, c));
        for c2 in BASE_N..c {
            pool.push((c2, c));
        }
    }
    pool.sort_unstable();
    pool
}

struct Candidate {
    n: usize,
    nb: Vec<u32>,
}

impl Candidate {
    fn build(n: usize, mask: u64, pool: &[(usize, usize)]) -> Candidate {
        let mut nb = vec![0u32; n];
        let add = |u: usize, v: usize, nb: &mut Vec<u32>| {
            nb[u] |= 1 << v;
            nb[v] |= 1 << u;
        };
        for (u, v) in base_edges() {
            add(u, v, &mut nb);
        }
        for (i, &(u, v)) in pool.iter().enumerate() {
            if mask >> i & 1 == 1 {
                add(u, v, &mut nb);
            }
        }
        Candidate { n, nb }
    }

    fn count_k4(&self) -> u32 {
        let mut k4 = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.nb[u] >> v & 1 == 0 {
                    continue;
                }
                let common = self.nb[u] & self.nb[v] & !((1u32 << (v + 1)) - 1);
                let mut rest = common;
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.nb[w] & common & !((1u32 << (w + 1)) - 1) != 0 {
                        k4 += 1;
                    }
                }
            }
        }
        k4
    }

    /// Edges forced into both directions by the closure of the
    /// into-terminal arcs. Zero conflicts is necessary for a terminal-sink
    /// transitive orientation, so this grades candidates cheaply.
    fn forcing_conflicts(&self) -> u32 {
        let n = self.n;
        let mut forced = vec![false; n * n];
        let mut queue: Vec<(usize, usize)> = vec![];
        for t in TERMINALS {
            let mut rest = self.nb[t];
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                forced[x * n + t] = true;
                queue.push((x, t));
            }
        }
        while let Some((a, b)) = queue.pop() {
            let mut rest = self.nb[a] & !self.nb[b] & !(1u32 << b);
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if !forced[a * n + c] {
                    forced[a * n + c] = true;
                    queue.push((a, c));
                }
            }
            let mut rest = self.nb[b] & !self.nb[a] & !(1u32 << a);
            while rest != 0 {
                let c = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if !forced[c * n + b] {
                    forced[c * n + b] = true;
                    queue.push((c, b));
                }
            }
        }
        let mut conflicts = 0;
        for u in 0..n {
            for v in u + 1..n {
                if self.nb[u] >> v & 1 == 1 && forced[u * n + v] && forced[v * n + u] {
                    conflicts += 1;
                }
            }
        }
        conflicts
    }

    fn to_graph(&self) -> Graph {
        let mut edges = vec![];
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.nb[u] >> v & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, &edges, Some(gadget_labels(self.n))).expect("candidate edges are valid")
    }
}

fn gadget_labels(n: usize) -> Vec<String> {
    let mut labels: Vec<String> = (1..=10).map(|i| format!("v{i}")).collect();
    labels.extend(["t1", "t2", "t3"].iter().map(|s| s.to_string()));
    for i in 0..n - BASE_N {
        labels.push(format!("v{}", 11 + i));
    }
    labels
}

// both Q copies are rigid in every monopolar partition, so candidate
// scoring only has to sweep the terminal and connector sides
const RIGID_RIGHT: u32 = 1 | 1 << 1 | 1 << HUB | 1 << 5 | 1 << 6 | 1 << U2;

/// Valid side-patterns per terminal class, indexed by which terminals are
/// right. The target shape is one pattern in each singleton class and
/// none anywhere else.
fn class_counts(c: &Candidate) -> [u32; 8] {
    let mg = MaskGraph {
        n: c.n,
        nb: c.nb.clone(),
    };
    let free = c.n - TERMINALS[0];
    let full = (1u32 << c.n) - 1;
    let mut counts = [0u32; 8];
    for pat in 0u32..1 << free {
        let mut b = RIGID_RIGHT;
        for i in 0..free {
            if pat >> i & 1 == 1 {
                b |= 1 << (TERMINALS[0] + i);
            }
        }
        if mg.valid(PartitionKind::Monopolar, full & !b) {
            counts[(pat & 7) as usize] += 1;
        }
    }
    counts
}

fn score(c: &Candidate) -> u32 {
    let counts = class_counts(c);
    let mut s = 0u32;
    for j in 0..3 {
        let cj = counts[1 << j];
        s += if cj == 0 { 4 } else { (cj - 1).min(5) };
    }
    s += (counts[0] * 2).min(8);
    for cls in [3usize, 5, 6, 7] {
        s += counts[cls].min(5);
    }
    s += (c.count_k4() * 2).min(10);
    s += c.forcing_conflicts().min(8);
    if s == 0 && find_transitive_orientation_with_sinks(&c.to_graph(), &TERMINALS).is_none() {
        s = 1;
    }
    s
}

/// One seeded hill-climbing walk. Returns a certified gadget if the walk
/// reaches a zero-score candidate that passes the full contract check.
fn walk(
    n: usize,
    pool: &[(usize, usize)],
    seed: u64,
    k: usize,
    restart: u64,
) -> Option<ClauseGadget> {
    let mut rng = SplitMix64::new(
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
            ^ (k as u64).wrapping_mul(0x5851_F42D_4C95_7F2D)
            ^ restart.wrapping_mul(0xDA94_2042_E4DD_58B5),
    );
    let mut mask: u64 = 0;
    if restart > 0 {
        let density = 4 + restart % 12;
        for i in 0..pool.len() {
            if rng.chance(density, 64) {
                mask |= 1 << i;
            }
        }
    }
    let mut cur = score(&Candidate::build(n, mask, pool));
    let mut sideways = 0u32;
    for _ in 0..MAX_STEPS {
        if cur == 0 {
            break;
        }
        let mut best = u32::MAX;
        let mut best_moves: Vec<usize> = vec![];
        for i in 0..pool.len() {
            let s = score(&Candidate::build(n, mask ^ (1 << i), pool));
            if s < best {
                best = s;
                best_moves.clear();
                best_moves.push(i);
            } else if s == best {
                best_moves.push(i);
            }
        }
        if best > cur || (best == cur && sideways >= 60) {
            // stuck: kick a few random edges and keep walking
            let kick = 1 + rng.below(4);
            for _ in 0..kick {
                let i = rng.below(pool.len() as u64) as usize;
                mask ^= 1 << i;
            }
            cur = score(&Candidate::build(n, mask, pool));
            sideways = 0;
            continue;
        }
        sideways = if best == cur { sideways + 1 } else { 0 };
        let pick = best_moves[rng.below(best_moves.len() as u64) as usize];
        mask ^= 1 << pick;
        cur = best;
    }
    if cur != 0 {
        return None;
    }
    let cand = Candidate::build(n, mask, pool);
    let graph = cand.to_graph();
    let orientation = find_transitive_orientation_with_sinks(&graph, &TERMINALS)?;
    let gadget = ClauseGadget {
        graph,
        terminals: TERMINALS,
        hub: HUB,
        orientation,
    };
    verify_clause_gadget(&gadget).ok()?;
    Some(gadget)
}

/// Searches for a certified clause gadget on at most `max_n` vertices.
/// Two Q copies, the terminals and the hub edges are fixed; connector
/// wiring is explored by seeded hill-climbing, smallest connector count
/// first. Deterministic for a given `(max_n, seed)`: walks are a pure
/// function of their restart index, and the lowest successful index wins
/// no matter how the walks are scheduled.
pub fn synthesize_clause_gadget(max_n: usize, seed: u64) -> Result<ClauseGadget, GadgetError> {
    if max_n > oracle::DEFAULT_BRUTE_BOUND {
        return Err(GadgetError::Capacity(CapacityError {
            n: max_n,
            bound: oracle::DEFAULT_BRUTE_BOUND,
        }));
    }
    if max_n < BASE_N {
        return Err(GadgetError::SearchExhausted(max_n));
    }
    for n in BASE_N..=max_n {
        let k = n - BASE_N;
        let pool = candidate_pool(n);
        let found = exec::par_map((0..RESTARTS).collect(), |restart| {
            walk(n, &pool, seed, k, restart)
        });
        if let Some(g) = found.into_iter().flatten().next() {
            return Ok(g);
        }
    }
    Err(GadgetError::SearchExhausted(max_n))
}

/// The gadget shipped with the crate: the first one found by
/// `synthesize_clause_gadget(18, 0)`, frozen as a constant. Tests
/// regenerate both the search result and the certificate.
pub fn default_clause_gadget() -> ClauseGadget {
    let mut edges = base_edges();
    edges.extend_from_slice(&DEFAULT_EXTRA_EDGES);
    let graph = Graph::new(18, &edges, Some(gadget_labels(18))).expect("default gadget edges");
    let orientation =
        Orientation::new(graph.clone(), &DEFAULT_ARCS).expect("default gadget orientation");
    ClauseGadget {
        graph,
        terminals: TERMINALS,
        hub: HUB,
        orientation,
    }
}

const DEFAULT_EXTRA_EDGES: [(usize, usize); 8] = [
    (9, 13),
    (9, 15),
    (10, 13),
    (11, 14),
    (12, 16),
    (14, 17),
    (15, 17),
    (16, 17),
];

const DEFAULT_ARCS: [(usize, usize); 25] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 2),
    (1, 3),
    (4, 2),
    (4, 3),
    (4, 10),
    (4, 11),
    (4, 12),
    (5, 6),
    (7, 5),
    (7, 6),
    (7, 9),
    (8, 5),
    (8, 6),
    (8, 9),
    (13, 9),
    (13, 10),
    (14, 11),
    (14, 17),
    (15, 9),
    (15, 17),
    (16, 12),
    (16, 17),
];

// ---------------------------------------------------------------------
// bundle I/O
// ---------------------------------------------------------------------

/// Bundle form: the graph in DIMACS edge format, terminal and hub lines,
/// then the orientation. All vertex numbers are 1-based.
pub fn write_gadget_bundle(g: &ClauseGadget) -> String {
    let mut out = crate::dimacs::write_dimacs_graph(&g.graph);
    for (i, &t) in g.terminals.iter().enumerate() {
        out.push_str(&format!("t {} {}\n", i + 1, t + 1));
    }
    out.push_str(&format!("hub {}\n", g.hub + 1));
    out.push_str(&g.orientation.to_text());
    out
}

/// Parses a bundle and re-verifies the full contract before returning.
pub fn read_gadget_bundle(text: &str) -> Result<ClauseGadget, GadgetError> {
    let mut graph_lines = String::new();
    let mut orient_arcs: Vec<(usize, usize)> = vec![];
    let mut terminals: [Option<usize>; 3] = [None; 3];
    let mut hub: Option<usize> = None;
    let mut in_orient = false;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("c ") || line == "c" {
            continue;
        }
        let mut tok = line.split_ascii_whitespace();
        match tok.next() {
            Some("p") if line.starts_with("p orient") => in_orient = true,
            Some("p") | Some("e") => {
                graph_lines.push_str(line);
                graph_lines.push('\n');
            }
            Some("t") => {
                let pos: usize = parse_bundle_num(tok.next())?;
                let v: usize = parse_bundle_num(tok.next())?;
                if !(1..=3).contains(&pos) || v == 0 {
                    return Err(GadgetError::Bundle(format!("bad terminal line '{line}'")));
                }
                terminals[pos - 1] = Some(v - 1);
            }
            Some("hub") => {
                let v: usize = parse_bundle_num(tok.next())?;
                if v == 0 {
                    return Err(GadgetError::Bundle("hub must be 1-based".into()));
                }
                hub = Some(v - 1);
            }
            Some("a") => {
                if !in_orient {
                    return Err(GadgetError::Bundle("arc line before 'p orient'".into()));
                }
                let p: usize = parse_bundle_num(tok.next())?;
                let q: usize = parse_bundle_num(tok.next())?;
                if p == 0 || q == 0 {
                    return Err(GadgetError::Bundle("arcs are 1-based".into()));
                }
                orient_arcs.push((p - 1, q - 1));
            }
            _ => return Err(GadgetError::Bundle(format!("unexpected line '{line}'"))),
        }
    }
    let graph = crate::dimacs::read_dimacs_graph(&graph_lines)
        .map_err(|e| GadgetError::Bundle(e.to_string()))?;
    let terminals = match terminals {
        [Some(a), Some(b), Some(c)] => [a, b, c],
        _ => return Err(GadgetError::Bundle("missing terminal line".into())),
    };
    let hub = hub.ok_or_else(|| GadgetError::Bundle("missing hub line".into()))?;
    let orientation = Orientation::new(graph.clone(), &orient_arcs)?;
    let gadget = ClauseGadget {
        graph,
        terminals,
        hub,
        orientation,
    };
    verify_clause_gadget(&gadget)?;
    Ok(gadget)
}

fn parse_bundle_num(tok: Option<&str>) -> Result<usize, GadgetError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| GadgetError::Bundle("expected a number".into()))
}
