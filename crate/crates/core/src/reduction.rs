//! Positive 3-CNF formulas and their translation into graphs whose
//! monopolarity matches 1-in-3 satisfiability.
//!
//! The built graph consists of one x-vertex per variable, one clause
//! gadget copy per clause, and an edge from each clause's variables to the
//! matching terminals of its copy. A 1-in-3 model maps to a monopolar
//! partition by putting true x-vertices left and extending each copy with
//! the certified partition whose right terminal belongs to the clause's
//! true variable; the reverse direction reads variable values off the
//! x-vertices.

use crate::comparability::Orientation;
use crate::error::{CapacityError, FormulaError, ReductionError};
use crate::exec;
use crate::gadget::{verify_clause_gadget, ClauseGadget, GadgetCertificate};
use crate::graph::{Graph, VertexSet};
use crate::partition::{validate, Partition, PartitionKind};

/// Positive 3-CNF: clauses hold exactly three distinct variable indices,
/// 1-based; negation is not representable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Formula, FormulaError> {
        for c in &clauses {
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(FormulaError::RepeatedVariable);
            }
            for &v in c {
                if v == 0 || v > num_vars {
                    return Err(FormulaError::VarOutOfRange(v, num_vars));
                }
            }
        }
        Ok(Formula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// DIMACS CNF form with the restrictions of this crate: positive
    /// literals only, three per clause.
    pub fn to_text(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

/// Per-variable truth values; index 0 is variable 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn true_vars(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Parses the restricted DIMACS CNF format: `p cnf <vars> <clauses>`, then
/// clause lines of exactly three distinct positive literals ending in 0.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[usize; 3]> = vec![];
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(
                    FormulaError::Malformed("duplicate problem line".into()).at_line(lineno)
                );
            }
            let mut tok = line.split_ascii_whitespace();
            tok.next();
            if tok.next() != Some("cnf") {
                return Err(
                    FormulaError::Malformed("expected 'p cnf <vars> <clauses>'".into())
                        .at_line(lineno),
                );
            }
            let n = parse_usize(tok.next()).ok_or_else(|| {
                FormulaError::Malformed("bad variable count".into()).at_line(lineno)
            })?;
            let m = parse_usize(tok.next()).ok_or_else(|| {
                FormulaError::Malformed("bad clause count".into()).at_line(lineno)
            })?;
            header = Some((n, m));
            continue;
        }
        let (num_vars, num_clauses) = header.ok_or_else(|| {
            FormulaError::Malformed("clause line before 'p cnf' header".into()).at_line(lineno)
        })?;
        let mut lits: Vec<usize> = vec![];
        let mut terminated = false;
        for tok in line.split_ascii_whitespace() {
            let v: i64 = tok.parse().map_err(|_| {
                FormulaError::Malformed(format!("bad literal '{tok}'")).at_line(lineno)
            })?;
            if terminated {
                return Err(
                    FormulaError::Malformed("tokens after clause terminator".into())
                        .at_line(lineno),
                );
            }
            if v < 0 {
                return Err(FormulaError::NegatedLiteral.at_line(lineno));
            }
            if v == 0 {
                terminated = true;
            } else {
                lits.push(v as usize);
            }
        }
        if !terminated {
            return Err(
                FormulaError::Malformed("clause line must end with 0".into()).at_line(lineno),
            );
        }
        if lits.len() != 3 {
            return Err(FormulaError::Arity(lits.len()).at_line(lineno));
        }
        if lits[0] == lits[1] || lits[0] == lits[2] || lits[1] == lits[2] {
            return Err(FormulaError::RepeatedVariable.at_line(lineno));
        }
        for &v in &lits {
            if v > num_vars {
                return Err(FormulaError::VarOutOfRange(v, num_vars).at_line(lineno));
            }
        }
        if clauses.len() == num_clauses {
            return Err(FormulaError::Malformed(format!(
                "more than the declared {num_clauses} clauses"
            ))
            .at_line(lineno));
        }
        clauses.push([lits[0], lits[1], lits[2]]);
    }
    let (num_vars, num_clauses) =
        header.ok_or_else(|| FormulaError::Malformed("missing 'p cnf' header".into()))?;
    if clauses.len() != num_clauses {
        return Err(FormulaError::Malformed(format!(
            "declared {num_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    Formula::new(num_vars, clauses)
}

fn parse_usize(tok: Option<&str>) -> Option<usize> {
    tok.and_then(|t| t.parse().ok())
}

/// True iff every clause has exactly one true variable.
pub fn check_1in3(f: &Formula, a: &Assignment) -> Result<bool, ReductionError> {
    if a.values.len() != f.num_vars {
        return Err(ReductionError::LengthMismatch {
            got: a.values.len(),
            expected: f.num_vars,
        });
    }
    Ok(f.clauses
        .iter()
        .all(|c| c.iter().filter(|&&v| a.values[v - 1]).count() == 1))
}

/// Exhaustive 1-in-3 decision, returning the satisfying assignment whose
/// set of true variables is lexicographically least.
pub fn brute_force_1in3(f: &Formula) -> Result<Option<Assignment>, CapacityError> {
    if f.num_vars > 24 {
        return Err(CapacityError {
            n: f.num_vars,
            bound: 24,
        });
    }
    let clauses = f.clauses.clone();
    let hit = exec::min_valid_mask(f.num_vars, move |mask| {
        clauses
            .iter()
            .all(|c| c.iter().filter(|&&v| mask >> (v - 1) & 1 == 1).count() == 1)
    });
    Ok(hit.map(|mask| Assignment {
        values: (0..f.num_vars).map(|i| mask >> i & 1 == 1).collect(),
    }))
}

/// The graph built from a formula, with the bookkeeping needed to move
/// between assignments and partitions.
#[derive(Clone, Debug)]
pub struct LabeledReduction {
    pub graph: Graph,
    /// variable (1-based) -> its x-vertex
    pub x_vertex_of: Vec<usize>,
    /// clause index -> inclusive vertex range of its gadget copy
    pub copy_of: Vec<(usize, usize)>,
    /// clause index -> the three terminal vertices of its copy
    pub terminal_of: Vec<[usize; 3]>,
    /// clause index -> the hub vertex of its copy
    pub hub_of: Vec<usize>,
    pub gadget: ClauseGadget,
    pub certificate: GadgetCertificate,
}

/// Builds the reduction graph: `num_vars` isolated x-vertices, one gadget
/// copy per clause, and one edge from each clause variable's x-vertex to
/// the positionally matching terminal. The gadget is (re)certified first.
pub fn build_reduction(
    f: &Formula,
    gadget: &ClauseGadget,
) -> Result<LabeledReduction, ReductionError> {
    let certificate = verify_clause_gadget(gadget)?;
    let nx = f.num_vars;
    let s = gadget.graph.n();
    let n = nx + f.num_clauses() * s;
    let mut edges: Vec<(usize, usize)> = vec![];
    let mut labels: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let mut copy_of = vec![];
    let mut terminal_of = vec![];
    let mut hub_of = vec![];
    for (ci, clause) in f.clauses.iter().enumerate() {
        let off = nx + ci * s;
        for &(u, v) in gadget.graph.edges() {
            edges.push((off + u, off + v));
        }
        for v in 0..s {
            let base = gadget
                .graph
                .label(v)
                .map(str::to_string)
                .unwrap_or_else(|| format!("g{v}"));
            labels.push(format!("{base}_{}", ci + 1));
        }
        copy_of.push((off, off + s - 1));
        terminal_of.push([
            off + gadget.terminals[0],
            off + gadget.terminals[1],
            off + gadget.terminals[2],
        ]);
        hub_of.push(off + gadget.hub);
        for (pos, &var) in clause.iter().enumerate() {
            edges.push((var - 1, off + gadget.terminals[pos]));
        }
    }
    let graph = Graph::new(n, &edges, Some(labels)).expect("reduction edges are valid");

    // x-vertices form an independent set with pairwise disjoint
    // neighbourhoods; both facts follow from the construction but are
    // asserted literally
    let mut seen_terminals = std::collections::HashSet::new();
    for x in 0..nx {
        for &t in graph.neighbors(x) {
            assert!(t >= nx, "x-vertices must be pairwise non-adjacent");
            assert!(
                seen_terminals.insert(t),
                "x neighbourhoods must be disjoint"
            );
        }
    }

    Ok(LabeledReduction {
        graph,
        x_vertex_of: (0..nx).collect(),
        copy_of,
        terminal_of,
        hub_of,
        gadget: gadget.clone(),
        certificate,
    })
}

/// The orientation used to certify that built graphs are comparability:
/// each copy keeps the gadget orientation and every cross edge points from
/// the x-vertex to its terminal.
pub fn constructive_orientation(r: &LabeledReduction) -> Orientation {
    let mut arcs: Vec<(usize, usize)> = vec![];
    let nx = r.x_vertex_of.len();
    let s = r.gadget.graph.n();
    for (ci, _) in r.copy_of.iter().enumerate() {
        let off = nx + ci * s;
        for (p, q) in r.gadget.orientation.arcs() {
            arcs.push((off + p, off + q));
        }
    }
    for x in 0..nx {
        for &t in r.graph.neighbors(x) {
            arcs.push((x, t));
        }
    }
    Orientation::new(r.graph.clone(), &arcs).expect("constructive arcs cover the graph")
}

/// Turns a 1-in-3 model into a monopolar partition: true x-vertices go
/// left, and each copy takes the certified partition keyed by the clause's
/// true variable. The result is validated before being returned.
pub fn assignment_to_partition(
    r: &LabeledReduction,
    a: &Assignment,
) -> Result<Partition, ReductionError> {
    let f = formula_of(r);
    if !check_1in3(&f, a)? {
        let (clause, true_count) = f
            .clauses()
            .iter()
            .enumerate()
            .find_map(|(i, c)| {
                let tc = c.iter().filter(|&&v| a.values[v - 1]).count();
                (tc != 1).then_some((i, tc))
            })
            .expect("some clause violates the 1-in-3 condition");
        return Err(ReductionError::NotOneInThree { clause, true_count });
    }
    let mut left: Vec<usize> = vec![];
    for (var0, &x) in r.x_vertex_of.iter().enumerate() {
        if a.values[var0] {
            left.push(x);
        }
    }
    for (ci, clause) in f.clauses().iter().enumerate() {
        let pos = clause
            .iter()
            .position(|&v| a.values[v - 1])
            .expect("exactly one true variable per clause");
        let copy_partition = r
            .certificate
            .partition_for_terminal(r.gadget.terminals[pos])
            .expect("certificate covers every terminal");
        let (off, _) = r.copy_of[ci];
        for v in copy_partition.a_side.iter() {
            left.push(off + v);
        }
    }
    let a_side = VertexSet::new(left);
    let b_side: VertexSet = (0..r.graph.n()).filter(|v| !a_side.contains(*v)).collect();
    let p = Partition::new(PartitionKind::Monopolar, a_side, b_side);
    debug_assert_eq!(validate(&r.graph, &p), Ok(true));
    Ok(p)
}

/// Reads a 1-in-3 model off a monopolar partition of the built graph.
pub fn partition_to_assignment(
    r: &LabeledReduction,
    p: &Partition,
) -> Result<Assignment, ReductionError> {
    if p.kind != PartitionKind::Monopolar || !validate(&r.graph, p)? {
        return Err(ReductionError::InvalidPartition);
    }
    let values: Vec<bool> = r
        .x_vertex_of
        .iter()
        .map(|&x| p.a_side.contains(x))
        .collect();
    let a = Assignment { values };
    // every monopolar partition of a built graph encodes a 1-in-3 model;
    // surface a structured error rather than trusting that
    let f = formula_of(r);
    match check_1in3(&f, &a)? {
        true => Ok(a),
        false => Err(ReductionError::InvalidPartition),
    }
}

fn formula_of(r: &LabeledReduction) -> Formula {
    // reconstruct clause variable lists from the cross edges
    let clauses: Vec<[usize; 3]> = r
        .terminal_of
        .iter()
        .map(|ts| {
            let var_at = |t: usize| {
                r.graph
                    .neighbors(t)
                    .iter()
                    .copied()
                    .find(|&u| u < r.x_vertex_of.len())
                    .map(|x| x + 1)
                    .expect("every copy terminal has exactly one x neighbour")
            };
            [var_at(ts[0]), var_at(ts[1]), var_at(ts[2])]
        })
        .collect();
    Formula::new(r.x_vertex_of.len(), clauses).expect("reduction encodes a valid formula")
}

/// Sidecar mapping emitted next to reduction graphs so third-party solvers
/// can be checked against ground truth. All numbers are 1-based.
pub fn write_mapping(r: &LabeledReduction) -> String {
    let mut out = String::new();
    for (var0, &x) in r.x_vertex_of.iter().enumerate() {
        out.push_str(&format!("x {} {}\n", var0 + 1, x + 1));
    }
    for (ci, &(first, last)) in r.copy_of.iter().enumerate() {
        out.push_str(&format!("copy {} {} {}\n", ci + 1, first + 1, last + 1));
    }
    for (ci, ts) in r.terminal_of.iter().enumerate() {
        for (pos, &t) in ts.iter().enumerate() {
            out.push_str(&format!("t {} {} {}\n", ci + 1, pos + 1, t + 1));
        }
    }
    for (ci, &h) in r.hub_of.iter().enumerate() {
        out.push_str(&format!("hub {} {}\n", ci + 1, h + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::default_clause_gadget;
    use crate::solver::solve_monopolar;

    fn formula(num_vars: usize, clauses: &[[usize; 3]]) -> Formula {
        Formula::new(num_vars, clauses.to_vec()).unwrap()
    }

    #[test]
    fn parse_single_clause() {
        let f = parse_formula("p cnf 3 1\n1 2 3 0\n").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses(), &[[1, 2, 3]]);
    }

    #[test]
    fn parse_rejects_negation() {
        let err = parse_formula("p cnf 3 1\n1 -2 3 0\n").unwrap_err();
        assert!(matches!(
            err,
            FormulaError::AtLine { line: 2, ref source } if **source == FormulaError::NegatedLiteral
        ));
    }

    #[test]
    fn parse_rejects_arity_and_repeats() {
        assert!(matches!(
            parse_formula("p cnf 4 1\n1 2 3 4 0\n").unwrap_err(),
            FormulaError::AtLine { source, .. } if *source == FormulaError::Arity(4)
        ));
        assert!(matches!(
            parse_formula("p cnf 3 1\n1 1 2 0\n").unwrap_err(),
            FormulaError::AtLine { source, .. } if *source == FormulaError::RepeatedVariable
        ));
        assert!(matches!(
            parse_formula("p cnf 2 1\n1 2 3 0\n").unwrap_err(),
            FormulaError::AtLine { source, .. } if *source == FormulaError::VarOutOfRange(3, 2)
        ));
    }

    #[test]
    fn parse_counts_clauses() {
        let f = parse_formula("p cnf 4 4\n1 2 3 0\n1 2 4 0\n1 3 4 0\n2 3 4 0\n").unwrap();
        assert_eq!(f.num_clauses(), 4);
        assert!(parse_formula("p cnf 3 2\n1 2 3 0\n").is_err());
    }

    #[test]
    fn check_examples() {
        let f = formula(3, &[[1, 2, 3]]);
        let tff = Assignment {
            values: vec![true, false, false],
        };
        let ttf = Assignment {
            values: vec![true, true, false],
        };
        let fff = Assignment {
            values: vec![false, false, false],
        };
        assert_eq!(check_1in3(&f, &tff), Ok(true));
        assert_eq!(check_1in3(&f, &ttf), Ok(false));
        assert_eq!(check_1in3(&f, &fff), Ok(false));
        assert!(check_1in3(&f, &Assignment { values: vec![true] }).is_err());
    }

    #[test]
    fn brute_1in3_examples() {
        let f = formula(3, &[[1, 2, 3]]);
        let a = brute_force_1in3(&f).unwrap().unwrap();
        assert_eq!(a.values, vec![true, false, false]);

        // every variable occurs three times, so 3 * (true count) = 4 clauses
        // is impossible
        let unsat = formula(4, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        assert_eq!(brute_force_1in3(&unsat).unwrap(), None);

        let sat = formula(4, &[[1, 2, 3], [1, 2, 4]]);
        let a = brute_force_1in3(&sat).unwrap().unwrap();
        assert_eq!(check_1in3(&sat, &a), Ok(true));
    }

    #[test]
    fn build_counts() {
        let gadget = default_clause_gadget();
        let s = gadget.graph.n();
        let f = formula(3, &[[1, 2, 3]]);
        let r = build_reduction(&f, &gadget).unwrap();
        assert_eq!(r.graph.n(), 3 + s);
        assert_eq!(
            r.graph.edge_count(),
            gadget.graph.edge_count() + 3,
            "one gadget copy plus three cross edges"
        );
        assert_eq!(r.graph.label(0), Some("x1"));
        assert_eq!(r.graph.label(r.hub_of[0]), Some("v5_1"));

        let empty = formula(2, &[]);
        let r = build_reduction(&empty, &gadget).unwrap();
        assert_eq!(r.graph.n(), 2);
        assert!(solve_monopolar(&r.graph).is_some());
    }

    #[test]
    fn cross_edge_count_is_3m() {
        let gadget = default_clause_gadget();
        let f = formula(4, &[[1, 2, 3], [1, 2, 4], [2, 3, 4]]);
        let r = build_reduction(&f, &gadget).unwrap();
        let cross = r.graph.edge_count() - 3 * gadget.graph.edge_count();
        assert_eq!(cross, 9);
    }

    #[test]
    fn assignment_partition_roundtrip() {
        let gadget = default_clause_gadget();
        let f = formula(4, &[[1, 2, 3], [1, 2, 4]]);
        let r = build_reduction(&f, &gadget).unwrap();
        let a = brute_force_1in3(&f).unwrap().unwrap();
        let p = assignment_to_partition(&r, &a).unwrap();
        assert_eq!(validate(&r.graph, &p), Ok(true));
        let back = partition_to_assignment(&r, &p).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn shared_variable_uses_matching_copy_partitions() {
        let gadget = default_clause_gadget();
        let f = formula(5, &[[1, 2, 3], [1, 4, 5]]);
        let r = build_reduction(&f, &gadget).unwrap();
        let a = Assignment {
            values: vec![true, false, false, false, false],
        };
        let p = assignment_to_partition(&r, &a).unwrap();
        // both copies must hold their first terminal right
        for ci in 0..2 {
            assert!(p.b_side.contains(r.terminal_of[ci][0]));
            assert!(!p.b_side.contains(r.terminal_of[ci][1]));
        }
    }

    #[test]
    fn non_model_is_rejected() {
        let gadget = default_clause_gadget();
        let f = formula(3, &[[1, 2, 3]]);
        let r = build_reduction(&f, &gadget).unwrap();
        let bad = Assignment {
            values: vec![true, true, false],
        };
        assert!(matches!(
            assignment_to_partition(&r, &bad),
            Err(ReductionError::NotOneInThree {
                clause: 0,
                true_count: 2
            })
        ));
    }

    #[test]
    fn solver_partitions_decode_to_models() {
        let gadget = default_clause_gadget();
        let f = formula(4, &[[1, 2, 3], [2, 3, 4]]);
        let r = build_reduction(&f, &gadget).unwrap();
        let p = solve_monopolar(&r.graph).expect("satisfiable instance");
        let a = partition_to_assignment(&r, &p).unwrap();
        assert_eq!(check_1in3(&f, &a), Ok(true));
    }

    #[test]
    fn unsat_formula_gives_non_monopolar_graph() {
        let gadget = default_clause_gadget();
        let unsat = formula(4, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        let r = build_reduction(&unsat, &gadget).unwrap();
        assert!(solve_monopolar(&r.graph).is_none());
    }

    #[test]
    fn built_graphs_are_3col_comparability() {
        let gadget = default_clause_gadget();
        let f = formula(3, &[[1, 2, 3]]);
        let r = build_reduction(&f, &gadget).unwrap();
        assert!(crate::comparability::is_3col_comparability(&r.graph));
        let o = constructive_orientation(&r);
        assert!(o.is_transitive());
        let col = crate::comparability::chain_coloring(&o).unwrap();
        assert_eq!(col.num_colors(), 3);
    }

    #[test]
    fn mapping_sidecar_format() {
        let gadget = default_clause_gadget();
        let s = gadget.graph.n();
        let f = formula(3, &[[1, 2, 3]]);
        let r = build_reduction(&f, &gadget).unwrap();
        let map = write_mapping(&r);
        assert!(map.contains("x 1 1\n"));
        assert!(map.contains(&format!("copy 1 4 {}\n", 3 + s)));
        assert!(map.contains(&format!("hub 1 {}\n", 4 + gadget.hub)));
        assert!(map.contains(&format!("t 1 1 {}\n", 4 + gadget.terminals[0])));
    }
}
