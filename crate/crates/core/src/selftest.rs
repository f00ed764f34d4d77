//! Self-verification suites. Each suite checks one of the toolkit's
//! grounding facts end to end, at sizes that finish in seconds to minutes,
//! and reports a pass flag plus how many cases ran. The CLI `selftest`
//! subcommand and the acceptance test target both drive these.

use std::time::Instant;

use crate::comparability::{
    chain_coloring, is_3col_comparability, is_comparability, is_comparability_brute,
};
use crate::exec;
use crate::gadget::{build_q, default_clause_gadget, verify_clause_gadget, verify_q};
use crate::graph::{all_graphs, random_graph, Graph};
use crate::oracle::{brute_monopolar, brute_polar, brute_unipolar, enumerate_monopolar};
use crate::reduction::{
    brute_force_1in3, build_reduction, check_1in3, constructive_orientation,
    partition_to_assignment, Formula,
};
use crate::rng::SplitMix64;
use crate::solver::{solve_monopolar, solve_polar, solve_unipolar_with_bound};

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    /// Exhaustive sweeps cover all graphs up to this vertex count.
    pub exhaustive_n: usize,
    /// Number of random graphs in the oracle-equivalence corpus.
    pub random_graphs: usize,
    /// Number of random formulas in the reduction corpus.
    pub random_formulas: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            exhaustive_n: 6,
            random_graphs: 500,
            random_formulas: 200,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub detail: String,
    pub millis: u128,
}

fn finish(name: &'static str, start: Instant, checked: u64, failures: Vec<String>) -> SuiteResult {
    SuiteResult {
        name,
        passed: failures.is_empty(),
        checked,
        detail: failures.first().cloned().unwrap_or_default(),
        millis: start.elapsed().as_millis(),
    }
}

fn exhaustive_corpus(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(all_graphs).collect()
}

fn random_corpus(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Graph> {
    let probs: [(u64, u64); 3] = [(1, 5), (1, 2), (4, 5)];
    let mut rng = SplitMix64::new(seed ^ 0xC0FF_EE11);
    (0..count)
        .map(|i| {
            let n = lo + rng.below((hi - lo + 1) as u64) as usize;
            let (num, den) = probs[i % probs.len()];
            random_graph(n, num, den, &mut rng)
        })
        .collect()
}

/// Q reproduction: exhaustive enumeration of all 32 A-sets finds exactly
/// the one expected partition.
pub fn suite_q_uniqueness(_cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let mut failures = vec![];
    let q = build_q();
    if verify_q(&q) != Ok(true) {
        failures.push("verify_q(build_q()) != true".into());
    }
    let parts = enumerate_monopolar(&q).expect("Q is enumerable");
    if parts.len() != 1 || parts[0].a_side.members() != [2, 3] {
        failures.push(format!(
            "expected one partition with A = {{v3, v4}}, got {parts:?}"
        ));
    }
    finish("Q uniqueness", start, 32, failures)
}

/// Clause-gadget contract on the shipped default, re-derived from scratch.
pub fn suite_gadget_contract(_cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let mut failures = vec![];
    let gadget = default_clause_gadget();
    match verify_clause_gadget(&gadget) {
        Ok(cert) => {
            if cert.partitions.len() != 3 {
                failures.push(format!("{} partitions", cert.partitions.len()));
            }
            let mut rts = cert.right_terminal_of.clone();
            rts.sort_unstable();
            rts.dedup();
            if rts.len() != 3 {
                failures.push("right terminals are not pairwise distinct".into());
            }
            for p in &cert.partitions {
                if !p.b_side.contains(gadget.hub) {
                    failures.push("hub not right in every partition".into());
                }
            }
            if gadget.graph.has_k4() {
                failures.push("gadget contains K4".into());
            }
            if !gadget.orientation.is_transitive() {
                failures.push("orientation not transitive".into());
            }
            let sinks = gadget.orientation.sinks();
            if !gadget.terminals.iter().all(|&t| sinks.contains(t)) {
                failures.push("terminals are not sinks".into());
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    finish("gadget contract", start, 1 << gadget.graph.n(), failures)
}

/// Solver vs brute-force oracle agreement on existence, for all three
/// partition kinds, over the exhaustive and random corpora.
pub fn suite_oracle_equivalence(cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let mut corpus = exhaustive_corpus(cfg.exhaustive_n);
    corpus.extend(random_corpus(cfg.random_graphs, 7, 12, cfg.seed));
    let checked = corpus.len() as u64 * 3;
    let failures: Vec<String> = exec::par_map(corpus, |g| {
        let uni_bound = g.n().max(crate::solver::DEFAULT_UNIPOLAR_BOUND);
        let mono = solve_monopolar(&g).is_some() == brute_monopolar(&g).unwrap().is_some();
        let pol = solve_polar(&g).is_some() == brute_polar(&g).unwrap().is_some();
        let uni = solve_unipolar_with_bound(&g, uni_bound).unwrap().is_some()
            == brute_unipolar(&g).unwrap().is_some();
        if mono && pol && uni {
            None
        } else {
            Some(format!("disagreement on {g:?}"))
        }
    })
    .into_iter()
    .flatten()
    .collect();
    finish("oracle equivalence", start, checked, failures)
}

fn exhaustive_formulas(max_vars: usize, max_clauses: usize) -> Vec<Formula> {
    let mut out = vec![];
    for n in 0..=max_vars {
        let mut candidates: Vec<[usize; 3]> = vec![];
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    candidates.push([a, b, c]);
                }
            }
        }
        let k = candidates.len();
        for mask in 0u32..1 << k {
            if (mask.count_ones() as usize) > max_clauses {
                continue;
            }
            let clauses: Vec<[usize; 3]> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &c)| c)
                .collect();
            out.push(Formula::new(n, clauses).expect("enumerated clauses are valid"));
        }
    }
    out
}

fn random_formulas(count: usize, seed: u64) -> Vec<Formula> {
    let mut rng = SplitMix64::new(seed ^ 0xF0F0_1234);
    (0..count)
        .map(|_| {
            let n = 3 + rng.below(4) as usize; // 3..=6 variables
            let m = 1 + rng.below(5) as usize; // 1..=5 clauses
            let clauses: Vec<[usize; 3]> = (0..m)
                .map(|_| {
                    let mut vars: Vec<usize> = (1..=n).collect();
                    // choose 3 distinct variables
                    let mut pick = [0usize; 3];
                    for slot in pick.iter_mut() {
                        let i = rng.below(vars.len() as u64) as usize;
                        *slot = vars.remove(i);
                    }
                    pick
                })
                .collect();
            Formula::new(n, clauses).expect("random clauses are valid")
        })
        .collect()
}

fn reduction_corpus(cfg: &SuiteConfig) -> Vec<Formula> {
    let mut corpus = exhaustive_formulas(4, 3);
    corpus.extend(random_formulas(cfg.random_formulas, cfg.seed));
    corpus
}

/// Reduction equivalence: a formula has a 1-in-3 model iff its graph is
/// monopolar, and extracted assignments always check out.
pub fn suite_reduction_equivalence(cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let gadget = default_clause_gadget();
    let corpus = reduction_corpus(cfg);
    let checked = corpus.len() as u64;
    let failures: Vec<String> = exec::par_map(corpus, |f| {
        let r = build_reduction(&f, &gadget).expect("default gadget certifies");
        let sat = brute_force_1in3(&f).expect("small formula");
        match (sat, solve_monopolar(&r.graph)) {
            (None, None) => None,
            (Some(_), Some(p)) => match partition_to_assignment(&r, &p) {
                Ok(a) if check_1in3(&f, &a) == Ok(true) => None,
                _ => Some(format!("bad extracted assignment for {f:?}")),
            },
            (sat, part) => Some(format!(
                "equivalence break on {f:?}: 1in3 {} vs monopolar {}",
                sat.is_some(),
                part.is_some()
            )),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    finish("reduction equivalence", start, checked, failures)
}

/// Structural facts about every built graph: K4-free comparability, and
/// the constructive orientation chain-colors with exactly three colors.
pub fn suite_reduction_structure(cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let gadget = default_clause_gadget();
    let corpus = reduction_corpus(cfg);
    let checked = corpus.len() as u64;
    let failures: Vec<String> = exec::par_map(corpus, |f| {
        let r = build_reduction(&f, &gadget).expect("default gadget certifies");
        if !is_3col_comparability(&r.graph) {
            return Some(format!("{f:?}: graph not 3-colourable comparability"));
        }
        if f.num_clauses() >= 1 {
            let col = match chain_coloring(&constructive_orientation(&r)) {
                Ok(c) => c,
                Err(e) => return Some(format!("{f:?}: {e}")),
            };
            if col.num_colors() != 3 {
                return Some(format!("{f:?}: {} colors", col.num_colors()));
            }
            if !col.is_proper(&r.graph) {
                return Some(format!("{f:?}: improper coloring"));
            }
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    finish("reduction structure", start, checked, failures)
}

/// Disjoint-union transfer: 2G polar, G monopolar and 2G monopolar are
/// equivalent statements.
pub fn suite_double_transfer(cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let mut corpus = exhaustive_corpus(cfg.exhaustive_n);
    corpus.extend(random_corpus(
        200.min(cfg.random_graphs),
        5,
        10,
        cfg.seed ^ 0xD0,
    ));
    let checked = corpus.len() as u64;
    let failures: Vec<String> = exec::par_map(corpus, |g| {
        let d = g.double();
        let a = solve_polar(&d).is_some();
        let b = solve_monopolar(&g).is_some();
        let c = solve_monopolar(&d).is_some();
        if a == b && b == c {
            None
        } else {
            Some(format!("transfer break on {g:?}: {a} {b} {c}"))
        }
    })
    .into_iter()
    .flatten()
    .collect();
    finish("double transfer", start, checked, failures)
}

/// Every cluster graph on up to 8 vertices has a complement that is
/// connected or edgeless.
pub fn suite_co_cluster_connectivity(_cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let mut failures = vec![];
    let mut checked = 0u64;
    for n in 0..=8usize {
        for blocks in integer_partitions(n) {
            let mut edges = vec![];
            let mut next = 0;
            for b in &blocks {
                for u in next..next + b {
                    for v in u + 1..next + b {
                        edges.push((u, v));
                    }
                }
                next += b;
            }
            let cluster = Graph::new(n, &edges, None).expect("cluster edges are valid");
            checked += 1;
            if !cluster.is_cluster() {
                failures.push(format!("block construction broken for {blocks:?}"));
                continue;
            }
            match cluster.complement().co_cluster_connectivity_check() {
                Ok(true) => {}
                other => failures.push(format!("{blocks:?}: {other:?}")),
            }
        }
    }
    finish("co-cluster connectivity", start, checked, failures)
}

fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, n.max(1), &mut vec![], &mut out);
    out
}

/// Polarity is invariant under complement.
pub fn suite_complement_invariance(cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let mut corpus = exhaustive_corpus(cfg.exhaustive_n);
    corpus.extend(random_corpus(cfg.random_graphs, 7, 12, cfg.seed));
    let checked = corpus.len() as u64;
    let failures: Vec<String> = exec::par_map(corpus, |g| {
        if solve_polar(&g).is_some() == solve_polar(&g.complement()).is_some() {
            None
        } else {
            Some(format!("complement break on {g:?}"))
        }
    })
    .into_iter()
    .flatten()
    .collect();
    finish("complement invariance", start, checked, failures)
}

/// Forcing-based recognition agrees with trying every orientation.
pub fn suite_comparability_oracle(cfg: &SuiteConfig) -> SuiteResult {
    let start = Instant::now();
    let corpus = exhaustive_corpus(cfg.exhaustive_n);
    let checked = corpus.len() as u64;
    let failures: Vec<String> = exec::par_map(corpus, |g| match is_comparability_brute(&g) {
        Ok(expected) => {
            if is_comparability(&g) == expected {
                None
            } else {
                Some(format!("recognition break on {g:?}"))
            }
        }
        Err(e) => Some(format!("oracle capacity on {g:?}: {e}")),
    })
    .into_iter()
    .flatten()
    .collect();
    finish("comparability oracle", start, checked, failures)
}

/// Runs all nine suites in their canonical order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteResult> {
    vec![
        suite_q_uniqueness(cfg),
        suite_gadget_contract(cfg),
        suite_oracle_equivalence(cfg),
        suite_reduction_equivalence(cfg),
        suite_reduction_structure(cfg),
        suite_double_transfer(cfg),
        suite_co_cluster_connectivity(cfg),
        suite_complement_invariance(cfg),
        suite_comparability_oracle(cfg),
    ]
}
