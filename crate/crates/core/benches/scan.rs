//! Sequential vs parallel timings for the exhaustive scans and the corpus
//! drivers. Run with `cargo bench -p polaritylab`.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use polaritylab::gadget::default_clause_gadget;
use polaritylab::graph::random_graph;
#[cfg(feature = "parallel")]
use polaritylab::oracle::brute_monopolar_scan_par;
use polaritylab::oracle::brute_monopolar_scan_seq;
use polaritylab::reduction::{build_reduction, Formula};
use polaritylab::rng::SplitMix64;
use polaritylab::solver::solve_monopolar;

fn bench_mask_scan(c: &mut Criterion) {
    let gadget = default_clause_gadget();
    let mut rng = SplitMix64::new(42);
    let dense = random_graph(20, 1, 2, &mut rng);
    let mut group = c.benchmark_group("brute_monopolar_scan");
    for (name, g) in [("gadget_n18", &gadget.graph), ("random_n20", &dense)] {
        group.bench_with_input(BenchmarkId::new("seq", name), g, |b, g| {
            b.iter(|| brute_monopolar_scan_seq(g))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", name), g, |b, g| {
            b.iter(|| brute_monopolar_scan_par(g))
        });
    }
    group.finish();
}

fn corpus() -> Vec<Formula> {
    let mut rng = SplitMix64::new(7);
    (0..24)
        .map(|_| {
            let n = 4 + rng.below(3) as usize;
            let m = 2 + rng.below(4) as usize;
            let clauses = (0..m)
                .map(|_| {
                    let mut vars: Vec<usize> = (1..=n).collect();
                    let mut pick = [0usize; 3];
                    for slot in pick.iter_mut() {
                        let i = rng.below(vars.len() as u64) as usize;
                        *slot = vars.remove(i);
                    }
                    pick
                })
                .collect();
            Formula::new(n, clauses).unwrap()
        })
        .collect()
}

fn bench_reduction_corpus(c: &mut Criterion) {
    let gadget = default_clause_gadget();
    let graphs: Vec<_> = corpus()
        .iter()
        .map(|f| build_reduction(f, &gadget).unwrap().graph)
        .collect();
    let mut group = c.benchmark_group("corpus_solve");
    group.bench_function("seq", |b| {
        b.iter(|| {
            graphs
                .iter()
                .filter(|g| solve_monopolar(g).is_some())
                .count()
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| {
            let refs: Vec<&polaritylab::Graph> = graphs.iter().collect();
            polaritylab::exec::par_map(refs, |g| solve_monopolar(g).is_some())
                .into_iter()
                .filter(|&x| x)
                .count()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_mask_scan, bench_reduction_corpus);
criterion_main!(benches);
