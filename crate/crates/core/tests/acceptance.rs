//! Acceptance gate: every self-verification suite at its full size, with
//! one printed line per criterion and the documented runtime ceilings.

use std::time::Duration;

use polaritylab::selftest::{run_all, SuiteConfig};

#[test]
fn acceptance() {
    // warm the worker pool so the per-criterion timings measure the work,
    // not thread startup
    let _ = polaritylab::exec::par_map((0..64).collect::<Vec<u32>>(), |x| x * 2);

    let cfg = SuiteConfig::default();
    let results = run_all(&cfg);
    assert_eq!(results.len(), 9);

    let ceilings: [Option<Duration>; 9] = [
        Some(Duration::from_millis(1)), // Q uniqueness
        Some(Duration::from_secs(10)),  // gadget contract
        Some(Duration::from_secs(300)), // oracle equivalence
        Some(Duration::from_secs(600)), // reduction equivalence
        None,                           // reduction structure
        None,                           // double transfer
        None,                           // co-cluster connectivity
        None,                           // complement invariance
        None,                           // comparability oracle
    ];

    let mut all_ok = true;
    for (i, r) in results.iter().enumerate() {
        let within = ceilings[i]
            .map(|c| r.millis <= c.as_millis())
            .unwrap_or(true);
        let status = if r.passed && within { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({}): {} [{} checks, {} ms]{}",
            i + 1,
            r.name,
            status,
            r.checked,
            r.millis,
            if r.detail.is_empty() {
                String::new()
            } else {
                format!(" - {}", r.detail)
            }
        );
        all_ok &= r.passed && within;
    }
    assert!(all_ok, "at least one acceptance criterion failed");
}
