//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its measurements (run with `--nocapture` to see them).
//!
//! 1. exhaustive solver check on all dense oriented graphs, n in 3..=5
//! 2. oracle agreement on the same space plus 10^5 samples at n in 6..=8
//! 3. every labeled tournament on 6 and 7 vertices solves near-directed
//! 4. the extremal family is tight: oracle best equals its minimum degree
//! 5. 10^4 seeded path+cycle merge configurations always succeed
//! 6. discrepancy paths on every small graph, dense or not
//! 7. scale: n = 2000 solves within budget; probe growth at most cubic
//!
//! Criterion 8 (byte-identical CLI runs) lives in the CLI crate's
//! acceptance suite next to the binary it exercises.

use std::time::Instant;

use hamdisc::absorb::{absorb_path_traced, AbsorbBranch};
use hamdisc::certify::{verify_hamilton_cycle, verify_path};
use hamdisc::graph::OrientedGraph;
use hamdisc::instruments::{
    best_discrepancy_exhaustive, conjecture_sweep, construction_gnd, enumerate_instances,
    random_absorb_config, random_min_degree_oriented, EnumMode, SweepConfig, SweepFamily,
    DEFAULT_ENUM_BUDGET,
};
use hamdisc::solver::{discrepancy_path, max_discrepancy_hamilton};
use rayon::prelude::*;

fn dense_sweep(n_values: Vec<usize>, mode: EnumMode, oracle: bool) -> hamdisc::instruments::SweepReport {
    let cfg = SweepConfig {
        n_values,
        mode,
        family: SweepFamily::DenseOriented,
        oracle_check: oracle,
        oracle_cap: 10,
        budget: DEFAULT_ENUM_BUDGET,
    };
    conjecture_sweep(&cfg).expect("sweep setup is within budget")
}

#[test]
fn criterion_1_exhaustive_theorem_check_tiny_n() {
    let start = Instant::now();
    let report = dense_sweep(vec![3, 4, 5], EnumMode::Exhaustive, false);
    assert!(
        report.failures.is_empty(),
        "criterion 1: FAIL — {} failures, first: {:?}",
        report.failures.len(),
        report.failures.first()
    );
    assert_eq!(report.successes, report.instances);
    assert!(report.instances > 0);
    println!(
        "acceptance criterion 1: PASS — {} dense instances on n in 3..=5, zero failures, {:?}",
        report.instances,
        start.elapsed()
    );
}

#[test]
fn criterion_2_oracle_agreement() {
    let start = Instant::now();
    let exhaustive = dense_sweep(vec![3, 4, 5], EnumMode::Exhaustive, true);
    assert!(
        exhaustive.failures.is_empty(),
        "criterion 2: FAIL on exhaustive tier — first: {:?}",
        exhaustive.failures.first()
    );
    assert_eq!(exhaustive.oracle_agreements, exhaustive.instances);

    let mut sampled_total = 0;
    for n in [6usize, 7, 8] {
        let report = dense_sweep(
            vec![n],
            EnumMode::Sample { count: 100_000, seed: 0xA11CE },
            true,
        );
        assert!(
            report.failures.is_empty(),
            "criterion 2: FAIL at n={n} — first: {:?}",
            report.failures.first()
        );
        assert_eq!(report.instances, 100_000);
        assert_eq!(report.oracle_agreements, 100_000);
        sampled_total += report.instances;
    }
    println!(
        "acceptance criterion 2: PASS — oracle agreed on {} exhaustive + {} sampled instances, {:?}",
        exhaustive.instances,
        sampled_total,
        start.elapsed()
    );
}

#[test]
fn criterion_3_tournament_branch() {
    let start = Instant::now();
    let cfg = SweepConfig {
        n_values: vec![6, 7],
        mode: EnumMode::Exhaustive,
        family: SweepFamily::Tournaments,
        oracle_check: false,
        oracle_cap: 10,
        budget: DEFAULT_ENUM_BUDGET,
    };
    let report = conjecture_sweep(&cfg).expect("tournament spaces fit the budget");
    assert_eq!(report.instances, (1 << 15) + (1 << 21));
    assert!(
        report.failures.is_empty(),
        "criterion 3: FAIL — first: {:?}",
        report.failures.first()
    );
    println!(
        "acceptance criterion 3: PASS — {} tournaments solved with sigma_min <= 1, {:?}",
        report.instances,
        start.elapsed()
    );
}

#[test]
fn criterion_4_extremal_family_is_tight() {
    let start = Instant::now();
    let mut cases = 0u64;
    for n in 6..=9usize {
        for d in n.div_ceil(2)..=n - 1 {
            let results: Vec<(u64, usize)> = (0..100u64)
                .into_par_iter()
                .map(|seed| {
                    let g = construction_gnd(n, d, seed).expect("valid shape");
                    let (best, witness) = best_discrepancy_exhaustive(&g, 10)
                        .expect("within cap")
                        .expect("dense extremal graphs are Hamiltonian");
                    assert!(verify_hamilton_cycle(&g, &witness, best).ok);
                    (seed, best)
                })
                .collect();
            for (seed, best) in results {
                assert_eq!(
                    best, d,
                    "criterion 4: FAIL — oracle best {best} != d {d} at n={n} seed={seed}"
                );
                cases += 1;
            }
        }
    }
    println!(
        "acceptance criterion 4: PASS — oracle best equals d on {cases} extremal instances, {:?}",
        start.elapsed()
    );
}

#[test]
fn criterion_5_merge_suite() {
    let start = Instant::now();
    let configs: Vec<u64> = {
        let mut seeds = Vec::with_capacity(10_000);
        let mut seed = 0u64;
        while seeds.len() < 10_000 {
            if random_absorb_config(seed).is_some() {
                seeds.push(seed);
            }
            seed += 1;
        }
        seeds
    };
    configs.par_iter().for_each(|&seed| {
        let (g, p, c, ell) = random_absorb_config(seed).expect("seed was pre-screened");
        let (out, trace) =
            absorb_path_traced(&g, &p, &c, ell).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let verdict = verify_hamilton_cycle(&g, &out, 0);
        assert!(verdict.ok, "criterion 5: FAIL — seed {seed}: {verdict}");
        assert!(
            verdict.stats.unwrap().sigma_min <= ell,
            "criterion 5: FAIL — seed {seed} exceeded ell {ell}"
        );
        let depth = trace
            .iter()
            .filter(|st| {
                matches!(
                    st.branch,
                    AbsorbBranch::SpliceRecurse | AbsorbBranch::SuffixRecurse
                )
            })
            .count()
            + 1;
        assert!(
            depth <= p.len(),
            "criterion 5: FAIL — seed {seed} recursion depth {depth} > |P| {}",
            p.len()
        );
    });
    println!(
        "acceptance criterion 5: PASS — 10000 merge configurations verified, {:?}",
        start.elapsed()
    );
}

fn check_path_instance(g: &OrientedGraph, label: &str) {
    let delta = g.min_degree();
    let n = g.vertex_count();
    let p = discrepancy_path(g).unwrap_or_else(|e| panic!("criterion 6: FAIL — {label}: {e}"));
    let spanning = 2 * delta >= n;
    let verdict = verify_path(g, &p, delta, spanning);
    assert!(verdict.ok, "criterion 6: FAIL — {label}: {verdict}");
}

#[test]
fn criterion_6_discrepancy_paths() {
    let start = Instant::now();
    let mut exhaustive_total = 0u64;
    for n in 3..=5usize {
        let codes: Vec<u64> = (0..3u64.pow((n * (n - 1) / 2) as u32)).collect();
        codes.par_chunks(4096).for_each(|chunk| {
            for &code in chunk {
                let g = hamdisc::instruments::oriented_graph_from_code(n, code).unwrap();
                check_path_instance(&g, &format!("ex n={n} code={code}"));
            }
        });
        exhaustive_total += codes.len() as u64;
    }

    let sampled: Vec<hamdisc::instruments::Instance> =
        enumerate_instances(6, 0, EnumMode::Sample { count: 100_000, seed: 0xBEEF }, 0)
            .unwrap()
            .collect();
    sampled.par_iter().for_each(|inst| {
        check_path_instance(&inst.graph, &inst.id.to_string());
    });

    // the disjoint-triangles shape that defeats a naive global long-path bound
    let twin =
        OrientedGraph::from_arcs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    let p = discrepancy_path(&twin).unwrap();
    let verdict = verify_path(&twin, &p, 2, false);
    assert!(verdict.ok, "criterion 6: FAIL — twin triangles: {verdict}");

    // degenerate sizes
    check_path_instance(&OrientedGraph::new(1).unwrap(), "single vertex");
    check_path_instance(&OrientedGraph::from_arcs(2, [(0, 1)]).unwrap(), "single edge");

    println!(
        "acceptance criterion 6: PASS — {} exhaustive + 100000 sampled paths verified, {:?}",
        exhaustive_total,
        start.elapsed()
    );
}

/// Peak RSS when the kernel exposes it, otherwise current RSS.
fn rss_bytes() -> Option<(&'static str, u64)> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    for (label, key) in [("peak", "VmHWM:"), ("current", "VmRSS:")] {
        if let Some(line) = status.lines().find(|l| l.starts_with(key)) {
            if let Some(kb) = line.split_whitespace().nth(1).and_then(|s| s.parse::<u64>().ok()) {
                return Some((label, kb * 1024));
            }
        }
    }
    None
}

#[test]
fn criterion_7_scale_and_probe_growth() {
    let sizes = [250usize, 500, 1000, 2000];
    let mut probes = Vec::new();
    let mut big_elapsed = None;
    let mut mem = None;
    for &n in &sizes {
        let delta = n / 2 + 1;
        let g = random_min_degree_oriented(n, delta, 20_260_809).expect("feasible target");
        let t0 = Instant::now();
        let (cert, trace) = max_discrepancy_hamilton(&g).expect("dense instance solves");
        let verdict = verify_hamilton_cycle(&g, &cert, g.min_degree());
        let elapsed = t0.elapsed();
        assert!(verdict.ok, "criterion 7: FAIL — n={n}: {verdict}");
        probes.push((n as f64, trace.arc_probes as f64));
        if n == 2000 {
            big_elapsed = Some(elapsed);
            mem = rss_bytes();
            assert!(
                elapsed.as_secs_f64() < 30.0,
                "criterion 7: FAIL — n=2000 took {elapsed:?}"
            );
        }
    }

    // least-squares slope in log-log space
    let logs: Vec<(f64, f64)> = probes.iter().map(|&(n, p)| (n.ln(), p.ln())).collect();
    let k = logs.len() as f64;
    let sx: f64 = logs.iter().map(|(x, _)| x).sum();
    let sy: f64 = logs.iter().map(|(_, y)| y).sum();
    let sxx: f64 = logs.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = logs.iter().map(|(x, y)| x * y).sum();
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    assert!(
        slope <= 3.3,
        "criterion 7: FAIL — probe growth slope {slope:.2} exceeds 3.3 (probes: {probes:?})"
    );

    let (mem_label, mem_bytes) = mem.expect("proc status exposes rss");
    assert!(
        mem_bytes < 1 << 30,
        "criterion 7: FAIL — {mem_label} RSS {} MiB exceeds 1 GiB",
        mem_bytes >> 20
    );
    println!(
        "acceptance criterion 7: PASS — n=2000 in {:?}, probe slope {:.2}, {} rss {} MiB",
        big_elapsed.unwrap(),
        slope,
        mem_label,
        mem_bytes >> 20
    );
}
