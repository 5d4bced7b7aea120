//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use wed_core::generate::{gen_instance, GenKind, GenParams};
use wed_core::graph::connected_components;
use wed_core::oracle::brute_force_wed;
use wed_core::recognition::{find_induced_p6, is_p6_free};
use wed_core::unipolar::{
    solve_unipolar_traced, AnchorOutcome, UnipolarInstance, MAX_DISTINGUISHED,
};
use wed_core::{solve_wed, verify_ed, Graph, Instance, SolveError, Weight, WeightMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: usize, detail: String) -> Outcome {
    Outcome {
        pass: failures == 0,
        detail,
    }
}

/// Returns a description of any disagreement between solver and oracle.
fn compare(inst: &Instance) -> Option<String> {
    let oracle = brute_force_wed(inst).map(|s| s.total_weight);
    match solve_wed(inst) {
        Ok(r) => {
            if let Some(s) = &r.solution {
                if !verify_ed(inst, &s.members).is_valid() {
                    return Some(format!("unverified solution {:?}", s.members));
                }
            }
            let got = r.solution.map(|s| s.total_weight);
            (got != oracle).then(|| format!("solver {got:?}, oracle {oracle:?}"))
        }
        Err(e) => Some(format!("error {e}, oracle {oracle:?}")),
    }
}

fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightMap {
    WeightMap::from_vec(
        (0..n)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    Weight::Infinite
                } else {
                    Weight::Finite(rng.gen_range(1..=100))
                }
            })
            .collect(),
    )
}

fn exhaustive_small() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut graphs, mut failures, mut first) = (0usize, 0usize, None);
    for n in 1..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if connected_components(&g, &g.vertices()).len() != 1 || !is_p6_free(&g) {
                continue;
            }
            graphs += 1;
            let weighted = Instance::new(g.clone(), random_weights(&mut rng, n)).unwrap();
            for inst in [Instance::unit(g), weighted] {
                if let Some(why) = compare(&inst) {
                    failures += 1;
                    first.get_or_insert(format!("n={n} mask={mask}: {why}"));
                }
            }
        }
    }
    outcome(
        failures,
        format!(
            "{graphs} connected P6-free graphs x 2 weightings, {failures} mismatches {}",
            first.unwrap_or_default()
        ),
    )
}

fn randomized_corpus() -> Outcome {
    let kinds: [(GenKind, f64); 5] = [
        (GenKind::GnpFiltered, 0.2),
        (GenKind::GnpFiltered, 0.4),
        (GenKind::GnpFiltered, 0.6),
        (GenKind::Unipolar, 0.3),
        (GenKind::Cograph, 0.5),
    ];
    let (mut total, mut gave_up, mut failures, mut first) = (0usize, 0usize, 0usize, None);
    let mut seed = 0u64;
    while total < 10_000 {
        let (kind, p) = kinds[(seed % 5) as usize];
        let n = 7 + (seed / 5 % 8) as usize;
        let mut params = GenParams::new(kind, n, p, seed).weights(1, 100, 0.1);
        params.p6_free = true;
        seed += 1;
        let Ok(gen) = gen_instance(&params) else {
            gave_up += 1;
            continue;
        };
        let inst = gen.instance;
        total += 1;
        if let Some(why) = compare(&inst) {
            failures += 1;
            first.get_or_insert(format!("{kind} n={n} seed={seed}: {why}"));
        }
    }
    outcome(
        failures,
        format!(
            "{total} instances ({gave_up} draws hit the resample cap), {failures} mismatches {}",
            first.unwrap_or_default()
        ),
    )
}

struct UnipolarTally {
    instances: usize,
    mismatches: usize,
    first_mismatch: Option<String>,
    h_built: usize,
    h_cyclic: usize,
    no_good_vertex: usize,
    accepted_over_limit: usize,
    rejected_branches: usize,
}

fn unipolar_corpus() -> UnipolarTally {
    let mut t = UnipolarTally {
        instances: 0,
        mismatches: 0,
        first_mismatch: None,
        h_built: 0,
        h_cyclic: 0,
        no_good_vertex: 0,
        accepted_over_limit: 0,
        rejected_branches: 0,
    };
    for seed in 0..2_000u64 {
        let n = 6 + (seed % 9) as usize;
        let p = [0.15, 0.3, 0.5][(seed / 9 % 3) as usize];
        let mut params = GenParams::new(GenKind::Unipolar, n, p, seed).weights(1, 100, 0.1);
        params.p6_free = true;
        params.b_size = Some(2 + (seed % 4) as usize).filter(|&b| b < n);
        let gen = gen_instance(&params).expect("generator");
        let part = gen.partition.expect("unipolar partition");
        let uni = UnipolarInstance::from_partition(&gen.instance, &part).expect("valid partition");
        let constrained = Instance::new(gen.instance.graph().clone(), uni.weights.clone()).unwrap();
        let oracle = brute_force_wed(&constrained).map(|s| s.total_weight);
        t.instances += 1;
        match solve_unipolar_traced(&uni) {
            Ok(report) => {
                let got = report.solution.as_ref().map(|s| s.total_weight);
                let verified = report
                    .solution
                    .as_ref()
                    .is_none_or(|s| verify_ed(&constrained, &s.members).is_valid());
                if got != oracle || !verified {
                    t.mismatches += 1;
                    t.first_mismatch
                        .get_or_insert(format!("seed={seed}: solver {got:?}, oracle {oracle:?}"));
                }
                if let Some(h) = &report.overtake {
                    t.h_built += 1;
                    t.h_cyclic += usize::from(!h.is_acyclic());
                    if report.good_vertex.is_none_or(|b| h.out_degree(b) != 0) {
                        t.no_good_vertex += 1;
                    }
                }
                for a in &report.anchors {
                    match a.outcome {
                        AnchorOutcome::Accepted { .. } if a.c2.len() > MAX_DISTINGUISHED => {
                            t.accepted_over_limit += 1
                        }
                        AnchorOutcome::TooManyDistinguished => t.rejected_branches += 1,
                        _ => {}
                    }
                }
            }
            Err(e) => {
                t.mismatches += 1;
                if matches!(e, SolveError::ClassViolation(_)) {
                    t.h_cyclic += 1;
                    t.no_good_vertex += 1;
                }
                t.first_mismatch
                    .get_or_insert(format!("seed={seed}: error {e}"));
            }
        }
    }
    t
}

fn named_fixtures() -> Outcome {
    let path =
        |n: usize| Graph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap();
    let cycle = |n: usize| {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    };
    let solved = |inst: &Instance| {
        solve_wed(inst)
            .ok()
            .and_then(|r| r.solution)
            .map(|s| (s.members.to_vec(), s.total_weight))
    };
    let mut checks: Vec<(&str, bool)> = vec![
        (
            "C4 no_ed",
            solved(&Instance::unit(cycle(4))).is_none()
                && solve_wed(&Instance::unit(cycle(4))).is_ok(),
        ),
        (
            "P4 weight 2",
            solved(&Instance::unit(path(4))).map(|s| s.1) == Some(2),
        ),
        (
            "C6 weights 1..6",
            solved(&Instance::new(cycle(6), WeightMap::from_finite(&[1, 2, 3, 4, 5, 6])).unwrap())
                == Some((vec![0, 3], 5)),
        ),
        (
            "K2 {3,9}",
            solved(&Instance::new(path(2), WeightMap::from_finite(&[3, 9])).unwrap()).map(|s| s.1)
                == Some(3),
        ),
    ];
    for k in 1..=8usize {
        let star = Graph::from_edges(k + 1, &(1..=k).map(|i| (0, i)).collect::<Vec<_>>()).unwrap();
        let ok = solved(&Instance::unit(star)) == Some((vec![0], 1));
        checks.push((
            if ok {
                "K1,k center"
            } else {
                "K1,k center (failed)"
            },
            ok,
        ));
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(
        failed.len(),
        format!("{} checks, failed: {:?}", checks.len(), failed),
    )
}

fn soundness_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut solved, mut no_ed, mut violations, mut failures, mut first) = (0, 0, 0, 0usize, None);
    for seed in 0..10_000u64 {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.05..0.8);
        let inst = gen_instance(&GenParams::new(GenKind::Gnp, n, p, seed).weights(1, 100, 0.1))
            .expect("generator")
            .instance;
        match catch_unwind(AssertUnwindSafe(|| solve_wed(&inst))) {
            Ok(Ok(r)) => match r.solution {
                Some(s) if verify_ed(&inst, &s.members).is_valid() => solved += 1,
                Some(_) => {
                    failures += 1;
                    first.get_or_insert(format!("seed={seed}: unverified solution"));
                }
                None => no_ed += 1,
            },
            Ok(Err(SolveError::ClassViolation(_))) => violations += 1,
            Ok(Err(e)) => {
                failures += 1;
                first.get_or_insert(format!("seed={seed}: {e}"));
            }
            Err(_) => {
                failures += 1;
                first.get_or_insert(format!("seed={seed}: panic"));
            }
        }
    }
    outcome(
        failures,
        format!(
            "solved {solved}, no_ed {no_ed}, class violations {violations}, failures {failures} {}",
            first.unwrap_or_default()
        ),
    )
}

fn timed(inst: &Instance, limit: Duration) -> (bool, String) {
    let start = Instant::now();
    let r = solve_wed(inst);
    let took = start.elapsed();
    let status = match &r {
        Ok(rep) => match &rep.solution {
            Some(s) => format!("solved weight {}", s.total_weight),
            None => "no_ed".to_string(),
        },
        Err(e) => format!("error: {e}"),
    };
    (
        r.is_ok() && took < limit,
        format!("{status} in {:.2}s", took.as_secs_f64()),
    )
}

fn performance() -> Outcome {
    let mut uni = GenParams::new(GenKind::Unipolar, 200, 0.1, 7).weights(1, 100, 0.0);
    uni.b_size = Some(40);
    uni.clique_size = Some(4);
    let uni = gen_instance(&uni).expect("generator").instance;
    let (ok1, mut d1) = timed(&uni, Duration::from_secs(10));
    if let Some(p) = find_induced_p6(uni.graph()) {
        d1 += &format!(" (input contains induced P6 {p:?})");
    }

    let mut co = GenParams::new(GenKind::Cograph, 500, 0.5, 7).weights(1, 100, 0.0);
    co.connected = true;
    let co = gen_instance(&co).expect("generator").instance;
    let (ok2, d2) = timed(&co, Duration::from_secs(60));
    outcome(
        usize::from(!ok1) + usize::from(!ok2),
        format!("unipolar n=200: {d1}; cograph n=500: {d2}"),
    )
}

fn main() -> ExitCode {
    let mut all_pass = true;
    let mut report = |name: &str, o: Outcome| {
        all_pass &= o.pass;
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    report("1 exhaustive n<=6 equivalence", exhaustive_small());
    report("2 randomized equivalence", randomized_corpus());
    let t = unipolar_corpus();
    report(
        "3 unipolar solver equivalence",
        outcome(
            t.mismatches,
            format!(
                "{} instances, {} mismatches {}",
                t.instances,
                t.mismatches,
                t.first_mismatch.clone().unwrap_or_default()
            ),
        ),
    );
    report(
        "4 overtake dag and distinguished cliques",
        outcome(
            t.h_cyclic + t.no_good_vertex + t.accepted_over_limit,
            format!(
                "H built {} times, cyclic {}, without good vertex {}, accepted branches with |C2|>3: {}, rejected branches {}",
                t.h_built, t.h_cyclic, t.no_good_vertex, t.accepted_over_limit, t.rejected_branches
            ),
        ),
    );
    report("5 named fixtures", named_fixtures());
    report("6 soundness fuzz", soundness_fuzz());
    report("7 desk-scale performance", performance());
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
