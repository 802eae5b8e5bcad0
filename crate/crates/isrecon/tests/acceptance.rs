//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use isrecon::covering::{
    exact_family, modulator_family, sampled_family_verified, verify_cover, CoverCheck, FamilyMode,
    DEFAULT_FAMILY_CAP,
};
use isrecon::fpt::{solve_opt, InvariantStats, OptOutcome, SolveOptions};
use isrecon::gadgets::{gen_tjo_gadget, gen_tso_gadget, tjo_witness, tso_witness};
use isrecon::gen::{
    random_colored_graph_with_clique, random_graph, random_graph_with_clique, random_independent_set,
    random_instance, random_separation_instance, rng_from, InstanceGenConfig,
};
use isrecon::graph::VertexSet;
use isrecon::oracle::{bfs_distance, BfsOutcome, OracleOptions};
use isrecon::separation::{solve_separation, ColoringStrategy, SepOutcome, SeparationOptions};
use isrecon::sequence::{validate_sequence, validate_sequence_bounded, Instance, LengthBound, Rule};
use isrecon::tjr::{solve_tjr, TjrOutcome};
use std::sync::OnceLock;
use std::time::Instant;

const OPT_INSTANCES: usize = 500;
const TJR_INSTANCES: usize = 500;
const COVER_GRAPHS: usize = 200;
const SEP_INSTANCES: usize = 200;
const GADGET_GRAPHS_PER_K: usize = 12;
const RANDOMIZED_NO_TRIALS: u64 = 10_000;

struct OptRuns {
    slide_mismatches: Vec<String>,
    jump_mismatches: Vec<String>,
    slide_secs: f64,
    jump_secs: f64,
    slide_inv: InvariantStats,
    jump_inv: InvariantStats,
    witnesses_validated: usize,
    witness_failures: Vec<String>,
    slide_yes: usize,
    jump_yes: usize,
}

static OPT_RUNS: OnceLock<OptRuns> = OnceLock::new();

fn opt_runs() -> &'static OptRuns {
    OPT_RUNS.get_or_init(|| {
        let cfg = InstanceGenConfig::default(); // n <= 10, degeneracy <= 3, k <= 3, ell <= 5
        let mut rng = rng_from(0xAC5E01);
        let instances: Vec<Instance> = (0..OPT_INSTANCES).map(|_| random_instance(&cfg, &mut rng)).collect();

        let mut runs = OptRuns {
            slide_mismatches: Vec::new(),
            jump_mismatches: Vec::new(),
            slide_secs: 0.0,
            jump_secs: 0.0,
            slide_inv: InvariantStats::default(),
            jump_inv: InvariantStats::default(),
            witnesses_validated: 0,
            witness_failures: Vec::new(),
            slide_yes: 0,
            jump_yes: 0,
        };
        for rule in [Rule::Slide, Rule::Jump] {
            let start = Instant::now();
            for (i, inst) in instances.iter().enumerate() {
                let fam = exact_family(&inst.graph, inst.k, DEFAULT_FAMILY_CAP).expect("family");
                let report = solve_opt(inst, &fam, rule, &SolveOptions::default()).expect("solve");
                let opts = OracleOptions { max_depth: Some(inst.ell), ..Default::default() };
                let oracle_yes = matches!(
                    bfs_distance(inst, rule, &opts).expect("oracle").outcome,
                    BfsOutcome::Reached { .. }
                );
                let (mismatches, inv) = match rule {
                    Rule::Slide => (&mut runs.slide_mismatches, &mut runs.slide_inv),
                    Rule::Jump => (&mut runs.jump_mismatches, &mut runs.jump_inv),
                };
                inv.merge(&report.stats.invariants);
                match report.outcome {
                    OptOutcome::Yes(seq) => {
                        match rule {
                            Rule::Slide => runs.slide_yes += 1,
                            Rule::Jump => runs.jump_yes += 1,
                        }
                        if !oracle_yes {
                            mismatches.push(format!("instance {i}: solver yes, oracle no ({rule})"));
                        }
                        match validate_sequence(inst, &seq, rule) {
                            Ok(()) => runs.witnesses_validated += 1,
                            Err(v) => runs.witness_failures.push(format!("instance {i} ({rule}): {v}")),
                        }
                    }
                    OptOutcome::No => {
                        if oracle_yes {
                            mismatches.push(format!("instance {i}: solver no, oracle yes ({rule})"));
                        }
                    }
                    OptOutcome::BudgetExceeded => {
                        mismatches.push(format!("instance {i}: budget exceeded ({rule})"));
                    }
                }
            }
            let secs = start.elapsed().as_secs_f64();
            match rule {
                Rule::Slide => runs.slide_secs = secs,
                Rule::Jump => runs.jump_secs = secs,
            }
        }
        runs
    })
}

#[test]
fn criterion_01_oracle_agreement_tso() {
    let runs = opt_runs();
    assert!(
        runs.slide_mismatches.is_empty(),
        "criterion 1 FAIL: {} disagreements, first: {}",
        runs.slide_mismatches.len(),
        runs.slide_mismatches[0]
    );
    assert!(
        runs.slide_secs < 300.0,
        "criterion 1 FAIL: slide pass took {:.1}s (budget 300s)",
        runs.slide_secs
    );
    println!(
        "criterion 1 (oracle agreement, TSO): PASS: {OPT_INSTANCES}/{OPT_INSTANCES} agree ({} yes, {} no) in {:.2}s",
        runs.slide_yes,
        OPT_INSTANCES - runs.slide_yes,
        runs.slide_secs
    );
}

#[test]
fn criterion_02_oracle_agreement_tjo() {
    let runs = opt_runs();
    assert!(
        runs.jump_mismatches.is_empty(),
        "criterion 2 FAIL: {} disagreements, first: {}",
        runs.jump_mismatches.len(),
        runs.jump_mismatches[0]
    );
    assert!(
        runs.jump_secs < 300.0,
        "criterion 2 FAIL: jump pass took {:.1}s (budget 300s)",
        runs.jump_secs
    );
    println!(
        "criterion 2 (oracle agreement, TJO): PASS: {OPT_INSTANCES}/{OPT_INSTANCES} agree ({} yes, {} no) in {:.2}s",
        runs.jump_yes,
        OPT_INSTANCES - runs.jump_yes,
        runs.jump_secs
    );
}

struct TjrRuns {
    mismatches: Vec<String>,
    bound_violations: Vec<String>,
    witness_failures: Vec<String>,
    yes_count: usize,
}

static TJR_RUNS: OnceLock<TjrRuns> = OnceLock::new();

fn tjr_runs() -> &'static TjrRuns {
    TJR_RUNS.get_or_init(|| {
        let mut rng = rng_from(0x717A);
        let mut runs = TjrRuns {
            mismatches: Vec::new(),
            bound_violations: Vec::new(),
            witness_failures: Vec::new(),
            yes_count: 0,
        };
        let mut made = 0;
        while made < TJR_INSTANCES {
            let n = 4 + (made % 7); // sizes 4..=10
            // denser draws produce frozen no-instances as well
            let p = [0.25, 0.45, 0.65][made % 3];
            let g = random_graph(n, p, &mut rng);
            let k = 1 + made % 3;
            let (s, t) = match (
                random_independent_set(&g, k, &mut rng),
                random_independent_set(&g, k, &mut rng),
            ) {
                (Some(s), Some(t)) => (s, t),
                _ => continue,
            };
            let inst = match Instance::new(g, s, t, k, 0, None) {
                Ok(i) => i,
                Err(_) => continue,
            };
            made += 1;
            let fam = exact_family(&inst.graph, inst.k, DEFAULT_FAMILY_CAP).expect("family");
            let report = solve_tjr(&inst, &fam).expect("tjr solve");
            let oracle_reaches = matches!(
                bfs_distance(&inst, Rule::Jump, &OracleOptions::default())
                    .expect("oracle")
                    .outcome,
                BfsOutcome::Reached { .. }
            );
            match report.outcome {
                TjrOutcome::Yes(seq) => {
                    runs.yes_count += 1;
                    if !oracle_reaches {
                        runs.mismatches.push(format!("instance {made}: tjr yes, oracle unreachable"));
                    }
                    if let Err(v) =
                        validate_sequence_bounded(&inst, &seq, Rule::Jump, LengthBound::Unbounded)
                    {
                        runs.witness_failures.push(format!("instance {made}: {v}"));
                    }
                    let path_len = report.meta_path_len.expect("yes has a path");
                    if seq.move_count() > path_len * inst.k {
                        runs.bound_violations.push(format!(
                            "instance {made}: witness {} > {} * {}",
                            seq.move_count(),
                            path_len,
                            inst.k
                        ));
                    }
                }
                TjrOutcome::No => {
                    if oracle_reaches {
                        runs.mismatches.push(format!("instance {made}: tjr no, oracle reaches"));
                    }
                }
            }
        }
        runs
    })
}

#[test]
fn criterion_03_oracle_agreement_tjr() {
    let runs = tjr_runs();
    assert!(
        runs.mismatches.is_empty(),
        "criterion 3 FAIL: {} disagreements, first: {}",
        runs.mismatches.len(),
        runs.mismatches[0]
    );
    let no_count = TJR_INSTANCES - runs.yes_count;
    assert!(no_count >= 5, "criterion 3: corpus exercises the no-direction ({no_count} nos)");
    println!(
        "criterion 3 (oracle agreement, TJR): PASS: {TJR_INSTANCES}/{TJR_INSTANCES} agree ({} yes, {no_count} no)",
        runs.yes_count
    );
}

#[test]
fn criterion_04_frontier_invariants() {
    let runs = opt_runs();
    for (rule, inv) in [("slide", &runs.slide_inv), ("jump", &runs.jump_inv)] {
        assert!(inv.set_checks > 0, "criterion 4 FAIL: no {rule} constraint sets checked");
        assert!(inv.growth_checks > 0, "criterion 4 FAIL: no {rule} growth checks ran");
        assert_eq!(
            inv.set_violations, 0,
            "criterion 4 FAIL: {rule} constraint-set invariant violations"
        );
        assert_eq!(
            inv.growth_violations, 0,
            "criterion 4 FAIL: {rule} pre-pruning growth violations"
        );
    }
    println!(
        "criterion 4 (frontier invariants): PASS: {} slide + {} jump set checks, {} + {} growth checks, zero violations",
        runs.slide_inv.set_checks, runs.jump_inv.set_checks,
        runs.slide_inv.growth_checks, runs.jump_inv.growth_checks
    );
}

#[test]
fn criterion_05_witness_soundness() {
    let opt = opt_runs();
    let tjr = tjr_runs();
    let sep = sep_runs();
    assert!(
        opt.witness_failures.is_empty(),
        "criterion 5 FAIL: {}",
        opt.witness_failures[0]
    );
    assert!(
        tjr.witness_failures.is_empty(),
        "criterion 5 FAIL: {}",
        tjr.witness_failures[0]
    );
    assert!(
        sep.witness_failures.is_empty(),
        "criterion 5 FAIL: {}",
        sep.witness_failures[0]
    );
    let total = opt.witnesses_validated + tjr.yes_count + sep.witnesses_validated;
    assert!(total > 0, "criterion 5 FAIL: no witnesses produced");
    println!("criterion 5 (witness soundness): PASS: {total} yes answers revalidated");
}

#[test]
fn criterion_06_gadget_fidelity() {
    let mut rng = rng_from(0x6AD6E7);
    let mut checked = 0;
    for k in [2usize, 3] {
        let c2 = k * (k - 1) / 2;
        for rep in 0..GADGET_GRAPHS_PER_K {
            let n = 5 + rep % 4;
            let (mc, clique) =
                random_colored_graph_with_clique(k, n, 0.3, &mut rng).expect("colored graph");
            let (inst, layout) = gen_tso_gadget(&mc, k).expect("tso gadget");
            assert_eq!(
                inst.graph.degeneracy(),
                2,
                "criterion 6 FAIL: tso gadget degeneracy (k={k}, rep={rep})"
            );
            let witness = tso_witness(&inst, &layout, &clique).expect("tso witness");
            assert_eq!(
                witness.move_count(),
                8 * c2 + 2 * k,
                "criterion 6 FAIL: tso witness length (k={k}, rep={rep})"
            );
            assert_eq!(validate_sequence(&inst, &witness, Rule::Slide), Ok(()));

            let (g, clique) = random_graph_with_clique(k, n, 0.3, &mut rng).expect("graph");
            let (inst, layout) = gen_tjo_gadget(&g, k).expect("tjo gadget");
            assert_eq!(
                inst.graph.degeneracy(),
                2,
                "criterion 6 FAIL: tjo gadget degeneracy (k={k}, rep={rep})"
            );
            let witness = tjo_witness(&inst, &layout, &clique).expect("tjo witness");
            assert_eq!(
                witness.move_count(),
                2 * c2 + c2 * c2 + 2 * k,
                "criterion 6 FAIL: tjo witness length (k={k}, rep={rep})"
            );
            assert_eq!(validate_sequence(&inst, &witness, Rule::Jump), Ok(()));
            checked += 2;
        }
    }
    println!("criterion 6 (gadget fidelity): PASS: {checked} gadgets at degeneracy 2 with exact-length witnesses");
}

#[test]
fn criterion_07_covering_correctness() {
    let mut rng = rng_from(0xC0FE);
    let mut verified = 0;
    for i in 0..COVER_GRAPHS {
        let n = 4 + i % 7; // 4..=10
        let g = random_graph(n, 0.3, &mut rng);
        let k = 1 + i % 3;

        let exact = exact_family(&g, k, DEFAULT_FAMILY_CAP).expect("exact family");
        assert_eq!(
            verify_cover(&g, k, &exact, 1_000_000).expect("verify"),
            CoverCheck::Ok,
            "criterion 7 FAIL: exact family uncovered on graph {i}"
        );

        let msize = i % 5; // 0..=4
        let modulator: VertexSet = (0..msize.min(n)).map(|j| (j * 2 + i) % n).collect();
        let rest: VertexSet = (0..n).filter(|v| !modulator.contains(*v)).collect();
        let (gh, _) = g.induced_subgraph(&rest).expect("subgraph");
        let d = gh.degeneracy();
        let fam = modulator_family(&g, &modulator, k, d, FamilyMode::Exact).expect("modulator family");
        assert_eq!(
            verify_cover(&g, k, &fam, 1_000_000).expect("verify"),
            CoverCheck::Ok,
            "criterion 7 FAIL: modulator family uncovered on graph {i}"
        );

        let sampled = sampled_family_verified(&g, k, g.degeneracy(), i as u64, 1 << 22, 1_000_000)
            .expect("sampled family should reach a cover");
        assert!(sampled.verified);
        verified += 3;
    }
    println!("criterion 7 (covering correctness): PASS: {verified} families verified on {COVER_GRAPHS} graphs");
}

struct SepRuns {
    mismatches: Vec<String>,
    witness_failures: Vec<String>,
    witnesses_validated: usize,
    no_instances: usize,
    randomized_trials: u64,
    randomized_false_yes: usize,
}

static SEP_RUNS: OnceLock<SepRuns> = OnceLock::new();

fn sep_runs() -> &'static SepRuns {
    SEP_RUNS.get_or_init(|| {
        let mut rng = rng_from(0x5E9A);
        let mut runs = SepRuns {
            mismatches: Vec::new(),
            witness_failures: Vec::new(),
            witnesses_validated: 0,
            no_instances: 0,
            randomized_trials: 0,
            randomized_false_yes: 0,
        };
        let mut no_instances: Vec<(Instance, Rule)> = Vec::new();
        for i in 0..SEP_INSTANCES {
            // |H| <= 10, |M| <= 3, max degree of G[H] <= 3, ell <= 4
            let inst = random_separation_instance(10, 3, 3, 3, 4, &mut rng);
            let m = inst.modulator.clone().expect("modulator present");
            for rule in [Rule::Slide, Rule::Jump] {
                let opts = SeparationOptions {
                    strategy: ColoringStrategy::Exhaustive,
                    ..Default::default()
                };
                let report = solve_separation(&inst, &m, rule, &opts).expect("separation");
                let oracle_opts = OracleOptions { max_depth: Some(inst.ell), ..Default::default() };
                let oracle_yes = matches!(
                    bfs_distance(&inst, rule, &oracle_opts).expect("oracle").outcome,
                    BfsOutcome::Reached { .. }
                );
                match report.outcome {
                    SepOutcome::Yes(seq) => {
                        if !oracle_yes {
                            runs.mismatches.push(format!("instance {i}: separation yes, oracle no ({rule})"));
                        }
                        match validate_sequence(&inst, &seq, rule) {
                            Ok(()) => runs.witnesses_validated += 1,
                            Err(v) => runs.witness_failures.push(format!("instance {i} ({rule}): {v}")),
                        }
                    }
                    SepOutcome::ProbablyNo => {
                        if oracle_yes {
                            runs.mismatches.push(format!(
                                "instance {i}: exhaustive separation missed a yes ({rule})"
                            ));
                        } else {
                            runs.no_instances += 1;
                            no_instances.push((inst.clone(), rule));
                        }
                    }
                }
            }
        }
        // randomized mode must stay silent on no-instances
        if !no_instances.is_empty() {
            let per_instance = (RANDOMIZED_NO_TRIALS / no_instances.len() as u64).max(1);
            for (i, (inst, rule)) in no_instances.iter().enumerate() {
                if runs.randomized_trials >= RANDOMIZED_NO_TRIALS {
                    break;
                }
                let trials = per_instance.min(RANDOMIZED_NO_TRIALS - runs.randomized_trials);
                let m = inst.modulator.clone().expect("modulator present");
                let opts = SeparationOptions {
                    strategy: ColoringStrategy::Randomized { trials, seed: i as u64 },
                    ..Default::default()
                };
                let report = solve_separation(inst, &m, *rule, &opts).expect("separation");
                runs.randomized_trials += trials;
                if matches!(report.outcome, SepOutcome::Yes(_)) {
                    runs.randomized_false_yes += 1;
                }
            }
        }
        runs
    })
}

#[test]
fn criterion_08_random_separation() {
    let runs = sep_runs();
    assert!(
        runs.mismatches.is_empty(),
        "criterion 8 FAIL: {} disagreements, first: {}",
        runs.mismatches.len(),
        runs.mismatches[0]
    );
    assert_eq!(
        runs.randomized_false_yes, 0,
        "criterion 8 FAIL: randomized mode answered yes on a no-instance"
    );
    assert!(runs.randomized_trials >= RANDOMIZED_NO_TRIALS.min(1), "no randomized trials ran");
    println!(
        "criterion 8 (random separation): PASS: {SEP_INSTANCES} instances × 2 rules agree; {} randomized trials on no-instances, zero false yes",
        runs.randomized_trials
    );
}

#[test]
fn criterion_09_meta_path_witness_bound() {
    let runs = tjr_runs();
    assert!(
        runs.bound_violations.is_empty(),
        "criterion 9 FAIL: {}",
        runs.bound_violations[0]
    );
    println!(
        "criterion 9 (meta-path witness bound): PASS: {} witnesses within path-length × k",
        runs.yes_count
    );
}

#[test]
fn criterion_10_determinism() {
    use std::fs;
    use std::process::Command;

    let bin = env!("CARGO_BIN_EXE_isrecon");
    let dir = std::env::temp_dir().join(format!("isrecon-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("temp dir");

    let p3 = dir.join("p3.json");
    fs::write(&p3, r#"{"n":3,"edges":[[0,1],[1,2]],"s":[0],"t":[2],"k":1,"ell":2,"modulator":[1]}"#)
        .expect("write instance");

    let run = |args: &[&str]| -> (Vec<u8>, i32) {
        let out = Command::new(bin).args(args).output().expect("spawn isrecon");
        (out.stdout, out.status.code().unwrap_or(-1))
    };

    for args in [
        vec!["solve", "--variant", "tso", "--algo", "fpt", "--seed", "9", p3.to_str().unwrap()],
        vec!["solve", "--variant", "tjr", "--algo", "fpt", "--seed", "9", p3.to_str().unwrap()],
        vec![
            "solve", "--variant", "tjo", "--algo", "separation", "--trials", "16", "--seed", "5",
            p3.to_str().unwrap(),
        ],
    ] {
        let (a, code_a) = run(&args);
        let (b, code_b) = run(&args);
        assert_eq!(code_a, code_b, "exit codes diverged for {args:?}");
        assert_eq!(a, b, "criterion 10 FAIL: result bytes diverged for {args:?}");
        assert!(!a.is_empty(), "no output for {args:?}");
    }

    let csv_a = dir.join("bench_a.csv");
    let csv_b = dir.join("bench_b.csv");
    for (path, _) in [(&csv_a, 0), (&csv_b, 1)] {
        let (_, code) = run(&[
            "bench",
            "--suite",
            "random-degenerate",
            "--sizes",
            "6",
            "--reps",
            "1",
            "--seed",
            "7",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "bench failed");
    }
    let a = fs::read(&csv_a).expect("csv a");
    let b = fs::read(&csv_b).expect("csv b");
    assert_eq!(a, b, "criterion 10 FAIL: bench CSVs diverged");
    assert!(!a.is_empty());

    fs::remove_dir_all(&dir).ok();
    println!("criterion 10 (determinism): PASS: result files and bench CSVs byte-identical across reruns");
}
