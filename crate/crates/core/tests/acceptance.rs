//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use avsoc_core::emotion::fear_intensity;
use avsoc_core::experiments::io::write_raw;
use avsoc_core::experiments::{
    builtin_spec, builtin_specs, compare_modes, run_simulation, run_sweep, run_sweep_with_threads, sonar_safety_matrix,
    ConfigSeries, SweepSummary, MATRIX_SOURCES,
};
use avsoc_core::fuzzy::table_io::rules_to_text;
use avsoc_core::fuzzy::validation::{evaluate_all, UNDESIRABILITY_ROWS, VALUE_TOLERANCE};
use avsoc_core::fuzzy::{build_ig_fis, build_likelihood_fis, build_undesirability_fis};
use avsoc_core::society::{ActorKind, Belief, LambdaTable, Personality, VehicleAgent, World, WorldConfig};
use proptest::test_runner::{Config, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FUZZY_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(600);
const SINGLE_RUN_BUDGET: Duration = Duration::from_secs(30);
const GATING_CASES: u32 = 10_000;
/// Disjoint seed ranges: each sweep uses at most 5 rows of 1000 seeds.
const DENSITY_BASE_SEEDS: [u64; 3] = [1, 1_000_001, 2_000_001];
const AV_COUNT: usize = 10;
const ORACLE_WORLDS: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let fis = build_undesirability_fis::<f64>();
    let outcomes = evaluate_all(&fis, &UNDESIRABILITY_ROWS).expect("rows are in range");
    let elapsed = start.elapsed();
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !(o.level_ok() && o.residual().abs() <= VALUE_TOLERANCE))
        .map(|o| {
            format!(
                "row {}: {:.3} {} (want {} {})",
                o.row.test_no,
                o.actual,
                fis.output().token(o.actual_level),
                o.row.undesirability.0,
                fis.output().token(o.row.undesirability.1)
            )
        })
        .collect();
    let pass = failed.is_empty() && elapsed < FUZZY_BUDGET;
    outcome(
        pass,
        format!(
            "fuzzy validation {}/14 rows within label and +/-{VALUE_TOLERANCE} in {elapsed:.2?}{}",
            14 - failed.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!("; failing: {}", failed.join(", "))
            }
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/rules");
    let systems = [
        ("likelihood", build_likelihood_fis::<f64>()),
        ("undesirability", build_undesirability_fis()),
        ("ig", build_ig_fis()),
    ];
    let mut rules = 0;
    let mut diffs = Vec::new();
    for (name, fis) in &systems {
        let golden = std::fs::read_to_string(format!("{dir}/{name}.csv")).expect("golden rule file");
        let text = rules_to_text(fis);
        rules += text.lines().count();
        if text != golden {
            diffs.push(*name);
        }
    }
    let elapsed = start.elapsed();
    outcome(
        diffs.is_empty() && rules == 75 && elapsed < FUZZY_BUDGET,
        format!("rule bases: {rules} rules, differing tables {diffs:?}, {elapsed:.2?}"),
    )
}

fn criterion_3() -> Outcome {
    let config = Config {
        cases: GATING_CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let result = runner.run(&(0.0..=1.0f64, 0.0..=1.0f64), |(potential, threshold)| {
        let i = fear_intensity(potential, threshold);
        if potential <= threshold {
            proptest::prop_assert_eq!(i, 0.0);
        } else {
            proptest::prop_assert!(i > 0.0);
            proptest::prop_assert_eq!(i + threshold, potential);
        }
        Ok(())
    });
    match result {
        Ok(()) => outcome(
            true,
            format!("gating held on {GATING_CASES} random (potential, threshold) pairs"),
        ),
        Err(e) => outcome(
            false,
            format!(
                "gating violated: {}",
                e.to_string().split_whitespace().collect::<Vec<_>>().join(" ")
            ),
        ),
    }
}

struct SweepResults {
    by_set: HashMap<String, SweepSummary>,
    elapsed: Duration,
}

fn full_sweep() -> SweepResults {
    let start = Instant::now();
    let by_set = builtin_specs()
        .into_iter()
        .map(|spec| (spec.set.clone(), run_sweep(&spec).expect("built-in specs are valid")))
        .collect();
    SweepResults {
        by_set,
        elapsed: start.elapsed(),
    }
}

fn criterion_4(s: &SweepResults) -> Outcome {
    let mut cells = 0;
    let mut failing = Vec::new();
    let mut labels: Vec<&String> = s.by_set.keys().filter(|k| k.starts_with('A')).collect();
    labels.sort();
    for a_label in labels {
        let b_label = format!("B{}", &a_label[1..]);
        let report = compare_modes(&s.by_set[a_label], &s.by_set[&b_label]).expect("same AV counts");
        for r in &report.rows {
            cells += 1;
            if !r.pass {
                failing.push(format!("{b_label}@{} ({:.1} vs {:.1})", r.num_avs, r.mean_b, r.mean_a));
            }
        }
    }
    let pass = failing.is_empty() && s.elapsed < SWEEP_BUDGET;
    let shown: Vec<&String> = failing.iter().take(8).collect();
    outcome(
        pass,
        format!(
            "norms mean < random-walk mean in {}/{cells} cells; full sweep {:.1?}{}",
            cells - failing.len(),
            s.elapsed,
            if failing.is_empty() {
                String::new()
            } else {
                format!(
                    "; failing (B vs A) {shown:?}{}",
                    if failing.len() > 8 { " ..." } else { "" }
                )
            }
        ),
    )
}

fn strictly_increasing(s: &SweepSummary) -> bool {
    s.rows.windows(2).all(|w| w[1].mean > w[0].mean)
}

fn criterion_5(s: &SweepResults) -> Outcome {
    let mut failing = Vec::new();
    let specs: Vec<_> = builtin_specs().into_iter().filter(|s| s.set.starts_with('A')).collect();
    for spec in &specs {
        let votes = DENSITY_BASE_SEEDS
            .iter()
            .filter(|&&base| {
                if base == spec.base_seed {
                    strictly_increasing(&s.by_set[&spec.set])
                } else {
                    strictly_increasing(&run_sweep(&spec.clone().with_base_seed(base)).expect("valid"))
                }
            })
            .count();
        if votes * 2 <= DENSITY_BASE_SEEDS.len() {
            failing.push(format!("{} ({votes}/3)", spec.set));
        }
    }
    outcome(
        failing.is_empty(),
        format!(
            "random-walk means strictly increase with AV count in {}/{} sets (majority of 3 base seeds){}",
            specs.len() - failing.len(),
            specs.len(),
            if failing.is_empty() {
                String::new()
            } else {
                format!("; failing {failing:?}")
            }
        ),
    )
}

fn criterion_6(s: &SweepResults) -> Outcome {
    let b3 = &s.by_set["B3"];
    let mut failing = Vec::new();
    for b1_label in ["B1-s2", "B1-s5"] {
        let b1 = &s.by_set[b1_label];
        for (r3, r1) in b3.rows.iter().zip(&b1.rows) {
            if r3.mean >= r1.mean {
                failing.push(format!(
                    "{}@{} ({:.1} vs {:.1})",
                    b1_label, r3.num_avs, r3.mean, r1.mean
                ));
            }
        }
    }
    outcome(
        failing.is_empty(),
        format!(
            "B3 (max velocity 0.3) below both B1 sub-sweeps at every AV count{}",
            if failing.is_empty() {
                String::new()
            } else {
                format!("; failing (B3 vs B1) {failing:?}")
            }
        ),
    )
}

fn criterion_7(s: &SweepResults) -> Outcome {
    let series: Vec<ConfigSeries> = MATRIX_SOURCES
        .iter()
        .map(|&((safety, sonar), label)| ConfigSeries::from_summary(safety, sonar, &s.by_set[label]))
        .collect();
    let m = sonar_safety_matrix(&series).expect("all six cells present");
    let flags = m.short_sonar_flags();
    let detail: Vec<String> = m
        .av_counts
        .iter()
        .enumerate()
        .map(|(i, n)| {
            format!(
                "{n}: {:.1}/{:.1}/{:.1}",
                m.cell(3, 2).unwrap().means[i].1,
                m.cell(3, 3).unwrap().means[i].1,
                m.cell(2, 2).unwrap().means[i].1
            )
        })
        .collect();
    outcome(
        m.short_sonar_worse(),
        format!(
            "(3,2) above (3,3) and (2,2) at {}/{} AV counts [(3,2)/(3,3)/(2,2) {}]",
            flags.iter().filter(|f| f.1).count(),
            flags.len(),
            detail.join(", ")
        ),
    )
}

fn raw_bytes(s: &SweepSummary) -> Vec<u8> {
    let mut buf = Vec::new();
    write_raw(&mut buf, &s.runs).expect("in-memory write");
    buf
}

fn criterion_8(s: &SweepResults) -> Outcome {
    let spec = builtin_spec("B1-s2").expect("built-in");
    let reference = raw_bytes(&s.by_set["B1-s2"]);
    let serial = raw_bytes(&run_sweep_with_threads(&spec, 1).expect("valid"));
    let parallel = raw_bytes(&run_sweep_with_threads(&spec, 4).expect("valid"));
    let identical = reference == serial && serial == parallel;

    let cfg = WorldConfig {
        num_avs: 30,
        metacognition: true,
        ..WorldConfig::default()
    };
    let start = Instant::now();
    let a = run_simulation(&cfg, 1000, 42).expect("valid");
    let single = start.elapsed();
    let b = run_simulation(&cfg, 1000, 42).expect("valid");
    let pass = identical && a == b && single < SINGLE_RUN_BUDGET;
    outcome(
        pass,
        format!(
            "raw CSV identical across reruns and 1/4 worker threads: {identical}; 1000-tick 30-agent run {single:.2?}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut events = 0;
    for _ in 0..ORACLE_WORLDS {
        let (w, h) = (rng.gen_range(3.0..8.0), rng.gen_range(3.0..8.0));
        let cfg = WorldConfig {
            world_width: w,
            world_height: h,
            ..WorldConfig::default()
        };
        let agents: Vec<VehicleAgent> = (0..AV_COUNT)
            .map(|id| VehicleAgent {
                id,
                kind: ActorKind::Truck,
                personality: Personality::for_kind(ActorKind::Truck, &LambdaTable::default()),
                position: (rng.gen::<f64>() * w, rng.gen::<f64>() * h),
                heading: 0.0,
                velocity: 0.5,
                belief: Belief::default(),
                fear: None,
                collisions: 0,
            })
            .collect();
        let mut expect = BTreeSet::new();
        for i in 0..AV_COUNT {
            for j in i + 1..AV_COUNT {
                let (a, b) = (agents[i].position, agents[j].position);
                let dx = (a.0 - b.0).abs().min(w - (a.0 - b.0).abs());
                let dy = (a.1 - b.1).abs().min(h - (a.1 - b.1).abs());
                if dx.hypot(dy) < cfg.collision_radius {
                    expect.insert((i, j));
                }
            }
        }
        let mut world = World::from_agents(cfg, agents).expect("ids in order");
        let got: BTreeSet<(usize, usize)> = world.detect_collisions().into_iter().collect();
        events += expect.len();
        if got != expect {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{ORACLE_WORLDS} random {AV_COUNT}-agent worlds, {events} events, {mismatches} mismatching worlds"),
    )
}

fn main() -> ExitCode {
    let mut results = vec![(1, criterion_1()), (2, criterion_2()), (3, criterion_3())];
    let sweep = full_sweep();
    results.push((4, criterion_4(&sweep)));
    results.push((5, criterion_5(&sweep)));
    results.push((6, criterion_6(&sweep)));
    results.push((7, criterion_7(&sweep)));
    results.push((8, criterion_8(&sweep)));
    results.push((9, criterion_9()));

    for (n, o) in &results {
        println!("criterion {n}: {} - {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let passed = results.iter().filter(|(_, o)| o.pass).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
