use std::collections::HashSet;

use avsoc_core::experiments::io::{read_raw, write_raw, write_summary};
use avsoc_core::experiments::{
    builtin_set, builtin_spec, builtin_specs, compare_modes, run_simulation, run_sweep, run_sweep_with_threads,
    sonar_safety_matrix, ConfigSeries, ExperimentSpec, SetId, ShapeError, SummaryRow, SweepSummary,
};
use avsoc_core::society::{ConfigError, Mode, WorldConfig};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/experiments");

fn textbook(totals: &[u64]) -> (f64, f64) {
    let n = totals.len() as f64;
    let mean = totals.iter().sum::<u64>() as f64 / n;
    let ss: f64 = totals.iter().map(|&t| (t as f64 - mean).powi(2)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn fixture_files_match_built_in_sets() {
    let specs = builtin_specs();
    assert_eq!(specs.len(), 14);
    for spec in specs {
        let path = format!("{FIXTURES}/{}.toml", spec.set.to_lowercase());
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, spec.to_toml(), "{path}");
        assert_eq!(ExperimentSpec::from_toml(&text).unwrap(), spec);
    }
}

#[test]
fn reference_parameters() {
    // (set, max velocity, rate, safety, sonar)
    let table = [
        ("A1-s2", 0.8, 0.1, 3, 2),
        ("A1-s5", 0.8, 0.1, 3, 5),
        ("A2-s2", 0.5, 0.2, 2, 2),
        ("A2-s5", 0.5, 0.2, 2, 5),
        ("A3", 0.3, 0.1, 2, 2),
        ("A4", 0.3, 0.3, 3, 3),
        ("A5", 0.3, 0.1, 1, 1),
    ];
    for (set, max_v, rate, safety, sonar) in table {
        for kind in ["A", "B"] {
            let label = format!("{kind}{}", &set[1..]);
            let spec = builtin_spec(&label).unwrap();
            let counts: Vec<usize> = spec.rows.iter().map(|r| r.config.num_avs).collect();
            assert_eq!(counts, [10, 15, 20, 25, 30]);
            for r in &spec.rows {
                let c = &r.config;
                assert_eq!(
                    (c.min_velocity, c.max_velocity, c.acceleration_rate, c.deceleration_rate),
                    (0.14, max_v, rate, rate)
                );
                assert_eq!((c.safety_distance, c.sonar_range), (safety, sonar));
                assert_eq!(c.metacognition, kind == "B");
            }
        }
    }
}

#[test]
fn set_a1_shape_and_statistics() {
    for spec in builtin_set("a1".parse::<SetId>().unwrap()) {
        let s = run_sweep(&spec).unwrap();
        assert_eq!(s.runs.len(), 35);
        assert_eq!(s.rows.len(), 5);
        let seeds: HashSet<u64> = s.runs.iter().map(|r| r.seed).collect();
        assert_eq!(seeds.len(), 35);
        for row in &s.rows {
            assert_eq!(row.totals.len(), 7);
            let (mean, stdev) = textbook(&row.totals);
            assert!(rel_close(row.mean, mean), "{} vs {mean}", row.mean);
            assert!(rel_close(row.stdev, stdev), "{} vs {stdev}", row.stdev);
        }
    }
}

fn raw_bytes(s: &SweepSummary) -> Vec<u8> {
    let mut buf = Vec::new();
    write_raw(&mut buf, &s.runs).unwrap();
    buf
}

#[test]
fn sweeps_are_reproducible_across_thread_counts() {
    let spec = builtin_spec("B3").unwrap().with_repetitions(3);
    let one = run_sweep_with_threads(&spec, 1).unwrap();
    let four = run_sweep_with_threads(&spec, 4).unwrap();
    let again = run_sweep(&spec).unwrap();
    assert_eq!(one, four);
    assert_eq!(one, again);
    assert_eq!(raw_bytes(&one), raw_bytes(&four));
}

#[test]
fn raw_csv_reloads_into_the_same_summary() {
    let spec = builtin_spec("A5").unwrap().with_repetitions(2);
    let s = run_sweep(&spec).unwrap();
    let back = read_raw(&raw_bytes(&s)[..]).unwrap();
    assert_eq!(SweepSummary::from_runs(&s.set, back), s);
    let mut buf = Vec::new();
    write_summary(&mut buf, &[&s]).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("set,num_avs,mode,mean,stdev\nA5,10,random-walk,"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn single_agent_never_collides() {
    for metacognition in [false, true] {
        let cfg = WorldConfig {
            num_avs: 1,
            metacognition,
            ..WorldConfig::default()
        };
        assert_eq!(run_simulation(&cfg, 1000, 4).unwrap().total_collisions, 0);
    }
}

#[test]
fn invalid_config_fails_before_running() {
    let cfg = WorldConfig {
        num_avs: 31,
        ..WorldConfig::default()
    };
    assert!(matches!(
        run_simulation(&cfg, 10, 0),
        Err(ConfigError::OutOfRange { key: "num_avs", .. })
    ));
}

#[test]
fn runs_are_deterministic_and_series_sum_to_total() {
    let cfg = WorldConfig {
        num_avs: 20,
        ..WorldConfig::default()
    };
    let a = run_simulation(&cfg, 500, 8).unwrap();
    assert_eq!(a, run_simulation(&cfg, 500, 8).unwrap());
    assert_eq!(a.per_tick.len(), 500);
    assert_eq!(
        a.per_tick.iter().map(|&c| u64::from(c)).sum::<u64>(),
        a.total_collisions
    );
}

#[test]
fn denser_random_walk_collides_more() {
    let cfg = |n| WorldConfig {
        num_avs: n,
        ..WorldConfig::default()
    };
    let wins = (0..7)
        .filter(|&seed| {
            run_simulation(&cfg(30), 1000, seed).unwrap().total_collisions
                > run_simulation(&cfg(10), 1000, seed).unwrap().total_collisions
        })
        .count();
    assert!(wins >= 4, "{wins} of 7");
}

fn reference(set: &str, mode: Mode, means: &[f64]) -> SweepSummary {
    SweepSummary {
        set: set.into(),
        rows: means
            .iter()
            .zip([10, 15, 20, 25, 30])
            .zip(1..)
            .map(|((&mean, num_avs), experiment_no)| SummaryRow {
                experiment_no,
                num_avs,
                mode,
                mean,
                stdev: 0.0,
                totals: vec![],
                seeds: vec![],
            })
            .collect(),
        runs: vec![],
    }
}

#[test]
fn comparison_of_reference_means() {
    let a1 = reference(
        "A1",
        Mode::RandomWalk,
        &[48.63886, 95.57575, 152.584, 222.3648, 305.439],
    );
    let b1 = reference("B1", Mode::Norms, &[2.573837, 7.317401, 16.17935, 32.20731, 59.35412]);
    let r = compare_modes(&a1, &b1).unwrap();
    assert!(r.rows[0].pass);
    assert!(r.all_pass());
    let a5 = reference(
        "A5",
        Mode::RandomWalk,
        &[37.75169, 85.15609, 145.9167, 215.4169, 294.7733],
    );
    let b5 = reference("B5", Mode::Norms, &[0.791342, 2.084906, 7.152462, 11.63587, 4.069908]);
    let r = compare_modes(&a5, &b5).unwrap();
    assert!(r.rows[4].pass);
    assert!((r.rows[4].delta - (294.7733 - 4.069908)).abs() < 1e-9);
}

fn reference_matrix() -> Vec<ConfigSeries> {
    let rows: [((u32, u32), [f64; 5]); 6] = [
        ((1, 1), [0.791342, 2.084906, 7.152462, 11.63587, 4.069908]),
        ((2, 2), [0.785513, 2.268417, 4.767293, 8.728624, 14.69935]),
        ((2, 5), [0.814496, 2.711523, 6.390049, 13.36398, 24.04687]),
        ((3, 2), [3.01972, 8.936398, 20.14434, 40.31569, 72.42839]),
        ((3, 3), [1.889218, 6.042479, 14.54727, 28.01678, 44.53196]),
        ((3, 5), [2.127955, 5.698404, 12.21435, 24.09892, 46.27984]),
    ];
    rows.iter()
        .map(|&((safety, sonar), means)| ConfigSeries {
            safety_distance: safety,
            sonar_range: sonar,
            source: "reference".into(),
            means: [10, 15, 20, 25, 30].into_iter().zip(means).collect(),
        })
        .collect()
}

#[test]
fn matrix_of_reference_means() {
    let m = sonar_safety_matrix(&reference_matrix()).unwrap();
    assert!(m.cell(3, 2).unwrap().means[0].1 > m.cell(3, 3).unwrap().means[0].1);
    let mut at10: Vec<((u32, u32), f64)> = m
        .rows
        .iter()
        .map(|r| ((r.safety_distance, r.sonar_range), r.means[0].1))
        .collect();
    at10.sort_by(|a, b| a.1.total_cmp(&b.1));
    let smallest: HashSet<(u32, u32)> = at10[..2].iter().map(|c| c.0).collect();
    assert_eq!(smallest, HashSet::from([(1, 1), (2, 2)]));
    assert!(m.short_sonar_worse());
    assert!(m
        .to_csv()
        .starts_with("safety_distance,sonar_range,source,avs_10,avs_15"));
}

#[test]
fn matrix_rejects_duplicates() {
    let mut cells = reference_matrix();
    cells.push(cells[0].clone());
    assert_eq!(sonar_safety_matrix(&cells), Err(ShapeError::DuplicateCell(1, 1)));
}
