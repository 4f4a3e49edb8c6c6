//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::path::Path;
use std::time::{Duration, Instant};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcdim_cli::report::{Report, VcField};
use vcdim_cli::{execute, Cli};
use vcdim_core::classes::FiniteClass;
use vcdim_core::{
    estimate_vcdim, exact_vcdim_matrix, hoeffding_sample_size, ConceptMatrix, DomainSampler,
    EstimateOptions, HypothesisClass, VcValue,
};

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn cli_report(args: &[&str]) -> Report {
    let mut argv = vec!["vcdim"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).expect("valid flags");
    execute(&cli).expect("command runs").report
}

fn bench_vcs(report: &Report) -> Vec<VcField> {
    report.bench.iter().map(|r| r.vc).collect()
}

fn finite(v: &[usize]) -> Vec<VcField> {
    v.iter().map(|&x| VcField::Finite(x)).collect()
}

fn random_matrix(seed: u64) -> ConceptMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + seed);
    let cols = rng.gen_range(1..=8);
    let rows = rng.gen_range(1..=32);
    let p: f64 = rng.gen_range(0.1..0.9);
    ConceptMatrix::new(
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(p)).collect())
            .collect(),
    )
    .unwrap()
}

fn table_reproduction() -> Verdict {
    let start = Instant::now();
    let fast = cli_report(&[
        "bench",
        "--dims",
        "1-3",
        "--oracle",
        "lp",
        "--epsilon",
        "0.05",
        "--delta",
        "0.05",
        "--seed",
        "42",
    ]);
    let fast_time = start.elapsed();
    let start = Instant::now();
    let slow = cli_report(&[
        "bench",
        "--dims",
        "1-2",
        "--oracle",
        "lp",
        "--epsilon",
        "0.01",
        "--delta",
        "0.01",
        "--seed",
        "42",
    ]);
    let slow_time = start.elapsed();
    let m_slow = slow.bench[0].estimate.certificate.m;
    let pass = bench_vcs(&fast) == finite(&[2, 3, 4])
        && fast_time < Duration::from_secs(300)
        && bench_vcs(&slow) == finite(&[2, 3])
        && m_slow == 26_492
        && slow_time < Duration::from_secs(1800);
    verdict(
        pass,
        format!(
            "eps=delta=0.05 dims 1-3 -> {:?} in {:.1}s; eps=delta=0.01 (m={m_slow}) dims 1-2 -> {:?} in {:.1}s",
            bench_vcs(&fast).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            fast_time.as_secs_f64(),
            bench_vcs(&slow).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            slow_time.as_secs_f64()
        ),
    )
}

fn perceptron_agreement() -> Verdict {
    let common = [
        "--dims",
        "1-2",
        "--epsilon",
        "0.05",
        "--delta",
        "0.05",
        "--seed",
        "42",
    ];
    let mut lp_args = vec!["bench", "--oracle", "lp"];
    lp_args.extend(common);
    let mut pc_args = vec!["bench", "--oracle", "perceptron", "--budget", "10000"];
    pc_args.extend(common);
    let lp = cli_report(&lp_args);
    let pc = cli_report(&pc_args);
    let mut pass = bench_vcs(&lp) == bench_vcs(&pc);
    let mut parts = Vec::new();
    for row in &pc.bench {
        let m = row.estimate.certificate.m;
        let unresolved = row
            .estimate
            .rows
            .last()
            .filter(|r| r.z_m == r.m)
            .map(|r| r.unresolved);
        match unresolved {
            Some(u) => {
                pass &= (u as f64) <= 0.1 * m as f64;
                parts.push(format!("n={} vc={} unresolved={u}/{m}", row.n, row.vc));
            }
            None => {
                pass = false;
                parts.push(format!("n={} has no stopping row", row.n));
            }
        }
    }
    verdict(
        pass,
        format!(
            "LP {:?} vs perceptron {:?}; {}",
            bench_vcs(&lp)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>(),
            bench_vcs(&pc)
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>(),
            parts.join(", ")
        ),
    )
}

fn exhaustive_equivalence() -> Verdict {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for seed in 0..100 {
        let matrix = random_matrix(seed);
        let truth = exact_vcdim_matrix(&matrix);
        let sampler = DomainSampler::exhaustive(matrix.col_count()).unwrap();
        let est = estimate_vcdim(
            &FiniteClass { matrix },
            &sampler,
            &EstimateOptions::default(),
        )
        .unwrap();
        if est.vc != VcValue::Finite(truth) {
            mismatches.push(seed);
        }
    }
    let elapsed = start.elapsed();
    verdict(
        mismatches.is_empty() && elapsed < Duration::from_secs(120),
        format!(
            "100 matrices, mismatches {mismatches:?}, {:.2}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn soundness_across_seeds() -> Verdict {
    let options = EstimateOptions {
        epsilon: 0.1,
        delta: 0.1,
        ..Default::default()
    };
    let mut violations = 0;
    let mut exact_hits = 0;
    for seed in 0..100 {
        let matrix = random_matrix(seed);
        let truth = exact_vcdim_matrix(&matrix);
        let class = FiniteClass {
            matrix: matrix.clone(),
        };
        for draw_seed in 1..=5 {
            let sampler = DomainSampler::finite_uniform(matrix.col_count(), draw_seed).unwrap();
            match estimate_vcdim(&class, &sampler, &options).unwrap().vc {
                VcValue::Finite(v) if v <= truth => exact_hits += usize::from(v == truth),
                _ => violations += 1,
            }
        }
    }
    verdict(
        violations == 0,
        format!("500 runs, {violations} overestimates, {exact_hits} exact"),
    )
}

fn closed_form_classes() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    let classes = [
        (HypothesisClass::threshold(), 1, 1),
        (HypothesisClass::interval(), 1, 2),
        (HypothesisClass::rectangle(2).unwrap(), 2, 4),
    ];
    for (class, dim, want) in classes {
        let got: Vec<String> = (1..=3)
            .map(|seed| {
                let sampler = DomainSampler::cube(dim, 0.0, 1.0, seed).unwrap();
                let vc = estimate_vcdim(&class, &sampler, &EstimateOptions::default())
                    .unwrap()
                    .vc;
                pass &= vc == VcValue::Finite(want);
                vc.to_string()
            })
            .collect();
        parts.push(format!(
            "{} -> {} (want {want})",
            class.name(),
            got.join("/")
        ));
    }
    verdict(pass, parts.join(", "))
}

fn hoeffding_certificate() -> Verdict {
    let mut failures = Vec::new();
    for i in 0..20 {
        for j in 0..20 {
            let eps = 0.01 + 0.49 * i as f64 / 19.0;
            let delta = 0.001 + 0.9 * j as f64 / 19.0;
            let m = hoeffding_sample_size(eps, delta).unwrap();
            let bound = |m: u64| 2.0 * (-2.0 * m as f64 * eps * eps).exp();
            if bound(m) > delta || (m > 0 && bound(m - 1) <= delta) {
                failures.push((eps, delta, m));
            }
        }
    }
    // Independent closed forms for the worked examples.
    let worked = [
        (
            std::f64::consts::FRAC_1_SQRT_2,
            2.0 / std::f64::consts::E.powi(2),
            2u64,
        ),
        (0.05, 0.05, (200.0 * 40f64.ln()).ceil() as u64),
        (0.01, 0.01, (5000.0 * 200f64.ln()).ceil() as u64),
    ];
    let got: Vec<u64> = worked
        .iter()
        .map(|&(e, d, _)| hoeffding_sample_size(e, d).unwrap())
        .collect();
    let want: Vec<u64> = worked.iter().map(|w| w.2).collect();
    verdict(
        failures.is_empty() && got == want && want == [2, 738, 26_492],
        format!(
            "400 grid points, {} failures {failures:?}; worked examples {got:?}",
            failures.len()
        ),
    )
}

/// Fifty `shatter` invocations covering every built-in class.
fn fixture_suite(dir: &Path) -> Vec<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases: Vec<Vec<String>> = Vec::new();
    let mut push = |class: &[&str], points: String| {
        let mut c: Vec<String> = vec!["shatter".into()];
        c.extend(class.iter().map(|s| s.to_string()));
        c.extend(["--points".into(), points]);
        cases.push(c);
    };
    let coord = |rng: &mut ChaCha8Rng| rng.gen_range(0..10) as f64 / 2.0;

    let line = |rng: &mut ChaCha8Rng, d: usize| {
        let mut xs: Vec<f64> = Vec::new();
        while xs.len() < d {
            let x = coord(rng) + rng.gen_range(0..4) as f64 * 5.0;
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let plane = |rng: &mut ChaCha8Rng, d: usize, n: usize| {
        let mut pts: Vec<Vec<f64>> = Vec::new();
        while pts.len() < d {
            let p: Vec<f64> = (0..n).map(|_| coord(rng)).collect();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts.iter()
            .map(|p| {
                format!(
                    "({})",
                    p.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect::<Vec<_>>()
            .join(";")
    };

    for d in 1..=8 {
        let pts = line(&mut rng, d.min(4));
        push(&["--class", "threshold"], pts);
    }
    for d in 1..=8 {
        let pts = line(&mut rng, 1 + d % 5);
        push(&["--class", "interval"], pts);
    }
    for d in 1..=8 {
        let pts = plane(&mut rng, 2 + d % 5, 2);
        push(&["--class", "rectangle", "--dim", "2"], pts);
    }
    for d in 1..=10 {
        let n = if d % 2 == 0 { 3 } else { 2 };
        let pts = plane(&mut rng, 2 + d % 4, n);
        let dim = n.to_string();
        push(&["--class", "halfspace-lp", "--dim", &dim], pts);
    }
    for d in 1..=8 {
        let pts = plane(&mut rng, 2 + d % 3, 2);
        push(
            &[
                "--class",
                "halfspace-perceptron",
                "--dim",
                "2",
                "--budget",
                "2000",
            ],
            pts,
        );
    }
    for k in 0..8u64 {
        let matrix = random_matrix(1000 + k);
        let path = dir.join(format!("fixture{k}.mat"));
        std::fs::write(&path, matrix.to_string()).unwrap();
        let cols: Vec<String> = (0..matrix.col_count().min(6))
            .map(|c| c.to_string())
            .collect();
        push(
            &["--class", "finite", "--matrix", path.to_str().unwrap()],
            cols.join(";"),
        );
    }
    cases
}

fn shattering_determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let cases = fixture_suite(dir.path());
    let mut differing = Vec::new();
    let mut shattered = 0;
    for (i, case) in cases.iter().enumerate() {
        let reports: Vec<String> = ["1", "2", "8"]
            .iter()
            .map(|w| {
                let mut args: Vec<&str> = case.iter().map(String::as_str).collect();
                args.extend(["--workers", w]);
                cli_report(&args).without_timing().to_json()
            })
            .collect();
        if reports.iter().any(|r| r != &reports[0]) {
            differing.push(i);
        }
        shattered += usize::from(reports[0].contains("\"shattered\": true"));
    }
    verdict(
        cases.len() == 50 && differing.is_empty(),
        format!(
            "{} cases ({shattered} shattered) at 1/2/8 workers, differing {differing:?}",
            cases.len()
        ),
    )
}

fn complexity_shape() -> Verdict {
    let report = cli_report(&[
        "bench",
        "--dims",
        "1-4",
        "--oracle",
        "lp",
        "--epsilon",
        "0.05",
        "--delta",
        "0.05",
        "--seed",
        "42",
    ]);
    let times: Vec<f64> = report.bench.iter().map(|r| r.elapsed_s).collect();
    let monotone = times.len() == 4 && times.windows(2).all(|w| w[0] < w[1]);
    verdict(
        monotone,
        format!(
            "elapsed by n=1..4: {}",
            times
                .iter()
                .map(|t| format!("{t:.3}s"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 half-space table reproduction", table_reproduction),
        ("2 perceptron agrees with LP", perceptron_agreement),
        ("3 exhaustive sampling equals exact", exhaustive_equivalence),
        ("4 soundness across seeds", soundness_across_seeds),
        ("5 closed-form classes", closed_form_classes),
        ("6 Hoeffding certificate", hoeffding_certificate),
        ("7 shattering determinism", shattering_determinism),
        ("8 bench time grows with dimension", complexity_shape),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let v = check();
        failed += usize::from(!v.pass);
        println!(
            "{} criterion {name}: {} [{:.1}s]",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
