use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use vcdim_core::exact::exact_vcdim_matrix_with_workers;
use vcdim_core::{
    estimate_vcdim, exact_shattered_witness, shatters, ConceptMatrix, Domain, DomainSampler,
    ErmOracle, Error, EstimateOptions, HypothesisClass, ShatterOptions, VcEstimate, VcValue,
};

use crate::args::{
    BenchArgs, ClassArgs, ClassKind, Cli, Command, EstimateArgs, ExactArgs, HalfspaceOracle,
    SamplerChoice, ShatterArgs, VcdimArgs,
};
use crate::report::{
    self, BenchRow, ConfigEcho, EstimateEcho, ExactEcho, Report, SamplerEcho, ShatterEcho, VcField,
    SAMPLER_NOTE,
};
use crate::{chart, points, CliError, EXIT_MISMATCH, EXIT_NOT_SHATTERED, EXIT_OK};

/// Everything a command produced, before anything is written out.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    /// Human-readable summary for stdout.
    pub summary: String,
    pub csv: Option<String>,
    pub svg: Option<String>,
    pub exit_code: i32,
}

fn config_err(e: Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Oracle failures exit 2; everything else a caller could have avoided
/// exits 1.
fn classify(e: Error) -> CliError {
    match e {
        Error::Oracle(_) | Error::OracleAt { .. } => CliError::Oracle(e.to_string()),
        Error::EstimationAborted { ref source, .. } => match **source {
            Error::Oracle(_) | Error::OracleAt { .. } => CliError::Oracle(e.to_string()),
            _ => CliError::Config(e.to_string()),
        },
        other => CliError::Config(other.to_string()),
    }
}

fn workers(requested: Option<usize>) -> Result<usize, CliError> {
    match requested {
        Some(0) => Err(CliError::Config("--workers must be at least 1".into())),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub fn read_matrix(path: &Path) -> Result<ConceptMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: Error| CliError::Config(format!("{}: {e}", path.display())))
}

fn class_name(kind: ClassKind) -> &'static str {
    match kind {
        ClassKind::Threshold => "threshold",
        ClassKind::Interval => "interval",
        ClassKind::Rectangle => "rectangle",
        ClassKind::HalfspaceLp => "halfspace-lp",
        ClassKind::HalfspacePerceptron => "halfspace-perceptron",
        ClassKind::Finite => "finite",
    }
}

fn build_class(args: &ClassArgs) -> Result<(HypothesisClass, ConfigEcho), CliError> {
    let mut echo = ConfigEcho {
        class: Some(class_name(args.class).into()),
        ..Default::default()
    };
    if args.matrix.is_some() && args.class != ClassKind::Finite {
        return Err(CliError::Config(
            "--matrix only applies to --class finite".into(),
        ));
    }
    let class = match args.class {
        ClassKind::Threshold | ClassKind::Interval => {
            if args.dim != 1 {
                return Err(CliError::Config(format!(
                    "--class {} lives on the line; --dim must be 1",
                    class_name(args.class)
                )));
            }
            if args.class == ClassKind::Threshold {
                HypothesisClass::threshold()
            } else {
                HypothesisClass::interval()
            }
        }
        ClassKind::Rectangle => {
            echo.dim = Some(args.dim);
            HypothesisClass::rectangle(args.dim).map_err(config_err)?
        }
        ClassKind::HalfspaceLp => {
            echo.dim = Some(args.dim);
            HypothesisClass::halfspace_lp(args.dim).map_err(config_err)?
        }
        ClassKind::HalfspacePerceptron => {
            echo.dim = Some(args.dim);
            echo.budget = Some(args.budget);
            HypothesisClass::halfspace_perceptron(args.dim, args.budget).map_err(config_err)?
        }
        ClassKind::Finite => {
            let path = args
                .matrix
                .as_ref()
                .ok_or_else(|| CliError::Config("--class finite needs --matrix".into()))?;
            echo.matrix = Some(path.display().to_string());
            HypothesisClass::finite(read_matrix(path)?)
        }
    };
    Ok((class, echo))
}

pub fn run_shatter(args: &ShatterArgs) -> Result<Outcome, CliError> {
    let (class, mut echo) = build_class(&args.class)?;
    echo.complement_symmetry = Some(args.complement_symmetry);
    let dim = match class.domain() {
        Domain::Real { dim } => dim,
        Domain::Finite { .. } => 1,
    };
    let coords = match (&args.points, &args.points_file) {
        (Some(text), None) => points::parse_inline_coords(text, dim).map_err(config_err)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            points::parse_file_coords(&text, dim)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        }
        _ => {
            return Err(CliError::Config(
                "give exactly one of --points or --points-file".into(),
            ))
        }
    };
    let pts = match class.domain() {
        Domain::Real { .. } => points::real_points(coords),
        Domain::Finite { .. } => points::index_points(coords),
    }
    .map_err(config_err)?;

    let options = ShatterOptions {
        workers: workers(args.workers)?,
        assume_complement_closed: args.complement_symmetry,
    };
    let verdict = shatters(&class, &pts, &options).map_err(classify)?;

    let mut report = Report::new("shatter", echo);
    report.shatter = Some(ShatterEcho {
        points: pts.iter().map(|p| p.to_string()).collect(),
        shattered: verdict.shattered,
        witness: verdict.witness.as_ref().map(|w| w.to_string()),
        erm_calls: verdict.erm_calls,
        unresolved: verdict.unresolved,
        elapsed_s: report::seconds(verdict.elapsed),
    });
    if verdict.unresolved {
        report.warnings.push(
            "the witness labeling exhausted the oracle's budget; it may still be realizable".into(),
        );
    }

    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "{} on {} point{}: {}",
        class.name(),
        pts.len(),
        if pts.len() == 1 { "" } else { "s" },
        if verdict.shattered {
            "shattered"
        } else {
            "not shattered"
        }
    );
    if let Some(w) = &verdict.witness {
        let _ = writeln!(summary, "witness: {w}");
    }
    let _ = writeln!(summary, "erm_calls: {}", verdict.erm_calls);
    let _ = writeln!(summary, "unresolved: {}", verdict.unresolved);
    for w in &report.warnings {
        let _ = writeln!(summary, "warning: {w}");
    }

    Ok(Outcome {
        report,
        summary,
        csv: None,
        svg: None,
        exit_code: if verdict.shattered {
            EXIT_OK
        } else {
            EXIT_NOT_SHATTERED
        },
    })
}

fn estimate_options(args: &EstimateArgs) -> Result<EstimateOptions, CliError> {
    Ok(EstimateOptions {
        epsilon: args.epsilon,
        delta: args.delta,
        d_max: args.d_max,
        workers: workers(args.workers)?,
        early_break: !args.no_early_break,
    })
}

fn echo_estimate_flags(echo: &mut ConfigEcho, args: &EstimateArgs) {
    echo.d_max = Some(args.d_max);
    echo.early_break = Some(!args.no_early_break);
}

fn estimate_warnings(est: &VcEstimate) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(row) = est.stopping_row() {
        if row.unresolved > 0 {
            out.push(format!(
                "{} of {} draws at d = {} were unresolved (oracle budget exhausted)",
                row.unresolved, row.draws, row.d
            ));
        }
    }
    if est.terminated_at_dmax {
        out.push("reached d_max without a stopping size".into());
    }
    out
}

fn estimate_table(echo: &EstimateEcho) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "epsilon {} delta {} m {}",
        echo.certificate.epsilon, echo.certificate.delta, echo.certificate.m
    );
    let _ = writeln!(
        s,
        "{:>4} {:>10} {:>10} {:>10} {:>12}",
        "d", "m", "z_m", "unresolved", "elapsed_s"
    );
    for r in &echo.rows {
        let flag = if r.short_circuit {
            "  (beyond domain)"
        } else if r.lower_bound {
            "  (early break)"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "{:>4} {:>10} {:>10} {:>10} {:>12.6}{flag}",
            r.d, r.m, r.z_m, r.unresolved, r.elapsed_s
        );
    }
    let _ = writeln!(s, "vc = {}", echo.vc);
    if let Some(rate) = echo.unresolved_rate {
        let _ = writeln!(s, "unresolved rate at stopping d: {rate:.4}");
    }
    s
}

pub fn run_vcdim(args: &VcdimArgs) -> Result<Outcome, CliError> {
    let (class, mut echo) = build_class(&args.class)?;
    let est_args = &args.estimate;
    let seed = est_args.seed;
    let sampler = match (class.domain(), args.sampler) {
        (Domain::Real { dim }, None | Some(SamplerChoice::Box)) => {
            DomainSampler::cube(dim, est_args.lo, est_args.hi, seed)
        }
        (Domain::Finite { cardinality }, None | Some(SamplerChoice::Uniform)) => {
            DomainSampler::finite_uniform(cardinality, seed)
        }
        (Domain::Finite { cardinality }, Some(SamplerChoice::Exhaustive)) => {
            DomainSampler::exhaustive(cardinality)
        }
        (Domain::Real { .. }, Some(_)) => {
            return Err(CliError::Config(
                "real-valued classes only support --sampler box".into(),
            ))
        }
        (Domain::Finite { .. }, Some(SamplerChoice::Box)) => {
            return Err(CliError::Config(
                "--sampler box needs a real-valued class".into(),
            ))
        }
    }
    .map_err(config_err)?;
    echo.sampler = Some(SamplerEcho::from(&sampler));
    echo_estimate_flags(&mut echo, est_args);
    echo.expect = args.expect;

    let options = estimate_options(est_args)?;
    let est = estimate_vcdim(&class, &sampler, &options).map_err(classify)?;

    let mut report = Report::new("vcdim", echo);
    let est_echo = EstimateEcho::from(&est);
    report.warnings = estimate_warnings(&est);
    report.note = Some(SAMPLER_NOTE.into());

    let mut summary = format!("{} under {}\n", class.name(), describe_sampler(&sampler));
    summary.push_str(&estimate_table(&est_echo));

    let mut exit_code = EXIT_OK;
    if let Some(want) = args.expect {
        if est.vc == VcValue::Finite(want) {
            let _ = writeln!(summary, "matches the expected value {want}");
        } else {
            let _ = writeln!(summary, "MISMATCH: expected {want}, estimated {}", est.vc);
            exit_code = EXIT_MISMATCH;
        }
    }
    for w in &report.warnings {
        let _ = writeln!(summary, "warning: {w}");
    }
    let _ = writeln!(summary, "note: {SAMPLER_NOTE}");

    let csv = report::per_d_csv(&est_echo.rows);
    report.estimate = Some(est_echo);
    Ok(Outcome {
        report,
        summary,
        csv: Some(csv),
        svg: None,
        exit_code,
    })
}

fn describe_sampler(s: &DomainSampler) -> String {
    match SamplerEcho::from(s) {
        SamplerEcho::Box { lo, hi, seed } => {
            format!(
                "uniform box [{}, {}]^{} (seed {seed})",
                lo[0],
                hi[0],
                lo.len()
            )
        }
        SamplerEcho::Uniform { cardinality, seed } => {
            format!("uniform subsets of {cardinality} columns (seed {seed})")
        }
        SamplerEcho::Exhaustive { cardinality, .. } => {
            format!("every subset of {cardinality} columns")
        }
    }
}

pub fn run_exact(args: &ExactArgs) -> Result<Outcome, CliError> {
    let matrix = read_matrix(&args.matrix)?;
    let vc = exact_vcdim_matrix_with_workers(&matrix, workers(args.workers)?);
    let witness = match args.witness {
        Some(d) => exact_shattered_witness(&matrix, d).map_err(config_err)?,
        None => None,
    };

    let echo = ConfigEcho {
        matrix: Some(args.matrix.display().to_string()),
        ..Default::default()
    };
    let mut report = Report::new("exact", echo);
    report.exact = Some(ExactEcho {
        vc,
        rows: matrix.row_count(),
        cols: matrix.col_count(),
        distinct_rows: matrix.distinct_row_count(),
        witness_size: args.witness,
        witness: witness.clone(),
    });

    let mut summary = format!(
        "{} rows ({} distinct) x {} columns\nvc = {vc}\n",
        matrix.row_count(),
        matrix.distinct_row_count(),
        matrix.col_count()
    );
    if let Some(d) = args.witness {
        match &witness {
            Some(cols) => {
                let _ = writeln!(summary, "first shattered {d}-subset: {cols:?}");
            }
            None => {
                let _ = writeln!(summary, "no {d}-subset is shattered");
            }
        }
    }
    Ok(Outcome {
        report,
        summary,
        csv: None,
        svg: None,
        exit_code: EXIT_OK,
    })
}

/// `1,2,3`, `1-4`, or a mix such as `1-3,6`.
pub fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Config(format!("bad --dims value {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

pub fn run_bench(args: &BenchArgs) -> Result<Outcome, CliError> {
    let dims = parse_dims(&args.dims)?;
    let est_args = &args.estimate;
    let options = estimate_options(est_args)?;
    let mut echo = ConfigEcho {
        class: Some(
            match args.oracle {
                HalfspaceOracle::Lp => "halfspace-lp",
                HalfspaceOracle::Perceptron => "halfspace-perceptron",
            }
            .into(),
        ),
        budget: (args.oracle == HalfspaceOracle::Perceptron).then_some(args.budget),
        dims: Some(dims.clone()),
        seed: Some(est_args.seed),
        lo: Some(est_args.lo),
        hi: Some(est_args.hi),
        ..Default::default()
    };
    echo_estimate_flags(&mut echo, est_args);
    let mut report = Report::new("bench", echo);

    let mut summary = String::new();
    for &n in &dims {
        let class = match args.oracle {
            HalfspaceOracle::Lp => HypothesisClass::halfspace_lp(n),
            HalfspaceOracle::Perceptron => HypothesisClass::halfspace_perceptron(n, args.budget),
        }
        .map_err(config_err)?;
        let sampler =
            DomainSampler::cube(n, est_args.lo, est_args.hi, est_args.seed).map_err(config_err)?;
        let start = Instant::now();
        let est = estimate_vcdim(&class, &sampler, &options).map_err(classify)?;
        let elapsed = report::seconds(start.elapsed());
        for w in estimate_warnings(&est) {
            report.warnings.push(format!("n = {n}: {w}"));
        }
        let _ = writeln!(summary, "n = {n}: vc = {} in {elapsed:.6} s", est.vc);
        report.bench.push(BenchRow {
            n,
            vc: VcField::from(est.vc),
            elapsed_s: elapsed,
            estimate: EstimateEcho::from(&est),
        });
    }
    report.note = Some(SAMPLER_NOTE.into());
    for w in &report.warnings {
        let _ = writeln!(summary, "warning: {w}");
    }

    let csv = report::bench_csv(&report.bench);
    let svg = chart::timing_svg(
        &report
            .bench
            .iter()
            .map(|r| (r.n, r.elapsed_s))
            .collect::<Vec<_>>(),
    );
    Ok(Outcome {
        report,
        summary,
        csv: Some(csv),
        svg: Some(svg),
        exit_code: EXIT_OK,
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Shatter(a) => run_shatter(a),
        Command::Vcdim(a) => run_vcdim(a),
        Command::Exact(a) => run_exact(a),
        Command::Bench(a) => run_bench(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_lists_and_ranges() {
        assert_eq!(parse_dims("1-4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_dims("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_dims("1-2, 5").unwrap(), vec![1, 2, 5]);
        assert_eq!(parse_dims("3").unwrap(), vec![3]);
        assert!(parse_dims("3-1").is_err());
        assert!(parse_dims("0,1").is_err());
        assert!(parse_dims("x").is_err());
        assert!(parse_dims("").is_err());
    }

    #[test]
    fn oracle_failures_are_told_apart() {
        assert!(matches!(
            classify(Error::Oracle("pivot".into())),
            CliError::Oracle(_)
        ));
        assert!(matches!(
            classify(Error::Contract("x".into())),
            CliError::Config(_)
        ));
        let aborted = Error::EstimationAborted {
            d: 3,
            completed: Vec::new(),
            source: Box::new(Error::Oracle("pivot".into())),
        };
        assert!(matches!(classify(aborted), CliError::Oracle(_)));
    }
}
