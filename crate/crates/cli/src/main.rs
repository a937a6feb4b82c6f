use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use greyrank_cli::{
    emit_report, example_expectations as expected, parse_problem, parse_problem_str,
    run_pipeline, GammaMode, ProblemFile, ReportFormat,
};

#[derive(Parser)]
#[command(name = "greyrank", version, about = "Rank decision alternatives with interval grey numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full ranking pipeline on a problem file
    Rank(RankArgs),
}

#[derive(Args)]
struct RankArgs {
    /// JSON problem file (optional with --verify-example)
    problem: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    report: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Incidence-coefficient weighting mode
    #[arg(long, value_enum)]
    gamma: Option<GammaArg>,
    /// Positive preference coefficient for the incidence approach degree
    #[arg(long)]
    theta_pos: Option<f64>,
    /// Negative preference coefficient for the incidence approach degree
    #[arg(long)]
    theta_neg: Option<f64>,
    /// Distinguishing coefficient for incidence coefficients, in (0, 1)
    #[arg(long)]
    rho: Option<f64>,
    /// Preference blend coefficient, in [0, 1]
    #[arg(long = "lambda")]
    lambda: Option<f64>,
    /// Run the bundled worked example and diff against stored expectations
    #[arg(long)]
    verify_example: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum GammaArg {
    Equal,
    Lp,
}

fn apply_overrides(problem: &mut ProblemFile, args: &RankArgs) {
    if let Some(gamma) = args.gamma {
        problem.params.gamma_mode = match gamma {
            GammaArg::Equal => GammaMode::Equal,
            GammaArg::Lp => GammaMode::Lp,
        };
    }
    if let Some(v) = args.theta_pos {
        problem.params.theta_pos = v;
    }
    if let Some(v) = args.theta_neg {
        problem.params.theta_neg = v;
    }
    if let Some(v) = args.rho {
        problem.params.rho = v;
    }
    if let Some(v) = args.lambda {
        problem.params.lambda = v;
    }
}

fn rank(args: &RankArgs) -> Result<(), (i32, String)> {
    if args.verify_example {
        return verify_example();
    }
    let path = args
        .problem
        .as_deref()
        .ok_or((1, "a problem file is required unless --verify-example is given".to_string()))?;
    let mut problem = parse_problem(path).map_err(|e| (1, e.to_string()))?;
    apply_overrides(&mut problem, args);
    let report = run_pipeline(&problem).map_err(|e| (e.exit_code(), e.to_string()))?;

    let format = match args.format {
        FormatArg::Json => ReportFormat::Json,
        FormatArg::Table => ReportFormat::Table,
    };
    match &args.report {
        Some(out) => {
            std::fs::write(out, emit_report(&report, ReportFormat::Json))
                .map_err(|e| (1, format!("cannot write {}: {e}", out.display())))?;
            if format == ReportFormat::Table {
                print!("{}", emit_report(&report, ReportFormat::Table));
            }
        }
        None => print!("{}", emit_report(&report, format)),
    }
    Ok(())
}

fn verify_example() -> Result<(), (i32, String)> {
    let problem = parse_problem_str(greyrank_cli::EXAMPLE_PROBLEM_JSON, "<embedded example>")
        .map_err(|e| (1, e.to_string()))?;
    let report = run_pipeline(&problem).map_err(|e| (e.exit_code(), e.to_string()))?;

    let expectations: [(&str, &[f64; 5]); 3] = [
        ("TOPSIS C", &expected::TOPSIS_SCORES),
        ("approach C'", &expected::APPROACH_SCORES),
        ("membership u", &expected::MEMBERSHIP_SCORES),
    ];
    let mut ok = true;
    println!("verify-example: bundled 5-plan / 6-attribute problem");
    for (method, (label, want)) in report.methods.iter().zip(expectations) {
        let rank_ok = method
            .ranks
            .iter()
            .zip(expected::FINAL_RANKS)
            .all(|(&r, e)| r == e as f64);
        ok &= rank_ok;
        println!(
            "  {label:<13} rank {}",
            if rank_ok { "match" } else { "MISMATCH" }
        );
        for (i, (&got, &want)) in method.scores.iter().zip(want).enumerate() {
            let diff = (got - want).abs();
            if diff > expected::SCORE_TOLERANCE {
                println!(
                    "    discrepancy plan {}: got {got:.4}, reference {want:.4} (|diff| = {diff:.4})",
                    i + 1
                );
            }
        }
    }
    let fusion_ok = report.final_ranks == expected::FINAL_RANKS;
    ok &= fusion_ok;
    println!(
        "  Borda fusion  rank {}",
        if fusion_ok { "match" } else { "MISMATCH" }
    );
    println!("  final order: {}", report.final_order.join(" > "));
    if ok {
        Ok(())
    } else {
        Err((1, "example verification failed".to_string()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Rank(args) => rank(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code as u8)
        }
    }
}
