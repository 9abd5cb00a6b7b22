use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_amplitude::action::{LinkValues, Scaling};
use graph_amplitude::amplitude::ladder_phase_closed_form;
use graph_amplitude::chain_complex::{
    boundary1, boundary2, build_canonical_ladder, build_figure1_fixture,
    verify_boundary_of_boundary,
};
use graph_amplitude::io::{
    int_matrix_csv, parse_values, pattern_csv, write_kernel_dump, write_spectral_dump,
};
use graph_amplitude::report::AmplitudeReport;
use graph_amplitude::spectral::{eigendecompose_symmetric, ZeroTolerance};
use graph_amplitude::twinslit::{
    pattern_sweep, sweep_range, twin_slit_phase, uniform_ladder_links, TwinSlitConfig,
};
use graph_amplitude::verify::{equivalence_sweep, run_verification, DEFAULT_SAMPLES, DEFAULT_SEED};
use graph_amplitude::{assemble_kernel, Error};
use serde_json::{json, Value};

/// Relative tolerance for the spectral/closed-form agreement reported by
/// `amplitude` and `sweep`.
const EQUIVALENCE_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "graph-amplitude",
    version,
    about = "Ladder graphs, action kernels and symmetry amplitudes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the canonical ladder (or the six-vertex fixture) and print it as JSON.
    Ladder(LadderArgs),
    /// Run the invariant battery at one ladder size.
    Verify(VerifyArgs),
    /// Phase, closed-form split and prefactor for one link vector.
    Amplitude(AmplitudeArgs),
    /// Twin-slit phase difference and intensity over a range of ẽ_x.
    Twinslit(TwinslitArgs),
    /// Spectral vs closed-form phase for random links at several sizes (CSV).
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

fn ladder_size(s: &str) -> Result<usize, String> {
    let n: usize = s
        .parse()
        .map_err(|_| format!("{s:?} is not a non-negative integer"))?;
    if n < 4 || !n.is_multiple_of(2) {
        return Err(format!("N must be even and at least 4, got {n}"));
    }
    Ok(n)
}

#[derive(Args)]
struct LadderArgs {
    #[arg(long = "N", value_parser = ladder_size, required_unless_present = "fixture")]
    n: Option<usize>,
    /// Use the six-vertex fixture in its reference labeling.
    #[arg(long, conflicts_with = "n")]
    fixture: bool,
    /// Write boundary1.csv, boundary2.csv and graph.json.
    #[arg(long)]
    dump_operators: bool,
    #[arg(long, default_value = ".", requires = "dump_operators")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "N", value_parser = ladder_size)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
    /// Also write the JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AmplitudeArgs {
    #[arg(long = "N", value_parser = ladder_size)]
    n: usize,
    /// Link values in canonical edge order, separated by commas.
    #[arg(long, allow_hyphen_values = true, group = "link_source")]
    links: Option<String>,
    /// File of link values separated by commas or whitespace.
    #[arg(long, group = "link_source")]
    links_file: Option<PathBuf>,
    /// Uniform temporal link value (with --e-x).
    #[arg(
        long = "e-T",
        group = "link_source",
        requires = "e_x",
        allow_hyphen_values = true
    )]
    e_t: Option<f64>,
    /// Uniform spatial link value (with --e-T).
    #[arg(long = "e-x", requires = "e_t", allow_hyphen_values = true)]
    e_x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["lambda", "h"])]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["lambda", "h"])]
    beta: Option<f64>,
    #[arg(long, conflicts_with_all = ["lambda", "h"])]
    hbar: Option<f64>,
    /// Wavelength; sets α = h/λ, β = h/λ², ħ = h/2π (with --h).
    #[arg(long, requires = "h")]
    lambda: Option<f64>,
    #[arg(long, requires = "lambda")]
    h: Option<f64>,
    /// Write kernel_A.csv, kernel_J.csv, kernel.json and eigenvalues.csv here.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    /// Include eigenvectors.csv in the dump.
    #[arg(long, requires = "dump_dir")]
    eigenvectors: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TwinslitArgs {
    #[arg(long = "N", value_parser = ladder_size)]
    n: usize,
    #[arg(long = "e-T")]
    e_t: f64,
    #[arg(long = "e-x")]
    e_x: f64,
    /// `start:stop:step` (inclusive) or a single ẽ_x value.
    #[arg(long)]
    sweep: String,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    h: f64,
    /// Temporal links of the second slit, when they differ from --e-T.
    #[arg(long = "e-T-tilde")]
    e_t_tilde: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated ladder sizes.
    #[arg(long, value_delimiter = ',', value_parser = ladder_size, default_value = "4,6,8,12,20")]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidLadderSize(_)
            | Error::InvalidGraph(_)
            | Error::DimensionMismatch { .. }
            | Error::InvalidParameter(_)
            | Error::NonCanonicalLadder(_)
            | Error::EmptySweep
            | Error::Io(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json(value: &Value) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn with_config(config: Value, body: Value) -> Result<Value, Failure> {
    let mut out = json!({ "config": config });
    if let (Value::Object(out_map), Value::Object(body)) = (&mut out, body) {
        out_map.extend(body);
    }
    Ok(out)
}

fn run_ladder(args: LadderArgs) -> Outcome {
    let (graph, label) = match args.n {
        Some(n) => (build_canonical_ladder(n)?.graph().clone(), "canonical"),
        None => (build_figure1_fixture(), "fixture"),
    };
    if !verify_boundary_of_boundary(&graph).holds {
        return Err(Failure::Check("∂₁∂₂ is not zero".into()));
    }
    let graph_json: Value = serde_json::from_str(&graph.to_json()?)?;
    let config = json!({
        "command": "ladder",
        "N": graph.vertex_count(),
        "graph": label,
        "dump_operators": args.dump_operators,
    });
    let text = to_json(&with_config(config, json!({ "graph": graph_json }))?)?;
    if args.dump_operators {
        fs::create_dir_all(&args.out_dir)?;
        fs::write(
            args.out_dir.join("boundary1.csv"),
            int_matrix_csv(boundary1(&graph).matrix()),
        )?;
        fs::write(
            args.out_dir.join("boundary2.csv"),
            int_matrix_csv(boundary2(&graph).matrix()),
        )?;
        fs::write(args.out_dir.join("graph.json"), &text)?;
    }
    print!("{text}");
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Outcome {
    let report = run_verification(args.n, args.seed, args.samples)?;
    let json_text = serde_json::to_string_pretty(&report)? + "\n";
    if let Some(path) = &args.output {
        fs::write(path, &json_text)?;
    }
    match args.format {
        ReportFormat::Json => print!("{json_text}"),
        ReportFormat::Text => {
            println!("N: {}", args.n);
            println!("seed: {}", args.seed);
            println!("samples: {}", args.samples);
            for line in report.summary_lines() {
                println!("{line}");
            }
            let limits = &report.resolved_sum_limits;
            println!(
                "resolved sum limits: spatial k = 1..{}, temporal k = 1..{} per rail, modes j = {}..{}",
                limits.spatial_terms, limits.temporal_terms_per_rail, limits.mode_range.0, limits.mode_range.1
            );
            println!(
                "all checks: {}",
                if report.all_pass { "pass" } else { "FAIL" }
            );
        }
    }
    if report.all_pass {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        Err(Failure::Check(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn amplitude_scaling(args: &AmplitudeArgs) -> Result<(Scaling, Value), Failure> {
    let scaling = match (args.lambda, args.h) {
        (Some(lambda), Some(h)) => Scaling::from_wavelength(lambda, h)?,
        _ => Scaling::new(
            args.alpha.unwrap_or(1.0),
            args.beta.unwrap_or(1.0),
            args.hbar.unwrap_or(1.0),
        )?,
    };
    let echo = json!({
        "alpha": scaling.alpha,
        "beta": scaling.beta,
        "hbar": scaling.hbar,
        "lambda": args.lambda,
        "h": args.h,
    });
    Ok((scaling, echo))
}

fn run_amplitude(args: AmplitudeArgs) -> Outcome {
    let ladder = build_canonical_ladder(args.n)?;
    let (links, source) = match (&args.links, &args.links_file, args.e_t, args.e_x) {
        (Some(text), _, _, _) => (LinkValues::new(parse_values(text)?)?, json!("inline")),
        (_, Some(path), _, _) => {
            let text = fs::read_to_string(path)?;
            (
                LinkValues::new(parse_values(&text)?)?,
                json!(path.display().to_string()),
            )
        }
        (_, _, Some(e_t), Some(e_x)) => (
            uniform_ladder_links(&ladder, e_t, e_x),
            json!({ "e_T": e_t, "e_x": e_x }),
        ),
        _ => {
            return Err(Failure::Usage(
                "one of --links, --links-file or --e-T/--e-x is required".into(),
            ))
        }
    };
    let expected = ladder.graph().edge_count();
    if links.len() != expected {
        return Err(Failure::Usage(format!(
            "N = {} needs {expected} link values, got {}",
            args.n,
            links.len()
        )));
    }
    let (scaling, scaling_echo) = amplitude_scaling(&args)?;
    let spectral = eigendecompose_symmetric(&ladder.graph().laplacian(), ZeroTolerance::default())?;
    let report = AmplitudeReport::with_spectrum(&ladder, &spectral, &links, scaling)?;

    let rederived = ladder_phase_closed_form(&ladder, &links, scaling)?;
    if rederived.phi_s.to_bits() != report.phi_s.to_bits()
        || rederived.phase.to_bits() != report.phase_closed_form.to_bits()
    {
        return Err(Failure::Check(
            "closed-form phase is not reproducible".into(),
        ));
    }

    if let Some(dir) = &args.dump_dir {
        write_kernel_dump(dir, &assemble_kernel(ladder.graph(), &links, scaling)?)?;
        write_spectral_dump(dir, &spectral, args.eigenvectors)?;
    }
    let config = json!({
        "command": "amplitude",
        "N": args.n,
        "links": source,
        "scaling": scaling_echo,
    });
    emit(
        &to_json(&with_config(config, serde_json::to_value(&report)?)?)?,
        args.output.as_deref(),
    )?;
    if report.residuals.closed_form_vs_spectral > EQUIVALENCE_TOLERANCE {
        return Err(Failure::Check(format!(
            "spectral and closed-form phases differ by {:e} (relative)",
            report.residuals.closed_form_vs_spectral
        )));
    }
    Ok(())
}

fn parse_sweep(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<f64, Failure> {
        s.trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad number {s:?} in --sweep")))
    };
    match parts.as_slice() {
        [single] => Ok(vec![num(single)?]),
        [start, stop, step] => Ok(sweep_range(num(start)?, num(stop)?, num(step)?)?),
        _ => Err(Failure::Usage(format!(
            "--sweep expects start:stop:step, got {spec:?}"
        ))),
    }
}

fn run_twinslit(args: TwinslitArgs) -> Outcome {
    let values = parse_sweep(&args.sweep)?;
    let mut base = TwinSlitConfig::new(args.n, args.e_t, args.e_x, values[0], args.lambda, args.h)?;
    base.e_t_tilde = args.e_t_tilde;
    let rows = pattern_sweep(&base, &values)?;

    let first = twin_slit_phase(&base)?;
    if first.delta_phi.to_bits() != rows[0].delta_phi.to_bits() {
        return Err(Failure::Check("first sweep row is not reproducible".into()));
    }

    let maxima: Vec<f64> = rows
        .iter()
        .filter(|r| r.is_maximum)
        .map(|r| r.n_value)
        .collect();
    let config = json!({
        "command": "twinslit",
        "N": args.n,
        "e_T": args.e_t,
        "e_x": args.e_x,
        "e_T_tilde": args.e_t_tilde,
        "sweep": args.sweep,
        "lambda": args.lambda,
        "h": args.h,
        "alpha": base.alpha(),
        "beta": base.beta(),
        "hbar": base.hbar(),
    });
    let text = match args.format {
        Format::Csv => pattern_csv(&rows),
        Format::Json => to_json(&with_config(
            config,
            json!({ "maxima_count": maxima.len(), "rows": rows }),
        )?)?,
    };
    emit(&text, args.output.as_deref())?;

    let first_three: Vec<String> = maxima.iter().take(3).map(|n| format!("{n}")).collect();
    let summary = format!(
        "rows: {}\nmaxima: {}\nfirst n values: [{}]",
        rows.len(),
        maxima.len(),
        first_three.join(", ")
    );
    if args.output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Outcome {
    let rows = equivalence_sweep(&args.n_list, args.samples, args.seed)?;
    let mut text = String::from(
        "N,sample,phase_numeric,phase_closed_form,relative_error,phi_s,phi_t,phi_st\n",
    );
    for r in &rows {
        text.push_str(&format!(
            "{},{},{},{},{:e},{},{},{}\n",
            r.n,
            r.sample,
            r.phase_numeric,
            r.phase_closed_form,
            r.relative_error,
            r.phi_s,
            r.phi_t,
            r.phi_st
        ));
    }
    if let Some(first) = rows.first() {
        let again = equivalence_sweep(&[first.n], 1, args.seed)?;
        if again[0].phase_closed_form.to_bits() != first.phase_closed_form.to_bits() {
            return Err(Failure::Check("first sweep row is not reproducible".into()));
        }
    }
    emit(&text, args.output.as_deref())?;
    eprintln!("seed: {}", args.seed);
    let worst = rows.iter().map(|r| r.relative_error).fold(0.0, f64::max);
    if worst > EQUIVALENCE_TOLERANCE {
        return Err(Failure::Check(format!("max relative error {worst:e}")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Ladder(a) => run_ladder(a),
        Command::Verify(a) => run_verify(a),
        Command::Amplitude(a) => run_amplitude(a),
        Command::Twinslit(a) => run_twinslit(a),
        Command::Sweep(a) => run_sweep(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
