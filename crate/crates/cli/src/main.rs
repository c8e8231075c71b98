mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hessrank::batch::{self, Exec};
use hessrank::Error;
use serde_json::Value;

use report::{Command, PolyRequest, Report, Variant};

#[derive(Parser, Debug)]
#[command(name = "hessrank", version, about = "Exact analysis of polynomials with small Hessian rank")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Rank profile, apex spaces and decomposition.
    Analyze(PolyArgs),
    /// Apex spaces of the gradient map.
    Apex(PolyArgs),
    /// Decomposition with relation-space verification.
    Decompose(PolyArgs),
    /// Reduce the number of variables keeping the Hessian rank.
    Reduce(PolyArgs),
    /// Weak Smith and de Bondt normal forms of a matrix.
    Smith(SmithArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Report wall-clock time per input in milliseconds.
    #[arg(long)]
    timing: bool,
    /// Process inputs on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long)]
    vars: Option<usize>,
    /// Number of main variables; the target variable count for `reduce`.
    #[arg(long = "main-vars")]
    main_vars: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "relation-degree", default_value_t = hessrank::classify::DEFAULT_RELATION_DEGREE)]
    relation_degree: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DomainArg {
    Int,
    Polyt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Plain,
    Upper,
    Leading,
    Debondt,
}

#[derive(Args, Debug)]
struct SmithArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long, value_enum)]
    domain: DomainArg,
    #[arg(long)]
    rank: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
    #[command(flatten)]
    common: Common,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) | Error::RetriesExhausted(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Usage(m) => Failure::Usage(format!("{}: {m}", path.display())),
        Failure::Verification(m) => Failure::Verification(format!("{}: {m}", path.display())),
    }
}

type Job = (PolyRequest, usize, String, hessrank::Polynomial);

fn poly_jobs(cmd: Command, args: &PolyArgs) -> Result<Vec<Job>, Failure> {
    let mut jobs = Vec::new();
    for path in &args.files {
        let text = read(path)?;
        let parsed = input::parse_poly_file(&text, args.vars).map_err(|e| located(path, e))?;
        for (line, source, h) in parsed.polys {
            let vars = parsed.vars.unwrap_or(h.arity());
            let main = args.main_vars.or(parsed.main).unwrap_or(vars);
            if main > vars {
                return Err(Failure::Usage(format!("{}: main variables {main} exceed {vars}", path.display())));
            }
            let req = PolyRequest {
                command: cmd,
                input: path.display().to_string(),
                vars,
                main,
                seed: args.seed,
                relation_degree: args.relation_degree,
            };
            jobs.push((req, line, source, h));
        }
    }
    Ok(jobs)
}

fn timed(on: bool, f: impl FnOnce() -> hessrank::Result<Report>) -> hessrank::Result<Report> {
    let start = Instant::now();
    let mut r = f()?;
    if on {
        r.value["timing_ms"] = Value::from(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

fn exec(common: &Common) -> Exec {
    if common.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn run(cli: Cli) -> Result<(Vec<Report>, Format), Failure> {
    let (cmd, args) = match cli.command {
        Cmd::Analyze(a) => (Command::Analyze, a),
        Cmd::Apex(a) => (Command::Apex, a),
        Cmd::Decompose(a) => (Command::Decompose, a),
        Cmd::Reduce(a) => (Command::Reduce, a),
        Cmd::Smith(a) => return run_smith(a),
    };
    let jobs = poly_jobs(cmd, &args)?;
    let results = batch::map(&jobs, exec(&args.common), |(req, line, source, h)| {
        timed(args.common.timing, || report::run_poly(req, *line, source, h))
            .map_err(|e| (req.input.clone(), *line, e))
    });
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err((path, line, e)) => {
                return Err(match Failure::from(e) {
                    Failure::Usage(m) => Failure::Usage(format!("{path}:{line}: {m}")),
                    Failure::Verification(m) => Failure::Verification(format!("{path}:{line}: {m}")),
                })
            }
        }
    }
    Ok((reports, args.common.format))
}

fn run_smith(args: SmithArgs) -> Result<(Vec<Report>, Format), Failure> {
    let variant = match args.variant {
        VariantArg::Plain => Variant::Plain,
        VariantArg::Upper => Variant::Upper,
        VariantArg::Leading => Variant::Leading,
        VariantArg::Debondt => Variant::Debondt,
    };
    let mut inputs = Vec::new();
    for path in &args.files {
        let m = input::parse_matrix_file(&read(path)?).map_err(|e| located(path, e))?;
        let matches = matches!(
            (&m, args.domain),
            (input::MatrixInput::Int(_), DomainArg::Int) | (input::MatrixInput::Polyt(_), DomainArg::Polyt)
        );
        if !matches {
            return Err(Failure::Usage(format!(
                "{}: file declares domain {} but --domain differs",
                path.display(),
                m.kind().name()
            )));
        }
        inputs.push((path.display().to_string(), m));
    }
    let results = batch::map(&inputs, exec(&args.common), |(path, m)| {
        timed(args.common.timing, || report::run_smith(path, m, args.rank, variant)).map_err(|e| (path.clone(), e))
    });
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(rep) => reports.push(rep),
            Err((path, e)) => return Err(located(Path::new(&path), e)),
        }
    }
    Ok((reports, args.common.format))
}

fn emit(reports: &[Report], format: Format) -> String {
    match format {
        Format::Json => {
            let v = match reports {
                [one] => one.value.clone(),
                many => Value::Array(many.iter().map(|r| r.value.clone()).collect()),
            };
            let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(|r| report::render_text(&r.value)).collect::<Vec<_>>().join("\n"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((reports, format)) => {
            print!("{}", emit(&reports, format));
            if reports.iter().all(|r| r.verified) {
                ExitCode::SUCCESS
            } else {
                eprintln!("hessrank: a verification check failed");
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("hessrank: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("hessrank: {m}");
            ExitCode::from(2)
        }
    }
}
