use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use picfuzz::legacy::{self, closure_check, paper_examples, random_inputs, write_closure_csv, ClosureReport};
use picfuzz::mcdm::{self, CriteriaSidecar, Criterion, CriterionKind, DecisionProblem};
use picfuzz::sampling::seeded_rng;
use picfuzz::{AggregationOp, Error, TnormFamily};

#[derive(Parser)]
#[command(name = "picfuzz", version, about = "Picture fuzzy aggregation, ranking and closure auditing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the alternatives of a decision problem.
    Rank {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Rank at evenly spaced values of the family parameter.
    Sweep {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_negative_numbers = true)]
        gamma_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma_max: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Evaluate an operator and report whether each output is a PFN.
    CheckClosure {
        #[arg(long)]
        operator: String,
        /// Run the bundled counterexample inputs.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        paper_examples: bool,
        /// Number of random inputs to evaluate.
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Walk through the bundled case study step by step.
    Demo,
}

#[derive(Args)]
struct ProblemArgs {
    /// JSON problem, or CSV matrix (`.csv`) with --criteria or --weights.
    /// Defaults to the bundled case study.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Criteria sidecar JSON for CSV input.
    #[arg(long, conflicts_with = "weights")]
    criteria: Option<PathBuf>,
    /// Comma-separated criterion weights for CSV input.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Comma-separated names of cost criteria for CSV input.
    #[arg(long, value_delimiter = ',', requires = "weights")]
    cost: Vec<String>,
    #[arg(long, default_value = "product")]
    tnorm: String,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    #[arg(long, default_value = "pfiwa")]
    op: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// A failure with the flag or file it concerns.
struct Failure {
    context: String,
    error: Error,
}

impl Failure {
    fn at(context: impl Into<String>) -> impl FnOnce(Error) -> Failure {
        let context = context.into();
        move |error| Failure { context, error }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Vec::new();
    let code = match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let code = if matches!(f.error, Error::Internal(_)) { 1 } else { 2 };
            let msg = f.error.to_string().replace('\n', " ");
            eprintln!("error: {}: {msg}", f.context);
            code
        }
    };
    if let Err(e) = io::stdout().lock().write_all(&out) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}

fn run(command: Command, out: &mut Vec<u8>) -> CliResult<u8> {
    match command {
        Command::Rank { problem, format } => {
            let (p, f, op) = resolve(&problem, None)?;
            let r = mcdm::evaluate(&p, &f, op).map_err(Failure::at("rank"))?;
            match format {
                Format::Csv => mcdm::write_ranking_csv(&r, &mut *out).map_err(Failure::at("output"))?,
                Format::Json => {
                    let text = serde_json::to_string_pretty(&r)
                        .map_err(|e| Failure { context: "output".into(), error: Error::Internal(e.to_string()) })?;
                    writeln!(out, "{text}").expect("writing to memory");
                }
            }
            Ok(0)
        }
        Command::Sweep { problem, gamma_min, gamma_max, steps } => {
            let (p, f, op) = resolve(&problem, Some(gamma_min))?;
            if steps < 2 {
                return Err(Failure {
                    context: "--steps".into(),
                    error: Error::InvalidParameter(format!("steps must be at least 2, got {steps}")),
                });
            }
            let t = mcdm::sweep_gamma(&p, &f, op, gamma_min, gamma_max, steps)
                .map_err(Failure::at("--gamma-min/--gamma-max"))?;
            mcdm::write_sweep_csv(&t, &mut *out).map_err(Failure::at("output"))?;
            Ok(0)
        }
        Command::CheckClosure { operator, paper_examples: fixtures, samples, seed } => {
            check_closure(&operator, fixtures, samples, seed, out)
        }
        Command::Demo => {
            demo(out);
            Ok(0)
        }
    }
}

/// Problem, family (from --tnorm/--gamma) and operator. A sweep only
/// needs the family name, so `sweep_from` stands in for a missing --gamma.
fn resolve(a: &ProblemArgs, sweep_from: Option<f64>) -> CliResult<(DecisionProblem, TnormFamily, AggregationOp)> {
    let op: AggregationOp = a.op.parse().map_err(Failure::at("--op"))?;
    let f = match (sweep_from, a.gamma) {
        (Some(_), _) if matches!(a.tnorm.as_str(), "product" | "piecewise") => {
            return Err(Failure {
                context: "--tnorm".into(),
                error: Error::InvalidParameter(format!("{} has no parameter to sweep", a.tnorm)),
            })
        }
        (Some(g), None) => TnormFamily::from_parts(&a.tnorm, Some(g)).map_err(Failure::at("--tnorm/--gamma-min"))?,
        (_, g) => TnormFamily::from_parts(&a.tnorm, g).map_err(Failure::at("--tnorm/--gamma"))?,
    };
    let p = match &a.input {
        None => DecisionProblem::case_study(),
        Some(path) => load_problem(path, a)?,
    };
    Ok((p, f, op))
}

fn read(path: &Path, flag: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        context: format!("{flag} {}", path.display()),
        error: Error::Parse(e.to_string()),
    })
}

fn load_problem(path: &Path, a: &ProblemArgs) -> CliResult<DecisionProblem> {
    let ctx = format!("--input {}", path.display());
    let text = read(path, "--input")?;
    let is_csv = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if !is_csv {
        return DecisionProblem::from_json(&text).map_err(Failure::at(ctx));
    }
    let criteria = match (&a.criteria, &a.weights) {
        (Some(sidecar), _) => {
            let raw = read(sidecar, "--criteria")?;
            let s: CriteriaSidecar = serde_json::from_str(&raw).map_err(|e| Failure {
                context: format!("--criteria {}", sidecar.display()),
                error: Error::Parse(e.to_string()),
            })?;
            s.criteria
        }
        (None, Some(weights)) => criteria_from_flags(&text, weights, &a.cost).map_err(Failure::at(ctx.clone()))?,
        (None, None) => {
            return Err(Failure {
                context: ctx,
                error: Error::InvalidParameter("CSV input needs --criteria or --weights".into()),
            })
        }
    };
    DecisionProblem::from_csv(text.as_bytes(), criteria).map_err(Failure::at(ctx))
}

/// Criterion names from the CSV header, weights and kinds from flags.
fn criteria_from_flags(text: &str, weights: &[f64], cost: &[String]) -> picfuzz::Result<Vec<Criterion>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    let names: Vec<String> =
        header.iter().filter_map(|h| h.strip_suffix("_mu")).map(str::to_string).collect();
    if names.len() != weights.len() {
        return Err(Error::InvalidParameter(format!(
            "--weights has {} values but the header names {} criteria",
            weights.len(),
            names.len()
        )));
    }
    if let Some(unknown) = cost.iter().find(|c| !names.contains(c)) {
        return Err(Error::InvalidParameter(format!("--cost names unknown criterion `{unknown}`")));
    }
    Ok(names
        .into_iter()
        .zip(weights)
        .map(|(name, &weight)| {
            let kind = if cost.contains(&name) { CriterionKind::Cost } else { CriterionKind::Benefit };
            Criterion { name, kind, weight }
        })
        .collect())
}

fn check_closure(
    operator: &str,
    fixtures: bool,
    samples: Option<usize>,
    seed: Option<u64>,
    out: &mut Vec<u8>,
) -> CliResult<u8> {
    let ctx = || format!("--operator {operator}");
    let inputs = if fixtures {
        paper_examples(operator).map_err(Failure::at(ctx()))?
    } else {
        let mut rng = seeded_rng(seed.expect("clap requires --seed with --samples"));
        let n = samples.expect("clap requires --samples without --paper-examples");
        (0..n).map(|_| random_inputs(operator, &mut rng)).collect::<picfuzz::Result<Vec<_>>>().map_err(Failure::at(ctx()))?
    };
    let reports = inputs
        .iter()
        .map(|i| closure_check(operator, i))
        .collect::<picfuzz::Result<Vec<ClosureReport>>>()
        .map_err(Failure::at(ctx()))?;
    write_closure_csv(&reports, &mut *out).map_err(Failure::at("output"))?;
    let ours = !legacy::is_legacy(operator);
    if let Some(bad) = reports.iter().find(|r| ours && !r.is_pfn) {
        return Err(Failure {
            context: ctx(),
            error: Error::Internal(format!("output {:?} is not a PFN for inputs {}", bad.output, bad.inputs)),
        });
    }
    Ok(0)
}

fn fmt_pfn(c: [f64; 3]) -> String {
    format!("<{:.4}, {:.4}, {:.4}>", c[0], c[1], c[2])
}

fn demo(out: &mut Vec<u8>) {
    let p = DecisionProblem::case_study();
    let f = TnormFamily::Product;
    let op = AggregationOp::Pfiwa;
    let mut s = String::new();
    let names: Vec<&str> = p.criteria().iter().map(|c| c.name.as_str()).collect();
    s.push_str("Decision matrix\n");
    s.push_str(&format!("{:<4}", ""));
    for n in &names {
        s.push_str(&format!("  {n:<24}"));
    }
    s.push('\n');
    for a in p.alternatives() {
        s.push_str(&format!("{:<4}", a.name));
        for r in &a.ratings {
            s.push_str(&format!("  {:<24}", fmt_pfn(r.components())));
        }
        s.push('\n');
    }
    let w: Vec<String> = p.weights().as_slice().iter().map(|w| format!("{w}")).collect();
    s.push_str(&format!("weights = ({})\n\n", w.join(", ")));

    s.push_str("Step 1: normalization\n");
    if p.is_normalized() {
        s.push_str("all criteria are benefit criteria; ratings are used as given\n\n");
    } else {
        s.push_str("cost-criterion ratings are replaced by their complements\n\n");
    }

    let aggregates = mcdm::aggregate(&mcdm::normalize(&p), &f, op).expect("bundled case study aggregates");
    s.push_str(&format!("Step 2: {} aggregates ({})\n", op.name().to_uppercase(), f));
    for (i, (_, x)) in aggregates.iter().enumerate() {
        let [mu, eta, nu] = x.components();
        s.push_str(&format!("r_{} = {:.4}, {:.4}, {:.4}\n", i + 1, mu, eta, nu));
    }
    s.push('\n');

    s.push_str("Step 3: scores\n");
    for (i, (_, x)) in aggregates.iter().enumerate() {
        s.push_str(&format!("S(r_{}) = {:.4}\n", i + 1, x.score()));
    }
    s.push('\n');

    let ranked = mcdm::rank(&aggregates).expect("non-empty case study");
    let line: Vec<&str> = ranked.iter().map(|r| r.name.as_str()).collect();
    s.push_str("Step 4: ranking\n");
    s.push_str(&line.join(" > "));
    s.push('\n');
    out.extend_from_slice(s.as_bytes());
}
