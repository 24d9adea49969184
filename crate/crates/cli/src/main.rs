//! `lemh`: heights of integer polynomials over lemniscates `|V(z)| = r`.
//!
//! Reports are JSON on stdout (CSV for `trace`); failures are a JSON object
//! `{code, message, context}` on stderr with a status grouped by error kind.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lemniscate_heights::coeffbox::{Progress, ProgressSink};
use lemniscate_heights::heights::{lemniscate_json, subordination_check, HeightOptions, HeightReport, PValue};
use lemniscate_heights::lemniscate::{trace, Lemniscate, TraceWarning};
use lemniscate_heights::numbertheory::{
    enumerate_conjugate_sets, kronecker_classify, lehmer_scan, lift_measure_identity, no_sets_below_one,
};
use lemniscate_heights::numeric::parse_rational;
use lemniscate_heights::search::{verify_uniqueness, SearchSpec};
use lemniscate_heights::{Config, Error, IntPolynomial};
use serde_json::{json, Value};

const LEHMER: &str = "z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1";

#[derive(Parser, Debug)]
#[command(name = "lemh", version, about = "Polynomial heights over lemniscates")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Quadrature nodes (power of two).
    #[arg(long, global = true, default_value_t = Config::default().n_nodes)]
    n_nodes: usize,
    /// Curve / sup-norm grid size.
    #[arg(long, global = true, default_value_t = Config::default().n_theta)]
    n_theta: usize,
    /// Largest cyclotomic index tried.
    #[arg(long, global = true, default_value_t = Config::default().max_index)]
    max_index: u64,
    /// Candidate cap for scans.
    #[arg(long, global = true, default_value_t = Config::default().scan_cap)]
    scan_cap: u128,
    /// Candidate cap for minimal-height searches.
    #[arg(long, global = true, default_value_t = Config::default().search_cap)]
    search_cap: u128,
    /// Largest degree handed to integer factorization.
    #[arg(long, global = true, default_value_t = Config::default().factor_degree_cap)]
    factor_cap: usize,
    /// Emit progress records as JSON lines on stderr.
    #[arg(long, global = true)]
    progress: bool,
}

impl Global {
    fn config(&self) -> Config {
        Config {
            n_nodes: self.n_nodes,
            n_theta: self.n_theta,
            max_index: self.max_index,
            scan_cap: self.scan_cap,
            search_cap: self.search_cap,
            factor_degree_cap: self.factor_cap,
            ..Config::default()
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Curve {
    /// Integer polynomial V, e.g. "z^2-2".
    #[arg(short = 'V', long = "poly-v", default_value = "z")]
    v: String,
    /// Level r as a decimal or "p/q".
    #[arg(short = 'r', long, default_value = "1")]
    r: String,
}

impl Curve {
    fn build(&self) -> Result<Lemniscate, Error> {
        Lemniscate::new(parse_poly(&self.v)?, parse_rational(&self.r)?)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All heights of P over L.
    Measure {
        #[command(flatten)]
        curve: Curve,
        #[arg(short = 'P', long = "poly", default_value = LEHMER)]
        p: String,
        /// Exponents, comma separated ("inf" for the sup norm).
        #[arg(short = 'p', long = "exponents", value_delimiter = ',', default_value = "0,1,2,inf")]
        exponents: Vec<String>,
    },
    /// Chain and monotonicity check of the L_p family.
    Norms {
        #[command(flatten)]
        curve: Curve,
        #[arg(short = 'P', long = "poly", default_value = LEHMER)]
        p: String,
        /// Finite positive exponents, comma separated.
        #[arg(
            short = 'p',
            long = "exponents",
            value_delimiter = ',',
            default_value = "0.5,1,2,4,8"
        )]
        exponents: Vec<f64>,
    },
    /// Export the curve as CSV (component_id,theta,re,im).
    Trace {
        #[command(flatten)]
        curve: Curve,
        /// Grid size (overrides --n-theta).
        #[arg(short = 'n', long)]
        n: Option<usize>,
        /// CSV destination; stdout when absent. With a file, a JSON summary
        /// goes to stdout.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Minimal height in a coefficient box, checked against the prediction.
    SearchMin {
        #[command(flatten)]
        curve: Curve,
        #[arg(short = 'k', long, default_value_t = 1)]
        k: usize,
        #[arg(short = 'p', long = "exponent", default_value = "0")]
        p: String,
        #[arg(short = 'B', long, default_value_t = 2)]
        coeff_bound: u64,
        /// Evaluate every candidate.
        #[arg(long)]
        no_prune: bool,
    },
    /// Conjugate sets of algebraic integers on L, or the emptiness scan.
    AlgInts {
        #[command(flatten)]
        curve: Curve,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Scan a coefficient box for complete conjugate sets instead.
        #[arg(long)]
        emptiness: bool,
        #[arg(short = 'B', long, default_value_t = 4)]
        coeff_bound: u64,
    },
    /// Lift identity for Q, or the smallest-height scan.
    Lehmer {
        #[command(flatten)]
        curve: Curve,
        /// Check M_L(Q o V) = M(Q) for this Q instead of scanning.
        #[arg(short = 'Q', long)]
        q: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        #[arg(short = 'B', long, default_value_t = 1)]
        coeff_bound: u64,
        #[arg(long, default_value_t = 1e-6)]
        gap: f64,
    },
    /// Unit-height classification of a monic irreducible P.
    Classify {
        #[command(flatten)]
        curve: Curve,
        #[arg(short = 'P', long = "poly", default_value = "z^2+z+1")]
        p: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Measure { .. } => "measure",
            Command::Norms { .. } => "norms",
            Command::Trace { .. } => "trace",
            Command::SearchMin { .. } => "search-min",
            Command::AlgInts { .. } => "alg-ints",
            Command::Lehmer { .. } => "lehmer",
            Command::Classify { .. } => "classify",
        }
    }
}

/// Either a library error or an I/O failure while writing output.
enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::ZeroPolynomial
        | Error::Degenerate(_)
        | Error::SingularIntegrand { .. }
        | Error::StepTooCoarse { .. } => 2,
        Error::HypothesisViolation(_) => 3,
        Error::ResourceCap { .. } | Error::IndexExhausted { .. } => 4,
        Error::NonConvergence { .. } => 1,
    }
}

fn parse_poly(s: &str) -> Result<IntPolynomial, Error> {
    s.parse()
}

fn emit(v: &Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)
}

fn run(cmd: &Command, cfg: &Config, progress: bool) -> Result<(), Failure> {
    let opts = HeightOptions {
        n_nodes: cfg.n_nodes,
        n_theta: cfg.n_theta,
    };
    let mut printer = |p: &Progress| eprintln!("{}", p.to_json());
    let sink: ProgressSink<'_> = if progress { Some(&mut printer) } else { None };
    match cmd {
        Command::Measure { curve, p, exponents } => {
            let lm = curve.build()?;
            let exps = exponents
                .iter()
                .map(|e| e.parse())
                .collect::<Result<Vec<PValue>, _>>()?;
            let report = HeightReport::compute(&parse_poly(p)?, &lm, &exps, &opts)?;
            emit(&report.to_json())?;
        }
        Command::Norms { curve, p, exponents } => {
            let lm = curve.build()?;
            let poly = parse_poly(p)?;
            let report = subordination_check(&poly, &lm, exponents, &opts)?;
            let mut j = report.to_json();
            j["polynomial"] = json!(poly.to_string());
            j["lemniscate"] = lemniscate_json(&lm);
            j["holds"] = json!(report.holds());
            emit(&j)?;
        }
        Command::Trace { curve, n, output } => {
            let lm = curve.build()?;
            let n_theta = n.unwrap_or(cfg.n_theta);
            let tr = trace(&lm, n_theta)?;
            match output {
                None => {
                    let mut out = BufWriter::new(io::stdout().lock());
                    tr.write_csv(&mut out)?;
                    out.flush()?;
                }
                Some(path) => {
                    let mut out = BufWriter::new(File::create(path)?);
                    tr.write_csv(&mut out)?;
                    out.flush()?;
                    let warnings: Vec<String> = tr
                        .warnings
                        .iter()
                        .map(|w| match w {
                            TraceWarning::NearCritical { point } => {
                                format!("critical value near the level at {point}")
                            }
                            TraceWarning::BranchCollision { node, distance } => {
                                format!("branches within {distance:e} at node {node}")
                            }
                        })
                        .collect();
                    emit(&json!({
                        "lemniscate": lemniscate_json(&lm),
                        "n_theta": n_theta,
                        "components": tr.components.len(),
                        "points": tr.components.iter().map(|c| c.points.len()).sum::<usize>(),
                        "monodromy": tr.monodromy,
                        "warnings": warnings,
                        "output": path.display().to_string(),
                    }))?;
                }
            }
        }
        Command::SearchMin {
            curve,
            k,
            p,
            coeff_bound,
            no_prune,
        } => {
            let spec = SearchSpec {
                lemniscate: curve.build()?,
                k: *k,
                p: p.parse()?,
                coeff_bound: *coeff_bound,
                prune: !no_prune,
            };
            emit(&verify_uniqueness(&spec, cfg, sink)?.to_json())?;
        }
        Command::AlgInts {
            curve,
            max_degree,
            emptiness,
            coeff_bound,
        } => {
            let lm = curve.build()?;
            let j = if *emptiness {
                no_sets_below_one(&lm, *coeff_bound, *max_degree, cfg.scan_cap, sink)?.to_json()
            } else {
                enumerate_conjugate_sets(&lm, cfg.max_index, *max_degree, cfg.factor_degree_cap)?.to_json()
            };
            emit(&j)?;
        }
        Command::Lehmer {
            curve,
            q,
            max_degree,
            coeff_bound,
            gap,
        } => {
            let lm = curve.build()?;
            let j = match q {
                Some(q) => {
                    let q = parse_poly(q)?;
                    let mut j = lift_measure_identity(&q, &lm)?.to_json();
                    j["Q"] = json!(q.to_string());
                    j["lemniscate"] = lemniscate_json(&lm);
                    j
                }
                None => lehmer_scan(&lm, *max_degree, *coeff_bound, *gap, cfg.scan_cap, sink)?.to_json(),
            };
            emit(&j)?;
        }
        Command::Classify { curve, p } => {
            let lm = curve.build()?;
            emit(&kronecker_classify(&parse_poly(p)?, &lm, cfg.max_index)?.to_json())?;
        }
    }
    Ok(())
}

fn report_error(code: &str, message: String, context: Value) {
    let j = json!({"code": code, "message": message, "context": context});
    eprintln!("{j}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report_error("usage", e.render().to_string().trim_end().to_string(), json!({}));
            return ExitCode::from(2);
        }
    };
    if let Some(n) = cli.global.threads {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            report_error(
                "invalid_input",
                format!("cannot start {n} worker threads"),
                json!({"threads": n}),
            );
            return ExitCode::from(2);
        }
    }
    let cfg = cli.global.config();
    match run(&cli.command, &cfg, cli.global.progress) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            let status = exit_status(&e);
            report_error(
                e.kind(),
                e.to_string(),
                json!({"subcommand": cli.command.name(), "exit_status": status}),
            );
            ExitCode::from(status)
        }
        Err(Failure::Io(e)) => {
            report_error("io", e.to_string(), json!({"subcommand": cli.command.name()}));
            ExitCode::from(1)
        }
    }
}
