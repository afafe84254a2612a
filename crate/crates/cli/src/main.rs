use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use moddeg_core::curve::{self, Invariants, RootData};
use moddeg_core::json;
use moddeg_core::periods::{self, PeriodData};
use moddeg_core::report::{self, CmMode, ProcessOptions};
use moddeg_core::suite;
use moddeg_core::Error;

#[derive(Parser)]
#[command(
    name = "moddeg",
    version,
    about = "Certified lower bounds for modular degrees of elliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, periods and the period lower bound of one Weierstrass model.
    Invariants {
        /// Coefficients a1,a2,a3,a4,a6.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 1..)]
        a: Vec<String>,
    },
    /// Degree-bound reports for a JSONL file of curve records.
    Bound {
        /// Input JSONL, or `-` for stdin.
        #[arg(long)]
        input: PathBuf,
        /// Output JSONL, or `-` for stdout.
        #[arg(long)]
        output: PathBuf,
        /// Symmetric-square conductor to use for every record.
        #[arg(long)]
        n2: Option<u128>,
        #[arg(long, default_value = "auto", value_parser = ["auto", "cm", "noncm"])]
        assume_cm: String,
        /// Also print a truncated Euler product for L(Sym^2 E, 1) over primes up to this cutoff.
        #[arg(long)]
        estimate_primes: Option<u64>,
        /// Worker threads (default: all cores). Output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Runs every constant certification and prints the waypoints.
    VerifyLemmas {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 142)]
        n2: u128,
    },
}

/// Exit statuses.
const OK: u8 = 0;
const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;

#[derive(Serialize)]
struct InvariantsOutput {
    a: Vec<Value>,
    #[serde(flatten)]
    invariants: Invariants,
    cm_discriminant: Option<i64>,
    roots: RootData,
    periods: PeriodData,
    case_tag: periods::PeriodCase,
    inv_omega: f64,
    lemma1_rhs: f64,
    lemma1_margin: f64,
    lemma1_ok: bool,
}

fn exact(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if v.unsigned_abs() <= 1 << 53 => v.into(),
        _ => x.to_string().into(),
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn invariants(a: &[String]) -> ExitCode {
    let parsed: Result<Vec<BigInt>, _> = a.iter().map(|s| s.trim().parse::<BigInt>()).collect();
    let a: [BigInt; 5] = match parsed {
        Ok(v) if v.len() == 5 => v.try_into().expect("length checked"),
        Ok(v) => {
            return fail(
                BAD_INPUT,
                format!("expected 5 coefficients, got {}", v.len()),
            )
        }
        Err(e) => return fail(BAD_INPUT, format!("bad coefficient: {e}")),
    };
    let run = || -> moddeg_core::Result<InvariantsOutput> {
        let inv = Invariants::from_a(&a)?;
        let roots = curve::two_torsion_roots(&inv)?;
        let l1 = periods::lemma1_check(&inv)?;
        Ok(InvariantsOutput {
            cm_discriminant: curve::cm_discriminant(&inv),
            a: a.iter().map(exact).collect(),
            invariants: inv,
            roots,
            periods: l1.periods,
            case_tag: l1.periods.case_tag,
            inv_omega: l1.inv_omega,
            lemma1_rhs: l1.rhs,
            lemma1_margin: l1.margin,
            lemma1_ok: l1.ok,
        })
    };
    match run() {
        Ok(out) => {
            println!("{}", json::to_line(&out).expect("serializable"));
            ExitCode::from(if out.lemma1_ok { OK } else { FAILED })
        }
        Err(e @ (Error::SingularCurve | Error::Input(_))) => fail(BAD_INPUT, e),
        Err(e) => fail(FAILED, e),
    }
}

fn read_input(path: &PathBuf) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn open_output(path: &PathBuf) -> io::Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(fs::File::create(path)?)))
    }
}

/// One output line per non-blank input line, plus the line's status.
enum Outcome {
    Report { line: String, consistent: bool },
    Error(String),
}

fn bound(input: &PathBuf, output: &PathBuf, opts: ProcessOptions, jobs: Option<usize>) -> ExitCode {
    let text = match read_input(input) {
        Ok(t) => t,
        Err(e) => return fail(BAD_INPUT, format!("{}: {e}", input.display())),
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    let work = || -> Vec<Outcome> {
        lines
            .par_iter()
            .map(|&(no, l)| match report::process_line(no, l, &opts) {
                Ok(r) => Outcome::Report {
                    line: json::to_line(&r).expect("serializable"),
                    consistent: r.consistency_ok != Some(false),
                },
                Err(e) => Outcome::Error(json::to_line(&e).expect("serializable")),
            })
            .collect()
    };
    let outcomes = match jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(work),
            Err(e) => return fail(BAD_INPUT, e),
        },
        None => work(),
    };

    let mut out = match open_output(output) {
        Ok(w) => w,
        Err(e) => return fail(BAD_INPUT, format!("{}: {e}", output.display())),
    };
    let (mut inconsistent, mut malformed) = (0usize, 0usize);
    for o in &outcomes {
        let line = match o {
            Outcome::Report { line, consistent } => {
                inconsistent += usize::from(!consistent);
                line
            }
            Outcome::Error(line) => {
                malformed += 1;
                eprintln!("error: {line}");
                line
            }
        };
        if let Err(e) = writeln!(out, "{line}") {
            return fail(BAD_INPUT, format!("{}: {e}", output.display()));
        }
    }
    if let Err(e) = out.flush() {
        return fail(BAD_INPUT, format!("{}: {e}", output.display()));
    }
    if inconsistent > 0 {
        eprintln!("{inconsistent} record(s) have a certified bound above the known degree");
        ExitCode::from(FAILED)
    } else if malformed > 0 {
        ExitCode::from(BAD_INPUT)
    } else {
        ExitCode::from(OK)
    }
}

fn verify_lemmas(as_json: bool, n2: u128) -> ExitCode {
    let r = suite::run_verification(n2);
    if as_json {
        println!("{}", json::to_line(&r).expect("serializable"));
    } else {
        print!("{}", r.render());
    }
    ExitCode::from(if r.overall_pass { OK } else { FAILED })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { BAD_INPUT } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Invariants { a } => invariants(&a),
        Command::Bound {
            input,
            output,
            n2,
            assume_cm,
            estimate_primes,
            jobs,
        } => {
            let cm_mode: CmMode = assume_cm.parse().expect("restricted by clap");
            let opts = ProcessOptions {
                n2_override: n2,
                cm_mode,
                estimate_cutoff: estimate_primes,
            };
            bound(&input, &output, opts, jobs)
        }
        Command::VerifyLemmas { json, n2 } => verify_lemmas(json, n2),
    }
}
