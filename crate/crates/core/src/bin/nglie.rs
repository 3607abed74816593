//! `nglie`: construct algebras from spec files, evaluate brackets, run law
//! suites, export structure constants and apply lattice isomorphisms.
//!
//! Exit codes: 0 success or pass, 1 verification failure, 2 spec violation,
//! 3 usage or parse error, 4 I/O error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nglie::family::{Family, WindowSpec};
use nglie::grpalg::Budget;
use nglie::verify::TrialConfig;
use nglie::{iso, specfile, Error};

const PASS: u8 = 0;
const FAIL: u8 = 1;
const VIOLATION: u8 = 2;
const USAGE: u8 = 3;
const IO: u8 = 4;

#[derive(Parser)]
#[command(name = "nglie", version, about = "Exact nongraded Lie algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a spec file and print a summary.
    Construct { spec: PathBuf },
    /// Print the canonical bracket of two elements.
    Bracket {
        spec: PathBuf,
        left: String,
        right: String,
    },
    /// Run a seeded law check and print the JSON report.
    Verify {
        spec: PathBuf,
        law: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Maximum number of terms per sampled element.
        #[arg(long, default_value_t = 6)]
        max_terms: usize,
        /// Maximum exponent on ℕ coordinates.
        #[arg(long, default_value_t = 3)]
        max_exp: u32,
        /// Bound on the integer coefficients of Γ generators.
        #[arg(long, default_value_t = 3)]
        gen_bound: i64,
        /// Bound on numerators and denominators of coefficients.
        #[arg(long, default_value_t = 3)]
        coeff_bound: i64,
    },
    /// Write structure constants over a finite monomial window as JSON.
    ExportSc {
        spec: PathBuf,
        /// Bound on the integer coefficients of Γ generators.
        #[arg(long, default_value_t = 1)]
        gen_bound: i64,
        /// Bound on exponents of ℕ coordinates.
        #[arg(long, default_value_t = 1)]
        nat_bound: u32,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Apply a group element to a lattice, optionally comparing with another.
    IsoAct {
        group: PathBuf,
        gamma: PathBuf,
        target: Option<PathBuf>,
    },
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) => IO,
        _ => USAGE,
    }
}

fn fail(e: &Error) -> u8 {
    eprintln!("error: {e}");
    code_for(e)
}

/// Loads a spec and refuses to continue when it violates its side
/// conditions.
fn load_valid(path: &Path) -> Result<Family, u8> {
    let fam = specfile::load(path).map_err(|e| fail(&e))?;
    let violations = fam.validate();
    if violations.is_empty() {
        Ok(fam)
    } else {
        for v in &violations {
            eprintln!("violation {}: {}", v.code, v.message);
        }
        Err(VIOLATION)
    }
}

fn read(path: &Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| fail(&Error::Io(e)))
}

fn run(cmd: Command) -> Result<u8, u8> {
    match cmd {
        Command::Construct { spec } => {
            let fam = specfile::load(&spec).map_err(|e| fail(&e))?;
            print!("{}", fam.summary());
            Ok(if fam.validate().is_empty() { PASS } else { VIOLATION })
        }
        Command::Bracket { spec, left, right } => {
            let fam = load_valid(&spec)?;
            println!("{}", fam.bracket_text(&left, &right).map_err(|e| fail(&e))?);
            Ok(PASS)
        }
        Command::Verify {
            spec,
            law,
            seed,
            trials,
            max_terms,
            max_exp,
            gen_bound,
            coeff_bound,
        } => {
            let fam = load_valid(&spec)?;
            let budget = Budget {
                max_terms,
                max_nat_exponent: max_exp,
                generator_coeff_bound: gen_bound,
                coeff_bound,
            };
            let cfg = TrialConfig::new(seed, trials).with_budget(budget);
            let report = fam.verify(&law, &cfg).map_err(|e| fail(&e))?;
            println!("{}", report.to_json());
            Ok(if report.passed { PASS } else { FAIL })
        }
        Command::ExportSc {
            spec,
            gen_bound,
            nat_bound,
            out,
        } => {
            let fam = load_valid(&spec)?;
            let window = WindowSpec {
                coeff_bound: gen_bound,
                nat_bound,
            };
            let sc = fam.export_sc(window).map_err(|e| fail(&e))?;
            std::fs::write(&out, sc.to_json()).map_err(|e| fail(&Error::Io(e)))?;
            Ok(PASS)
        }
        Command::IsoAct {
            group,
            gamma,
            target,
        } => {
            let g = iso::parse_group(&read(&group)?).map_err(|e| match e {
                Error::Shape(_) | Error::Singular(_) => {
                    eprintln!("error: {e}");
                    VIOLATION
                }
                other => fail(&other),
            })?;
            let lattice = iso::parse_lattice(&read(&gamma)?).map_err(|e| fail(&e))?;
            let target = match &target {
                Some(p) => Some(iso::parse_lattice(&read(p)?).map_err(|e| fail(&e))?),
                None => None,
            };
            let report = iso::iso_act(&g, &lattice, target.as_ref()).map_err(|e| fail(&e))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("reports always serialize")
            );
            Ok(PASS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    match run(cli.command) {
        Ok(code) | Err(code) => ExitCode::from(code),
    }
}
