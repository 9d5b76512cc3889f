use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use depthctl::commands::{
    depth_summary, exit_code_for, lambda_summary, run_att, run_depth, run_fdim, run_indep,
    run_lambda,
};
use depthctl::gen::Profile;
use depthctl::input::parse_input;
use depthctl::verify::verify_corpus;
use depthctl_core::error::Error;

/// Exact depth, finiteness-dimension and attached-prime computations for
/// modules over quotients of polynomial rings.
#[derive(Parser)]
#[command(name = "depthctl", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of an ideal on a module, by the prime-set formula or an oracle
    Depth {
        /// Input program file
        #[arg(short = 'f', long = "file")]
        file: String,
        /// Module name
        #[arg(short = 'M')]
        module: String,
        /// Ideal name
        #[arg(short = 'I')]
        ideal: String,
        /// formula | koszul | ext | all
        #[arg(long, default_value = "formula")]
        method: String,
        /// Emit JSON instead of a summary line
        #[arg(long)]
        json: bool,
    },
    /// The finite prime set of a module over S/J
    Lambda {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[arg(short = 'M')]
        module: String,
        /// Name of the quotient ideal J
        #[arg(short = 'J')]
        quotient: String,
        #[arg(long)]
        json: bool,
    },
    /// Finiteness dimension at a rational point
    Fdim {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[arg(short = 'M')]
        module: String,
        #[arg(short = 'I')]
        ideal: String,
        /// Comma-separated coordinates a1,...,an
        #[arg(long)]
        point: Option<String>,
        /// Minimum over the whole prime set off V(I), ignoring the point
        #[arg(long = "experimental-global")]
        experimental_global: bool,
    },
    /// Minimal attached primes of the i-th local cohomology at a point
    Att {
        #[arg(short = 'f', long = "file")]
        file: String,
        #[arg(short = 'M')]
        module: String,
        #[arg(long)]
        point: String,
        #[arg(short = 'i')]
        index: usize,
    },
    /// Compare prime sets across two presentations through a ring map
    Indep {
        #[arg(short = 'f', long = "file")]
        file: String,
        /// Second program file
        #[arg(short = 'g', long = "other")]
        other: String,
        /// Map name (declared in the first file, source variables from the second)
        #[arg(long = "map")]
        map: String,
        #[arg(short = 'M')]
        module: String,
        /// Module name in the second file
        #[arg(short = 'N')]
        other_module: String,
    },
    /// Run the randomized verification corpus
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// monomial-QQ | monomial-GFp | general-GFp
        #[arg(long, default_value = "monomial-QQ")]
        profile: String,
        /// Write the JSON report to this path
        #[arg(long)]
        report: Option<String>,
    },
}

fn read_program(path: &str) -> Result<depthctl::input::InputProgram, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::SyntaxError { line: 0, col: 0, msg: format!("cannot read {path}: {e}") })?;
    parse_input(&text)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Depth { file, module, ideal, method, json } => {
            let program = read_program(&file)?;
            let out = run_depth(&program, &module, &ideal, &method)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                println!("{}", depth_summary(&out));
            }
        }
        Command::Lambda { file, module, quotient, json } => {
            let program = read_program(&file)?;
            let out = run_lambda(&program, &module, &quotient)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                print!("{}", lambda_summary(&out));
            }
        }
        Command::Fdim { file, module, ideal, point, experimental_global } => {
            let program = read_program(&file)?;
            let out = run_fdim(&program, &module, &ideal, point.as_deref(), experimental_global)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Command::Att { file, module, point, index } => {
            let program = read_program(&file)?;
            let out = run_att(&program, &module, &point, index)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Command::Indep { file, other, map, module, other_module } => {
            let program = read_program(&file)?;
            let second = read_program(&other)?;
            let out = run_indep(&program, &second, &map, &module, &other_module)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        }
        Command::Verify { seed, count, profile, report } => {
            let seed = match std::env::var("DEPTHCTL_SEED") {
                Ok(v) => v.parse::<u64>().map_err(|_| Error::SyntaxError {
                    line: 0,
                    col: 0,
                    msg: format!("DEPTHCTL_SEED is not an integer: {v}"),
                })?,
                Err(_) => seed,
            };
            let profile = Profile::parse(&profile).ok_or_else(|| Error::SyntaxError {
                line: 0,
                col: 0,
                msg: format!("unknown profile `{profile}`"),
            })?;
            let out = verify_corpus(seed, count, profile)?;
            let rendered = serde_json::to_string_pretty(&out).expect("serializable");
            if let Some(path) = report {
                std::fs::write(&path, format!("{rendered}\n")).map_err(|e| {
                    Error::SyntaxError { line: 0, col: 0, msg: format!("cannot write {path}: {e}") }
                })?;
            }
            println!(
                "verify: profile {} seed {} count {}: {}",
                out.profile,
                out.seed,
                out.count,
                if out.pass { "PASS" } else { "FAIL" }
            );
            for inst in &out.instances {
                if !inst.pass {
                    println!(
                        "  instance {} (seed {}): agree={} ineq={} fdim={} indep={} err={:?}",
                        inst.index,
                        inst.seed,
                        inst.three_way_agree,
                        inst.inequality_ok,
                        inst.fdim_ok,
                        inst.independence_ok,
                        inst.error
                    );
                }
            }
            if !out.pass {
                // report written; nonzero exit signals the failure
                return Err(Error::Internal("verification corpus failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = catch_unwind(AssertUnwindSafe(|| run(cli)));
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e) as u8)
        }
        Err(_) => {
            eprintln!("error: internal panic");
            ExitCode::from(3)
        }
    }
}
