use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use irr_core::frontend::{run_file, Flags};

/// Checks vernacular files against the kernel.
#[derive(Parser, Debug)]
#[command(name = "irr", version, about)]
struct Cli {
    /// Files to check, in order; each starts from an empty signature.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Reduction steps allowed per conversion problem.
    #[arg(long, default_value_t = 100_000)]
    fuel: u64,
    /// Add η to conversion.
    #[arg(long)]
    eta: bool,
    /// Collapse pairs and first projections of Σ* in conversion.
    #[arg(long = "singleton-simpl")]
    singleton_simpl: bool,
    /// Allow `propdata` declarations.
    #[arg(long)]
    propdata: bool,
    /// Rank bound of the finite model.
    #[arg(long = "model-bound", default_value_t = 3)]
    model_bound: usize,
    /// Continue after errors.
    #[arg(long = "keep-going")]
    keep_going: bool,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Flags {
        fuel: cli.fuel,
        eta: cli.eta,
        singleton: cli.singleton_simpl,
        propdata: cli.propdata,
        model_bound: cli.model_bound,
        keep_going: cli.keep_going,
    };
    let mut code = 0;
    for path in &cli.files {
        let report = match run_file(path, &flags) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("irr: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        };
        if cli.json {
            println!("{}", report.json());
        } else {
            print!("{}", report.text());
        }
        if code == 0 {
            code = report.exit_code;
        }
        if code != 0 && !flags.keep_going {
            break;
        }
    }
    ExitCode::from(code as u8)
}
