use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use postulate_sim::{emit_report, exit, exit_code, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    let report = RunConfig::from_cli(&cli).and_then(|(config, warnings)| {
        for w in warnings {
            eprintln!("warning: {w}");
        }
        run(&config)
    });
    match report {
        Ok(report) => {
            let bytes = emit_report(&report, cli.common.format);
            if let Err(e) = std::io::stdout().lock().write_all(&bytes) {
                eprintln!("error: {e}");
                return ExitCode::from(exit::USAGE);
            }
            ExitCode::from(exit_code(&report))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::USAGE)
        }
    }
}
