use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rhomotopy_cli::{report, run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout().lock();
    let written = match (cli.options.format, &output.table) {
        (Format::Csv, Some(table)) => table.write(stdout).map_err(|e| e.to_string()),
        _ => report::write_json_lines(&output.records, stdout).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(std::io::stderr(), "error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    if output.failed > 0 {
        eprintln!("verify: {} check(s) failed", output.failed);
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
