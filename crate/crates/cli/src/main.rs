mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use commands::Registry;
use error::{CliError, EXIT_MISMATCH};
use output::{render, write_atomic, Format};

fn run() -> Result<i32, CliError> {
    let registry = Registry::builtin();
    let matches = match registry.cli().try_get_matches() {
        Ok(m) => m,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return Ok(0);
        }
        Err(e) => return Err(CliError::Usage(e.to_string().trim_start_matches("error: ").to_string())),
    };
    let format = Format::parse(matches.get_one::<String>("format").unwrap()).expect("validated by clap");
    let output = matches.get_one::<String>("output").map(PathBuf::from);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(&jobs) = matches.get_one::<usize>("jobs") {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::Config(e.to_string()))?;

    let (name, sub) = matches.subcommand().expect("subcommand required");
    let report = pool.install(|| registry.get(name).expect("registered").run(sub))?;
    let text = render(&report, format)?;
    match output {
        Some(path) => write_atomic(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(if report.failures > 0 { EXIT_MISMATCH } else { 0 })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("torsion: {}", e.to_string().trim_end());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
