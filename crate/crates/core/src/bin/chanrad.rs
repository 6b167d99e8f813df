use std::io::Write;
use std::process::ExitCode;

use chanrad::config::{output_path, parse_config, ConfigError};
use chanrad::output::{emit, write_atomic};
use chanrad::Error;

fn main() -> ExitCode {
    let cfg = match parse_config(std::env::args_os(), None) {
        Ok(cfg) => cfg,
        Err(ConfigError::Cli(e)) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
        Err(e) => {
            eprintln!("chanrad: {e}");
            return ExitCode::from(2);
        }
    };
    let series = match chanrad::app::run(&cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("chanrad: {e}");
            return ExitCode::FAILURE;
        }
    };
    let bytes = emit(&series, &cfg);
    let written = match output_path(&cfg) {
        Some(path) => write_atomic(&path, &bytes),
        None => std::io::stdout().lock().write_all(&bytes).map_err(|source| Error::Io {
            path: "<stdout>".into(),
            source,
        }),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chanrad: {e}");
            ExitCode::FAILURE
        }
    }
}
