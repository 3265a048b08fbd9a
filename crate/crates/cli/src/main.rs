mod args;
mod commands;
mod output;
mod svg;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pcoulomb::BigFloat;

use args::{Cli, Command, Format};
use commands::{CliError, Outcome, EXIT_INPUT};

/// Runs `$body` with `$T` bound to the smallest supported float of at least
/// `$bits` bits.
macro_rules! with_precision {
    ($bits:expr, $T:ident => $body:expr) => {
        match $bits {
            64 => { type $T = BigFloat<64>; $body }
            65..=128 => { type $T = BigFloat<128>; $body }
            129..=256 => { type $T = BigFloat<256>; $body }
            257..=512 => { type $T = BigFloat<512>; $body }
            513..=1024 => { type $T = BigFloat<1024>; $body }
            other => Err(CliError::Input(format!("--precision-bits must lie in [64, 1024], got {other}"))),
        }
    };
}

fn run(cli: &Cli, format: Format) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if format == Format::Svg && !matches!(cli.command, Command::Scan(_)) {
        return Err(CliError::Input("--format svg is only available for scan".into()));
    }
    match &cli.command {
        Command::Exact(a) => with_precision!(g.precision_bits, T => commands::exact::<T>(a, g)),
        Command::Rpm(a) => with_precision!(g.precision_bits, T => commands::rpm::<T>(a, g)),
        Command::Scan(a) => with_precision!(g.precision_bits, T => commands::scan::<T>(a, g, format == Format::Svg)),
        Command::Check(a) => with_precision!(g.precision_bits, T => commands::check::<T>(a, g)),
        Command::Units(a) => {
            if !(64..=1024).contains(&g.precision_bits) {
                return Err(CliError::Input(format!("--precision-bits must lie in [64, 1024], got {}", g.precision_bits)));
            }
            commands::units(a, g)
        }
    }
}

fn render(outcome: &Outcome, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            output::write_csv(&outcome.doc, &mut buf).expect("writing to memory");
            buf
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&output::to_json(&outcome.doc)).expect("serialising json");
            s.push('\n');
            s.into_bytes()
        }
        Format::Svg => outcome.doc.svg.clone().unwrap_or_default().into_bytes(),
    }
}

fn emit(cli: &Cli, bytes: &[u8]) -> std::io::Result<()> {
    match &cli.global.output {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().lock().write_all(bytes),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.global.format.unwrap_or(match cli.command {
        Command::Check(_) => Format::Json,
        _ => Format::Csv,
    });
    let result = run(&cli, format);
    let code = match result {
        Ok(outcome) => {
            for w in &outcome.doc.warnings {
                eprintln!("warning: {w}");
            }
            match emit(&cli, &render(&outcome, format)) {
                Ok(()) => outcome.status,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let code = e.code();
            if format == Format::Json {
                let mut s = serde_json::to_string_pretty(&output::error_json(code, &e.to_string())).expect("serialising json");
                s.push('\n');
                let _ = emit(&cli, s.as_bytes());
            }
            eprintln!("error: {e}");
            code
        }
    };
    ExitCode::from(code)
}
