mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use polymer_core::export::Manifest;
use polymer_core::Error;

use args::{Cli, Format};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Bracket { .. } | Error::NoConvergence { .. } => 2,
        Error::ResourceCap { .. } => 3,
        Error::Io(_) | Error::Json(_) | Error::ThreadPool(_) => 1,
    }
}

fn execute(cli: &Cli) -> polymer_core::Result<Vec<String>> {
    let report = commands::run(&cli.command, &cli.global)?;
    let parameters = serde_json::to_value(&cli.command)?;
    let name = parameters.as_object().and_then(|o| o.keys().next().cloned()).unwrap_or_default();
    let mut manifest = Manifest::new(&name, serde_json::json!({ "command": parameters, "options": &cli.global }));
    manifest.warnings = report.warnings.clone();

    let render = |table: &polymer_core::export::Table| match cli.global.format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => table.to_json(),
    };
    match &cli.global.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for (table_name, table) in &report.tables {
                let file = format!("{table_name}.{}", cli.global.format.extension());
                std::fs::write(dir.join(&file), render(table)?)?;
                manifest.outputs.push(file);
            }
            std::fs::write(dir.join("manifest.json"), manifest.to_json()? + "\n")?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let several = report.tables.len() > 1;
            for (table_name, table) in &report.tables {
                if several {
                    writeln!(stdout, "# {table_name}")?;
                }
                stdout.write_all(render(table)?.as_bytes())?;
                manifest.outputs.push(table_name.clone());
            }
            eprintln!("{}", manifest.to_json()?);
        }
    }
    Ok(report.warnings)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(warnings) => {
            for w in warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
