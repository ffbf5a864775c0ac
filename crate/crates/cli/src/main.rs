use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use kerr4ls::{run, CliError, Command, ConfigFile, Format, RunConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Spectrum,
    Kerr,
    Sweep,
    Evolve,
    Converge,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Dressed-state spectra, perturbation theory and cross-Kerr coupling of the
/// four-level N-scheme atom.
#[derive(Parser, Debug)]
#[command(name = "kerr4ls", version)]
struct Cli {
    command: CommandArg,

    /// JSON configuration file, or `-` for standard input.
    #[arg(long)]
    config: String,

    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Defaults to json for `kerr`, csv otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let text = if cli.config == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&cli.config)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", cli.config)))?
    };
    let command = match cli.command {
        CommandArg::Spectrum => Command::Spectrum,
        CommandArg::Kerr => Command::Kerr,
        CommandArg::Sweep => Command::Sweep,
        CommandArg::Evolve => Command::Evolve,
        CommandArg::Converge => Command::Converge,
    };
    let format = cli.format.map(|f| match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    });
    let config = RunConfig::new(command, ConfigFile::from_json(&text)?, format);
    let rendered = run(&config)?.render(config.format);
    match &cli.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
