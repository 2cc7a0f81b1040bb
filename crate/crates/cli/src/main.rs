//! `quivermag`: Cartan matrices, Ext tables and magnitude of monomial
//! bound-quiver algebras from the command line.

mod commands;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use commands::{CliError, Output};

#[derive(Parser)]
#[command(name = "quivermag", version, about = "Exact magnitude and Euler-form checks for bound-quiver algebras")]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Highest degree of the projective resolutions (default: dim A).
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a quiver file and echo it in normal form.
    Parse { file: String },
    /// Cartan matrix Z and its determinant.
    Cartan { file: String },
    /// Dimensions of Ext^n between simples, and the global dimension.
    Ext { file: String },
    /// Magnitude of the category of indecomposable projectives.
    Magnitude { file: String },
    /// Check Z^-1 = E, magnitude = chi(S,S) and det Z = +-1.
    Verify {
        file: String,
        /// Check this matrix in place of the computed Cartan matrix.
        #[arg(long, value_name = "FILE", visible_alias = "cartan")]
        matrix: Option<String>,
    },
    /// List the basis paths between vertices.
    Paths {
        file: String,
        #[arg(long, value_name = "VERTEX")]
        from: Option<String>,
        #[arg(long, value_name = "VERTEX")]
        to: Option<String>,
        /// Print only the number of paths per pair.
        #[arg(long)]
        count_only: bool,
    },
    /// Magnitude of a square rational matrix read from a file.
    MatrixMagnitude {
        #[arg(long, value_name = "FILE")]
        matrix: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Parse { .. } => "parse",
            Command::Cartan { .. } => "cartan",
            Command::Ext { .. } => "ext",
            Command::Magnitude { .. } => "magnitude",
            Command::Verify { .. } => "verify",
            Command::Paths { .. } => "paths",
            Command::MatrixMagnitude { .. } => "matrix-magnitude",
        }
    }

    /// The file whose bytes identify the input.
    fn input(&self) -> &str {
        match self {
            Command::Parse { file }
            | Command::Cartan { file }
            | Command::Ext { file }
            | Command::Magnitude { file }
            | Command::Verify { file, .. }
            | Command::Paths { file, .. } => file,
            Command::MatrixMagnitude { matrix } => matrix,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    input_digest: String,
    result: &'a serde_json::Value,
    warnings: &'a [String],
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn run(cli: &Cli, input: &str) -> Result<Output, CliError> {
    let path = cli.command.input();
    match &cli.command {
        Command::Parse { .. } => Ok(commands::parse(commands::load_quiver(path, input)?)),
        Command::Cartan { .. } => commands::cartan(commands::load_quiver(path, input)?),
        Command::Ext { .. } => commands::ext(commands::load_quiver(path, input)?, cli.max_degree),
        Command::Magnitude { .. } => {
            commands::magnitude_cmd(commands::load_quiver(path, input)?, cli.max_degree)
        }
        Command::Verify { matrix, .. } => {
            let bq = commands::load_quiver(path, input)?;
            let z = match matrix {
                Some(m) => Some(commands::load_matrix(m, &read(m)?)?),
                None => None,
            };
            commands::verify(bq, cli.max_degree, z)
        }
        Command::Paths { from, to, count_only, .. } => commands::paths(
            commands::load_quiver(path, input)?,
            from.as_deref(),
            to.as_deref(),
            *count_only,
        ),
        Command::MatrixMagnitude { .. } => commands::matrix_magnitude(commands::load_matrix(path, input)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = read(cli.command.input()).and_then(|input| {
        let out = run(&cli, &input)?;
        Ok((digest(input.as_bytes()), out))
    });
    let (input_digest, out) = match outcome {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };

    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let envelope = Envelope {
            command: cli.command.name(),
            input_digest,
            result: &out.result,
            warnings: &out.warnings,
        };
        let text = serde_json::to_string_pretty(&envelope).expect("envelope serializes");
        let _ = writeln!(stdout, "{text}");
    } else {
        let _ = write!(stdout, "{}", out.text);
        for w in &out.warnings {
            eprintln!("warning: {w}");
        }
    }
    ExitCode::from(out.exit)
}
