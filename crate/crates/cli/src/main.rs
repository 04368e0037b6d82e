use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use realconic_cli::{error_outcome, execute, json::InputError};

/// Exact decisions and constructions for real conic bundle surfaces.
///
/// Each subcommand reads a JSON document (from --input or standard input)
/// and writes a JSON verdict (to --output or standard output).
/// Exit status: 0 yes/success, 1 no, 2 usage or data error.
#[derive(Parser)]
#[command(name = "realconic", version)]
struct Cli {
    /// Read the request from FILE instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the verdict to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Are two models birational (interval images Moebius-equivalent)?
    DecideBirational,
    /// Are the real parts of two marked models isomorphic?
    DecideIso,
    /// Is the automorphism group very transitive on the real part?
    DecideVerytransitive,
    /// Arc permutations realized by Moebius maps preserving a configuration.
    RealizablePerms,
    /// Moebius maps preserving a finite set of points.
    Stabilizer,
    /// Synthesize a twisting map transporting points within fibres.
    Twist,
    /// Check a twisting map exactly.
    VerifyTwist,
    /// Apply the Geiser involution of a biconic model.
    Geiser,
    /// Interval image of a biconic model, or a model for a configuration.
    BiconicImage,
    /// Picard-lattice tables and checks.
    Lattice,
    /// Rectilinear path in a union of rectangles.
    RegionPath,
    /// Run the seeded property self-test.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::DecideBirational => "decide-birational",
            Command::DecideIso => "decide-iso",
            Command::DecideVerytransitive => "decide-verytransitive",
            Command::RealizablePerms => "realizable-perms",
            Command::Stabilizer => "stabilizer",
            Command::Twist => "twist",
            Command::VerifyTwist => "verify-twist",
            Command::Geiser => "geiser",
            Command::BiconicImage => "biconic-image",
            Command::Lattice => "lattice",
            Command::RegionPath => "region-path",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let seed = match cli.command {
        Command::Selftest { seed } => seed,
        _ => 0,
    };
    let outcome = if name == "selftest" {
        execute(name, "", seed)
    } else {
        match read_input(&cli.input) {
            Ok(text) => execute(name, &text, seed),
            Err(e) => error_outcome(
                name,
                &InputError::Schema {
                    field: "--input".into(),
                    reason: e.to_string(),
                },
            ),
        }
    };
    if outcome.exit == 2 {
        if let Some(msg) = outcome.body["error"]["message"].as_str() {
            eprintln!("realconic {name}: {msg}");
        }
    }
    let text = outcome.render();
    let written = match &cli.output {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("realconic: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit as u8)
}
