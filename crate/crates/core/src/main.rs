use std::io::Read;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use nonproper::poly::{Field, Rat};
use nonproper::report::{parse_map_source, run, Command, JobConfig, OutputFormat};

/// Non-properness sets of polynomial maps from their Newton polytopes.
#[derive(Parser)]
#[command(name = "nonproper", version, about)]
struct Cli {
    /// Ground field semantics for solving and verification.
    #[arg(long, value_enum, default_value = "real", global = true)]
    field: FieldArg,

    /// Inline map, e.g. "f1 = v*(u-1); f2 = v^2*(u^2-3*u+2)".
    #[arg(short = 'e', long, global = true)]
    expr: Option<String>,

    /// Input file with one `fi = expression` per line ("-" for stdin).
    #[arg(short = 'i', long, global = true)]
    input: Option<String>,

    /// Comma-separated variable names; inferred from the input otherwise.
    #[arg(long, global = true, value_delimiter = ',')]
    vars: Option<Vec<String>>,

    /// Seed for all sampling (fixed seed means byte-identical output).
    #[arg(long, default_value_t = 17, global = true)]
    seed: u64,

    /// Tolerance for internal numeric root polishing.
    #[arg(long, default_value_t = 1e-9, global = true)]
    numeric_tol: f64,

    /// Tolerance for the escape oracle.
    #[arg(long, default_value_t = 1e-6, global = true)]
    oracle_tol: f64,

    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    output: OutputArg,

    /// Comma-separated constants c for the normalizing translation
    /// f -> f - f(0) + c (rationals like 1 or 2/3); defaults to all ones.
    #[arg(long, global = true, value_delimiter = ',')]
    shift: Option<Vec<String>>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump the inner normal fan: rays, cones, per-cone tuple classification.
    Fan,
    /// Table of all minimized tuples with class, theta, basic flag, rays.
    Tuples,
    /// Chain transformation and validator report for one cone of the fan.
    Chain {
        /// Cone id from the `fan` output.
        #[arg(long)]
        cone: usize,
    },
    /// Compute the Jelonek set S_f.
    Jelonek,
    /// Compute the toric non-properness set S*_f.
    Toric,
    /// Properness certificate.
    Proper,
    /// Compute S_f and confirm it against the numeric escape oracle.
    Verify {
        /// Sampled points per component.
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
}

fn parse_rat(s: &str) -> anyhow::Result<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        Ok(Rat::new(n.trim().parse()?, d.trim().parse()?))
    } else {
        Ok(Rat::from_integer(s.parse()?))
    }
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let source = match (&cli.expr, &cli.input) {
        (Some(e), None) => e.clone(),
        (None, Some(path)) if path == "-" => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
        (None, Some(path)) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path))?,
        (Some(_), Some(_)) => bail!("use either -e or -i, not both"),
        (None, None) => bail!("provide the map with -e \"f1 = ...; f2 = ...\" or -i FILE"),
    };
    let field = match cli.field {
        FieldArg::Real => Field::Real,
        FieldArg::Complex => Field::Complex,
    };
    let (command, cone, samples) = match cli.command {
        Cmd::Fan => (Command::Fan, None, 20),
        Cmd::Tuples => (Command::Tuples, None, 20),
        Cmd::Chain { cone } => (Command::Chain, Some(cone), 20),
        Cmd::Jelonek => (Command::Jelonek, None, 20),
        Cmd::Toric => (Command::Toric, None, 20),
        Cmd::Proper => (Command::Proper, None, 20),
        Cmd::Verify { samples } => (Command::Verify, None, samples),
    };
    let shift = match &cli.shift {
        Some(parts) => Some(
            parts
                .iter()
                .map(|p| parse_rat(p))
                .collect::<anyhow::Result<Vec<Rat>>>()?,
        ),
        None => None,
    };
    // surface parse errors with exit code 1 before running
    if let Err(e) = parse_map_source(&source, cli.vars.as_deref(), field) {
        eprintln!("error: {}", e);
        std::process::exit(1);
    }
    let config = JobConfig {
        field,
        source,
        vars: cli.vars.clone(),
        command,
        numeric_tol: cli.numeric_tol,
        oracle_tol: cli.oracle_tol,
        seed: cli.seed,
        output: match cli.output {
            OutputArg::Text => OutputFormat::Text,
            OutputArg::Json => OutputFormat::Json,
        },
        normalization_shift: shift,
        cone,
        oracle_samples: samples,
    };
    let outcome = run(&config);
    println!("{}", outcome.report);
    std::process::exit(outcome.exit_code);
}
