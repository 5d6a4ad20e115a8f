use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use forge_cli::{run_job, CliError, Command, JobSpec, LimitOverrides};

/// Defining equations of algebraic matrix groups over the rationals.
#[derive(Debug, Parser)]
#[command(name = "forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Largest splitting-field degree over the rationals.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    degree_cap: Option<u64>,
    /// Largest number of closure rounds when generating a group.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_rounds: Option<u64>,
    /// Largest number of S-pairs formed per Gröbner basis.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_spairs: Option<u64>,
    /// Largest total degree of an intermediate polynomial.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: Option<u64>,
    /// Print the closure steps with their ideals to standard error.
    #[arg(long, global = true)]
    trace: bool,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Unipotent group of a nilpotent matrix Lie algebra (JSON matrices).
    NilpotentGroup { input: PathBuf },
    /// Smallest algebraic group containing exp(tX) for one semisimple matrix.
    SemisimpleGroup { input: PathBuf },
    /// Group generated by two connected groups (serialized ideals).
    GeneratedGroup { input1: PathBuf, input2: PathBuf },
    /// Connected group of an algebraic Lie algebra (JSON matrices).
    GroupFromLieAlgebra { input: PathBuf },
    /// Split of a Lie algebra into Levi, toral and nilpotent parts.
    ReductiveDecomposition { input: PathBuf },
    /// Reductive part and unipotent radical of the group of a Lie algebra.
    ReductiveGroupParts { input: PathBuf },
    /// Tangent space at the identity of a serialized group.
    TangentSpace { input: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

fn overrides(cli: &Cli) -> Result<LimitOverrides, CliError> {
    let to_usize = |v: Option<u64>| v.map(|v| usize::try_from(v).unwrap_or(usize::MAX));
    let flags = LimitOverrides {
        degree_cap: to_usize(cli.degree_cap),
        max_rounds: to_usize(cli.max_rounds),
        max_spairs: to_usize(cli.max_spairs),
        max_degree: to_usize(cli.max_degree),
    };
    let env = match std::env::var("FORGE_LIMITS") {
        Ok(text) => LimitOverrides::from_env_value(&text)?,
        Err(_) => LimitOverrides::default(),
    };
    Ok(flags.or(env))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (command, paths) = match &cli.command {
        Cmd::NilpotentGroup { input } => (Command::NilpotentGroup, vec![input]),
        Cmd::SemisimpleGroup { input } => (Command::SemisimpleGroup, vec![input]),
        Cmd::GeneratedGroup { input1, input2 } => (Command::GeneratedGroup, vec![input1, input2]),
        Cmd::GroupFromLieAlgebra { input } => (Command::GroupFromLieAlgebra, vec![input]),
        Cmd::ReductiveDecomposition { input } => (Command::ReductiveDecomposition, vec![input]),
        Cmd::ReductiveGroupParts { input } => (Command::ReductiveGroupParts, vec![input]),
        Cmd::TangentSpace { input } => (Command::TangentSpace, vec![input]),
    };
    let inputs = paths.into_iter().map(read).collect::<Result<Vec<_>, _>>()?;
    let spec = JobSpec { command, inputs, limits: overrides(&cli)?.resolve() };
    let out = run_job(&spec)?;
    if cli.trace {
        for line in &out.trace {
            eprintln!("trace: {line}");
        }
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &out.text)
            .map_err(|source| CliError::Write { path: path.display().to_string(), source }),
        None => {
            print!("{}", out.text);
            Ok(())
        }
    }
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("forge: {}", e.report());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
