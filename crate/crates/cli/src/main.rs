use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fglab_cli::{run, CommandKind, Format, RunConfig};

/// Exact formal group law computations over GF(2).
#[derive(Parser, Debug)]
#[command(name = "fglab", version)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Top,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Top {
    /// Derive and verify the dual Steenrod tables.
    Derive(SteenrodArgs),
    /// Derive, verify every identity, and compare against the oracle.
    Verify(SteenrodArgs),
    /// Solve for a strict isomorphism to the additive law.
    Solve(LawArgs),
    /// Coaction of the bordism model on the orientation class.
    Coaction(ModelArgs),
    /// Internal composition of two ring maps out of the bordism model.
    Compose(ComposeArgs),
    /// Evaluate a ring map out of the bordism model.
    Ev(EvArgs),
    #[command(subcommand)]
    Fgl(FglCommand),
    #[command(subcommand)]
    Steenrod(SteenrodCommand),
    #[command(subcommand)]
    Bordism(BordismCommand),
}

#[derive(Subcommand, Debug)]
enum FglCommand {
    /// Check the axioms; reports the lowest failing degree.
    Check(LawArgs),
    TwoSeries(LawArgs),
    SolveAdditive(LawArgs),
}

#[derive(Subcommand, Debug)]
enum SteenrodCommand {
    Derive(SteenrodArgs),
    Verify(SteenrodArgs),
}

#[derive(Subcommand, Debug)]
enum BordismCommand {
    Build(ModelArgs),
    Coaction(ModelArgs),
    Ev(EvArgs),
    Coproduct(ModelArgs),
    Compose(ComposeArgs),
}

#[derive(Args, Debug)]
struct SteenrodArgs {
    #[arg(long, short = 'k', default_value_t = 3)]
    generators: usize,
    /// Defaults to 2^k.
    #[arg(long, short = 'N')]
    truncation: Option<u32>,
}

#[derive(Args, Debug)]
struct LawArgs {
    /// Canonical text such as "x + y + x*y", or a JSON term list.
    #[arg(long)]
    law: String,
    /// Coefficient ring: "a1:1,a2:2" or a .toml/.json descriptor.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, short = 'N')]
    truncation: Option<u32>,
    #[arg(long)]
    ring_truncation: Option<u32>,
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, visible_alias = "generators", short = 'm', default_value_t = 3)]
    gens: usize,
    /// Defaults to m + 1.
    #[arg(long, short = 'N')]
    truncation: Option<u32>,
}

#[derive(Args, Debug)]
struct EvArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Assignments such as "a1=t, a2=t^2".
    #[arg(long)]
    map: String,
    /// Target ring; defaults to "t:1".
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    target_truncation: Option<u32>,
}

#[derive(Args, Debug)]
struct ComposeArgs {
    #[command(flatten)]
    ev: EvArgs,
    /// The inner map; the result evaluates to ev(map) ∘ ev(then).
    #[arg(long)]
    then: String,
}

fn steenrod(kind: CommandKind, a: SteenrodArgs) -> RunConfig {
    let mut c = RunConfig::new(kind);
    c.generators = a.generators;
    c.truncation = a.truncation;
    c
}

fn law(kind: CommandKind, a: LawArgs) -> RunConfig {
    let mut c = RunConfig::new(kind);
    c.law = Some(a.law);
    c.ring = a.ring;
    c.truncation = a.truncation;
    c.ring_truncation = a.ring_truncation;
    c
}

fn model(kind: CommandKind, a: ModelArgs) -> RunConfig {
    let mut c = RunConfig::new(kind);
    c.generators = a.gens;
    c.truncation = a.truncation;
    c
}

fn ev(kind: CommandKind, a: EvArgs) -> RunConfig {
    let mut c = model(kind, a.model);
    c.map = Some(a.map);
    c.ring = a.target;
    c.ring_truncation = a.target_truncation;
    c
}

fn compose(a: ComposeArgs) -> RunConfig {
    let mut c = ev(CommandKind::Compose, a.ev);
    c.second_map = Some(a.then);
    c
}

fn config_from(cli: Cli) -> RunConfig {
    let mut c = match cli.command {
        Top::Derive(a) | Top::Steenrod(SteenrodCommand::Derive(a)) => steenrod(CommandKind::Derive, a),
        Top::Verify(a) | Top::Steenrod(SteenrodCommand::Verify(a)) => steenrod(CommandKind::Verify, a),
        Top::Solve(a) | Top::Fgl(FglCommand::SolveAdditive(a)) => law(CommandKind::Solve, a),
        Top::Fgl(FglCommand::Check(a)) => law(CommandKind::Check, a),
        Top::Fgl(FglCommand::TwoSeries(a)) => law(CommandKind::TwoSeries, a),
        Top::Bordism(BordismCommand::Build(a)) => model(CommandKind::Build, a),
        Top::Coaction(a) | Top::Bordism(BordismCommand::Coaction(a)) => model(CommandKind::Coaction, a),
        Top::Bordism(BordismCommand::Coproduct(a)) => model(CommandKind::Coproduct, a),
        Top::Ev(a) | Top::Bordism(BordismCommand::Ev(a)) => ev(CommandKind::Ev, a),
        Top::Compose(a) | Top::Bordism(BordismCommand::Compose(a)) => compose(a),
    };
    c.format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    c.seed = cli.seed;
    c.output = cli.output;
    c
}

/// `FGLAB_THREADS` caps the worker pool.
fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("FGLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .map_err(|_| format!("FGLAB_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("fglab: {e}");
        return ExitCode::from(2);
    }
    let config = config_from(Cli::parse());
    let outcome = run(&config);
    let text = outcome.render(config.format);
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("fglab: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.exit_code as u8)
}
