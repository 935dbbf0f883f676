// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "tripleforge",
    version,
    about = "Graph-state triple distribution: certify, run, audit, compute"
)]
pub struct Cli {
    /// Seed for sampled runs; ignored when enumerating.
    #[arg(long, global = true, env = "TRIPLEFORGE_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendChoice {
    Tableau,
    Dense,
    Graph,
    /// Tableau and dense, which must agree.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Sample,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceChoice {
    /// The ideal trusted functionality.
    Ideal,
    /// A fresh run of the measurement protocol per triple.
    Live,
    /// Exact sampler over the measurement protocol's output distribution.
    Marginal,
    /// Classical trusted dealer.
    Dealer,
    /// Key-distribution baseline with the corrected re-randomisation.
    Qkd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoleChoice {
    A,
    B,
    R,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the resource graph by exhaustive enumeration.
    Certify(CertifyArgs),
    /// Run the measurement protocol.
    Triple(TripleArgs),
    /// Privacy audit against one corrupted role.
    Audit(AuditArgs),
    /// Referee-assisted 1-out-of-2 oblivious transfer.
    Ot(OtArgs),
    /// Shared N-input conjunction.
    Conj(ConjArgs),
    /// Evaluate a function in algebraic normal form from a JSON file.
    Anf(AnfArgs),
    /// Compare the dealer and key-distribution baselines with the ideal.
    Baselines(BaselinesArgs),
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum, default_value_t = BackendChoice::Both)]
    pub backend: BackendChoice,

    /// Graph JSON to certify instead of the built-in resource.
    #[arg(long)]
    pub resource: Option<PathBuf>,

    /// Edit the graph before certifying, e.g. `--mutate drop-edge 9,12`.
    #[arg(long, num_args = 2, value_names = ["KIND", "I,J"])]
    pub mutate: Vec<String>,

    /// Also write the (possibly mutated) graph JSON here.
    #[arg(long)]
    pub emit_resource: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TripleArgs {
    #[arg(long, value_enum, default_value_t = BackendChoice::Tableau)]
    pub backend: BackendChoice,

    #[arg(long, value_enum, default_value_t = Mode::Sample)]
    pub mode: Mode,

    /// Number of sampled sessions.
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(value_enum, ignore_case = true, default_value_t = RoleChoice::All)]
    pub role: RoleChoice,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    #[arg(long, value_enum, default_value_t = SourceChoice::Ideal)]
    pub source: SourceChoice,

    /// Backend for the live source.
    #[arg(long, value_enum, default_value_t = BackendChoice::Tableau)]
    pub backend: BackendChoice,

    /// `enumerate` runs every input and coin and reports what the public log
    /// leaks. Inputs given on the command line only fix the party count.
    #[arg(long, value_enum, default_value_t = Mode::Sample)]
    pub mode: Mode,

    /// In enumerate mode, include the reconstruction round in the log.
    #[arg(long)]
    pub with_reconstruction: bool,
}

#[derive(Debug, Args)]
pub struct OtArgs {
    #[arg(long, action = ArgAction::Set, value_parser = parse_bit, default_value = "0")]
    pub a0: bool,
    #[arg(long, action = ArgAction::Set, value_parser = parse_bit, default_value = "0")]
    pub a1: bool,
    #[arg(long, action = ArgAction::Set, value_parser = parse_bit, default_value = "0")]
    pub b: bool,
    #[command(flatten)]
    pub source: SourceArgs,
}

#[derive(Debug, Args)]
pub struct ConjArgs {
    /// Comma-separated input bits, one per party, e.g. `1,1,0`.
    #[arg(long, value_delimiter = ',', value_parser = parse_bit, required = true)]
    pub inputs: Vec<bool>,
    #[command(flatten)]
    pub source: SourceArgs,
}

#[derive(Debug, Args)]
pub struct AnfArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = SourceChoice::Ideal)]
    pub source: SourceChoice,
    #[arg(long, value_enum, default_value_t = BackendChoice::Tableau)]
    pub backend: BackendChoice,
}

#[derive(Debug, Args)]
pub struct BaselinesArgs {
    /// Backend used to tabulate the measurement protocol alongside the
    /// classical baselines.
    #[arg(long, value_enum, default_value_t = BackendChoice::Tableau)]
    pub backend: BackendChoice,
}

pub fn parse_bit(s: &str) -> Result<bool, String> {
    match s.trim() {
        "0" => Ok(false),
        "1" => Ok(true),
        other => Err(format!("expected 0 or 1, got {other:?}")),
    }
}
