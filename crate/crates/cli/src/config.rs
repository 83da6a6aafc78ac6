use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stperiod_core::coxeter::{Family, DEFAULT_ELEMENT_BUDGET};

/// Fixed so that sampled checks are reproducible run to run.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Parser, PartialEq, Eq)]
#[command(name = "stperiod", version, about = "Growth series, periods and tree cocycle checks for affine buildings")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Directory for cached growth series; caching is off when absent.
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Maximum number of group elements held during enumeration.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET, global = true)]
    pub budget: usize,

    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    /// Breadth-first enumeration of the group.
    Enumerated,
    /// Expansion of the Bott product formula.
    ClosedForm,
}

#[derive(Debug, Clone, Args, PartialEq, Eq)]
pub struct TypeArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Clone, Subcommand, PartialEq, Eq)]
pub enum Command {
    /// Growth coefficients a_0..a_K.
    Growth {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long = "K", default_value_t = 12)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Source::Enumerated)]
        source: Source,
    },
    /// Closed-form period, partial sums, tail bound and bounds check.
    Period {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long = "qF")]
        q_f: u64,
        #[arg(long = "K", default_value_t = 12)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Source::Enumerated)]
        source: Source,
    },
    /// Harmonicity and decay of the Iwahori cocycle on the truncated tree.
    TreeVerify {
        #[arg(long = "qF")]
        q_f: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Period partial sums computed on the tree.
    TreePeriod {
        #[arg(long = "qF")]
        q_f: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Solve for harmonic cocycles constant on distance classes.
    Invariant {
        #[arg(long = "qF")]
        q_f: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Orbits of the residue-field label moves for q = p^n.
    Orbit {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
    },
    /// Run every verification check.
    Suite,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Growth { .. } => "growth",
            Command::Period { .. } => "period",
            Command::TreeVerify { .. } => "tree-verify",
            Command::TreePeriod { .. } => "tree-period",
            Command::Invariant { .. } => "invariant",
            Command::Orbit { .. } => "orbit",
            Command::Suite => "suite",
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|_| format!("unknown family '{s}', expected one of A B C D E F G"))
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, format: Format::Json, cache_dir: None, budget: DEFAULT_ELEMENT_BUDGET, seed: DEFAULT_SEED }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let cfg =
            RunConfig::try_parse_from(["stperiod", "period", "--family", "A", "--rank", "1", "--qF", "3"]).unwrap();
        assert_eq!(
            cfg.command,
            Command::Period { ty: TypeArgs { family: Family::A, rank: 1 }, q_f: 3, k: 12, source: Source::Enumerated }
        );
        assert_eq!(cfg.seed, DEFAULT_SEED);
        let cfg = RunConfig::try_parse_from([
            "stperiod", "growth", "--family", "C", "--rank", "2", "--K", "4", "--format", "csv",
        ])
        .unwrap();
        assert_eq!(cfg.format, Format::Csv);
    }

    #[test]
    fn rejects_unknown_family() {
        let err = RunConfig::try_parse_from(["stperiod", "growth", "--family", "H", "--rank", "3"]).unwrap_err();
        assert!(err.to_string().contains("unknown family"));
    }

    #[test]
    fn q_e_is_not_a_flag() {
        assert!(RunConfig::try_parse_from(["stperiod", "tree-verify", "--qF", "2", "--qE", "4"]).is_err());
    }
}
